fn main() {
    std::process::exit(envc::cli::run(std::env::args_os()));
}
