//! Command-line front end. JSON Lines on standard streams is the default
//! interchange so subcommands compose in pipes; `--pretty` renders tables
//! for people.
//!
//! Exit codes: 0 success, 1 usage error (bad flags or option values),
//! 2 data error (unreadable or malformed input, failed analysis).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::corpus::{
    annotate_corpus, precision_from_reviews, read_review_csv, stratified_sample, write_review_csv,
    FrequencyTable, InputFormat, Post, PostReader,
};
use crate::cue_model::{AnnotatedPost, CueSubcategory, Lexicon};
use crate::detector::{annotate, DetectorConfig};
use crate::error::{Error, Result};
use crate::experiment::{analyze, build_design, read_responses_csv, read_stimuli_jsonl};
use crate::synth::synthetic_corpus;
use crate::transformer::{strip, StripConfig, StripRule};

#[derive(Debug, Parser)]
#[command(
    name = "envc",
    version,
    about = "Detect, strip and analyze electronic nonverbal cues in short texts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct DetectorArgs {
    /// Lexicon JSON replacing the bundled one
    #[arg(long, env = "ENVC_LEXICON", value_name = "PATH")]
    lexicon: Option<PathBuf>,
    /// Emoji classification profile (bundled: paper, extended)
    #[arg(long, default_value = "paper")]
    profile: String,
    /// Shortest capital run counted as a volume cue
    #[arg(long, value_name = "N")]
    min_caps_run: Option<usize>,
    /// Shortest letter repetition counted as elongation
    #[arg(long = "elong-min", value_name = "N")]
    elong_min: Option<usize>,
    /// Shortest run of ! ? . counted as a punctuation cue
    #[arg(long, value_name = "N")]
    punct_min: Option<usize>,
    /// Keep capitalization cues even in texts written entirely in capitals
    #[arg(long)]
    keep_all_caps_text: bool,
}

impl DetectorArgs {
    fn config(&self) -> Result<DetectorConfig> {
        let mut cfg = DetectorConfig::default().with_profile(&self.profile);
        if let Some(path) = &self.lexicon {
            cfg.lexicon = Lexicon::load(path)?;
        }
        if let Some(n) = self.min_caps_run {
            cfg.min_caps_run = n;
        }
        if let Some(n) = self.elong_min {
            cfg.elongation_min_repeat = n;
        }
        if let Some(n) = self.punct_min {
            cfg.punct_min_repeat = n;
        }
        cfg.suppress_all_caps_text = !self.keep_all_caps_text;
        cfg.validate().map_err(|e| match e {
            Error::Config { field, reason } => Error::Config {
                field: flag_for(&field).to_string(),
                reason,
            },
            other => other,
        })?;
        Ok(cfg)
    }
}

fn flag_for(field: &str) -> &str {
    match field {
        "min_caps_run" => "--min-caps-run",
        "elongation_min_repeat" => "--elong-min",
        "punct_min_repeat" => "--punct-min",
        "emoji_profile_name" => "--profile",
        other => other,
    }
}

#[derive(Debug, Clone, Args)]
struct InputArgs {
    /// Input file; standard input when omitted or `-`
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Input format; guessed from the file extension by default
    #[arg(long, value_name = "jsonl|csv")]
    format: Option<String>,
}

impl InputArgs {
    fn format(&self) -> Result<InputFormat> {
        match (&self.format, &self.input) {
            (Some(f), _) => f.parse(),
            (None, Some(path)) => Ok(InputFormat::from_path(path)),
            (None, None) => Ok(InputFormat::Jsonl),
        }
    }

    fn label(&self) -> String {
        match &self.input {
            Some(p) if p.as_os_str() != "-" => p.display().to_string(),
            _ => "<stdin>".to_string(),
        }
    }
}

#[derive(Debug, Clone, Args)]
struct OutArgs {
    /// Output file; standard output when omitted
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct RuleArgs {
    /// Strip rule to turn off (repeatable), e.g. vocalics_delete
    #[arg(long = "disable-rule", value_name = "RULE")]
    disable_rule: Vec<String>,
}

impl RuleArgs {
    fn strip_config(&self, detector: DetectorConfig) -> Result<StripConfig> {
        let mut cfg = StripConfig::new(detector);
        for name in &self.disable_rule {
            let rule: StripRule = name.parse().map_err(|_| {
                let known: Vec<&str> = StripRule::ALL.iter().map(|r| r.name()).collect();
                Error::InvalidArgument(format!(
                    "--disable-rule: unknown rule {name:?} (known: {})",
                    known.join(", ")
                ))
            })?;
            cfg = cfg.without(rule);
        }
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Detect cues and emit one annotated post per line
    Annotate {
        #[command(flatten)]
        input: InputArgs,
        /// Annotate this text instead of reading posts
        #[arg(long, conflicts_with = "input")]
        text: Option<String>,
        #[command(flatten)]
        detector: DetectorArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Render a table instead of JSON Lines
        #[arg(long)]
        pretty: bool,
    },
    /// Remove cues while keeping the wording
    Strip {
        /// Strip this text and print the result
        #[arg(long, conflicts_with = "input")]
        text: Option<String>,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        detector: DetectorArgs,
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Emit the full report, including removals
        #[arg(long)]
        json: bool,
    },
    /// Cue frequencies over a corpus (posts or annotated posts)
    #[command(alias = "freqs")]
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        detector: DetectorArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, conflicts_with = "plot")]
        pretty: bool,
        /// Emit an SVG bar chart instead of JSON
        #[arg(long)]
        plot: bool,
    },
    /// Draw a stratified review sample as CSV for hand labeling
    Sample {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        detector: DetectorArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Spans wanted per subcategory, as Name=count (repeatable or comma-separated; `all` sets every one)
        #[arg(long, required = true, value_delimiter = ',', value_name = "NAME=N")]
        quota: Vec<String>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Per-subcategory precision from a labeled review CSV
    Validate {
        /// Review CSV with the verdict column filled in
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long)]
        pretty: bool,
    },
    /// Build a matched Present/Removed stimulus set
    Design {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        detector: DetectorArgs,
        #[command(flatten)]
        rules: RuleArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Emotion labels to include, comma-separated
        #[arg(long, required = true, value_delimiter = ',')]
        emotions: Vec<String>,
        #[arg(long, default_value_t = 4)]
        items_per_cell: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Score reader responses against a stimulus set
    Analyze {
        /// Responses CSV: participant_id,item_id,selected
        #[arg(long, value_name = "PATH")]
        responses: PathBuf,
        /// Stimulus set (JSON Lines, as written by `design`)
        #[arg(long, value_name = "PATH")]
        stimuli: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Generate the synthetic planted-cue corpus
    Synth {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = crate::synth::DEFAULT_POSTS)]
        posts: usize,
        #[command(flatten)]
        out: OutArgs,
        /// Also write the planted counts (same shape as `stats` output)
        #[arg(long, value_name = "PATH")]
        counts: Option<PathBuf>,
    },
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::Config { .. } => 1,
        _ => 2,
    }
}

/// Run with the process's standard streams; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(
        argv,
        Box::new(io::stdin()),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// Like [`run`], with explicit streams (used by tests and embedders).
pub fn run_with<I, T>(
    argv: I,
    stdin: Box<dyn Read>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let rendered = e.render().to_string();
            if informational {
                let _ = stdout.write_all(rendered.as_bytes());
                return 0;
            }
            let _ = stderr.write_all(rendered.as_bytes());
            return 1;
        }
    };
    let mut ctx = Ctx {
        stdin: Some(stdin),
        stdout,
        stderr,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(ctx.stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Ctx<'a> {
    stdin: Option<Box<dyn Read>>,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn open(&mut self, path: Option<&Path>) -> Result<Box<dyn Read>> {
        match path {
            Some(p) if p.as_os_str() != "-" => {
                let f = File::open(p).map_err(|source| Error::Io {
                    path: p.display().to_string(),
                    source,
                })?;
                Ok(Box::new(f))
            }
            _ => self.stdin.take().ok_or_else(|| {
                Error::InvalidArgument("standard input can be read only once".into())
            }),
        }
    }

    /// Buffer the whole output before touching `--out`, so a failed run
    /// never leaves a truncated file behind.
    fn emit(&mut self, out: &OutArgs, bytes: &[u8]) -> Result<()> {
        match &out.out {
            Some(path) => {
                let io_err = |source| Error::Io {
                    path: path.display().to_string(),
                    source,
                };
                let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
                w.write_all(bytes).map_err(io_err)?;
                w.flush().map_err(io_err)
            }
            None => {
                let io_err = |source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                };
                self.stdout.write_all(bytes).map_err(io_err)?;
                self.stdout.flush().map_err(io_err)
            }
        }
    }

    fn report_skips(&mut self, label: &str, reader: &PostReader) {
        for s in reader.skipped() {
            let _ = writeln!(
                self.stderr,
                "warning: {label} line {}: skipped ({})",
                s.line, s.reason
            );
        }
        if reader.skip_count() > 0 {
            let _ = writeln!(
                self.stderr,
                "warning: {label}: {} malformed record(s) skipped",
                reader.skip_count()
            );
        }
    }

    fn read_posts(&mut self, input: &InputArgs) -> Result<PostReader> {
        let format = input.format()?;
        let reader = self.open(input.input.as_deref())?;
        PostReader::new(reader, format).map_err(|e| Error::Data(format!("{}: {e}", input.label())))
    }
}

fn json_line<T: serde::Serialize>(buf: &mut Vec<u8>, value: &T) {
    serde_json::to_writer(&mut *buf, value).expect("serializable value");
    buf.push(b'\n');
}

fn pretty_json<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut buf = serde_json::to_vec_pretty(value).expect("serializable value");
    buf.push(b'\n');
    buf
}

fn parse_quota(entries: &[String]) -> Result<BTreeMap<CueSubcategory, usize>> {
    let mut quota = BTreeMap::new();
    for entry in entries.iter().map(|e| e.trim()).filter(|e| !e.is_empty()) {
        let bad = || Error::InvalidArgument(format!("--quota: expected NAME=N, got {entry:?}"));
        let (name, n) = entry.split_once('=').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if name.trim().eq_ignore_ascii_case("all") {
            for sub in CueSubcategory::ALL {
                quota.insert(sub, n);
            }
        } else {
            let sub: CueSubcategory = name.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("--quota: unknown subcategory {:?}", name.trim()))
            })?;
            quota.insert(sub, n);
        }
    }
    Ok(quota)
}

fn annotated_posts(
    ctx: &mut Ctx,
    input: &InputArgs,
    cfg: &DetectorConfig,
    workers: usize,
) -> Result<Vec<AnnotatedPost>> {
    let label = input.label();
    let mut reader = ctx.read_posts(input)?;
    let out: Result<Vec<_>> = annotate_corpus(&mut reader, cfg, workers)?.collect();
    ctx.report_skips(&label, &reader);
    out
}

fn annotation_table(posts: &[AnnotatedPost]) -> String {
    let mut s = format!(
        "{:<12} {:>5} {:>5}  {:<17} {:<6} surface\n",
        "post_id", "start", "end", "subcategory", "affect"
    );
    for p in posts {
        for span in &p.spans {
            s.push_str(&format!(
                "{:<12} {:>5} {:>5}  {:<17} {:<6} {}\n",
                p.post_id,
                span.start,
                span.end,
                span.subcategory.name(),
                if span.affect_display { "yes" } else { "no" },
                span.surface.escape_debug()
            ));
        }
    }
    s
}

fn frequency_table_text(t: &FrequencyTable) -> String {
    let mut s = String::new();
    for (sub, n) in &t.per_subcategory {
        s.push_str(&format!(
            "{:<17} {:<16} {n:>8}\n",
            sub.name(),
            sub.domain().to_string()
        ));
    }
    for (d, n) in &t.per_domain {
        s.push_str(&format!("{:<34} {n:>8}\n", format!("total {d}")));
    }
    s.push_str(&format!(
        "posts with cues: {} of {} ({:.1}%)\n",
        t.posts_with_any_cue,
        t.posts_total,
        100.0 * t.cue_rate()
    ));
    s
}

/// Stats input may be raw posts or `annotate` output; the first record
/// decides. Annotated records are taken as-is and must all parse.
fn frequency_table(
    ctx: &mut Ctx,
    input: &InputArgs,
    cfg: &DetectorConfig,
    workers: usize,
) -> Result<FrequencyTable> {
    let label = input.label();
    if input.format()? == InputFormat::Csv {
        return Ok(crate::corpus::category_frequencies(&annotated_posts(
            ctx, input, cfg, workers,
        )?));
    }
    let mut reader = BufReader::new(ctx.open(input.input.as_deref())?);
    let mut head = Vec::new();
    let mut first = String::new();
    loop {
        first.clear();
        let n = reader.read_line(&mut first).map_err(|source| Error::Io {
            path: label.clone(),
            source,
        })?;
        head.push(first.clone());
        if n == 0 || !first.trim().is_empty() {
            break;
        }
    }
    let is_annotated = serde_json::from_str::<serde_json::Value>(first.trim())
        .ok()
        .is_some_and(|v| v.get("spans").is_some() && v.get("counts").is_some());
    let replay = io::Cursor::new(head.concat().into_bytes()).chain(reader);
    let mut table = FrequencyTable::default();
    if is_annotated {
        for (i, line) in BufReader::new(replay).lines().enumerate() {
            let line = line.map_err(|source| Error::Io {
                path: label.clone(),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let post: AnnotatedPost = serde_json::from_str(&line)
                .map_err(|e| Error::Data(format!("{label} line {}: {e}", i + 1)))?;
            table.add(&post);
        }
    } else {
        let mut posts = PostReader::new(Box::new(replay), InputFormat::Jsonl)?;
        for post in annotate_corpus(&mut posts, cfg, workers)? {
            table.add(&post?);
        }
        ctx.report_skips(&label, &posts);
    }
    Ok(table)
}

fn dispatch(command: Command, ctx: &mut Ctx) -> Result<()> {
    match command {
        Command::Annotate {
            input,
            text,
            detector,
            out,
            workers,
            pretty,
        } => {
            let cfg = detector.config()?;
            let posts = match text {
                Some(text) => vec![annotate("text", &text, &cfg)],
                None => annotated_posts(ctx, &input, &cfg, workers)?,
            };
            let bytes = if pretty {
                annotation_table(&posts).into_bytes()
            } else {
                let mut buf = Vec::new();
                posts.iter().for_each(|p| json_line(&mut buf, p));
                buf
            };
            ctx.emit(&out, &bytes)
        }
        Command::Strip {
            text,
            input,
            detector,
            rules,
            out,
            json,
        } => {
            let cfg = rules.strip_config(detector.config()?)?;
            let mut buf = Vec::new();
            match text {
                Some(text) => {
                    let report = strip(&text, &cfg);
                    if json {
                        buf = pretty_json(&report);
                    } else {
                        buf.extend_from_slice(report.output.as_bytes());
                        buf.push(b'\n');
                    }
                }
                None => {
                    let label = input.label();
                    let mut reader = ctx.read_posts(&input)?;
                    for post in &mut reader {
                        let post = post?;
                        let report = strip(&post.text, &cfg);
                        if json {
                            json_line(
                                &mut buf,
                                &serde_json::json!({
                                    "post_id": post.post_id,
                                    "output": report.output,
                                    "removals": report.removals,
                                }),
                            );
                        } else {
                            json_line(
                                &mut buf,
                                &Post {
                                    text: report.output,
                                    ..post
                                },
                            );
                        }
                    }
                    ctx.report_skips(&label, &reader);
                }
            }
            ctx.emit(&out, &buf)
        }
        Command::Stats {
            input,
            detector,
            out,
            workers,
            pretty,
            plot,
        } => {
            let cfg = detector.config()?;
            let table = frequency_table(ctx, &input, &cfg, workers)?;
            let bytes = if plot {
                table.to_svg().into_bytes()
            } else if pretty {
                frequency_table_text(&table).into_bytes()
            } else {
                pretty_json(&table)
            };
            ctx.emit(&out, &bytes)
        }
        Command::Sample {
            input,
            detector,
            out,
            quota,
            seed,
            workers,
        } => {
            let quota = parse_quota(&quota)?;
            let cfg = detector.config()?;
            let posts = annotated_posts(ctx, &input, &cfg, workers)?;
            let batch = stratified_sample(&posts, &quota, seed);
            let mut buf = Vec::new();
            write_review_csv(&batch.items, &mut buf)?;
            ctx.emit(&out, &buf)
        }
        Command::Validate { input, out, pretty } => {
            let label = input
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| "<stdin>".into());
            let reader = ctx.open(input.as_deref())?;
            let items =
                read_review_csv(reader).map_err(|e| Error::Data(format!("{label}: {e}")))?;
            let precision = precision_from_reviews(&items)?;
            let bytes = if pretty {
                let mut s = format!(
                    "{:<17} {:>8} {:>4} {:>9}\n",
                    "subcategory", "reviewed", "tp", "precision"
                );
                for (sub, p) in &precision {
                    s.push_str(&format!(
                        "{:<17} {:>8} {:>4} {:>9.3}\n",
                        sub.name(),
                        p.reviewed,
                        p.true_positives,
                        p.precision
                    ));
                }
                s.into_bytes()
            } else {
                pretty_json(&precision)
            };
            ctx.emit(&out, &bytes)
        }
        Command::Design {
            input,
            detector,
            rules,
            out,
            emotions,
            items_per_cell,
            seed,
        } => {
            let cfg = rules.strip_config(detector.config()?)?;
            let label = input.label();
            let mut reader = ctx.read_posts(&input)?;
            let posts: Vec<Post> = reader.by_ref().collect::<Result<_>>()?;
            ctx.report_skips(&label, &reader);
            let emotions: Vec<String> = emotions
                .iter()
                .map(|e| e.trim().to_string())
                .filter(|e| !e.is_empty())
                .collect();
            let items = build_design(&posts, &emotions, items_per_cell, &cfg, seed)?;
            let mut buf = Vec::new();
            items.iter().for_each(|i| json_line(&mut buf, i));
            ctx.emit(&out, &buf)
        }
        Command::Analyze {
            responses,
            stimuli,
            out,
        } => {
            let r = ctx.open(Some(&responses))?;
            let responses_label = responses.display().to_string();
            let responses = read_responses_csv(r)
                .map_err(|e| Error::Data(format!("{responses_label}: {e}")))?;
            if responses.is_empty() {
                return Err(Error::Data(format!("no responses in {responses_label}")));
            }
            let s = ctx.open(Some(&stimuli))?;
            let items = read_stimuli_jsonl(s)
                .map_err(|e| Error::Data(format!("{}: {e}", stimuli.display())))?;
            let report = analyze(&responses, &items)?;
            ctx.emit(&out, &pretty_json(&report))
        }
        Command::Synth {
            seed,
            posts,
            out,
            counts,
        } => {
            let corpus = synthetic_corpus(seed, posts);
            let mut buf = Vec::new();
            corpus.posts.iter().for_each(|p| json_line(&mut buf, p));
            if let Some(path) = counts {
                ctx.emit(&OutArgs { out: Some(path) }, &pretty_json(&corpus.planted))?;
            }
            ctx.emit(&out, &buf)
        }
    }
}
