//! Shared fixtures for the integration tests: an adversarial text fuzzer
//! and paths to the bundled data.

#![allow(dead_code)]

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

const WORDS: &[&str] = &[
    "the", "bus", "was", "late", "good", "cool", "too", "see", "i", "am", "so", "tired", "today",
    "friday", "exams", "cats", "love", "coffee", "hug", "hugs", "smile", "smiling", "wave",
    "frown", "hold", "wink", "lol", "ugh", "hmm", "sigh", "gawd", "haha", "yawn", "NASA", "FBI",
    "USA", "OK", "I'm", "don't", "it's", "1999", "451", "e.g.", "U.S.A.", "a", "aa", "ab", "x",
    "y",
];

const EMOJI: &[&str] = &[
    "\u{1F604}",
    "\u{1F629}",
    "\u{1F60A}",
    "\u{1F914}",
    "\u{1F64C}",
    "\u{1F449}",
    "\u{1F431}",
    "\u{1F9E1}",
    "\u{1F929}",
    "\u{2764}",
    "\u{2764}\u{FE0F}",
    "\u{1F31F}",
    "\u{1F308}",
    "\u{1F44D}\u{1F3FD}",
    "\u{1F926}\u{1F3FD}\u{200D}\u{2640}\u{FE0F}",
    "\u{200D}",
    "\u{FE0F}",
    "\u{1F3FB}",
    "\u{2639}",
    "\u{1FAE0}",
    "\u{1F680}",
];

const PUNCT: &[&str] = &[
    "!", "?", ".", ",", ";", ":", "!!", "!!!", "???", "?!", "..", "...", "!?.", "*", "**", "(",
    ")", "'", "\"", "&", "-", "#", "@", "\u{2026}",
];

const SEPARATORS: &[&str] = &[" ", " ", " ", " ", "", "  ", "\t", "\n", " \n "];

fn random_case(rng: &mut StdRng, word: &str) -> String {
    match rng.random_range(0..6) {
        0 => word.to_uppercase(),
        1 => {
            let mut cs = word.chars();
            match cs.next() {
                Some(f) => f.to_uppercase().chain(cs).collect(),
                None => String::new(),
            }
        }
        2 => word
            .chars()
            .enumerate()
            .map(|(i, c)| {
                if i % 2 == 1 {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect(),
        _ => word.to_string(),
    }
}

fn elongate(rng: &mut StdRng, word: &str) -> String {
    let chars: Vec<char> = word.chars().collect();
    if chars.is_empty() {
        return String::new();
    }
    let at = rng.random_range(0..chars.len());
    let extra = rng.random_range(1..6);
    let mut out = String::new();
    for (i, c) in chars.iter().enumerate() {
        out.push(*c);
        if i == at {
            for _ in 0..extra {
                out.push(*c);
            }
        }
    }
    out
}

fn random_scalar(rng: &mut StdRng) -> char {
    loop {
        let cp = match rng.random_range(0..4) {
            0 => rng.random_range(0x20..0x7F),
            1 => rng.random_range(0xA0..0x3000),
            2 => rng.random_range(0x1F000..0x1FB00),
            _ => rng.random_range(0..0x110000),
        };
        if let Some(c) = char::from_u32(cp) {
            return c;
        }
    }
}

fn token(rng: &mut StdRng) -> String {
    let word = WORDS[rng.random_range(0..WORDS.len())];
    match rng.random_range(0..14) {
        0..=3 => random_case(rng, word),
        4 => elongate(rng, word),
        5 => {
            let w = elongate(rng, word);
            random_case(rng, &w)
        }
        6 | 7 => EMOJI[rng.random_range(0..EMOJI.len())].to_string(),
        8 | 9 => PUNCT[rng.random_range(0..PUNCT.len())].to_string(),
        10 => format!("*{}*", random_case(rng, word)),
        11 => format!("{}{}", word, PUNCT[rng.random_range(0..PUNCT.len())]),
        12 => random_scalar(rng).to_string(),
        _ => word.to_string(),
    }
}

/// Random post-like text mixing every cue family, glued with random
/// separators (sometimes none, so tokens fuse).
pub fn fuzz_text(rng: &mut StdRng) -> String {
    let len = rng.random_range(0..14);
    let mut out = String::new();
    for i in 0..len {
        if i > 0 {
            out.push_str(SEPARATORS[rng.random_range(0..SEPARATORS.len())]);
        }
        out.push_str(&token(rng));
    }
    out
}

pub fn fuzz_corpus(seed: u64, n: usize) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n).map(|_| fuzz_text(&mut rng)).collect()
}
