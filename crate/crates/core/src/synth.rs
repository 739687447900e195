//! Synthetic Vent-style corpus with planted cues.
//!
//! Posts are built from a cue-free lowercase filler vocabulary plus
//! decoys that look cue-like but must not fire (stoplisted acronyms,
//! ordinary double letters, single sentence marks). Cues are drawn from
//! fixed pools whose expected subcategory under the default detector
//! configuration is known, and every planted cue is tallied as it is
//! written. The tally is the oracle: it never consults the detector.

use std::collections::BTreeMap;

use crate::corpus::{FrequencyTable, Post};
use crate::cue_model::CueSubcategory;
use crate::rng::SeededRng;

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_POSTS: usize = 200;
pub const EMOTIONS: [&str; 5] = ["happy", "sad", "angry", "stressed", "calm"];

const FILLER: &[&str] = &[
    "today", "work", "was", "long", "and", "my", "friend", "said", "the", "exam", "is", "tomorrow",
    "feeling", "about", "it", "class", "weekend", "coffee", "morning", "really", "think", "just",
    "got", "home", "dinner", "movie", "train", "late", "again", "week", "people", "phone", "game",
    "music", "team", "rain", "city", "book", "plan", "trip", "new", "job", "boss", "meeting",
    "project", "deadline", "lunch", "night", "cat", "dog", "park", "walk", "call", "family",
    "party", "birthday", "gift", "email", "weather", "bus", "store", "idea", "grade", "paper",
    "story", "song", "show", "news", "this", "that", "so", "what", "when", "we", "they", "her",
    "his", "our", "with", "for", "from", "after", "before", "still", "maybe", "every",
];

const DECOYS: &[&str] = &["NASA", "FBI", "USA", "good", "too", "cool", "see", "I"];

const BODY: &[&str] = &[
    "*waves*",
    "*shrugs*",
    "*nods*",
    "*facepalm*",
    "*claps*",
    "*grins widely*",
    "smile",
    "👍",
    "👏",
    "💪",
    "👋",
];
const TOUCH: &[&str] = &["*hugs*", "*pats your head*", "*snuggles*", "*pokes*", "hug"];
const EYE: &[&str] = &[
    "*winks*",
    "*eyerolls*",
    "*squints*",
    "*blinks*",
    "*glares*",
    "wink",
];
const FACIAL: &[&str] = &["😀", "😂", "😭", "😩", "🙃", "😊"];
const EMOTION: &[&str] = &["🤔", "🤗", "🤯", "🥺", "🥰", "🧡"];
const VOCALICS: &[&str] = &[
    "lol", "lmao", "ugh", "ughhh", "hmm", "hmmmm", "haha", "sigh", "gawd", "yikes", "meh", "phew",
    "LoL",
];
const CAPS: &[&str] = &[
    "STOP",
    "NEVER",
    "HELP",
    "SERIOUSLY",
    "WHY",
    "WOW",
    "AMAZING",
    "TODAY",
];
const PUNCT: &[&str] = &["!!", "!!!", "???", "?!", "...", "!!!!!!", "?!?!"];
const ELONGATION: &[&str] = &[
    "soooo", "nooooo", "pleeease", "yesss", "whyyy", "sooo", "reallyyy",
];
const ALT_CASE: &[&str] = &["HiYa", "sArCaSm", "wHaTeVeR", "rEaLlY", "oKaY"];

/// Draw weights roughly following the observed prevalence ordering
/// (intensity markers most common, touch and gaze rarest).
const WEIGHTS: [(CueSubcategory, u64); 10] = [
    (CueSubcategory::VolumePunct, 5),
    (CueSubcategory::VolumeCaps, 4),
    (CueSubcategory::PitchElongation, 3),
    (CueSubcategory::Vocalics, 3),
    (CueSubcategory::FacialExpression, 3),
    (CueSubcategory::EmotionEmoji, 2),
    (CueSubcategory::BodyMovement, 2),
    (CueSubcategory::PitchAltCase, 1),
    (CueSubcategory::Touch, 1),
    (CueSubcategory::EyeMovement, 1),
];

fn pool(sub: CueSubcategory) -> &'static [&'static str] {
    match sub {
        CueSubcategory::BodyMovement => BODY,
        CueSubcategory::Touch => TOUCH,
        CueSubcategory::EyeMovement => EYE,
        CueSubcategory::FacialExpression => FACIAL,
        CueSubcategory::EmotionEmoji => EMOTION,
        CueSubcategory::Vocalics => VOCALICS,
        CueSubcategory::VolumeCaps => CAPS,
        CueSubcategory::VolumePunct => PUNCT,
        CueSubcategory::PitchElongation => ELONGATION,
        CueSubcategory::PitchAltCase => ALT_CASE,
    }
}

fn weighted(rng: &mut SeededRng) -> CueSubcategory {
    let total: u64 = WEIGHTS.iter().map(|(_, w)| w).sum();
    let mut r = rng.below(total);
    for (sub, w) in WEIGHTS {
        if r < w {
            return sub;
        }
        r -= w;
    }
    unreachable!()
}

#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub posts: Vec<Post>,
    /// Span counts expected under the default detector configuration.
    pub planted: FrequencyTable,
}

struct Sentence {
    tokens: Vec<String>,
    terminal: String,
}

/// Generate `n_posts` posts. Emotion labels cycle through [`EMOTIONS`] and
/// the sarcasm flag alternates in blocks, so every (emotion, sarcastic)
/// stratum is equally sized when `n_posts` is a multiple of 10.
pub fn synthetic_corpus(seed: u64, n_posts: usize) -> SyntheticCorpus {
    let mut rng = SeededRng::new(seed);
    let mut planted = FrequencyTable::default();
    let mut posts = Vec::with_capacity(n_posts);

    for i in 0..n_posts {
        let n_sentences = 1 + rng.below(3) as usize;
        let mut sentences: Vec<Sentence> = (0..n_sentences)
            .map(|_| {
                let n_words = 4 + rng.below(6) as usize;
                let mut tokens: Vec<String> =
                    (0..n_words).map(|_| rng.pick(FILLER).to_string()).collect();
                if rng.unit() < 0.3 {
                    let at = 1 + rng.below(tokens.len() as u64) as usize;
                    tokens.insert(at, rng.pick(DECOYS).to_string());
                }
                let terminal = if rng.unit() < 0.2 { "?" } else { "." };
                Sentence {
                    tokens,
                    terminal: terminal.to_string(),
                }
            })
            .collect();

        let mut counts: BTreeMap<CueSubcategory, u64> = BTreeMap::new();
        let n_cues = if rng.unit() < 0.15 {
            0
        } else {
            1 + rng.below(4) as usize
        };
        for _ in 0..n_cues {
            let sub = weighted(&mut rng);
            let surface = *rng.pick(pool(sub));
            let s = rng.below(sentences.len() as u64) as usize;
            let sentence = &mut sentences[s];
            if sub == CueSubcategory::VolumePunct {
                // one expressive terminal per sentence
                if sentence.terminal.chars().count() > 1 {
                    continue;
                }
                sentence.terminal = surface.to_string();
                *counts.entry(sub).or_insert(0) += 1;
                continue;
            }
            let mut token = surface.to_string();
            let mut emitted = 1;
            if matches!(
                sub,
                CueSubcategory::FacialExpression | CueSubcategory::EmotionEmoji
            ) && rng.unit() < 0.3
            {
                // emoji runs are counted per scalar
                emitted = 2 + rng.below(2);
                token = surface.repeat(emitted as usize);
            }
            let at = 1 + rng.below(sentence.tokens.len() as u64) as usize;
            sentence.tokens.insert(at, token);
            *counts.entry(sub).or_insert(0) += emitted;
        }

        let text = sentences
            .iter()
            .map(|s| {
                let mut words = s.tokens.join(" ");
                let first = words.chars().next().unwrap();
                words.replace_range(..first.len_utf8(), &first.to_uppercase().to_string());
                words + &s.terminal
            })
            .collect::<Vec<_>>()
            .join(" ");

        planted.posts_total += 1;
        if !counts.is_empty() {
            planted.posts_with_any_cue += 1;
        }
        for (sub, n) in counts {
            *planted.per_subcategory.get_mut(&sub).unwrap() += n;
            *planted.per_domain.get_mut(&sub.domain()).unwrap() += n;
        }
        posts.push(Post {
            post_id: format!("syn{:04}", i + 1),
            text,
            emotion: Some(EMOTIONS[i % EMOTIONS.len()].to_string()),
            sarcastic: Some((i / EMOTIONS.len()) % 2 == 1),
        });
    }
    SyntheticCorpus { posts, planted }
}
