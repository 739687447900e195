//! Detection, classification and neutralization of electronic nonverbal
//! cues (emoji, elongation, capitals, expressive punctuation, stage
//! directions) in short social-media texts, plus the corpus and
//! reader-experiment tooling built on top.

pub mod cli;
pub mod corpus;
pub mod cue_model;
pub mod detector;
pub mod error;
pub mod experiment;
pub mod rng;
pub mod synth;
pub mod transformer;

pub use corpus::{
    annotate_corpus, category_frequencies, precision_from_reviews, read_posts, stratified_sample,
    FrequencyTable, InputFormat, Post, ReviewBatch, ReviewItem, Verdict,
};
pub use cue_model::{
    default_lexicons, subcategory_domain, AnnotatedPost, CueDomain, CueSpan, CueSubcategory,
    Lexicon,
};
pub use detector::{annotate, DetectorConfig};
pub use error::{Error, Result};
pub use experiment::{
    analyze, build_design, logistic_fit, paired_t_test, score_responses, wilson_interval,
    CueCondition, ResponseRecord, StimulusItem,
};
pub use transformer::{strip, verify_stripped, StripConfig, StripReport, StripRule};
