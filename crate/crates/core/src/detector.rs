//! Pattern engine: one detector per cue family plus the combined
//! [`annotate`] pass with overlap resolution.
//!
//! Detectors work on Unicode scalar offsets. A "word" is a maximal run of
//! alphanumeric scalars. All detectors are pure functions of the text and
//! the configuration.

use std::cmp::Reverse;

use serde_json::Value;

use crate::cue_model::{
    default_lexicons, AnnotatedPost, CueSpan, CueSubcategory, EmojiProfile, Lexicon,
};
use crate::error::{Error, Result};

/// Detector thresholds and lexicon.
///
/// `min_caps_run` defaults to 3: two-letter capital runs are mostly
/// initials and acronyms. `suppress_all_caps_text` drops capitalization
/// cues when a multi-word text is written almost entirely in capitals,
/// since uniform caps carry no contrast.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectorConfig {
    pub lexicon: Lexicon,
    pub min_caps_run: usize,
    pub elongation_min_repeat: usize,
    pub punct_min_repeat: usize,
    pub emoji_profile_name: String,
    pub suppress_all_caps_text: bool,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            lexicon: default_lexicons(),
            min_caps_run: 3,
            elongation_min_repeat: 3,
            punct_min_repeat: 2,
            emoji_profile_name: "paper".to_string(),
            suppress_all_caps_text: true,
        }
    }
}

/// Share of ASCII letters that must be uppercase for the all-caps
/// suppression to apply, as a ratio `NUM / DEN`.
const ALL_CAPS_NUM: usize = 9;
const ALL_CAPS_DEN: usize = 10;

impl DetectorConfig {
    pub fn with_profile(mut self, name: &str) -> Self {
        self.emoji_profile_name = name.to_string();
        self
    }

    pub fn profile(&self) -> Option<&EmojiProfile> {
        self.lexicon.emoji_profile(&self.emoji_profile_name)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: String| Error::Config {
            field: field.to_string(),
            reason,
        };
        if self.min_caps_run < 2 {
            return Err(bad(
                "min_caps_run",
                format!("must be >= 2, got {}", self.min_caps_run),
            ));
        }
        if self.elongation_min_repeat < 3 {
            return Err(bad(
                "elongation_min_repeat",
                format!("must be >= 3, got {}", self.elongation_min_repeat),
            ));
        }
        if self.punct_min_repeat < 2 {
            return Err(bad(
                "punct_min_repeat",
                format!("must be >= 2, got {}", self.punct_min_repeat),
            ));
        }
        if self.profile().is_none() {
            let known: Vec<&str> = self
                .lexicon
                .emoji_profiles
                .keys()
                .map(String::as_str)
                .collect();
            return Err(bad(
                "emoji_profile_name",
                format!(
                    "unknown profile `{}` (known: {})",
                    self.emoji_profile_name,
                    known.join(", ")
                ),
            ));
        }
        self.lexicon.validate()
    }

    /// Applies a flat key-value option map (as accepted by the scripting
    /// bindings) on top of `self`. Unknown keys and ill-typed values are
    /// rejected with the offending field name.
    pub fn with_options(mut self, options: &serde_json::Map<String, Value>) -> Result<Self> {
        fn count(field: &str, value: &Value) -> Result<usize> {
            value
                .as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| Error::Config {
                    field: field.to_string(),
                    reason: format!("expected a non-negative integer, got {value}"),
                })
        }
        for (key, value) in options {
            match key.as_str() {
                "min_caps_run" => self.min_caps_run = count(key, value)?,
                "elongation_min_repeat" => self.elongation_min_repeat = count(key, value)?,
                "punct_min_repeat" => self.punct_min_repeat = count(key, value)?,
                "emoji_profile_name" => {
                    self.emoji_profile_name = value
                        .as_str()
                        .ok_or_else(|| Error::Config {
                            field: key.clone(),
                            reason: format!("expected a string, got {value}"),
                        })?
                        .to_string()
                }
                "suppress_all_caps_text" => {
                    self.suppress_all_caps_text = value.as_bool().ok_or_else(|| Error::Config {
                        field: key.clone(),
                        reason: format!("expected a boolean, got {value}"),
                    })?
                }
                "lexicon" => {
                    self.lexicon =
                        serde_json::from_value::<Lexicon>(value.clone()).map_err(|e| {
                            Error::Config {
                                field: key.clone(),
                                reason: e.to_string(),
                            }
                        })?
                }
                other => {
                    return Err(Error::Config {
                        field: other.to_string(),
                        reason: "unknown option".to_string(),
                    })
                }
            }
        }
        self.validate()?;
        Ok(self)
    }
}

fn make_span(
    chars: &[char],
    start: usize,
    end: usize,
    sub: CueSubcategory,
    cfg: &DetectorConfig,
) -> CueSpan {
    CueSpan {
        start,
        end,
        surface: chars[start..end].iter().collect(),
        subcategory: sub,
        affect_display: cfg.lexicon.affect_display_for(sub),
    }
}

/// Maximal runs of alphanumeric scalars as `(start, end)`.
pub(crate) fn word_bounds(chars: &[char]) -> Vec<(usize, usize)> {
    let mut words = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_alphanumeric() {
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            words.push((start, i));
        } else {
            i += 1;
        }
    }
    words
}

/// Run-length encoding over scalars.
fn runs(chars: impl IntoIterator<Item = char>) -> Vec<(char, usize)> {
    let mut out: Vec<(char, usize)> = Vec::new();
    for c in chars {
        match out.last_mut() {
            Some((prev, n)) if *prev == c => *n += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

/// A lexicon entry compiled to runs. An open tail (`ugh+`) lets the last
/// letter repeat freely.
struct TermPattern<'a> {
    term: &'a str,
    runs: Vec<(char, usize)>,
    open_tail: bool,
}

impl<'a> TermPattern<'a> {
    fn new(raw: &'a str) -> Self {
        let (term, open_tail) = match raw.strip_suffix('+') {
            Some(base) => (base, true),
            None => (raw, false),
        };
        TermPattern {
            term,
            runs: runs(term.chars()),
            open_tail,
        }
    }

    /// Matches a lowercased word, tolerating elongation: each letter run
    /// must have the term's length or be stretched to at least `min_repeat`.
    /// So `lolll` matches `lol` but `lool` does not.
    fn matches(&self, word_runs: &[(char, usize)], min_repeat: usize) -> bool {
        if word_runs.len() != self.runs.len() {
            return false;
        }
        let last = self.runs.len().saturating_sub(1);
        self.runs
            .iter()
            .zip(word_runs)
            .enumerate()
            .all(|(i, ((tc, tn), (wc, wn)))| {
                tc == wc
                    && if i == last && self.open_tail {
                        wn >= tn
                    } else {
                        wn == tn || (*wn >= min_repeat && wn >= tn)
                    }
            })
    }
}

fn lowercase_runs(chars: &[char]) -> Vec<(char, usize)> {
    runs(chars.iter().flat_map(|c| c.to_lowercase()))
}

/// Candidate base forms of a lowercased word: itself, then with -s, -es
/// and -ing removed (restoring a dropped `e` or an undoubled consonant).
fn stem_candidates(word: &str) -> Vec<String> {
    let mut out = vec![word.to_string()];
    if let Some(base) = word.strip_suffix("ing").filter(|b| !b.is_empty()) {
        out.push(base.to_string());
        out.push(format!("{base}e"));
        let tail: Vec<char> = base.chars().rev().take(2).collect();
        if tail.len() == 2 && tail[0] == tail[1] {
            let mut undoubled = base.to_string();
            undoubled.pop();
            out.push(undoubled);
        }
    }
    if let Some(base) = word.strip_suffix("es").filter(|b| !b.is_empty()) {
        out.push(base.to_string());
    }
    if let Some(base) = word.strip_suffix('s').filter(|b| !b.is_empty()) {
        out.push(base.to_string());
    }
    out
}

/// The stage verb a word inflects, if any.
fn match_stage_verb<'a>(
    word: &[char],
    patterns: &[TermPattern<'a>],
    min_repeat: usize,
) -> Option<&'a str> {
    let lower: String = word.iter().flat_map(|c| c.to_lowercase()).collect();
    stem_candidates(&lower).iter().find_map(|stem| {
        let stem_runs = runs(stem.chars());
        patterns
            .iter()
            .find(|p| p.matches(&stem_runs, min_repeat))
            .map(|p| p.term)
    })
}

const MAX_ACTION_LEN: usize = 40;

/// Asterisk-delimited actions (`*hugs*`) whose head word inflects a stage
/// verb, and bare stage verbs as whole words. The head verb decides the
/// subcategory: touch verbs give `Touch`, eye verbs `EyeMovement`, the
/// rest `BodyMovement`.
pub fn detect_stage_directions(text: &str, cfg: &DetectorConfig) -> Vec<CueSpan> {
    let chars: Vec<char> = text.chars().collect();
    let lexicon = &cfg.lexicon;
    let patterns: Vec<TermPattern> = lexicon
        .stage_verbs
        .iter()
        .map(|v| TermPattern::new(v))
        .collect();
    let min_repeat = cfg.elongation_min_repeat;
    let mut spans = Vec::new();
    let mut covered = vec![false; chars.len()];

    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '*' {
            let close = chars[i + 1..]
                .iter()
                .take(MAX_ACTION_LEN + 1)
                .take_while(|c| **c != '\n')
                .position(|c| *c == '*')
                .map(|p| i + 1 + p);
            if let Some(j) = close {
                let content = &chars[i + 1..j];
                let well_formed = content.first().is_some_and(|c| c.is_alphanumeric())
                    && content.last().is_some_and(|c| !c.is_whitespace());
                if well_formed {
                    let head_len = content.iter().take_while(|c| c.is_alphanumeric()).count();
                    if let Some(verb) =
                        match_stage_verb(&content[..head_len], &patterns, min_repeat)
                    {
                        spans.push(make_span(
                            &chars,
                            i,
                            j + 1,
                            lexicon.stage_subcategory(verb),
                            cfg,
                        ));
                        covered[i..=j].iter_mut().for_each(|c| *c = true);
                        i = j + 1;
                        continue;
                    }
                }
            }
        }
        i += 1;
    }

    for (start, end) in word_bounds(&chars) {
        if covered[start] {
            continue;
        }
        if let Some(verb) = match_stage_verb(&chars[start..end], &patterns, min_repeat) {
            spans.push(make_span(
                &chars,
                start,
                end,
                lexicon.stage_subcategory(verb),
                cfg,
            ));
        }
    }
    spans.sort_by_key(CueSpan::order_key);
    spans
}

fn is_sequence_modifier(c: char) -> bool {
    matches!(c as u32, 0xFE00..=0xFE0F | 0x1F3FB..=0x1F3FF | 0x20E3 | 0xE0020..=0xE007F)
}

const ZWJ: char = '\u{200D}';

/// Emoji by code-point class, one span per emoji so repetitions are
/// counted. Profiles with `join_sequences` absorb modifiers and ZWJ
/// continuations into the preceding emoji.
pub fn detect_emoji(text: &str, cfg: &DetectorConfig) -> Vec<CueSpan> {
    let Some(profile) = cfg.profile() else {
        return Vec::new();
    };
    let chars: Vec<char> = text.chars().collect();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let Some(class) = profile.class_of(chars[i]) else {
            i += 1;
            continue;
        };
        let mut end = i + 1;
        if profile.join_sequences {
            loop {
                if end < chars.len() && is_sequence_modifier(chars[end]) {
                    end += 1;
                } else if end + 1 < chars.len()
                    && chars[end] == ZWJ
                    && profile.class_of(chars[end + 1]).is_some()
                {
                    end += 2;
                } else {
                    break;
                }
            }
        }
        spans.push(make_span(&chars, i, end, class.subcategory(), cfg));
        i = end;
    }
    spans
}

/// Whole-word, case-insensitive vocalics, tolerant of elongation.
pub fn detect_vocalics(text: &str, cfg: &DetectorConfig) -> Vec<CueSpan> {
    let chars: Vec<char> = text.chars().collect();
    let patterns: Vec<TermPattern> = cfg
        .lexicon
        .vocalics_terms
        .iter()
        .map(|t| TermPattern::new(t))
        .collect();
    word_bounds(&chars)
        .into_iter()
        .filter(|&(start, end)| {
            let word_runs = lowercase_runs(&chars[start..end]);
            patterns
                .iter()
                .any(|p| p.matches(&word_runs, cfg.elongation_min_repeat))
        })
        .map(|(start, end)| make_span(&chars, start, end, CueSubcategory::Vocalics, cfg))
        .collect()
}

/// True when capitalization carries no contrast: at least two words and
/// nearly all ASCII letters uppercase.
fn is_all_caps_text(chars: &[char]) -> bool {
    let lettered_words = word_bounds(chars)
        .into_iter()
        .filter(|&(s, e)| chars[s..e].iter().any(|c| c.is_ascii_alphabetic()))
        .count();
    let letters = chars.iter().filter(|c| c.is_ascii_alphabetic()).count();
    let upper = chars.iter().filter(|c| c.is_ascii_uppercase()).count();
    lettered_words >= 2 && upper * ALL_CAPS_DEN >= letters * ALL_CAPS_NUM
}

/// Maximal runs of at least `min_caps_run` ASCII capitals, minus
/// stoplisted acronyms.
pub fn detect_volume_caps(text: &str, cfg: &DetectorConfig) -> Vec<CueSpan> {
    let chars: Vec<char> = text.chars().collect();
    if cfg.suppress_all_caps_text && is_all_caps_text(&chars) {
        return Vec::new();
    }
    let mut spans = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].is_ascii_uppercase() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_uppercase() {
            i += 1;
        }
        if i - start >= cfg.min_caps_run {
            let run: String = chars[start..i].iter().collect();
            if !cfg.lexicon.acronym_stoplist.contains(&run) {
                spans.push(make_span(&chars, start, i, CueSubcategory::VolumeCaps, cfg));
            }
        }
    }
    spans
}

pub(crate) fn is_volume_punct(c: char) -> bool {
    matches!(c, '!' | '?' | '.')
}

/// Maximal runs over `!`, `?` and `.` of at least `punct_min_repeat`.
/// Dot-only runs are ellipses and count here too.
pub fn detect_volume_punct(text: &str, cfg: &DetectorConfig) -> Vec<CueSpan> {
    let chars: Vec<char> = text.chars().collect();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !is_volume_punct(chars[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && is_volume_punct(chars[i]) {
            i += 1;
        }
        if i - start >= cfg.punct_min_repeat {
            spans.push(make_span(
                &chars,
                start,
                i,
                CueSubcategory::VolumePunct,
                cfg,
            ));
        }
    }
    spans
}

/// Runs of one repeated letter inside a word, `(start, end)`, at least
/// `min_repeat` long.
pub(crate) fn elongated_runs(word: &[char], min_repeat: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let start = i;
        while i < word.len() && word[i] == word[start] {
            i += 1;
        }
        if word[start].is_alphabetic() && i - start >= min_repeat {
            out.push((start, i));
        }
    }
    out
}

/// Words containing a letter repeated at least `elongation_min_repeat`
/// times in a row; the span covers the whole word.
pub fn detect_elongation(text: &str, cfg: &DetectorConfig) -> Vec<CueSpan> {
    let chars: Vec<char> = text.chars().collect();
    word_bounds(&chars)
        .into_iter()
        .filter(|&(s, e)| !elongated_runs(&chars[s..e], cfg.elongation_min_repeat).is_empty())
        .map(|(s, e)| make_span(&chars, s, e, CueSubcategory::PitchElongation, cfg))
        .collect()
}

pub(crate) fn is_alternating_case(word: &[char]) -> bool {
    let transitions = word
        .windows(2)
        .filter(|w| w[0].is_ascii_lowercase() && w[1].is_ascii_uppercase())
        .count();
    let strict = word.len() >= 4
        && word.iter().enumerate().all(|(i, c)| {
            if i % 2 == 0 {
                c.is_ascii_uppercase()
            } else {
                c.is_ascii_lowercase()
            }
        });
    transitions >= 2 || strict
}

/// Words with two or more internal lower-to-upper transitions
/// (`ooOoOoh`) or strict upper/lower alternation of length four or more
/// (`HiYa`).
pub fn detect_alternating_case(text: &str, cfg: &DetectorConfig) -> Vec<CueSpan> {
    let chars: Vec<char> = text.chars().collect();
    word_bounds(&chars)
        .into_iter()
        .filter(|&(s, e)| is_alternating_case(&chars[s..e]))
        .map(|(s, e)| make_span(&chars, s, e, CueSubcategory::PitchAltCase, cfg))
        .collect()
}

fn is_stage_surface(surface: &str) -> bool {
    surface.chars().any(|c| c.is_alphabetic() || c == '*')
}

/// Lower is stronger. Stage-direction kinesics and emoji kinesics share
/// subcategories, so the surface tells them apart.
fn priority(span: &CueSpan) -> u8 {
    use CueSubcategory::*;
    match span.subcategory {
        Vocalics => 0,
        BodyMovement | Touch | EyeMovement if is_stage_surface(&span.surface) => 1,
        BodyMovement | Touch | EyeMovement | FacialExpression | EmotionEmoji => 2,
        VolumeCaps => 3,
        PitchAltCase => 4,
        PitchElongation => 5,
        VolumePunct => 6,
    }
}

/// Keeps one span out of every overlapping group: vocalics, then stage
/// directions, emoji, capitals, alternating case, elongation and finally
/// punctuation. Ties go to the longer span, then the earlier one.
///
/// This ordering is a local choice; the taxonomy only says to code a
/// cue by its primary communicative function.
pub fn resolve_overlaps(text: &str, spans: Vec<CueSpan>) -> Result<Vec<CueSpan>> {
    let len = text.chars().count();
    if let Some(bad) = spans.iter().find(|s| s.start >= s.end || s.end > len) {
        return Err(Error::SpanOutOfBounds {
            start: bad.start,
            end: bad.end,
            len,
        });
    }
    let mut candidates = spans;
    candidates.sort_by_key(|s| (priority(s), Reverse(s.len()), s.start, s.end, s.subcategory));
    let mut kept: Vec<CueSpan> = Vec::with_capacity(candidates.len());
    for span in candidates {
        if !kept.iter().any(|k| k.overlaps(&span)) {
            kept.push(span);
        }
    }
    kept.sort_by_key(CueSpan::order_key);
    Ok(kept)
}

/// Every detector's raw output, before overlap resolution.
pub fn detect_all(text: &str, cfg: &DetectorConfig) -> Vec<CueSpan> {
    let mut spans = detect_stage_directions(text, cfg);
    spans.extend(detect_emoji(text, cfg));
    spans.extend(detect_vocalics(text, cfg));
    spans.extend(detect_volume_caps(text, cfg));
    spans.extend(detect_volume_punct(text, cfg));
    spans.extend(detect_elongation(text, cfg));
    spans.extend(detect_alternating_case(text, cfg));
    spans
}

pub fn annotate(post_id: &str, text: &str, cfg: &DetectorConfig) -> AnnotatedPost {
    let spans =
        resolve_overlaps(text, detect_all(text, cfg)).expect("detector spans lie within the text");
    AnnotatedPost::new(post_id, text, spans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use CueSubcategory::*;

    fn cfg() -> DetectorConfig {
        DetectorConfig::default()
    }

    fn subs(spans: &[CueSpan]) -> Vec<CueSubcategory> {
        spans.iter().map(|s| s.subcategory).collect()
    }

    fn surfaces(spans: &[CueSpan]) -> Vec<&str> {
        spans.iter().map(|s| s.surface.as_str()).collect()
    }

    #[test]
    fn stage_asterisk_touch() {
        let spans = detect_stage_directions("*hugs*", &cfg());
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].subcategory, Touch);
        assert_eq!(spans[0].surface, "*hugs*");
        assert_eq!((spans[0].start, spans[0].end), (0, 6));
    }

    #[test]
    fn stage_empty_and_unknown_verbs() {
        assert!(detect_stage_directions("", &cfg()).is_empty());
        let spans = detect_stage_directions("hug me *kicks*", &cfg());
        assert_eq!(surfaces(&spans), vec!["hug"]);
        assert_eq!(subs(&spans), vec![Touch]);

        let mut custom = cfg();
        custom.lexicon.stage_verbs.insert("kick".into());
        let spans = detect_stage_directions("hug me *kicks*", &custom);
        assert_eq!(surfaces(&spans), vec!["hug", "*kicks*"]);
        assert_eq!(subs(&spans), vec![Touch, BodyMovement]);
    }

    #[test]
    fn stage_inflections_and_classes() {
        let spans = detect_stage_directions(
            "she frowns, then *winks* and *holds hand* *smiling*",
            &cfg(),
        );
        assert_eq!(
            surfaces(&spans),
            vec!["frowns", "*winks*", "*holds hand*", "*smiling*"]
        );
        assert_eq!(
            subs(&spans),
            vec![BodyMovement, EyeMovement, Touch, BodyMovement]
        );
        let spans = detect_stage_directions("*hugging* *clapping*", &cfg());
        assert_eq!(subs(&spans), vec![Touch, BodyMovement]);
    }

    #[test]
    fn stage_malformed_actions_fall_back_to_bare_words() {
        let spans = detect_stage_directions("* hug *", &cfg());
        assert_eq!(surfaces(&spans), vec!["hug"]);
        assert!(detect_stage_directions("**", &cfg()).is_empty());
        assert!(detect_stage_directions("huge shrugging", &cfg()).len() == 1);
    }

    #[test]
    fn emoji_classes() {
        let spans = detect_emoji("\u{1F604}", &cfg());
        assert_eq!(subs(&spans), vec![FacialExpression]);
        assert!(detect_emoji("plain text", &cfg()).is_empty());
        let spans = detect_emoji("I love caaaats \u{1F431}\u{1F431}", &cfg());
        assert_eq!(subs(&spans), vec![BodyMovement, BodyMovement]);
        assert_eq!(spans[0].start, 15);
    }

    #[test]
    fn emoji_repetition_counts_each_scalar() {
        let thinking = "\u{1F914}\u{1F914}\u{1F914}";
        let spans = detect_emoji(thinking, &cfg().with_profile("extended"));
        assert_eq!(subs(&spans), vec![FacialExpression; 3]);
        // verbatim ranges put U+1F914 in the heart/symbol block
        let spans = detect_emoji(thinking, &cfg());
        assert_eq!(subs(&spans), vec![EmotionEmoji; 3]);
    }

    #[test]
    fn extended_profile_joins_sequences() {
        let ext = cfg().with_profile("extended");
        let heart = "\u{2764}\u{FE0F}";
        let spans = detect_emoji(heart, &ext);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].surface, heart);
        assert_eq!(spans[0].subcategory, EmotionEmoji);
        // woman facepalming, medium skin tone: one cue
        let facepalm = "\u{1F926}\u{1F3FD}\u{200D}\u{2640}\u{FE0F}";
        let spans = detect_emoji(facepalm, &ext);
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].end, 5);
        assert_eq!(spans[0].subcategory, BodyMovement);
        // paper profile: no joining, heart not covered
        assert!(detect_emoji(heart, &cfg()).is_empty());
    }

    #[test]
    fn vocalics_whole_word_and_elongation() {
        assert_eq!(surfaces(&detect_vocalics("lol", &cfg())), vec!["lol"]);
        let spans = detect_vocalics("ughhh", &cfg());
        assert_eq!((spans[0].start, spans[0].end), (0, 5));
        assert!(detect_vocalics("loly", &cfg()).is_empty());
        assert!(detect_vocalics("lool", &cfg()).is_empty());
        assert_eq!(
            surfaces(&detect_vocalics("LOL, Hmmmm... LoL lolll", &cfg())),
            vec!["LOL", "Hmmmm", "LoL", "lolll"]
        );
        assert!(detect_vocalics("hm", &cfg()).is_empty());
        assert_eq!(detect_vocalics("hahaaaa", &cfg()).len(), 1);
    }

    #[test]
    fn volume_caps_cases() {
        assert_eq!(
            surfaces(&detect_volume_caps("absolutely NOT", &cfg())),
            vec!["NOT"]
        );
        assert!(detect_volume_caps("NASA launch", &cfg()).is_empty());
        let damn = "Just finished reading Fahrenheit 451... DAMN...";
        assert_eq!(surfaces(&detect_volume_caps(damn, &cfg())), vec!["DAMN"]);
        assert_eq!(surfaces(&detect_volume_caps("THIS", &cfg())), vec!["THIS"]);
        assert!(detect_volume_caps("go to the UK", &cfg()).is_empty());
    }

    #[test]
    fn volume_caps_all_caps_suppression() {
        let shouted = "IM CUTTING MY HAIR TODAY";
        assert!(detect_volume_caps(shouted, &cfg()).is_empty());
        let mut off = cfg();
        off.suppress_all_caps_text = false;
        assert_eq!(
            surfaces(&detect_volume_caps(shouted, &off)),
            vec!["CUTTING", "HAIR", "TODAY"]
        );
        let mut two = cfg();
        two.min_caps_run = 2;
        assert_eq!(
            surfaces(&detect_volume_caps("an OK day, really NO", &two)),
            vec!["NO"]
        );
    }

    #[test]
    fn volume_punct_cases() {
        let spans = detect_volume_punct("Today is Friday!!!!!!", &cfg());
        assert_eq!(surfaces(&spans), vec!["!!!!!!"]);
        assert_eq!(
            surfaces(&detect_volume_punct("overthinking..", &cfg())),
            vec![".."]
        );
        assert!(detect_volume_punct("Done.", &cfg()).is_empty());
        assert_eq!(
            surfaces(&detect_volume_punct("what?! no... ok.", &cfg())),
            vec!["?!", "..."]
        );
    }

    #[test]
    fn elongation_cases() {
        assert_eq!(
            surfaces(&detect_elongation("soooo good", &cfg())),
            vec!["soooo"]
        );
        assert!(detect_elongation("soo good", &cfg()).is_empty());
        assert_eq!(
            surfaces(&detect_elongation("thankkkkk goood", &cfg())),
            vec!["thankkkkk", "goood"]
        );
        assert!(detect_elongation("in 1999", &cfg()).is_empty());
    }

    #[test]
    fn alternating_case_cases() {
        assert_eq!(
            surfaces(&detect_alternating_case("HiYa", &cfg())),
            vec!["HiYa"]
        );
        assert!(detect_alternating_case("Hello", &cfg()).is_empty());
        assert_eq!(
            surfaces(&detect_alternating_case("ooOoOoh", &cfg())),
            vec!["ooOoOoh"]
        );
        assert!(detect_alternating_case("HELLO hello iPhone McDonald", &cfg()).is_empty());
        assert!(detect_alternating_case("LoL", &cfg()).is_empty());
    }

    fn span(start: usize, end: usize, text: &str, sub: CueSubcategory) -> CueSpan {
        let chars: Vec<char> = text.chars().collect();
        make_span(&chars, start, end, sub, &cfg())
    }

    #[test]
    fn resolve_priority_rules() {
        let text = "LoL";
        let spans = vec![
            span(0, 3, text, PitchAltCase),
            span(0, 3, text, Vocalics),
            span(0, 1, text, VolumeCaps),
        ];
        assert_eq!(
            subs(&resolve_overlaps(text, spans).unwrap()),
            vec![Vocalics]
        );

        let text = "ughhh";
        let spans = vec![
            span(0, 5, text, PitchElongation),
            span(0, 5, text, Vocalics),
        ];
        assert_eq!(
            subs(&resolve_overlaps(text, spans).unwrap()),
            vec![Vocalics]
        );

        let text = "a b c";
        let disjoint = vec![span(4, 5, text, VolumePunct), span(0, 1, text, Vocalics)];
        let out = resolve_overlaps(text, disjoint.clone()).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], disjoint[1]);
    }

    #[test]
    fn resolve_tie_breaks() {
        let text = "abcdef";
        // equal priority: longer wins, then earlier
        let spans = vec![span(0, 2, text, VolumeCaps), span(1, 5, text, VolumeCaps)];
        assert_eq!(resolve_overlaps(text, spans).unwrap()[0].start, 1);
        let spans = vec![span(2, 4, text, VolumeCaps), span(1, 3, text, VolumeCaps)];
        assert_eq!(resolve_overlaps(text, spans).unwrap()[0].start, 1);
    }

    #[test]
    fn resolve_rejects_out_of_bounds() {
        let bad = CueSpan {
            start: 2,
            end: 9,
            surface: String::new(),
            subcategory: VolumePunct,
            affect_display: false,
        };
        assert!(matches!(
            resolve_overlaps("abc", vec![bad]),
            Err(Error::SpanOutOfBounds { len: 3, .. })
        ));
    }

    #[test]
    fn annotate_worked_examples() {
        let text = "I have so much homework & I'm overthinking.. \u{1F629} gawd I'm such a mess...";
        let post = annotate("s1", text, &cfg());
        assert!(post.count(VolumePunct) >= 1);
        assert!(post.count(FacialExpression) + post.count(EmotionEmoji) >= 1);
        assert!(post
            .spans
            .iter()
            .any(|s| s.subcategory == Vocalics && s.surface == "gawd"));

        assert!(annotate("b1", "singing is a wonderful remedy.", &cfg())
            .spans
            .is_empty());

        let post = annotate(
            "b2",
            "My cat cuddled with me and I feel better. I love caaaats \u{1F431}\u{1F431}",
            &cfg(),
        );
        assert_eq!(
            subs(&post.spans),
            vec![PitchElongation, BodyMovement, BodyMovement]
        );
        assert_eq!(post.spans[0].surface, "caaaats");
    }

    #[test]
    fn annotate_sets_affect_display() {
        let post = annotate("x", "lol \u{1F604} NOOO", &cfg());
        let flags: Vec<(CueSubcategory, bool)> = post
            .spans
            .iter()
            .map(|s| (s.subcategory, s.affect_display))
            .collect();
        assert_eq!(
            flags,
            vec![
                (Vocalics, true),
                (FacialExpression, true),
                (VolumeCaps, false)
            ]
        );
    }

    #[test]
    fn options_map_validation() {
        let opts: serde_json::Map<String, Value> =
            serde_json::from_str(r#"{"min_caps_run": 2, "emoji_profile_name": "extended"}"#)
                .unwrap();
        let cfg = DetectorConfig::default().with_options(&opts).unwrap();
        assert_eq!(cfg.min_caps_run, 2);
        assert_eq!(cfg.emoji_profile_name, "extended");

        for (json, field) in [
            (r#"{"min_caps": 2}"#, "min_caps"),
            (r#"{"min_caps_run": "two"}"#, "min_caps_run"),
            (r#"{"min_caps_run": 1}"#, "min_caps_run"),
            (r#"{"elongation_min_repeat": 2}"#, "elongation_min_repeat"),
            (r#"{"emoji_profile_name": "none"}"#, "emoji_profile_name"),
        ] {
            let opts: serde_json::Map<String, Value> = serde_json::from_str(json).unwrap();
            match DetectorConfig::default().with_options(&opts) {
                Err(Error::Config { field: f, .. }) => assert_eq!(f, field),
                other => panic!("{json}: {other:?}"),
            }
        }
    }
}
