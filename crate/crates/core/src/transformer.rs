//! Cue neutralization: turns a post into its "cues removed" variant while
//! keeping the lexical content.
//!
//! The rules run in a fixed order and each one re-detects on the current
//! text. The whole sequence repeats until a pass changes nothing, so one
//! rule can clean up what an earlier one exposed (deleting an emoji can
//! glue two `!` runs together, folding capitals can line up three equal
//! letters). The result is a fixpoint, hence idempotent. Every edit is
//! reported against the original text: the working buffer carries, for
//! each scalar, its offset in the input.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cue_model::{CueSpan, CueSubcategory};
use crate::detector::{
    annotate, detect_alternating_case, detect_emoji, detect_stage_directions, detect_vocalics,
    detect_volume_caps, detect_volume_punct, elongated_runs, is_volume_punct, word_bounds,
    DetectorConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StripRule {
    EmojiDelete,
    StageDelete,
    VocalicsDelete,
    ElongationCollapse,
    CapsFold,
    PunctCollapse,
    WhitespaceNormalize,
}

impl StripRule {
    /// Application order.
    pub const ALL: [StripRule; 7] = [
        StripRule::EmojiDelete,
        StripRule::StageDelete,
        StripRule::VocalicsDelete,
        StripRule::ElongationCollapse,
        StripRule::CapsFold,
        StripRule::PunctCollapse,
        StripRule::WhitespaceNormalize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StripRule::EmojiDelete => "emoji_delete",
            StripRule::StageDelete => "stage_delete",
            StripRule::VocalicsDelete => "vocalics_delete",
            StripRule::ElongationCollapse => "elongation_collapse",
            StripRule::CapsFold => "caps_fold",
            StripRule::PunctCollapse => "punct_collapse",
            StripRule::WhitespaceNormalize => "whitespace_normalize",
        }
    }
}

impl std::str::FromStr for StripRule {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        StripRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| crate::Error::InvalidArgument(format!("unknown strip rule `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripConfig {
    pub rules_enabled: BTreeSet<StripRule>,
    pub detector_cfg: DetectorConfig,
}

impl StripConfig {
    pub fn new(detector_cfg: DetectorConfig) -> Self {
        StripConfig {
            rules_enabled: StripRule::ALL.into_iter().collect(),
            detector_cfg,
        }
    }

    pub fn without(mut self, rule: StripRule) -> Self {
        self.rules_enabled.remove(&rule);
        self
    }

    pub fn enabled(&self, rule: StripRule) -> bool {
        self.rules_enabled.contains(&rule)
    }

    /// Option-map form used by the bindings: `rules_enabled` takes a list of
    /// rule names; every other key is forwarded to
    /// [`DetectorConfig::with_options`].
    pub fn with_options(
        mut self,
        options: &serde_json::Map<String, serde_json::Value>,
    ) -> crate::Result<Self> {
        let mut detector_opts = options.clone();
        if let Some(value) = detector_opts.remove("rules_enabled") {
            let bad = |reason: String| crate::Error::Config {
                field: "rules_enabled".into(),
                reason,
            };
            let list = value
                .as_array()
                .ok_or_else(|| bad(format!("expected a list of rule names, got {value}")))?;
            let mut rules = BTreeSet::new();
            for item in list {
                let name = item
                    .as_str()
                    .ok_or_else(|| bad(format!("expected a rule name, got {item}")))?;
                rules.insert(name.parse::<StripRule>().map_err(|e| bad(e.to_string()))?);
            }
            self.rules_enabled = rules;
        }
        self.detector_cfg = self.detector_cfg.with_options(&detector_opts)?;
        Ok(self)
    }
}

impl Default for StripConfig {
    fn default() -> Self {
        StripConfig::new(DetectorConfig::default())
    }
}

/// One edit, located in the original text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    pub rule: StripRule,
    pub span: CueSpan,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripReport {
    pub output: String,
    pub removals: Vec<Removal>,
}

/// Passes are bounded; every pass that changes the text shortens it or
/// lowers its count of capitals, so this is never reached in practice.
const MAX_PASSES: usize = 64;

struct Buffer<'a> {
    original: &'a [char],
    chars: Vec<char>,
    origin: Vec<usize>,
}

impl<'a> Buffer<'a> {
    fn new(original: &'a [char]) -> Self {
        Buffer {
            original,
            chars: original.to_vec(),
            origin: (0..original.len()).collect(),
        }
    }

    fn text(&self) -> String {
        self.chars.iter().collect()
    }

    /// Maps a `[start, end)` range of the buffer back to the input.
    fn original_span(
        &self,
        start: usize,
        end: usize,
        sub: CueSubcategory,
        cfg: &DetectorConfig,
    ) -> CueSpan {
        let lo = self.origin[start];
        let hi = self.origin[end - 1] + 1;
        CueSpan {
            start: lo,
            end: hi,
            surface: self.original[lo..hi].iter().collect(),
            subcategory: sub,
            affect_display: cfg.lexicon.affect_display_for(sub),
        }
    }

    fn retain(&mut self, keep: &[bool]) {
        let mut i = 0;
        self.chars.retain(|_| {
            i += 1;
            keep[i - 1]
        });
        let mut i = 0;
        self.origin.retain(|_| {
            i += 1;
            keep[i - 1]
        });
    }

    /// Deletes the given ranges. A deleted stretch also takes one adjacent
    /// whitespace when the other side is whitespace or the text edge; a
    /// stretch wedged between two alphanumerics becomes a single space.
    /// Either way no two words merge.
    fn delete_ranges(&mut self, ranges: &[(usize, usize)]) {
        let n = self.chars.len();
        let mut delete = vec![false; n];
        for &(s, e) in ranges {
            delete[s..e].iter_mut().for_each(|d| *d = true);
        }
        let mut i = 0;
        while i < n {
            if !delete[i] {
                i += 1;
                continue;
            }
            let start = i;
            while i < n && delete[i] {
                i += 1;
            }
            let end = i;
            let left = (start > 0 && !delete[start - 1]).then(|| self.chars[start - 1]);
            let right = (end < n).then(|| self.chars[end]);
            let left_open = left.is_none_or(char::is_whitespace);
            let right_open = right.is_none_or(char::is_whitespace);
            if right.is_some_and(char::is_whitespace) && left_open {
                delete[end] = true;
                i = end + 1;
            } else if left.is_some_and(char::is_whitespace) && right_open {
                delete[start - 1] = true;
            } else if left.is_some_and(char::is_alphanumeric)
                && right.is_some_and(char::is_alphanumeric)
            {
                delete[start] = false;
                self.chars[start] = ' ';
            }
        }
        let keep: Vec<bool> = delete.iter().map(|d| !d).collect();
        self.retain(&keep);
    }
}

fn deletion_rule(
    buf: &mut Buffer,
    rule: StripRule,
    spans: Vec<CueSpan>,
    cfg: &DetectorConfig,
    removals: &mut Vec<Removal>,
) {
    if spans.is_empty() {
        return;
    }
    for span in &spans {
        removals.push(Removal {
            rule,
            span: buf.original_span(span.start, span.end, span.subcategory, cfg),
        });
    }
    let ranges: Vec<(usize, usize)> = spans.iter().map(|s| (s.start, s.end)).collect();
    buf.delete_ranges(&ranges);
}

/// Collapses each run of `elongation_min_repeat` or more equal letters to
/// one letter, or to two when that spelling is a known double-letter word.
fn collapse_elongation(buf: &mut Buffer, cfg: &DetectorConfig, removals: &mut Vec<Removal>) {
    let mut keep = vec![true; buf.chars.len()];
    let mut touched = false;
    for (ws, we) in word_bounds(&buf.chars) {
        let word = &buf.chars[ws..we];
        let runs = elongated_runs(word, cfg.elongation_min_repeat);
        if runs.is_empty() {
            continue;
        }
        let spelled = |lengths: &[usize]| -> String {
            let mut out = String::new();
            let mut pos = 0;
            for (&(s, e), &len) in runs.iter().zip(lengths) {
                out.extend(word[pos..s].iter());
                out.extend(word[s..s + len].iter());
                pos = e;
            }
            out.extend(word[pos..].iter());
            out.to_lowercase()
        };
        let mut lengths = vec![1; runs.len()];
        for k in 0..runs.len() {
            lengths[k] = 2;
            if cfg.lexicon.common_doubles.contains(&spelled(&lengths)) {
                break;
            }
            lengths[k] = 1;
        }
        for (&(s, e), &len) in runs.iter().zip(&lengths) {
            keep[ws + s + len..ws + e]
                .iter_mut()
                .for_each(|k| *k = false);
        }
        removals.push(Removal {
            rule: StripRule::ElongationCollapse,
            span: buf.original_span(ws, we, CueSubcategory::PitchElongation, cfg),
        });
        touched = true;
    }
    if touched {
        buf.retain(&keep);
    }
}

fn is_sentence_initial(chars: &[char], pos: usize) -> bool {
    if pos == 0 {
        return true;
    }
    if !chars[pos - 1].is_whitespace() {
        return false;
    }
    match chars[..pos].iter().rev().find(|c| !c.is_whitespace()) {
        None => true,
        Some(c) => is_volume_punct(*c),
    }
}

/// Lowercases capital runs and alternating-case words. A capital that
/// opens a sentence stays capital.
fn fold_caps(buf: &mut Buffer, cfg: &DetectorConfig, removals: &mut Vec<Removal>) {
    let text = buf.text();
    let mut spans = detect_volume_caps(&text, cfg);
    spans.extend(detect_alternating_case(&text, cfg));
    if spans.is_empty() {
        return;
    }
    spans.sort_by_key(CueSpan::order_key);
    let was_upper: Vec<bool> = buf.chars.iter().map(char::is_ascii_uppercase).collect();
    for span in &spans {
        removals.push(Removal {
            rule: StripRule::CapsFold,
            span: buf.original_span(span.start, span.end, span.subcategory, cfg),
        });
        for c in &mut buf.chars[span.start..span.end] {
            c.make_ascii_lowercase();
        }
    }
    for span in &spans {
        if was_upper[span.start] && is_sentence_initial(&buf.chars, span.start) {
            buf.chars[span.start].make_ascii_uppercase();
        }
    }
}

/// Reduces each punctuation run to its first mark.
fn collapse_punct(buf: &mut Buffer, cfg: &DetectorConfig, removals: &mut Vec<Removal>) {
    let spans = detect_volume_punct(&buf.text(), cfg);
    if spans.is_empty() {
        return;
    }
    let mut keep = vec![true; buf.chars.len()];
    for span in &spans {
        removals.push(Removal {
            rule: StripRule::PunctCollapse,
            span: buf.original_span(span.start, span.end, span.subcategory, cfg),
        });
        keep[span.start + 1..span.end]
            .iter_mut()
            .for_each(|k| *k = false);
    }
    buf.retain(&keep);
}

fn attaches_leftward(c: char) -> bool {
    matches!(c, ',' | '.' | '!' | '?' | ';' | ':')
}

/// Whitespace runs become one space, edges are trimmed and a space before
/// punctuation is dropped, unless dropping it would join two expressive
/// marks into a new run.
fn normalize_whitespace(buf: &mut Buffer) {
    let mut chars: Vec<char> = Vec::with_capacity(buf.chars.len());
    let mut origin: Vec<usize> = Vec::with_capacity(buf.chars.len());
    let n = buf.chars.len();
    let mut i = 0;
    while i < n {
        let c = buf.chars[i];
        if !c.is_whitespace() {
            chars.push(c);
            origin.push(buf.origin[i]);
            i += 1;
            continue;
        }
        let start = i;
        while i < n && buf.chars[i].is_whitespace() {
            i += 1;
        }
        let at_edge = chars.is_empty() || i == n;
        let before_mark = i < n && attaches_leftward(buf.chars[i]);
        let joins_marks = before_mark
            && is_volume_punct(buf.chars[i])
            && chars.last().is_some_and(|p| is_volume_punct(*p));
        if at_edge || (before_mark && !joins_marks) {
            continue;
        }
        chars.push(' ');
        origin.push(buf.origin[start]);
    }
    buf.chars = chars;
    buf.origin = origin;
}

/// Removes cues from `text` under `cfg`. See the module docs for the rule
/// order and the fixpoint.
pub fn strip(text: &str, cfg: &StripConfig) -> StripReport {
    let original: Vec<char> = text.chars().collect();
    let dcfg = &cfg.detector_cfg;
    let mut buf = Buffer::new(&original);
    let mut removals = Vec::new();

    for _ in 0..MAX_PASSES {
        let before = buf.chars.clone();
        for rule in StripRule::ALL {
            if !cfg.enabled(rule) {
                continue;
            }
            match rule {
                StripRule::EmojiDelete => {
                    let spans = detect_emoji(&buf.text(), dcfg);
                    deletion_rule(&mut buf, rule, spans, dcfg, &mut removals);
                }
                StripRule::StageDelete => {
                    let spans = detect_stage_directions(&buf.text(), dcfg);
                    deletion_rule(&mut buf, rule, spans, dcfg, &mut removals);
                }
                StripRule::VocalicsDelete => {
                    let spans = detect_vocalics(&buf.text(), dcfg);
                    deletion_rule(&mut buf, rule, spans, dcfg, &mut removals);
                }
                StripRule::ElongationCollapse => collapse_elongation(&mut buf, dcfg, &mut removals),
                StripRule::CapsFold => fold_caps(&mut buf, dcfg, &mut removals),
                StripRule::PunctCollapse => collapse_punct(&mut buf, dcfg, &mut removals),
                StripRule::WhitespaceNormalize => normalize_whitespace(&mut buf),
            }
        }
        if buf.chars == before {
            break;
        }
    }

    StripReport {
        output: buf.text(),
        removals,
    }
}

/// True when the stripped text has no detectable cue left.
pub fn verify_stripped(text: &str, cfg: &StripConfig) -> bool {
    let stripped = strip(text, cfg);
    annotate("", &stripped.output, &cfg.detector_cfg)
        .spans
        .is_empty()
}
