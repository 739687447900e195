//! Cue taxonomy, span types and the bundled lexicons.
//!
//! Every other module consumes these types. A [`Lexicon`] carries the word
//! lists and Unicode emoji profiles the detectors match against; the default
//! one is built by [`default_lexicons`] and a custom one can be loaded from a
//! JSON document with [`Lexicon::from_json_str`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The two structural domains of the taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CueDomain {
    Kinesics,
    Paralinguistics,
}

impl CueDomain {
    pub const ALL: [CueDomain; 2] = [CueDomain::Kinesics, CueDomain::Paralinguistics];
}

impl fmt::Display for CueDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CueDomain::Kinesics => "Kinesics",
            CueDomain::Paralinguistics => "Paralinguistics",
        })
    }
}

/// Fine-grained cue category. The declaration order is the ordinal used to
/// break ties when sorting spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CueSubcategory {
    BodyMovement,
    Touch,
    EyeMovement,
    FacialExpression,
    EmotionEmoji,
    Vocalics,
    VolumeCaps,
    VolumePunct,
    PitchElongation,
    PitchAltCase,
}

impl CueSubcategory {
    pub const ALL: [CueSubcategory; 10] = [
        CueSubcategory::BodyMovement,
        CueSubcategory::Touch,
        CueSubcategory::EyeMovement,
        CueSubcategory::FacialExpression,
        CueSubcategory::EmotionEmoji,
        CueSubcategory::Vocalics,
        CueSubcategory::VolumeCaps,
        CueSubcategory::VolumePunct,
        CueSubcategory::PitchElongation,
        CueSubcategory::PitchAltCase,
    ];

    pub fn domain(self) -> CueDomain {
        subcategory_domain(self)
    }

    pub fn name(self) -> &'static str {
        match self {
            CueSubcategory::BodyMovement => "BodyMovement",
            CueSubcategory::Touch => "Touch",
            CueSubcategory::EyeMovement => "EyeMovement",
            CueSubcategory::FacialExpression => "FacialExpression",
            CueSubcategory::EmotionEmoji => "EmotionEmoji",
            CueSubcategory::Vocalics => "Vocalics",
            CueSubcategory::VolumeCaps => "VolumeCaps",
            CueSubcategory::VolumePunct => "VolumePunct",
            CueSubcategory::PitchElongation => "PitchElongation",
            CueSubcategory::PitchAltCase => "PitchAltCase",
        }
    }

    /// Whether the subcategory is flagged as an affect display when the
    /// lexicon does not override the set.
    pub fn default_affect_display(self) -> bool {
        matches!(
            self,
            CueSubcategory::FacialExpression
                | CueSubcategory::EmotionEmoji
                | CueSubcategory::Vocalics
        )
    }
}

impl fmt::Display for CueSubcategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CueSubcategory {
    type Err = Error;

    /// Case-insensitive; underscores and hyphens are ignored so `volume_caps`
    /// and `VolumeCaps` both parse.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| *c != '_' && *c != '-')
            .flat_map(char::to_lowercase)
            .collect();
        CueSubcategory::ALL
            .into_iter()
            .find(|sub| sub.name().to_lowercase() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown cue subcategory `{s}`")))
    }
}

/// Kinesics: body movement, touch, eye movement, facial expression and
/// emotion-conveying emoji. Paralinguistics: vocalics, volume and pitch.
pub fn subcategory_domain(sub: CueSubcategory) -> CueDomain {
    use CueSubcategory::*;
    match sub {
        BodyMovement | Touch | EyeMovement | FacialExpression | EmotionEmoji => CueDomain::Kinesics,
        Vocalics | VolumeCaps | VolumePunct | PitchElongation | PitchAltCase => {
            CueDomain::Paralinguistics
        }
    }
}

/// One detected cue occurrence. Offsets count Unicode scalar values, `end`
/// is exclusive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CueSpan {
    pub start: usize,
    pub end: usize,
    pub surface: String,
    pub subcategory: CueSubcategory,
    pub affect_display: bool,
}

impl CueSpan {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn overlaps(&self, other: &CueSpan) -> bool {
        self.start < other.end && other.start < self.end
    }

    /// Sort key used everywhere spans are ordered.
    pub fn order_key(&self) -> (usize, usize, CueSubcategory) {
        (self.start, self.end, self.subcategory)
    }
}

/// A post with its resolved, ordered cue spans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedPost {
    pub post_id: String,
    pub text: String,
    pub spans: Vec<CueSpan>,
    pub counts: BTreeMap<CueSubcategory, u64>,
}

impl AnnotatedPost {
    /// Sorts the spans and derives `counts` from them.
    pub fn new(
        post_id: impl Into<String>,
        text: impl Into<String>,
        mut spans: Vec<CueSpan>,
    ) -> Self {
        spans.sort_by_key(CueSpan::order_key);
        let counts = count_spans(&spans);
        AnnotatedPost {
            post_id: post_id.into(),
            text: text.into(),
            spans,
            counts,
        }
    }

    pub fn count(&self, sub: CueSubcategory) -> u64 {
        self.counts.get(&sub).copied().unwrap_or(0)
    }

    pub fn has_cues(&self) -> bool {
        !self.spans.is_empty()
    }
}

/// Per-subcategory tallies; every subcategory is present, zeros included.
pub fn count_spans(spans: &[CueSpan]) -> BTreeMap<CueSubcategory, u64> {
    let mut counts: BTreeMap<CueSubcategory, u64> =
        CueSubcategory::ALL.into_iter().map(|s| (s, 0)).collect();
    for span in spans {
        *counts.entry(span.subcategory).or_insert(0) += 1;
    }
    counts
}

/// Inclusive range of Unicode code points. Serialized as hex strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodeRange {
    pub lo: u32,
    pub hi: u32,
}

impl CodeRange {
    pub const fn new(lo: u32, hi: u32) -> Self {
        CodeRange { lo, hi }
    }

    pub fn contains(&self, c: char) -> bool {
        (self.lo..=self.hi).contains(&(c as u32))
    }
}

fn parse_code_point(raw: &str) -> Result<u32> {
    let trimmed = raw.trim();
    let digits = trimmed
        .strip_prefix("U+")
        .or_else(|| trimmed.strip_prefix("u+"))
        .or_else(|| trimmed.strip_prefix("0x"))
        .or_else(|| trimmed.strip_prefix("0X"))
        .unwrap_or(trimmed);
    u32::from_str_radix(digits, 16)
        .map_err(|_| Error::Lexicon(format!("invalid hex code point `{raw}`")))
}

impl Serialize for CodeRange {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            lo: String,
            hi: String,
        }
        Raw {
            lo: format!("{:04X}", self.lo),
            hi: format!("{:04X}", self.hi),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CodeRange {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            lo: String,
            hi: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let lo = parse_code_point(&raw.lo).map_err(serde::de::Error::custom)?;
        let hi = parse_code_point(&raw.hi).map_err(serde::de::Error::custom)?;
        Ok(CodeRange { lo, hi })
    }
}

/// Emoji classes a profile assigns code points to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EmojiClass {
    Facial,
    Body,
    Emotion,
}

impl EmojiClass {
    pub fn subcategory(self) -> CueSubcategory {
        match self {
            EmojiClass::Facial => CueSubcategory::FacialExpression,
            EmojiClass::Body => CueSubcategory::BodyMovement,
            EmojiClass::Emotion => CueSubcategory::EmotionEmoji,
        }
    }
}

/// Named set of code-point ranges per emoji class.
///
/// When `join_sequences` is set, variation selectors, skin-tone modifiers
/// and zero-width-joiner continuations are folded into the preceding emoji
/// so a composed emoji counts as one cue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmojiProfile {
    pub facial: Vec<CodeRange>,
    pub body: Vec<CodeRange>,
    pub emotion: Vec<CodeRange>,
    #[serde(default)]
    pub join_sequences: bool,
}

impl EmojiProfile {
    /// First class (facial, body, emotion) whose ranges contain `c`.
    pub fn class_of(&self, c: char) -> Option<EmojiClass> {
        [
            (EmojiClass::Facial, &self.facial),
            (EmojiClass::Body, &self.body),
            (EmojiClass::Emotion, &self.emotion),
        ]
        .into_iter()
        .find(|(_, ranges)| ranges.iter().any(|r| r.contains(c)))
        .map(|(class, _)| class)
    }

    pub fn ranges(&self, class: EmojiClass) -> &[CodeRange] {
        match class {
            EmojiClass::Facial => &self.facial,
            EmojiClass::Body => &self.body,
            EmojiClass::Emotion => &self.emotion,
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        for (class, label) in [
            (EmojiClass::Facial, "facial"),
            (EmojiClass::Body, "body"),
            (EmojiClass::Emotion, "emotion"),
        ] {
            let mut ranges = self.ranges(class).to_vec();
            if let Some(bad) = ranges.iter().find(|r| r.lo > r.hi) {
                return Err(Error::Lexicon(format!(
                    "emoji profile `{name}` class `{label}`: range {:04X}-{:04X} has lo > hi",
                    bad.lo, bad.hi
                )));
            }
            if let Some(bad) = ranges.iter().find(|r| r.hi > 0x10FFFF) {
                return Err(Error::Lexicon(format!(
                    "emoji profile `{name}` class `{label}`: {:04X} is beyond the Unicode range",
                    bad.hi
                )));
            }
            ranges.sort();
            for pair in ranges.windows(2) {
                if pair[1].lo <= pair[0].hi {
                    return Err(Error::Lexicon(format!(
                        "emoji profile `{name}` class `{label}`: ranges {:04X}-{:04X} and {:04X}-{:04X} overlap",
                        pair[0].lo, pair[0].hi, pair[1].lo, pair[1].hi
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Word lists and emoji profiles used by the detectors.
///
/// `vocalics_terms` entries may end in `+`, meaning the final letter may be
/// repeated any number of times (`ugh+` matches `ugh`, `ughhhh`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lexicon {
    pub stage_verbs: BTreeSet<String>,
    pub vocalics_terms: BTreeSet<String>,
    pub acronym_stoplist: BTreeSet<String>,
    pub common_doubles: BTreeSet<String>,
    pub emoji_profiles: BTreeMap<String, EmojiProfile>,
    /// Stage verbs classified as touch; defaults when absent from JSON.
    #[serde(default = "default_touch_verbs")]
    pub touch_verbs: BTreeSet<String>,
    /// Stage verbs classified as eye movement.
    #[serde(default = "default_eye_verbs")]
    pub eye_verbs: BTreeSet<String>,
    /// Overrides the subcategories flagged as affect displays.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affect_display: Option<BTreeSet<CueSubcategory>>,
}

impl Lexicon {
    pub fn emoji_profile(&self, name: &str) -> Option<&EmojiProfile> {
        self.emoji_profiles.get(name)
    }

    pub fn affect_display_for(&self, sub: CueSubcategory) -> bool {
        match &self.affect_display {
            Some(set) => set.contains(&sub),
            None => sub.default_affect_display(),
        }
    }

    /// Subcategory of a stage-direction head verb (already stemmed).
    pub fn stage_subcategory(&self, verb: &str) -> CueSubcategory {
        if self.touch_verbs.contains(verb) {
            CueSubcategory::Touch
        } else if self.eye_verbs.contains(verb) {
            CueSubcategory::EyeMovement
        } else {
            CueSubcategory::BodyMovement
        }
    }

    pub fn from_json_str(json: &str) -> Result<Self> {
        let lexicon: Lexicon = serde_json::from_str(json)
            .map_err(|e| Error::Lexicon(format!("invalid lexicon JSON: {e}")))?;
        lexicon.validate()?;
        Ok(lexicon)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let json = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&json).map_err(|e| match e {
            Error::Lexicon(msg) => Error::Lexicon(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("lexicon serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let word_lists = [
            ("stage_verbs", &self.stage_verbs),
            ("touch_verbs", &self.touch_verbs),
            ("eye_verbs", &self.eye_verbs),
            ("common_doubles", &self.common_doubles),
        ];
        for (key, list) in word_lists {
            for word in list {
                if word.is_empty()
                    || word.chars().any(char::is_whitespace)
                    || word.to_lowercase() != *word
                {
                    return Err(Error::Lexicon(format!(
                        "{key}: entry `{word}` must be non-empty lowercase without whitespace"
                    )));
                }
            }
        }
        for term in &self.vocalics_terms {
            let base = term.strip_suffix('+').unwrap_or(term);
            if base.is_empty()
                || !base.chars().all(char::is_alphanumeric)
                || term.to_lowercase() != *term
            {
                return Err(Error::Lexicon(format!(
                    "vocalics_terms: entry `{term}` must be lowercase letters with an optional trailing `+`"
                )));
            }
        }
        for acronym in &self.acronym_stoplist {
            if acronym.is_empty() || acronym.to_uppercase() != *acronym {
                return Err(Error::Lexicon(format!(
                    "acronym_stoplist: entry `{acronym}` must be non-empty uppercase"
                )));
            }
        }
        for (name, profile) in &self.emoji_profiles {
            profile.validate(name)?;
        }
        Ok(())
    }
}

fn set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

fn default_touch_verbs() -> BTreeSet<String> {
    set(&["hug", "hold", "lean", "pat", "poke", "snuggle"])
}

fn default_eye_verbs() -> BTreeSet<String> {
    set(&["squint", "wink", "glare", "blink", "eyeroll"])
}

const STAGE_VERBS: &[&str] = &[
    "hug", "wave", "frown", "smile", "clap", "hold", "lean", "pat", "poke", "snuggle", "squint",
    "wink", "glare", "blink", "eyeroll", "nod", "shrug", "facepalm", "grin", "pout", "facedesk",
    "headdesk",
];

const VOCALICS_TERMS: &[&str] = &[
    "lol", "lmao", "rofl", "yawn", "ugh+", "hmm+", "grrr+", "haha+", "hehe+", "gawd", "sigh",
    "argh+", "ahh+", "ooh+", "oops", "phew", "yikes", "meh", "tsk", "psst", "shh+", "zzz+", "brr+",
    "eww+", "aww+", "yay+", "whew", "huh", "oof",
];

const ACRONYM_STOPLIST: &[&str] = &[
    "ABC", "ACT", "AD", "ADHD", "AI", "AIDS", "AKA", "AM", "AMD", "API", "ASAP", "ASD", "ATM",
    "BBC", "BC", "BMW", "BRB", "BTW", "CBS", "CD", "CDC", "CEO", "CFO", "CIA", "CNN", "COO",
    "COVID", "CPU", "CSS", "CTO", "DC", "DIY", "DJ", "DM", "DMV", "DNA", "DVD", "EMT", "ER",
    "ESPN", "EST", "ETA", "EU", "EUR", "FAQ", "FBI", "FDA", "FIFA", "FYI", "GBP", "GMT", "GOAT",
    "GPA", "GPS", "GPU", "GRE", "HBO", "HDMI", "HIV", "HP", "HR", "HTML", "HTTP", "HTTPS", "IBM",
    "ICU", "ID", "IDK", "IMHO", "IMO", "INC", "IPO", "IQ", "IRL", "IRS", "ISBN", "IT", "JPY",
    "JSON", "KGB", "LA", "LLC", "LSU", "LTD", "MBA", "MC", "MD", "MIT", "MLB", "MMS", "MTV", "MVP",
    "NASA", "NASDAQ", "NATO", "NBA", "NBC", "NCAA", "NFL", "NHL", "NPR", "NSFW", "NYC", "NYSE",
    "NYU", "OCD", "OK", "OMG", "PBS", "PC", "PDF", "PHP", "PIN", "PM", "PR", "PST", "PTSD", "RAM",
    "RIP", "RNA", "RSVP", "SAT", "SIM", "SMH", "SMS", "SQL", "SSD", "TBH", "TLDR", "TTYL", "TV",
    "UCLA", "UEFA", "UFC", "UK", "UN", "URL", "US", "USA", "USB", "USC", "USD", "UTC", "VIP",
    "WHO", "WTF", "WWE", "WWW", "XML",
];

const COMMON_DOUBLES: &[&str] = &[
    "good",
    "cool",
    "too",
    "see",
    "soon",
    "feel",
    "need",
    "keep",
    "sleep",
    "week",
    "seem",
    "free",
    "tree",
    "three",
    "agree",
    "coffee",
    "food",
    "mood",
    "look",
    "book",
    "took",
    "room",
    "moon",
    "door",
    "floor",
    "poor",
    "pool",
    "school",
    "fool",
    "boo",
    "zoo",
    "wood",
    "noon",
    "all",
    "call",
    "fall",
    "hall",
    "tall",
    "wall",
    "ball",
    "small",
    "well",
    "tell",
    "sell",
    "hell",
    "bell",
    "fell",
    "shell",
    "smell",
    "still",
    "will",
    "fill",
    "ill",
    "kill",
    "till",
    "chill",
    "skill",
    "full",
    "pull",
    "dull",
    "off",
    "stuff",
    "staff",
    "cliff",
    "miss",
    "kiss",
    "less",
    "mess",
    "boss",
    "pass",
    "class",
    "glass",
    "grass",
    "yes",
    "add",
    "odd",
    "egg",
    "inn",
    "butt",
    "buzz",
    "jazz",
    "fizz",
    "fuzz",
    "happy",
    "sorry",
    "funny",
    "pretty",
    "really",
    "little",
    "better",
    "coming",
    "getting",
    "letter",
    "summer",
    "dinner",
    "winner",
    "sweet",
    "meet",
    "street",
    "queen",
    "green",
    "teen",
    "deep",
    "cheese",
    "knee",
    "bee",
    "fee",
    "glee",
    "goof",
    "hoop",
    "loop",
    "root",
    "shoot",
    "boot",
    "tool",
    "cook",
    "hook",
    "wool",
    "yeet",
    "goodness",
    "goodbye",
    "bitter",
    "sweetheart",
];

/// Verbatim code-point ranges: faces, body, hearts/symbols.
fn paper_profile() -> EmojiProfile {
    EmojiProfile {
        facial: vec![CodeRange::new(0x1F600, 0x1F64F)],
        body: vec![CodeRange::new(0x1F400, 0x1F4FF)],
        emotion: vec![CodeRange::new(0x1F900, 0x1F9E1)],
        join_sequences: false,
    }
}

/// Removes every range in `holes` from `base`; both lists sorted.
fn subtract_ranges(base: &[CodeRange], holes: &[CodeRange]) -> Vec<CodeRange> {
    let mut out = Vec::new();
    for range in base {
        let mut lo = range.lo;
        for hole in holes
            .iter()
            .filter(|h| h.hi >= range.lo && h.lo <= range.hi)
        {
            if hole.lo > lo {
                out.push(CodeRange::new(lo, hole.lo - 1));
            }
            lo = lo.max(hole.hi + 1);
        }
        if lo <= range.hi {
            out.push(CodeRange::new(lo, range.hi));
        }
    }
    out
}

/// Broader coverage: dingbats and miscellaneous symbols, pictographs,
/// supplemental faces and gestures, with composed sequences joined.
fn extended_profile() -> EmojiProfile {
    let facial = vec![
        CodeRange::new(0x2639, 0x263A),
        CodeRange::new(0x1F600, 0x1F644),
        CodeRange::new(0x1F910, 0x1F915),
        CodeRange::new(0x1F917, 0x1F917),
        CodeRange::new(0x1F920, 0x1F925),
        CodeRange::new(0x1F927, 0x1F92F),
        CodeRange::new(0x1F970, 0x1F976),
        CodeRange::new(0x1F978, 0x1F97A),
        CodeRange::new(0x1F9D0, 0x1F9D0),
        CodeRange::new(0x1FAE0, 0x1FAE8),
    ];
    let body = vec![
        CodeRange::new(0x1F400, 0x1F4FF),
        CodeRange::new(0x1F645, 0x1F64F),
        CodeRange::new(0x1F90C, 0x1F90C),
        CodeRange::new(0x1F90F, 0x1F90F),
        CodeRange::new(0x1F918, 0x1F91F),
        CodeRange::new(0x1F926, 0x1F926),
        CodeRange::new(0x1F930, 0x1F93A),
        CodeRange::new(0x1F9B5, 0x1F9B6),
        CodeRange::new(0x1F9BB, 0x1F9BB),
        CodeRange::new(0x1F9CD, 0x1F9CF),
        CodeRange::new(0x1F9D1, 0x1F9DF),
        CodeRange::new(0x1FAF0, 0x1FAF8),
    ];
    let base_emotion = [
        CodeRange::new(0x2600, 0x27BF),
        // 1F3FB-1F3FF are skin-tone modifiers, joined rather than classified.
        CodeRange::new(0x1F300, 0x1F3FA),
        CodeRange::new(0x1F500, 0x1F5FF),
        CodeRange::new(0x1F900, 0x1F9FF),
        CodeRange::new(0x1FA70, 0x1FAFF),
    ];
    let mut taken: Vec<CodeRange> = facial.iter().chain(body.iter()).copied().collect();
    taken.sort();
    let emotion = subtract_ranges(&base_emotion, &taken);
    EmojiProfile {
        facial,
        body,
        emotion,
        join_sequences: true,
    }
}

/// The bundled lexicon with the `paper` and `extended` emoji profiles.
pub fn default_lexicons() -> Lexicon {
    let mut emoji_profiles = BTreeMap::new();
    emoji_profiles.insert("paper".to_string(), paper_profile());
    emoji_profiles.insert("extended".to_string(), extended_profile());
    Lexicon {
        stage_verbs: set(STAGE_VERBS),
        vocalics_terms: set(VOCALICS_TERMS),
        acronym_stoplist: set(ACRONYM_STOPLIST),
        common_doubles: set(COMMON_DOUBLES),
        emoji_profiles,
        touch_verbs: default_touch_verbs(),
        eye_verbs: default_eye_verbs(),
        affect_display: None,
    }
}

impl Default for Lexicon {
    fn default() -> Self {
        default_lexicons()
    }
}
