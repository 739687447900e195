//! Reader-experiment tooling: balanced literality × cue-presence stimulus
//! sets built from matched Present/Removed pairs, response scoring, and
//! the desk-scale statistics reported for them.
//!
//! The original study analyzed responses with random-intercept mixed
//! models. Those are not reproduced here; [`analyze`] pairs per-participant
//! t-tests with pooled proportions and a fixed-effects logistic fit, and
//! says so in its report.

pub mod logistic;
pub mod stats;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, BufReader, Read};

use serde::{Deserialize, Serialize};

use crate::corpus::Post;
use crate::detector::annotate;
use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::transformer::{strip, verify_stripped, StripConfig};

pub use logistic::{log_likelihood, logistic_fit, score, LogisticFit};
pub use stats::{normal_quantile, paired_t_test, t_cdf, t_quantile, wilson_interval, TTestResult};

pub const UNCERTAIN: &str = "Uncertain";

pub const CAVEAT: &str =
    "Fixed-effects approximation: the logistic models ignore the clustering of \
responses within participants and items (no random intercepts), so standard errors are optimistic \
and odds ratios are not comparable to mixed-model estimates.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CueCondition {
    Present,
    Removed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StimulusItem {
    pub item_id: String,
    pub source_post_id: String,
    pub emotion: String,
    pub sarcastic: bool,
    pub cue_condition: CueCondition,
    pub rendered_text: String,
}

fn normalize_label(s: &str) -> String {
    s.trim().to_lowercase()
}

// FNV-1a, so a stratum's sampling stream depends only on its own label
fn label_stream(label: &str, sarcastic: bool) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in label.bytes().chain([u8::from(sarcastic)]) {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Build the full matched-pair design: for every emotion and both
/// literality levels, `items_per_cell` source posts carrying at least one
/// detected cue are drawn (seeded, uniform, without replacement) and each
/// yields a Present item (original text) and a Removed item (stripped
/// text). Emotion labels match case-insensitively after trimming.
///
/// Items come out grouped by emotion (in the given order), literal before
/// sarcastic, in corpus order within a stratum, Present before Removed.
pub fn build_design(
    posts: &[Post],
    emotions: &[String],
    items_per_cell: usize,
    strip_cfg: &StripConfig,
    seed: u64,
) -> Result<Vec<StimulusItem>> {
    if items_per_cell == 0 {
        return Err(Error::InvalidArgument(
            "items_per_cell must be at least 1".into(),
        ));
    }
    let mut seen = BTreeSet::new();
    for e in emotions {
        if !seen.insert(normalize_label(e)) {
            return Err(Error::InvalidArgument(format!(
                "emotion {e:?} is listed twice"
            )));
        }
    }
    let detector = &strip_cfg.detector_cfg;
    detector.validate()?;

    let mut items = Vec::with_capacity(emotions.len() * 4 * items_per_cell);
    let mut ids = BTreeSet::new();
    for emotion in emotions {
        let label = normalize_label(emotion);
        for sarcastic in [false, true] {
            let eligible: Vec<&Post> = posts
                .iter()
                .filter(|p| p.sarcastic == Some(sarcastic))
                .filter(|p| {
                    p.emotion.as_deref().map(normalize_label).as_deref() == Some(label.as_str())
                })
                .filter(|p| !annotate(&p.post_id, &p.text, detector).spans.is_empty())
                .collect();
            if eligible.len() < items_per_cell {
                return Err(Error::InsufficientStratum {
                    emotion: emotion.clone(),
                    sarcastic,
                    available: eligible.len(),
                    required: items_per_cell,
                });
            }
            let mut rng = SeededRng::for_stream(seed, label_stream(&label, sarcastic));
            let mut picked = rng.sample_indices(eligible.len(), items_per_cell);
            picked.sort_unstable();
            for post in picked.into_iter().map(|i| eligible[i]) {
                let stripped = strip(&post.text, strip_cfg).output;
                if stripped == post.text {
                    return Err(Error::NothingToStrip(post.post_id.clone()));
                }
                if !verify_stripped(&stripped, strip_cfg) {
                    return Err(Error::Data(format!(
                        "post {} still carries cues after stripping",
                        post.post_id
                    )));
                }
                for (condition, suffix, text) in [
                    (CueCondition::Present, "present", post.text.clone()),
                    (CueCondition::Removed, "removed", stripped),
                ] {
                    let item_id = format!("{}-{suffix}", post.post_id);
                    if !ids.insert(item_id.clone()) {
                        return Err(Error::Data(format!(
                            "duplicate post_id {} in corpus",
                            post.post_id
                        )));
                    }
                    items.push(StimulusItem {
                        item_id,
                        source_post_id: post.post_id.clone(),
                        emotion: post.emotion.clone().unwrap_or_default(),
                        sarcastic,
                        cue_condition: condition,
                        rendered_text: text,
                    });
                }
            }
        }
    }
    Ok(items)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseRecord {
    pub participant_id: String,
    pub item_id: String,
    pub selected: String,
    pub is_uncertain: bool,
}

impl ResponseRecord {
    /// Any spelling of "uncertain" is normalized to [`UNCERTAIN`].
    pub fn new(
        participant_id: impl Into<String>,
        item_id: impl Into<String>,
        selected: &str,
    ) -> Self {
        let is_uncertain = selected.trim().eq_ignore_ascii_case(UNCERTAIN);
        ResponseRecord {
            participant_id: participant_id.into(),
            item_id: item_id.into(),
            selected: if is_uncertain {
                UNCERTAIN.to_string()
            } else {
                selected.to_string()
            },
            is_uncertain,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCounts {
    pub shown: u64,
    pub correct: u64,
    pub uncertain: u64,
}

/// The four design cells in report order.
pub const CELLS: [(bool, CueCondition); 4] = [
    (false, CueCondition::Present),
    (false, CueCondition::Removed),
    (true, CueCondition::Present),
    (true, CueCondition::Removed),
];

fn cell_index(sarcastic: bool, condition: CueCondition) -> usize {
    usize::from(sarcastic) * 2 + usize::from(condition == CueCondition::Removed)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSummary {
    pub sarcastic: bool,
    pub cue_condition: CueCondition,
    #[serde(flatten)]
    pub counts: CellCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub participant_id: String,
    pub cells: Vec<CellSummary>,
}

impl ConditionSummary {
    pub fn cell(&self, sarcastic: bool, condition: CueCondition) -> &CellCounts {
        &self.cells[cell_index(sarcastic, condition)].counts
    }
}

fn is_correct(selected: &str, emotion: &str) -> bool {
    normalize_label(selected) == normalize_label(emotion)
}

/// Tally each participant's four cells. One summary per participant,
/// ordered by participant id, so the result ignores response order.
pub fn score_responses(
    responses: &[ResponseRecord],
    items: &[StimulusItem],
) -> Result<Vec<ConditionSummary>> {
    let by_id: HashMap<&str, &StimulusItem> =
        items.iter().map(|i| (i.item_id.as_str(), i)).collect();
    let mut tallies: BTreeMap<&str, [CellCounts; 4]> = BTreeMap::new();
    for r in responses {
        let item = by_id
            .get(r.item_id.as_str())
            .ok_or_else(|| Error::UnknownItem(r.item_id.clone()))?;
        let cell = &mut tallies.entry(&r.participant_id).or_default()
            [cell_index(item.sarcastic, item.cue_condition)];
        cell.shown += 1;
        if !r.is_uncertain && is_correct(&r.selected, &item.emotion) {
            cell.correct += 1;
        }
        if r.is_uncertain {
            cell.uncertain += 1;
        }
    }
    Ok(tallies
        .into_iter()
        .map(|(pid, cells)| ConditionSummary {
            participant_id: pid.to_string(),
            cells: CELLS
                .iter()
                .zip(cells)
                .map(|(&(sarcastic, cue_condition), counts)| CellSummary {
                    sarcastic,
                    cue_condition,
                    counts,
                })
                .collect(),
        })
        .collect())
}

/// Read responses from CSV with header `participant_id,item_id,selected`.
/// A file with no header at all reads as zero responses.
pub fn read_responses_csv(input: impl Read) -> Result<Vec<ResponseRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Data(format!("responses CSV header: {e}")))?
        .clone();
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Data(format!("responses CSV is missing the {name} column")))
    };
    let (pid, item, selected) = (find("participant_id")?, find("item_id")?, find("selected")?);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Data(format!("responses CSV: {e}")))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize, name: &str| {
            rec.get(i)
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| Error::Data(format!("responses CSV line {line}: empty {name}")))
        };
        out.push(ResponseRecord::new(
            field(pid, "participant_id")?,
            field(item, "item_id")?,
            field(selected, "selected")?,
        ));
    }
    Ok(out)
}

/// Read a stimulus set written as JSON Lines. Every line must parse.
pub fn read_stimuli_jsonl(input: impl Read) -> Result<Vec<StimulusItem>> {
    let mut items = Vec::new();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: "<stimuli>".into(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let item: StimulusItem = serde_json::from_str(&line)
            .map_err(|e| Error::Data(format!("stimuli line {}: {e}", i + 1)))?;
        items.push(item);
    }
    Ok(items)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub count: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Proportion {
    fn new(count: u64, trials: u64) -> Option<Self> {
        let (ci_low, ci_high) = wilson_interval(count, trials, 0.95).ok()?;
        Some(Proportion {
            count,
            estimate: count as f64 / trials as f64,
            ci_low,
            ci_high,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub sarcastic: bool,
    pub cue_condition: CueCondition,
    pub shown: u64,
    pub accuracy: Option<Proportion>,
    pub uncertainty: Option<Proportion>,
}

/// Paired comparison of per-participant correct counts, Removed minus
/// Present, within one literality level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedComparison {
    pub sarcastic: bool,
    pub participants: usize,
    pub result: Option<TTestResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub outcome: String,
    pub terms: Vec<String>,
    pub fit: Option<LogisticFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub responses: usize,
    pub participants: usize,
    pub cells: Vec<CellReport>,
    pub paired_accuracy_tests: Vec<PairedComparison>,
    pub models: Vec<ModelReport>,
    pub caveat: String,
    pub summaries: Vec<ConditionSummary>,
}

fn paired_comparison(summaries: &[ConditionSummary], sarcastic: bool) -> PairedComparison {
    let (mut removed, mut present) = (Vec::new(), Vec::new());
    for s in summaries {
        let (r, p) = (
            s.cell(sarcastic, CueCondition::Removed),
            s.cell(sarcastic, CueCondition::Present),
        );
        if r.shown > 0 && p.shown > 0 {
            removed.push(r.correct as f64);
            present.push(p.correct as f64);
        }
    }
    let participants = removed.len();
    match paired_t_test(&removed, &present) {
        Ok(result) => PairedComparison {
            sarcastic,
            participants,
            result: Some(result),
            note: None,
        },
        Err(e) => PairedComparison {
            sarcastic,
            participants,
            result: None,
            note: Some(e.to_string()),
        },
    }
}

/// Design rows `[1, cues present, sarcastic]` with one row per response.
fn model(outcome: &str, x: &[Vec<f64>], y: &[bool]) -> ModelReport {
    let terms = ["intercept", "cues_present", "sarcastic"]
        .map(String::from)
        .to_vec();
    match logistic_fit(x, y) {
        Ok(fit) => ModelReport {
            outcome: outcome.into(),
            terms,
            fit: Some(fit),
            note: None,
        },
        Err(e) => ModelReport {
            outcome: outcome.into(),
            terms,
            fit: None,
            note: Some(e.to_string()),
        },
    }
}

pub fn analyze(responses: &[ResponseRecord], items: &[StimulusItem]) -> Result<AnalysisReport> {
    if responses.is_empty() {
        return Err(Error::Data("no responses".into()));
    }
    let summaries = score_responses(responses, items)?;
    let mut pooled = [CellCounts::default(); 4];
    for s in &summaries {
        for (total, cell) in pooled.iter_mut().zip(&s.cells) {
            total.shown += cell.counts.shown;
            total.correct += cell.counts.correct;
            total.uncertain += cell.counts.uncertain;
        }
    }
    let cells = CELLS
        .iter()
        .zip(pooled)
        .map(|(&(sarcastic, cue_condition), c)| CellReport {
            sarcastic,
            cue_condition,
            shown: c.shown,
            accuracy: Proportion::new(c.correct, c.shown),
            uncertainty: Proportion::new(c.uncertain, c.shown),
        })
        .collect();

    let by_id: HashMap<&str, &StimulusItem> =
        items.iter().map(|i| (i.item_id.as_str(), i)).collect();
    let mut x = Vec::with_capacity(responses.len());
    let (mut correct, mut uncertain) = (Vec::new(), Vec::new());
    for r in responses {
        let item = by_id[r.item_id.as_str()];
        let present = f64::from(u8::from(item.cue_condition == CueCondition::Present));
        x.push(vec![1.0, present, f64::from(u8::from(item.sarcastic))]);
        correct.push(!r.is_uncertain && is_correct(&r.selected, &item.emotion));
        uncertain.push(r.is_uncertain);
    }

    Ok(AnalysisReport {
        responses: responses.len(),
        participants: summaries.len(),
        cells,
        paired_accuracy_tests: vec![
            paired_comparison(&summaries, false),
            paired_comparison(&summaries, true),
        ],
        models: vec![
            model("correct", &x, &correct),
            model("uncertain", &x, &uncertain),
        ],
        caveat: CAVEAT.to_string(),
        summaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{synthetic_corpus, DEFAULT_POSTS, DEFAULT_SEED, EMOTIONS};

    fn emotions() -> Vec<String> {
        EMOTIONS.iter().map(|e| e.to_string()).collect()
    }

    fn design(seed: u64) -> Vec<StimulusItem> {
        let corpus = synthetic_corpus(DEFAULT_SEED, DEFAULT_POSTS);
        build_design(&corpus.posts, &emotions(), 4, &StripConfig::default(), seed).unwrap()
    }

    #[test]
    fn design_is_balanced_and_paired() {
        let items = design(1);
        assert_eq!(items.len(), 80);
        let mut cells: BTreeMap<(String, bool, CueCondition), usize> = BTreeMap::new();
        for it in &items {
            *cells
                .entry((it.emotion.clone(), it.sarcastic, it.cue_condition))
                .or_default() += 1;
        }
        assert_eq!(cells.len(), 20);
        assert!(cells.values().all(|n| *n == 4));
        for pair in items.chunks(2) {
            assert_eq!(pair[0].cue_condition, CueCondition::Present);
            assert_eq!(pair[1].cue_condition, CueCondition::Removed);
            assert_eq!(pair[0].source_post_id, pair[1].source_post_id);
            assert_eq!(
                strip(&pair[0].rendered_text, &StripConfig::default()).output,
                pair[1].rendered_text
            );
        }
        assert_eq!(design(1), items);
        assert_ne!(design(2), items);
    }

    #[test]
    fn design_errors() {
        let corpus = synthetic_corpus(DEFAULT_SEED, DEFAULT_POSTS);
        let cfg = StripConfig::default();
        assert!(build_design(&corpus.posts, &[], 4, &cfg, 1)
            .unwrap()
            .is_empty());
        let err = build_design(&corpus.posts, &["happy".into()], 50, &cfg, 1).unwrap_err();
        assert!(
            matches!(err, Error::InsufficientStratum { ref emotion, sarcastic: false, .. } if emotion == "happy")
        );
        assert!(build_design(
            &corpus.posts,
            &["happy".into(), "Happy ".into()],
            1,
            &cfg,
            1
        )
        .is_err());

        let mut posts = vec![Post {
            emotion: Some("calm".into()),
            sarcastic: Some(false),
            ..Post::new("x", "so good!!")
        }];
        posts.push(Post {
            sarcastic: Some(true),
            ..posts[0].clone()
        });
        posts[1].post_id = "y".into();
        assert!(build_design(&posts, &["Calm".into()], 1, &cfg, 3).is_ok());
        // only punctuation collapse enabled, and the text has no punctuation cue
        let lone = vec![
            Post {
                emotion: Some("calm".into()),
                sarcastic: Some(false),
                ..Post::new("a", "soooo good")
            },
            Post {
                emotion: Some("calm".into()),
                sarcastic: Some(true),
                ..Post::new("b", "soooo good")
            },
        ];
        let only_punct = StripConfig {
            rules_enabled: [crate::StripRule::PunctCollapse].into(),
            ..cfg.clone()
        };
        assert!(
            matches!(build_design(&lone, &["calm".into()], 1, &only_punct, 0), Err(Error::NothingToStrip(id)) if id == "a")
        );
    }

    #[test]
    fn scoring_counts_cells() {
        let items = design(1);
        let present = &items[0];
        let removed = &items[1];
        let responses = vec![
            ResponseRecord::new("p1", &present.item_id, &present.emotion.to_uppercase()),
            ResponseRecord::new("p1", &removed.item_id, "uncertain"),
            ResponseRecord::new("p2", &removed.item_id, &format!("  {} ", removed.emotion)),
        ];
        assert_eq!(responses[1].selected, UNCERTAIN);
        let s = score_responses(&responses, &items).unwrap();
        assert_eq!(s.len(), 2);
        let p1_present = s[0].cell(present.sarcastic, CueCondition::Present);
        assert_eq!(
            (p1_present.shown, p1_present.correct, p1_present.uncertain),
            (1, 1, 0)
        );
        let p1_removed = s[0].cell(removed.sarcastic, CueCondition::Removed);
        assert_eq!(
            (p1_removed.shown, p1_removed.correct, p1_removed.uncertain),
            (1, 0, 1)
        );
        assert_eq!(
            s[1].cell(removed.sarcastic, CueCondition::Removed).correct,
            1
        );

        let mut shuffled = responses.clone();
        shuffled.reverse();
        assert_eq!(score_responses(&shuffled, &items).unwrap(), s);
        assert!(score_responses(&[], &items).unwrap().is_empty());
        let bad = [ResponseRecord::new("p", "nope", "calm")];
        assert!(
            matches!(score_responses(&bad, &items), Err(Error::UnknownItem(id)) if id == "nope")
        );
    }

    #[test]
    fn responses_csv_reading() {
        let rs = read_responses_csv(
            "participant_id,item_id,selected\np1,i1,Calm\np1,i2, UNCERTAIN\n".as_bytes(),
        )
        .unwrap();
        assert_eq!(rs.len(), 2);
        assert!(rs[1].is_uncertain);
        assert!(read_responses_csv("".as_bytes()).unwrap().is_empty());
        assert!(
            read_responses_csv("participant_id,item_id,selected\n".as_bytes())
                .unwrap()
                .is_empty()
        );
        assert!(read_responses_csv("who,what\na,b\n".as_bytes()).is_err());
        let err = read_responses_csv("participant_id,item_id,selected\np1,,Calm\n".as_bytes())
            .unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn analysis_report_shape() {
        let items = design(4);
        assert!(matches!(analyze(&[], &items), Err(Error::Data(m)) if m == "no responses"));
        let mut rng = SeededRng::new(5);
        let mut responses = Vec::new();
        for p in 0..30 {
            for it in &items {
                let chance = if it.cue_condition == CueCondition::Present {
                    0.7
                } else {
                    0.5
                };
                let pick = if rng.unit() < chance {
                    it.emotion.clone()
                } else if rng.unit() < 0.5 {
                    UNCERTAIN.to_string()
                } else {
                    "calm".to_string()
                };
                responses.push(ResponseRecord::new(format!("p{p:02}"), &it.item_id, &pick));
            }
        }
        let report = analyze(&responses, &items).unwrap();
        assert_eq!(report.participants, 30);
        assert_eq!(report.cells.len(), 4);
        assert_eq!(
            report.cells.iter().map(|c| c.shown).sum::<u64>(),
            responses.len() as u64
        );
        for test in &report.paired_accuracy_tests {
            let r = test.result.unwrap();
            assert_eq!(r.df, 29);
            assert!(r.mean_diff < 0.0);
        }
        let acc = report.models[0].fit.as_ref().unwrap();
        assert!(acc.converged && acc.coefficients[1] > 0.0);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("caveat"));
    }
}
