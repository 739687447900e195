//! Corpus-scale processing: streaming post readers, order-preserving
//! parallel annotation, category frequencies, and the stratified sampling
//! and precision bookkeeping used to validate the detector by hand.

use std::collections::{BTreeMap, VecDeque};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cue_model::{AnnotatedPost, CueDomain, CueSpan, CueSubcategory};
use crate::detector::{annotate, DetectorConfig};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// One input post. Emotion and sarcasm labels are optional; only the
/// experiment tooling needs them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Post {
    pub post_id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emotion: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sarcastic: Option<bool>,
}

impl Post {
    pub fn new(post_id: impl Into<String>, text: impl Into<String>) -> Self {
        Post {
            post_id: post_id.into(),
            text: text.into(),
            emotion: None,
            sarcastic: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Jsonl,
    Csv,
}

impl InputFormat {
    /// Guess from a file extension; anything but `.csv` is JSON Lines.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => InputFormat::Csv,
            _ => InputFormat::Jsonl,
        }
    }
}

impl FromStr for InputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" | "json" | "ndjson" => Ok(InputFormat::Jsonl),
            "csv" => Ok(InputFormat::Csv),
            other => Err(Error::InvalidArgument(format!(
                "unknown input format {other:?} (expected jsonl or csv)"
            ))),
        }
    }
}

/// A malformed input record that was skipped rather than aborting the run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedLine {
    pub line: u64,
    pub reason: String,
}

struct CsvColumns {
    post_id: usize,
    text: usize,
    emotion: Option<usize>,
    sarcastic: Option<usize>,
}

enum Source {
    Jsonl {
        lines: io::Lines<Box<dyn BufRead>>,
        line_no: u64,
    },
    Csv {
        records: csv::StringRecordsIntoIter<Box<dyn Read>>,
        cols: CsvColumns,
    },
}

/// Streaming reader over posts. Malformed records are skipped and logged
/// (see [`PostReader::skipped`]); I/O failures end the stream with an error.
pub struct PostReader {
    source: Source,
    skipped: Vec<SkippedLine>,
    failed: bool,
}

/// Open `path` as a post stream in the given format.
pub fn read_posts(path: impl AsRef<Path>, format: InputFormat) -> Result<PostReader> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    PostReader::new(Box::new(file), format)
}

impl PostReader {
    pub fn new(reader: Box<dyn Read>, format: InputFormat) -> Result<Self> {
        let source = match format {
            InputFormat::Jsonl => {
                let buffered: Box<dyn BufRead> = Box::new(BufReader::new(reader));
                Source::Jsonl {
                    lines: buffered.lines(),
                    line_no: 0,
                }
            }
            InputFormat::Csv => {
                let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
                let headers = rdr
                    .headers()
                    .map_err(|e| Error::Data(format!("CSV header: {e}")))?
                    .clone();
                let find = |name: &str| {
                    headers
                        .iter()
                        .position(|h| h.trim().eq_ignore_ascii_case(name))
                };
                let (Some(post_id), Some(text)) = (find("post_id"), find("text")) else {
                    return Err(Error::Data(
                        "CSV header must contain post_id and text columns".into(),
                    ));
                };
                let cols = CsvColumns {
                    post_id,
                    text,
                    emotion: find("emotion"),
                    sarcastic: find("sarcastic"),
                };
                Source::Csv {
                    records: rdr.into_records(),
                    cols,
                }
            }
        };
        Ok(PostReader {
            source,
            skipped: Vec::new(),
            failed: false,
        })
    }

    /// Records skipped so far, with 1-based line numbers.
    pub fn skipped(&self) -> &[SkippedLine] {
        &self.skipped
    }

    pub fn skip_count(&self) -> usize {
        self.skipped.len()
    }
}

fn parse_bool(raw: &str) -> Option<Option<bool>> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "" => Some(None),
        "true" | "1" | "yes" | "y" | "t" => Some(Some(true)),
        "false" | "0" | "no" | "n" | "f" => Some(Some(false)),
        _ => None,
    }
}

fn post_from_json(line: &str) -> std::result::Result<Post, String> {
    let value: Value = serde_json::from_str(line).map_err(|e| format!("invalid JSON: {e}"))?;
    let Value::Object(obj) = value else {
        return Err("expected a JSON object".into());
    };
    let post_id = match obj.get("post_id") {
        Some(Value::String(s)) if !s.is_empty() => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        _ => return Err("missing or empty post_id".into()),
    };
    let text = match obj.get("text") {
        Some(Value::String(s)) => s.clone(),
        _ => return Err("missing text".into()),
    };
    let emotion = match obj.get("emotion") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err("emotion must be a string".into()),
    };
    let sarcastic = match obj.get("sarcastic") {
        None | Some(Value::Null) => None,
        Some(Value::Bool(b)) => Some(*b),
        Some(Value::String(s)) => {
            parse_bool(s).ok_or_else(|| format!("unreadable sarcastic flag {s:?}"))?
        }
        Some(_) => return Err("sarcastic must be a boolean".into()),
    };
    Ok(Post {
        post_id,
        text,
        emotion,
        sarcastic,
    })
}

fn post_from_record(
    rec: &csv::StringRecord,
    cols: &CsvColumns,
) -> std::result::Result<Post, String> {
    let post_id = rec.get(cols.post_id).map(str::trim).unwrap_or("");
    if post_id.is_empty() {
        return Err("missing or empty post_id".into());
    }
    let text = rec.get(cols.text).ok_or("missing text")?;
    let emotion = cols
        .emotion
        .and_then(|i| rec.get(i))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from);
    let sarcastic = match cols.sarcastic.and_then(|i| rec.get(i)) {
        None => None,
        Some(raw) => parse_bool(raw).ok_or_else(|| format!("unreadable sarcastic flag {raw:?}"))?,
    };
    Ok(Post {
        post_id: post_id.to_string(),
        text: text.to_string(),
        emotion,
        sarcastic,
    })
}

impl Iterator for PostReader {
    type Item = Result<Post>;

    fn next(&mut self) -> Option<Result<Post>> {
        if self.failed {
            return None;
        }
        loop {
            match &mut self.source {
                Source::Jsonl { lines, line_no } => {
                    let line = match lines.next()? {
                        Ok(line) => line,
                        Err(source) => {
                            self.failed = true;
                            return Some(Err(Error::Io {
                                path: "<input>".into(),
                                source,
                            }));
                        }
                    };
                    *line_no += 1;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match post_from_json(&line) {
                        Ok(post) => return Some(Ok(post)),
                        Err(reason) => self.skipped.push(SkippedLine {
                            line: *line_no,
                            reason,
                        }),
                    }
                }
                Source::Csv { records, cols } => {
                    let rec = match records.next()? {
                        Ok(rec) => rec,
                        Err(e) => {
                            let line = e.position().map(|p| p.line()).unwrap_or(0);
                            if e.is_io_error() {
                                self.failed = true;
                                return Some(Err(Error::Data(format!(
                                    "CSV read failed near line {line}: {e}"
                                ))));
                            }
                            self.skipped.push(SkippedLine {
                                line,
                                reason: e.to_string(),
                            });
                            continue;
                        }
                    };
                    let line = rec.position().map(|p| p.line()).unwrap_or(0);
                    match post_from_record(&rec, cols) {
                        Ok(post) => return Some(Ok(post)),
                        Err(reason) => self.skipped.push(SkippedLine { line, reason }),
                    }
                }
            }
        }
    }
}

const BATCH: usize = 512;

/// Annotation stream that processes posts in parallel batches while
/// yielding results in input order. The output is identical for every
/// worker count.
pub struct AnnotateStream<'a, I> {
    posts: I,
    cfg: &'a DetectorConfig,
    pool: Option<rayon::ThreadPool>,
    ready: VecDeque<Result<AnnotatedPost>>,
    exhausted: bool,
}

/// Annotate a stream of posts with `workers` threads (1 = sequential).
/// An error item in the input is passed through in position and ends the
/// stream.
pub fn annotate_corpus<'a, I>(
    posts: I,
    cfg: &'a DetectorConfig,
    workers: usize,
) -> Result<AnnotateStream<'a, I::IntoIter>>
where
    I: IntoIterator<Item = Result<Post>>,
{
    if workers == 0 {
        return Err(Error::Config {
            field: "workers".into(),
            reason: "must be at least 1".into(),
        });
    }
    cfg.validate()?;
    let pool = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
        Some(pool)
    } else {
        None
    };
    Ok(AnnotateStream {
        posts: posts.into_iter(),
        cfg,
        pool,
        ready: VecDeque::new(),
        exhausted: false,
    })
}

impl<I: Iterator<Item = Result<Post>>> AnnotateStream<'_, I> {
    fn refill(&mut self) {
        let mut batch = Vec::with_capacity(BATCH);
        let mut trailing_err = None;
        while batch.len() < BATCH {
            match self.posts.next() {
                Some(Ok(post)) => batch.push(post),
                Some(Err(e)) => {
                    trailing_err = Some(e);
                    self.exhausted = true;
                    break;
                }
                None => {
                    self.exhausted = true;
                    break;
                }
            }
        }
        let cfg = self.cfg;
        let one = |p: &Post| annotate(&p.post_id, &p.text, cfg);
        let done: Vec<AnnotatedPost> = match &self.pool {
            Some(pool) => pool.install(|| batch.par_iter().map(one).collect()),
            None => batch.iter().map(one).collect(),
        };
        self.ready.extend(done.into_iter().map(Ok));
        if let Some(e) = trailing_err {
            self.ready.push_back(Err(e));
        }
    }
}

impl<I: Iterator<Item = Result<Post>>> Iterator for AnnotateStream<'_, I> {
    type Item = Result<AnnotatedPost>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.ready.is_empty() && !self.exhausted {
            self.refill();
        }
        self.ready.pop_front()
    }
}

/// Convenience wrapper for in-memory corpora.
pub fn annotate_all(
    posts: &[Post],
    cfg: &DetectorConfig,
    workers: usize,
) -> Result<Vec<AnnotatedPost>> {
    annotate_corpus(posts.iter().cloned().map(Ok), cfg, workers)?.collect()
}

/// Span counts per subcategory and per domain over a corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub per_subcategory: BTreeMap<CueSubcategory, u64>,
    pub per_domain: BTreeMap<CueDomain, u64>,
    pub posts_total: u64,
    pub posts_with_any_cue: u64,
}

impl Default for FrequencyTable {
    fn default() -> Self {
        FrequencyTable {
            per_subcategory: CueSubcategory::ALL.iter().map(|s| (*s, 0)).collect(),
            per_domain: CueDomain::ALL.iter().map(|d| (*d, 0)).collect(),
            posts_total: 0,
            posts_with_any_cue: 0,
        }
    }
}

impl FrequencyTable {
    pub fn add(&mut self, post: &AnnotatedPost) {
        self.posts_total += 1;
        if !post.spans.is_empty() {
            self.posts_with_any_cue += 1;
        }
        for span in &post.spans {
            *self.per_subcategory.entry(span.subcategory).or_insert(0) += 1;
            *self
                .per_domain
                .entry(span.subcategory.domain())
                .or_insert(0) += 1;
        }
    }

    pub fn merge(&mut self, other: &FrequencyTable) {
        self.posts_total += other.posts_total;
        self.posts_with_any_cue += other.posts_with_any_cue;
        for (k, v) in &other.per_subcategory {
            *self.per_subcategory.entry(*k).or_insert(0) += v;
        }
        for (k, v) in &other.per_domain {
            *self.per_domain.entry(*k).or_insert(0) += v;
        }
    }

    pub fn spans_total(&self) -> u64 {
        self.per_subcategory.values().sum()
    }

    /// Share of posts carrying at least one cue (0 for an empty corpus).
    pub fn cue_rate(&self) -> f64 {
        if self.posts_total == 0 {
            0.0
        } else {
            self.posts_with_any_cue as f64 / self.posts_total as f64
        }
    }

    /// Horizontal bar chart of the subcategory counts as a standalone SVG.
    pub fn to_svg(&self) -> String {
        let max = self
            .per_subcategory
            .values()
            .copied()
            .max()
            .unwrap_or(0)
            .max(1);
        let (row, label_w, bar_w) = (22u32, 150u32, 400u32);
        let height = row * self.per_subcategory.len() as u32 + 20;
        let mut svg = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{height}\" font-family=\"sans-serif\" font-size=\"12\">\n",
            label_w + bar_w + 80
        );
        for (i, (sub, count)) in self.per_subcategory.iter().enumerate() {
            let y = 10 + row * i as u32;
            let w = (*count as f64 / max as f64 * bar_w as f64).round() as u32;
            let fill = match sub.domain() {
                CueDomain::Kinesics => "#4a7ab5",
                CueDomain::Paralinguistics => "#c0693b",
            };
            svg.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
                label_w - 6,
                y + 14,
                sub.name()
            ));
            svg.push_str(&format!(
                "  <rect x=\"{label_w}\" y=\"{}\" width=\"{w}\" height=\"{}\" fill=\"{fill}\"/>\n",
                y + 3,
                row - 6
            ));
            svg.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\">{count}</text>\n",
                label_w + w + 6,
                y + 14
            ));
        }
        svg.push_str("</svg>\n");
        svg
    }
}

pub fn category_frequencies<'a>(
    posts: impl IntoIterator<Item = &'a AnnotatedPost>,
) -> FrequencyTable {
    let mut table = FrequencyTable::default();
    for post in posts {
        table.add(post);
    }
    table
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    TruePositive,
    FalsePositive,
}

impl FromStr for Verdict {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tp" | "truepositive" | "true_positive" | "true" | "yes" | "y" | "1" => {
                Ok(Verdict::TruePositive)
            }
            "fp" | "falsepositive" | "false_positive" | "false" | "no" | "n" | "0" => {
                Ok(Verdict::FalsePositive)
            }
            other => Err(Error::Data(format!(
                "unreadable verdict {other:?} (use TP or FP)"
            ))),
        }
    }
}

/// A sampled span awaiting (or carrying) a human judgment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewItem {
    pub post_id: String,
    pub span: CueSpan,
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewBatch {
    pub items: Vec<ReviewItem>,
    pub seed: u64,
    pub quota: BTreeMap<CueSubcategory, usize>,
}

/// Draw up to `quota[s]` spans of each subcategory `s`, uniformly without
/// replacement. Each subcategory uses its own seeded stream, so changing
/// one quota leaves the other strata's picks unchanged. Items are grouped
/// by subcategory and kept in corpus order within a group.
pub fn stratified_sample<'a>(
    annotated: impl IntoIterator<Item = &'a AnnotatedPost>,
    quota: &BTreeMap<CueSubcategory, usize>,
    seed: u64,
) -> ReviewBatch {
    let mut pools: BTreeMap<CueSubcategory, Vec<(&str, &CueSpan)>> = BTreeMap::new();
    for post in annotated {
        for span in &post.spans {
            if quota.get(&span.subcategory).is_some_and(|q| *q > 0) {
                pools
                    .entry(span.subcategory)
                    .or_default()
                    .push((&post.post_id, span));
            }
        }
    }
    let mut items = Vec::new();
    for (sub, want) in quota {
        let Some(pool) = pools.get(sub) else { continue };
        let mut rng = SeededRng::for_stream(
            seed,
            CueSubcategory::ALL.iter().position(|s| s == sub).unwrap() as u64,
        );
        let mut picked = rng.sample_indices(pool.len(), *want);
        picked.sort_unstable();
        items.extend(picked.into_iter().map(|i| ReviewItem {
            post_id: pool[i].0.to_string(),
            span: pool[i].1.clone(),
            verdict: None,
        }));
    }
    ReviewBatch {
        items,
        seed,
        quota: quota.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Precision {
    pub true_positives: u64,
    pub reviewed: u64,
    pub precision: f64,
}

/// Per-subcategory precision (TP / reviewed). Every item must carry a verdict.
pub fn precision_from_reviews(items: &[ReviewItem]) -> Result<BTreeMap<CueSubcategory, Precision>> {
    let mut tallies: BTreeMap<CueSubcategory, (u64, u64)> = BTreeMap::new();
    for (index, item) in items.iter().enumerate() {
        let Some(verdict) = item.verdict else {
            return Err(Error::UnlabeledItem {
                index,
                post_id: item.post_id.clone(),
                subcategory: item.span.subcategory,
                start: item.span.start,
                end: item.span.end,
            });
        };
        let t = tallies.entry(item.span.subcategory).or_insert((0, 0));
        t.1 += 1;
        if verdict == Verdict::TruePositive {
            t.0 += 1;
        }
    }
    Ok(tallies
        .into_iter()
        .map(|(sub, (tp, n))| {
            (
                sub,
                Precision {
                    true_positives: tp,
                    reviewed: n,
                    precision: tp as f64 / n as f64,
                },
            )
        })
        .collect())
}

const REVIEW_HEADER: [&str; 6] = [
    "post_id",
    "start",
    "end",
    "surface",
    "subcategory",
    "verdict",
];

/// Write review items as CSV for hand labeling (verdict column blank
/// until filled in with TP or FP).
pub fn write_review_csv(items: &[ReviewItem], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let wrap = |e: csv::Error| Error::Data(format!("writing review CSV: {e}"));
    w.write_record(REVIEW_HEADER).map_err(wrap)?;
    for item in items {
        let verdict = match item.verdict {
            None => "",
            Some(Verdict::TruePositive) => "TP",
            Some(Verdict::FalsePositive) => "FP",
        };
        w.write_record([
            item.post_id.as_str(),
            &item.span.start.to_string(),
            &item.span.end.to_string(),
            &item.span.surface,
            item.span.subcategory.name(),
            verdict,
        ])
        .map_err(wrap)?;
    }
    w.flush()
        .map_err(|e| Error::Data(format!("writing review CSV: {e}")))?;
    Ok(())
}

/// Read a labeled review CSV back. Unlike post input, every row must
/// parse: a silently dropped judgment would bias the precision estimate.
pub fn read_review_csv(input: impl Read) -> Result<Vec<ReviewItem>> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Data(format!("review CSV header: {e}")))?
        .clone();
    let mut idx = [0usize; 6];
    for (slot, name) in idx.iter_mut().zip(REVIEW_HEADER) {
        *slot = headers
            .iter()
            .position(|h| h.trim().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Data(format!("review CSV is missing the {name} column")))?;
    }
    let mut items = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Data(format!("review CSV: {e}")))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| rec.get(idx[i]).unwrap_or("");
        let bad = |what: &str| Error::Data(format!("review CSV line {line}: {what}"));
        let start: usize = field(1)
            .trim()
            .parse()
            .map_err(|_| bad("bad start offset"))?;
        let end: usize = field(2).trim().parse().map_err(|_| bad("bad end offset"))?;
        if end <= start {
            return Err(bad("end must exceed start"));
        }
        let subcategory: CueSubcategory =
            field(4).parse().map_err(|_| bad("unknown subcategory"))?;
        let verdict = match field(5).trim() {
            "" => None,
            v => Some(v.parse::<Verdict>().map_err(|e| bad(&e.to_string()))?),
        };
        items.push(ReviewItem {
            post_id: field(0).to_string(),
            span: CueSpan {
                start,
                end,
                surface: field(3).to_string(),
                subcategory,
                affect_display: subcategory.default_affect_display(),
            },
            verdict,
        });
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reader(s: &str, format: InputFormat) -> PostReader {
        PostReader::new(
            Box::new(io::Cursor::new(s.to_string().into_bytes())),
            format,
        )
        .unwrap()
    }

    #[test]
    fn jsonl_skips_malformed_lines_with_line_numbers() {
        let input = "{\"post_id\":\"a\",\"text\":\"hi\"}\nnot json\n\n{\"text\":\"no id\"}\n{\"post_id\":7,\"text\":\"x\",\"sarcastic\":true,\"emotion\":\"sad\"}\n";
        let mut r = reader(input, InputFormat::Jsonl);
        let posts: Vec<Post> = r.by_ref().map(|p| p.unwrap()).collect();
        assert_eq!(posts.len(), 2);
        assert_eq!(posts[1].post_id, "7");
        assert_eq!(posts[1].sarcastic, Some(true));
        assert_eq!(posts[1].emotion.as_deref(), Some("sad"));
        let lines: Vec<u64> = r.skipped().iter().map(|s| s.line).collect();
        assert_eq!(lines, vec![2, 4]);
    }

    #[test]
    fn csv_reads_optional_columns_and_skips_bad_rows() {
        let input = "post_id,text,sarcastic\np1,\"hello, world\",yes\n,orphan,\np3,fine,maybe\np4,\"multi\nline\",\n";
        let mut r = reader(input, InputFormat::Csv);
        let posts: Vec<Post> = r.by_ref().map(|p| p.unwrap()).collect();
        assert_eq!(
            posts.iter().map(|p| p.post_id.as_str()).collect::<Vec<_>>(),
            vec!["p1", "p4"]
        );
        assert_eq!(posts[0].text, "hello, world");
        assert_eq!(posts[0].sarcastic, Some(true));
        assert_eq!(posts[1].text, "multi\nline");
        assert_eq!(r.skip_count(), 2);
        assert_eq!(r.skipped()[0].line, 3);
    }

    #[test]
    fn csv_without_required_columns_is_an_error() {
        let res = PostReader::new(
            Box::new(io::Cursor::new(b"id,body\n1,x\n".to_vec())),
            InputFormat::Csv,
        );
        assert!(matches!(res, Err(Error::Data(_))));
    }

    #[test]
    fn format_guessing() {
        assert_eq!(
            InputFormat::from_path(Path::new("a/b.CSV")),
            InputFormat::Csv
        );
        assert_eq!(
            InputFormat::from_path(Path::new("a/b.jsonl")),
            InputFormat::Jsonl
        );
        assert!("xml".parse::<InputFormat>().is_err());
    }

    #[test]
    fn annotation_order_is_preserved_across_workers() {
        let cfg = DetectorConfig::default();
        let posts: Vec<Post> = (0..1500)
            .map(|i| Post::new(format!("p{i}"), format!("SOOOO post {i}!!")))
            .collect();
        let seq = annotate_all(&posts, &cfg, 1).unwrap();
        let par = annotate_all(&posts, &cfg, 4).unwrap();
        assert_eq!(seq, par);
        assert_eq!(par[1234].post_id, "p1234");
        assert!(annotate_all(&posts, &cfg, 0).is_err());
    }

    #[test]
    fn stream_errors_pass_through_in_position() {
        let cfg = DetectorConfig::default();
        let input = vec![
            Ok(Post::new("a", "hi")),
            Err(Error::Data("boom".into())),
            Ok(Post::new("b", "never")),
        ];
        let out: Vec<_> = annotate_corpus(input, &cfg, 2).unwrap().collect();
        assert_eq!(out.len(), 2);
        assert!(out[0].is_ok());
        assert!(out[1].is_err());
    }

    #[test]
    fn frequency_table_sums_agree() {
        let cfg = DetectorConfig::default();
        let posts = vec![
            Post::new("1", "*hugs* STOP!!"),
            Post::new("2", "plain words"),
            Post::new("3", "loool 😀 soooo"),
        ];
        let ann = annotate_all(&posts, &cfg, 1).unwrap();
        let table = category_frequencies(&ann);
        assert_eq!(table.posts_total, 3);
        assert_eq!(table.posts_with_any_cue, 2);
        assert_eq!(table.per_subcategory.len(), 10);
        assert_eq!(table.per_domain.values().sum::<u64>(), table.spans_total());
        let spans: usize = ann.iter().map(|a| a.spans.len()).sum();
        assert_eq!(table.spans_total(), spans as u64);

        let mut merged = category_frequencies(&ann[..1]);
        merged.merge(&category_frequencies(&ann[1..]));
        assert_eq!(merged, table);
        assert!(table.to_svg().contains("VolumeCaps"));
    }

    fn corpus_with(n: usize) -> Vec<AnnotatedPost> {
        let cfg = DetectorConfig::default();
        (0..n)
            .map(|i| annotate(&format!("p{i}"), "*hugs* NOOO sooo", &cfg))
            .collect()
    }

    #[test]
    fn sampling_respects_quota_and_is_seeded() {
        let ann = corpus_with(50);
        let quota: BTreeMap<_, _> = [
            (CueSubcategory::Touch, 5),
            (CueSubcategory::VolumeCaps, 80),
            (CueSubcategory::Vocalics, 3),
        ]
        .into();
        let a = stratified_sample(&ann, &quota, 11);
        let b = stratified_sample(&ann, &quota, 11);
        assert_eq!(a, b);
        let count = |s| a.items.iter().filter(|i| i.span.subcategory == s).count();
        assert_eq!(count(CueSubcategory::Touch), 5);
        assert_eq!(count(CueSubcategory::VolumeCaps), 50);
        assert_eq!(count(CueSubcategory::Vocalics), 0);

        // one stratum's picks do not move when another quota changes
        let narrower: BTreeMap<_, _> = [(CueSubcategory::Touch, 5)].into();
        let c = stratified_sample(&ann, &narrower, 11);
        let touch = |batch: &ReviewBatch| {
            batch
                .items
                .iter()
                .filter(|i| i.span.subcategory == CueSubcategory::Touch)
                .cloned()
                .collect::<Vec<_>>()
        };
        assert_eq!(touch(&a), touch(&c));
        assert_ne!(touch(&a), touch(&stratified_sample(&ann, &narrower, 12)));
    }

    #[test]
    fn precision_requires_every_verdict() {
        let ann = corpus_with(4);
        let quota: BTreeMap<_, _> = [(CueSubcategory::Touch, 4)].into();
        let mut batch = stratified_sample(&ann, &quota, 1);
        let err = precision_from_reviews(&batch.items).unwrap_err();
        assert!(matches!(err, Error::UnlabeledItem { index: 0, .. }));
        for (i, item) in batch.items.iter_mut().enumerate() {
            item.verdict = Some(if i == 0 {
                Verdict::FalsePositive
            } else {
                Verdict::TruePositive
            });
        }
        let p = precision_from_reviews(&batch.items).unwrap();
        let touch = p[&CueSubcategory::Touch];
        assert_eq!((touch.true_positives, touch.reviewed), (3, 4));
        assert!((touch.precision - 0.75).abs() < 1e-12);
    }

    #[test]
    fn review_csv_round_trip() {
        let ann = corpus_with(3);
        let quota: BTreeMap<_, _> = [
            (CueSubcategory::Touch, 2),
            (CueSubcategory::PitchElongation, 1),
        ]
        .into();
        let mut batch = stratified_sample(&ann, &quota, 5);
        batch.items[0].verdict = Some(Verdict::TruePositive);
        let mut buf = Vec::new();
        write_review_csv(&batch.items, &mut buf).unwrap();
        let back = read_review_csv(buf.as_slice()).unwrap();
        assert_eq!(back, batch.items);

        let bad = "post_id,start,end,surface,subcategory,verdict\np,0,3,x,Touch,maybe\n";
        assert!(read_review_csv(bad.as_bytes()).is_err());
        let labeled = "post_id,start,end,surface,subcategory,verdict\np,0,3,x,touch,fp\n";
        assert_eq!(
            read_review_csv(labeled.as_bytes()).unwrap()[0].verdict,
            Some(Verdict::FalsePositive)
        );
    }
}
