//! Labeled requirements corpus: ingestion, label bookkeeping and stratified
//! cross-validation folds.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The eleven non-functional sub-categories of the PROMISE NFR data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NfrSubcategory {
    A,
    FT,
    L,
    LF,
    MN,
    O,
    PE,
    PO,
    SC,
    SE,
    US,
}

impl NfrSubcategory {
    pub const ALL: [NfrSubcategory; 11] = [
        Self::A,
        Self::FT,
        Self::L,
        Self::LF,
        Self::MN,
        Self::O,
        Self::PE,
        Self::PO,
        Self::SC,
        Self::SE,
        Self::US,
    ];

    /// Column order of the published sub-classification comparison grid.
    pub const REPORT_ORDER: [NfrSubcategory; 11] = [
        Self::A,
        Self::US,
        Self::SE,
        Self::SC,
        Self::LF,
        Self::L,
        Self::MN,
        Self::FT,
        Self::O,
        Self::PE,
        Self::PO,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::FT => "FT",
            Self::L => "L",
            Self::LF => "LF",
            Self::MN => "MN",
            Self::O => "O",
            Self::PE => "PE",
            Self::PO => "PO",
            Self::SC => "SC",
            Self::SE => "SE",
            Self::US => "US",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::A => "Availability",
            Self::FT => "Fault Tolerance",
            Self::L => "Legal & Licensing",
            Self::LF => "Look & Feel",
            Self::MN => "Maintainability",
            Self::O => "Operability",
            Self::PE => "Performance",
            Self::PO => "Portability",
            Self::SC => "Scalability",
            Self::SE => "Security",
            Self::US => "Usability",
        }
    }
}

impl fmt::Display for NfrSubcategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for NfrSubcategory {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| s.to_string())
    }
}

/// Ground-truth label of a requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Fr,
    Nfr(NfrSubcategory),
}

impl Label {
    /// Label token as used in the data files: `F` for functional requirements,
    /// the sub-category code otherwise.
    pub fn token(self) -> &'static str {
        match self {
            Label::Fr => "F",
            Label::Nfr(sub) => sub.code(),
        }
    }

    pub fn is_nfr(self) -> bool {
        matches!(self, Label::Nfr(_))
    }

    pub fn subcategory(self) -> Option<NfrSubcategory> {
        match self {
            Label::Fr => None,
            Label::Nfr(sub) => Some(sub),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("F") || t.eq_ignore_ascii_case("FR") {
            return Ok(Label::Fr);
        }
        t.parse::<NfrSubcategory>().map(Label::Nfr)
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|t| serde::de::Error::custom(format!("unknown label token {t:?}")))
    }
}

/// Binary task label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ReqKind {
    #[serde(rename = "FR")]
    Fr,
    #[serde(rename = "NFR")]
    Nfr,
}

impl From<Label> for ReqKind {
    fn from(l: Label) -> Self {
        if l.is_nfr() {
            ReqKind::Nfr
        } else {
            ReqKind::Fr
        }
    }
}

impl fmt::Display for ReqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReqKind::Fr => "FR",
            ReqKind::Nfr => "NFR",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Requirement {
    pub id: String,
    pub project_id: String,
    pub text: String,
    pub label: Label,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    /// tera-PROMISE ARFF-like file (`@attribute` header, `@data`, quoted text).
    Arff,
    /// Canonical `project_id,text,label` CSV.
    Csv,
}

impl CorpusFormat {
    /// Guess from a file extension; anything that isn't `.csv` is read as ARFF.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => CorpusFormat::Csv,
            _ => CorpusFormat::Arff,
        }
    }
}

/// Ordered collection of requirements with unique ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    requirements: Vec<Requirement>,
}

impl Corpus {
    pub fn new(requirements: Vec<Requirement>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(requirements.len());
        for r in &requirements {
            if !seen.insert(r.id.as_str()) {
                return Err(Error::DuplicateId(r.id.clone()));
            }
            if r.text.trim().is_empty() {
                return Err(Error::InvalidArgument(format!("requirement {} has empty text", r.id)));
            }
        }
        Ok(Corpus { requirements })
    }

    pub fn requirements(&self) -> &[Requirement] {
        &self.requirements
    }

    pub fn len(&self) -> usize {
        self.requirements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.requirements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Requirement> {
        self.requirements.iter()
    }

    /// Sub-corpus of requirements satisfying `keep`, in original order.
    pub fn filter(&self, mut keep: impl FnMut(&Requirement) -> bool) -> Corpus {
        Corpus {
            requirements: self.requirements.iter().filter(|r| keep(r)).cloned().collect(),
        }
    }

    /// Same requirements with text replaced; `f` must not change the count.
    pub fn map_text(&self, mut f: impl FnMut(&Requirement) -> String) -> Corpus {
        Corpus {
            requirements: self
                .requirements
                .iter()
                .map(|r| Requirement {
                    text: f(r),
                    ..r.clone()
                })
                .collect(),
        }
    }

    pub fn label_counts(&self) -> BTreeMap<Label, usize> {
        label_counts(self)
    }

    /// Serialize to the canonical CSV format.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("project_id,text,label\n");
        for r in &self.requirements {
            out.push_str(&csv_field(&r.project_id, false));
            out.push(',');
            out.push_str(&csv_field(&r.text, true));
            out.push(',');
            out.push_str(r.label.token());
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a Corpus {
    type Item = &'a Requirement;
    type IntoIter = std::slice::Iter<'a, Requirement>;

    fn into_iter(self) -> Self::IntoIter {
        self.requirements.iter()
    }
}

fn csv_field(s: &str, always_quote: bool) -> String {
    if always_quote || s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn label_counts(corpus: &Corpus) -> BTreeMap<Label, usize> {
    let mut counts = BTreeMap::new();
    for r in corpus {
        *counts.entry(r.label).or_insert(0) += 1;
    }
    counts
}

/// Read a corpus from `source`. Requirement ids are assigned from record order
/// (`R1`, `R2`, ...), so serializing and re-reading keeps them stable.
pub fn parse_corpus(mut source: impl Read, format: CorpusFormat) -> Result<Corpus> {
    let mut raw = Vec::new();
    source
        .read_to_end(&mut raw)
        .map_err(|e| Error::io("<corpus stream>", e))?;
    let text = String::from_utf8(raw).map_err(|e| Error::Malformed {
        line: 0,
        field: "encoding".into(),
        reason: e.to_string(),
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(&text);
    let records = match format {
        CorpusFormat::Csv => read_csv_records(text)?,
        CorpusFormat::Arff => read_arff_records(text)?,
    };
    let requirements = records
        .into_iter()
        .enumerate()
        .map(|(i, rec)| rec.into_requirement(i + 1))
        .collect::<Result<Vec<_>>>()?;
    Corpus::new(requirements)
}

pub fn read_corpus_file(path: &std::path::Path, format: Option<CorpusFormat>) -> Result<Corpus> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(
        std::io::BufReader::new(file),
        format.unwrap_or_else(|| CorpusFormat::from_path(path)),
    )
}

struct RawRecord {
    line: usize,
    fields: Vec<String>,
}

impl RawRecord {
    fn into_requirement(self, ordinal: usize) -> Result<Requirement> {
        let line = self.line;
        let mut fields = self.fields;
        if fields.len() < 3 {
            return Err(Error::Malformed {
                line,
                field: "record".into(),
                reason: format!("expected 3 fields, found {}", fields.len()),
            });
        }
        let label_tok = fields.pop().unwrap();
        let project_id = fields.remove(0).trim().to_string();
        // Unquoted text containing commas arrives split; stitch it back.
        let text = fields.join(",").trim().to_string();
        if project_id.is_empty() {
            return Err(Error::Malformed {
                line,
                field: "project_id".into(),
                reason: "empty".into(),
            });
        }
        if text.is_empty() {
            return Err(Error::Malformed {
                line,
                field: "text".into(),
                reason: "empty".into(),
            });
        }
        let label = label_tok.trim().parse::<Label>().map_err(|_| Error::UnknownLabel {
            line,
            token: label_tok.trim().to_string(),
        })?;
        Ok(Requirement {
            id: format!("R{ordinal}"),
            project_id,
            text,
            label,
        })
    }
}

fn read_csv_records(text: &str) -> Result<Vec<RawRecord>> {
    let mut records = Vec::new();
    let mut parser = FieldParser::new(text, &['"'], false);
    let mut header_seen = false;
    while let Some((line, fields)) = parser.next_record()? {
        if fields.len() == 1 && fields[0].trim().is_empty() {
            continue;
        }
        if !header_seen {
            header_seen = true;
            let names: Vec<_> = fields.iter().map(|f| f.trim().to_ascii_lowercase()).collect();
            if names == ["project_id", "text", "label"] {
                continue;
            }
            return Err(Error::Malformed {
                line,
                field: "header".into(),
                reason: "expected `project_id,text,label`".into(),
            });
        }
        records.push(RawRecord { line, fields });
    }
    Ok(records)
}

fn read_arff_records(text: &str) -> Result<Vec<RawRecord>> {
    let mut records = Vec::new();
    let mut parser = FieldParser::new(text, &['\'', '"'], true);
    loop {
        let trimmed = parser.rest().trim_start_matches([' ', '\t']);
        if trimmed.starts_with('%') || trimmed.starts_with('@') {
            parser.skip_line();
            continue;
        }
        let Some((line, fields)) = parser.next_record()? else {
            break;
        };
        if fields.len() == 1 && fields[0].trim().is_empty() {
            continue;
        }
        records.push(RawRecord { line, fields });
    }
    Ok(records)
}

/// Minimal delimited-record reader with quote handling. Doubled quotes always
/// escape; backslash escapes are honoured when `backslash` is set (ARFF).
struct FieldParser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    quotes: &'a [char],
    backslash: bool,
}

impl<'a> FieldParser<'a> {
    fn new(src: &'a str, quotes: &'a [char], backslash: bool) -> Self {
        FieldParser {
            src,
            pos: 0,
            line: 1,
            quotes,
            backslash,
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_line(&mut self) {
        match self.rest().find('\n') {
            Some(i) => {
                self.pos += i + 1;
                self.line += 1;
            }
            None => self.pos = self.src.len(),
        }
    }

    fn next_record(&mut self) -> Result<Option<(usize, Vec<String>)>> {
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start_line = self.line;
        let mut fields = Vec::new();
        let mut field = String::new();
        let mut chars = self.rest().char_indices().peekable();
        let base = self.pos;
        let mut quote: Option<char> = None;
        let mut was_quoted = false;
        let mut end = self.src.len() - base;
        while let Some((i, c)) = chars.next() {
            match quote {
                Some(q) => {
                    if c == q {
                        if chars.peek().map(|&(_, n)| n) == Some(q) {
                            chars.next();
                            field.push(q);
                        } else {
                            quote = None;
                        }
                    } else if c == '\\' && self.backslash {
                        match chars.next() {
                            Some((_, n)) => field.push(n),
                            None => field.push('\\'),
                        }
                    } else {
                        if c == '\n' {
                            self.line += 1;
                        }
                        field.push(c);
                    }
                }
                None => match c {
                    ',' => {
                        fields.push(finish_field(&mut field, was_quoted));
                        was_quoted = false;
                    }
                    '\n' => {
                        end = i + 1;
                        self.line += 1;
                        break;
                    }
                    '\r' => {}
                    c if self.quotes.contains(&c) && field.trim().is_empty() => {
                        field.clear();
                        quote = Some(c);
                        was_quoted = true;
                    }
                    c => {
                        if was_quoted && !c.is_whitespace() {
                            return Err(Error::Malformed {
                                line: self.line,
                                field: format!("field {}", fields.len() + 1),
                                reason: "characters after closing quote".into(),
                            });
                        }
                        field.push(c);
                    }
                },
            }
        }
        if quote.is_some() {
            return Err(Error::Malformed {
                line: start_line,
                field: format!("field {}", fields.len() + 1),
                reason: "unterminated quoted field".into(),
            });
        }
        fields.push(finish_field(&mut field, was_quoted));
        self.pos = base + end;
        Ok(Some((start_line, fields)))
    }
}

fn finish_field(field: &mut String, quoted: bool) -> String {
    let f = std::mem::take(field);
    if quoted {
        f
    } else {
        f.trim().to_string()
    }
}

/// Deterministic fold assignment for repeated stratified k-fold CV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub k: usize,
    pub runs: usize,
    pub seed: u64,
    /// Requirement ids in corpus order.
    pub ids: Vec<String>,
    /// `assignment[run][i]` is the fold of `ids[i]` in that run.
    pub assignment: Vec<Vec<usize>>,
}

impl FoldPlan {
    pub fn fold_of(&self, run: usize, id: &str) -> Option<usize> {
        let i = self.ids.iter().position(|x| x == id)?;
        self.assignment.get(run).map(|a| a[i])
    }

    pub fn test_indices(&self, run: usize, fold: usize) -> Vec<usize> {
        self.assignment[run]
            .iter()
            .enumerate()
            .filter_map(|(i, &f)| (f == fold).then_some(i))
            .collect()
    }

    pub fn train_indices(&self, run: usize, fold: usize) -> Vec<usize> {
        self.assignment[run]
            .iter()
            .enumerate()
            .filter_map(|(i, &f)| (f != fold).then_some(i))
            .collect()
    }

    pub fn fold_sizes(&self, run: usize) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignment[run] {
            sizes[f] += 1;
        }
        sizes
    }
}

/// Stratify on the full label (FR plus every NFR sub-category).
pub fn stratified_folds(corpus: &Corpus, k: usize, runs: usize, seed: u64) -> Result<FoldPlan> {
    stratified_folds_by(corpus, k, runs, seed, |r| r.label)
}

/// Stratified k-fold assignment over an arbitrary class key.
///
/// Within each run, members of each class are shuffled and dealt round-robin;
/// the dealing position carries over between classes so overall fold sizes
/// also differ by at most one.
pub fn stratified_folds_by<K: Ord>(
    corpus: &Corpus,
    k: usize,
    runs: usize,
    seed: u64,
    key: impl Fn(&Requirement) -> K,
) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if k > corpus.len() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds corpus size {}",
            corpus.len()
        )));
    }
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be positive".into()));
    }
    let mut strata: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for (i, r) in corpus.iter().enumerate() {
        strata.entry(key(r)).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = Vec::with_capacity(runs);
    for _ in 0..runs {
        let mut folds = vec![0usize; corpus.len()];
        let mut cursor = 0usize;
        for members in strata.values() {
            let mut members = members.clone();
            members.shuffle(&mut rng);
            for idx in members {
                folds[idx] = cursor % k;
                cursor += 1;
            }
        }
        assignment.push(folds);
    }
    Ok(FoldPlan {
        k,
        runs,
        seed,
        ids: corpus.iter().map(|r| r.id.clone()).collect(),
        assignment,
    })
}
