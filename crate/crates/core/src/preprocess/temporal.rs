//! Temporal expressions: surface normalization, a small TIME/DATE/DURATION/SET
//! tagger and the five rewrite rules that map temporal phrasing onto the
//! canonical tokens `within`, `fast` and `alltimes`.

use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::lexicon::{self, contains};
use super::{TaggedRequirement, Tagger, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TemporalKind {
    Time,
    Date,
    Duration,
    Set,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalEntity {
    pub kind: TemporalKind,
    /// Token range `[start, end)`.
    pub start: usize,
    pub end: usize,
    pub normalized: String,
}

impl TemporalEntity {
    pub fn span(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }
}

const ROUND_THE_CLOCK: &str = "24 hours per day 365 days per year";

/// Replace the surface variants of round-the-clock, `everyday`, `sec(s)` and
/// `min(s)`. Idempotent.
pub fn normalize_surface(text: &str) -> String {
    static RES: OnceLock<[(Regex, &'static str); 4]> = OnceLock::new();
    let res = RES.get_or_init(|| {
        [
            (
                Regex::new(r"\b24\s*[-/*xX×]\s*7(?:\s*[-/*xX×]\s*365)?\b").unwrap(),
                ROUND_THE_CLOCK,
            ),
            (Regex::new(r"(?i)\bevery(day)\b").unwrap(), "every day"),
            (Regex::new(r"(?i)\bsecs?\b").unwrap(), "seconds"),
            (Regex::new(r"(?i)\bmins?\b").unwrap(), "minutes"),
        ]
    });
    let mut out = text.to_string();
    for (re, rep) in res.iter() {
        if re.is_match(&out) {
            out = re.replace_all(&out, *rep).into_owned();
        }
    }
    out
}

fn unit_code(word: &str) -> Option<&'static str> {
    let w = word.to_lowercase();
    lexicon::TIME_UNITS.iter().find(|(u, _)| *u == w).map(|(_, code)| *code)
}

fn is_sub_day(code: &str) -> bool {
    matches!(code, "MS" | "S" | "M" | "H")
}

fn iso_duration(amount: &str, code: &str) -> String {
    match code {
        "MS" => format!("PT{amount}MS"),
        c if is_sub_day(c) => format!("PT{amount}{c}"),
        "MO" => format!("P{amount}M"),
        c => format!("P{amount}{c}"),
    }
}

/// Numeric amount of a quantity token, or `None` if it is not one.
fn amount(tok: &Token) -> Option<String> {
    let w = tok.lower();
    if w.starts_with(|c: char| c.is_ascii_digit()) {
        return Some(w.trim_end_matches('%').to_string());
    }
    if w == "a" || w == "an" {
        return Some("1".into());
    }
    if let Some(i) = lexicon::NUMBER_WORDS.iter().position(|n| *n == w) {
        return Some(match i {
            0..=20 => i.to_string(),
            _ => w,
        });
    }
    if matches!(w.as_str(), "few" | "several" | "couple") {
        return Some("X".into());
    }
    None
}

const MONTHS: &[&str] = &[
    "january",
    "february",
    "march",
    "april",
    "may",
    "june",
    "july",
    "august",
    "september",
    "october",
    "november",
    "december",
];
const WEEKDAYS: &[&str] = &[
    "monday",
    "tuesday",
    "wednesday",
    "thursday",
    "friday",
    "saturday",
    "sunday",
];
const FREQUENCY_ADVERBS: &[(&str, &str)] = &[
    ("hourly", "PT1H"),
    ("daily", "P1D"),
    ("nightly", "P1D"),
    ("weekly", "P1W"),
    ("monthly", "P1M"),
    ("yearly", "P1Y"),
    ("annually", "P1Y"),
];

fn clock_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^([01]?\d|2[0-3]):([0-5]\d)$").unwrap())
}

fn is_meridiem(w: &str) -> bool {
    matches!(w, "am" | "pm" | "a.m." | "p.m.")
}

/// Detect temporal expressions over the token sequence.
pub fn temporal_tag(tagged: &TaggedRequirement) -> Vec<TemporalEntity> {
    let toks = &tagged.tokens;
    let lower: Vec<String> = toks.iter().map(Token::lower).collect();
    let mut out: Vec<TemporalEntity> = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let push = |out: &mut Vec<TemporalEntity>, kind, start, end, normalized: String| {
            out.push(TemporalEntity {
                kind,
                start,
                end,
                normalized,
            });
            end
        };
        let w = lower[i].as_str();
        let next = lower.get(i + 1).map(String::as_str);

        // SET: every/each/per [n] unit, or "a unit" right after a duration
        if matches!(w, "every" | "each" | "per")
            || (matches!(w, "a" | "an")
                && out
                    .last()
                    .is_some_and(|e| e.end == i && e.kind == TemporalKind::Duration))
        {
            let (n, unit_at) = match toks.get(i + 1).and_then(amount) {
                Some(n) if !matches!(lower[i + 1].as_str(), "a" | "an") => (n, i + 2),
                _ => ("1".to_string(), i + 1),
            };
            if let Some(code) = lower.get(unit_at).and_then(|u| unit_code(u)) {
                i = push(
                    &mut out,
                    TemporalKind::Set,
                    i,
                    unit_at + 1,
                    format!("SET:{}", iso_duration(&n, code)),
                );
                continue;
            }
        }
        if let Some((_, iso)) = FREQUENCY_ADVERBS.iter().find(|(f, _)| *f == w) {
            i = push(&mut out, TemporalKind::Set, i, i + 1, format!("SET:{iso}"));
            continue;
        }

        // TIME: 10:00 [am], 10 pm, noon, midnight
        if let Some(c) = clock_re().captures(w) {
            let end = if next.is_some_and(is_meridiem) { i + 2 } else { i + 1 };
            i = push(
                &mut out,
                TemporalKind::Time,
                i,
                end,
                format!("T{:0>2}:{}", &c[1], &c[2]),
            );
            continue;
        }
        if w.chars().all(|c| c.is_ascii_digit()) && !w.is_empty() && w.len() <= 2 && next.is_some_and(is_meridiem) {
            i = push(&mut out, TemporalKind::Time, i, i + 2, format!("T{w:0>2}:00"));
            continue;
        }
        if matches!(w, "noon" | "midday") {
            i = push(&mut out, TemporalKind::Time, i, i + 1, "T12:00".into());
            continue;
        }
        if w == "midnight" {
            i = push(&mut out, TemporalKind::Time, i, i + 1, "T00:00".into());
            continue;
        }

        // DATE: month [day] [, year] | weekday | today/tomorrow/yesterday | bare year
        if let Some(m) = MONTHS.iter().position(|m| *m == w) {
            let capitalized = toks[i].surface.starts_with(|c: char| c.is_uppercase());
            if w != "may" || (capitalized && next.is_some_and(|n| n.starts_with(|c: char| c.is_ascii_digit()))) {
                let mut end = i + 1;
                let mut day = "XX".to_string();
                if let Some(d) = lower
                    .get(end)
                    .filter(|d| d.len() <= 2 && d.chars().all(|c| c.is_ascii_digit()))
                {
                    day = format!("{d:0>2}");
                    end += 1;
                }
                let mut year = "XXXX".to_string();
                let y_at = if lower.get(end).map(String::as_str) == Some(",") {
                    end + 1
                } else {
                    end
                };
                if let Some(y) = lower.get(y_at).filter(|y| is_year(y)) {
                    year = y.clone();
                    end = y_at + 1;
                }
                i = push(
                    &mut out,
                    TemporalKind::Date,
                    i,
                    end,
                    format!("{year}-{:02}-{day}", m + 1),
                );
                continue;
            }
        }
        if WEEKDAYS.contains(&w) {
            i = push(
                &mut out,
                TemporalKind::Date,
                i,
                i + 1,
                format!("XXXX-WXX-{}", WEEKDAYS.iter().position(|d| *d == w).unwrap() + 1),
            );
            continue;
        }
        if matches!(w, "today" | "tomorrow" | "yesterday") {
            i = push(&mut out, TemporalKind::Date, i, i + 1, w.to_uppercase());
            continue;
        }

        // DURATION: amount unit
        if let Some(n) = amount(&toks[i]) {
            if let Some(code) = next.and_then(unit_code) {
                i = push(&mut out, TemporalKind::Duration, i, i + 2, iso_duration(&n, code));
                continue;
            }
            if is_year(w)
                && toks[i].pos == super::Tag::CD
                && next.is_none_or(|n| unit_code(n).is_none())
                && (i == 0
                    || matches!(
                        lower[i - 1].as_str(),
                        "in" | "by" | "since" | "until" | "before" | "after" | "of" | ","
                    ))
            {
                i = push(&mut out, TemporalKind::Date, i, i + 1, w.to_string());
                continue;
            }
        }
        if w == "half" && next == Some("an") && lower.get(i + 2).map(String::as_str) == Some("hour") {
            i = push(&mut out, TemporalKind::Duration, i, i + 3, "PT30M".into());
            continue;
        }
        i += 1;
    }
    out
}

/// Length in seconds of a normalized duration such as `PT24H` or `SET:P1D`.
fn iso_seconds(iso: &str) -> Option<f64> {
    let iso = iso.strip_prefix("SET:").unwrap_or(iso);
    let (body, sub_day) = match iso.strip_prefix("PT") {
        Some(b) => (b, true),
        None => (iso.strip_prefix('P')?, false),
    };
    let split = body.find(|c: char| c.is_ascii_alphabetic())?;
    let n: f64 = body[..split].parse().ok()?;
    let unit = match (&body[split..], sub_day) {
        ("MS", true) => 0.001,
        ("S", true) => 1.0,
        ("M", true) => 60.0,
        ("H", true) => 3600.0,
        ("D", false) => 86_400.0,
        ("W", false) => 7.0 * 86_400.0,
        ("M", false) => 30.0 * 86_400.0,
        ("Y", false) => 365.0 * 86_400.0,
        _ => return None,
    };
    Some(n * unit)
}

/// True when the duration fills the whole recurring period (24 hours per day).
fn covers(duration: &str, set: &str) -> bool {
    matches!((iso_seconds(duration), iso_seconds(set)), (Some(d), Some(p)) if d >= p)
}

fn is_year(w: &str) -> bool {
    w.len() == 4 && (w.starts_with("19") || w.starts_with("20")) && w.chars().all(|c| c.is_ascii_digit())
}

fn attach(tagged: &mut TaggedRequirement) {
    let ents = temporal_tag(tagged);
    for t in &mut tagged.tokens {
        t.temporal = None;
    }
    for (k, e) in ents.iter().enumerate() {
        for t in &mut tagged.tokens[e.span()] {
            t.temporal = Some(k);
        }
    }
    tagged.temporals = ents;
}

/// Phrases that rule 1 rewrites to `within` when they directly precede a
/// duration. Longer phrases first.
const WITHIN_TRIGGERS: &[&[&str]] = &[
    &["not", "be", "more", "than"],
    &["at", "a", "maximum", "of"],
    &["no", "longer", "than"],
    &["no", "more", "than"],
    &["no", "later", "than"],
    &["for", "less", "than"],
    &["at", "a", "maximum"],
    &["no", "later"],
    &["under"],
    &["in"],
];

/// Adjectives treated as positive sentiment when they modify `time`.
const POSITIVE_ADJECTIVES: &[&str] = &[
    "quick",
    "timely",
    "fast",
    "prompt",
    "immediate",
    "rapid",
    "speedy",
    "swift",
    "reasonable",
    "acceptable",
    "efficient",
    "good",
    "short",
    "instant",
];

/// Words that put an adjacent temporal run in an availability context.
const AVAILABILITY_CONTEXT: &[&str] = &[
    "available",
    "availability",
    "accessible",
    "operational",
    "operate",
    "operates",
    "online",
    "up",
    "running",
    "run",
    "runs",
    "open",
    "functional",
    "operating",
    "accessed",
    "access",
];

fn splice(
    tagged: &mut TaggedRequirement,
    stage: &str,
    range: std::ops::Range<usize>,
    replacement: &[&str],
    tagger: &dyn Tagger,
) {
    let new: Vec<Token> = replacement
        .iter()
        .map(|s| Token::new(s.to_string(), tagger.tag(&[s.to_string()])[0].pos))
        .collect();
    let before: Vec<Token> = tagged.tokens[range.clone()].to_vec();
    tagged.log("temporal", stage, &before, &new);
    tagged.tokens.splice(range, new);
}

/// Apply the five temporal rules in order, re-detecting temporal entities
/// after each one. Returns the rewritten requirement with entities attached.
pub fn apply_temporal_rules(tagged: &TaggedRequirement, tagger: &dyn Tagger) -> TaggedRequirement {
    let mut t = tagged.clone();

    // R1: trigger phrase immediately before a DURATION -> "within"
    attach(&mut t);
    let durations: Vec<usize> = t
        .temporals
        .iter()
        .filter(|e| e.kind == TemporalKind::Duration)
        .map(|e| e.start)
        .collect();
    for &start in durations.iter().rev() {
        let lower: Vec<String> = t.tokens[..start].iter().map(Token::lower).collect();
        let mut s = start;
        let mut consumed = false;
        loop {
            let hit = WITHIN_TRIGGERS
                .iter()
                .find(|p| p.len() <= s && lower[s - p.len()..s].iter().zip(p.iter()).all(|(a, b)| a == b));
            match hit {
                Some(p) => {
                    s -= p.len();
                    consumed = true;
                }
                None if s > 0 && lower[s - 1] == "within" => s -= 1,
                None => break,
            }
        }
        if consumed {
            splice(&mut t, "R1", s..start, &["within"], tagger);
        }
    }

    // R2: temporal runs in a coverage or availability context -> "alltimes"
    attach(&mut t);
    let mut runs: Vec<(usize, usize, bool)> = Vec::new();
    for e in &t.temporals {
        let coverage = |prev: &TemporalEntity| {
            prev.kind == TemporalKind::Duration
                && e.kind == TemporalKind::Set
                && prev.end == e.start
                && covers(&prev.normalized, &e.normalized)
        };
        match runs.last_mut() {
            Some((_, end, cov))
                if *end == e.start
                    || (*end + 1 == e.start && matches!(t.tokens[*end].lower().as_str(), "," | "and" | "/" | "-")) =>
            {
                let prev = t.temporals.iter().find(|p| p.end == *end).unwrap();
                *cov |= coverage(prev);
                *end = e.end;
            }
            _ => runs.push((e.start, e.end, false)),
        }
    }
    for &(s, e, coverage) in runs.iter().rev() {
        let context = s > 0 && contains(AVAILABILITY_CONTEXT, &t.tokens[s - 1].lower());
        if coverage || context {
            splice(&mut t, "R2", s..e, &["alltimes"], tagger);
        }
    }

    // R3: within <DURATION in seconds or minutes> -> "fast"
    attach(&mut t);
    let fast: Vec<(usize, usize)> = t
        .temporals
        .iter()
        .filter(|e| {
            e.kind == TemporalKind::Duration
                && e.start > 0
                && t.tokens[e.start - 1].lower() == "within"
                && unit_code(&t.tokens[e.end - 1].surface).is_some_and(|c| matches!(c, "S" | "M"))
        })
        .map(|e| (e.start - 1, e.end))
        .collect();
    for &(s, e) in fast.iter().rev() {
        splice(&mut t, "R3", s..e, &["fast"], tagger);
    }

    // R4: positive adjective + "time", or timely/quick -> "fast"
    let mut i = 0;
    while i < t.tokens.len() {
        let w = t.tokens[i].lower();
        if contains(POSITIVE_ADJECTIVES, &w) && t.tokens.get(i + 1).is_some_and(|n| n.lower() == "time") {
            splice(&mut t, "R4", i..i + 2, &["fast"], tagger);
        } else if w == "timely" || w == "quick" {
            splice(&mut t, "R4", i..i + 1, &["fast"], tagger);
        }
        i += 1;
    }

    // R5: [8-9][0-9](.[0-9])?% [IN|DT]* time -> "alltimes"
    static PCT: OnceLock<Regex> = OnceLock::new();
    let pct = PCT.get_or_init(|| Regex::new(r"^[89][0-9](?:\.[0-9]+)?%?$").unwrap());
    let mut i = 0;
    while i < t.tokens.len() {
        if pct.is_match(&t.tokens[i].surface) {
            let mut j = i + 1;
            if t.tokens
                .get(j)
                .is_some_and(|n| n.surface == "%" || n.lower() == "percent")
            {
                j += 1;
            }
            while t
                .tokens
                .get(j)
                .is_some_and(|n| matches!(n.pos, super::Tag::IN | super::Tag::DT))
            {
                j += 1;
            }
            if t.tokens.get(j).is_some_and(|n| n.lower() == "time") {
                splice(&mut t, "R5", i..j + 1, &["alltimes"], tagger);
            }
        }
        i += 1;
    }

    attach(&mut t);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::{LexiconTagger, TaggedRequirement};

    fn tagged(text: &str) -> TaggedRequirement {
        TaggedRequirement::from_text("t", &normalize_surface(text), &LexiconTagger).unwrap()
    }

    fn rules(text: &str) -> String {
        apply_temporal_rules(&tagged(text), &LexiconTagger).rewritten_text()
    }

    #[test]
    fn surface_normalization() {
        assert_eq!(
            normalize_surface("available 24/7"),
            "available 24 hours per day 365 days per year"
        );
        assert_eq!(
            normalize_surface("up 24x7x365 and 24-7"),
            format!("up {ROUND_THE_CLOCK} and {ROUND_THE_CLOCK}")
        );
        assert_eq!(normalize_surface("respond in 5 secs"), "respond in 5 seconds");
        assert_eq!(
            normalize_surface("within 2 min, everyday"),
            "within 2 minutes, every day"
        );
        assert_eq!(normalize_surface(ROUND_THE_CLOCK), ROUND_THE_CLOCK);
        assert_eq!(normalize_surface("minimum seconds"), "minimum seconds");
    }

    #[test]
    fn detects_kinds() {
        let kinds = |s: &str| -> Vec<(TemporalKind, String)> {
            let t = tagged(s);
            temporal_tag(&t)
                .into_iter()
                .map(|e| {
                    (
                        e.kind,
                        t.tokens[e.span()]
                            .iter()
                            .map(|x| x.surface.as_str())
                            .collect::<Vec<_>>()
                            .join(" "),
                    )
                })
                .collect()
        };
        assert_eq!(
            kinds("within 5 seconds"),
            [(TemporalKind::Duration, "5 seconds".to_string())]
        );
        assert_eq!(kinds("every day"), [(TemporalKind::Set, "every day".to_string())]);
        assert!(kinds("the user shall log in").is_empty());
        assert_eq!(kinds("by 10:30 pm on Monday")[0].0, TemporalKind::Time);
        assert_eq!(kinds("by 10:30 pm on Monday")[1].0, TemporalKind::Date);
        assert_eq!(
            kinds("before March 3, 2017")[0],
            (TemporalKind::Date, "March 3 , 2017".to_string())
        );
        assert_eq!(
            kinds("7 days a week").iter().map(|k| k.0).collect::<Vec<_>>(),
            [TemporalKind::Duration, TemporalKind::Set]
        );
    }

    #[test]
    fn rule_examples() {
        assert_eq!(rules("in no more than 5 seconds"), "fast");
        assert_eq!(rules("respond in 5 secs"), "respond fast");
        assert_eq!(rules("timely response"), "fast response");
        assert_eq!(rules("a quick search"), "a fast search");
        assert_eq!(rules("within a reasonable time"), "within a fast");
        assert_eq!(rules("99.9% of the time"), "alltimes");
        assert_eq!(rules("up 95 percent of the time"), "up alltimes");
        assert_eq!(rules("available 24/7"), "available alltimes");
        assert_eq!(rules("works 24 hours per day 7 days per week"), "works alltimes");
        assert_eq!(
            rules("downtime shall not exceed 2 hours per month"),
            "downtime shall not exceed 2 hours per month"
        );
        assert_eq!(rules("shall operate 7 days a week"), "shall operate alltimes");
    }

    #[test]
    fn r1_needs_adjacent_duration() {
        assert_eq!(rules("in the report"), "in the report");
        assert_eq!(rules("under 2 hours"), "within 2 hours");
        assert_eq!(rules("no later than 3 days"), "within 3 days");
        assert_eq!(rules("under heavy load"), "under heavy load");
        // hours are not "fast"
        assert_eq!(rules("within 2 hours"), "within 2 hours");
    }

    #[test]
    fn rules_are_idempotent_on_output() {
        for s in [
            "in no more than 5 seconds",
            "available 24/7",
            "99.9% of the time",
            "timely response",
            "every day backups",
        ] {
            let once = rules(s);
            assert_eq!(rules(&once), once, "{s}");
        }
    }
}
