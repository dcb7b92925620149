//! Syntactic-count and keyword-group features for FR/NFR classification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::ReqKind;
use crate::error::{Error, Result};
use crate::preprocess::{Tag, TaggedRequirement, Token};
use crate::scalar::Scalar;

pub const FEATURE_SPEC_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SyntacticKind {
    Adjectives,
    Adverbs,
    AdverbsModifyingVerbs,
    Cardinals,
    DegreeAdjAdv,
}

impl SyntacticKind {
    pub const ALL: [SyntacticKind; 5] = [
        Self::Adjectives,
        Self::Adverbs,
        Self::AdverbsModifyingVerbs,
        Self::Cardinals,
        Self::DegreeAdjAdv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Adjectives => "adjectives",
            Self::Adverbs => "adverbs",
            Self::AdverbsModifyingVerbs => "adverbs_modifying_verbs",
            Self::Cardinals => "cardinals",
            Self::DegreeAdjAdv => "degree_adj_adv",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntacticCounts {
    pub adjectives: usize,
    pub adverbs: usize,
    pub adverbs_modifying_verbs: usize,
    pub cardinals: usize,
    pub degree_adj_adv: usize,
}

impl SyntacticCounts {
    pub fn get(&self, kind: SyntacticKind) -> usize {
        match kind {
            SyntacticKind::Adjectives => self.adjectives,
            SyntacticKind::Adverbs => self.adverbs,
            SyntacticKind::AdverbsModifyingVerbs => self.adverbs_modifying_verbs,
            SyntacticKind::Cardinals => self.cardinals,
            SyntacticKind::DegreeAdjAdv => self.degree_adj_adv,
        }
    }
}

/// An adverb counts as verb-modifying when a verb lies within two tokens of it.
const VERB_WINDOW: usize = 2;

pub fn count_tokens(tokens: &[Token]) -> SyntacticCounts {
    let mut c = SyntacticCounts::default();
    for (i, t) in tokens.iter().enumerate() {
        if t.pos.is_adjective() {
            c.adjectives += 1;
        }
        if t.pos.is_adverb() {
            c.adverbs += 1;
            let lo = i.saturating_sub(VERB_WINDOW);
            let hi = (i + VERB_WINDOW).min(tokens.len() - 1);
            if (lo..=hi).any(|j| j != i && tokens[j].pos.is_verb()) {
                c.adverbs_modifying_verbs += 1;
            }
        }
        if t.pos == Tag::CD {
            c.cardinals += 1;
        }
        if t.pos.is_degree() {
            c.degree_adj_adv += 1;
        }
    }
    c
}

pub fn count_syntactic(tagged: &TaggedRequirement) -> SyntacticCounts {
    count_tokens(&tagged.tokens)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntacticRanking {
    /// Fraction of requirements with a non-zero count, per kind.
    pub probabilities: BTreeMap<SyntacticKind, f64>,
    pub selected: Vec<SyntacticKind>,
}

/// Select the kinds whose occurrence probability exceeds `cutoff`. A cutoff
/// of zero or less keeps every kind.
pub fn rank_syntactic_features(counts: &[SyntacticCounts], cutoff: f64) -> Result<SyntacticRanking> {
    if counts.is_empty() {
        return Err(Error::Empty("no requirements to rank features on".into()));
    }
    let n = counts.len() as f64;
    let probabilities: BTreeMap<_, _> = SyntacticKind::ALL
        .iter()
        .map(|&k| (k, counts.iter().filter(|c| c.get(k) > 0).count() as f64 / n))
        .collect();
    let selected = SyntacticKind::ALL
        .iter()
        .copied()
        .filter(|k| cutoff <= 0.0 || probabilities[k] > cutoff)
        .collect();
    Ok(SyntacticRanking {
        probabilities,
        selected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KeywordGroupKind {
    Adjective,
    Adverb,
    Modal,
    Determiner,
    Verb,
    Preposition,
    SingularNoun,
    PluralNoun,
}

impl KeywordGroupKind {
    pub const ALL: [KeywordGroupKind; 8] = [
        Self::Adjective,
        Self::Adverb,
        Self::Modal,
        Self::Determiner,
        Self::Verb,
        Self::Preposition,
        Self::SingularNoun,
        Self::PluralNoun,
    ];

    pub fn admits(self, tag: Tag) -> bool {
        match self {
            Self::Adjective => tag.is_adjective(),
            Self::Adverb => tag.is_adverb(),
            Self::Modal => tag == Tag::MD,
            Self::Determiner => matches!(tag, Tag::DT | Tag::PDT | Tag::WDT),
            Self::Verb => tag.is_verb(),
            Self::Preposition => matches!(tag, Tag::IN | Tag::TO),
            Self::SingularNoun => matches!(tag, Tag::NN | Tag::NNP),
            Self::PluralNoun => matches!(tag, Tag::NNS | Tag::NNPS),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Adjective => "adjective",
            Self::Adverb => "adverb",
            Self::Modal => "modal",
            Self::Determiner => "determiner",
            Self::Verb => "verb",
            Self::Preposition => "preposition",
            Self::SingularNoun => "singular_noun",
            Self::PluralNoun => "plural_noun",
        }
    }
}

impl fmt::Display for KeywordGroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeywordGroup {
    pub kind: KeywordGroupKind,
    pub cutoff: f64,
    /// Selected keywords with their smoothed NFR score.
    pub keywords: BTreeMap<String, f64>,
}

impl KeywordGroup {
    pub fn contains(&self, token: &Token) -> bool {
        self.kind.admits(token.pos) && self.keywords.contains_key(&token.lower())
    }

    /// Tokens counted into this group's entry. In signed mode FR-leaning
    /// keywords count -1.
    pub fn score_tokens(&self, tokens: &[Token], counting: KeywordCounting) -> i64 {
        tokens
            .iter()
            .filter(|t| self.kind.admits(t.pos))
            .filter_map(|t| self.keywords.get(&t.lower()))
            .map(|&s| match counting {
                KeywordCounting::Plain => 1,
                KeywordCounting::Signed if s < 0.5 => -1,
                KeywordCounting::Signed => 1,
            })
            .sum()
    }
}

/// Smoothed probability that a requirement containing the word is an NFR.
pub fn smoothed_score(nfr_count: usize, all_count: usize) -> f64 {
    (nfr_count as f64 + 1.0) / (all_count as f64 + 2.0)
}

/// Per-word document counts `(nfr, all)` for words tagged with the group's POS.
pub fn keyword_counts(
    docs: &[(&TaggedRequirement, ReqKind)],
    kind: KeywordGroupKind,
) -> BTreeMap<String, (usize, usize)> {
    let mut counts: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (doc, class) in docs {
        let words: BTreeSet<String> = doc
            .tokens
            .iter()
            .filter(|t| kind.admits(t.pos) && t.surface.chars().any(char::is_alphabetic))
            .map(Token::lower)
            .collect();
        for w in words {
            let e = counts.entry(w).or_default();
            if *class == ReqKind::Nfr {
                e.0 += 1;
            }
            e.1 += 1;
        }
    }
    counts
}

/// Keep words whose smoothed score is above `cutoff` or below `1 - cutoff`.
pub fn keyword_discrimination(
    docs: &[(&TaggedRequirement, ReqKind)],
    kind: KeywordGroupKind,
    cutoff: f64,
) -> Result<KeywordGroup> {
    let has = |c| docs.iter().any(|(_, k)| *k == c);
    if !has(ReqKind::Fr) || !has(ReqKind::Nfr) {
        return Err(Error::InvalidArgument(
            "keyword selection needs both FR and NFR requirements".into(),
        ));
    }
    let keywords = keyword_counts(docs, kind)
        .into_iter()
        .map(|(w, (nfr, all))| (w, smoothed_score(nfr, all)))
        .filter(|&(_, s)| s > cutoff || s < 1.0 - cutoff)
        .collect();
    Ok(KeywordGroup { kind, cutoff, keywords })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeywordCounting {
    /// Number of tokens in the selected keyword set.
    #[default]
    Plain,
    /// NFR-leaning keywords count +1, FR-leaning ones -1.
    Signed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FeatureParams {
    pub cutoff_syntactic: f64,
    pub cutoff_keywords: BTreeMap<KeywordGroupKind, f64>,
    pub counting: KeywordCounting,
}

impl Default for FeatureParams {
    fn default() -> Self {
        FeatureParams {
            cutoff_syntactic: 0.8,
            cutoff_keywords: KeywordGroupKind::ALL.iter().map(|&k| (k, 0.7)).collect(),
            counting: KeywordCounting::Plain,
        }
    }
}

impl FeatureParams {
    pub fn keyword_cutoff(&self, kind: KeywordGroupKind) -> f64 {
        self.cutoff_keywords.get(&kind).copied().unwrap_or(0.7)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSpec {
    pub version: u32,
    pub selected_syntactic: Vec<SyntacticKind>,
    pub keyword_groups: Vec<KeywordGroup>,
    pub cutoff_syntactic: f64,
    #[serde(default)]
    pub counting: KeywordCounting,
    /// Occurrence probabilities seen when the spec was fitted.
    #[serde(default)]
    pub syntactic_probabilities: BTreeMap<SyntacticKind, f64>,
}

impl FeatureSpec {
    pub fn fit(docs: &[(&TaggedRequirement, ReqKind)], params: &FeatureParams) -> Result<Self> {
        let counts: Vec<SyntacticCounts> = docs.iter().map(|(d, _)| count_syntactic(d)).collect();
        let ranking = rank_syntactic_features(&counts, params.cutoff_syntactic)?;
        let keyword_groups = KeywordGroupKind::ALL
            .iter()
            .map(|&k| keyword_discrimination(docs, k, params.keyword_cutoff(k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FeatureSpec {
            version: FEATURE_SPEC_VERSION,
            selected_syntactic: ranking.selected,
            keyword_groups,
            cutoff_syntactic: params.cutoff_syntactic,
            counting: params.counting,
            syntactic_probabilities: ranking.probabilities,
        })
    }

    pub fn len(&self) -> usize {
        self.selected_syntactic.len() + self.keyword_groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn feature_names(&self) -> Vec<String> {
        self.selected_syntactic
            .iter()
            .map(|k| k.name().to_string())
            .chain(self.keyword_groups.iter().map(|g| format!("kw_{}", g.kind)))
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let spec: FeatureSpec = serde_json::from_str(src)?;
        if spec.version != FEATURE_SPEC_VERSION {
            return Err(Error::Version {
                what: "feature spec".into(),
                found: spec.version,
                expected: FEATURE_SPEC_VERSION,
            });
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector<T> {
    pub values: Vec<T>,
}

impl<T: Scalar> FeatureVector<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn extract_vector<T: Scalar>(tagged: &TaggedRequirement, spec: &FeatureSpec) -> FeatureVector<T> {
    let counts = count_syntactic(tagged);
    let mut values: Vec<T> = spec
        .selected_syntactic
        .iter()
        .map(|&k| T::of_usize(counts.get(k)))
        .collect();
    for g in &spec.keyword_groups {
        values.push(T::of(g.score_tokens(&tagged.tokens, spec.counting) as f64));
    }
    FeatureVector { values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::LexiconTagger;
    use proptest::prelude::*;

    fn tag(text: &str) -> TaggedRequirement {
        TaggedRequirement::from_text("t", text, &LexiconTagger).unwrap()
    }

    #[test]
    fn syntactic_examples() {
        let c = count_syntactic(&tag("The system shall respond quickly"));
        assert_eq!((c.adverbs, c.adjectives, c.adverbs_modifying_verbs), (1, 0, 1));
        let c = count_syntactic(&tag("The 3 fastest queries"));
        assert_eq!((c.cardinals, c.degree_adj_adv), (1, 1));
        assert_eq!(count_tokens(&[]), SyntacticCounts::default());
    }

    #[test]
    fn adverb_far_from_verb_is_not_modifying() {
        let c = count_syntactic(&tag("Reports are generated for the managers very often"));
        assert_eq!(c.adverbs, 2);
        assert_eq!(c.adverbs_modifying_verbs, 0);
    }

    #[test]
    fn smoothing_values() {
        assert!((smoothed_score(10, 10) - 11.0 / 12.0).abs() < 1e-15);
        assert_eq!(smoothed_score(5, 10), 0.5);
        assert_eq!(smoothed_score(0, 0), 0.5);
    }

    #[test]
    fn ranking_extremes() {
        let counts = vec![
            count_syntactic(&tag("The 3 fastest queries")),
            count_syntactic(&tag("Respond quickly")),
        ];
        assert_eq!(rank_syntactic_features(&counts, 0.0).unwrap().selected.len(), 5);
        assert!(rank_syntactic_features(&counts, 1.0).unwrap().selected.is_empty());
        let r = rank_syntactic_features(&counts, 0.4).unwrap();
        assert_eq!(r.probabilities[&SyntacticKind::Cardinals], 0.5);
        assert!(rank_syntactic_features(&[], 0.8).is_err());
    }

    fn toy() -> Vec<(TaggedRequirement, ReqKind)> {
        vec![
            (tag("The system shall respond fast"), ReqKind::Nfr),
            (tag("The system shall be secure"), ReqKind::Nfr),
            (tag("The system shall respond within 2 seconds"), ReqKind::Nfr),
            (tag("The user shall create a report"), ReqKind::Fr),
            (tag("The user shall create an order"), ReqKind::Fr),
        ]
    }

    #[test]
    fn keyword_group_selection() {
        let docs = toy();
        let refs: Vec<_> = docs.iter().map(|(d, k)| (d, *k)).collect();
        let g = keyword_discrimination(&refs, KeywordGroupKind::Verb, 0.7).unwrap();
        // respond: 2 NFR of 2 -> 3/4; create: 0 of 2 -> 1/4; "shall" is MD
        assert_eq!(g.keywords.get("respond"), Some(&0.75));
        assert_eq!(g.keywords.get("create"), Some(&0.25));
        assert!(!g.keywords.contains_key("be"));
        let fr_only: Vec<_> = refs.iter().filter(|(_, k)| *k == ReqKind::Fr).cloned().collect();
        assert!(keyword_discrimination(&fr_only, KeywordGroupKind::Verb, 0.7).is_err());
    }

    #[test]
    fn hand_built_vector() {
        let mut spec = FeatureSpec {
            version: FEATURE_SPEC_VERSION,
            selected_syntactic: vec![SyntacticKind::Cardinals, SyntacticKind::Adverbs],
            keyword_groups: KeywordGroupKind::ALL
                .iter()
                .map(|&kind| KeywordGroup {
                    kind,
                    cutoff: 0.7,
                    keywords: BTreeMap::new(),
                })
                .collect(),
            cutoff_syntactic: 0.8,
            counting: KeywordCounting::Plain,
            syntactic_probabilities: BTreeMap::new(),
        };
        spec.keyword_groups[4].keywords.insert("respond".into(), 0.9);
        spec.keyword_groups[2].keywords.insert("shall".into(), 0.3);
        let v: FeatureVector<f64> = extract_vector(&tag("PRODUCT shall respond within 5"), &spec);
        assert_eq!(v.values, [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        spec.counting = KeywordCounting::Signed;
        let v: FeatureVector<f32> = extract_vector(&tag("PRODUCT shall respond within 5"), &spec);
        assert_eq!(v.values, [1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(spec.len(), 10);
        let none: FeatureVector<f64> = extract_vector(&tag("a b c"), &spec);
        assert!(none.values[2..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn spec_roundtrip_and_version() {
        let docs = toy();
        let refs: Vec<_> = docs.iter().map(|(d, k)| (d, *k)).collect();
        let spec = FeatureSpec::fit(&refs, &FeatureParams::default()).unwrap();
        assert_eq!(spec.keyword_groups.len(), 8);
        let back = FeatureSpec::from_json(&spec.to_json().unwrap()).unwrap();
        assert_eq!(back, spec);
        let bumped = spec.to_json().unwrap().replace("\"version\": 1", "\"version\": 9");
        assert!(matches!(
            FeatureSpec::from_json(&bumped),
            Err(Error::Version { found: 9, .. })
        ));
    }

    proptest! {
        #[test]
        fn score_strictly_inside_unit_interval(nfr in 0usize..10_000, extra in 0usize..10_000) {
            let s = smoothed_score(nfr, nfr + extra);
            prop_assert!(s > 0.0 && s < 1.0);
        }

        #[test]
        fn adding_a_cardinal_increments_by_one(words in prop::collection::vec("[a-z]{2,7}", 1..8), at in 0usize..8) {
            let mut t = tag(&words.join(" "));
            let before = count_syntactic(&t);
            let at = at.min(t.tokens.len());
            t.tokens.insert(at, Token::new("42".into(), Tag::CD));
            prop_assert_eq!(count_syntactic(&t).cardinals, before.cardinals + 1);
        }
    }
}
