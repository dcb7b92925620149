//! Rule-based normalization of requirement text: tokenization, POS tagging,
//! entity blinding, temporal normalization and co-occurrence guarded rewrites.

mod cooccur;
mod entity;
pub(crate) mod lexicon;
mod pipeline;
mod pos;
mod rules;
mod temporal;
mod tokenize;

use serde::{Deserialize, Serialize};

pub use cooccur::{build_cooccurrence, CooccurrenceIndex};
pub use entity::{entity_blind, EntityDictionary};
pub use pipeline::{preprocess_pipeline, PipelineConfig, Preprocessor, ProcessedRequirement, StageToggles};
pub use pos::{LexiconTagger, Tag, Tagger};
pub use rules::{apply_nfr_rules, RewriteRule, RuleSet};
pub use temporal::{apply_temporal_rules, normalize_surface, temporal_tag, TemporalEntity, TemporalKind};
pub use tokenize::{detokenize, tokenize};

pub(crate) use lexicon::STOP_WORDS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EntityKind {
    User,
    Product,
}

impl EntityKind {
    pub fn token(self) -> &'static str {
        match self {
            EntityKind::User => "USER",
            EntityKind::Product => "PRODUCT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub pos: Tag,
    pub entity: Option<EntityKind>,
    /// Index into the owning requirement's temporal entity list.
    pub temporal: Option<usize>,
}

impl Token {
    /// The blinded placeholders carry their entity kind implicitly.
    pub fn new(surface: String, pos: Tag) -> Self {
        let entity = match surface.as_str() {
            "USER" => Some(EntityKind::User),
            "PRODUCT" => Some(EntityKind::Product),
            _ => None,
        };
        Token {
            surface,
            pos,
            entity,
            temporal: None,
        }
    }

    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }
}

/// One rewrite recorded for the audit log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleFiring {
    pub stage: String,
    pub rule: String,
    pub before: String,
    pub after: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedRequirement {
    pub origin: String,
    pub tokens: Vec<Token>,
    pub temporals: Vec<TemporalEntity>,
    pub fired: Vec<RuleFiring>,
}

impl TaggedRequirement {
    /// Tokenize and tag `text`.
    pub fn from_text(origin: impl Into<String>, text: &str, tagger: &dyn Tagger) -> crate::Result<Self> {
        let surfaces = tokenize(text)?;
        Ok(TaggedRequirement {
            origin: origin.into(),
            tokens: tagger.tag(&surfaces),
            temporals: Vec::new(),
            fired: Vec::new(),
        })
    }

    pub fn surfaces(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.surface.as_str()).collect()
    }

    pub fn rewritten_text(&self) -> String {
        detokenize(&self.surfaces())
    }

    /// Re-run the tagger over the current surfaces. Temporal links are dropped.
    pub(crate) fn retag(&mut self, tagger: &dyn Tagger) {
        let surfaces: Vec<String> = self.tokens.iter().map(|t| t.surface.clone()).collect();
        self.tokens = tagger.tag(&surfaces);
        self.temporals.clear();
    }

    pub(crate) fn log(&mut self, stage: &str, rule: &str, before: &[Token], after: &[Token]) {
        let join = |ts: &[Token]| detokenize(&ts.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>());
        self.fired.push(RuleFiring {
            stage: stage.to_string(),
            rule: rule.to_string(),
            before: join(before),
            after: join(after),
        });
    }
}
