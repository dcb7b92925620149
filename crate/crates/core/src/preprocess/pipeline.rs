//! Stage composition: surface normalization, tagging, entity blinding,
//! temporal rules and co-occurrence guarded rewrites.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::{
    apply_nfr_rules, apply_temporal_rules, entity_blind, normalize_surface, CooccurrenceIndex, EntityDictionary,
    LexiconTagger, RuleFiring, RuleSet, TaggedRequirement,
};
use crate::corpus::{Corpus, Requirement};
use crate::error::Result;

/// Per-stage switches used for ablation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct StageToggles {
    pub surface: bool,
    pub blinding: bool,
    pub temporal: bool,
    pub rules: bool,
}

impl Default for StageToggles {
    fn default() -> Self {
        StageToggles::all(true)
    }
}

impl StageToggles {
    pub fn all(on: bool) -> Self {
        StageToggles {
            surface: on,
            blinding: on,
            temporal: on,
            rules: on,
        }
    }

    pub fn any(&self) -> bool {
        self.surface || self.blinding || self.temporal || self.rules
    }
}

/// Which requirements feed the co-occurrence index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CooccurrenceScope {
    #[default]
    Nfr,
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    /// Entity dictionary file; the bundled dictionary when unset.
    pub dictionary: Option<PathBuf>,
    /// Rule file; the bundled security rules when unset.
    pub rules: Option<PathBuf>,
    pub stages: StageToggles,
    pub cooccurrence: CooccurrenceScope,
    /// Upper bound on repeated passes while looking for a fixed point.
    pub max_passes: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            dictionary: None,
            rules: None,
            stages: StageToggles::default(),
            cooccurrence: CooccurrenceScope::Nfr,
            max_passes: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessedRequirement {
    pub id: String,
    pub original: String,
    pub text: String,
    pub tagged: TaggedRequirement,
    pub fired: Vec<RuleFiring>,
    pub passes: usize,
}

/// A configured pipeline. Immutable once built and shareable across threads.
#[derive(Debug, Clone)]
pub struct Preprocessor {
    pub dictionary: EntityDictionary,
    pub rules: RuleSet,
    pub index: CooccurrenceIndex,
    pub stages: StageToggles,
    pub max_passes: usize,
    tagger: LexiconTagger,
}

impl Preprocessor {
    pub fn new(dictionary: EntityDictionary, rules: RuleSet, index: CooccurrenceIndex, stages: StageToggles) -> Self {
        Preprocessor {
            dictionary,
            rules,
            index,
            stages,
            max_passes: 5,
            tagger: LexiconTagger,
        }
    }

    /// Load resources named by `config` and build the co-occurrence index
    /// from `corpus`.
    pub fn fit(config: &PipelineConfig, corpus: &Corpus) -> Result<Self> {
        let dictionary = match &config.dictionary {
            Some(p) => EntityDictionary::load(p)?,
            None => EntityDictionary::bundled(),
        };
        let rules = match &config.rules {
            Some(p) => RuleSet::load(p)?,
            None => RuleSet::bundled_security(),
        };
        let index = match config.cooccurrence {
            CooccurrenceScope::Nfr => {
                CooccurrenceIndex::from_texts(corpus.iter().filter(|r| r.label.is_nfr()).map(|r| r.text.as_str()))
            }
            CooccurrenceScope::All => super::build_cooccurrence(corpus),
        };
        let mut p = Preprocessor::new(dictionary, rules, index, config.stages);
        p.max_passes = config.max_passes.max(1);
        Ok(p)
    }

    fn single_pass(&self, id: &str, text: &str) -> Result<TaggedRequirement> {
        let text = if self.stages.surface {
            normalize_surface(text)
        } else {
            text.to_string()
        };
        let mut t = TaggedRequirement::from_text(id, &text, &self.tagger)?;
        if self.stages.blinding {
            t = entity_blind(&t, &self.dictionary);
            t.retag(&self.tagger);
        }
        if self.stages.temporal {
            t = apply_temporal_rules(&t, &self.tagger);
            let temporals = std::mem::take(&mut t.temporals);
            t.retag(&self.tagger);
            t.temporals = temporals;
        }
        if self.stages.rules {
            t = apply_nfr_rules(&t, &self.rules, &self.index, &self.tagger);
            t.retag(&self.tagger);
        }
        Ok(t)
    }

    /// Run the enabled stages, repeating until the text stops changing (or
    /// `max_passes` is reached). With every stage off the text is returned
    /// verbatim.
    pub fn process(&self, id: &str, text: &str) -> Result<ProcessedRequirement> {
        if !self.stages.any() {
            let tagged = TaggedRequirement::from_text(id, text, &self.tagger)?;
            return Ok(ProcessedRequirement {
                id: id.to_string(),
                original: text.to_string(),
                text: text.to_string(),
                tagged,
                fired: Vec::new(),
                passes: 0,
            });
        }
        let mut current = text.to_string();
        let mut fired = Vec::new();
        let mut passes = 0;
        let tagged = loop {
            passes += 1;
            let t = self.single_pass(id, &current)?;
            let out = t.rewritten_text();
            fired.extend(t.fired.iter().cloned());
            if out == current || passes >= self.max_passes {
                if out != current {
                    log::warn!("{id}: no fixed point after {passes} passes");
                }
                break t;
            }
            current = out;
        };
        Ok(ProcessedRequirement {
            id: id.to_string(),
            original: text.to_string(),
            text: tagged.rewritten_text(),
            tagged,
            fired,
            passes,
        })
    }

    /// Process every requirement; returns the rewritten corpus and the
    /// per-requirement records.
    pub fn process_corpus(&self, corpus: &Corpus) -> Result<(Corpus, Vec<ProcessedRequirement>)> {
        let processed = corpus
            .iter()
            .map(|r| self.process(&r.id, &r.text))
            .collect::<Result<Vec<_>>>()?;
        let mut it = processed.iter();
        let rewritten = corpus.map_text(|_| it.next().unwrap().text.clone());
        Ok((rewritten, processed))
    }
}

/// Processed text of one requirement.
pub fn preprocess_pipeline(requirement: &Requirement, pre: &Preprocessor) -> Result<String> {
    Ok(pre.process(&requirement.id, &requirement.text)?.text)
}
