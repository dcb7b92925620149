use std::collections::{BTreeMap, BTreeSet};

use super::{EntityKind, Tag, TaggedRequirement, Token};
use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../../assets/srs_dictionary.tsv");

/// Project-specific actor and product phrases, matched case-insensitively
/// with longest match.
///
/// File format: one `<phrase> TAB <USER|PRODUCT>` per line, `#` comments.
/// A `<word> TAB KEEP` line marks a modifier that blinding must never absorb
/// into the entity noun phrase.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EntityDictionary {
    entries: BTreeMap<Vec<String>, EntityKind>,
    keep: BTreeSet<String>,
    max_len: usize,
}

impl EntityDictionary {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled dictionary is valid")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&src)
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut dict = EntityDictionary::default();
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim_end();
            if line.trim().is_empty() {
                continue;
            }
            let (phrase, kind) = line.split_once('\t').ok_or_else(|| Error::Dictionary {
                line: i + 1,
                reason: "expected `<phrase>\\t<USER|PRODUCT>`".into(),
            })?;
            let kind = kind.trim();
            if kind.eq_ignore_ascii_case("KEEP") {
                dict.keep.insert(phrase.trim().to_lowercase());
                continue;
            }
            let kind = match kind.to_ascii_uppercase().as_str() {
                "USER" => EntityKind::User,
                "PRODUCT" => EntityKind::Product,
                other => {
                    return Err(Error::Dictionary {
                        line: i + 1,
                        reason: format!("unknown entity kind {other:?}"),
                    })
                }
            };
            dict.insert(phrase, kind)
                .map_err(|reason| Error::Dictionary { line: i + 1, reason })?;
        }
        Ok(dict)
    }

    pub fn insert(&mut self, phrase: &str, kind: EntityKind) -> std::result::Result<(), String> {
        let key: Vec<String> = super::tokenize(phrase)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|w| w.to_lowercase())
            .collect();
        match self.entries.get(&key) {
            Some(existing) if *existing != kind => Err(format!(
                "phrase {phrase:?} is both {} and {}",
                existing.token(),
                kind.token()
            )),
            _ => {
                self.max_len = self.max_len.max(key.len());
                self.entries.insert(key, kind);
                Ok(())
            }
        }
    }

    pub fn keep_modifier(&mut self, word: &str) {
        self.keep.insert(word.to_lowercase());
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Longest entry starting at `start`, as (length, kind).
    fn longest_match(&self, lowered: &[String], start: usize) -> Option<(usize, EntityKind)> {
        let max = self.max_len.min(lowered.len() - start);
        (1..=max)
            .rev()
            .find_map(|len| self.entries.get(&lowered[start..start + len]).map(|&kind| (len, kind)))
    }
}

fn absorbable(tok: &Token, dict: &EntityDictionary) -> bool {
    (tok.pos.is_noun() || matches!(tok.pos, Tag::JJ | Tag::VBN | Tag::VBG)) && !dict.keep.contains(&tok.lower())
}

/// Collapse every base noun phrase headed by a dictionary hit into a single
/// `USER` or `PRODUCT` token. The rightmost hit of a noun phrase decides its
/// kind; determiners and other tokens are left untouched.
pub fn entity_blind(tagged: &TaggedRequirement, dict: &EntityDictionary) -> TaggedRequirement {
    let toks = &tagged.tokens;
    let lowered: Vec<String> = toks.iter().map(Token::lower).collect();

    let mut hits: Vec<(usize, usize, EntityKind)> = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        match dict.longest_match(&lowered, i) {
            Some((len, kind)) => {
                hits.push((i, i + len, kind));
                i += len;
            }
            None => i += 1,
        }
    }

    // Right to left: extend each hit leftwards over noun-phrase modifiers,
    // swallowing any earlier hit it reaches.
    let mut spans: Vec<(usize, usize, EntityKind)> = Vec::new();
    let mut floor = usize::MAX;
    for &(start, end, kind) in hits.iter().rev() {
        if end > floor {
            continue;
        }
        let mut s = start;
        while s > 0 && absorbable(&toks[s - 1], dict) {
            s -= 1;
        }
        floor = s;
        spans.push((s, end, kind));
    }
    spans.reverse();

    let mut out = TaggedRequirement {
        origin: tagged.origin.clone(),
        tokens: Vec::with_capacity(toks.len()),
        temporals: Vec::new(),
        fired: tagged.fired.clone(),
    };
    let mut cursor = 0;
    for (s, e, kind) in spans {
        out.tokens.extend_from_slice(&toks[cursor..s]);
        let replacement = Token::new(kind.token().to_string(), Tag::NNP);
        if e - s != 1 || toks[s].surface != kind.token() {
            out.log(
                "blinding",
                kind.token(),
                &toks[s..e],
                std::slice::from_ref(&replacement),
            );
        }
        out.tokens.push(replacement);
        cursor = e;
    }
    out.tokens.extend_from_slice(&toks[cursor..]);
    out
}
