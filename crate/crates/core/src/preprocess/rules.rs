//! Token-level regular-expression rewrite rules with co-occurrence guards.

use std::collections::BTreeSet;
use std::path::Path;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::{CooccurrenceIndex, Tag, TaggedRequirement, Tagger, Token};
use crate::corpus::NfrSubcategory;
use crate::error::{Error, Result};

const BUNDLED_SECURITY: &str = include_str!("../../assets/rules_security.toml");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RewriteRule {
    pub id: String,
    pub pattern: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<Vec<String>>,
    pub replacement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_nfr: Option<NfrSubcategory>,
    #[serde(skip)]
    compiled: Option<Regex>,
}

impl PartialEq for RewriteRule {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.pattern == other.pattern
            && self.guard == other.guard
            && self.replacement == other.replacement
            && self.target_nfr == other.target_nfr
    }
}

fn template_refs(template: &str) -> Vec<String> {
    let re = Regex::new(r"\$\{([^}]*)\}|\$([A-Za-z0-9_]+)").unwrap();
    re.captures_iter(template)
        .map(|c| c.get(1).or(c.get(2)).unwrap().as_str().to_string())
        .collect()
}

impl RewriteRule {
    pub fn new(
        id: impl Into<String>,
        pattern: impl Into<String>,
        guard: Option<Vec<String>>,
        replacement: impl Into<String>,
        target_nfr: Option<NfrSubcategory>,
    ) -> Result<Self> {
        let mut r = RewriteRule {
            id: id.into(),
            pattern: pattern.into(),
            guard,
            replacement: replacement.into(),
            target_nfr,
            compiled: None,
        };
        r.compile()?;
        Ok(r)
    }

    fn compile(&mut self) -> Result<()> {
        let err = |reason: String| Error::Rule {
            id: self.id.clone(),
            reason,
        };
        if self.id.trim().is_empty() {
            return Err(err("empty rule id".into()));
        }
        Regex::new(&self.pattern).map_err(|e| err(format!("pattern: {e}")))?;
        // Force the match to end on a token boundary so `NN` cannot stop
        // inside `NNP`.
        let re = Regex::new(&format!("(?:{})(?: |\\z)", self.pattern)).map_err(|e| err(format!("pattern: {e}")))?;
        let names: BTreeSet<&str> = re.capture_names().flatten().collect();
        for r in template_refs(&self.replacement) {
            let ok = match r.parse::<usize>() {
                Ok(n) => n < re.captures_len(),
                Err(_) => names.contains(r.as_str()),
            };
            if !ok {
                return Err(err(format!("replacement references undefined capture `{r}`")));
            }
        }
        if self.guard.as_ref().is_some_and(|g| g.is_empty()) {
            return Err(err("guard keyword list is empty".into()));
        }
        self.compiled = Some(re);
        Ok(())
    }

    fn regex(&self) -> &Regex {
        self.compiled.as_ref().expect("rules are compiled on construction")
    }
}

/// An ordered list of rules; application follows file order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RuleSet {
    #[serde(default, rename = "rule")]
    pub rules: Vec<RewriteRule>,
}

impl RuleSet {
    pub fn parse(src: &str) -> Result<Self> {
        let mut set: RuleSet = toml::from_str(src).map_err(|e| Error::Rule {
            id: "<file>".into(),
            reason: e.to_string(),
        })?;
        let mut seen = BTreeSet::new();
        for r in &mut set.rules {
            r.compile()?;
            if !seen.insert(r.id.clone()) {
                return Err(Error::Rule {
                    id: r.id.clone(),
                    reason: "duplicate rule id".into(),
                });
            }
        }
        Ok(set)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&src)
    }

    /// The security rules shipped with the crate.
    pub fn bundled_security() -> Self {
        Self::parse(BUNDLED_SECURITY).expect("bundled rule file is valid")
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn render(tokens: &[Token]) -> (String, Vec<usize>, Vec<usize>) {
    let mut s = String::new();
    let mut starts = Vec::with_capacity(tokens.len());
    let mut ends = Vec::with_capacity(tokens.len());
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        starts.push(s.len());
        s.push_str(&t.surface);
        s.push('/');
        s.push_str(t.pos.as_str());
        ends.push(s.len());
    }
    (s, starts, ends)
}

fn parse_replacement(text: &str, tagger: &dyn Tagger) -> Vec<Token> {
    text.split_whitespace()
        .map(|piece| match piece.rsplit_once('/') {
            Some((surface, tag)) if !surface.is_empty() => match tag.parse::<Tag>() {
                Ok(tag) => Token::new(surface.to_string(), tag),
                Err(_) => bare(piece, tagger),
            },
            _ => bare(piece, tagger),
        })
        .collect()
}

fn bare(surface: &str, tagger: &dyn Tagger) -> Token {
    let mut t = tagger.tag(&[surface.to_string()]).remove(0);
    t.surface = surface.to_string();
    t
}

#[derive(Clone, Copy)]
struct Span {
    start: usize,
    end: usize,
}

fn apply_rule(t: &mut TaggedRequirement, rule: &RewriteRule, index: &CooccurrenceIndex, tagger: &dyn Tagger) {
    let (text, starts, ends) = render(&t.tokens);
    let re = rule.regex();
    let mut edits: Vec<(usize, usize, Vec<Token>)> = Vec::new();
    let mut pos = 0;
    while pos <= text.len() {
        let Some(caps) = re.captures_at(&text, pos) else { break };
        let whole = caps.get(0).unwrap();
        let m_end = if whole.as_str().ends_with(' ') {
            whole.end() - 1
        } else {
            whole.end()
        };
        let m = Span {
            start: whole.start(),
            end: m_end,
        };
        let (si, ei) = (starts.binary_search(&m.start), ends.binary_search(&m.end));
        let (Ok(si), Ok(ei)) = (si, ei) else {
            pos = m.start + text[m.start..].chars().next().map_or(1, char::len_utf8);
            continue;
        };
        if ei < si {
            pos = m.start + 1;
            continue;
        }
        pos = m.end.max(m.start + 1);
        if let Some(keywords) = &rule.guard {
            let omega_span = caps.name("w").map_or(m, |w| Span {
                start: w.start(),
                end: w.end(),
            });
            let omega: Vec<String> = t.tokens[si..=ei]
                .iter()
                .zip(&starts[si..=ei])
                .filter(|(_, &s)| s >= omega_span.start && s < omega_span.end)
                .map(|(tok, _)| tok.surface.clone())
                .collect();
            if !index.guard_passes(&omega, keywords) {
                continue;
            }
        }
        let mut expanded = String::new();
        caps.expand(&rule.replacement, &mut expanded);
        let new = parse_replacement(&expanded, tagger);
        let unchanged =
            new.len() == ei + 1 - si && new.iter().zip(&t.tokens[si..=ei]).all(|(a, b)| a.surface == b.surface);
        if !unchanged {
            edits.push((si, ei + 1, new));
        }
    }
    for (s, e, new) in edits.into_iter().rev() {
        let before = t.tokens[s..e].to_vec();
        t.log("rules", &rule.id, &before, &new);
        t.tokens.splice(s..e, new);
    }
}

/// Apply every rule once, in order, each to the output of the previous one.
pub fn apply_nfr_rules(
    tagged: &TaggedRequirement,
    rules: &RuleSet,
    index: &CooccurrenceIndex,
    tagger: &dyn Tagger,
) -> TaggedRequirement {
    let mut t = tagged.clone();
    for rule in &rules.rules {
        apply_rule(&mut t, rule, index, tagger);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::{entity_blind, EntityDictionary, LexiconTagger};

    fn security_index() -> CooccurrenceIndex {
        CooccurrenceIndex::from_texts([
            "users must login with a password",
            "the system shall protect user privacy and encrypt data",
            "only authorized users shall access the system",
            "the system shall prevent malicious access",
            "users must enter the system with a password",
        ])
    }

    fn run(text: &str) -> String {
        let t = TaggedRequirement::from_text("t", text, &LexiconTagger).unwrap();
        let t = entity_blind(&t, &EntityDictionary::bundled());
        apply_nfr_rules(&t, &RuleSet::bundled_security(), &security_index(), &LexiconTagger).rewritten_text()
    }

    #[test]
    fn bundled_rules_load() {
        let set = RuleSet::bundled_security();
        assert_eq!(set.len(), 4);
        assert!(set.rules.iter().all(|r| r.target_nfr == Some(NfrSubcategory::SE)));
    }

    #[test]
    fn authorization_rewrite() {
        assert_eq!(
            run("USER must login with username and password"),
            "USER must authorization with authorization"
        );
        assert_eq!(
            run("The user name and password shall be secret"),
            "The authorization shall be secret"
        );
    }

    #[test]
    fn only_subject_root() {
        assert_eq!(
            run("Only administrators modify the records"),
            "Only authorized USER access the records"
        );
        assert_eq!(
            run("Only managers approve the reports"),
            "Only authorized USER access the reports"
        );
        // modal + base form is not a VBP root
        assert_eq!(
            run("Only registered users shall be able to access the system"),
            "Only USER shall be able to access the PRODUCT"
        );
    }

    #[test]
    fn only_root_agent() {
        assert_eq!(
            run("Records can only be modified by the administrator"),
            "Records can only be access by authorized USER"
        );
    }

    #[test]
    fn access_rewrite() {
        assert_eq!(run("USER can enter the system"), "USER can access the PRODUCT");
        assert_eq!(run("USER can enter data"), "USER can enter data");
    }

    #[test]
    fn guard_blocks_without_cooccurrence() {
        let t = TaggedRequirement::from_text("t", "the privacy notice", &LexiconTagger).unwrap();
        let empty = CooccurrenceIndex::default();
        let out = apply_nfr_rules(&t, &RuleSet::bundled_security(), &empty, &LexiconTagger);
        assert_eq!(out.rewritten_text(), "the privacy notice");
        assert!(out.fired.is_empty());
    }

    #[test]
    fn no_match_unchanged() {
        assert_eq!(run("The report lists every order"), "The report lists every order");
    }

    #[test]
    fn second_application_is_stable() {
        for s in [
            "USER must login with username and password",
            "Only administrators modify the records",
            "Records can only be modified by the administrator",
        ] {
            let once = run(s);
            assert_eq!(run(&once), once, "{s}");
        }
    }

    #[test]
    fn invalid_rules_name_the_rule() {
        let bad = "[[rule]]\nid = \"broken\"\npattern = \"(\"\nreplacement = \"x\"\n";
        match RuleSet::parse(bad) {
            Err(Error::Rule { id, .. }) => assert_eq!(id, "broken"),
            other => panic!("{other:?}"),
        }
        let bad = "[[rule]]\nid = \"undef\"\npattern = \"(?P<a>x)/NN\"\nreplacement = \"${b}\"\n";
        assert!(matches!(RuleSet::parse(bad), Err(Error::Rule { id, .. }) if id == "undef"));
        let dup = "[[rule]]\nid = \"d\"\npattern = \"x\"\nreplacement = \"y\"\n[[rule]]\nid = \"d\"\npattern = \"x\"\nreplacement = \"y\"\n";
        assert!(RuleSet::parse(dup).is_err());
    }

    #[test]
    fn matches_align_to_tokens() {
        let rules = RuleSet::parse("[[rule]]\nid = \"r\"\npattern = 'in/IN'\nreplacement = \"X\"\n").unwrap();
        let t = TaggedRequirement::from_text("t", "login in", &LexiconTagger).unwrap();
        let out = apply_nfr_rules(&t, &rules, &CooccurrenceIndex::default(), &LexiconTagger);
        assert_eq!(out.rewritten_text(), "login X");
    }
}
