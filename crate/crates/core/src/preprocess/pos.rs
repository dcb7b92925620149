//! Penn Treebank tag inventory and the bundled lexicon + suffix-rule tagger.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::lexicon::{self, contains};
use super::Token;

macro_rules! penn_tags {
    ($($var:ident => $s:literal),* $(,)?) => {
        /// Penn Treebank part-of-speech tags.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Tag { $($var),* }

        impl Tag {
            pub const ALL: &'static [Tag] = &[$(Tag::$var),*];

            pub fn as_str(self) -> &'static str {
                match self { $(Tag::$var => $s),* }
            }
        }

        impl FromStr for Tag {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s { $($s => Ok(Tag::$var),)* other => Err(other.to_string()) }
            }
        }
    };
}

penn_tags! {
    CC => "CC", CD => "CD", DT => "DT", EX => "EX", FW => "FW", IN => "IN",
    JJ => "JJ", JJR => "JJR", JJS => "JJS", LS => "LS", MD => "MD",
    NN => "NN", NNS => "NNS", NNP => "NNP", NNPS => "NNPS", PDT => "PDT", POS => "POS",
    PRP => "PRP", PRPS => "PRP$", RB => "RB", RBR => "RBR", RBS => "RBS", RP => "RP",
    SYM => "SYM", TO => "TO", UH => "UH", VB => "VB", VBD => "VBD", VBG => "VBG",
    VBN => "VBN", VBP => "VBP", VBZ => "VBZ", WDT => "WDT", WP => "WP", WPS => "WP$",
    WRB => "WRB",
    Period => ".", Comma => ",", Colon => ":", LeftParen => "-LRB-", RightParen => "-RRB-",
    OpenQuote => "``", CloseQuote => "''", Hash => "#", Dollar => "$",
}

impl Tag {
    pub fn is_noun(self) -> bool {
        matches!(self, Tag::NN | Tag::NNS | Tag::NNP | Tag::NNPS)
    }

    pub fn is_verb(self) -> bool {
        matches!(self, Tag::VB | Tag::VBD | Tag::VBG | Tag::VBN | Tag::VBP | Tag::VBZ)
    }

    pub fn is_adjective(self) -> bool {
        matches!(self, Tag::JJ | Tag::JJR | Tag::JJS)
    }

    pub fn is_adverb(self) -> bool {
        matches!(self, Tag::RB | Tag::RBR | Tag::RBS)
    }

    pub fn is_degree(self) -> bool {
        matches!(self, Tag::JJR | Tag::JJS | Tag::RBR | Tag::RBS)
    }

    /// Tags that may appear inside a base noun phrase before its head.
    pub fn is_np_modifier(self) -> bool {
        self.is_noun() || self.is_adjective() || matches!(self, Tag::VBN | Tag::VBG | Tag::CD)
    }

    pub fn is_punct(self) -> bool {
        matches!(
            self,
            Tag::Period
                | Tag::Comma
                | Tag::Colon
                | Tag::LeftParen
                | Tag::RightParen
                | Tag::OpenQuote
                | Tag::CloseQuote
                | Tag::Hash
                | Tag::Dollar
                | Tag::SYM
        )
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Tag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Tag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|t| serde::de::Error::custom(format!("unknown tag {t:?}")))
    }
}

/// Anything that can assign POS tags to a token sequence.
pub trait Tagger: Send + Sync {
    fn tag(&self, surfaces: &[String]) -> Vec<Token>;
}

/// Deterministic tagger: closed-class lexicon, a small open-class lexicon,
/// suffix heuristics for unknown words and a few contextual repairs.
#[derive(Debug, Clone, Copy, Default)]
pub struct LexiconTagger;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Lex {
    Fixed(Tag),
    /// verb base form, possibly also a noun
    Verb {
        noun: bool,
    },
    /// third-person singular / plural of a verb-capable stem
    VerbS {
        noun: bool,
    },
    /// past tense / participle
    VerbEd,
}

impl LexiconTagger {
    pub fn tag_one(&self, surface: &str) -> Tag {
        resolve_context_free(self.lexical(surface, true))
    }

    fn lexical(&self, surface: &str, sentence_initial: bool) -> Lex {
        use Tag::*;
        if let Some(t) = punct_tag(surface) {
            return Lex::Fixed(t);
        }
        if surface == "USER" || surface == "PRODUCT" {
            return Lex::Fixed(NNP);
        }
        let w = surface.to_lowercase();
        let w = w.as_str();
        if w.starts_with(|c: char| c.is_ascii_digit()) || contains(lexicon::NUMBER_WORDS, w) {
            return Lex::Fixed(CD);
        }
        if w == "'s" || w == "’s" {
            return Lex::Fixed(POS);
        }
        if w == "'t" || w == "’t" {
            return Lex::Fixed(RB);
        }
        match w {
            "to" => return Lex::Fixed(TO),
            "there" => return Lex::Fixed(EX),
            "that" => return Lex::Fixed(IN),
            "which" | "whatever" | "whichever" => return Lex::Fixed(WDT),
            "who" | "whom" | "what" => return Lex::Fixed(WP),
            "whose" => return Lex::Fixed(WPS),
            "when" | "where" | "how" | "why" | "whenever" | "wherever" => return Lex::Fixed(WRB),
            "is" | "does" | "has" => return Lex::Fixed(VBZ),
            "are" | "am" | "do" | "have" => return Lex::Fixed(VBP),
            "was" | "were" | "did" | "had" => return Lex::Fixed(VBD),
            "be" => return Lex::Fixed(VB),
            "been" | "done" => return Lex::Fixed(VBN),
            "being" | "having" => return Lex::Fixed(VBG),
            "more" | "less" | "fewer" => return Lex::Fixed(RBR),
            "most" | "least" => return Lex::Fixed(RBS),
            "such" | "half" => return Lex::Fixed(PDT),
            _ => {}
        }
        if contains(lexicon::MODALS, w) {
            return Lex::Fixed(MD);
        }
        if contains(lexicon::DETERMINERS, w) {
            return Lex::Fixed(DT);
        }
        if contains(lexicon::CONJUNCTIONS, w) {
            return Lex::Fixed(CC);
        }
        if contains(lexicon::PREPOSITIONS, w) {
            return Lex::Fixed(IN);
        }
        if contains(lexicon::POSSESSIVE_PRONOUNS, w) {
            return Lex::Fixed(PRPS);
        }
        if contains(lexicon::PERSONAL_PRONOUNS, w) {
            return Lex::Fixed(PRP);
        }
        if contains(lexicon::IRREGULAR_COMPARATIVES, w) {
            return Lex::Fixed(JJR);
        }
        if contains(lexicon::IRREGULAR_SUPERLATIVES, w) {
            return Lex::Fixed(JJS);
        }
        if contains(lexicon::ADVERBS, w) {
            return Lex::Fixed(RB);
        }
        if contains(lexicon::ADJECTIVES, w) {
            return Lex::Fixed(JJ);
        }
        if contains(lexicon::VERBS, w) {
            return Lex::Verb {
                noun: contains(lexicon::NOUN_VERBS, w),
            };
        }
        if let Some(stem) = strip_s(w) {
            if contains(lexicon::VERBS, &stem) {
                return Lex::VerbS {
                    noun: contains(lexicon::NOUN_VERBS, &stem),
                };
            }
        }
        if w.len() > 4 && w.ends_with("ed") {
            return Lex::VerbEd;
        }
        if let Some(t) = comparative(w) {
            return Lex::Fixed(t);
        }
        // capitalised mid-sentence word
        if !sentence_initial && surface.chars().next().is_some_and(|c| c.is_uppercase()) {
            return Lex::Fixed(
                if surface.len() > 3 && surface.ends_with('s') && !surface.ends_with("ss") {
                    NNPS
                } else {
                    NNP
                },
            );
        }
        Lex::Fixed(suffix_tag(w))
    }
}

fn resolve_context_free(lex: Lex) -> Tag {
    match lex {
        Lex::Fixed(t) => t,
        Lex::Verb { noun: true } => Tag::NN,
        Lex::Verb { noun: false } => Tag::VB,
        Lex::VerbS { noun: true } => Tag::NNS,
        Lex::VerbS { noun: false } => Tag::VBZ,
        Lex::VerbEd => Tag::VBN,
    }
}

fn punct_tag(s: &str) -> Option<Tag> {
    use Tag::*;
    Some(match s {
        "." | "!" | "?" => Period,
        "," => Comma,
        ":" | ";" | "-" | "--" | "..." | "–" | "—" => Colon,
        "(" | "[" | "{" => LeftParen,
        ")" | "]" | "}" => RightParen,
        "\"" | "“" | "`" | "``" => OpenQuote,
        "”" | "''" | "'" | "’" => CloseQuote,
        "#" => Hash,
        "$" | "€" | "£" => Dollar,
        s if s.chars().count() == 1 && !s.chars().next().unwrap().is_alphanumeric() => SYM,
        _ => return None,
    })
}

fn strip_s(w: &str) -> Option<String> {
    if w.len() < 4 || !w.ends_with('s') || w.ends_with("ss") {
        return None;
    }
    if let Some(stem) = w.strip_suffix("ies") {
        return Some(format!("{stem}y"));
    }
    if let Some(stem) = w.strip_suffix("es") {
        if stem.ends_with("ss") || stem.ends_with("sh") || stem.ends_with("ch") || stem.ends_with('x') {
            return Some(stem.to_string());
        }
    }
    Some(w[..w.len() - 1].to_string())
}

fn comparative(w: &str) -> Option<Tag> {
    let stems = |stem: &str| -> bool {
        let mut cands = vec![stem.to_string(), format!("{stem}e")];
        if let Some(s) = stem.strip_suffix('i') {
            cands.push(format!("{s}y"));
        }
        let b = stem.as_bytes();
        if b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] {
            cands.push(stem[..stem.len() - 1].to_string());
        }
        cands.iter().any(|c| contains(lexicon::ADJECTIVES, c))
    };
    if let Some(stem) = w.strip_suffix("est") {
        if stems(stem) {
            return Some(Tag::JJS);
        }
    }
    if let Some(stem) = w.strip_suffix("er") {
        if stems(stem) {
            return Some(Tag::JJR);
        }
    }
    None
}

fn suffix_tag(w: &str) -> Tag {
    use Tag::*;
    if w.len() > 3 && w.ends_with("ly") {
        return RB;
    }
    if w.len() > 4 && w.ends_with("ing") {
        return VBG;
    }
    const ADJ_SUFFIXES: &[&str] = &[
        "able", "ible", "al", "ous", "ive", "ful", "less", "ic", "ent", "ant", "ary", "ile", "ish",
    ];
    const NOUN_SUFFIXES: &[&str] = &["tion", "sion", "ment", "ness", "ity", "ance", "ence", "ship", "ism"];
    if NOUN_SUFFIXES.iter().any(|s| w.ends_with(s)) {
        return NN;
    }
    if w.len() > 4 && ADJ_SUFFIXES.iter().any(|s| w.ends_with(s)) {
        return JJ;
    }
    if w.len() > 3 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is") {
        return NNS;
    }
    NN
}

impl Tagger for LexiconTagger {
    fn tag(&self, surfaces: &[String]) -> Vec<Token> {
        let lex: Vec<Lex> = surfaces
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let initial = i == 0 || matches!(surfaces[i - 1].as_str(), "." | "!" | "?" | ":" | "\"" | "(");
                self.lexical(s, initial)
            })
            .collect();
        let mut tags: Vec<Tag> = lex.iter().map(|&l| resolve_context_free(l)).collect();

        // Left-to-right contextual repair; each decision sees repaired tags on
        // its left.
        for i in 0..tags.len() {
            let prev = prev_non_adverb(&tags, i);
            let prev_tag = prev.map(|p| tags[p]);
            let next_tag = tags.get(i + 1).copied();
            let lower = surfaces[i].to_lowercase();
            tags[i] = match lex[i] {
                Lex::Verb { noun } => match prev_tag {
                    Some(Tag::MD | Tag::TO) => Tag::VB,
                    Some(Tag::CC) => {
                        // coordinated with a verb: "view and edit"
                        let before = prev.and_then(|p| prev_non_adverb(&tags, p));
                        match before.map(|j| tags[j]) {
                            Some(t @ (Tag::VB | Tag::VBP)) => t,
                            _ if noun => Tag::NN,
                            _ => Tag::VB,
                        }
                    }
                    Some(t)
                        if t.is_adjective()
                            || matches!(t, Tag::DT | Tag::PRPS | Tag::POS | Tag::IN | Tag::CD | Tag::PDT) =>
                    {
                        if noun {
                            Tag::NN
                        } else {
                            Tag::VB
                        }
                    }
                    Some(Tag::PRP | Tag::NNS | Tag::NNPS | Tag::NNP | Tag::WDT | Tag::WP) => Tag::VBP,
                    Some(Tag::NN) => {
                        if noun {
                            Tag::NN
                        } else {
                            Tag::VBP
                        }
                    }
                    None => {
                        if noun && next_tag.is_some_and(|n| n.is_verb() || n == Tag::MD) {
                            Tag::NN
                        } else {
                            Tag::VB
                        }
                    }
                    _ if noun => Tag::NN,
                    _ => Tag::VB,
                },
                Lex::VerbS { noun } => match prev_tag {
                    Some(t)
                        if matches!(t, Tag::DT | Tag::PRPS | Tag::POS | Tag::CD | Tag::IN | Tag::PDT)
                            || t.is_adjective() =>
                    {
                        if noun {
                            Tag::NNS
                        } else {
                            Tag::VBZ
                        }
                    }
                    Some(Tag::NN | Tag::NNP | Tag::WDT | Tag::PRP) => Tag::VBZ,
                    _ if noun => Tag::NNS,
                    _ => Tag::VBZ,
                },
                Lex::VerbEd => match prev_tag {
                    Some(t) if t.is_verb() => Tag::VBN,
                    Some(Tag::NN | Tag::NNS | Tag::NNP | Tag::NNPS | Tag::PRP)
                        if !next_tag.is_some_and(|n| n.is_noun() || n == Tag::IN || n == Tag::TO) =>
                    {
                        Tag::VBD
                    }
                    _ => Tag::VBN,
                },
                Lex::Fixed(Tag::IN) if lower == "that" => match (prev_tag, next_tag) {
                    (Some(p), _) if p.is_noun() => Tag::WDT,
                    (_, Some(n)) if n.is_noun() => Tag::DT,
                    _ => Tag::IN,
                },
                Lex::Fixed(Tag::EX) => {
                    if next_tag.is_some_and(|n| n.is_verb() || n == Tag::MD) {
                        Tag::EX
                    } else {
                        Tag::RB
                    }
                }
                Lex::Fixed(Tag::RBR) => {
                    if next_tag.is_some_and(|n| n.is_noun()) {
                        Tag::JJR
                    } else {
                        Tag::RBR
                    }
                }
                Lex::Fixed(Tag::RBS) => {
                    if next_tag.is_some_and(|n| n.is_noun()) {
                        Tag::JJS
                    } else {
                        Tag::RBS
                    }
                }
                Lex::Fixed(Tag::VBG)
                    if matches!(prev_tag, Some(Tag::DT | Tag::PRPS)) && next_tag.is_some_and(|n| !n.is_noun()) =>
                {
                    Tag::NN
                }
                Lex::Fixed(t) => t,
            };
        }
        surfaces
            .iter()
            .zip(tags)
            .map(|(s, pos)| Token::new(s.clone(), pos))
            .collect()
    }
}

fn prev_non_adverb(tags: &[Tag], i: usize) -> Option<usize> {
    (0..i).rev().find(|&j| !matches!(tags[j], Tag::RB))
}
