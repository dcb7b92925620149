use std::sync::OnceLock;

use regex::Regex;

use crate::error::{Error, Result};

fn token_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(concat!(
            r"(?i:e\.g\.|i\.e\.|etc\.|vs\.|approx\.)",
            // numerics: 24/7, 99.9%, 10:00, 1,000, 3D
            r"|\d[\p{L}\p{N}]*(?:[.,:/\-×*]\d[\p{L}\p{N}]*)*%?",
            // words, keeping internal hyphen/slash/ampersand/dot joins
            r"|\p{L}[\p{L}\p{N}_]*(?:[-/&_.@][\p{L}\p{N}]+)*",
            r"|['’](?:s|t|re|ve|ll|d|m)\b",
            r"|\S",
        ))
        .expect("token regex")
    })
}

/// Split requirement text into surface tokens.
///
/// Punctuation becomes separate tokens; slash- or dash-joined numerics such as
/// `24/7` stay whole. No characters other than whitespace are dropped, so
/// concatenating the surfaces gives back the text minus its whitespace.
pub fn tokenize(text: &str) -> Result<Vec<String>> {
    if text.trim().is_empty() {
        return Err(Error::Empty("cannot tokenize empty text".into()));
    }
    Ok(token_regex().find_iter(text).map(|m| m.as_str().to_string()).collect())
}

/// Join surfaces with single spaces.
pub fn detokenize<S: AsRef<str>>(surfaces: &[S]) -> String {
    let mut out = String::new();
    for (i, s) in surfaces.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(s.as_ref());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splits_trailing_punctuation() {
        assert_eq!(
            tokenize("The product shall respond.").unwrap(),
            ["The", "product", "shall", "respond", "."]
        );
    }

    #[test]
    fn keeps_slash_joined_numerics() {
        assert_eq!(tokenize("24/7").unwrap(), ["24/7"]);
        assert_eq!(
            tokenize("up 24/7/365, always").unwrap(),
            ["up", "24/7/365", ",", "always"]
        );
        assert_eq!(tokenize("99.9% of the time").unwrap(), ["99.9%", "of", "the", "time"]);
        assert_eq!(tokenize("at 10:00 PM").unwrap(), ["at", "10:00", "PM"]);
    }

    #[test]
    fn clitics_and_abbreviations() {
        assert_eq!(tokenize("the user's data").unwrap(), ["the", "user", "'s", "data"]);
        assert_eq!(tokenize("files, e.g. logs").unwrap(), ["files", ",", "e.g.", "logs"]);
        assert_eq!(
            tokenize("look-and-feel (L&F)").unwrap(),
            ["look-and-feel", "(", "L&F", ")"]
        );
    }

    #[test]
    fn empty_text_is_an_error() {
        assert!(tokenize("").is_err());
        assert!(tokenize("  \n").is_err());
    }

    proptest! {
        #[test]
        fn surfaces_cover_all_non_whitespace(text in "[ a-zA-Z0-9.,;:/%()'\"-]{1,60}") {
            prop_assume!(!text.trim().is_empty());
            let toks = tokenize(&text).unwrap();
            let joined: String = toks.concat();
            let stripped: String = text.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(joined, stripped);
            prop_assert!(toks.iter().all(|t| !t.is_empty()));
            // re-tokenizing the detokenized form is stable
            prop_assert_eq!(tokenize(&detokenize(&toks)).unwrap(), toks);
        }
    }
}
