use std::fmt::Write as _;

use crate::bitcore::BitWord;
use crate::error::{Error, Result};

/// An ordered list of equal-length words. Duplicates are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    word_len: usize,
    words: Vec<BitWord>,
}

impl Code {
    pub fn new(words: Vec<BitWord>) -> Result<Self> {
        let word_len = words.first().map_or(0, BitWord::len);
        Self::with_word_len(word_len, words)
    }

    /// Like [`Code::new`] but fixes the word length, which matters for empty codes.
    pub fn with_word_len(word_len: usize, words: Vec<BitWord>) -> Result<Self> {
        if let Some(bad) = words.iter().find(|w| w.len() != word_len) {
            return Err(Error::LengthMismatch { left: word_len, right: bad.len() });
        }
        Ok(Code { word_len, words })
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[BitWord] {
        &self.words
    }

    pub fn into_words(self) -> Vec<BitWord> {
        self.words
    }

    pub fn get(&self, i: usize) -> &BitWord {
        &self.words[i]
    }

    /// Parses one 0/1 string per line. Blank lines and lines starting with `#`
    /// are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::parse)
            .collect::<Result<Vec<BitWord>>>()?;
        Self::new(words)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in &self.words {
            writeln!(out, "{w}").expect("writing to a String");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_skips_comments() {
        let text = "# three words\n000\n\n110\n# trailing\n011\n";
        let code = Code::parse_text(text).unwrap();
        assert_eq!(code.size(), 3);
        assert_eq!(code.word_len(), 3);
        assert_eq!(code.to_text(), "000\n110\n011\n");
    }

    #[test]
    fn rejects_mixed_lengths() {
        assert!(Code::parse_text("00\n011\n").is_err());
    }
}
