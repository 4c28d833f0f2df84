//! Words over the alphabet `{1, …, d}` and their abelianizations.
//!
//! Letters are 1-based `u8` values to keep word storage compact; a word never
//! stores the alphabet size, so operations that need it take `d` explicitly.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A letter of the alphabet `{1, …, d}`, stored 1-based.
pub type Letter = u8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {0} outside alphabet 1..={1}")]
    LetterOutOfRange(u32, u8),
    #[error("empty word where a nonempty one is required")]
    Empty,
    #[error("cannot parse {0:?} as a word")]
    Unparsable(String),
}

/// A finite word over `{1, …, d}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Single-letter word.
    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    /// Checks that every letter lies in `1..=d`.
    pub fn check_alphabet(&self, d: u8) -> Result<(), WordError> {
        for &l in &self.0 {
            if l == 0 || l > d {
                return Err(WordError::LetterOutOfRange(l as u32, d));
            }
        }
        Ok(())
    }

    /// Parses `"132"` (digits, d ≤ 9) or `"1 3 2"` (space-separated integers).
    pub fn parse(s: &str) -> Result<Word, WordError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        if s.contains(|c: char| c.is_whitespace()) {
            let mut v = Vec::new();
            for tok in s.split_whitespace() {
                let n: u32 = tok
                    .parse()
                    .map_err(|_| WordError::Unparsable(s.to_string()))?;
                if n == 0 || n > u8::MAX as u32 {
                    return Err(WordError::LetterOutOfRange(n, u8::MAX));
                }
                v.push(n as Letter);
            }
            Ok(Word(v))
        } else {
            let mut v = Vec::new();
            for c in s.chars() {
                let n = c
                    .to_digit(10)
                    .ok_or_else(|| WordError::Unparsable(s.to_string()))?;
                if n == 0 {
                    return Err(WordError::LetterOutOfRange(0, 9));
                }
                v.push(n as Letter);
            }
            Ok(Word(v))
        }
    }
}

impl fmt::Display for Word {
    /// Digit string for letters ≤ 9, space-separated integers otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l <= 9) {
            for &l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let strs: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", strs.join(" "))
        }
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word(s.to_vec())
    }
}

/// Letter-count vector `l(w)`; component `i-1` counts occurrences of letter `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianVector(pub Vec<i64>);

impl AbelianVector {
    pub fn zero(d: u8) -> Self {
        AbelianVector(vec![0; d as usize])
    }

    pub fn dim(&self) -> u8 {
        self.0.len() as u8
    }

    pub fn unit(d: u8, letter: Letter) -> Self {
        let mut v = vec![0; d as usize];
        v[(letter - 1) as usize] = 1;
        AbelianVector(v)
    }

    pub fn count(&self, letter: Letter) -> i64 {
        self.0[(letter - 1) as usize]
    }

    /// Total letter count, i.e. the length of any word with this abelianization.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add_letter(&mut self, l: Letter) {
        self.0[(l - 1) as usize] += 1;
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// Abelianization `l(w)` of a word over `{1, …, d}`.
///
/// The empty word maps to the zero vector.
pub fn abelianize(w: &Word, d: u8) -> AbelianVector {
    let mut v = AbelianVector::zero(d);
    for &l in w.letters() {
        v.add_letter(l);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianize_counts_letters() {
        let w = Word::parse("13").unwrap();
        assert_eq!(abelianize(&w, 3), AbelianVector(vec![1, 0, 1]));
    }

    #[test]
    fn abelianize_empty_word_is_zero() {
        assert_eq!(abelianize(&Word::empty(), 3), AbelianVector(vec![0, 0, 0]));
    }

    #[test]
    fn abelianize_long_word() {
        let w = Word::parse("132121312").unwrap();
        assert_eq!(abelianize(&w, 3), AbelianVector(vec![4, 3, 2]));
    }

    #[test]
    fn display_round_trips() {
        let w = Word::parse("132").unwrap();
        assert_eq!(w.to_string(), "132");
        assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
        let wide = Word::new(vec![3, 12, 1]);
        assert_eq!(wide.to_string(), "3 12 1");
        assert_eq!(Word::parse(&wide.to_string()).unwrap(), wide);
    }

    #[test]
    fn alphabet_check_rejects_out_of_range() {
        let w = Word::parse("14").unwrap();
        assert!(w.check_alphabet(3).is_err());
        assert!(w.check_alphabet(4).is_ok());
    }
}
