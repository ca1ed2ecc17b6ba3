//! Letters, words of the free monoid and identities between them.
//!
//! Text syntax (ASCII, whitespace ignored):
//!
//! ```text
//! word   := "1" | term+
//! term   := letter ("^" posint)?
//! letter := [a-z] digits?
//! ```
//!
//! `"x y1^2 z"` is the word `x·y1·y1·z` and `"1"` is the empty word.
//! An identity is written `"<word> = <word>"`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use crate::error::ParseError;

/// A letter of the alphabet: a lowercase base symbol with an optional index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    base: u8,
    index: Option<u32>,
}

impl Letter {
    /// Panics if `base` is not an ASCII lowercase letter.
    pub fn new(base: char, index: Option<u32>) -> Self {
        assert!(base.is_ascii_lowercase(), "letter base must be in [a-z], got {base:?}");
        Letter { base: base as u8, index }
    }

    pub fn plain(base: char) -> Self {
        Letter::new(base, None)
    }

    pub fn indexed(base: char, index: u32) -> Self {
        Letter::new(base, Some(index))
    }

    pub fn base(&self) -> char {
        self.base as char
    }

    pub fn index(&self) -> Option<u32> {
        self.index
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}{}", self.base as char, i),
            None => write!(f, "{}", self.base as char),
        }
    }
}

/// A finite word over [`Letter`]s; the empty word is λ.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_word(text)
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

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Factor `w[start..end]` as a fresh word.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    /// Occurrence count of every letter of the content.
    pub fn occurrences(&self) -> BTreeMap<Letter, usize> {
        let mut m = BTreeMap::new();
        for &l in &self.0 {
            *m.entry(l).or_insert(0) += 1;
        }
        m
    }

    pub fn occ(&self, x: Letter) -> usize {
        self.0.iter().filter(|&&l| l == x).count()
    }

    pub fn simple_letters(&self) -> BTreeSet<Letter> {
        self.occurrences()
            .into_iter()
            .filter(|&(_, n)| n == 1)
            .map(|(l, _)| l)
            .collect()
    }

    pub fn multiple_letters(&self) -> BTreeSet<Letter> {
        self.occurrences()
            .into_iter()
            .filter(|&(_, n)| n >= 2)
            .map(|(l, _)| l)
            .collect()
    }

    /// 0-based position of the `i`-th (1-based) occurrence of `x`.
    pub fn position_of(&self, x: Letter, i: usize) -> Option<usize> {
        if i == 0 {
            return None;
        }
        self.0
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == x)
            .nth(i - 1)
            .map(|(p, _)| p)
    }

    /// Length of the shortest prefix containing `i` occurrences of `x`.
    pub fn prefix_len(&self, x: Letter, i: usize) -> Result<usize, crate::Error> {
        self.position_of(x, i)
            .map(|p| p + 1)
            .ok_or(crate::Error::OccurrenceOutOfRange {
                letter: x,
                index: i,
                occurrences: self.occ(x),
            })
    }

    pub fn delete_letters(&self, xs: &BTreeSet<Letter>) -> Word {
        Word(self.0.iter().copied().filter(|l| !xs.contains(l)).collect())
    }

    pub fn retain_letters(&self, xs: &BTreeSet<Letter>) -> Word {
        Word(self.0.iter().copied().filter(|l| xs.contains(l)).collect())
    }

    /// First occurrence of each letter, in order.
    pub fn initial_part(&self) -> Word {
        let mut seen = BTreeSet::new();
        Word(self.0.iter().copied().filter(|&l| seen.insert(l)).collect())
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Index of the first occurrence of every letter, in order of appearance.
    pub fn first_occurrence_order(&self) -> Vec<Letter> {
        self.initial_part().0
    }

    /// Rendering without exponents, e.g. `xxy` (λ for the empty word).
    pub fn plain(&self) -> String {
        if self.is_empty() {
            return "λ".to_string();
        }
        self.0.iter().map(|l| l.to_string()).collect()
    }
}

impl Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Canonical text: runs of a letter collapse to `l^n`, `1` for λ.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            write!(f, "{l}")?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// An ordered pair of words `lhs ≈ rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Identity { lhs, rhs }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        text.parse()
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn swapped(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }

    pub fn reversed(&self) -> Identity {
        Identity::new(self.lhs.reverse(), self.rhs.reverse())
    }

    pub fn content(&self) -> BTreeSet<Letter> {
        let mut c = self.lhs.content();
        c.extend(self.rhs.content());
        c
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({self})")
    }
}

impl FromStr for Identity {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.splitn(2, '=');
        let lhs = parts.next().unwrap_or_default();
        let rhs = parts.next().ok_or(ParseError::MissingEquals)?;
        if rhs.contains('=') {
            return Err(ParseError::Unexpected {
                position: lhs.len() + 1 + rhs.find('=').unwrap_or(0),
                found: '=',
            });
        }
        let lhs_word = parse_word(lhs)?;
        let rhs_word = parse_word(rhs).map_err(|e| e.shifted(lhs.len() + 1))?;
        Ok(Identity::new(lhs_word, rhs_word))
    }
}

fn parse_word(text: &str) -> Result<Word, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let skip_ws = |mut i: usize| {
        while i < chars.len() && chars[i].1.is_whitespace() {
            i += 1;
        }
        i
    };
    match text.trim() {
        "" => return Err(ParseError::Empty),
        "1" => return Ok(Word::empty()),
        _ => {}
    }
    let mut letters = Vec::new();
    let mut i = skip_ws(0);
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !c.is_ascii_lowercase() {
            return Err(ParseError::Unexpected { position: pos, found: c });
        }
        i += 1;
        let (index, next) = read_number(&chars, i);
        i = skip_ws(next);
        let letter = Letter::new(c, index.map(|(n, _)| n));
        let mut exponent = 1;
        if i < chars.len() && chars[i].1 == '^' {
            let caret = chars[i].0;
            i = skip_ws(i + 1);
            match read_number(&chars, i) {
                (Some((0, p)), _) => return Err(ParseError::ZeroExponent { position: p }),
                (Some((n, _)), next) => {
                    exponent = n;
                    i = skip_ws(next);
                }
                (None, _) => return Err(ParseError::MissingExponent { position: caret }),
            }
        }
        letters.extend(std::iter::repeat_n(letter, exponent as usize));
    }
    Ok(Word(letters))
}

fn read_number(chars: &[(usize, char)], mut i: usize) -> (Option<(u32, usize)>, usize) {
    let start = i;
    let mut value: u32 = 0;
    while i < chars.len() && chars[i].1.is_ascii_digit() {
        value = value
            .saturating_mul(10)
            .saturating_add(chars[i].1.to_digit(10).unwrap());
        i += 1;
    }
    if i == start {
        (None, i)
    } else {
        (Some((value, chars[start].0)), i)
    }
}

/// Shorthand used throughout tests and constructors. Panics on bad syntax.
pub fn w(text: &str) -> Word {
    Word::parse(text).unwrap_or_else(|e| panic!("bad word {text:?}: {e}"))
}

/// Shorthand for an identity. Panics on bad syntax.
pub fn id(text: &str) -> Identity {
    Identity::parse(text).unwrap_or_else(|e| panic!("bad identity {text:?}: {e}"))
}
