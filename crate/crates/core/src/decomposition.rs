//! k-decompositions of a word, restrictors and depths.
//!
//! The 0-dividers of `w` are λ followed by the simple letters of `w`. The
//! k-decomposition refines every (k-1)-block: a letter that is simple in
//! the block and does not occur in `w` to the left of the block becomes a
//! new k-divider. The restrictor `h_i^k(w, x)` is the right-most k-divider
//! strictly before the i-th occurrence of `x` (λ if there is none), and the
//! depth of a multiple letter is the least k with `h_1^{k-1} ≠ h_2^{k-1}`.
//!
//! [`WordProfile`] computes every level up to stabilization once and answers
//! all queries from that table; the free functions build a profile per call.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// A k-divider or restrictor value; `None` is the empty divider λ.
pub type Divider = Option<Letter>;

/// Depth of a letter in a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Depth::Finite(d) if d <= k)
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

/// Alternating dividers and blocks of a word for a fixed level `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KDecomposition {
    k: usize,
    source: Word,
    /// Positions (0-based) of the non-λ dividers, increasing.
    divider_positions: Vec<usize>,
}

impl KDecomposition {
    pub fn level(&self) -> usize {
        self.k
    }

    pub fn source(&self) -> &Word {
        &self.source
    }

    pub fn divider_positions(&self) -> &[usize] {
        &self.divider_positions
    }

    /// Non-λ dividers in order.
    pub fn dividers(&self) -> Vec<Letter> {
        self.divider_positions.iter().map(|&p| self.source[p]).collect()
    }

    /// `(divider, block)` pairs; the first divider is always λ.
    pub fn parts(&self) -> Vec<(Divider, Word)> {
        let n = self.source.len();
        let mut parts = Vec::with_capacity(self.divider_positions.len() + 1);
        let mut bounds = self.divider_positions.iter().copied().peekable();
        let first_end = bounds.peek().copied().unwrap_or(n);
        parts.push((None, self.source.factor(0, first_end)));
        while let Some(p) = bounds.next() {
            let end = bounds.peek().copied().unwrap_or(n);
            parts.push((Some(self.source[p]), self.source.factor(p + 1, end)));
        }
        parts
    }

    pub fn blocks(&self) -> Vec<Word> {
        self.parts().into_iter().map(|(_, b)| b).collect()
    }

    /// Concatenation of all parts; always equals the source word.
    pub fn reassemble(&self) -> Word {
        self.parts()
            .into_iter()
            .fold(Word::empty(), |acc, (d, b)| {
                let acc = match d {
                    Some(l) => acc.concat(&Word::letter(l)),
                    None => acc,
                };
                acc.concat(&b)
            })
    }
}

/// Renders as `λ·[xyx]·z·[y]·t·[szxs]` with λ for empty blocks.
impl fmt::Display for KDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (d, b)) in self.parts().iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            match d {
                Some(l) => write!(f, "{l}")?,
                None => f.write_str("λ")?,
            }
            if b.is_empty() {
                f.write_str("·[λ]")?;
            } else {
                write!(f, "·[{b}]")?;
            }
        }
        Ok(())
    }
}

/// All decomposition levels of one word, computed up to stabilization.
#[derive(Clone, Debug)]
pub struct WordProfile {
    word: Word,
    levels: Vec<Vec<usize>>,
    positions: BTreeMap<Letter, Vec<usize>>,
    order: Vec<Letter>,
    depths: BTreeMap<Letter, Depth>,
}

impl WordProfile {
    pub fn new(word: &Word) -> Self {
        let mut positions: BTreeMap<Letter, Vec<usize>> = BTreeMap::new();
        for (p, &l) in word.iter().enumerate() {
            positions.entry(l).or_default().push(p);
        }
        let first: BTreeMap<Letter, usize> =
            positions.iter().map(|(&l, ps)| (l, ps[0])).collect();

        // level -1 has no dividers: the whole word is one block
        let mut levels = vec![refine(word, &first, &[])];
        loop {
            let next = refine(word, &first, levels.last().unwrap());
            if &next == levels.last().unwrap() {
                break;
            }
            levels.push(next);
        }

        let mut profile = WordProfile {
            word: word.clone(),
            levels,
            positions,
            order: word.first_occurrence_order(),
            depths: BTreeMap::new(),
        };
        let depths = profile
            .positions
            .iter()
            .map(|(&l, ps)| (l, profile.compute_depth(ps)))
            .collect();
        profile.depths = depths;
        profile
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Least k whose decomposition equals every later one.
    pub fn stabilization_level(&self) -> usize {
        self.levels.len() - 1
    }

    fn level(&self, k: usize) -> &[usize] {
        &self.levels[k.min(self.levels.len() - 1)]
    }

    pub fn decomposition(&self, k: usize) -> KDecomposition {
        KDecomposition {
            k,
            source: self.word.clone(),
            divider_positions: self.level(k).to_vec(),
        }
    }

    pub fn dividers(&self, k: usize) -> Vec<Letter> {
        self.level(k).iter().map(|&p| self.word[p]).collect()
    }

    pub fn occ(&self, x: Letter) -> usize {
        self.positions.get(&x).map_or(0, Vec::len)
    }

    pub fn contains(&self, x: Letter) -> bool {
        self.positions.contains_key(&x)
    }

    /// Letters of the content in order of first occurrence.
    pub fn letters_in_order(&self) -> &[Letter] {
        &self.order
    }

    pub fn positions(&self) -> &BTreeMap<Letter, Vec<usize>> {
        &self.positions
    }

    pub fn is_simple(&self, x: Letter) -> bool {
        self.occ(x) == 1
    }

    /// `h_i^k(w, x)`; errors if `x` has fewer than `i` occurrences.
    pub fn restrictor(&self, x: Letter, i: usize, k: usize) -> Result<Divider> {
        let ps = self.positions.get(&x).ok_or(Error::AbsentLetter(x))?;
        if i == 0 || i > ps.len() {
            return Err(Error::OccurrenceOutOfRange {
                letter: x,
                index: i,
                occurrences: ps.len(),
            });
        }
        Ok(self.restrictor_at(ps[i - 1], k))
    }

    /// `h_i^k` if the i-th occurrence exists.
    pub fn try_restrictor(&self, x: Letter, i: usize, k: usize) -> Option<Divider> {
        let p = *self.positions.get(&x)?.get(i.checked_sub(1)?)?;
        Some(self.restrictor_at(p, k))
    }

    fn restrictor_at(&self, pos: usize, k: usize) -> Divider {
        let level = self.level(k);
        // strict precedence: a divider never restricts itself
        let idx = level.partition_point(|&d| d < pos);
        idx.checked_sub(1).map(|j| self.word[level[j]])
    }

    pub fn depth(&self, x: Letter) -> Result<Depth> {
        self.depths.get(&x).copied().ok_or(Error::AbsentLetter(x))
    }

    pub fn depths(&self) -> &BTreeMap<Letter, Depth> {
        &self.depths
    }

    fn compute_depth(&self, ps: &[usize]) -> Depth {
        if ps.len() == 1 {
            return Depth::Finite(0);
        }
        (1..=self.levels.len())
            .find(|&k| self.restrictor_at(ps[0], k - 1) != self.restrictor_at(ps[1], k - 1))
            .map_or(Depth::Infinite, Depth::Finite)
    }
}

/// One refinement step: inside every block bounded by `dividers`, mark the
/// letters simple in the block whose first occurrence in `w` lies in the block.
fn refine(word: &Word, first: &BTreeMap<Letter, usize>, dividers: &[usize]) -> Vec<usize> {
    let n = word.len();
    let mut out = Vec::with_capacity(dividers.len());
    let mut start = 0;
    let mut bounds = dividers.iter().copied().chain(std::iter::once(n));
    loop {
        let end = bounds.next().unwrap();
        let mut counts: BTreeMap<Letter, usize> = BTreeMap::new();
        for &l in &word.letters()[start..end] {
            *counts.entry(l).or_insert(0) += 1;
        }
        for p in start..end {
            let l = word[p];
            if counts[&l] == 1 && first[&l] == p {
                out.push(p);
            }
        }
        if end == n {
            break;
        }
        out.push(end);
        start = end + 1;
    }
    out
}

pub fn zero_decompose(w: &Word) -> KDecomposition {
    k_decompose(w, 0)
}

pub fn k_decompose(w: &Word, k: usize) -> KDecomposition {
    WordProfile::new(w).decomposition(k)
}

pub fn stabilization_level(w: &Word) -> usize {
    WordProfile::new(w).stabilization_level()
}

pub fn k_dividers(w: &Word, k: usize) -> Vec<Letter> {
    WordProfile::new(w).dividers(k)
}

pub fn restrictor(w: &Word, x: Letter, i: usize, k: usize) -> Result<Divider> {
    WordProfile::new(w).restrictor(x, i, k)
}

pub fn depth(w: &Word, x: Letter) -> Result<Depth> {
    WordProfile::new(w).depth(x)
}

/// Same k-dividers appearing in the same order.
pub fn k_equivalent(u: &Word, v: &Word, k: usize) -> bool {
    WordProfile::new(u).dividers(k) == WordProfile::new(v).dividers(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn l(c: char) -> Letter {
        Letter::plain(c)
    }

    #[test]
    fn example_decompositions() {
        let word = w("xyxzytszxs");
        assert_eq!(zero_decompose(&word).to_string(), "λ·[xyxzy]·t·[szxs]");
        assert_eq!(k_decompose(&word, 1).to_string(), "λ·[xyx]·z·[y]·t·[szxs]");
        assert_eq!(k_decompose(&word, 2).to_string(), "λ·[x]·y·[x]·z·[y]·t·[szxs]");
        for k in 3..7 {
            assert_eq!(
                k_decompose(&word, k).to_string(),
                "λ·[λ]·x·[λ]·y·[x]·z·[y]·t·[szxs]"
            );
        }
        assert_eq!(stabilization_level(&word), 3);
    }

    #[test]
    fn degenerate_words() {
        let e = Word::empty();
        assert_eq!(zero_decompose(&e).to_string(), "λ·[λ]");
        assert_eq!(stabilization_level(&e), 0);
        assert!(k_dividers(&e, 5).is_empty());
        assert_eq!(zero_decompose(&w("xy")).to_string(), "λ·[λ]·x·[λ]·y·[λ]");
        assert_eq!(stabilization_level(&w("xyz")), 0);
    }

    #[test]
    fn dividers_of_example() {
        let word = w("xyxzytszxs");
        assert_eq!(k_dividers(&word, 0), vec![l('t')]);
        assert_eq!(k_dividers(&word, 2), vec![l('y'), l('z'), l('t')]);
    }

    #[test]
    fn restrictors_of_example() {
        let word = w("xyxzytszxs");
        assert_eq!(restrictor(&word, l('x'), 2, 2).unwrap(), Some(l('y')));
        assert_eq!(restrictor(&word, l('z'), 2, 1).unwrap(), Some(l('t')));
        assert_eq!(restrictor(&word, l('s'), 1, 3).unwrap(), Some(l('t')));
        // t is a 0-divider but does not restrict itself
        assert_eq!(restrictor(&word, l('t'), 1, 0).unwrap(), None);
        assert!(restrictor(&word, l('t'), 2, 0).is_err());
        assert!(matches!(
            restrictor(&word, l('q'), 1, 0),
            Err(Error::AbsentLetter(_))
        ));
    }

    #[test]
    fn depths_of_example() {
        let word = w("xyxzytszxs");
        let d = |c| depth(&word, l(c)).unwrap();
        assert_eq!(d('x'), Depth::Finite(3));
        assert_eq!(d('y'), Depth::Finite(2));
        assert_eq!(d('z'), Depth::Finite(1));
        assert_eq!(d('s'), Depth::Infinite);
        assert_eq!(d('t'), Depth::Finite(0));
        assert!(depth(&word, l('q')).is_err());
        assert!(Depth::Finite(100) < Depth::Infinite);
    }

    #[test]
    fn k_equivalence() {
        let word = w("xyxzytszxs");
        assert!(k_equivalent(&word, &word, 4));
        let u = w("x1 y1 x0 x1 y1");
        let v = w("y1 x1 x0 x1 y1");
        assert_eq!(k_dividers(&u, 0), vec![Letter::indexed('x', 0)]);
        assert!(k_equivalent(&u, &v, 0));
        assert!(!k_equivalent(&u, &v, 1));
    }

    #[test]
    fn reassembly() {
        let word = w("xyxzytszxs");
        for k in 0..5 {
            assert_eq!(k_decompose(&word, k).reassemble(), word);
        }
    }
}
