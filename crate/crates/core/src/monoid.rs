//! Finite monoids given by multiplication tables.
//!
//! Rees quotients `S(W)` of the free monoid, three hard-coded presentation
//! monoids, brute-force identity checking and isoterm search.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::catalog::d_generator;
use crate::error::{Error, Result};
use crate::word::{Identity, Letter, Word};

/// Largest number of distinct letters brute-force evaluation accepts by default.
pub const DEFAULT_LETTER_LIMIT: usize = 4;

/// An assignment of monoid elements (by index) to letters.
pub type Assignment = Vec<(Letter, usize)>;

#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    zero: Option<usize>,
    generators: Vec<usize>,
}

impl FiniteMonoid {
    /// Builds a monoid from a full table; `table[a][b]` is `a·b`.
    /// Checks closure, the identity element and associativity.
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        let invalid = |m: String| Err(Error::InvalidTable(m));
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return invalid(format!("table must be {n}x{n}"));
        }
        if identity >= n || generators.iter().any(|&g| g >= n) {
            return invalid("element index out of range".into());
        }
        if table.iter().flatten().any(|&c| c >= n) {
            return invalid("product outside the element set".into());
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            if mul(identity, a) != a || mul(a, identity) != a {
                return invalid(format!("{} is not an identity for {}", labels[identity], labels[a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return invalid(format!(
                            "({}{})({}) != ({})({}{})",
                            labels[a], labels[b], labels[c], labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
        let zero = (0..n).find(|&z| (0..n).all(|a| mul(z, a) == z && mul(a, z) == z));
        Ok(FiniteMonoid {
            labels,
            table: flat,
            identity,
            zero,
            generators,
        })
    }

    /// `S(W)`: the factors of words in `W` (λ as 1) and an absorbing 0.
    pub fn rees_quotient(words: &[Word]) -> Self {
        let mut factors: BTreeSet<(usize, Vec<Letter>)> = BTreeSet::new();
        for w in words {
            for i in 0..=w.len() {
                for j in i..=w.len() {
                    factors.insert((j - i, w.letters()[i..j].to_vec()));
                }
            }
        }
        if factors.is_empty() {
            factors.insert((0, Vec::new()));
        }
        let elements: Vec<Vec<Letter>> = factors.into_iter().map(|(_, f)| f).collect();
        let index: HashMap<&[Letter], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let n = elements.len();
        let zero = n;
        let mut table = vec![vec![zero; n + 1]; n + 1];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let ab: Vec<Letter> = a.iter().chain(b).copied().collect();
                if let Some(&k) = index.get(ab.as_slice()) {
                    table[i][j] = k;
                }
            }
        }
        let mut labels: Vec<String> = elements
            .iter()
            .map(|f| {
                if f.is_empty() {
                    "1".to_string()
                } else {
                    Word::from_letters(f.iter().copied()).plain()
                }
            })
            .collect();
        labels.push("0".into());
        let generators = (0..n).filter(|&i| elements[i].len() == 1).collect();
        FiniteMonoid::from_table(labels, table, 0, generators)
            .expect("Rees quotients are associative")
    }

    /// One of `P1`, `B21`, `K5`.
    pub fn presentation_monoid(name: &str) -> Result<Self> {
        let (labels, table, gens): (&[&str], Vec<Vec<usize>>, Vec<usize>) = match name {
            // e^2 = e, ae = a, ea = 0
            "P1" => (
                &["1", "e", "a", "0"],
                vec![
                    vec![0, 1, 2, 3],
                    vec![1, 1, 3, 3],
                    vec![2, 2, 3, 3],
                    vec![3, 3, 3, 3],
                ],
                vec![1, 2],
            ),
            // a^2 = b^2 = 0, aba = a, bab = b
            "B21" => (
                &["1", "a", "b", "ab", "ba", "0"],
                vec![
                    vec![0, 1, 2, 3, 4, 5],
                    vec![1, 5, 3, 5, 1, 5],
                    vec![2, 4, 5, 2, 5, 5],
                    vec![3, 1, 5, 3, 5, 5],
                    vec![4, 5, 2, 5, 4, 5],
                    vec![5, 5, 5, 5, 5, 5],
                ],
                vec![1, 2],
            ),
            // a^2 = ab = a, b^2 a = b^2, b^3 = b^2
            "K5" => (
                &["1", "a", "b", "ba", "b^2"],
                vec![
                    vec![0, 1, 2, 3, 4],
                    vec![1, 1, 1, 1, 1],
                    vec![2, 3, 4, 4, 4],
                    vec![3, 3, 3, 3, 3],
                    vec![4, 4, 4, 4, 4],
                ],
                vec![1, 2],
            ),
            _ => return Err(Error::UnknownMonoid(name.to_string())),
        };
        FiniteMonoid::from_table(labels.iter().map(|s| s.to_string()).collect(), table, 0, gens)
    }

    /// `P1`, `B21`, `K5`, or `S:<word>,<word>,...`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec.strip_prefix("S:") {
            Some(list) => {
                let words = list
                    .split(',')
                    .map(|s| Word::parse(s).map_err(Error::from))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FiniteMonoid::rees_quotient(&words))
            }
            None => FiniteMonoid::presentation_monoid(spec),
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b]
    }

    /// Value of `w` under `value`, which must cover every letter of `w`.
    pub fn evaluate(&self, w: &Word, value: impl Fn(Letter) -> usize) -> usize {
        w.iter().fold(self.identity, |acc, &l| self.mul(acc, value(l)))
    }

    fn eval_compiled(&self, w: &[usize], values: &[usize]) -> usize {
        let n = self.size();
        let mut acc = self.identity;
        for &v in w {
            acc = self.table[acc * n + values[v]];
        }
        acc
    }

    /// True iff every assignment of elements to letters equalizes both sides.
    pub fn satisfies(&self, id: &Identity) -> bool {
        self.counterexample(id, usize::MAX)
            .expect("no letter limit")
            .is_none()
    }

    /// The first refuting assignment, or `None` if the identity holds.
    ///
    /// Assignments over `{1}` and the generators are tried first; then all
    /// `|M|^letters` assignments in lexicographic order of element indices.
    pub fn counterexample(&self, id: &Identity, letter_limit: usize) -> Result<Option<Assignment>> {
        let letters: Vec<Letter> = id.content().into_iter().collect();
        if letters.len() > letter_limit {
            return Err(Error::TooManyLetters {
                letters: letters.len(),
                limit: letter_limit,
            });
        }
        let pos = |l: &Letter| letters.binary_search(l).unwrap();
        let lhs: Vec<usize> = id.lhs.iter().map(pos).collect();
        let rhs: Vec<usize> = id.rhs.iter().map(pos).collect();
        let fails = |values: &[usize]| {
            self.eval_compiled(&lhs, values) != self.eval_compiled(&rhs, values)
        };
        let pack = |values: Vec<usize>| letters.iter().copied().zip(values).collect::<Assignment>();

        let mut small: Vec<usize> = vec![self.identity];
        small.extend(self.generators.iter().filter(|&&g| g != self.identity));
        if let Some(values) = search(&small, letters.len(), &fails) {
            return Ok(Some(pack(values)));
        }
        let all: Vec<usize> = (0..self.size()).collect();
        Ok(search(&all, letters.len(), &fails).map(pack))
    }

    /// Aligned multiplication table.
    pub fn dump(&self) -> String {
        let width = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        let cell = |out: &mut String, s: &str| {
            let _ = write!(out, " {s:>width$}");
        };
        cell(&mut out, "·");
        out.push_str(" |");
        for l in &self.labels {
            cell(&mut out, l);
        }
        out.push('\n');
        out.push_str(&"-".repeat((width + 1) * (self.size() + 1) + 2));
        out.push('\n');
        for a in 0..self.size() {
            cell(&mut out, &self.labels[a]);
            out.push_str(" |");
            for b in 0..self.size() {
                cell(&mut out, &self.labels[self.mul(a, b)]);
            }
            out.push('\n');
        }
        out
    }
}

/// Lexicographically first tuple over `values` of length `len` making `fails` true.
fn search(values: &[usize], len: usize, fails: &(impl Fn(&[usize]) -> bool + Sync)) -> Option<Vec<usize>> {
    let base = values.len();
    let total = base.checked_pow(len as u32)?;
    let decode = |mut idx: usize| {
        let mut tuple = vec![0; len];
        for slot in tuple.iter_mut().rev() {
            *slot = values[idx % base];
            idx /= base;
        }
        tuple
    };
    if total < 4096 {
        return (0..total).map(decode).find(|t| fails(t));
    }
    (0..total)
        .into_par_iter()
        .find_first(|&i| fails(&decode(i)))
        .map(decode)
}

/// Exact decision for `var S(W)` by brute force over `S(W)`.
pub fn oracle_decide(words: &[Word], id: &Identity) -> Result<bool> {
    oracle_decide_with_limit(words, id, DEFAULT_LETTER_LIMIT)
}

pub fn oracle_decide_with_limit(words: &[Word], id: &Identity, letter_limit: usize) -> Result<bool> {
    let m = FiniteMonoid::rees_quotient(words);
    Ok(m.counterexample(id, letter_limit)?.is_none())
}

/// Looks for `w' ≠ w` with the same content, at most `bound` occurrences of
/// each letter, and `decide(w ≈ w')`. Candidates are tried shortest first,
/// then lexicographically. `None` only means nothing was found within the bound.
pub fn isoterm_search(
    w: &Word,
    decide: impl Fn(&Identity) -> bool + Sync,
    bound: usize,
) -> Option<Word> {
    let letters: Vec<Letter> = w.content().into_iter().collect();
    if letters.is_empty() || bound == 0 {
        return None;
    }
    let mut candidates = Vec::new();
    for len in letters.len()..=letters.len() * bound {
        let mut counts = vec![0; letters.len()];
        let mut current = Vec::with_capacity(len);
        words_with_counts(&letters, bound, len, &mut counts, &mut current, &mut candidates);
    }
    candidates
        .into_par_iter()
        .filter(|c| c != w)
        .find_first(|c| decide(&Identity::new(w.clone(), c.clone())))
}

fn words_with_counts(
    letters: &[Letter],
    bound: usize,
    len: usize,
    counts: &mut Vec<usize>,
    current: &mut Vec<Letter>,
    out: &mut Vec<Word>,
) {
    let missing = counts.iter().filter(|&&c| c == 0).count();
    if len - current.len() < missing {
        return;
    }
    if current.len() == len {
        out.push(Word::from_letters(current.iter().copied()));
        return;
    }
    for (i, &l) in letters.iter().enumerate() {
        if counts[i] < bound {
            counts[i] += 1;
            current.push(l);
            words_with_counts(letters, bound, len, counts, current, out);
            current.pop();
            counts[i] -= 1;
        }
    }
}

/// Outcome of the one-sided test for the variety D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiVerdict {
    /// Holds in `B2^1`, hence in D.
    Holds,
    /// Refuted by the generator of `D_j`, which lies in D.
    Fails { refuted_by: u32, witness: Assignment },
    Unknown,
}

/// Sound but incomplete membership test for D, trying `D_1 .. D_k` as refuters.
pub fn semi_decide_d(id: &Identity, k: u32) -> Result<SemiVerdict> {
    if k == 0 {
        return Err(Error::BadParameter("k must be at least 1".into()));
    }
    let b21 = FiniteMonoid::presentation_monoid("B21")?;
    if b21.counterexample(id, DEFAULT_LETTER_LIMIT)?.is_none() {
        return Ok(SemiVerdict::Holds);
    }
    for j in 1..=k {
        let s = FiniteMonoid::rees_quotient(&[d_generator(j)]);
        if let Some(witness) = s.counterexample(id, DEFAULT_LETTER_LIMIT)? {
            return Ok(SemiVerdict::Fails { refuted_by: j, witness });
        }
    }
    Ok(SemiVerdict::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gamma, phi, sigma1, sigma2};
    use crate::word::{id, w};

    #[test]
    fn rees_quotient_elements() {
        let s = FiniteMonoid::rees_quotient(&[w("xy")]);
        assert_eq!(s.labels(), &["1", "x", "y", "xy", "0"]);
        let e = |l| s.element(l).unwrap();
        assert_eq!(s.mul(e("x"), e("y")), e("xy"));
        assert_eq!(s.mul(e("y"), e("x")), e("0"));
        assert_eq!(s.mul(e("x"), e("x")), e("0"));
        assert_eq!(s.zero(), Some(e("0")));
        assert_eq!(FiniteMonoid::rees_quotient(&[w("x")]).size(), 3);
    }

    #[test]
    fn rees_quotient_counts_match_factor_enumeration() {
        let word = w("xzxyty");
        let mut factors = BTreeSet::new();
        for i in 0..word.len() {
            for j in i + 1..=word.len() {
                factors.insert(word.factor(i, j));
            }
        }
        assert_eq!(factors.len(), 19);
        assert_eq!(FiniteMonoid::rees_quotient(&[word]).size(), 21);
    }

    #[test]
    fn presentation_sizes() {
        assert_eq!(FiniteMonoid::presentation_monoid("P1").unwrap().size(), 4);
        assert_eq!(FiniteMonoid::presentation_monoid("B21").unwrap().size(), 6);
        assert_eq!(FiniteMonoid::presentation_monoid("K5").unwrap().size(), 5);
        assert!(matches!(
            FiniteMonoid::presentation_monoid("Q7"),
            Err(Error::UnknownMonoid(_))
        ));
    }

    #[test]
    fn bad_tables_rejected() {
        let labels = vec!["1".to_string(), "a".to_string(), "b".to_string()];
        // a·b = a, b·a = b, a·a = b: not associative
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]];
        assert!(matches!(
            FiniteMonoid::from_table(labels.clone(), table, 0, vec![]),
            Err(Error::InvalidTable(_))
        ));
        let table = vec![vec![0, 1, 2], vec![1, 1, 1], vec![1, 2, 2]];
        assert!(FiniteMonoid::from_table(labels, table, 0, vec![]).is_err());
    }

    #[test]
    fn satisfaction() {
        let sx = FiniteMonoid::rees_quotient(&[w("x")]);
        assert!(sx.satisfies(&id("x^2 = x^3")));
        let p1 = FiniteMonoid::presentation_monoid("P1").unwrap();
        assert!(p1.satisfies(&id("x^2y = xyx")));
        assert!(p1.satisfies(&id("x^2 = x^3")));
        assert!(p1.satisfies(&id("x^2y^2 = y^2x^2")));
        assert!(!p1.satisfies(&id("xyx = yx^2")));
        let (e, a) = (p1.element("e").unwrap(), p1.element("a").unwrap());
        let value = |l: Letter| if l == Letter::plain('x') { e } else { a };
        assert_eq!(p1.evaluate(&w("xyx"), value), p1.element("0").unwrap());
        assert_eq!(p1.evaluate(&w("yx^2"), value), a);
    }

    #[test]
    fn letter_limit() {
        let sx = FiniteMonoid::rees_quotient(&[w("x")]);
        assert!(matches!(
            sx.counterexample(&id("xyztu = uxyzt"), 4),
            Err(Error::TooManyLetters { letters: 5, limit: 4 })
        ));
    }

    #[test]
    fn oracles() {
        assert!(oracle_decide(&[w("x")], &id("xy = yx")).unwrap());
        assert!(oracle_decide(&[w("xy")], &id("xyx = x^2y")).unwrap());
        assert!(!oracle_decide(&[w("xzxyty")], &id("xzxyty = xzyxty")).unwrap());
    }

    #[test]
    fn k5_identities() {
        let k5 = FiniteMonoid::presentation_monoid("K5").unwrap();
        for i in [sigma2(), id("xyxzx = xyxz"), id("xyx = xyx^2"), id("x^2y = x^2yx")] {
            assert!(k5.satisfies(&i), "{i}");
        }
        // K5 lies outside K: a^2 b^2 = a, b^2 a^2 = b^2
        let cex = k5.counterexample(&phi()[1], 4).unwrap().unwrap();
        assert_eq!(cex, vec![(Letter::plain('x'), 1), (Letter::plain('y'), 2)]);
    }

    #[test]
    fn isoterms() {
        let s = [w("xzxyty")];
        assert_eq!(
            isoterm_search(&w("xyx"), |i| oracle_decide(&s, i).unwrap(), 2),
            None
        );
        assert_eq!(
            isoterm_search(&w("x^2"), |i| oracle_decide(&[w("x")], i).unwrap(), 3),
            Some(w("x^3"))
        );
        assert_eq!(isoterm_search(&Word::empty(), |_| true, 3), None);
    }

    #[test]
    fn semi_decision_for_d() {
        assert!(!matches!(
            semi_decide_d(&sigma1(), 3).unwrap(),
            SemiVerdict::Fails { .. }
        ));
        assert!(matches!(
            semi_decide_d(&id("x = x^2"), 2).unwrap(),
            SemiVerdict::Fails { refuted_by: 1, .. }
        ));
        assert!(!matches!(
            semi_decide_d(&gamma(1).unwrap(), 3).unwrap(),
            SemiVerdict::Fails { .. }
        ));
    }

    #[test]
    fn dump_is_aligned() {
        let d = FiniteMonoid::rees_quotient(&[w("xy")]).dump();
        let widths: BTreeSet<usize> = d.lines().map(|l| l.chars().count()).collect();
        assert_eq!(widths.len(), 1, "{d}");
    }
}
