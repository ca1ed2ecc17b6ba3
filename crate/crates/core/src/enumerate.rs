//! Canonical word enumeration, identity spaces and seeded samplers.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::WordProfile;
use crate::word::{Identity, Letter, Word};

const BASES: [char; 8] = ['x', 'y', 'z', 't', 's', 'r', 'q', 'p'];

/// The first `n` letters of the fixed alphabet x, y, z, t, s, r, q, p.
pub fn alphabet(n: usize) -> Vec<Letter> {
    assert!(n <= BASES.len(), "at most {} letters", BASES.len());
    BASES[..n].iter().map(|&c| Letter::plain(c)).collect()
}

/// All words over `letters` of length at most `max_len`, by length and then
/// lexicographically in the order of `letters`.
pub fn words_up_to(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<Letter>> = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(next.iter().map(|v| Word::from_letters(v.iter().copied())));
        layer = next;
    }
    out
}

/// A finite list of identities over a shared word table, with each word's
/// profile computed once.
#[derive(Clone, Debug)]
pub struct IdentitySpace {
    words: Vec<Word>,
    profiles: Vec<WordProfile>,
    pairs: Pairs,
}

#[derive(Clone, Debug)]
enum Pairs {
    /// Every ordered pair of words, row-major.
    All,
    Listed(Vec<(u32, u32)>),
}

impl IdentitySpace {
    /// All ordered pairs of words over `n_letters` letters of length ≤ `max_len`.
    pub fn exhaustive(n_letters: usize, max_len: usize) -> Self {
        let words = words_up_to(&alphabet(n_letters), max_len);
        let profiles = words.iter().map(WordProfile::new).collect();
        IdentitySpace {
            words,
            profiles,
            pairs: Pairs::All,
        }
    }

    pub fn from_identities(ids: &[Identity]) -> Self {
        let mut index: HashMap<Word, u32> = HashMap::new();
        let mut words = Vec::new();
        let mut slot = |w: &Word| {
            *index.entry(w.clone()).or_insert_with(|| {
                words.push(w.clone());
                (words.len() - 1) as u32
            })
        };
        let pairs = ids.iter().map(|i| (slot(&i.lhs), slot(&i.rhs))).collect();
        let profiles = words.iter().map(WordProfile::new).collect();
        IdentitySpace {
            words,
            profiles,
            pairs: Pairs::Listed(pairs),
        }
    }

    pub fn len(&self) -> usize {
        match &self.pairs {
            Pairs::All => self.words.len() * self.words.len(),
            Pairs::Listed(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    fn pair(&self, i: usize) -> (usize, usize) {
        match &self.pairs {
            Pairs::All => (i / self.words.len(), i % self.words.len()),
            Pairs::Listed(p) => (p[i].0 as usize, p[i].1 as usize),
        }
    }

    pub fn identity(&self, i: usize) -> Identity {
        let (a, b) = self.pair(i);
        Identity::new(self.words[a].clone(), self.words[b].clone())
    }

    pub fn profiles(&self, i: usize) -> (&WordProfile, &WordProfile) {
        let (a, b) = self.pair(i);
        (&self.profiles[a], &self.profiles[b])
    }

    pub fn iter(&self) -> impl Iterator<Item = Identity> + '_ {
        (0..self.len()).map(|i| self.identity(i))
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, letters: &[Letter], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| letters[rng.gen_range(0..letters.len())]))
}

/// Half the time both sides are independent; otherwise the right side is a
/// shuffle of the left, which keeps occurrence counts equal.
pub fn random_identity<R: Rng + ?Sized>(rng: &mut R, letters: &[Letter], max_len: usize) -> Identity {
    let u = random_word(rng, letters, max_len);
    let v = if rng.gen_bool(0.5) {
        random_word(rng, letters, max_len)
    } else {
        let mut ls = u.letters().to_vec();
        ls.shuffle(rng);
        Word::from_letters(ls)
    };
    Identity::new(u, v)
}

pub fn sample_identities(seed: u64, n: usize, n_letters: usize, max_len: usize) -> Vec<Identity> {
    let mut r = rng(seed);
    let letters = alphabet(n_letters);
    (0..n).map(|_| random_identity(&mut r, &letters, max_len)).collect()
}

/// Identities whose sides share a content in which every letter occurs at
/// least twice on each side. Needs `max_len ≥ 2`.
pub fn sample_all_multiple(seed: u64, n: usize, n_letters: usize, max_len: usize) -> Vec<Identity> {
    assert!(max_len >= 2, "need room for two occurrences");
    let mut r = rng(seed);
    let letters = alphabet(n_letters);
    let cap = n_letters.min(max_len / 2);
    (0..n)
        .map(|_| {
            let c = r.gen_range(1..=cap);
            let mut content = letters.clone();
            content.shuffle(&mut r);
            content.truncate(c);
            let mut side = || {
                let mut ls: Vec<Letter> = content.iter().flat_map(|&l| [l, l]).collect();
                let extra = r.gen_range(0..=max_len - 2 * c);
                for _ in 0..extra {
                    ls.push(content[r.gen_range(0..c)]);
                }
                ls.shuffle(&mut r);
                Word::from_letters(ls)
            };
            let u = side();
            let v = side();
            Identity::new(u, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn canonical_order() {
        let ws = words_up_to(&alphabet(2), 2);
        let text: Vec<String> = ws.iter().map(|w| w.plain()).collect();
        assert_eq!(text, ["λ", "x", "y", "xx", "xy", "yx", "yy"]);
        assert_eq!(words_up_to(&alphabet(3), 6).len(), 1093);
    }

    #[test]
    fn spaces() {
        let s = IdentitySpace::exhaustive(2, 2);
        assert_eq!(s.len(), 49);
        assert_eq!(s.identity(1).to_string(), "1 = x");
        let ids = vec![
            Identity::new(w("xy"), w("yx")),
            Identity::new(w("yx"), w("xy")),
        ];
        let s = IdentitySpace::from_identities(&ids);
        assert_eq!(s.words().len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), ids);
    }

    #[test]
    fn seeded_samples_repeat() {
        assert_eq!(sample_identities(3, 50, 3, 6), sample_identities(3, 50, 3, 6));
        assert_ne!(sample_identities(3, 50, 3, 6), sample_identities(4, 50, 3, 6));
    }

    #[test]
    fn all_multiple_samples() {
        for id in sample_all_multiple(9, 200, 3, 8) {
            assert_eq!(id.lhs.content(), id.rhs.content());
            assert!(id.lhs.simple_letters().is_empty() && id.rhs.simple_letters().is_empty());
            assert!(id.lhs.len() <= 8 && id.rhs.len() <= 8);
        }
    }
}
