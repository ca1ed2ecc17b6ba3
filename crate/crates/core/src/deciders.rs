//! Word-problem deciders for the catalog varieties.
//!
//! Each structural decider is a conjunction of claims about two words,
//! checked in a fixed order; the verdict records the first violated claim.
//! Oracle-backed varieties (`C_n` cross-checks, `D_k` for k ≥ 2, L, M) are
//! decided by brute force over their generating Rees quotient.

use std::fmt;

use rayon::prelude::*;

use crate::catalog::{self, Tag, VarietyDescriptor};
use crate::decomposition::{Divider, WordProfile};
use crate::enumerate::IdentitySpace;
use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, DEFAULT_LETTER_LIMIT};
use crate::word::{Identity, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// Both sides have the same content.
    Content,
    /// Same simple letters and same multiple letters.
    SimMul,
    /// Simple letters appear in the same order.
    SimpleOrder,
    /// Per letter: equal occurrence counts, or both at least n.
    Occurrences,
    /// `h_1^0` agrees for every letter.
    FirstRestrictor0,
    /// `h_1^{ℓ-1}` and `h_2^{ℓ-1}` agree for every letter.
    Restrictors,
    /// `h_1^ℓ` agrees for letters of depth at most ℓ in either side.
    ShallowFirstRestrictor,
    /// `h_1^ℓ` agrees for every letter.
    FirstRestrictor,
    /// `h_2^k` agrees for multiple letters of depth at most m.
    SecondRestrictor,
    /// Same initial part.
    InitialPart,
    /// Brute-force evaluation in a generating monoid.
    Oracle,
}

impl Claim {
    pub fn code(&self) -> &'static str {
        match self {
            Claim::Content => "content",
            Claim::SimMul => "sim-mul",
            Claim::SimpleOrder => "simple-order",
            Claim::Occurrences => "occurrences",
            Claim::FirstRestrictor0 => "first-restrictor-0",
            Claim::Restrictors => "restrictors",
            Claim::ShallowFirstRestrictor => "shallow-first-restrictor",
            Claim::FirstRestrictor => "first-restrictor",
            Claim::SecondRestrictor => "second-restrictor",
            Claim::InitialPart => "initial-part",
            Claim::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// One checked claim, with the witnessing letter and restrictor values on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reason {
    pub claim: Claim,
    /// Decomposition level the claim was evaluated at, or the parameter n.
    pub level: Option<usize>,
    pub letter: Option<Letter>,
    /// Occurrence index i of `h_i`, when a restrictor is involved.
    pub occurrence: Option<usize>,
    /// Restrictor values in `u` and `v`.
    pub values: Option<(Divider, Divider)>,
    /// Occurrence counts of the letter in `u` and `v`.
    pub counts: Option<(usize, usize)>,
    pub detail: Option<String>,
}

impl Reason {
    fn new(claim: Claim) -> Self {
        Reason {
            claim,
            level: None,
            letter: None,
            occurrence: None,
            values: None,
            counts: None,
            detail: None,
        }
    }

    fn at(claim: Claim, level: usize) -> Self {
        Reason {
            level: Some(level),
            ..Reason::new(claim)
        }
    }

    fn letter(mut self, x: Letter) -> Self {
        self.letter = Some(x);
        self
    }

    fn restrictors(mut self, i: usize, a: Divider, b: Divider) -> Self {
        self.occurrence = Some(i);
        self.values = Some((a, b));
        self
    }

    fn counts(mut self, a: usize, b: usize) -> Self {
        self.counts = Some((a, b));
        self
    }

    fn detail(mut self, d: String) -> Self {
        self.detail = Some(d);
        self
    }
}

fn show(d: &Divider) -> String {
    d.map_or_else(|| "λ".to_string(), |l| l.to_string())
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.claim.code())?;
        if let Some(l) = self.level {
            write!(f, "[{l}]")?;
        }
        if let Some(x) = self.letter {
            write!(f, " at {x}")?;
        }
        if let (Some(i), Some((a, b))) = (self.occurrence, &self.values) {
            write!(f, ": h{i} = {} vs {}", show(a), show(b))?;
        }
        if let Some((a, b)) = self.counts {
            write!(f, ": occurs {a} vs {b} times")?;
        }
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Claims checked on success; the first violated claim on failure.
    pub reasons: Vec<Reason>,
}

impl Verdict {
    fn pass(reasons: Vec<Reason>) -> Self {
        Verdict { holds: true, reasons }
    }

    fn fail(reason: Reason) -> Self {
        Verdict {
            holds: false,
            reasons: vec![reason],
        }
    }

    /// The violated claim, if any.
    pub fn failure(&self) -> Option<&Reason> {
        if self.holds {
            None
        } else {
            self.reasons.first()
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.holds { "holds" } else { "fails" })?;
        for r in &self.reasons {
            write!(f, "\n  {r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Letter cap for brute-force oracles.
    pub letter_limit: usize,
    /// For `J_k^m`, also check letters with `D(v,x) ≤ m`.
    pub symmetric_j: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            letter_limit: DEFAULT_LETTER_LIMIT,
            symmetric_j: false,
        }
    }
}

/// Letters of u in first-occurrence order, then those only in v.
fn letters<'a>(pu: &'a WordProfile, pv: &'a WordProfile) -> impl Iterator<Item = Letter> + 'a {
    pu.letters_in_order()
        .iter()
        .chain(pv.letters_in_order().iter().filter(|x| !pu.contains(**x)))
        .copied()
}

fn check_content(pu: &WordProfile, pv: &WordProfile) -> Option<Reason> {
    letters(pu, pv)
        .find(|&x| !pu.contains(x) || !pv.contains(x))
        .map(|x| Reason::new(Claim::Content).letter(x))
}

fn check_sim_mul(pu: &WordProfile, pv: &WordProfile) -> Option<Reason> {
    letters(pu, pv)
        .find(|&x| {
            let (a, b) = (pu.occ(x), pv.occ(x));
            a == 0 || b == 0 || (a == 1) != (b == 1)
        })
        .map(|x| {
            Reason::new(Claim::SimMul)
                .letter(x)
                .counts(pu.occ(x), pv.occ(x))
        })
}

fn check_simple_order(pu: &WordProfile, pv: &WordProfile) -> Option<Reason> {
    let (a, b) = (pu.dividers(0), pv.dividers(0));
    let at = a.iter().zip(&b).position(|(x, y)| x != y)?;
    Some(Reason::new(Claim::SimpleOrder).letter(a[at]))
}

fn check_occurrences(pu: &WordProfile, pv: &WordProfile, n: usize) -> Option<Reason> {
    letters(pu, pv)
        .find(|&x| {
            let (a, b) = (pu.occ(x), pv.occ(x));
            a != b && (a < n || b < n)
        })
        .map(|x| {
            Reason::at(Claim::Occurrences, n)
                .letter(x)
                .counts(pu.occ(x), pv.occ(x))
        })
}

/// First letter x (in claim order) with `h_i^k(u,x) ≠ h_i^k(v,x)` among letters passing `filter`.
fn restrictor_mismatch(
    pu: &WordProfile,
    pv: &WordProfile,
    i: usize,
    k: usize,
    mut filter: impl FnMut(Letter) -> bool,
) -> Option<(Letter, Divider, Divider)> {
    for x in letters(pu, pv) {
        if !filter(x) {
            continue;
        }
        match (pu.try_restrictor(x, i, k), pv.try_restrictor(x, i, k)) {
            (Some(a), Some(b)) if a != b => return Some((x, a, b)),
            _ => {}
        }
    }
    None
}

fn check_restrictors(pu: &WordProfile, pv: &WordProfile, l: usize) -> Option<Reason> {
    for x in letters(pu, pv) {
        for i in 1..=2 {
            match (pu.try_restrictor(x, i, l - 1), pv.try_restrictor(x, i, l - 1)) {
                (Some(a), Some(b)) if a != b => {
                    return Some(Reason::at(Claim::Restrictors, l).letter(x).restrictors(i, a, b))
                }
                (None, None) => {}
                (Some(_), Some(_)) => {}
                _ => return Some(Reason::at(Claim::Restrictors, l).letter(x)),
            }
        }
    }
    None
}

fn check_first_restrictor0(pu: &WordProfile, pv: &WordProfile) -> Option<Reason> {
    restrictor_mismatch(pu, pv, 1, 0, |_| true)
        .map(|(x, a, b)| Reason::at(Claim::FirstRestrictor0, 0).letter(x).restrictors(1, a, b))
}

fn check_shallow_first(pu: &WordProfile, pv: &WordProfile, l: usize) -> Option<Reason> {
    let shallow = |x| {
        pu.depth(x).is_ok_and(|d| d.at_most(l)) || pv.depth(x).is_ok_and(|d| d.at_most(l))
    };
    restrictor_mismatch(pu, pv, 1, l, shallow).map(|(x, a, b)| {
        Reason::at(Claim::ShallowFirstRestrictor, l)
            .letter(x)
            .restrictors(1, a, b)
    })
}

fn check_first(pu: &WordProfile, pv: &WordProfile, l: usize) -> Option<Reason> {
    restrictor_mismatch(pu, pv, 1, l, |_| true)
        .map(|(x, a, b)| Reason::at(Claim::FirstRestrictor, l).letter(x).restrictors(1, a, b))
}

fn check_second(
    pu: &WordProfile,
    pv: &WordProfile,
    k: usize,
    m: usize,
    symmetric: bool,
) -> Option<Reason> {
    let shallow = |x| {
        pu.depth(x).is_ok_and(|d| d.at_most(m))
            || (symmetric && pv.depth(x).is_ok_and(|d| d.at_most(m)))
    };
    restrictor_mismatch(pu, pv, 2, k, shallow).map(|(x, a, b)| {
        Reason::at(Claim::SecondRestrictor, k)
            .letter(x)
            .restrictors(2, a, b)
    })
}

/// Same simple letters and same multiple letters.
pub fn claim_sim_mul(u: &Word, v: &Word) -> bool {
    u.simple_letters() == v.simple_letters() && u.multiple_letters() == v.multiple_letters()
}

/// `u` and `v` agree after deleting the multiple letters of `u`.
pub fn claim_simple_skeleton(u: &Word, v: &Word) -> bool {
    let mul = u.multiple_letters();
    u.delete_letters(&mul) == v.delete_letters(&mul)
}

/// `h_i^{ℓ-1}(u,x) = h_i^{ℓ-1}(v,x)` for i = 1, 2 and every letter; false if contents differ.
pub fn claim_restrictor_level(u: &Word, v: &Word, l: usize) -> Result<bool> {
    if l == 0 {
        return Err(Error::BadParameter("level must be at least 1".into()));
    }
    let (pu, pv) = (WordProfile::new(u), WordProfile::new(v));
    Ok(check_content(&pu, &pv).is_none() && check_restrictors(&pu, &pv, l).is_none())
}

/// True iff the contents differ, so the identity fails in SL.
pub fn group_forcing(id: &Identity) -> bool {
    id.lhs.content() != id.rhs.content()
}

pub fn decide(v: &VarietyDescriptor, id: &Identity) -> Result<Verdict> {
    decide_with(v, id, DecideOptions::default())
}

pub fn decide_with(v: &VarietyDescriptor, id: &Identity, opts: DecideOptions) -> Result<Verdict> {
    let id = if v.is_dual() { id.reversed() } else { id.clone() };
    let (pu, pv) = (WordProfile::new(&id.lhs), WordProfile::new(&id.rhs));
    decide_undual(v.tag(), &pu, &pv, opts)
}

/// Decides on precomputed profiles. For dual varieties the profiles must
/// belong to the reversed words.
pub fn decide_profiles(
    v: &VarietyDescriptor,
    pu: &WordProfile,
    pv: &WordProfile,
    opts: DecideOptions,
) -> Result<Verdict> {
    decide_undual(v.tag(), pu, pv, opts)
}

fn decide_undual(tag: Tag, pu: &WordProfile, pv: &WordProfile, opts: DecideOptions) -> Result<Verdict> {
    if tag == Tag::T {
        return Ok(Verdict::pass(vec![]));
    }
    if let Some(r) = check_content(pu, pv) {
        return Ok(Verdict::fail(r));
    }
    let mut done = vec![Reason::new(Claim::Content)];
    macro_rules! check {
        ($e:expr, $ok:expr) => {
            match $e {
                Some(r) => return Ok(Verdict::fail(r)),
                None => done.push($ok),
            }
        };
    }
    let k_of = |k: u32| k as usize;
    match tag {
        Tag::T | Tag::SL => {}
        Tag::C(n) => check!(check_occurrences(pu, pv, n as usize), Reason::at(Claim::Occurrences, n as usize)),
        Tag::Dk(1) => {
            check!(check_sim_mul(pu, pv), Reason::new(Claim::SimMul));
            check!(check_simple_order(pu, pv), Reason::new(Claim::SimpleOrder));
        }
        Tag::E => {
            check!(check_sim_mul(pu, pv), Reason::new(Claim::SimMul));
            check!(check_first_restrictor0(pu, pv), Reason::at(Claim::FirstRestrictor0, 0));
        }
        Tag::F(k) | Tag::H(k) | Tag::I(k) | Tag::J(k, _) => {
            let k = k_of(k);
            check!(check_sim_mul(pu, pv), Reason::new(Claim::SimMul));
            check!(check_restrictors(pu, pv, k), Reason::at(Claim::Restrictors, k));
            if let Tag::H(_) = tag {
                check!(check_shallow_first(pu, pv, k), Reason::at(Claim::ShallowFirstRestrictor, k));
            }
            if let Tag::I(_) | Tag::J(..) = tag {
                check!(check_first(pu, pv, k), Reason::at(Claim::FirstRestrictor, k));
            }
            if let Tag::J(_, m) = tag {
                check!(
                    check_second(pu, pv, k, m as usize, opts.symmetric_j),
                    Reason::at(Claim::SecondRestrictor, k)
                );
            }
        }
        Tag::K => {
            check!(check_sim_mul(pu, pv), Reason::new(Claim::SimMul));
            let top = pu.stabilization_level().max(pv.stabilization_level()) + 1;
            for l in 1..=top {
                check!(check_restrictors(pu, pv, l), Reason::at(Claim::Restrictors, l));
            }
        }
        Tag::LRB => {
            if pu.letters_in_order() != pv.letters_in_order() {
                return Ok(Verdict::fail(Reason::new(Claim::InitialPart)));
            }
            done.push(Reason::new(Claim::InitialPart));
        }
        Tag::RRB => {
            let (ru, rv) = (pu.word().reverse(), pv.word().reverse());
            if ru.initial_part() != rv.initial_part() {
                return Ok(Verdict::fail(Reason::new(Claim::InitialPart)));
            }
            done.push(Reason::new(Claim::InitialPart));
        }
        Tag::Dk(_) | Tag::L | Tag::M => {
            let words = VarietyDescriptor::of(tag).generator_words().expect("generator words");
            let m = FiniteMonoid::rees_quotient(&words);
            let id = Identity::new(pu.word().clone(), pv.word().clone());
            if let Some(cex) = m.counterexample(&id, opts.letter_limit)? {
                let text = cex
                    .iter()
                    .map(|(l, e)| format!("{l}->{}", m.labels()[*e]))
                    .collect::<Vec<_>>()
                    .join(",");
                let gens = words.iter().map(Word::plain).collect::<Vec<_>>().join(",");
                return Ok(Verdict::fail(
                    Reason::new(Claim::Oracle).detail(format!("S({gens}) refutes with {text}")),
                ));
            }
            done.push(Reason::new(Claim::Oracle));
        }
        Tag::D | Tag::N | Tag::O => {
            return Err(Error::NoExactDecider(VarietyDescriptor::of(tag).to_string()))
        }
    }
    Ok(Verdict::pass(done))
}

/// Whether `v` has an exact decider.
pub fn has_decider(v: &VarietyDescriptor) -> bool {
    !matches!(v.tag(), Tag::D | Tag::N | Tag::O)
}

/// Canonical identity holding in `small` and failing in `large`, for
/// neighbours of the chain (or their duals).
pub fn separating_witness(small: &VarietyDescriptor, large: &VarietyDescriptor) -> Result<Identity> {
    let not_adjacent = || Error::NotAdjacent(small.to_string(), large.to_string());
    if small.is_dual() != large.is_dual() {
        return Err(not_adjacent());
    }
    let fixed = |s: &str| Ok(Identity::parse(s).unwrap());
    let witness = match (small.tag(), large.tag()) {
        (Tag::T, Tag::SL) => fixed("x = 1"),
        (Tag::SL, Tag::C(2)) => fixed("x = x^2"),
        (Tag::C(2), Tag::Dk(1)) => fixed("xy = yx"),
        (Tag::Dk(1), Tag::E) => fixed("x^2y = yx^2"),
        (Tag::E, Tag::F(1)) => fixed("xyx = x^2y"),
        (Tag::F(k), Tag::H(j)) if k == j => catalog::alpha(k),
        (Tag::H(k), Tag::I(j)) if k == j => catalog::beta(k),
        (Tag::I(k), Tag::J(j, 1)) if k == j => catalog::gamma(k),
        (Tag::J(k, m), Tag::J(j, n)) if k == j && n == m + 1 => catalog::delta(k, m),
        (Tag::J(k, m), Tag::F(j)) if m == k && j == k + 1 => catalog::delta(k, k),
        _ => Err(not_adjacent()),
    }?;
    Ok(if small.is_dual() { witness.reversed() } else { witness })
}

/// Outcome of checking `Id(large) ⊆ Id(small)` over an identity space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionReport {
    pub small: VarietyDescriptor,
    pub large: VarietyDescriptor,
    pub checked: usize,
    pub accepted_by_large: usize,
    /// Violations: accepted by `large`, rejected by `small`.
    pub violations: usize,
    /// The violation with the least index in the space.
    pub counterexample: Option<Identity>,
}

impl InclusionReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub checked: usize,
    pub pairs: Vec<InclusionReport>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(InclusionReport::passed)
    }
}

/// Every identity of `space` accepted by `large` must be accepted by `small`.
pub fn verify_inclusion(
    small: &VarietyDescriptor,
    large: &VarietyDescriptor,
    space: &IdentitySpace,
    opts: DecideOptions,
) -> Result<InclusionReport> {
    let report = verify_chain(&[*small, *large], space, opts)?;
    Ok(report.pairs.into_iter().next().expect("one pair"))
}

#[derive(Clone)]
struct Tally {
    accepted: Vec<usize>,
    violations: Vec<usize>,
    first: Vec<Option<usize>>,
}

impl Tally {
    fn new(n: usize) -> Self {
        Tally {
            accepted: vec![0; n],
            violations: vec![0; n],
            first: vec![None; n],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for j in 0..self.accepted.len() {
            self.accepted[j] += other.accepted[j];
            self.violations[j] += other.violations[j];
            self.first[j] = match (self.first[j], other.first[j]) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        self
    }
}

/// Checks every adjacent pair of `chain` (smallest first) over `space` in one pass.
pub fn verify_chain(
    chain: &[VarietyDescriptor],
    space: &IdentitySpace,
    opts: DecideOptions,
) -> Result<ChainReport> {
    if let Some(v) = chain.iter().find(|v| !has_decider(v)) {
        return Err(Error::NoExactDecider(v.to_string()));
    }
    let n_pairs = chain.len().saturating_sub(1);
    let judge = |i: usize| -> Result<Vec<bool>> {
        let (pu, pv) = space.profiles(i);
        let reversed;
        let (ru, rv) = if chain.iter().any(|v| v.is_dual()) {
            let id = space.identity(i).reversed();
            reversed = (WordProfile::new(&id.lhs), WordProfile::new(&id.rhs));
            (&reversed.0, &reversed.1)
        } else {
            (pu, pv)
        };
        chain
            .iter()
            .map(|v| {
                let (a, b) = if v.is_dual() { (ru, rv) } else { (pu, pv) };
                Ok(decide_profiles(v, a, b, opts)?.holds)
            })
            .collect()
    };
    const CHUNK: usize = 1 << 14;
    let chunks: Vec<usize> = (0..space.len()).step_by(CHUNK).collect();
    let tallies = chunks
        .into_par_iter()
        .map(|start| {
            let mut t = Tally::new(n_pairs);
            for i in start..(start + CHUNK).min(space.len()) {
                let holds = judge(i)?;
                for j in 0..n_pairs {
                    if holds[j + 1] {
                        t.accepted[j] += 1;
                        if !holds[j] {
                            t.violations[j] += 1;
                            t.first[j].get_or_insert(i);
                        }
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<Tally>>>()?;
    let total = tallies.into_iter().fold(Tally::new(n_pairs), Tally::merge);
    let pairs = (0..n_pairs)
        .map(|j| InclusionReport {
            small: chain[j],
            large: chain[j + 1],
            checked: space.len(),
            accepted_by_large: total.accepted[j],
            violations: total.violations[j],
            counterexample: total.first[j].map(|i| space.identity(i)),
        })
        .collect();
    Ok(ChainReport {
        checked: space.len(),
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alpha, beta, delta, gamma, phi};
    use crate::word::{id, w};

    fn var(name: &str) -> VarietyDescriptor {
        name.parse().unwrap()
    }

    fn holds(v: &str, i: &Identity) -> bool {
        decide(&var(v), i).unwrap().holds
    }

    #[test]
    fn claim_examples() {
        assert!(claim_sim_mul(&w("x^2"), &w("x^3")));
        assert!(!claim_sim_mul(&w("x"), &w("x^2")));
        assert!(claim_sim_mul(&w("xy"), &w("yx")));
        assert!(claim_simple_skeleton(&w("xyx"), &w("x^2y")));
        assert!(!claim_simple_skeleton(&w("xtyxs"), &w("xsxty")));
        assert!(claim_simple_skeleton(&w("xyzx"), &w("xyzx")));
        let a2 = alpha(2).unwrap();
        assert!(claim_restrictor_level(&a2.lhs, &a2.rhs, 2).unwrap());
        let d2 = delta(2, 2).unwrap();
        assert!(!claim_restrictor_level(&d2.lhs, &d2.rhs, 3).unwrap());
        assert!(claim_restrictor_level(&w("xyx"), &w("xyx"), 4).unwrap());
        assert!(claim_restrictor_level(&w("x"), &w("x"), 0).is_err());
    }

    #[test]
    fn delta_second_restrictor_witness() {
        let d2 = delta(2, 2).unwrap();
        let v = decide(&var("F3"), &d2).unwrap();
        let r = v.failure().unwrap();
        assert_eq!(r.claim, Claim::Restrictors);
        assert_eq!(r.letter, Some(Letter::indexed('y', 3)));
        assert_eq!(r.occurrence, Some(2));
        assert_eq!(
            r.values,
            Some((Some(Letter::indexed('x', 2)), Some(Letter::indexed('y', 2))))
        );
    }

    #[test]
    fn reasons_for_separations() {
        let a1 = alpha(1).unwrap();
        assert!(holds("F1", &a1));
        let r = decide(&var("H1"), &a1).unwrap().reasons[0].clone();
        assert_eq!(r.claim, Claim::ShallowFirstRestrictor);
        assert_eq!(r.letter, Some(Letter::indexed('x', 1)));
        assert_eq!(r.values, Some((None, Some(Letter::indexed('y', 1)))));

        for k in 1..=3 {
            let b = beta(k).unwrap();
            assert!(holds(&format!("H{k}"), &b));
            let r = decide(&var(&format!("I{k}")), &b).unwrap().reasons[0].clone();
            assert_eq!(r.claim, Claim::FirstRestrictor);
            assert_eq!(r.letter, Some(Letter::plain('x')));
            assert_eq!(r.values, Some((None, Some(Letter::indexed('x', k)))));

            let g = gamma(k).unwrap();
            assert!(holds(&format!("I{k}"), &g));
            let r = decide(&var(&format!("J{k}.1")), &g).unwrap().reasons[0].clone();
            assert_eq!(r.claim, Claim::SecondRestrictor);
            assert_eq!(r.letter, Some(Letter::indexed('y', 1)));
            assert_eq!(
                r.values,
                Some((Some(Letter::indexed('x', k)), Some(Letter::indexed('y', 0))))
            );
        }
    }

    #[test]
    fn defining_identities_accepted() {
        for k in 1..=3 {
            assert!(holds(&format!("F{k}"), &alpha(k).unwrap()));
            assert!(holds(&format!("H{k}"), &beta(k).unwrap()));
            assert!(holds(&format!("I{k}"), &gamma(k).unwrap()));
            for m in 1..=k {
                assert!(holds(&format!("J{k}.{m}"), &delta(k, m).unwrap()));
            }
        }
        for p in phi() {
            assert!(holds("K", &p), "{p}");
        }
    }

    #[test]
    fn witnesses_separate_neighbours() {
        let chain = catalog::chain_of(3).unwrap();
        for pair in chain.windows(2) {
            let wit = separating_witness(&pair[0], &pair[1]).unwrap();
            assert!(decide(&pair[0], &wit).unwrap().holds, "{} {wit}", pair[0]);
            assert!(!decide(&pair[1], &wit).unwrap().holds, "{} {wit}", pair[1]);
        }
        assert!(matches!(
            separating_witness(&var("F1"), &var("I1")),
            Err(Error::NotAdjacent(..))
        ));
        let wit = separating_witness(&var("F2~"), &var("H2~")).unwrap();
        assert!(holds("F2~", &wit) && !holds("H2~", &wit));
    }

    #[test]
    fn simple_varieties() {
        assert!(holds("T", &id("x = 1")));
        assert!(!holds("SL", &id("x = 1")));
        assert!(holds("SL", &id("xy = y^3x")));
        assert!(holds("C2", &id("x^2 = x^3")));
        assert!(!holds("C3", &id("x^2 = x^3")));
        assert!(holds("C3", &id("x^3y = yx^4")));
        assert!(holds("D1", &id("xyx = x^2y")));
        assert!(!holds("D1", &id("xy = yx")));
        assert!(holds("E", &id("x^2y = xyx")));
        assert!(!holds("E", &id("xyx = yx^2")));
        assert!(holds("LRB", &id("xyx = xy")));
        assert!(!holds("LRB", &id("xy = yx")));
        assert!(holds("RRB", &id("xyx = yx")));
        assert!(holds("LRB~", &id("xyx = yx")));
        assert!(!holds("L", &id("xzxyty = xzyxty")));
        assert!(holds("L", &id("x^2y = yx^2")));
        assert!(holds("D2", &id("x^2y = yx^2")));
        assert!(!holds("D2", &id("xyx = x^2y")));
    }

    #[test]
    fn no_exact_decider() {
        for v in ["D", "N", "O", "D~"] {
            assert!(matches!(decide(&var(v), &id("x = x")), Err(Error::NoExactDecider(_))));
        }
    }

    #[test]
    fn oracle_letter_cap() {
        assert!(matches!(
            decide(&var("L"), &id("xyzts = xyzts")),
            Err(Error::TooManyLetters { .. })
        ));
        let opts = DecideOptions { letter_limit: 5, ..Default::default() };
        assert!(decide_with(&var("D3"), &id("xyzts = xyzts"), opts).unwrap().holds);
    }

    #[test]
    fn group_forcing_examples() {
        assert!(group_forcing(&id("x = 1")));
        assert!(!group_forcing(&id("xy = yx")));
        assert!(!group_forcing(&id("x^2y = yx^2")));
    }

    #[test]
    fn verdict_text() {
        let v = decide(&var("H1"), &alpha(1).unwrap()).unwrap();
        assert_eq!(
            v.to_string(),
            "fails\n  shallow-first-restrictor[1] at x1: h1 = λ vs y1"
        );
    }

    #[test]
    fn inclusion_small_space() {
        let space = IdentitySpace::exhaustive(2, 4);
        let r = verify_inclusion(&var("F1"), &var("H1"), &space, DecideOptions::default()).unwrap();
        assert!(r.passed());
        assert!(r.accepted_by_large > 0);
        let ids = vec![id("xy = yx"), alpha(1).unwrap()];
        let back = verify_inclusion(
            &var("H1"),
            &var("F1"),
            &IdentitySpace::from_identities(&ids),
            DecideOptions::default(),
        )
        .unwrap();
        assert_eq!(back.violations, 1);
        assert_eq!(back.counterexample, Some(alpha(1).unwrap()));
    }

    #[test]
    fn chain_on_small_space() {
        let chain = catalog::chain_of(2).unwrap();
        let report = verify_chain(&chain, &IdentitySpace::exhaustive(3, 4), DecideOptions::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        let duals: Vec<_> = chain.iter().map(|v| v.dual()).collect();
        let report = verify_chain(&duals, &IdentitySpace::exhaustive(2, 4), DecideOptions::default()).unwrap();
        assert!(report.passed());
    }
}
