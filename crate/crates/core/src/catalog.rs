//! Variety descriptors and the parametric word and identity families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::word::{Identity, Letter, Word};

/// Names one variety of the catalog, without the dual flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    T,
    SL,
    /// `C_n`, n ≥ 2.
    C(u32),
    /// `D_k`, k ≥ 1.
    Dk(u32),
    D,
    E,
    F(u32),
    H(u32),
    I(u32),
    /// `J_k^m`, 1 ≤ m ≤ k.
    J(u32, u32),
    K,
    LRB,
    RRB,
    L,
    M,
    N,
    O,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarietyDescriptor {
    tag: Tag,
    dual: bool,
}

impl VarietyDescriptor {
    pub fn new(tag: Tag) -> Result<Self> {
        let bad = |what: &str| Err(Error::BadParameter(format!("{what} in {tag:?}")));
        match tag {
            Tag::C(n) if n < 2 => return bad("n < 2"),
            Tag::Dk(0) | Tag::F(0) | Tag::H(0) | Tag::I(0) => return bad("k = 0"),
            Tag::J(k, m) if m == 0 || m > k => return bad("m outside 1..=k"),
            _ => {}
        }
        Ok(VarietyDescriptor { tag, dual: false })
    }

    /// Panicking constructor for parameters known to be valid.
    pub fn of(tag: Tag) -> Self {
        Self::new(tag).expect("valid variety parameters")
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// The dual variety. LRB and RRB swap instead of carrying the flag.
    pub fn dual(&self) -> Self {
        match self.tag {
            Tag::LRB => VarietyDescriptor { tag: Tag::RRB, dual: self.dual },
            Tag::RRB => VarietyDescriptor { tag: Tag::LRB, dual: self.dual },
            _ => VarietyDescriptor { tag: self.tag, dual: !self.dual },
        }
    }

    /// Words W with `var S(W)` equal to this variety, when the catalog has them.
    pub fn generator_words(&self) -> Option<Vec<Word>> {
        let words = match self.tag {
            Tag::C(n) => vec![Word::letter(Letter::plain('x')).pow(n as usize - 1)],
            Tag::Dk(k) => vec![d_generator(k)],
            Tag::L => vec![Word::parse("xzxyty").unwrap()],
            Tag::M => vec![Word::parse("xyzxty").unwrap()],
            _ => return None,
        };
        Some(if self.dual {
            words.iter().map(Word::reverse).collect()
        } else {
            words
        })
    }
}

/// `xy` for k = 1, `x y1 x y2 x ... y_{k-1} x` for k ≥ 2.
pub fn d_generator(k: u32) -> Word {
    let x = Letter::plain('x');
    if k <= 1 {
        return Word::from_letters([x, Letter::plain('y')]);
    }
    let mut letters = vec![x];
    for i in 1..k {
        letters.push(Letter::indexed('y', i));
        letters.push(x);
    }
    Word::from_letters(letters)
}

impl fmt::Display for VarietyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Tag::T => f.write_str("T")?,
            Tag::SL => f.write_str("SL")?,
            Tag::C(n) => write!(f, "C{n}")?,
            Tag::Dk(k) => write!(f, "D{k}")?,
            Tag::D => f.write_str("D")?,
            Tag::E => f.write_str("E")?,
            Tag::F(k) => write!(f, "F{k}")?,
            Tag::H(k) => write!(f, "H{k}")?,
            Tag::I(k) => write!(f, "I{k}")?,
            Tag::J(k, m) => write!(f, "J{k}.{m}")?,
            Tag::K => f.write_str("K")?,
            Tag::LRB => f.write_str("LRB")?,
            Tag::RRB => f.write_str("RRB")?,
            Tag::L => f.write_str("L")?,
            Tag::M => f.write_str("M")?,
            Tag::N => f.write_str("N")?,
            Tag::O => f.write_str("O")?,
        }
        if self.dual {
            f.write_str("~")?;
        }
        Ok(())
    }
}

impl FromStr for VarietyDescriptor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let unknown = || Error::UnknownVariety(text.to_string());
        let trimmed = text.trim();
        let (body, dual) = match trimmed.strip_suffix('~') {
            Some(b) => (b, true),
            None => (trimmed, false),
        };
        let split = body
            .find(|c: char| c.is_ascii_digit())
            .unwrap_or(body.len());
        let (head, params) = body.split_at(split);
        let num = |s: &str| s.parse::<u32>().map_err(|_| unknown());
        let tag = match (head, params) {
            ("T", "") => Tag::T,
            ("SL", "") => Tag::SL,
            ("D", "") => Tag::D,
            ("E", "") => Tag::E,
            ("K", "") => Tag::K,
            ("LRB", "") => Tag::LRB,
            ("RRB", "") => Tag::RRB,
            ("L", "") => Tag::L,
            ("M", "") => Tag::M,
            ("N", "") => Tag::N,
            ("O", "") => Tag::O,
            ("C", p) if !p.is_empty() => Tag::C(num(p)?),
            ("D", p) if !p.is_empty() => Tag::Dk(num(p)?),
            ("F", p) if !p.is_empty() => Tag::F(num(p)?),
            ("H", p) if !p.is_empty() => Tag::H(num(p)?),
            ("I", p) if !p.is_empty() => Tag::I(num(p)?),
            ("J", p) => {
                let (k, m) = p.split_once('.').ok_or_else(unknown)?;
                Tag::J(num(k)?, num(m)?)
            }
            _ => return Err(unknown()),
        };
        let v = VarietyDescriptor::new(tag)?;
        Ok(if dual { v.dual() } else { v })
    }
}

/// The chain T ⊂ SL ⊂ C2 ⊂ D1 ⊂ E ⊂ F1 ⊂ H1 ⊂ I1 ⊂ J1.1 ⊂ F2 ⊂ ... ⊂ F_{kmax+1}.
pub fn chain_of(kmax: u32) -> Result<Vec<VarietyDescriptor>> {
    if kmax == 0 {
        return Err(Error::BadParameter("kmax must be at least 1".into()));
    }
    let mut chain: Vec<_> = [Tag::T, Tag::SL, Tag::C(2), Tag::Dk(1), Tag::E]
        .into_iter()
        .map(VarietyDescriptor::of)
        .collect();
    for k in 1..=kmax {
        chain.push(VarietyDescriptor::of(Tag::F(k)));
        chain.push(VarietyDescriptor::of(Tag::H(k)));
        chain.push(VarietyDescriptor::of(Tag::I(k)));
        for m in 1..=k {
            chain.push(VarietyDescriptor::of(Tag::J(k, m)));
        }
    }
    chain.push(VarietyDescriptor::of(Tag::F(kmax + 1)));
    Ok(chain)
}

/// A bijection of {1, ..., n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// `images[i - 1]` is the image of `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::BadParameter(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(rng);
        Permutation(images)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }
}

fn ix(base: char, i: u32) -> Letter {
    Letter::indexed(base, i)
}

fn x_(i: u32) -> Word {
    Word::letter(ix('x', i))
}

fn y_(i: u32) -> Word {
    Word::letter(ix('y', i))
}

fn cat(parts: &[&Word]) -> Word {
    Word::from_letters(parts.iter().flat_map(|p| p.iter().copied()))
}

/// `b_{s,q} = x_{s-1} x_s x_{s-2} x_{s-1} ... x_{q-1} x_q`; `b(0, _)` is λ.
pub fn b_word(s: u32, q: u32) -> Result<Word> {
    if s == 0 {
        return Ok(Word::empty());
    }
    if q == 0 || q > s {
        return Err(Error::BadParameter(format!("b_{{{s},{q}}} needs 1 <= q <= s")));
    }
    Ok(Word::from_letters(
        (q..=s).rev().flat_map(|j| [ix('x', j - 1), ix('x', j)]),
    ))
}

/// `b_s = b_{s,1}`.
pub fn b(s: u32) -> Word {
    b_word(s, 1).expect("q = 1 is always in range")
}

fn need_k(k: u32) -> Result<()> {
    if k == 0 {
        Err(Error::BadParameter("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `x_k y_k x_{k-1} x_k y_k b_{k-1} ≈ y_k x_k x_{k-1} x_k y_k b_{k-1}`.
pub fn alpha(k: u32) -> Result<Identity> {
    need_k(k)?;
    let tail = cat(&[&x_(k - 1), &x_(k), &y_(k), &b(k - 1)]);
    Ok(Identity::new(
        cat(&[&x_(k), &y_(k), &tail]),
        cat(&[&y_(k), &x_(k), &tail]),
    ))
}

/// `x x_k x b_k ≈ x_k x^2 b_k`.
pub fn beta(k: u32) -> Result<Identity> {
    need_k(k)?;
    let x = Word::letter(Letter::plain('x'));
    Ok(Identity::new(
        cat(&[&x, &x_(k), &x, &b(k)]),
        cat(&[&x_(k), &x, &x, &b(k)]),
    ))
}

/// `y_1 y_0 x_k y_1 b_k ≈ y_1 y_0 y_1 x_k b_k`.
pub fn gamma(k: u32) -> Result<Identity> {
    need_k(k)?;
    Ok(Identity::new(
        cat(&[&y_(1), &y_(0), &x_(k), &y_(1), &b(k)]),
        cat(&[&y_(1), &y_(0), &y_(1), &x_(k), &b(k)]),
    ))
}

/// `y_{m+1} y_m x_k y_{m+1} b_{k,m} y_m b_{m-1} ≈ y_{m+1} y_m y_{m+1} x_k b_{k,m} y_m b_{m-1}`.
pub fn delta(k: u32, m: u32) -> Result<Identity> {
    need_k(k)?;
    if m == 0 || m > k {
        return Err(Error::BadParameter(format!("delta_{k}^{m} needs 1 <= m <= k")));
    }
    let tail = cat(&[&b_word(k, m)?, &y_(m), &b(m - 1)]);
    Ok(Identity::new(
        cat(&[&y_(m + 1), &y_(m), &x_(k), &y_(m + 1), &tail]),
        cat(&[&y_(m + 1), &y_(m), &y_(m + 1), &x_(k), &tail]),
    ))
}

/// `x x_k x b_k ≈ x^2 x_k b_k`.
pub fn jbasis(k: u32) -> Result<Identity> {
    need_k(k)?;
    let x = Word::letter(Letter::plain('x'));
    Ok(Identity::new(
        cat(&[&x, &x_(k), &x, &b(k)]),
        cat(&[&x, &x, &x_(k), &b(k)]),
    ))
}

pub fn sigma1() -> Identity {
    Identity::parse("xyzxty = yxzxty").unwrap()
}

pub fn sigma2() -> Identity {
    Identity::parse("xtyzxy = xtyzyx").unwrap()
}

/// `{xyx ≈ xyx^2, x^2y^2 ≈ y^2x^2, x^2y ≈ x^2yx}`.
pub fn phi() -> Vec<Identity> {
    ["xyx = xyx^2", "x^2y^2 = y^2x^2", "x^2y = x^2yx"]
        .into_iter()
        .map(|s| Identity::parse(s).unwrap())
        .collect()
}

const FIXED: &[(&str, &str)] = &[
    ("xyxzx=xyxz", "xyxzx = xyxz"),
    ("sigma1", "xyzxty = yxzxty"),
    ("sigma2", "xtyzxy = xtyzyx"),
    ("xyx=xyxx", "xyx = xyx^2"),
    ("xxyy=yyxx", "x^2y^2 = y^2x^2"),
    ("xxy=xxyx", "x^2y = x^2yx"),
    ("xx=xxx", "x^2 = x^3"),
    ("xxy=yxx", "x^2y = yx^2"),
    ("xxy=xyx", "x^2y = xyx"),
    ("xyx=xxy", "xyx = x^2y"),
    ("xyxzx=xxyz", "xyxzx = x^2yz"),
    ("xy=yx", "xy = yx"),
    ("x=xx", "x = x^2"),
];

/// Codes accepted by [`named_identity`], parametric families shown with `<k>`.
pub fn identity_codes() -> Vec<String> {
    let mut codes: Vec<String> = FIXED.iter().map(|(c, _)| c.to_string()).collect();
    codes.extend(
        ["alpha<k>", "beta<k>", "gamma<k>", "delta<k>.<m>", "jbasis<k>"].map(String::from),
    );
    codes
}

/// Looks up an identity by code, e.g. `xyxzx=xyxz`, `sigma2`, `alpha3`, `delta2.1`,
/// or a literal `u=v`.
pub fn named_identity(code: &str) -> Result<Identity> {
    let code = code.trim();
    if let Some((_, text)) = FIXED.iter().find(|(c, _)| *c == code) {
        return Ok(Identity::parse(text).unwrap());
    }
    let unknown = || Error::UnknownIdentity(code.to_string());
    if code.contains('=') {
        return Identity::parse(code).map_err(|_| unknown());
    }
    let split = code.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
    let (head, params) = code.split_at(split);
    let num = |s: &str| s.parse::<u32>().map_err(|_| unknown());
    match head {
        "alpha" => alpha(num(params)?),
        "beta" => beta(num(params)?),
        "gamma" => gamma(num(params)?),
        "jbasis" => jbasis(num(params)?),
        "delta" => {
            let (k, m) = params.split_once('.').ok_or_else(unknown)?;
            delta(num(k)?, num(m)?)
        }
        _ => Err(unknown()),
    }
}

/// Identity systems by name: `phi`, or a comma-separated list of identity codes.
pub fn named_system(name: &str) -> Result<Vec<Identity>> {
    match name.trim() {
        "phi" => Ok(phi()),
        list => list.split(',').map(named_identity).collect(),
    }
}

fn z(i: usize) -> Letter {
    ix('z', i as u32)
}

fn t(i: usize) -> Letter {
    ix('t', i as u32)
}

fn check_perms(n: usize, pi: &Permutation, tau: &Permutation) -> Result<()> {
    if pi.size() != n || tau.size() != n {
        return Err(Error::BadParameter(format!(
            "permutations must have size {n}"
        )));
    }
    Ok(())
}

/// `z_{π(i)} z_{n+τ(i)}` for i in `range`.
fn zz(n: usize, pi: &Permutation, tau: &Permutation, range: std::ops::RangeInclusive<usize>) -> Vec<Letter> {
    range
        .flat_map(|i| [z(pi.apply(i)), z(n + tau.apply(i))])
        .collect()
}

fn head(n: usize) -> Vec<Letter> {
    (1..=n).flat_map(|i| [z(i), t(i)]).collect()
}

fn tail(from: usize, to: usize) -> Vec<Letter> {
    (from..=to).flat_map(|i| [t(i), z(i)]).collect()
}

/// `w_n(π,τ) = (∏ z_i t_i) x (∏ z_{π(i)} z_{n+τ(i)}) x (∏_{n<i≤2n} t_i z_i)`.
pub fn w_n(n: usize, pi: &Permutation, tau: &Permutation) -> Result<Word> {
    w_nkl(n, 0, n, pi, tau)
}

/// `w'_n(π,τ)`: as `w_n` with the two x adjacent.
pub fn w_n_prime(n: usize, pi: &Permutation, tau: &Permutation) -> Result<Word> {
    w_nkl(n, 0, 0, pi, tau)
}

/// `w_n^{k,ℓ}(π,τ)`: the two occurrences of x enclose the pairs k+1..=ℓ.
pub fn w_nkl(n: usize, k: usize, l: usize, pi: &Permutation, tau: &Permutation) -> Result<Word> {
    check_perms(n, pi, tau)?;
    if k > l || l > n {
        return Err(Error::BadParameter(format!("need 0 <= k <= l <= n, got {k}, {l}, {n}")));
    }
    let x = Letter::plain('x');
    let mut letters = head(n);
    letters.extend(zz(n, pi, tau, 1..=k));
    letters.push(x);
    letters.extend(zz(n, pi, tau, k + 1..=l));
    letters.push(x);
    letters.extend(zz(n, pi, tau, l + 1..=n));
    letters.extend(tail(n + 1, 2 * n));
    Ok(Word::from_letters(letters))
}

/// `w_{n,m}(θ) = (∏ z_i t_i) x (∏ z_{θ(i)}) x (∏_{n<i≤n+m} t_i z_i)`.
pub fn w_nm(n: usize, m: usize, theta: &Permutation) -> Result<Word> {
    w_nm_parts(n, m, theta, false)
}

/// `w'_{n,m}(θ)`: as `w_{n,m}` with the two x adjacent.
pub fn w_nm_prime(n: usize, m: usize, theta: &Permutation) -> Result<Word> {
    w_nm_parts(n, m, theta, true)
}

fn w_nm_parts(n: usize, m: usize, theta: &Permutation, prime: bool) -> Result<Word> {
    if n + m == 0 || theta.size() != n + m {
        return Err(Error::BadParameter(format!(
            "need n + m > 0 and a permutation of size n + m, got {n}, {m}, {}",
            theta.size()
        )));
    }
    let x = Letter::plain('x');
    let mut letters = head(n);
    letters.push(x);
    if prime {
        letters.push(x);
    }
    letters.extend((1..=n + m).map(|i| z(theta.apply(i))));
    if !prime {
        letters.push(x);
    }
    letters.extend(tail(n + 1, n + m));
    Ok(Word::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{id, w};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn b_words() {
        assert_eq!(b_word(0, 0).unwrap(), Word::empty());
        assert_eq!(b_word(2, 1).unwrap(), w("x1 x2 x0 x1"));
        assert_eq!(b_word(1, 1).unwrap(), w("x0 x1"));
        assert_eq!(b_word(3, 3).unwrap(), w("x2 x3"));
        assert!(b_word(2, 3).is_err());
        assert!(b_word(2, 0).is_err());
    }

    #[test]
    fn identity_families() {
        assert_eq!(gamma(1).unwrap(), id("y1 y0 x1 y1 x0 x1 = y1 y0 y1 x1 x0 x1"));
        assert_eq!(alpha(1).unwrap(), id("x1 y1 x0 x1 y1 = y1 x1 x0 x1 y1"));
        assert_eq!(beta(1).unwrap(), id("x x1 x x0 x1 = x1 x^2 x0 x1"));
        assert_eq!(
            delta(2, 2).unwrap(),
            id("y3 y2 x2 y3 x1 x2 y2 x0 x1 = y3 y2 y3 x2 x1 x2 y2 x0 x1")
        );
        assert_eq!(
            delta(2, 1).unwrap(),
            id("y2 y1 x2 y2 x1 x2 x0 x1 y1 = y2 y1 y2 x2 x1 x2 x0 x1 y1")
        );
        assert!(delta(2, 3).is_err());
        assert!(alpha(0).is_err());
    }

    #[test]
    fn fixed_identities() {
        assert_eq!(sigma1(), id("xyzxty = yxzxty"));
        assert_eq!(named_identity("xyxzx=xyxz").unwrap(), id("xyxzx = xyxz"));
        assert_eq!(phi().len(), 3);
        assert_eq!(named_identity("beta2").unwrap(), beta(2).unwrap());
        assert_eq!(named_identity("delta3.2").unwrap(), delta(3, 2).unwrap());
        assert!(matches!(named_identity("(99)"), Err(Error::UnknownIdentity(_))));
        assert_eq!(named_system("sigma1,sigma2").unwrap().len(), 2);
    }

    #[test]
    fn variety_names() {
        for name in ["T", "SL", "C2", "C5", "D1", "D3", "D", "E", "F1", "H2", "I3", "J2.1", "K", "LRB", "RRB", "L", "M", "N", "O", "K~", "J3.3~"] {
            let v: VarietyDescriptor = name.parse().unwrap();
            assert_eq!(v.to_string(), name);
            assert_eq!(v.dual().dual(), v);
        }
        assert_eq!("LRB~".parse::<VarietyDescriptor>().unwrap().to_string(), "RRB");
        assert!("J1.2".parse::<VarietyDescriptor>().is_err());
        assert!("C1".parse::<VarietyDescriptor>().is_err());
        assert!("F0".parse::<VarietyDescriptor>().is_err());
        assert!("Q".parse::<VarietyDescriptor>().is_err());
    }

    #[test]
    fn chains() {
        let names = |k| {
            chain_of(k)
                .unwrap()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        assert_eq!(names(1), "T SL C2 D1 E F1 H1 I1 J1.1 F2");
        assert_eq!(
            names(2),
            "T SL C2 D1 E F1 H1 I1 J1.1 F2 H2 I2 J2.1 J2.2 F3"
        );
        assert!(chain_of(0).is_err());
    }

    #[test]
    fn generators() {
        let gen = |s: &str| s.parse::<VarietyDescriptor>().unwrap().generator_words().unwrap();
        assert_eq!(gen("C3"), vec![w("x^2")]);
        assert_eq!(gen("D1"), vec![w("xy")]);
        assert_eq!(gen("D3"), vec![w("x y1 x y2 x")]);
        assert_eq!(gen("L~"), vec![w("ytyxzx")]);
        assert!("K".parse::<VarietyDescriptor>().unwrap().generator_words().is_none());
    }

    #[test]
    fn permutations() {
        assert!(Permutation::new(vec![2, 1, 3]).is_ok());
        assert!(Permutation::new(vec![2, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn w_families() {
        let id1 = Permutation::identity(1);
        assert_eq!(w_n(1, &id1, &id1).unwrap(), w("z1 t1 x z1 z2 x t2 z2"));
        assert_eq!(w_n_prime(1, &id1, &id1).unwrap(), w("z1 t1 x^2 z1 z2 t2 z2"));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..6 {
            let pi = Permutation::random(n, &mut rng);
            let tau = Permutation::random(n, &mut rng);
            assert_eq!(w_nkl(n, 0, n, &pi, &tau).unwrap(), w_n(n, &pi, &tau).unwrap());
            assert_eq!(w_nkl(n, 0, 0, &pi, &tau).unwrap(), w_n_prime(n, &pi, &tau).unwrap());
        }
        assert!(w_nkl(2, 2, 1, &Permutation::identity(2), &Permutation::identity(2)).is_err());
        let theta = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(w_nm(1, 1, &theta).unwrap(), w("z1 t1 x z2 z1 x t2 z2"));
        assert_eq!(w_nm_prime(1, 1, &theta).unwrap(), w("z1 t1 x^2 z2 z1 t2 z2"));
    }
}
