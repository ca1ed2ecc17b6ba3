//! Elementary rewrite steps, deductions and a bounded deduction search.
//!
//! A step replaces a factor `ξ(s)` of `a·ξ(s)·b` by `ξ(t)`, where `s ≈ t` is
//! an identity used in either direction and `ξ` maps letters to words,
//! possibly empty.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::catalog::named_identity;
use crate::error::{Error, Result};
use crate::word::{Identity, Letter, Word};

/// A letter-to-word map; letters it does not mention are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution(BTreeMap<Letter, Word>);

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn with(mut self, x: Letter, w: Word) -> Self {
        self.0.insert(x, w);
        self
    }

    pub fn insert(&mut self, x: Letter, w: Word) {
        self.0.insert(x, w);
    }

    pub fn get(&self, x: Letter) -> Option<&Word> {
        self.0.get(&x)
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word::from_letters(w.iter().flat_map(|l| match self.0.get(l) {
            Some(img) => img.letters().to_vec(),
            None => vec![*l],
        }))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Word)> {
        self.0.iter()
    }
}

/// `x->w,y->1`, with `1` for λ.
impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, w)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}->{w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    /// Name of the identity, as accepted by `named_identity`.
    pub code: String,
    /// The identity `s ≈ t` as named.
    pub identity: Identity,
    /// Apply right to left.
    pub reversed: bool,
    pub xi: Substitution,
    pub left: Word,
    pub right: Word,
}

impl RewriteStep {
    pub fn new(code: &str, reversed: bool, xi: Substitution, left: Word, right: Word) -> Result<Self> {
        Ok(RewriteStep {
            code: code.to_string(),
            identity: named_identity(code)?,
            reversed,
            xi,
            left,
            right,
        })
    }

    /// `(s, t)` in the direction of application.
    pub fn oriented(&self) -> (&Word, &Word) {
        if self.reversed {
            (&self.identity.rhs, &self.identity.lhs)
        } else {
            (&self.identity.lhs, &self.identity.rhs)
        }
    }

    /// The same step undone.
    pub fn inverse(&self) -> Self {
        RewriteStep {
            reversed: !self.reversed,
            ..self.clone()
        }
    }

    fn framed(&self, w: &Word) -> Word {
        self.left.concat(&self.xi.apply(w)).concat(&self.right)
    }
}

/// The annotation line of the deduction file format, without the leading `#`.
impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "id={}", self.code)?;
        if self.reversed {
            f.write_str(" rev")?;
        }
        write!(f, " xi={} a={} b={}", self.xi, self.left, self.right)
    }
}

/// `a·ξ(t)·b`, provided `w = a·ξ(s)·b`.
pub fn apply_step(w: &Word, step: &RewriteStep) -> Result<Word> {
    let (s, t) = step.oriented();
    let expected = step.framed(s);
    if &expected != w {
        return Err(Error::StepMismatch(format!("expected {expected}, found {w}")));
    }
    Ok(step.framed(t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deduction {
    pub words: Vec<Word>,
    pub steps: Vec<RewriteStep>,
}

impl Deduction {
    pub fn start(w: Word) -> Self {
        Deduction {
            words: vec![w],
            steps: vec![],
        }
    }

    /// Appends a step, computing the next word.
    pub fn push(&mut self, step: RewriteStep) -> Result<&Word> {
        let next = apply_step(self.words.last().expect("non-empty"), &step)?;
        self.words.push(next);
        self.steps.push(step);
        Ok(self.words.last().unwrap())
    }

    /// `first ≈ last`.
    pub fn conclusion(&self) -> Identity {
        Identity::new(
            self.words.first().cloned().unwrap_or_default(),
            self.words.last().cloned().unwrap_or_default(),
        )
    }

    /// Parses the line format: words alternating with `# id=... xi=... a=... b=...`.
    /// Blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut words = Vec::new();
        let mut steps = Vec::new();
        let mut expect_word = true;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let syntax = |message: String| Error::DeductionSyntax { line: n + 1, message };
            if line.is_empty() {
                continue;
            }
            if let Some(ann) = line.strip_prefix('#') {
                if expect_word || words.is_empty() {
                    return Err(syntax("annotation must follow a word".into()));
                }
                steps.push(parse_annotation(ann).map_err(|e| syntax(e.to_string()))?);
                expect_word = true;
            } else {
                if !expect_word {
                    return Err(syntax("two words without an annotation between them".into()));
                }
                words.push(Word::parse(line).map_err(|e| syntax(e.to_string()))?);
                expect_word = false;
            }
        }
        if words.is_empty() || expect_word && !steps.is_empty() {
            return Err(Error::DeductionSyntax {
                line: text.lines().count(),
                message: "deduction must start and end with a word".into(),
            });
        }
        Ok(Deduction { words, steps })
    }
}

impl fmt::Display for Deduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                writeln!(f, "# {}", self.steps[i - 1])?;
            }
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

fn parse_annotation(text: &str) -> Result<RewriteStep> {
    let mut code = None;
    let mut reversed = false;
    let mut xi = Substitution::new();
    let mut left = Word::empty();
    let mut right = Word::empty();
    let bad = |m: String| Error::BadParameter(m);
    for token in text.split_whitespace() {
        if token == "rev" {
            reversed = true;
            continue;
        }
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, found {token:?}")))?;
        match key {
            "id" => code = Some(value.to_string()),
            "a" => left = Word::parse(value)?,
            "b" => right = Word::parse(value)?,
            "xi" => {
                for item in value.split(',').filter(|s| !s.is_empty()) {
                    let (x, w) = item
                        .split_once("->")
                        .ok_or_else(|| bad(format!("expected letter->word, found {item:?}")))?;
                    let x = Word::parse(x)?;
                    if x.len() != 1 {
                        return Err(bad(format!("{x} is not a single letter")));
                    }
                    xi.insert(x[0], Word::parse(w)?);
                }
            }
            _ => return Err(bad(format!("unknown key {key:?}"))),
        }
    }
    let code = code.ok_or_else(|| bad("missing id=".into()))?;
    RewriteStep::new(&code, reversed, xi, left, right)
}

/// Result of checking a deduction step by step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductionCheck {
    /// `(step index, message)` for every failing step, 0-based.
    pub failures: Vec<(usize, String)>,
}

impl DeductionCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies that step i turns word i into word i+1.
pub fn check_deduction(d: &Deduction) -> DeductionCheck {
    let mut failures = Vec::new();
    if d.words.len() != d.steps.len() + 1 {
        failures.push((
            d.steps.len(),
            format!("{} words for {} steps", d.words.len(), d.steps.len()),
        ));
        return DeductionCheck { failures };
    }
    for (i, step) in d.steps.iter().enumerate() {
        match apply_step(&d.words[i], step) {
            Ok(next) if next == d.words[i + 1] => {}
            Ok(next) => failures.push((i, format!("step yields {next}, listed {}", d.words[i + 1]))),
            Err(e) => failures.push((i, e.to_string())),
        }
    }
    DeductionCheck { failures }
}

/// Images of bound letters as spans of the text.
type Binding = BTreeMap<Letter, (usize, usize)>;

/// All ways to write `text[..end]` as `ξ(pattern)` for some `end`, extending `bound`.
fn match_prefix(
    pattern: &[Letter],
    text: &[Letter],
    pos: usize,
    bound: &mut Binding,
    out: &mut Vec<(Binding, usize)>,
    all_text: &[Letter],
) {
    let Some((&x, rest)) = pattern.split_first() else {
        out.push((bound.clone(), pos));
        return;
    };
    if let Some(&(s, e)) = bound.get(&x) {
        let img = &all_text[s..e];
        if text[pos..].starts_with(img) {
            match_prefix(rest, text, pos + img.len(), bound, out, all_text);
        }
        return;
    }
    for end in pos..=text.len() {
        bound.insert(x, (pos, end));
        match_prefix(rest, text, end, bound, out, all_text);
    }
    bound.remove(&x);
}

/// Words reachable from `w` by one application of `s → t`.
fn successors(w: &Word, identity: &Identity, reversed: bool, max_len: usize, out: &mut Vec<(Word, RewriteStep)>) {
    let (s, t) = if reversed {
        (&identity.rhs, &identity.lhs)
    } else {
        (&identity.lhs, &identity.rhs)
    };
    let text = w.letters();
    let free: Vec<Letter> = t.content().difference(&s.content()).copied().collect();
    let mut fillers = vec![Word::empty()];
    fillers.extend(w.content().into_iter().map(Word::letter));
    for start in 0..=text.len() {
        let mut matches = Vec::new();
        match_prefix(s.letters(), text, start, &mut BTreeMap::new(), &mut matches, text);
        for (bound, end) in matches {
            let mut xi = Substitution::new();
            for (x, (a, b)) in bound {
                xi.insert(x, Word::from_letters(text[a..b].iter().copied()));
            }
            let left = w.factor(0, start);
            let right = w.factor(end, text.len());
            let mut choices = vec![xi];
            for &x in &free {
                choices = choices
                    .into_iter()
                    .flat_map(|c| fillers.iter().map(move |f| c.clone().with(x, f.clone())))
                    .collect();
            }
            for xi in choices {
                let next = left.concat(&xi.apply(t)).concat(&right);
                if next.len() <= max_len && &next != w {
                    out.push((
                        next,
                        RewriteStep {
                            code: literal_code(identity),
                            identity: identity.clone(),
                            reversed,
                            xi,
                            left: left.clone(),
                            right: right.clone(),
                        },
                    ));
                }
            }
        }
    }
}

/// Code under which `named_identity` resolves to `id`: its literal text.
fn literal_code(id: &Identity) -> String {
    format!("{}={}", id.lhs, id.rhs)
}

/// Breadth-first search for a deduction of `goal` from `system`, using each
/// identity in both directions, keeping every word within `max_len` letters
/// and at most `max_steps` steps. Successors are explored shortest and then
/// lexicographically least first, so the result is deterministic. Letters
/// of a rule's target missing from its source are instantiated with λ or a
/// single letter of the current word. `None` is inconclusive.
pub fn bounded_derive(
    system: &[Identity],
    goal: &Identity,
    max_len: usize,
    max_steps: usize,
) -> Option<Deduction> {
    let start = goal.lhs.clone();
    if goal.lhs == goal.rhs {
        return Some(Deduction::start(start));
    }
    if start.len() > max_len {
        return None;
    }
    let mut parent: HashMap<Word, (Word, RewriteStep)> = HashMap::new();
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut frontier = vec![start.clone()];
    for _ in 0..max_steps {
        let mut next_frontier = Vec::new();
        for w in &frontier {
            let mut succ = Vec::new();
            for id in system {
                successors(w, id, false, max_len, &mut succ);
                successors(w, id, true, max_len, &mut succ);
            }
            succ.sort_by(|(a, _), (b, _)| (a.len(), a).cmp(&(b.len(), b)));
            for (v, step) in succ {
                if seen.insert(v.clone()) {
                    parent.insert(v.clone(), (w.clone(), step));
                    if v == goal.rhs {
                        return Some(rebuild(&start, &v, &parent));
                    }
                    next_frontier.push(v);
                }
            }
        }
        if next_frontier.is_empty() {
            break;
        }
        frontier = next_frontier;
    }
    None
}

fn rebuild(start: &Word, end: &Word, parent: &HashMap<Word, (Word, RewriteStep)>) -> Deduction {
    let mut words = vec![end.clone()];
    let mut steps = Vec::new();
    let mut cur = end.clone();
    while &cur != start {
        let (prev, step) = &parent[&cur];
        steps.push(step.clone());
        words.push(prev.clone());
        cur = prev.clone();
    }
    words.reverse();
    steps.reverse();
    Deduction { words, steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::phi;
    use crate::word::{id, w};

    fn l(s: &str) -> Letter {
        w(s)[0]
    }

    #[test]
    fn apply_identity_twenty() {
        let step = RewriteStep::new("xyxzx=xyxz", false, Substitution::new(), Word::empty(), Word::empty()).unwrap();
        assert_eq!(apply_step(&w("xyxzx"), &step).unwrap(), w("xyxz"));
        assert!(matches!(apply_step(&w("xyx"), &step), Err(Error::StepMismatch(_))));
    }

    #[test]
    fn apply_sigma2() {
        let xi = Substitution::new()
            .with(l("x"), w("y2"))
            .with(l("t"), Word::empty())
            .with(l("y"), w("x2"))
            .with(l("z"), w("x1"));
        let step = RewriteStep::new("sigma2", false, xi, Word::empty(), Word::empty()).unwrap();
        let out = apply_step(&w("y2 x2 x1 y2 x2"), &step).unwrap();
        assert_eq!(out, w("y2 x2 x1 x2 y2"));
        assert_eq!(apply_step(&out, &step.inverse()).unwrap(), w("y2 x2 x1 y2 x2"));
    }

    #[test]
    fn erasing_substitution_is_identity() {
        let xi = Substitution::new()
            .with(l("x"), Word::empty())
            .with(l("y"), Word::empty())
            .with(l("z"), Word::empty());
        let step = RewriteStep::new("xyxzx=xyxz", false, xi, w("ab"), w("c")).unwrap();
        assert_eq!(apply_step(&w("abc"), &step).unwrap(), w("abc"));
    }

    #[test]
    fn deductions_check() {
        assert!(check_deduction(&Deduction::start(w("xy"))).ok());
        let step = RewriteStep::new("xy=yx", false, Substitution::new(), w("z"), Word::empty()).unwrap();
        let good = Deduction {
            words: vec![w("zxy"), w("zyx")],
            steps: vec![step.clone()],
        };
        assert!(check_deduction(&good).ok());
        let bad = Deduction {
            words: vec![w("zxy"), w("zxx")],
            steps: vec![step],
        };
        assert_eq!(check_deduction(&bad).failures[0].0, 0);
    }

    #[test]
    fn file_format_round_trip() {
        let text = "xxzx\n# id=xyxzx=xyxz xi=x->x,y->1 a=1 b=1\nxxz\n";
        let d = Deduction::parse(text).unwrap();
        assert!(check_deduction(&d).ok());
        let again = Deduction::parse(&d.to_string()).unwrap();
        assert_eq!(again, d);
        assert!(Deduction::parse("x\ny\n").is_err());
        assert!(Deduction::parse("# id=xyxzx=xyxz\nx\n").is_err());
        assert!(Deduction::parse("x\n# id=xyxzx=xyxz\n").is_err());
        assert!(Deduction::parse("x\n# id=nope\ny").is_err());
    }

    #[test]
    fn search_examples() {
        let d = bounded_derive(&phi(), &id("xyx = xyx^2"), 10, 3).unwrap();
        assert_eq!(d.steps.len(), 1);
        assert!(check_deduction(&d).ok());

        let d = bounded_derive(&[id("xy = yx")], &id("xyz = zyx"), 6, 5).unwrap();
        assert!(check_deduction(&d).ok());
        assert_eq!(d.conclusion(), id("xyz = zyx"));
        // ξ(x) = xy, ξ(y) = z gives xyz -> zxy in one step
        assert_eq!(d.steps.len(), 2);

        assert!(bounded_derive(&[id("x^2 = x^3")], &id("x = x^2"), 8, 6).is_none());
        assert_eq!(bounded_derive(&[], &id("xy = xy"), 1, 1).unwrap().steps.len(), 0);
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let xi = Substitution::new().with(l("x"), w("yz")).with(l("y"), Word::empty());
        let (u, v) = (w("xyx"), w("zx"));
        assert_eq!(xi.apply(&u.concat(&v)), xi.apply(&u).concat(&xi.apply(&v)));
        assert_eq!(xi.apply(&Word::empty()), Word::empty());
    }
}
