use monoid_chains::catalog::{alpha, beta, delta, gamma};
use monoid_chains::decomposition::k_decompose;
use monoid_chains::{Depth, Identity, Letter, WordProfile};

fn sides(id: &Identity, k: usize) -> (String, String) {
    (k_decompose(&id.lhs, k).to_string(), k_decompose(&id.rhs, k).to_string())
}

fn expect(id: Identity, k: usize, lhs: &str, rhs: &str) {
    assert_eq!(sides(&id, k), (lhs.to_string(), rhs.to_string()), "{id}");
}

#[test]
fn decompositions_k2() {
    expect(
        alpha(2).unwrap(),
        2,
        "λ·[λ]·x2·[λ]·y2·[λ]·x1·[x2y2]·x0·[x1]",
        "λ·[λ]·y2·[λ]·x2·[λ]·x1·[x2y2]·x0·[x1]",
    );
    expect(
        beta(2).unwrap(),
        2,
        "λ·[x]·x2·[x]·x1·[x2]·x0·[x1]",
        "λ·[λ]·x2·[x^2]·x1·[x2]·x0·[x1]",
    );
    expect(
        gamma(2).unwrap(),
        2,
        "λ·[λ]·y1·[λ]·y0·[λ]·x2·[y1]·x1·[x2]·x0·[x1]",
        "λ·[λ]·y1·[λ]·y0·[y1]·x2·[λ]·x1·[x2]·x0·[x1]",
    );
    expect(
        delta(2, 1).unwrap(),
        2,
        "λ·[λ]·y2·[λ]·y1·[λ]·x2·[y2]·x1·[x2]·x0·[x1y1]",
        "λ·[λ]·y2·[λ]·y1·[y2]·x2·[λ]·x1·[x2]·x0·[x1y1]",
    );
    expect(
        delta(2, 2).unwrap(),
        2,
        "λ·[y3]·y2·[λ]·x2·[y3]·x1·[x2y2]·x0·[x1]",
        "λ·[y3]·y2·[y3]·x2·[λ]·x1·[x2y2]·x0·[x1]",
    );
}

#[test]
fn decompositions_k3() {
    expect(
        alpha(3).unwrap(),
        3,
        "λ·[λ]·x3·[λ]·y3·[λ]·x2·[x3y3]·x1·[x2]·x0·[x1]",
        "λ·[λ]·y3·[λ]·x3·[λ]·x2·[x3y3]·x1·[x2]·x0·[x1]",
    );
    expect(
        beta(3).unwrap(),
        3,
        "λ·[x]·x3·[x]·x2·[x3]·x1·[x2]·x0·[x1]",
        "λ·[λ]·x3·[x^2]·x2·[x3]·x1·[x2]·x0·[x1]",
    );
    expect(
        gamma(3).unwrap(),
        3,
        "λ·[λ]·y1·[λ]·y0·[λ]·x3·[y1]·x2·[x3]·x1·[x2]·x0·[x1]",
        "λ·[λ]·y1·[λ]·y0·[y1]·x3·[λ]·x2·[x3]·x1·[x2]·x0·[x1]",
    );
    expect(
        delta(3, 1).unwrap(),
        3,
        "λ·[λ]·y2·[λ]·y1·[λ]·x3·[y2]·x2·[x3]·x1·[x2]·x0·[x1y1]",
        "λ·[λ]·y2·[λ]·y1·[y2]·x3·[λ]·x2·[x3]·x1·[x2]·x0·[x1y1]",
    );
    expect(
        delta(3, 2).unwrap(),
        3,
        "λ·[λ]·y3·[λ]·y2·[λ]·x3·[y3]·x2·[x3]·x1·[x2y2]·x0·[x1]",
        "λ·[λ]·y3·[λ]·y2·[y3]·x3·[λ]·x2·[x3]·x1·[x2y2]·x0·[x1]",
    );
    expect(
        delta(3, 3).unwrap(),
        3,
        "λ·[y4]·y3·[λ]·x3·[y4]·x2·[x3y3]·x1·[x2]·x0·[x1]",
        "λ·[y4]·y3·[y4]·x3·[λ]·x2·[x3y3]·x1·[x2]·x0·[x1]",
    );
}

fn constructed(k: u32) -> Vec<(String, Identity)> {
    let mut out = vec![
        (format!("alpha{k}"), alpha(k).unwrap()),
        (format!("beta{k}"), beta(k).unwrap()),
        (format!("gamma{k}"), gamma(k).unwrap()),
    ];
    out.extend((1..=k).map(|m| (format!("delta{k}.{m}"), delta(k, m).unwrap())));
    out
}

#[test]
fn depth_equals_index() {
    for k in 1..=4 {
        for (name, id) in constructed(k) {
            for side in [&id.lhs, &id.rhs] {
                let p = WordProfile::new(side);
                for (&x, &d) in p.depths() {
                    if let Some(i) = x.index() {
                        assert_eq!(d, Depth::Finite(i as usize), "{name}: {x} in {side}");
                    }
                }
            }
        }
        let b = beta(k).unwrap();
        let x = Letter::plain('x');
        assert_eq!(WordProfile::new(&b.lhs).depth(x).unwrap(), Depth::Finite(k as usize + 1));
        assert_eq!(WordProfile::new(&b.rhs).depth(x).unwrap(), Depth::Infinite);
    }
}

#[test]
fn sides_of_families_are_balanced() {
    for k in 1..=4 {
        for (name, id) in constructed(k) {
            assert_eq!(id.lhs.occurrences(), id.rhs.occurrences(), "{name}");
            assert!(!id.is_trivial(), "{name}");
        }
    }
}
