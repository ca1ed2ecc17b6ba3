//! Text renderings of restrictor grids and depth profiles.

use std::fmt::Write as _;

use crate::decomposition::{Divider, WordProfile};
use crate::word::{Letter, Word};

/// Restrictors `h_1^k, ..., h_occ^k` of one letter at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRow {
    pub letter: Letter,
    pub level: usize,
    /// The stabilization level; the row then stands for every k ≥ `level`.
    pub stable: bool,
    pub values: Vec<Divider>,
}

/// One row per letter (first-occurrence order) and level 0..=stabilization.
pub fn restrictor_grid(w: &Word) -> Vec<GridRow> {
    let p = WordProfile::new(w);
    let top = p.stabilization_level();
    let mut rows = Vec::new();
    for &x in p.letters_in_order() {
        for k in 0..=top {
            rows.push(GridRow {
                letter: x,
                level: k,
                stable: k == top,
                values: (1..=p.occ(x))
                    .map(|i| p.restrictor(x, i, k).expect("occurrence in range"))
                    .collect(),
            });
        }
    }
    rows
}

fn cell(d: &Divider) -> String {
    d.map_or_else(|| "λ".to_string(), |l| l.to_string())
}

/// Aligned text table of [`restrictor_grid`].
pub fn render_grid(rows: &[GridRow]) -> String {
    let width = rows.iter().map(|r| r.values.len()).max().unwrap_or(0);
    let mut table: Vec<Vec<String>> = vec![std::iter::once("letter".to_string())
        .chain(std::iter::once("k".to_string()))
        .chain((1..=width).map(|i| format!("h{i}")))
        .collect()];
    for r in rows {
        let level = if r.stable && r.level > 0 {
            format!(">={}", r.level)
        } else {
            r.level.to_string()
        };
        let mut line = vec![r.letter.to_string(), level];
        line.extend(r.values.iter().map(cell));
        table.push(line);
    }
    let cols = width + 2;
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            table
                .iter()
                .filter_map(|l| l.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for line in &table {
        let mut text = String::new();
        for (c, s) in line.iter().enumerate() {
            let pad = widths[c] - s.chars().count();
            let _ = write!(text, "{s}{}  ", " ".repeat(pad));
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

/// `x:3 y:2 z:1 t:0 s:inf`, letters in first-occurrence order.
pub fn render_depths(w: &Word) -> String {
    let p = WordProfile::new(w);
    p.letters_in_order()
        .iter()
        .map(|&x| format!("{x}:{}", p.depth(x).expect("letter of w")))
        .collect::<Vec<_>>()
        .join(" ")
}
