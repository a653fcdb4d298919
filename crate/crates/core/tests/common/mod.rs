#![allow(dead_code)]

use std::path::PathBuf;

use curvechain::Surface;

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Cells with a stored cyclic-chain witness of maximal length.
pub fn cyclic_cells() -> Vec<(Surface, u64)> {
    let mut v = Vec::new();
    for p in 5..=8 {
        v.push((Surface::punctured(0, p), p as u64));
    }
    v.push((Surface::punctured(1, 1), 3));
    v.push((Surface::punctured(1, 2), 5));
    for p in 3..=5 {
        v.push((Surface::punctured(1, p), p as u64 + 2));
    }
    for g in 2..=3 {
        v.push((Surface::punctured(g, 1), 2 * g as u64 + 2));
        v.push((Surface::punctured(g, 2), 2 * g as u64 + 3));
        for p in 3..=4 {
            v.push((Surface::punctured(g, p), (2 * g + p) as u64));
        }
    }
    v
}

/// Cells with a stored join witness.
pub fn join_cells() -> Vec<(Surface, u64)> {
    vec![(Surface::punctured(2, 0), 5), (Surface::punctured(0, 6), 5), (Surface::punctured(1, 3), 5)]
}

pub fn stem(kind: &str, s: Surface, m: u64) -> String {
    format!("{kind}_g{}_p{}_m{m}", s.genus, s.punctures)
}
