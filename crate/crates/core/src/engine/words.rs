//! Curves and arcs from combinatorial paths.
//!
//! A closed curve on the standard triangulation can be given as a cyclic word
//! in the polygon side labels: each letter says through which side the curve
//! leaves the polygon, re-entering through the paired side. Any triangulation
//! also accepts turn sequences, walking the dual graph directly.

use std::collections::HashMap;
use std::sync::Arc;

use super::normal::NormalCurveSystem;
use super::triangulation::{standard_polygon_word, standard_signed_sides, Side, Triangulation};
use crate::error::{Error, Result};

/// Turn taken when crossing a triangle entered through side `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    /// Leave through side `s + 2`.
    Left,
    /// Leave through side `s + 1`.
    Right,
}

fn exit_side(s: u8, turn: Turn) -> u8 {
    match turn {
        Turn::Right => (s + 1) % 3,
        Turn::Left => (s + 2) % 3,
    }
}

/// Freely and cyclically reduces a word.
pub fn cyclic_reduce(word: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for &x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == -out[j - 1] {
        i += 1;
        j -= 1;
    }
    out[i..j].to_vec()
}

/// Whether `b` traces the same closed dual path as `a`, in either direction.
fn same_cycle(tri: &Triangulation, a: &[Side], b: &[Side]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    if n == 0 {
        return true;
    }
    // reversed traversal leaves through the partner sides in reverse order
    let rev: Vec<Side> = b.iter().rev().map(|&(t, s)| tri.partner(t, s)).collect();
    (0..n).any(|r| (0..n).all(|i| a[i] == b[(i + r) % n]) || (0..n).all(|i| a[i] == rev[(i + r) % n]))
}

/// Checks the dual path `seq` of exit sides is one simple closed curve.
fn simple_curve(tri: &Arc<Triangulation>, seq: &[Side]) -> Result<NormalCurveSystem> {
    let mut w = vec![0u64; tri.edge_count()];
    for &(t, s) in seq {
        w[tri.edge(t, s)] += 1;
    }
    let sys = NormalCurveSystem::new(tri.clone(), w)?;
    sys.validate().map_err(|e| Error::Invalid(format!("path is not normal: {e}")))?;
    let comps = sys.components()?;
    if comps.len() != 1 {
        return Err(Error::Invalid(format!("path is not simple: {} components", comps.len())));
    }
    if !same_cycle(tri, &sys.side_sequence()?, seq) {
        return Err(Error::Invalid("path is not simple: traced curve differs".into()));
    }
    Ok(sys)
}

/// Closed curve from a cyclic word on the standard triangulation.
///
/// Letters are the labels of [`standard_polygon_word`]; letter `x` leaves the
/// polygon through the side labelled `x`.
pub fn curve_from_word(tri: &Arc<Triangulation>, word: &[i64]) -> Result<NormalCurveSystem> {
    let s = tri.surface();
    if Triangulation::from_signed_sides(&standard_signed_sides(s.genus, s.punctures))? != **tri {
        return Err(Error::BadParameter("words need the standard triangulation".into()));
    }
    let poly = standard_polygon_word(s.genus, s.punctures);
    let n = poly.len();
    // polygon side i as a triangle side of the fan
    let side_at = |i: usize| -> Side {
        if i == 0 {
            (0, 0)
        } else if i == n - 1 {
            (n - 3, 2)
        } else {
            (i - 1, 1)
        }
    };
    let side_of: HashMap<i64, usize> = poly.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let word = cyclic_reduce(word);
    if word.is_empty() {
        return Err(Error::Invalid("word reduces to the trivial loop".into()));
    }
    for x in &word {
        if !side_of.contains_key(x) {
            return Err(Error::BadParameter(format!("letter {x} is not a side label")));
        }
    }
    let mut seq = Vec::new();
    for k in 0..word.len() {
        let prev = word[(k + word.len() - 1) % word.len()];
        let entry = side_of[&-prev];
        let exit = side_of[&word[k]];
        // diagonal j separates triangles j - 2 and j - 1
        if entry < exit {
            for j in (entry + 1..=exit).filter(|j| (2..=n - 2).contains(j)) {
                seq.push((j - 2, 2));
            }
        } else {
            for j in (exit + 1..=entry).rev().filter(|j| (2..=n - 2).contains(j)) {
                seq.push((j - 1, 0));
            }
        }
        seq.push(side_at(exit));
    }
    simple_curve(tri, &seq)
}

/// Closed curve entering triangle `start.0` through side `start.1` and
/// following `turns`; the last turn must lead back to the start.
pub fn curve_from_turns(tri: &Arc<Triangulation>, start: (usize, u8), turns: &[Turn]) -> Result<NormalCurveSystem> {
    let (mut t, mut s) = start;
    let mut seq = Vec::new();
    for &turn in turns {
        let out = exit_side(s, turn);
        seq.push((t, out));
        (t, s) = tri.partner(t, out);
    }
    if (t, s) != start {
        return Err(Error::Invalid("turn sequence does not close up".into()));
    }
    simple_curve(tri, &seq)
}

/// Arc leaving the puncture at corner `start` through the opposite side,
/// taking `turns`, and ending at the corner opposite the last side crossed.
pub fn arc_from_turns(tri: &Arc<Triangulation>, start: (usize, u8), turns: &[Turn]) -> Result<NormalCurveSystem> {
    let (t0, c0) = start;
    let mut w = vec![0u64; tri.edge_count()];
    let mut ends = vec![0u64; 3 * tri.triangle_count()];
    ends[3 * t0 + c0 as usize] += 1;
    let first = (c0 + 1) % 3;
    w[tri.edge(t0, first)] += 1;
    let (mut t, mut s) = tri.partner(t0, first);
    for &turn in turns {
        let out = exit_side(s, turn);
        w[tri.edge(t, out)] += 1;
        (t, s) = tri.partner(t, out);
    }
    ends[3 * t + ((s + 2) % 3) as usize] += 1;
    let sys = NormalCurveSystem::with_ends(tri.clone(), w, ends)?;
    sys.validate().map_err(|e| Error::Invalid(format!("path is not normal: {e}")))?;
    let comps = sys.components()?;
    if comps.len() != 1 {
        return Err(Error::Invalid(format!("arc is not simple: {} components", comps.len())));
    }
    Ok(sys)
}

/// Arc running along the edge on side `side` of a triangle.
pub fn edge_arc(tri: &Arc<Triangulation>, side: (usize, u8)) -> Result<NormalCurveSystem> {
    let (t, c) = side;
    let mut ends = vec![0u64; 3 * tri.triangle_count()];
    ends[3 * t + c as usize] += 1;
    ends[3 * t + ((c + 1) % 3) as usize] += 1;
    NormalCurveSystem::with_ends(tri.clone(), vec![0; tri.edge_count()], ends)?.canonical()
}
