//! Bounded enumeration of curves and arcs by normal coordinates.

use std::sync::Arc;

use rayon::prelude::*;

use super::normal::{NormalCurveSystem, TrianglePieces};
use super::triangulation::Triangulation;
use super::{classify_component, ComponentClass};

/// Depth-first search over edge weights `0..=max_weight`, checking each
/// triangle as soon as its last edge is assigned.
fn search(tri: &Triangulation, max_weight: u64, ends: &[u64], first: u64) -> Vec<Vec<u64>> {
    let ne = tri.edge_count();
    // triangles completed by each edge
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for t in 0..tri.triangle_count() {
        let last = (0..3u8).map(|s| tri.edge(t, s)).max().expect("three sides");
        closes[last].push(t);
    }
    let ok = |w: &[u64], t: usize| {
        let ws = [0u8, 1, 2].map(|s| w[tri.edge(t, s)] as usize);
        let es = [0usize, 1, 2].map(|c| ends[3 * t + c] as usize);
        TrianglePieces::solve(ws, es).is_ok()
    };
    let mut out = Vec::new();
    let mut w = vec![0u64; ne];
    w[0] = first;
    fn rec(
        e: usize,
        w: &mut Vec<u64>,
        max_weight: u64,
        closes: &[Vec<usize>],
        ok: &dyn Fn(&[u64], usize) -> bool,
        out: &mut Vec<Vec<u64>>,
    ) {
        if !closes[e].iter().all(|&t| ok(w, t)) {
            return;
        }
        if e + 1 == w.len() {
            out.push(w.clone());
            return;
        }
        for v in 0..=max_weight {
            w[e + 1] = v;
            rec(e + 1, w, max_weight, closes, ok, out);
        }
        w[e + 1] = 0;
    }
    rec(0, &mut w, max_weight, &closes, &ok, &mut out);
    out
}

/// Every connected closed curve with all edge weights at most `max_weight`,
/// keeping those of the requested classes. Sorted by weights.
pub fn enumerate_curves(
    tri: &Arc<Triangulation>,
    max_weight: u64,
    keep: &[ComponentClass],
) -> Vec<NormalCurveSystem> {
    let ends = vec![0u64; 3 * tri.triangle_count()];
    let mut out: Vec<NormalCurveSystem> = (0..=max_weight)
        .into_par_iter()
        .flat_map_iter(|first| search(tri, max_weight, &ends, first))
        .filter(|w| w.iter().any(|&x| x > 0))
        .filter_map(|w| {
            let c = NormalCurveSystem::new(tri.clone(), w).ok()?;
            if c.components().ok()?.len() != 1 {
                return None;
            }
            keep.contains(&classify_component(&c).ok()?).then_some(c)
        })
        .collect();
    out.sort_by(|a, b| a.weights().cmp(b.weights()));
    out
}

/// Every single arc with all edge weights at most `max_weight`, in canonical
/// form, deduplicated and sorted.
pub fn enumerate_arcs(tri: &Arc<Triangulation>, max_weight: u64) -> Vec<NormalCurveSystem> {
    let corners = 3 * tri.triangle_count();
    let pairs: Vec<(usize, usize)> = (0..corners).flat_map(|a| (a..corners).map(move |b| (a, b))).collect();
    let mut out: Vec<NormalCurveSystem> = pairs
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let mut ends = vec![0u64; corners];
            ends[a] += 1;
            ends[b] += 1;
            (0..=max_weight)
                .flat_map(|first| search(tri, max_weight, &ends, first))
                .filter_map(|w| {
                    let c = NormalCurveSystem::with_ends(tri.clone(), w, ends.clone()).ok()?;
                    if c.components().ok()?.len() != 1 {
                        return None;
                    }
                    c.canonical().ok()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| (a.weights(), a.ends()).cmp(&(b.weights(), b.ends())));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::standard_triangulation;

    #[test]
    fn torus_curves_are_primitive_slopes() {
        let t = Arc::new(standard_triangulation(1, 1).unwrap());
        let cs = enumerate_curves(&t, 3, &[ComponentClass::Essential]);
        // on the punctured torus every connected normal curve is a slope
        // (|q|, |p|, |p - q|) with gcd(p, q) = 1
        for c in &cs {
            let w = c.weights();
            assert!(w[0] + w[1] == w[2] || w[0] + w[2] == w[1] || w[1] + w[2] == w[0]);
        }
        // slopes with max(|p|, |q|, |p - q|) <= 3
        assert_eq!(cs.len(), 12);
    }

    #[test]
    fn arcs_include_edges() {
        let t = Arc::new(standard_triangulation(1, 1).unwrap());
        let arcs = enumerate_arcs(&t, 0);
        assert_eq!(arcs.len(), 3);
    }
}
