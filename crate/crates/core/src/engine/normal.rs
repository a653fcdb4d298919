use std::sync::Arc;

use super::triangulation::{Side, Triangulation};
use crate::error::{Error, Result};

/// Multicurve, possibly with arc components, in normal position with respect
/// to an ideal triangulation.
///
/// `weights[e]` counts crossings with edge `e`. `ends[3t + c]` counts arc
/// endpoints leaving the puncture at corner `c` of triangle `t`; per-corner
/// counts are needed because the puncture alone does not fix the arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalCurveSystem {
    tri: Arc<Triangulation>,
    weights: Vec<u64>,
    ends: Vec<u64>,
}

/// Normal pieces inside one triangle.
///
/// `n[c]` arcs cut off corner `c`; `tau[c]` arcs run from the puncture at
/// corner `c` to the opposite side `c + 1`; `kap[c]` arcs run along side `c`
/// from corner `c` to corner `c + 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrianglePieces {
    pub w: [usize; 3],
    pub e: [usize; 3],
    pub n: [usize; 3],
    pub tau: [usize; 3],
    pub kap: [usize; 3],
}

/// Interval of the truncated triangle boundary, in counterclockwise order
/// `K0 S0 K1 S1 K2 S2`: `K_c = 2c` is the stretch of puncture circle at
/// corner `c`, `S_c = 2c + 1` is side `c`.
pub type Interval = u8;

pub fn k_iv(c: usize) -> Interval {
    (2 * (c % 3)) as Interval
}

pub fn s_iv(c: usize) -> Interval {
    (2 * (c % 3) + 1) as Interval
}

/// End of a chord: interval and index in counterclockwise order.
pub type ChordEnd = (Interval, usize);

impl TrianglePieces {
    pub(crate) fn solve(w: [usize; 3], e: [usize; 3]) -> std::result::Result<Self, String> {
        let mut tau = [0usize; 3];
        for j in 0..3 {
            let (a, b, c) = (w[j], w[(j + 1) % 3], w[(j + 2) % 3]);
            if b > a + c {
                tau[j] = b - a - c;
            }
        }
        let wsum: usize = w.iter().sum::<usize>() - tau.iter().sum::<usize>();
        if !wsum.is_multiple_of(2) {
            return Err(format!("weights {w:?} have odd sum with no terminal to absorb it"));
        }
        let mut n = [0usize; 3];
        for c in 0..3 {
            let s_next = w[(c + 1) % 3] as i64 - tau[c] as i64;
            let v = wsum as i64 / 2 - s_next;
            if v < 0 {
                return Err(format!("weights {w:?} give negative corner count at corner {c}"));
            }
            n[c] = v as usize;
        }
        let mut r = [0i64; 3];
        for c in 0..3 {
            r[c] = e[c] as i64 - tau[c] as i64;
            if r[c] < 0 {
                return Err(format!(
                    "corner {c} needs {} arc ends for weights {w:?}, has {}",
                    tau[c], e[c]
                ));
            }
        }
        let rsum: i64 = r.iter().sum();
        if rsum % 2 != 0 {
            return Err(format!("arc ends {e:?} do not pair up along sides"));
        }
        let mut kap = [0usize; 3];
        for c in 0..3 {
            let v = rsum / 2 - r[(c + 2) % 3];
            if v < 0 {
                return Err(format!("arc ends {e:?} give negative count along side {c}"));
            }
            kap[c] = v as usize;
            if v > 0 && w[c] > 0 {
                return Err(format!("arc along side {c} would cross {} strands", w[c]));
            }
        }
        Ok(TrianglePieces { w, e, n, tau, kap })
    }

    /// All chords of the triangle, each as two ends in its interval order.
    pub fn chords(&self) -> Vec<(ChordEnd, ChordEnd)> {
        let mut out = Vec::new();
        for c in 0..3 {
            let p = (c + 2) % 3;
            let nc = self.n[c];
            for j in 0..nc {
                out.push(((s_iv(p), self.w[p] - nc + j), (s_iv(c), nc - 1 - j)));
            }
            let t = self.tau[c];
            let k0 = self.kap[p];
            let s0 = self.n[(c + 1) % 3];
            for j in 0..t {
                out.push(((k_iv(c), k0 + j), (s_iv(c + 1), s0 + t - 1 - j)));
            }
            let q = self.kap[c];
            let start = k0 + t;
            for j in 0..q {
                out.push(((k_iv(c), start + j), (k_iv(c + 1), q - 1 - j)));
            }
        }
        out
    }

    pub fn count(&self, iv: Interval) -> usize {
        let c = (iv / 2) as usize;
        if iv.is_multiple_of(2) {
            self.e[c]
        } else {
            self.w[c]
        }
    }
}

/// Per-triangle decomposition of a valid system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub pieces: Vec<TrianglePieces>,
}

impl NormalCurveSystem {
    /// Closed multicurve from edge weights.
    pub fn new(tri: Arc<Triangulation>, weights: Vec<u64>) -> Result<Self> {
        let n = 3 * tri.triangle_count();
        Self::with_ends(tri, weights, vec![0; n])
    }

    pub fn with_ends(tri: Arc<Triangulation>, weights: Vec<u64>, ends: Vec<u64>) -> Result<Self> {
        if weights.len() != tri.edge_count() {
            return Err(Error::Invalid(format!(
                "expected {} edge weights, got {}",
                tri.edge_count(),
                weights.len()
            )));
        }
        if ends.len() != 3 * tri.triangle_count() {
            return Err(Error::Invalid(format!(
                "expected {} corner end counts, got {}",
                3 * tri.triangle_count(),
                ends.len()
            )));
        }
        Ok(NormalCurveSystem { tri, weights, ends })
    }

    pub fn empty(tri: Arc<Triangulation>) -> Self {
        let (e, t) = (tri.edge_count(), tri.triangle_count());
        NormalCurveSystem { tri, weights: vec![0; e], ends: vec![0; 3 * t] }
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn ends(&self) -> &[u64] {
        &self.ends
    }

    pub fn is_empty(&self) -> bool {
        self.weights.iter().all(|&w| w == 0) && self.ends.iter().all(|&e| e == 0)
    }

    pub fn has_arcs(&self) -> bool {
        self.ends.iter().any(|&e| e > 0)
    }

    /// Number of arc components.
    pub fn arc_count(&self) -> u64 {
        self.ends.iter().sum::<u64>() / 2
    }

    /// Punctures hit by arc endpoints, with multiplicity.
    pub fn end_punctures(&self) -> Vec<(usize, u64)> {
        let mut per = vec![0u64; self.tri.vertex_count()];
        for (k, &e) in self.ends.iter().enumerate() {
            per[self.tri.vertex(k / 3, (k % 3) as u8)] += e;
        }
        per.into_iter().enumerate().filter(|&(_, c)| c > 0).collect()
    }

    pub fn same_triangulation(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tri, &other.tri) || *self.tri == *other.tri
    }

    /// Coordinatewise sum; a union when the systems are disjoint.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if !self.same_triangulation(other) {
            return Err(Error::IncompatibleTriangulation);
        }
        let weights = self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect();
        let ends = self.ends.iter().zip(&other.ends).map(|(a, b)| a + b).collect();
        Ok(NormalCurveSystem { tri: self.tri.clone(), weights, ends })
    }

    pub fn scaled(&self, k: u64) -> Self {
        NormalCurveSystem {
            tri: self.tri.clone(),
            weights: self.weights.iter().map(|w| w * k).collect(),
            ends: self.ends.iter().map(|e| e * k).collect(),
        }
    }

    fn side_weight(&self, t: usize, s: u8) -> usize {
        self.weights[self.tri.edge(t, s)] as usize
    }

    /// Checks matching and the corner equations in every triangle, reporting
    /// the first failure.
    pub fn validate(&self) -> Result<()> {
        self.layout().map(|_| ())
    }

    pub fn layout(&self) -> Result<Layout> {
        let mut pieces = Vec::with_capacity(self.tri.triangle_count());
        for t in 0..self.tri.triangle_count() {
            let w = [self.side_weight(t, 0), self.side_weight(t, 1), self.side_weight(t, 2)];
            let e = [self.ends[3 * t] as usize, self.ends[3 * t + 1] as usize, self.ends[3 * t + 2] as usize];
            let p = TrianglePieces::solve(w, e).map_err(|m| Error::Invalid(format!("triangle {t}: {m}")))?;
            pieces.push(p);
        }
        Ok(Layout { pieces })
    }

    /// Moves every arc that runs along an edge to the edge's first side, so
    /// equal isotopy classes get equal coordinates.
    pub fn canonical(&self) -> Result<Self> {
        let lay = self.layout()?;
        let mut ends = self.ends.clone();
        for (t, p) in lay.pieces.iter().enumerate() {
            for c in 0..3u8 {
                let q = p.kap[c as usize] as u64;
                if q == 0 || self.tri.is_canonical_side(t, c) {
                    continue;
                }
                let (u, r) = self.tri.partner(t, c);
                ends[3 * t + c as usize] -= q;
                ends[3 * t + ((c + 1) % 3) as usize] -= q;
                ends[3 * u + r as usize] += q;
                ends[3 * u + ((r + 1) % 3) as usize] += q;
            }
        }
        Ok(NormalCurveSystem { tri: self.tri.clone(), weights: self.weights.clone(), ends })
    }

    /// Index of the point of side `(t, s)` at local position `i` in the
    /// edge's canonical order.
    pub(crate) fn canonical_index(&self, t: usize, s: u8, i: usize) -> usize {
        if self.tri.is_canonical_side(t, s) {
            i
        } else {
            self.side_weight(t, s) - 1 - i
        }
    }

    /// Splits into connected components, ordered by their first point.
    pub fn components(&self) -> Result<Vec<NormalCurveSystem>> {
        let lay = self.layout()?;
        let tri = &self.tri;
        let mut edge_off = Vec::with_capacity(tri.edge_count() + 1);
        let mut acc = 0usize;
        for &w in &self.weights {
            edge_off.push(acc);
            acc += w as usize;
        }
        let mut corner_off = Vec::with_capacity(self.ends.len());
        for &e in &self.ends {
            corner_off.push(acc);
            acc += e as usize;
        }
        let total = acc;
        let mut uf = UnionFind::new(total);
        let id = |t: usize, (iv, i): ChordEnd| -> usize {
            let c = (iv / 2) as usize;
            if iv % 2 == 0 {
                corner_off[3 * t + c] + i
            } else {
                edge_off[tri.edge(t, c as u8)] + self.canonical_index(t, c as u8, i)
            }
        };
        for (t, p) in lay.pieces.iter().enumerate() {
            for (x, y) in p.chords() {
                uf.union(id(t, x), id(t, y));
            }
        }
        let mut root_index = std::collections::HashMap::new();
        let mut comps: Vec<NormalCurveSystem> = Vec::new();
        for e in 0..tri.edge_count() {
            for i in 0..self.weights[e] as usize {
                let r = uf.find(edge_off[e] + i);
                let k = *root_index.entry(r).or_insert_with(|| {
                    comps.push(NormalCurveSystem::empty(tri.clone()));
                    comps.len() - 1
                });
                comps[k].weights[e] += 1;
            }
        }
        for k in 0..self.ends.len() {
            for i in 0..self.ends[k] as usize {
                let r = uf.find(corner_off[k] + i);
                let idx = *root_index.entry(r).or_insert_with(|| {
                    comps.push(NormalCurveSystem::empty(tri.clone()));
                    comps.len() - 1
                });
                comps[idx].ends[k] += 1;
            }
        }
        Ok(comps)
    }

    /// Cyclic or linear sequence of edges crossed by a single component.
    pub fn edge_sequence(&self) -> Result<Vec<usize>> {
        Ok(self.side_sequence()?.into_iter().map(|(t, s)| self.tri.edge(t, s)).collect())
    }

    /// Like [`Self::edge_sequence`], but records the side each crossing
    /// leaves through, so the path in the dual graph is determined.
    pub fn side_sequence(&self) -> Result<Vec<Side>> {
        let lay = self.layout()?;
        let tri = &self.tri;
        // walk: from a side point, go through the triangle, cross the edge
        let mut start: Option<(usize, u8, usize)> = None;
        for (k, &e) in self.ends.iter().enumerate() {
            if e > 0 {
                // arc: find the chord from this corner
                let t = k / 3;
                let c = (k % 3) as Interval;
                for (x, y) in lay.pieces[t].chords() {
                    for (a, b) in [(x, y), (y, x)] {
                        if a.0 == 2 * c {
                            if b.0 % 2 == 0 {
                                return Ok(vec![]);
                            }
                            start = Some((t, b.0 / 2, b.1));
                        }
                    }
                    if start.is_some() {
                        break;
                    }
                }
                break;
            }
        }
        if start.is_none() {
            'outer: for (t, p) in lay.pieces.iter().enumerate() {
                for (x, y) in p.chords() {
                    if x.0 % 2 == 1 && y.0 % 2 == 1 {
                        start = Some((t, y.0 / 2, y.1));
                        break 'outer;
                    }
                }
            }
        }
        let Some((t0, s0, i0)) = start else { return Ok(vec![]) };
        let chord_maps: Vec<std::collections::HashMap<ChordEnd, ChordEnd>> = lay
            .pieces
            .iter()
            .map(|p| {
                let mut m = std::collections::HashMap::new();
                for (x, y) in p.chords() {
                    m.insert(x, y);
                    m.insert(y, x);
                }
                m
            })
            .collect();
        let mut seq = Vec::new();
        let (mut t, mut s, mut i) = (t0, s0, i0);
        loop {
            seq.push((t, s));
            let (u, r) = tri.partner(t, s);
            let w = self.side_weight(t, s);
            let j = w - 1 - i;
            let &(iv, k) = chord_maps[u].get(&(s_iv(r as usize), j)).expect("every side point has a chord");
            if iv % 2 == 0 {
                break;
            }
            t = u;
            s = iv / 2;
            i = k;
            if (t, s, i) == (t0, s0, i0) {
                break;
            }
            if seq.len() > self.weights.iter().sum::<u64>() as usize + 1 {
                return Err(Error::Invalid("component tracing did not close up".into()));
            }
        }
        Ok(seq)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let n = self.parent[y];
            self.parent[y] = r;
            y = n;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
