//! Curves and arcs on punctured surfaces in normal coordinates.
//!
//! Surfaces are `S_{g,p}` with `p >= 1`, carried by an ideal triangulation.
//! Arcs end at punctures; isotopies move punctures setwise, so arc ends may
//! slide around their puncture. Bordered surfaces are handled through the
//! curve-graph normal form, boundary circles becoming punctures.

mod enumerate;
mod io;
mod normal;
mod overlay;
mod triangulation;
mod words;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use enumerate::{enumerate_arcs, enumerate_curves};
pub use io::{parse_ncs, write_ncs, CurveFile};
pub use normal::{Layout, NormalCurveSystem, TrianglePieces};
pub use triangulation::{standard_polygon_word, standard_triangulation, Side, Triangulation};
pub use words::{arc_from_turns, curve_from_turns, curve_from_word, cyclic_reduce, edge_arc, Turn};

use crate::error::{Error, Result};
use crate::surface::Surface;
use overlay::{region_boundaries, Overlay};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentClass {
    Essential,
    Peripheral,
    Trivial,
    Arc,
}

impl ComponentClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ComponentClass::Essential => "essential",
            ComponentClass::Peripheral => "peripheral",
            ComponentClass::Trivial => "trivial",
            ComponentClass::Arc => "arc",
        }
    }
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Minimal number of interior intersections between `a` and `b`.
///
/// Both systems are drawn in normal position, then bigons (and, for arcs,
/// half-bigons at a puncture) are removed until none are left.
pub fn geometric_intersection(a: &NormalCurveSystem, b: &NormalCurveSystem) -> Result<u64> {
    if !a.same_triangulation(b) {
        return Err(Error::IncompatibleTriangulation);
    }
    let mut ov = Overlay::new(a, b)?;
    Ok(ov.minimize() as u64)
}

/// Symmetric matrix of pairwise intersection numbers, diagonal zero.
pub fn intersection_matrix(curves: &[NormalCurveSystem]) -> Result<Vec<Vec<u64>>> {
    use rayon::prelude::*;
    let k = curves.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let vals: Vec<Result<u64>> = pairs
        .par_iter()
        .map(|&(i, j)| geometric_intersection(&curves[i], &curves[j]))
        .collect();
    let mut m = vec![vec![0u64; k]; k];
    for (&(i, j), v) in pairs.iter().zip(vals) {
        let v = v?;
        m[i][j] = v;
        m[j][i] = v;
    }
    Ok(m)
}

/// Complementary pieces of a regular neighborhood of a disjoint system,
/// each as `S_h^k` with every hole (puncture or cut circle) counted as
/// boundary. Sorted.
fn complement_pieces(sys: &NormalCurveSystem) -> Result<Vec<Surface>> {
    let empty = NormalCurveSystem::empty(sys.triangulation().clone());
    let ov = Overlay::new(sys, &empty)?;
    let built = ov.build();
    let bounds = region_boundaries(&built);
    let mut out = Vec::new();
    for (r, b) in built.regions.iter().zip(&bounds) {
        let nb = b.len() as i64;
        let twice_h = 2 - nb - r.chi();
        if twice_h < 0 || twice_h % 2 != 0 {
            return Err(Error::Invalid(format!("region with chi {} and {nb} boundary circles", r.chi())));
        }
        out.push(Surface::bordered((twice_h / 2) as u32, nb as u32));
    }
    out.sort();
    Ok(out)
}

/// Cuts along a family of pairwise disjoint components.
pub fn cut_system(components: &[NormalCurveSystem]) -> Result<Vec<Surface>> {
    let Some(first) = components.first() else {
        return Err(Error::Invalid("nothing to cut along".into()));
    };
    let mut total = NormalCurveSystem::empty(first.triangulation().clone());
    for (i, c) in components.iter().enumerate() {
        c.validate()?;
        for (j, d) in components.iter().enumerate().skip(i + 1) {
            if geometric_intersection(c, d)? > 0 {
                return Err(Error::NotDisjoint(i, j));
            }
        }
        total = total.sum(c)?;
    }
    complement_pieces(&total)
}

/// Classifies one connected component by the pieces it cuts off.
pub fn classify_component(c: &NormalCurveSystem) -> Result<ComponentClass> {
    if c.has_arcs() {
        return Ok(ComponentClass::Arc);
    }
    let pieces = complement_pieces(c)?;
    if pieces.contains(&Surface::bordered(0, 1)) {
        Ok(ComponentClass::Trivial)
    } else if pieces.contains(&Surface::bordered(0, 2)) {
        Ok(ComponentClass::Peripheral)
    } else {
        Ok(ComponentClass::Essential)
    }
}

/// Equal normal coordinates, after moving edge-parallel arcs to a fixed side.
pub fn is_isotopic(a: &NormalCurveSystem, b: &NormalCurveSystem) -> Result<bool> {
    if !a.same_triangulation(b) {
        return Err(Error::IncompatibleTriangulation);
    }
    Ok(a.canonical()? == b.canonical()?)
}
