//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use curvechain::engine::{standard_triangulation, NormalCurveSystem};
use curvechain::graph::{complement, cycle};
use curvechain::FiniteGraph;

/// Curves of slope `p/q` on the once-punctured torus.
pub fn torus_slope(p: i64, q: i64) -> NormalCurveSystem {
    let t = Arc::new(standard_triangulation(1, 1).expect("torus"));
    let det = |a: i64, b: i64| (p * b - q * a).unsigned_abs();
    NormalCurveSystem::new(t, vec![det(1, 0), det(0, 1), det(1, 1)]).expect("slope weights")
}

/// `C_m^c`.
pub fn cycle_complement(m: usize) -> FiniteGraph {
    complement(&cycle(m).expect("m >= 3"))
}
