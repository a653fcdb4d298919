//! Maximal lengths of chains, triples and quadruples as total functions of
//! the surface.
//!
//! Surfaces are read in curve-graph normal form: boundary circles count as
//! punctures. Rows that the source tables do not cover come back as
//! [`BoundKind::OutOfPaperRange`] instead of being extrapolated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{as_curve_graph_surface, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Exact,
    UpperOnly,
    NoneExists,
    OutOfPaperRange,
    ImportedUpper,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::UpperOnly => "upper-only",
            BoundKind::NoneExists => "none-exists",
            BoundKind::OutOfPaperRange => "out-of-paper-range",
            BoundKind::ImportedUpper => "imported-upper",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub kind: BoundKind,
    pub value: Option<u64>,
    pub citation: String,
}

impl Bound {
    fn exact(v: i64, citation: impl Into<String>) -> Self {
        Bound { kind: BoundKind::Exact, value: Some(v as u64), citation: citation.into() }
    }

    fn upper(v: i64, citation: impl Into<String>) -> Self {
        Bound { kind: BoundKind::UpperOnly, value: Some(v as u64), citation: citation.into() }
    }

    fn imported(v: i64, citation: impl Into<String>) -> Self {
        Bound { kind: BoundKind::ImportedUpper, value: Some(v as u64), citation: citation.into() }
    }

    fn none_exists(citation: impl Into<String>) -> Self {
        Bound { kind: BoundKind::NoneExists, value: None, citation: citation.into() }
    }

    fn out_of_range(citation: impl Into<String>) -> Self {
        Bound { kind: BoundKind::OutOfPaperRange, value: None, citation: citation.into() }
    }

    /// True when a structure of length `m` is ruled out by this bound.
    pub fn excludes(&self, m: u64) -> bool {
        match self.kind {
            BoundKind::NoneExists => true,
            BoundKind::OutOfPaperRange => false,
            _ => m > self.value.expect("valued kinds carry a value"),
        }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value {
            Some(v) => write!(f, "{} {} ({})", self.kind.as_str(), v, self.citation),
            None => write!(f, "{} ({})", self.kind.as_str(), self.citation),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleVariant {
    Plain,
    /// Condition (*): the end arcs share no boundary component.
    Star,
    /// The arc `delta_2` has both ends on one boundary component.
    RecursiveEnd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathMode {
    /// Bound on the path length `m` when the clique is `K_2`.
    K2Fixed,
    /// Bound on the clique size when the path complement is `P_{2g+p+1}^c`.
    Path2gp1,
    /// Bound on the clique size when the path complement is `P_{2g+p}^c`.
    Path2gp,
}

fn gp(s: Surface) -> (i64, i64) {
    let n = as_curve_graph_surface(s);
    (n.genus as i64, n.punctures as i64)
}

const CYCLIC: &str = "Lemma cyclic_full_subgraph";
const CYCLIC_K1: &str = "Lemma cyclic_plus_full_subgraph";

/// Longest cyclic chain, i.e. the largest `m` with `C_m^c` a full subgraph of
/// the curve graph. Only lengths `m >= 3` are meaningful.
pub fn max_cyclic_chain(s: Surface) -> Bound {
    let (g, p) = gp(s);
    match (g, p) {
        (0, p) if p >= 5 => Bound::exact(p, format!("{CYCLIC}, row p (g=0, p>=5); m>=3")),
        (1, 1) => Bound::exact(3, format!("{CYCLIC}, row 3 ((g,p)=(1,1)); m>=3")),
        (1, 2) => Bound::exact(5, format!("{CYCLIC}, row 5 ((g,p)=(1,2)); m>=3")),
        (1, p) if p >= 3 => Bound::exact(p + 2, format!("{CYCLIC}, row p+2 (g=1, p>=3); m>=3")),
        (g, 0) if g >= 2 => Bound::exact(2 * g + 2, format!("{CYCLIC}, row 2g+2 (g>=2, p=0); m>=3")),
        (g, p) if g >= 2 && p <= 2 => {
            Bound::exact(2 * g + p + 1, format!("{CYCLIC}, row 2g+p+1 (g>=2, 1<=p<=2); m>=3"))
        }
        (g, p) if g >= 2 => Bound::exact(2 * g + p, format!("{CYCLIC}, row 2g+p (g>=2, p>=3); m>=3")),
        _ => Bound::out_of_range(format!(
            "{CYCLIC}: no row covers (g,p)=({g},{p}); nearest rows start at (0,5) and (1,1)"
        )),
    }
}

/// Largest `m` with `C_m^c * K_1` a full subgraph of the curve graph.
pub fn max_cyclic_join_k1(s: Surface) -> Bound {
    let (g, p) = gp(s);
    match (g, p) {
        (0, 5) | (1, 2) => Bound::exact(3, format!("{CYCLIC_K1}, row 3 ((g,p) in {{(0,5),(1,2)}})")),
        (0, p) if p >= 6 => Bound::exact(p - 1, format!("{CYCLIC_K1}, row p-1 (g=0, p>=6)")),
        (1, p) if p >= 3 => Bound::exact(p + 2, format!("{CYCLIC_K1}, row p+2 (g=1, p>=3)")),
        (g, 0) if g >= 2 => Bound::exact(2 * g + 1, format!("{CYCLIC_K1}, row 2g+1 (g>=2, p=0)")),
        (g, p) if g >= 2 => Bound::exact(2 * g + p, format!("{CYCLIC_K1}, row 2g+p (g>=2, p>=1)")),
        _ => Bound::out_of_range(format!("{CYCLIC_K1}: no row covers (g,p)=({g},{p})")),
    }
}

pub fn max_chained_triple(s: Surface, variant: TripleVariant) -> Bound {
    let (g, p) = gp(s);
    match variant {
        TripleVariant::Plain => match (g, p) {
            (0, 3) => Bound::upper(0, "Lemma triple_03, m = 0"),
            (0, p) if p >= 4 => Bound::upper(p - 2, "Lemma triple_0p, m <= p-2"),
            (1, 1) => Bound::upper(2, "Lemma triple_11, m <= 2"),
            (1, 2) => Bound::upper(3, "Remark hyp_ext_ch_tr, m <= 3"),
            (1, p) if p >= 3 => Bound::upper(p, "Lemma triple_1p, m <= p"),
            (g, p) if g >= 2 && (p == 1 || p == 2) => {
                Bound::upper(2 * g + p - 1, "Lemma triple_gp, m <= 2g+p-1 (p in {1,2})")
            }
            (g, p) if g >= 2 && p >= 3 => Bound::upper(2 * g + p - 2, "Lemma triple_gp, m <= 2g+p-2 (p>=3)"),
            _ => Bound::out_of_range(format!("chained triples: no row covers (g,p)=({g},{p})")),
        },
        TripleVariant::Star => match (g, p) {
            (0, 2) | (0, 3) => Bound::none_exists("Lemma pre_induction, no chained triple satisfying (*)"),
            (0, 4) => Bound::upper(1, "Lemma induction_start, m <= 1"),
            (0, p) if p >= 5 => Bound::upper(p - 3, "Lemma sep_triple_0p, m <= p-3"),
            (1, 2) => Bound::upper(2, "Lemma star_trple_12, m <= 2"),
            _ => Bound::out_of_range(format!("star triples: no row covers (g,p)=({g},{p})")),
        },
        TripleVariant::RecursiveEnd => match (g, p) {
            (1, 2) => Bound::upper(2, "Lemma R_trple_12, m <= 2"),
            (g, 2) if g >= 2 => Bound::upper(2 * g, "Lemma triple_gp, m <= 2g with delta_2 recursive"),
            _ => Bound::out_of_range(format!("recursive-end triples: no row covers (g,p)=({g},{p})")),
        },
    }
}

pub fn max_y_quadruple(s: Surface) -> Bound {
    let (g, p) = gp(s);
    match (g, p) {
        (0, 3) => Bound::none_exists("Lemma Y_03, disjoint arcs on a single hole are isotopic"),
        (0, 4) => Bound::upper(1, "Lemma Y_04, m <= 1"),
        (0, p) if p >= 5 => Bound::upper(p - 3, "Lemma Y_0p, m <= p-3"),
        (1, 1) => Bound::none_exists("Lemma Y_11, no Y-chained quadruple"),
        (1, 2) => Bound::upper(2, "Lemma Y_12, m <= 2"),
        (1, p) if p >= 3 => Bound::upper(2 * g + p - 3, "Lemma Y_general, m <= 2g+p-3"),
        (g, p) if g >= 2 && p >= 2 => Bound::upper(2 * g + p - 3, "Lemma Y_general, m <= 2g+p-3"),
        (g, 1) if g >= 2 => Bound::out_of_range(
            "Lemma Y_general is stated for p>=2 although its last proof case reads p>=1",
        ),
        _ => Bound::out_of_range(format!("Y-quadruples: no row covers (g,p)=({g},{p})")),
    }
}

pub fn max_clique_joined_to_path(s: Surface, mode: PathMode) -> Bound {
    let (g, p) = gp(s);
    match mode {
        PathMode::K2Fixed => match (g, p) {
            (0, p) if p >= 5 => Bound::upper(p - 3, "Lemma 0p_path_plus, m <= p-3"),
            (1, p) if p >= 2 => Bound::upper(p, "Lemma 1p_path_plus, m <= p"),
            _ => Bound::out_of_range(format!("P_m^c * K_2: no row covers (g,p)=({g},{p})")),
        },
        PathMode::Path2gp1 if g >= 2 => Bound::upper(g - 2, "Lemma 2g_p_1, m <= g-2"),
        PathMode::Path2gp if g >= 2 => Bound::upper(g - 1, "Lemma 2g_p, m <= g-1"),
        _ => Bound::out_of_range(format!("P^c * K_m: lemmas need g>=2, got g={g}")),
    }
}

/// Linear chain bounds imported from Katayama--Kuno, Theorem 2.2.
pub fn max_linear_chain(s: Surface) -> Bound {
    let (g, p) = gp(s);
    let cite = "imported: Katayama--Kuno Thm 2.2";
    match (g, p) {
        (0, p) if p >= 4 => Bound::imported(p - 1, format!("{cite}, p-1 (g=0, p>=4)")),
        (1, p) if p >= 1 => Bound::imported(p + 2, format!("{cite}, p+2 (g=1, p>=1)")),
        (g, p) if g >= 2 => Bound::imported(2 * g + p + 1, format!("{cite}, 2g+p+1 (g>=2)")),
        _ => Bound::out_of_range(format!("{cite}: no row covers (g,p)=({g},{p})")),
    }
}

/// Minimal genus of a surface carrying a cyclic chain of length `m` whose
/// consecutive curves meet exactly once: `ceil(m/2) - 1`.
pub fn min_genus_unit_chain(m: u64) -> Result<u64> {
    if m < 3 {
        return Err(Error::BadParameter(format!("cyclic chains need m >= 3, got {m}")));
    }
    Ok(m.div_ceil(2) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: u32, p: u32) -> Surface {
        Surface::bordered(g, p)
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(max_cyclic_chain(s(1, 2)).value, Some(5));
        assert_eq!(max_cyclic_chain(s(1, 2)).kind, BoundKind::Exact);
        assert_eq!(max_cyclic_chain(s(3, 1)).value, Some(8));
        assert_eq!(max_cyclic_chain(s(0, 4)).kind, BoundKind::OutOfPaperRange);
    }

    #[test]
    fn cyclic_k1_examples() {
        assert_eq!(max_cyclic_join_k1(s(0, 6)).value, Some(5));
        assert_eq!(max_cyclic_join_k1(s(2, 0)).value, Some(5));
        assert_eq!(max_cyclic_join_k1(s(2, 1)).value, Some(5));
    }

    #[test]
    fn triple_examples() {
        assert_eq!(max_chained_triple(s(0, 7), TripleVariant::Plain).value, Some(5));
        assert_eq!(max_chained_triple(s(0, 4), TripleVariant::Star).value, Some(1));
        assert_eq!(max_chained_triple(s(3, 2), TripleVariant::RecursiveEnd).value, Some(6));
        assert_eq!(max_chained_triple(s(0, 3), TripleVariant::Star).kind, BoundKind::NoneExists);
        assert!(max_chained_triple(s(0, 3), TripleVariant::Star).excludes(0));
    }

    #[test]
    fn yquad_examples() {
        assert_eq!(max_y_quadruple(s(0, 6)).value, Some(3));
        assert_eq!(max_y_quadruple(s(1, 1)).kind, BoundKind::NoneExists);
        assert_eq!(max_y_quadruple(s(2, 2)).value, Some(3));
        assert_eq!(max_y_quadruple(s(2, 1)).kind, BoundKind::OutOfPaperRange);
    }

    #[test]
    fn path_join_examples() {
        assert_eq!(max_clique_joined_to_path(s(0, 8), PathMode::K2Fixed).value, Some(5));
        assert_eq!(max_clique_joined_to_path(s(4, 1), PathMode::Path2gp1).value, Some(2));
        assert_eq!(max_clique_joined_to_path(s(2, 0), PathMode::Path2gp).value, Some(1));
    }

    #[test]
    fn linear_examples() {
        assert_eq!(max_linear_chain(s(0, 6)).value, Some(5));
        assert_eq!(max_linear_chain(s(1, 3)).value, Some(5));
        assert_eq!(max_linear_chain(s(2, 1)).value, Some(6));
        assert_eq!(max_linear_chain(s(2, 1)).kind, BoundKind::ImportedUpper);
    }

    #[test]
    fn unit_chain_genus() {
        assert_eq!(min_genus_unit_chain(8).unwrap(), 3);
        assert_eq!(min_genus_unit_chain(3).unwrap(), 1);
        for g in 1..10u64 {
            assert!(min_genus_unit_chain(2 * g + 3).unwrap() > g);
            assert!(min_genus_unit_chain(2 * g + 2).unwrap() <= g);
        }
        assert!(min_genus_unit_chain(2).is_err());
    }
}
