//! Surface types and Euler characteristic bookkeeping.
//!
//! A surface is recorded by its topological type `(genus, punctures, boundary)`.
//! Cutting operations return types only; concrete cutting of curves lives in
//! [`crate::engine`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surface {
    pub genus: u32,
    pub punctures: u32,
    pub boundary: u32,
}

impl Surface {
    pub const fn new(genus: u32, punctures: u32, boundary: u32) -> Self {
        Surface { genus, punctures, boundary }
    }

    /// Punctured surface `S_{g,p}` with empty boundary.
    pub const fn punctured(genus: u32, punctures: u32) -> Self {
        Surface::new(genus, punctures, 0)
    }

    /// Bordered surface `S_g^b` with no punctures.
    pub const fn bordered(genus: u32, boundary: u32) -> Self {
        Surface::new(genus, 0, boundary)
    }

    pub fn euler_char(&self) -> i64 {
        euler_char(*self)
    }

    pub fn complexity(&self) -> i64 {
        complexity(*self)
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{},{},{}", self.genus, self.punctures, self.boundary)
    }
}

impl std::str::FromStr for Surface {
    type Err = Error;

    /// Parses the `S{g},{p},{b}` token.
    fn from_str(s: &str) -> Result<Self, Error> {
        let body = s
            .strip_prefix('S')
            .ok_or_else(|| Error::Parse(format!("surface token must start with 'S': {s}")))?;
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("surface token needs three fields: {s}")));
        }
        let num = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad surface field {t:?} in {s}")))
        };
        Ok(Surface::new(num(parts[0])?, num(parts[1])?, num(parts[2])?))
    }
}

pub fn euler_char(s: Surface) -> i64 {
    2 - 2 * s.genus as i64 - s.punctures as i64 - s.boundary as i64
}

/// `3g - 3 + p + b`, the rank of a maximal multitwist group.
pub fn complexity(s: Surface) -> i64 {
    3 * s.genus as i64 - 3 + s.punctures as i64 + s.boundary as i64
}

/// Fills in nothing and turns every puncture into a boundary circle.
pub fn compactify(s: Surface) -> Surface {
    Surface::new(s.genus, 0, s.punctures + s.boundary)
}

/// Curve-graph normal form: boundary circles are folded into punctures.
pub fn as_curve_graph_surface(s: Surface) -> Surface {
    Surface::new(s.genus, s.punctures + s.boundary, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutKind {
    NonSeparating,
    Separating,
}

/// Genus and hole count of the two sides of a separating cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    pub g1: u32,
    pub p1: u32,
    pub g2: u32,
    pub p2: u32,
}

impl Partition {
    pub const fn new(g1: u32, p1: u32, g2: u32, p2: u32) -> Self {
        Partition { g1, p1, g2, p2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutOutcome {
    /// One entry per admissible way of cutting; each entry is sorted.
    pub options: Vec<Vec<Surface>>,
    pub constraint_note: String,
}

impl CutOutcome {
    /// Pieces of the unique option, if there is exactly one.
    pub fn pieces(&self) -> Option<&[Surface]> {
        match self.options.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

fn sorted(mut v: Vec<Surface>) -> Vec<Surface> {
    v.sort();
    v
}

fn arc_side_ok(g: u32, p: u32) -> bool {
    p >= 1 && (g > 0 || p >= 2)
}

/// Cuts a bordered surface along a properly embedded essential arc.
///
/// The surface is read in the boundary convention: `S_g^p` with `p` holes,
/// where punctures and boundary circles are both counted as holes.
pub fn cut_along_arc(
    s: Surface,
    kind: CutKind,
    partition: Option<Partition>,
) -> Result<CutOutcome, Error> {
    if s.boundary == 0 {
        return Err(Error::NotCuttable("an arc needs at least one boundary component".into()));
    }
    let g = s.genus;
    let p = s.punctures + s.boundary;
    match kind {
        CutKind::NonSeparating => {
            if g == 0 {
                return Err(Error::NotCuttable(
                    "every arc on a planar surface separates".into(),
                ));
            }
            Ok(CutOutcome {
                options: vec![vec![Surface::bordered(g - 1, p + 1)]],
                constraint_note: "non-separating arc: genus drops by one, one hole gained".into(),
            })
        }
        CutKind::Separating => {
            let note = "g1+g2=g, p1+p2=p+1, p_i>=1, p_i>=2 when g_i=0".to_string();
            let valid = |q: &Partition| {
                q.g1 + q.g2 == g
                    && q.p1 + q.p2 == p + 1
                    && arc_side_ok(q.g1, q.p1)
                    && arc_side_ok(q.g2, q.p2)
            };
            match partition {
                Some(q) => {
                    if !valid(&q) {
                        return Err(Error::InvalidPartition(format!(
                            "({},{},{},{}) violates {note}",
                            q.g1, q.p1, q.g2, q.p2
                        )));
                    }
                    Ok(CutOutcome {
                        options: vec![sorted(vec![
                            Surface::bordered(q.g1, q.p1),
                            Surface::bordered(q.g2, q.p2),
                        ])],
                        constraint_note: note,
                    })
                }
                None => {
                    let mut options = Vec::new();
                    for g1 in 0..=g {
                        for p1 in 1..=p {
                            let q = Partition::new(g1, p1, g - g1, p + 1 - p1);
                            if !valid(&q) {
                                continue;
                            }
                            let pieces = sorted(vec![
                                Surface::bordered(q.g1, q.p1),
                                Surface::bordered(q.g2, q.p2),
                            ]);
                            if !options.contains(&pieces) {
                                options.push(pieces);
                            }
                        }
                    }
                    options.sort();
                    Ok(CutOutcome { options, constraint_note: note })
                }
            }
        }
    }
}

fn curve_side_ok(g: u32, p: u32) -> bool {
    // the side keeps the curve as one hole; no disk, annulus or worse
    p >= 1 && 2 - 2 * g as i64 - p as i64 <= -1
}

/// Cuts along an essential simple closed curve.
///
/// Holes are counted as in [`cut_along_arc`]; the two new circles created by
/// the cut are counted as holes of the pieces.
pub fn cut_along_closed_curve(
    s: Surface,
    kind: CutKind,
    partition: Option<Partition>,
) -> Result<CutOutcome, Error> {
    let g = s.genus;
    let p = s.punctures + s.boundary;
    match kind {
        CutKind::NonSeparating => {
            if g == 0 {
                return Err(Error::NotCuttable(
                    "every closed curve on a planar surface separates".into(),
                ));
            }
            Ok(CutOutcome {
                options: vec![vec![Surface::bordered(g - 1, p + 2)]],
                constraint_note: "non-separating curve: genus drops by one, two holes gained".into(),
            })
        }
        CutKind::Separating => {
            let note =
                "g1+g2=g, p1+p2=p+2, each side has negative Euler characteristic".to_string();
            let valid = |q: &Partition| {
                q.g1 + q.g2 == g
                    && q.p1 + q.p2 == p + 2
                    && curve_side_ok(q.g1, q.p1)
                    && curve_side_ok(q.g2, q.p2)
            };
            let mk = |q: &Partition| {
                sorted(vec![Surface::bordered(q.g1, q.p1), Surface::bordered(q.g2, q.p2)])
            };
            match partition {
                Some(q) => {
                    if !valid(&q) {
                        return Err(Error::InvalidPartition(format!(
                            "({},{},{},{}) violates {note}",
                            q.g1, q.p1, q.g2, q.p2
                        )));
                    }
                    Ok(CutOutcome { options: vec![mk(&q)], constraint_note: note })
                }
                None => {
                    let mut options = Vec::new();
                    for g1 in 0..=g {
                        for p1 in 1..=p + 1 {
                            let q = Partition::new(g1, p1, g - g1, p + 2 - p1);
                            if valid(&q) {
                                let pieces = mk(&q);
                                if !options.contains(&pieces) {
                                    options.push(pieces);
                                }
                            }
                        }
                    }
                    options.sort();
                    Ok(CutOutcome { options, constraint_note: note })
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        assert_eq!(euler_char(Surface::new(1, 2, 0)), -2);
        assert_eq!(euler_char(Surface::new(0, 0, 0)), 2);
        assert_eq!(euler_char(Surface::new(2, 3, 1)), -6);
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(complexity(Surface::new(1, 2, 0)), 2);
        assert_eq!(complexity(Surface::new(0, 4, 0)), 1);
        assert_eq!(complexity(Surface::new(0, 3, 0)), 0);
    }

    #[test]
    fn compactify_examples() {
        assert_eq!(compactify(Surface::new(1, 2, 1)), Surface::new(1, 0, 3));
        assert_eq!(compactify(Surface::new(0, 0, 0)), Surface::new(0, 0, 0));
        assert_eq!(compactify(Surface::new(2, 3, 0)), Surface::new(2, 0, 3));
    }

    #[test]
    fn token_round_trip() {
        let s = Surface::new(3, 1, 2);
        assert_eq!(s.to_string(), "S3,1,2");
        assert_eq!("S3,1,2".parse::<Surface>().unwrap(), s);
        assert!("T1,2,3".parse::<Surface>().is_err());
    }

    #[test]
    fn arc_cuts() {
        let out = cut_along_arc(Surface::bordered(2, 1), CutKind::NonSeparating, None).unwrap();
        assert_eq!(out.pieces().unwrap(), &[Surface::bordered(1, 2)]);

        let out = cut_along_arc(Surface::bordered(0, 5), CutKind::Separating, None).unwrap();
        assert_eq!(
            out.options,
            vec![
                vec![Surface::bordered(0, 2), Surface::bordered(0, 4)],
                vec![Surface::bordered(0, 3), Surface::bordered(0, 3)],
            ]
        );

        let out = cut_along_arc(
            Surface::bordered(1, 2),
            CutKind::Separating,
            Some(Partition::new(1, 1, 0, 2)),
        )
        .unwrap();
        assert_eq!(out.pieces().unwrap(), &[Surface::bordered(0, 2), Surface::bordered(1, 1)]);

        assert!(matches!(
            cut_along_arc(
                Surface::bordered(1, 2),
                CutKind::Separating,
                Some(Partition::new(0, 1, 1, 2))
            ),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            cut_along_arc(Surface::bordered(0, 4), CutKind::NonSeparating, None),
            Err(Error::NotCuttable(_))
        ));
    }

    #[test]
    fn curve_cuts() {
        let out = cut_along_closed_curve(Surface::bordered(2, 0), CutKind::NonSeparating, None)
            .unwrap();
        assert_eq!(out.pieces().unwrap(), &[Surface::bordered(1, 2)]);
        let out = cut_along_closed_curve(Surface::bordered(1, 2), CutKind::NonSeparating, None)
            .unwrap();
        assert_eq!(out.pieces().unwrap(), &[Surface::bordered(0, 4)]);
        let out =
            cut_along_closed_curve(Surface::bordered(2, 1), CutKind::Separating, None).unwrap();
        assert!(out
            .options
            .contains(&vec![Surface::bordered(1, 1), Surface::bordered(1, 2)]));
    }
}
