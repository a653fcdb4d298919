use std::fmt;

use crate::error::{Error, Result};
use crate::surface::{euler_char, Surface};

/// A side slot: triangle index and side `0..3`.
///
/// Side `c` of a triangle runs from corner `c` to corner `c + 1`, corners in
/// counterclockwise order.
pub type Side = (usize, u8);

/// Ideal triangulation of a punctured surface `S_{g,p}`.
///
/// Sides are glued in pairs, always reversing orientation: the point at
/// distance `i` from the start of one side meets the point at distance `i`
/// from the end of its partner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    surface: Surface,
    gluing: Vec<[Side; 3]>,
    edge_of: Vec<[usize; 3]>,
    edge_sides: Vec<[Side; 2]>,
    vertex_of: Vec<[usize; 3]>,
    vertex_count: usize,
}

fn next(c: u8) -> u8 {
    (c + 1) % 3
}

impl Triangulation {
    /// Builds a triangulation from its side pairing and checks it is an
    /// ideal triangulation of a surface with at least one puncture.
    pub fn from_gluing(gluing: Vec<[Side; 3]>) -> Result<Self> {
        let t = gluing.len();
        if t == 0 {
            return Err(Error::Invalid("no triangles".into()));
        }
        for (a, sides) in gluing.iter().enumerate() {
            for (s, &(b, r)) in sides.iter().enumerate() {
                if b >= t || r > 2 {
                    return Err(Error::Invalid(format!("side {a}:{s} glued to missing slot {b}:{r}")));
                }
                if (b, r as usize) == (a, s) {
                    return Err(Error::Invalid(format!("side {a}:{s} glued to itself")));
                }
                if gluing[b][r as usize] != (a, s as u8) {
                    return Err(Error::Invalid(format!("gluing is not symmetric at {a}:{s}")));
                }
            }
        }

        let mut edge_of = vec![[usize::MAX; 3]; t];
        let mut edge_sides = Vec::new();
        for a in 0..t {
            for s in 0..3u8 {
                if edge_of[a][s as usize] == usize::MAX {
                    let other = gluing[a][s as usize];
                    let e = edge_sides.len();
                    edge_of[a][s as usize] = e;
                    edge_of[other.0][other.1 as usize] = e;
                    edge_sides.push([(a, s), other]);
                }
            }
        }

        // corners (t,c) and the partner corners across each side
        let mut parent: Vec<usize> = (0..3 * t).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for a in 0..t {
            for s in 0..3u8 {
                let (b, r) = gluing[a][s as usize];
                let pairs = [(3 * a + s as usize, 3 * b + next(r) as usize), (3 * a + next(s) as usize, 3 * b + r as usize)];
                for (x, y) in pairs {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx != ry {
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
        }
        let mut label = vec![usize::MAX; 3 * t];
        let mut vertex_of = vec![[0usize; 3]; t];
        let mut vertex_count = 0;
        for k in 0..3 * t {
            let r = find(&mut parent, k);
            if label[r] == usize::MAX {
                label[r] = vertex_count;
                vertex_count += 1;
            }
            vertex_of[k / 3][k % 3] = label[r];
        }

        let e = edge_sides.len() as i64;
        let closed_chi = vertex_count as i64 - e + t as i64;
        if closed_chi % 2 != 0 || closed_chi > 2 {
            return Err(Error::Invalid(format!("gluing gives Euler characteristic {closed_chi}")));
        }
        let genus = ((2 - closed_chi) / 2) as u32;
        let surface = Surface::punctured(genus, vertex_count as u32);
        if euler_char(surface) >= 0 {
            return Err(Error::Invalid(format!("{surface} has no ideal triangulation")));
        }
        Ok(Triangulation { surface, gluing, edge_of, edge_sides, vertex_of, vertex_count })
    }

    /// Builds a triangulation from signed edge labels on each side: `+e` and
    /// `-e` must each appear exactly once and the two sides are glued.
    pub fn from_signed_sides(sides: &[[i64; 3]]) -> Result<Self> {
        use std::collections::HashMap;
        let mut seen: HashMap<i64, Side> = HashMap::new();
        for (t, row) in sides.iter().enumerate() {
            for (s, &lab) in row.iter().enumerate() {
                if lab == 0 {
                    return Err(Error::Invalid("edge label 0 is not signed".into()));
                }
                if seen.insert(lab, (t, s as u8)).is_some() {
                    return Err(Error::Invalid(format!("label {lab} used twice")));
                }
            }
        }
        let mut gluing = vec![[(0usize, 0u8); 3]; sides.len()];
        for (&lab, &(t, s)) in &seen {
            let other = *seen.get(&-lab).ok_or_else(|| Error::Invalid(format!("label {lab} has no partner")))?;
            gluing[t][s as usize] = other;
        }
        Triangulation::from_gluing(gluing)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn triangle_count(&self) -> usize {
        self.gluing.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_sides.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn gluing(&self) -> &[[Side; 3]] {
        &self.gluing
    }

    pub fn partner(&self, t: usize, s: u8) -> Side {
        self.gluing[t][s as usize]
    }

    pub fn edge(&self, t: usize, s: u8) -> usize {
        self.edge_of[t][s as usize]
    }

    /// The two sides carrying edge `e`; the first one fixes its direction.
    pub fn edge_sides(&self, e: usize) -> [Side; 2] {
        self.edge_sides[e]
    }

    pub fn is_canonical_side(&self, t: usize, s: u8) -> bool {
        self.edge_sides[self.edge_of[t][s as usize]][0] == (t, s)
    }

    /// Puncture at corner `c` of triangle `t`.
    pub fn vertex(&self, t: usize, c: u8) -> usize {
        self.vertex_of[t][c as usize]
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, sides) in self.gluing.iter().enumerate() {
            write!(f, "tri {t}")?;
            for (b, r) in sides {
                write!(f, " {b}:{r}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Signed side word of the standard polygon for `S_{g,p}`:
/// `a1 b1 -a1 -b1 ... ag bg -ag -bg c1 -c1 ... c(p-1) -c(p-1)`.
///
/// Labels: `a_i = 2i - 1`, `b_i = 2i`, `c_j = 2g + j`, all 1-based.
pub fn standard_polygon_word(g: u32, p: u32) -> Vec<i64> {
    let mut w = Vec::new();
    for i in 1..=g as i64 {
        let (a, b) = (2 * i - 1, 2 * i);
        w.extend([a, b, -a, -b]);
    }
    for j in 1..p as i64 {
        let c = 2 * g as i64 + j;
        w.extend([c, -c]);
    }
    w
}

/// Diagonal label of the standard fan: polygon vertex 0 to vertex `j`.
pub fn diagonal_label(j: usize) -> i64 {
    1000 + j as i64
}

/// Signed side labels of the standard fan triangulation, one row per triangle.
pub fn standard_signed_sides(g: u32, p: u32) -> Vec<[i64; 3]> {
    let word = standard_polygon_word(g, p);
    let n = word.len();
    let mut sides = Vec::with_capacity(n.saturating_sub(2));
    for k in 1..n.saturating_sub(1) {
        let s0 = if k == 1 { word[0] } else { diagonal_label(k) };
        let s1 = word[k];
        let s2 = if k + 1 == n - 1 { word[n - 1] } else { -diagonal_label(k + 1) };
        sides.push([s0, s1, s2]);
    }
    sides
}

/// Fan triangulation of the standard polygon from its vertex 0.
///
/// The polygon has `4g + 2p - 2` sides; triangle `k - 1` has polygon corners
/// `(0, k, k + 1)`.
pub fn standard_triangulation(g: u32, p: u32) -> Result<Triangulation> {
    let s = Surface::punctured(g, p);
    if p == 0 || euler_char(s) >= 0 {
        return Err(Error::BadParameter(format!("{s} needs p >= 1 and negative Euler characteristic")));
    }
    let t = Triangulation::from_signed_sides(&standard_signed_sides(g, p))?;
    debug_assert_eq!(t.surface(), s);
    Ok(t)
}
