//! The `ncs` text format.
//!
//! ```text
//! ncs 1
//! surface <g> <p>
//! tri <t> <t0>:<s0> <t1>:<s1> <t2>:<s2>
//! curve <name> <w_0> ... <w_{E-1}> [ends v<corner>:<count> ...]
//! ```
//!
//! Corner `3t + c` is corner `c` of triangle `t`. Lines starting with `#` are
//! ignored. The writer sorts curves by name.

use std::sync::Arc;

use super::normal::NormalCurveSystem;
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::surface::Surface;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFile {
    pub triangulation: Arc<Triangulation>,
    pub curves: Vec<(String, NormalCurveSystem)>,
}

impl CurveFile {
    pub fn new(triangulation: Arc<Triangulation>, curves: Vec<(String, NormalCurveSystem)>) -> Self {
        CurveFile { triangulation, curves }
    }

    pub fn systems(&self) -> Vec<NormalCurveSystem> {
        self.curves.iter().map(|(_, c)| c.clone()).collect()
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(format!("line {}: {}", line + 1, msg.into()))
}

pub fn parse_ncs(text: &str) -> Result<CurveFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (i, head) = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
    if head.split_whitespace().collect::<Vec<_>>() != ["ncs", "1"] {
        return Err(perr(i, "expected header `ncs 1`"));
    }
    let (i, surf) = lines.next().ok_or_else(|| Error::Parse("missing surface line".into()))?;
    let toks: Vec<&str> = surf.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "surface" {
        return Err(perr(i, "expected `surface <g> <p>`"));
    }
    let num = |i: usize, t: &str| t.parse::<u64>().map_err(|_| perr(i, format!("bad number {t:?}")));
    let declared = Surface::punctured(num(i, toks[1])? as u32, num(i, toks[2])? as u32);

    let mut gluing: Vec<Option<[(usize, u8); 3]>> = Vec::new();
    let mut curve_lines = Vec::new();
    for (i, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "tri" => {
                if toks.len() != 5 {
                    return Err(perr(i, "tri line needs an index and three pairings"));
                }
                let t = num(i, toks[1])? as usize;
                let mut sides = [(0usize, 0u8); 3];
                for s in 0..3 {
                    let (a, b) = toks[2 + s].split_once(':').ok_or_else(|| perr(i, "pairing must be <triangle>:<side>"))?;
                    sides[s] = (num(i, a)? as usize, num(i, b)? as u8);
                }
                if gluing.len() <= t {
                    gluing.resize(t + 1, None);
                }
                if gluing[t].replace(sides).is_some() {
                    return Err(perr(i, format!("triangle {t} given twice")));
                }
            }
            "curve" => curve_lines.push((i, toks.iter().map(|s| s.to_string()).collect::<Vec<_>>())),
            other => return Err(perr(i, format!("unknown keyword {other:?}"))),
        }
    }
    let gluing: Vec<[(usize, u8); 3]> = gluing
        .into_iter()
        .enumerate()
        .map(|(t, g)| g.ok_or_else(|| Error::Parse(format!("triangle {t} missing"))))
        .collect::<Result<_>>()?;
    let tri = Arc::new(Triangulation::from_gluing(gluing)?);
    if tri.surface() != declared {
        return Err(Error::Parse(format!("gluing gives {} but header says {declared}", tri.surface())));
    }
    let ne = tri.edge_count();
    let mut curves = Vec::new();
    for (i, toks) in curve_lines {
        if toks.len() < 2 + ne {
            return Err(perr(i, format!("curve needs a name and {ne} weights")));
        }
        let name = toks[1].clone();
        let weights = toks[2..2 + ne].iter().map(|t| num(i, t)).collect::<Result<Vec<_>>>()?;
        let mut ends = vec![0u64; 3 * tri.triangle_count()];
        let rest = &toks[2 + ne..];
        if !rest.is_empty() {
            if rest[0] != "ends" {
                return Err(perr(i, "trailing tokens must start with `ends`"));
            }
            for t in &rest[1..] {
                let body = t.strip_prefix('v').ok_or_else(|| perr(i, format!("bad end {t:?}")))?;
                let (k, c) = body.split_once(':').ok_or_else(|| perr(i, format!("bad end {t:?}")))?;
                let k = num(i, k)? as usize;
                if k >= ends.len() {
                    return Err(perr(i, format!("corner {k} out of range")));
                }
                ends[k] += num(i, c)?;
            }
        }
        let sys = NormalCurveSystem::with_ends(tri.clone(), weights, ends)?;
        curves.push((name, sys));
    }
    Ok(CurveFile { triangulation: tri, curves })
}

pub fn write_ncs(file: &CurveFile) -> String {
    let tri = &file.triangulation;
    let s = tri.surface();
    let mut out = format!("ncs 1\nsurface {} {}\n", s.genus, s.punctures);
    out.push_str(&tri.to_string());
    let mut curves: Vec<&(String, NormalCurveSystem)> = file.curves.iter().collect();
    curves.sort_by(|a, b| a.0.cmp(&b.0));
    for (name, c) in curves {
        out.push_str("curve ");
        out.push_str(name);
        for w in c.weights() {
            out.push_str(&format!(" {w}"));
        }
        if c.has_arcs() {
            out.push_str(" ends");
            for (k, &e) in c.ends().iter().enumerate() {
                if e > 0 {
                    out.push_str(&format!(" v{k}:{e}"));
                }
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::triangulation::standard_triangulation;

    #[test]
    fn round_trip() {
        let t = Arc::new(standard_triangulation(1, 2).unwrap());
        let mut ends = vec![0; 12];
        ends[0] = 1;
        ends[1] = 1;
        let arc = NormalCurveSystem::with_ends(t.clone(), vec![0; 6], ends).unwrap();
        let f = CurveFile::new(t.clone(), vec![("b".into(), arc), ("a".into(), NormalCurveSystem::empty(t))]);
        let text = write_ncs(&f);
        let back = parse_ncs(&text).unwrap();
        assert_eq!(write_ncs(&back), text);
        assert_eq!(back.curves[0].0, "a");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ncs("").is_err());
        assert!(parse_ncs("ncs 2\nsurface 1 1\n").is_err());
        assert!(parse_ncs("ncs 1\nsurface 1 1\ntri 0 1:0 1:1 1:2\n").is_err());
    }
}
