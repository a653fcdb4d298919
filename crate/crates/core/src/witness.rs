//! Extremal curve systems and their certificates.
//!
//! Constructions live on the standard triangulation and are described by
//! words. We use the sphere-with-tubes picture: positions `1..=n`, `n = 2g+p`,
//! carry the loops
//!
//! ```text
//! x_{2i-1} = a_i,   x_{2i} = b_i^-1 a_i^-1 b_i,   x_{2g+j} = c_j,
//! ```
//!
//! and position `n` is the last puncture. The product of a run of consecutive
//! loops is an "interval" curve enclosing those positions; intervals meet iff
//! they overlap without nesting.
//!
//! Every system a builder returns is re-checked by the certifier before it is
//! handed out.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{max_cyclic_chain, max_cyclic_join_k1, TripleVariant};
use crate::engine::{
    classify_component, curve_from_word, enumerate_arcs, enumerate_curves, geometric_intersection,
    intersection_matrix, standard_triangulation, write_ncs, ComponentClass, CurveFile, NormalCurveSystem, Triangulation,
};
use crate::error::{Error, Result};
use crate::surface::{as_curve_graph_surface, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    CyclicChain,
    SemiCyclic,
    LinearChain,
    ChainedTriple,
    YQuadruple,
    CyclicJoinK1,
}

impl ChainKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChainKind::CyclicChain => "cyclic-chain",
            ChainKind::SemiCyclic => "semi-cyclic",
            ChainKind::LinearChain => "linear-chain",
            ChainKind::ChainedTriple => "chained-triple",
            ChainKind::YQuadruple => "y-quadruple",
            ChainKind::CyclicJoinK1 => "cyclic-join-k1",
        }
    }
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub all_essential: bool,
    pub pairwise_non_isotopic: bool,
    pub consecutive_positive: bool,
    pub chord_free: bool,
    /// Arc disjointness pattern of triples and quadruples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc_pattern: Option<bool>,
    /// Only set when the end arcs share no puncture.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_star: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apex_disjoint: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcNote {
    pub name: String,
    /// Punctures hit by the two ends.
    pub punctures: Vec<usize>,
    pub recursive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    /// What was checked for.
    pub claim: ChainKind,
    /// What the system actually is, if anything.
    pub kind: Option<ChainKind>,
    pub surface: Surface,
    /// Set when a closed surface is represented by its once-punctured model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modeled_on: Option<Surface>,
    pub length: usize,
    pub names: Vec<String>,
    pub classes: Vec<ComponentClass>,
    pub intersection_matrix: Vec<Vec<u64>>,
    pub flags: Flags,
    /// Crossing pairs that should be disjoint.
    pub chords: Vec<(usize, usize)>,
    /// Pairs that should cross but do not.
    pub gaps: Vec<(usize, usize)>,
    pub arcs: Vec<ArcNote>,
    pub notes: Vec<String>,
}

impl ChainCertificate {
    pub fn certified(&self) -> bool {
        self.kind == Some(self.claim)
    }

    /// Canonical text form; golden files compare against it byte for byte.
    pub fn to_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::new();
        let _ = writeln!(s, "certificate {}", self.claim);
        let _ = writeln!(s, "kind {}", self.kind.map_or("none", |k| k.as_str()));
        let _ = writeln!(s, "surface {}", self.surface);
        if let Some(m) = self.modeled_on {
            let _ = writeln!(s, "modeled-on {m}");
        }
        let _ = writeln!(s, "length {}", self.length);
        let _ = writeln!(s, "names {}", self.names.join(" "));
        let classes: Vec<&str> = self.classes.iter().map(|c| c.as_str()).collect();
        let _ = writeln!(s, "classes {}", classes.join(" "));
        s.push_str("matrix\n");
        for row in &self.intersection_matrix {
            let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "  {}", r.join(" "));
        }
        let f = &self.flags;
        let _ = write!(
            s,
            "flags all-essential={} pairwise-non-isotopic={} consecutive-positive={} chord-free={}",
            yn(f.all_essential),
            yn(f.pairwise_non_isotopic),
            yn(f.consecutive_positive),
            yn(f.chord_free)
        );
        if let Some(b) = f.arc_pattern {
            let _ = write!(s, " arc-pattern={}", yn(b));
        }
        if let Some(b) = f.condition_star {
            let _ = write!(s, " condition-star={}", yn(b));
        }
        if let Some(b) = f.apex_disjoint {
            let _ = write!(s, " apex-disjoint={}", yn(b));
        }
        s.push('\n');
        for (label, pairs) in [("chords", &self.chords), ("gaps", &self.gaps)] {
            if !pairs.is_empty() {
                let p: Vec<String> = pairs.iter().map(|(i, j)| format!("{i}-{j}")).collect();
                let _ = writeln!(s, "{label} {}", p.join(" "));
            }
        }
        for a in &self.arcs {
            let p: Vec<String> = a.punctures.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                s,
                "arc {} punctures {}{}",
                a.name,
                p.join(","),
                if a.recursive { " recursive" } else { "" }
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "note {n}");
        }
        s
    }

    pub fn summary(&self) -> String {
        match self.kind {
            Some(k) if k == self.claim => format!("certified {k} of length {} on {}", self.length, self.surface),
            Some(k) => format!("not a {}: only a {k} of length {}", self.claim, self.length),
            None => format!("not a {} (length {})", self.claim, self.length),
        }
    }
}

/// A built system together with the surface it was asked for.
#[derive(Clone, Debug)]
pub struct Witness {
    pub requested: Surface,
    pub file: CurveFile,
    pub claim: ChainKind,
}

impl Witness {
    pub fn modeled_on(&self) -> Option<Surface> {
        let req = as_curve_graph_surface(self.requested);
        (req != self.file.triangulation.surface()).then_some(req)
    }

    /// The `ncs` text, with a comment naming the closed surface if the
    /// system lives on its once-punctured model.
    pub fn to_ncs(&self) -> String {
        let body = write_ncs(&self.file);
        match self.modeled_on() {
            Some(m) => format!("# {} witness for {m}, on its once-punctured model\n{body}", self.claim),
            None => body,
        }
    }

    pub fn certify(&self) -> Result<ChainCertificate> {
        let mut cert = match self.claim {
            ChainKind::CyclicJoinK1 => verify_cyclic_join_k1(&self.file)?,
            _ => verify_cyclic_chain(&self.file)?,
        };
        if let Some(m) = self.modeled_on() {
            cert.modeled_on = Some(m);
            cert.notes.push(format!("closed surface {m} certified on its once-punctured model"));
        }
        Ok(cert)
    }
}

// ---------------------------------------------------------------------------
// certifiers

struct Checked {
    names: Vec<String>,
    systems: Vec<NormalCurveSystem>,
    classes: Vec<ComponentClass>,
    matrix: Vec<Vec<u64>>,
}

fn check_components(file: &CurveFile) -> Result<Checked> {
    let mut classes = Vec::new();
    for (name, c) in &file.curves {
        c.validate().map_err(|e| Error::MalformedSystem(format!("{name}: {e}")))?;
        let k = c.components()?.len();
        if k != 1 {
            return Err(Error::MalformedSystem(format!("{name} has {k} components, expected 1")));
        }
        classes.push(classify_component(c)?);
    }
    let systems = file.systems();
    let matrix = intersection_matrix(&systems)?;
    Ok(Checked { names: file.curves.iter().map(|(n, _)| n.clone()).collect(), systems, classes, matrix })
}

fn non_isotopic(systems: &[&NormalCurveSystem]) -> Result<bool> {
    let mut canon = Vec::new();
    for c in systems {
        canon.push(c.canonical()?);
    }
    Ok((0..canon.len()).all(|i| (i + 1..canon.len()).all(|j| canon[i] != canon[j])))
}

type Pairs = Vec<(usize, usize)>;

/// Checks the curves at `idx` against the chain pattern, cyclic or linear.
/// Returns the chords and the gaps.
fn chain_pattern(m: &[Vec<u64>], idx: &[usize], cyclic: bool) -> (Pairs, Pairs) {
    let k = idx.len();
    let consecutive = |a: usize, b: usize| b == a + 1 || (cyclic && k > 2 && a == 0 && b == k - 1);
    let (mut chords, mut gaps) = (Vec::new(), Vec::new());
    for a in 0..k {
        for b in a + 1..k {
            let v = m[idx[a]][idx[b]];
            if consecutive(a, b) && v == 0 {
                gaps.push((idx[a], idx[b]));
            } else if !consecutive(a, b) && v > 0 {
                chords.push((idx[a], idx[b]));
            }
        }
    }
    (chords, gaps)
}

fn base_cert(claim: ChainKind, file: &CurveFile, ch: &Checked, length: usize) -> ChainCertificate {
    ChainCertificate {
        claim,
        kind: None,
        surface: file.triangulation.surface(),
        modeled_on: None,
        length,
        names: ch.names.clone(),
        classes: ch.classes.clone(),
        intersection_matrix: ch.matrix.clone(),
        flags: Flags::default(),
        chords: Vec::new(),
        gaps: Vec::new(),
        arcs: Vec::new(),
        notes: Vec::new(),
    }
}

fn curve_flags(cert: &mut ChainCertificate, ch: &Checked, idx: &[usize], cyclic: bool) -> Result<()> {
    cert.flags.all_essential = idx.iter().all(|&i| ch.classes[i] == ComponentClass::Essential);
    let sys: Vec<&NormalCurveSystem> = idx.iter().map(|&i| &ch.systems[i]).collect();
    cert.flags.pairwise_non_isotopic = non_isotopic(&sys)?;
    let (chords, gaps) = chain_pattern(&ch.matrix, idx, cyclic);
    cert.flags.consecutive_positive = gaps.is_empty();
    cert.flags.chord_free = chords.is_empty();
    cert.chords = chords;
    cert.gaps = gaps;
    Ok(())
}

fn require_closed(file: &CurveFile) -> Result<()> {
    if let Some((name, _)) = file.curves.iter().find(|(_, c)| c.has_arcs()) {
        return Err(Error::MalformedSystem(format!("{name} is an arc; expected closed curves only")));
    }
    Ok(())
}

/// Certifies the components, in declaration order, as a cyclic chain.
pub fn verify_cyclic_chain(file: &CurveFile) -> Result<ChainCertificate> {
    require_closed(file)?;
    let ch = check_components(file)?;
    let m = ch.systems.len();
    if m < 3 {
        return Err(Error::MalformedSystem(format!("a cyclic chain needs at least 3 curves, got {m}")));
    }
    let idx: Vec<usize> = (0..m).collect();
    let mut cert = base_cert(ChainKind::CyclicChain, file, &ch, m);
    curve_flags(&mut cert, &ch, &idx, true)?;
    let f = &cert.flags;
    if f.all_essential && f.pairwise_non_isotopic && f.consecutive_positive {
        cert.kind = Some(if f.chord_free { ChainKind::CyclicChain } else { ChainKind::SemiCyclic });
    }
    Ok(cert)
}

/// Certifies the components as a linear chain.
pub fn verify_linear_chain(file: &CurveFile) -> Result<ChainCertificate> {
    require_closed(file)?;
    let ch = check_components(file)?;
    let m = ch.systems.len();
    if m == 0 {
        return Err(Error::MalformedSystem("empty system".into()));
    }
    let idx: Vec<usize> = (0..m).collect();
    let mut cert = base_cert(ChainKind::LinearChain, file, &ch, m);
    curve_flags(&mut cert, &ch, &idx, false)?;
    let f = &cert.flags;
    if f.all_essential && f.pairwise_non_isotopic && f.consecutive_positive && f.chord_free {
        cert.kind = Some(ChainKind::LinearChain);
    }
    Ok(cert)
}

/// Certifies a cyclic chain (all but the last curve) joined to an apex curve
/// (the last one) disjoint from every chain curve.
pub fn verify_cyclic_join_k1(file: &CurveFile) -> Result<ChainCertificate> {
    require_closed(file)?;
    let ch = check_components(file)?;
    let k = ch.systems.len();
    if k < 4 {
        return Err(Error::MalformedSystem(format!("need a chain of at least 3 plus an apex, got {k} curves")));
    }
    let chain: Vec<usize> = (0..k - 1).collect();
    let mut cert = base_cert(ChainKind::CyclicJoinK1, file, &ch, k - 1);
    curve_flags(&mut cert, &ch, &chain, true)?;
    let all: Vec<&NormalCurveSystem> = ch.systems.iter().collect();
    cert.flags.all_essential &= ch.classes[k - 1] == ComponentClass::Essential;
    cert.flags.pairwise_non_isotopic = non_isotopic(&all)?;
    let apex = chain.iter().all(|&i| ch.matrix[i][k - 1] == 0);
    cert.flags.apex_disjoint = Some(apex);
    let f = &cert.flags;
    if f.all_essential && f.pairwise_non_isotopic && f.consecutive_positive && f.chord_free && apex {
        cert.kind = Some(ChainKind::CyclicJoinK1);
    }
    Ok(cert)
}

fn arc_note(name: &str, c: &NormalCurveSystem) -> ArcNote {
    let mut punctures = Vec::new();
    for (v, k) in c.end_punctures() {
        punctures.extend(std::iter::repeat_n(v, k as usize));
    }
    let recursive = punctures.len() == 2 && punctures[0] == punctures[1];
    ArcNote { name: name.to_string(), punctures, recursive }
}

fn share_puncture(a: &ArcNote, b: &ArcNote) -> bool {
    a.punctures.iter().any(|v| b.punctures.contains(v))
}

/// Splits `file` into leading arcs, curves and trailing arcs, checking counts.
fn split_arcs(file: &CurveFile, lead: usize, trail: usize) -> Result<Vec<usize>> {
    let k = file.curves.len();
    let is_arc: Vec<bool> = file.curves.iter().map(|(_, c)| c.has_arcs()).collect();
    let want = |i: usize| i < lead || i >= k.saturating_sub(trail);
    if k < lead + trail || (0..k).any(|i| is_arc[i] != want(i)) {
        let layout: String = is_arc.iter().map(|&a| if a { 'A' } else { 'c' }).collect();
        return Err(Error::MalformedSystem(format!(
            "expected {lead} arc(s), then curves, then {trail} arc(s); got layout {layout}"
        )));
    }
    for (name, c) in &file.curves {
        if c.has_arcs() && c.arc_count() != 1 {
            return Err(Error::MalformedSystem(format!("{name} has {} arcs, expected 1", c.arc_count())));
        }
    }
    Ok((lead..k - trail).collect())
}

/// Disjointness pattern of a chained triple `(da, chain, db)`.
fn triple_pattern(m: &[Vec<u64>], da: usize, chain: &[usize], db: usize) -> bool {
    let k = chain.len();
    if m[da][db] > 0 {
        return false;
    }
    if k == 0 {
        return true;
    }
    chain.iter().enumerate().all(|(i, &c)| (m[da][c] > 0) == (i == 0) && (m[db][c] > 0) == (i == k - 1))
}

/// Certifies `(delta_a, (alpha_1..alpha_m), delta_b)`: an arc, curves, an arc.
pub fn verify_chained_triple(file: &CurveFile, variant: TripleVariant) -> Result<ChainCertificate> {
    let chain = split_arcs(file, 1, 1)?;
    let ch = check_components(file)?;
    let (da, db) = (0, ch.systems.len() - 1);
    let mut cert = base_cert(ChainKind::ChainedTriple, file, &ch, chain.len());
    curve_flags(&mut cert, &ch, &chain, false)?;
    let pattern = triple_pattern(&ch.matrix, da, &chain, db);
    cert.flags.arc_pattern = Some(pattern);
    let (na, nb) = (arc_note(&ch.names[da], &ch.systems[da]), arc_note(&ch.names[db], &ch.systems[db]));
    let star = !share_puncture(&na, &nb);
    let mut ok = pattern;
    match variant {
        TripleVariant::Plain => {}
        TripleVariant::Star => {
            cert.flags.condition_star = Some(star);
            ok &= star;
        }
        TripleVariant::RecursiveEnd => {
            if !nb.recursive {
                cert.notes.push(format!("{} is not recursive", nb.name));
            }
            ok &= nb.recursive;
        }
    }
    if star && variant != TripleVariant::Star {
        cert.flags.condition_star = Some(true);
    }
    cert.arcs = vec![na, nb];
    let f = &cert.flags;
    if ok && f.all_essential && f.pairwise_non_isotopic && f.consecutive_positive && f.chord_free {
        cert.kind = Some(ChainKind::ChainedTriple);
    }
    Ok(cert)
}

/// Certifies `(delta_1, (alpha_1..alpha_m), delta_2, delta_3)`: an arc,
/// curves, then two arcs.
pub fn verify_y_quadruple(file: &CurveFile) -> Result<ChainCertificate> {
    let chain = split_arcs(file, 1, 2)?;
    let ch = check_components(file)?;
    let k = ch.systems.len();
    let (d1, d2, d3) = (0, k - 2, k - 1);
    let mut cert = base_cert(ChainKind::YQuadruple, file, &ch, chain.len());
    curve_flags(&mut cert, &ch, &chain, false)?;
    let notes: Vec<ArcNote> = [d1, d2, d3].iter().map(|&i| arc_note(&ch.names[i], &ch.systems[i])).collect();
    let mut ok = triple_pattern(&ch.matrix, d1, &chain, d2) && triple_pattern(&ch.matrix, d1, &chain, d3);
    if ch.matrix[d2][d3] > 0 {
        ok = false;
    }
    if !non_isotopic(&[&ch.systems[d2], &ch.systems[d3]])? {
        cert.notes.push(format!("{} and {} are isotopic", notes[1].name, notes[2].name));
        ok = false;
    }
    let mut ends = notes[1].punctures.iter().chain(&notes[2].punctures);
    let first = ends.next().copied();
    if !ends.all(|&v| Some(v) == first) {
        cert.notes.push("the last two arcs do not end on a single puncture".into());
        ok = false;
    }
    cert.flags.arc_pattern = Some(ok);
    cert.arcs = notes;
    let f = &cert.flags;
    if ok && f.all_essential && f.pairwise_non_isotopic && f.consecutive_positive && f.chord_free {
        cert.kind = Some(ChainKind::YQuadruple);
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// words in the tube picture

fn x_word(g: u32, k: u32) -> Vec<i64> {
    if k <= 2 * g {
        let i = k.div_ceil(2) as i64;
        let (a, b) = (2 * i - 1, 2 * i);
        if k % 2 == 1 {
            vec![a]
        } else {
            vec![-b, -a, b]
        }
    } else {
        vec![k as i64]
    }
}

fn inverse(w: &[i64]) -> Vec<i64> {
    w.iter().rev().map(|x| -x).collect()
}

/// Curve around the cyclic run `lo, lo+1, ..., hi` of positions `1..=n`.
/// Runs through position `n` are replaced by their complement.
fn interval(g: u32, n: u32, lo: u32, hi: u32) -> Option<Vec<i64>> {
    let len = if hi >= lo { hi - lo + 1 } else { n - lo + 1 + hi };
    if len == 0 || len >= n {
        return None;
    }
    let run: Vec<u32> = (0..len).map(|i| (lo - 1 + i) % n + 1).collect();
    let set: Vec<u32> = if run.contains(&n) { (1..n).filter(|k| !run.contains(k)).collect() } else { run };
    if set.is_empty() {
        return None;
    }
    Some(set.into_iter().flat_map(|k| x_word(g, k)).collect())
}

/// Ovals around consecutive pairs of positions, cyclically: length `n`.
fn pairs_chain(g: u32, n: u32) -> Vec<Vec<i64>> {
    (1..=n).map(|k| interval(g, n, k, k % n + 1).expect("pair is a proper run")).collect()
}

/// `a_1, b_1, (x_2 x_3), b_2, ..., b_g, a_g, b_1 ... b_g` on `S_{g,1}`.
fn one_puncture_chain(g: u32) -> Vec<Vec<i64>> {
    let n = 2 * g + 1;
    let mut ch = vec![vec![1i64]];
    for i in 1..=g {
        ch.push(vec![2 * i as i64]);
        if i < g {
            ch.push(interval(g, n, 2 * i, 2 * i + 1).expect("run"));
        }
    }
    ch.push(vec![2 * g as i64 - 1]);
    ch.push((1..=g as i64).map(|i| 2 * i).collect());
    ch
}

/// `a_1, b_1, (x_2 x_3), ..., b_g, (x_{2g} x_{2g+1}), (x_1 ... x_{2g}), X` on
/// `S_{g,2}`, closed up by `X = B c B^-1 (x_1 ... x_{2g} c)^-1`.
fn two_puncture_chain(g: u32) -> Vec<Vec<i64>> {
    let n = 2 * g + 2;
    let mut ch = vec![vec![1i64]];
    for i in 1..=g {
        ch.push(vec![2 * i as i64]);
        ch.push(interval(g, n, 2 * i, 2 * i + 1).expect("run"));
    }
    let handles = interval(g, n, 1, 2 * g).expect("run");
    ch.push(handles.clone());
    let bb: Vec<i64> = (1..=g as i64).map(|i| 2 * i).collect();
    let c = 2 * g as i64 + 1;
    let mut x = bb.clone();
    x.push(c);
    x.extend(inverse(&bb));
    let mut hc = handles;
    hc.push(c);
    x.extend(inverse(&hc));
    ch.push(x);
    ch
}

/// Ovals around consecutive pairs of `blocks` cyclically; the last block is
/// `{p-1, p}`.
fn block_chain(p: u32) -> Vec<Vec<i64>> {
    let k = p - 1;
    // block j (1-based) starts at position j; block k is {p-1, p}
    (1..=k)
        .map(|j| {
            let next = j % k + 1;
            let hi = if next == k { p } else { next };
            interval(0, p, j, hi).expect("run")
        })
        .collect()
}

fn words_to_curves(tri: &Arc<Triangulation>, words: &[Vec<i64>]) -> Result<Vec<NormalCurveSystem>> {
    words.iter().map(|w| curve_from_word(tri, w)).collect()
}

/// Model surface carrying the construction, and the `(g, p)` to use.
fn model(s: Surface) -> Result<(u32, u32)> {
    let s = as_curve_graph_surface(s);
    match (s.genus, s.punctures) {
        (g, 0) if g >= 2 => Ok((g, 1)),
        (0, p) if p >= 5 => Ok((0, p)),
        (1, p) if p >= 1 => Ok((1, p)),
        (g, p) if g >= 2 => Ok((g, p)),
        (g, p) => Err(Error::OutOfRange(format!("no construction for S_{{{g},{p}}}"))),
    }
}

fn max_family(g: u32, p: u32) -> Vec<Vec<i64>> {
    match (g, p) {
        (1, 1) => vec![vec![1], vec![2], vec![1, 2]],
        (g, 1) => one_puncture_chain(g),
        (g, 2) => two_puncture_chain(g),
        (g, p) => pairs_chain(g, 2 * g + p),
    }
}

/// Apex curve and the chain it is joined to, for the longest join.
fn max_join_family(g: u32, p: u32) -> (Vec<Vec<i64>>, Vec<i64>) {
    match (g, p) {
        (0, 5) => (vec![interval(0, 5, 1, 2).unwrap(), interval(0, 5, 2, 3).unwrap(), vec![1, 3]], interval(0, 5, 4, 5).unwrap()),
        (0, p) => (block_chain(p), interval(0, p, p - 1, p).unwrap()),
        (1, 2) => (vec![vec![1], vec![2], vec![1, 2]], interval(1, 4, 1, 2).unwrap()),
        (g, p) => (pairs_chain(g, 2 * g + p), vec![1]),
    }
}

fn name_chain(curves: Vec<NormalCurveSystem>) -> Vec<(String, NormalCurveSystem)> {
    curves.into_iter().enumerate().map(|(i, c)| (format!("k{i:02}"), c)).collect()
}

/// Pool of short curves for sub-constructions: all interval curves and the
/// handle generators, essential and pairwise distinct.
fn interval_pool(tri: &Arc<Triangulation>, g: u32, p: u32, seed: &[NormalCurveSystem]) -> Result<Vec<NormalCurveSystem>> {
    let n = 2 * g + p;
    let mut words: Vec<Vec<i64>> = Vec::new();
    for len in 1..n {
        for lo in 1..=n {
            let hi = (lo + len - 2) % n + 1;
            if let Some(w) = interval(g, n, lo, hi) {
                words.push(w);
            }
        }
    }
    for i in 1..=2 * g as i64 {
        words.push(vec![i]);
    }
    let mut pool: Vec<NormalCurveSystem> = seed.to_vec();
    for w in words {
        let c = curve_from_word(tri, &w)?;
        if !pool.contains(&c) && classify_component(&c)? == ComponentClass::Essential {
            pool.push(c);
        }
    }
    Ok(pool)
}

/// Lazily filled intersection numbers within one pool.
struct Lazy<'a> {
    pool: &'a [NormalCurveSystem],
    cache: RefCell<HashMap<(usize, usize), u64>>,
}

impl<'a> Lazy<'a> {
    fn new(pool: &'a [NormalCurveSystem]) -> Self {
        Lazy { pool, cache: RefCell::new(HashMap::new()) }
    }

    fn meet(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let key = (i.min(j), i.max(j));
        if let Some(&v) = self.cache.borrow().get(&key) {
            return v > 0;
        }
        let v = geometric_intersection(&self.pool[key.0], &self.pool[key.1]).unwrap_or(u64::MAX);
        self.cache.borrow_mut().insert(key, v);
        v > 0
    }
}

/// Depth-first search for an induced cycle of length `m` whose first vertex
/// is its smallest. `adj` is the "curves meet" relation; `budget` caps the
/// number of search nodes.
pub(crate) fn induced_cycle(
    n: usize,
    m: usize,
    adj: &dyn Fn(usize, usize) -> bool,
    budget: Option<u64>,
) -> Result<Option<Vec<usize>>> {
    struct Ctx<'a> {
        n: usize,
        m: usize,
        adj: &'a dyn Fn(usize, usize) -> bool,
        left: Option<u64>,
    }
    fn go(cx: &mut Ctx, path: &mut Vec<usize>) -> Result<bool> {
        if let Some(left) = cx.left.as_mut() {
            if *left == 0 {
                return Err(Error::OutOfRange("search budget exhausted".into()));
            }
            *left -= 1;
        }
        let last = *path.last().unwrap();
        let v0 = path[0];
        let (k, m, adj) = (path.len(), cx.m, cx.adj);
        if k == m {
            return Ok(adj(last, v0));
        }
        for v in v0 + 1..cx.n {
            if path.contains(&v) || !adj(last, v) {
                continue;
            }
            // only the closing vertex may touch the start
            if path[..k - 1].iter().enumerate().any(|(i, &u)| adj(u, v) && !(i == 0 && k == m - 1)) {
                continue;
            }
            if k == m - 1 && !adj(v0, v) {
                continue;
            }
            path.push(v);
            if go(cx, path)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
    if m < 3 {
        return Ok(None);
    }
    let mut cx = Ctx { n, m, adj, left: budget };
    for v0 in 0..n {
        let mut path = vec![v0];
        if go(&mut cx, &mut path)? {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

/// Induced cycle of length `m` among the curves of `pool` passing `keep`,
/// widening the pool with low-weight curves when the first pass fails.
fn sub_chain(
    tri: &Arc<Triangulation>,
    pool: Vec<NormalCurveSystem>,
    m: usize,
    keep: impl Fn(&NormalCurveSystem) -> Result<bool>,
    budget: Option<u64>,
) -> Result<Option<Vec<NormalCurveSystem>>> {
    let mut kept = Vec::new();
    for c in pool {
        if keep(&c)? {
            kept.push(c);
        }
    }
    for w in 0..=2 {
        if w > 0 {
            for c in enumerate_curves(tri, w, &[ComponentClass::Essential]) {
                if !kept.contains(&c) && keep(&c)? {
                    kept.push(c);
                }
            }
        }
        let lazy = Lazy::new(&kept);
        if let Some(cyc) = induced_cycle(kept.len(), m, &|i, j| lazy.meet(i, j), budget)? {
            return Ok(Some(cyc.into_iter().map(|i| kept[i].clone()).collect()));
        }
    }
    Ok(None)
}

/// Longest cyclic chain realized by the standard construction, or a shorter
/// one found among interval curves.
pub fn build_cyclic_witness(s: Surface, m: u64) -> Result<Witness> {
    build_cyclic_witness_with_budget(s, m, None)
}

/// [`build_cyclic_witness`] with a cap on search nodes for shorter lengths.
pub fn build_cyclic_witness_with_budget(s: Surface, m: u64, budget: Option<u64>) -> Result<Witness> {
    let bound = max_cyclic_chain(s);
    let Some(max) = bound.value else {
        return Err(Error::OutOfRange(format!("{s}: {bound}")));
    };
    if m < 3 || m > max {
        return Err(Error::OutOfRange(format!("length {m} on {s}; cyclic chains have 3 <= m <= {max}")));
    }
    let (g, p) = model(s)?;
    let tri = Arc::new(standard_triangulation(g, p)?);
    let family = words_to_curves(&tri, &max_family(g, p))?;
    let chain = if m == max {
        family
    } else {
        let pool = interval_pool(&tri, g, p, &family)?;
        sub_chain(&tri, pool, m as usize, |_| Ok(true), budget)?
            .ok_or_else(|| Error::OutOfRange(format!("no cyclic chain of length {m} found on {s}")))?
    };
    let w = Witness { requested: s, file: CurveFile::new(tri, name_chain(chain)), claim: ChainKind::CyclicChain };
    let cert = w.certify()?;
    if cert.kind != Some(ChainKind::CyclicChain) || cert.length as u64 != m {
        return Err(Error::Invalid(format!("construction on {s} failed to certify: {}", cert.summary())));
    }
    Ok(w)
}

/// Cyclic chain of length `m` plus one apex curve disjoint from all of it.
pub fn build_cyclic_join_k1_witness(s: Surface, m: u64) -> Result<Witness> {
    build_cyclic_join_k1_witness_with_budget(s, m, None)
}

/// [`build_cyclic_join_k1_witness`] with a cap on search nodes.
pub fn build_cyclic_join_k1_witness_with_budget(s: Surface, m: u64, budget: Option<u64>) -> Result<Witness> {
    let bound = max_cyclic_join_k1(s);
    let Some(max) = bound.value else {
        return Err(Error::OutOfRange(format!("{s}: {bound}")));
    };
    if m < 3 || m > max {
        return Err(Error::OutOfRange(format!("length {m} on {s}; joins have 3 <= m <= {max}")));
    }
    let (g, p) = model(s)?;
    let tri = Arc::new(standard_triangulation(g, p)?);
    let (words, apex_word) = max_join_family(g, p);
    let family = words_to_curves(&tri, &words)?;
    let apex = curve_from_word(&tri, &apex_word)?;
    let chain = if m == max {
        family
    } else {
        let pool = interval_pool(&tri, g, p, &family)?;
        sub_chain(&tri, pool, m as usize, |c| Ok(*c != apex && geometric_intersection(c, &apex)? == 0), budget)?
            .ok_or_else(|| Error::OutOfRange(format!("no join of length {m} found on {s}")))?
    };
    let mut curves = name_chain(chain);
    curves.push(("z0".into(), apex));
    let w = Witness { requested: s, file: CurveFile::new(tri, curves), claim: ChainKind::CyclicJoinK1 };
    let cert = w.certify()?;
    if cert.kind != Some(ChainKind::CyclicJoinK1) || cert.length as u64 != m {
        return Err(Error::Invalid(format!("construction on {s} failed to certify: {}", cert.summary())));
    }
    Ok(w)
}

// ---------------------------------------------------------------------------
// bounded exhaustive search

/// All essential curves and all arcs with every normal coordinate at most
/// `weight`, with their intersection data.
pub struct SearchSpace {
    pub triangulation: Arc<Triangulation>,
    pub weight: u64,
    pub curves: Vec<NormalCurveSystem>,
    pub arcs: Vec<NormalCurveSystem>,
    curve_matrix: Vec<Vec<u64>>,
    arc_curve: RefCell<Option<Vec<Vec<u64>>>>,
    arc_arc: RefCell<HashMap<(usize, usize), u64>>,
}

impl SearchSpace {
    pub fn new(tri: Arc<Triangulation>, weight: u64) -> Result<Self> {
        let curves = enumerate_curves(&tri, weight, &[ComponentClass::Essential]);
        let arcs = enumerate_arcs(&tri, weight);
        let curve_matrix = intersection_matrix(&curves)?;
        Ok(SearchSpace {
            triangulation: tri,
            weight,
            curves,
            arcs,
            curve_matrix,
            arc_curve: RefCell::new(None),
            arc_arc: RefCell::new(HashMap::new()),
        })
    }

    /// Search space on the standard triangulation of `S_{g,p}`.
    pub fn standard(g: u32, p: u32, weight: u64) -> Result<Self> {
        SearchSpace::new(Arc::new(standard_triangulation(g, p)?), weight)
    }

    fn meet(&self, i: usize, j: usize) -> bool {
        self.curve_matrix[i][j] > 0
    }

    fn arc_curve(&self) -> std::cell::Ref<'_, Vec<Vec<u64>>> {
        if self.arc_curve.borrow().is_none() {
            let curves = &self.curves;
            let rows: Vec<Vec<u64>> = self
                .arcs
                .par_iter()
                .map(|a| curves.iter().map(|c| geometric_intersection(a, c).unwrap_or(u64::MAX)).collect())
                .collect();
            *self.arc_curve.borrow_mut() = Some(rows);
        }
        std::cell::Ref::map(self.arc_curve.borrow(), |o| o.as_ref().unwrap())
    }

    fn arcs_meet(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        if let Some(&v) = self.arc_arc.borrow().get(&key) {
            return v > 0;
        }
        let v = geometric_intersection(&self.arcs[key.0], &self.arcs[key.1]).unwrap_or(u64::MAX);
        self.arc_arc.borrow_mut().insert(key, v);
        v > 0
    }

    fn file(&self, parts: Vec<(String, &NormalCurveSystem)>) -> CurveFile {
        CurveFile::new(self.triangulation.clone(), parts.into_iter().map(|(n, c)| (n, c.clone())).collect())
    }

    fn chain_names(&self, chain: &[usize]) -> Vec<(String, &NormalCurveSystem)> {
        chain.iter().enumerate().map(|(i, &c)| (format!("c{i:02}"), &self.curves[c])).collect()
    }

    /// A cyclic chain of length `m` among the enumerated curves.
    pub fn cyclic_chain(&self, m: usize) -> Option<CurveFile> {
        let cyc = induced_cycle(self.curves.len(), m, &|i, j| self.meet(i, j), None).ok()??;
        Some(self.file(cyc.iter().enumerate().map(|(i, &c)| (format!("k{i:02}"), &self.curves[c])).collect()))
    }

    /// Induced path `alpha_1..alpha_m` with `alpha_1` in `first`, `alpha_m`
    /// in `last` and every other vertex in `inner`.
    fn induced_path(
        &self,
        m: usize,
        first: &dyn Fn(usize) -> bool,
        last: &dyn Fn(usize) -> bool,
        inner: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        fn go(
            s: &SearchSpace,
            path: &mut Vec<usize>,
            m: usize,
            last: &dyn Fn(usize) -> bool,
            inner: &dyn Fn(usize) -> bool,
        ) -> bool {
            let k = path.len();
            if k == m {
                return true;
            }
            let tail = *path.last().unwrap();
            for v in 0..s.curves.len() {
                let ok_role = if k == m - 1 { last(v) } else { inner(v) };
                if !ok_role || path.contains(&v) || !s.meet(tail, v) {
                    continue;
                }
                if path[..k - 1].iter().any(|&u| s.meet(u, v)) {
                    continue;
                }
                path.push(v);
                if go(s, path, m, last, inner) {
                    return true;
                }
                path.pop();
            }
            false
        }
        if m == 0 {
            return Some(Vec::new());
        }
        for v in 0..self.curves.len() {
            let ok = if m == 1 { first(v) && last(v) } else { first(v) };
            if !ok {
                continue;
            }
            let mut path = vec![v];
            if go(self, &mut path, m, last, inner) {
                return Some(path);
            }
        }
        None
    }

    /// A chained triple of length `m >= 1` of the given variant, with
    /// non-isotopic end arcs.
    pub fn chained_triple(&self, m: usize, variant: TripleVariant) -> Option<CurveFile> {
        let ac = self.arc_curve();
        let notes: Vec<ArcNote> = self.arcs.iter().map(|a| arc_note("", a)).collect();
        for a in 0..self.arcs.len() {
            for b in 0..self.arcs.len() {
                if a == b {
                    continue;
                }
                if variant == TripleVariant::Star && share_puncture(&notes[a], &notes[b]) {
                    continue;
                }
                if variant == TripleVariant::RecursiveEnd && !notes[b].recursive {
                    continue;
                }
                if self.arcs_meet(a, b) {
                    continue;
                }
                let (ra, rb) = (&ac[a], &ac[b]);
                let path = self.induced_path(
                    m,
                    &|v| ra[v] > 0 && (m == 1 || rb[v] == 0),
                    &|v| rb[v] > 0 && (m == 1 || ra[v] == 0),
                    &|v| ra[v] == 0 && rb[v] == 0,
                );
                if let Some(path) = path {
                    let mut parts = vec![("a0".to_string(), &self.arcs[a])];
                    parts.extend(self.chain_names(&path));
                    parts.push(("d0".to_string(), &self.arcs[b]));
                    return Some(self.file(parts));
                }
            }
        }
        None
    }

    /// A Y-chained quadruple of length `m >= 1` with three pairwise
    /// non-isotopic arcs.
    pub fn y_quadruple(&self, m: usize) -> Option<CurveFile> {
        let ac = self.arc_curve();
        let notes: Vec<ArcNote> = self.arcs.iter().map(|a| arc_note("", a)).collect();
        let k = self.arcs.len();
        for b in 0..k {
            if !notes[b].recursive {
                continue;
            }
            for c in b + 1..k {
                if !notes[c].recursive || notes[c].punctures[0] != notes[b].punctures[0] || self.arcs_meet(b, c) {
                    continue;
                }
                for a in 0..k {
                    if a == b || a == c || self.arcs_meet(a, b) || self.arcs_meet(a, c) {
                        continue;
                    }
                    let (ra, rb, rc) = (&ac[a], &ac[b], &ac[c]);
                    let path = self.induced_path(
                        m,
                        &|v| ra[v] > 0 && (m == 1 || (rb[v] == 0 && rc[v] == 0)),
                        &|v| rb[v] > 0 && rc[v] > 0 && (m == 1 || ra[v] == 0),
                        &|v| ra[v] == 0 && rb[v] == 0 && rc[v] == 0,
                    );
                    if let Some(path) = path {
                        let mut parts = vec![("a0".to_string(), &self.arcs[a])];
                        parts.extend(self.chain_names(&path));
                        parts.push(("d2".to_string(), &self.arcs[b]));
                        parts.push(("d3".to_string(), &self.arcs[c]));
                        return Some(self.file(parts));
                    }
                }
            }
        }
        None
    }
}

/// Arcs `delta_a`, `delta_b` completing a fixed linear chain to a chained
/// triple, picked from `arcs`.
pub fn complete_triple(
    chain: &CurveFile,
    arcs: &[NormalCurveSystem],
    variant: TripleVariant,
) -> Result<Option<CurveFile>> {
    let curves = chain.systems();
    let m = curves.len();
    if m == 0 {
        return Err(Error::MalformedSystem("empty chain".into()));
    }
    let rows: Vec<Vec<u64>> = arcs
        .par_iter()
        .map(|a| curves.iter().map(|c| geometric_intersection(a, c)).collect::<Result<Vec<u64>>>())
        .collect::<Result<_>>()?;
    let fits = |r: &[u64], end: usize| (0..m).all(|i| (r[i] > 0) == (i == end));
    let notes: Vec<ArcNote> = arcs.iter().map(|a| arc_note("", a)).collect();
    for a in (0..arcs.len()).filter(|&a| fits(&rows[a], 0)) {
        for b in (0..arcs.len()).filter(|&b| fits(&rows[b], m - 1)) {
            if variant == TripleVariant::Star && share_puncture(&notes[a], &notes[b]) {
                continue;
            }
            if variant == TripleVariant::RecursiveEnd && !notes[b].recursive {
                continue;
            }
            if geometric_intersection(&arcs[a], &arcs[b])? > 0 {
                continue;
            }
            let mut parts = vec![("a0".to_string(), arcs[a].clone())];
            parts.extend(chain.curves.iter().enumerate().map(|(i, (_, c))| (format!("c{i:02}"), c.clone())));
            parts.push(("d0".to_string(), arcs[b].clone()));
            return Ok(Some(CurveFile::new(chain.triangulation.clone(), parts)));
        }
    }
    Ok(None)
}

/// Linear chain of ovals around consecutive pairs of punctures
/// `(1,2), (2,3), ..., (m, m+1)` on `S_{0,p}`.
pub fn sphere_linear_chain(p: u32, m: u32) -> Result<CurveFile> {
    if m + 1 >= p {
        return Err(Error::OutOfRange(format!("pair ovals on S_{{0,{p}}} give at most {} curves", p.saturating_sub(2))));
    }
    let tri = Arc::new(standard_triangulation(0, p)?);
    let words: Vec<Vec<i64>> = (1..=m).map(|k| interval(0, p, k, k + 1).expect("run")).collect();
    Ok(CurveFile::new(tri.clone(), name_chain(words_to_curves(&tri, &words)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_words() {
        assert_eq!(interval(1, 3, 1, 2), Some(vec![1, -2, -1, 2]));
        assert_eq!(interval(0, 5, 5, 1), Some(vec![2, 3, 4]));
        assert_eq!(interval(0, 5, 4, 5), Some(vec![1, 2, 3]));
        assert_eq!(interval(0, 5, 1, 5), None);
    }

    #[test]
    fn torus_witness() {
        let w = build_cyclic_witness(Surface::punctured(1, 1), 3).unwrap();
        let c = w.certify().unwrap();
        assert!(c.certified(), "{}", c.to_text());
        assert_eq!(c.intersection_matrix, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn rejects_long_chains() {
        assert!(matches!(build_cyclic_witness(Surface::punctured(1, 1), 4), Err(Error::OutOfRange(_))));
        assert!(matches!(build_cyclic_witness(Surface::punctured(0, 4), 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn triangles_have_induced_cycles() {
        let adj = |i: usize, j: usize| i != j && (i + 1) % 5 == j || (j + 1) % 5 == i;
        assert_eq!(induced_cycle(5, 5, &adj, None).unwrap(), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(induced_cycle(5, 4, &adj, None).unwrap(), None);
        assert!(induced_cycle(5, 5, &adj, Some(2)).is_err());
    }
}
