//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line with its
//! measured runtime against the pinned limit. Criteria run one at a time so
//! timings are not skewed by each other.

mod common;

use std::fs;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use curvechain::bounds::{max_cyclic_chain, max_cyclic_join_k1};
use curvechain::decide::{
    consistency_audit, decide_braid_virtual, decide_raag_cycle, decide_raag_cycle_times_z, plan_route,
    validate_route,
};
use curvechain::engine::{geometric_intersection, parse_ncs, standard_triangulation, NormalCurveSystem, Triangulation};
use curvechain::graph::{complement, disjoint_union, is_full_subgraph, join};
use curvechain::witness::verify_cyclic_chain;
use curvechain::{Answer, BoundKind, FiniteGraph, SearchSpace, StepKind, Surface, TripleVariant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{cyclic_cells, golden_dir, stem};

static SERIAL: Mutex<()> = Mutex::new(());

fn run(id: &str, what: &str, limit: Duration, body: impl FnOnce() -> Result<String, String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let t = Instant::now();
    let out = body();
    let dt = t.elapsed();
    let (ok, detail) = match out {
        Ok(d) if dt <= limit => (true, d),
        Ok(d) => (false, format!("{d}; too slow")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {id} {what}: {} ({detail}; {:.2}s, limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        dt.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

fn chi(g: i64, p: i64, b: i64) -> i64 {
    2 - 2 * g - p - b
}

/// Braid thresholds of Thms main_1 and main_2, floored at 1.
fn braid_oracle(g: i64, p: i64, b: i64) -> u64 {
    let x = chi(g, p, b);
    let raw = if b == 0 {
        match (g, p) {
            (0, 0..=3) => 1,
            (0, 4) | (1, 0) | (1, 1) => 2,
            (0, _) => -x,
            (_, 0) => 2 - x,
            _ => 1 - x,
        }
    } else if g >= 1 && p + b <= 2 {
        2 - x
    } else {
        1 - x
    };
    raw.max(1) as u64
}

/// Thm cyc_mcg.
fn cyc_oracle(g: i64, p: i64) -> u64 {
    (match (g, p) {
        (0, 0..=3) => 0,
        (0, 4) | (1, 0) | (1, 1) => 3,
        (1, 2) | (0, 5) => 5,
        (_, 0) if g >= 2 => 2 * g + 2,
        (_, 1 | 2) if g >= 2 => 2 * g + p + 1,
        _ => 2 * g + p,
    }) as u64
}

/// Thm cyc_plus_z_mcg; `None` where no row applies.
fn cyc_z_oracle(g: i64, p: i64) -> Option<u64> {
    let v = match (g, p) {
        (0, 4) | (1, 1) => 0,
        (0, 5) | (1, 2) => 3,
        (0, _) if p >= 6 => p - 1,
        (1, _) if p >= 3 => p + 2,
        (_, 0) if g >= 2 => 2 * g + 1,
        _ if g >= 2 => 2 * g + p,
        _ => return None,
    };
    Some(v as u64)
}

/// Lemma cyclic_full_subgraph.
fn cyclic_lemma(g: i64, p: i64) -> Option<u64> {
    let v = match (g, p) {
        (0, _) if p >= 5 => p,
        (1, 1) => 3,
        (1, 2) => 5,
        (1, _) if p >= 3 => p + 2,
        (_, 0) if g >= 2 => 2 * g + 2,
        (_, 1 | 2) if g >= 2 => 2 * g + p + 1,
        _ if g >= 2 => 2 * g + p,
        _ => return None,
    };
    Some(v as u64)
}

/// Lemma cyclic_plus_full_subgraph.
fn join_lemma(g: i64, p: i64) -> Option<u64> {
    let v = match (g, p) {
        (0, 5) | (1, 2) => 3,
        (0, _) if p >= 6 => p - 1,
        (1, _) if p >= 3 => p + 2,
        (_, 0) if g >= 2 => 2 * g + 1,
        _ if g >= 2 => 2 * g + p,
        _ => return None,
    };
    Some(v as u64)
}

fn expect<T: PartialEq + std::fmt::Debug>(what: String, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

#[test]
fn criterion_1_theorem_tables() {
    run("1", "theorem tables", Duration::from_secs(1), || {
        let mut checks = 0u64;
        for g in 0..=6i64 {
            for p in 0..=10i64 {
                for b in 0..=4i64 {
                    let s = Surface::new(g as u32, p as u32, b as u32);
                    let t = braid_oracle(g, p, b);
                    let v = decide_braid_virtual(t, s);
                    expect(format!("braid threshold {s}"), v.threshold, Some(t))?;
                    expect(format!("braid yes at {t} on {s}"), v.answer, Answer::Yes)?;
                    expect(format!("braid no at {} on {s}", t + 1), decide_braid_virtual(t + 1, s).answer, Answer::No)?;
                    checks += 3;
                }
                let s = Surface::punctured(g as u32, p as u32);
                let c = cyc_oracle(g, p);
                expect(format!("cyc threshold {s}"), decide_raag_cycle(3, s).unwrap().threshold, Some(c))?;
                expect(format!("cyc no above {s}"), decide_raag_cycle(c + 1, s).unwrap().answer, Answer::No)?;
                let z = decide_raag_cycle_times_z(3, s).unwrap();
                match cyc_z_oracle(g, p) {
                    Some(t) => {
                        expect(format!("cyc x Z threshold {s}"), z.threshold, Some(t))?;
                        expect(format!("cyc x Z no above {s}"), decide_raag_cycle_times_z(t + 1, s).unwrap().answer, Answer::No)?;
                    }
                    None => expect(format!("cyc x Z no-claim {s}"), z.answer, Answer::NoClaim)?,
                }
                let cb = max_cyclic_chain(s);
                expect(format!("cyclic bound {s}"), cb.value, cyclic_lemma(g, p))?;
                if cb.value.is_some() {
                    expect(format!("cyclic bound kind {s}"), cb.kind, BoundKind::Exact)?;
                }
                expect(format!("join bound {s}"), max_cyclic_join_k1(s).value, join_lemma(g, p))?;
                checks += 5;
            }
        }
        expect("anchor braid S2,0,0".into(), decide_braid_virtual(4, Surface::punctured(2, 0)).threshold, Some(4))?;
        expect("anchor cyc S1,2,0".into(), decide_raag_cycle(5, Surface::punctured(1, 2)).unwrap().threshold, Some(5))?;
        expect("anchor cyclic S3,1,0".into(), max_cyclic_chain(Surface::punctured(3, 1)).value, Some(8))?;
        Ok(format!("{checks} cell checks and 3 anchors"))
    });
}

fn edge_cell(s: Surface) -> bool {
    s == Surface::new(0, 0, 1) || s == Surface::new(0, 0, 2) || s.euler_char() >= 0
}

fn sporadic(s: Surface) -> bool {
    s.boundary == 0 && matches!((s.genus, s.punctures), (0, 4) | (1, 1) | (0, 5) | (1, 2))
}

#[test]
fn criterion_2_consistency_audit() {
    run("2", "consistency audit", Duration::from_secs(5), || {
        let r = consistency_audit(6, 10, 4);
        if let Some(m) = r.mismatches.first() {
            return Err(format!("{} mismatches, first {} rule {}: {}", r.mismatches.len(), m.surface, m.rule, m.detail));
        }
        for w in &r.whitelisted {
            let ok = if w.rule == "ii" { sporadic(w.surface) || edge_cell(w.surface) } else { edge_cell(w.surface) };
            if !ok {
                return Err(format!("unexpected whitelist entry {} rule {}", w.surface, w.rule));
            }
        }
        let ii = r.whitelisted.iter().filter(|w| w.rule == "ii").count();
        Ok(format!(
            "{} cells, {} routes, 0 mismatches, {} whitelisted ({ii} sporadic rule-(ii) rows)",
            r.cells,
            r.routes_checked,
            r.whitelisted.len()
        ))
    });
}

#[test]
fn criterion_3_route_validity() {
    run("3", "route validity", Duration::from_secs(10), || {
        let (mut cells, mut routes, mut pseudo) = (0, 0, 0);
        for g in 0..=10u32 {
            for p in 0..=14u32 {
                for b in 0..=6u32 {
                    let s = Surface::new(g, p, b);
                    cells += 1;
                    let t = decide_braid_virtual(0, s).threshold.unwrap();
                    for n in 0..=t + 1 {
                        let r = plan_route(n, s);
                        if (n <= t) != r.is_ok() {
                            return Err(format!("route for n={n} on {s} disagrees with the verdict"));
                        }
                        let Ok(r) = r else { continue };
                        routes += 1;
                        validate_route(&r).map_err(|v| format!("n={n} {s}: {}", v.join("; ")))?;
                        for st in r.steps.iter().filter(|st| st.kind == StepKind::PseudoAnnularExtension) {
                            pseudo += 1;
                            let k = st.source.punctures as i64;
                            let q = st.params;
                            let (tg, tp, tb) = (s.genus as i64, s.punctures as i64, s.boundary as i64);
                            if st.source.genus != 0 || st.source.boundary != 1 || st.target != s {
                                return Err(format!("pseudo-annular step {st} does not start on a sphere"));
                            }
                            let left = k + 1 - 2 * q.annuli as i64 - q.disks as i64;
                            if q.annuli as i64 != tg || q.disks as i64 != tp || left != tb {
                                return Err(format!("pseudo-annular bookkeeping off for {st}: {left} circles left"));
                            }
                        }
                    }
                }
            }
        }
        if cells < 500 {
            return Err(format!("only {cells} cells"));
        }
        Ok(format!("{cells} cells, {routes} routes, {pseudo} pseudo-annular steps"))
    });
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 * b.1 - a.1 * b.0).abs()
}

fn slope_pairs(tri: &std::sync::Arc<Triangulation>, edges: &[(i64, i64)], scale: u64) -> Result<usize, String> {
    let mut ss = Vec::new();
    for p in 0..=20i64 {
        for q in -20..=20i64 {
            if gcd(p, q) == 1 && !(p == 0 && q != 1) {
                ss.push((p, q));
            }
        }
    }
    let cs: Vec<NormalCurveSystem> = ss
        .iter()
        .map(|&s| NormalCurveSystem::new(tri.clone(), edges.iter().map(|&e| det(s, e) as u64).collect()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    (0..ss.len())
        .into_par_iter()
        .map(|i| {
            for j in i + 1..ss.len() {
                let got = geometric_intersection(&cs[i], &cs[j]).map_err(|e| e.to_string())?;
                let want = scale * det(ss[i], ss[j]) as u64;
                if got != want {
                    return Err(format!("slopes {:?} {:?}: got {got}, want {want}", ss[i], ss[j]));
                }
            }
            Ok(ss.len() - i - 1)
        })
        .sum()
}

#[test]
fn criterion_4_slope_oracles() {
    run("4", "slope oracles", Duration::from_secs(60), || {
        let torus = std::sync::Arc::new(standard_triangulation(1, 1).unwrap());
        let a = slope_pairs(&torus, &[(1, 0), (0, 1), (1, 1)], 1)?;
        let pillow = std::sync::Arc::new(
            Triangulation::from_signed_sides(&[[1, 2, 5], [-5, 3, 4], [6, -2, -1], [-4, -3, -6]]).unwrap(),
        );
        let b = slope_pairs(&pillow, &[(1, 0), (0, 1), (1, 1), (1, 0), (0, 1), (-1, 1)], 2)?;
        if a + b < 60_000 {
            return Err(format!("only {} pairs", a + b));
        }
        Ok(format!("{a} pairs on S1,1 and {b} on S0,4, all exact"))
    });
}

#[test]
fn criterion_5_golden_witnesses() {
    run("5", "golden witnesses", Duration::from_secs(120), || {
        let cells = cyclic_cells();
        for &(s, m) in &cells {
            let name = stem("cyclic", s, m);
            let text = fs::read_to_string(golden_dir().join(format!("{name}.ncs"))).map_err(|e| format!("{name}: {e}"))?;
            let f = parse_ncs(&text).map_err(|e| format!("{name}: {e}"))?;
            if f.triangulation.surface() != s {
                return Err(format!("{name} lives on {}", f.triangulation.surface()));
            }
            let c = verify_cyclic_chain(&f).map_err(|e| format!("{name}: {e}"))?;
            let k = c.length;
            if k as u64 != m {
                return Err(format!("{name}: length {k}"));
            }
            for i in 0..k {
                for j in 0..k {
                    let d = (i + k - j) % k;
                    let consecutive = d == 1 || d == k - 1;
                    if (c.intersection_matrix[i][j] > 0) != consecutive {
                        return Err(format!("{name}: entry ({i},{j}) = {}", c.intersection_matrix[i][j]));
                    }
                }
            }
            if !(c.flags.all_essential && c.flags.pairwise_non_isotopic && c.certified()) {
                return Err(format!("{name}: {}", c.summary()));
            }
        }
        Ok(format!("{} golden chains certified", cells.len()))
    });
}

/// Weight bound of the falsification searches.
const W: u64 = 6;

fn space(g: u32, p: u32) -> Result<SearchSpace, String> {
    SearchSpace::standard(g, p, W).map_err(|e| e.to_string())
}

#[test]
fn criterion_6a_no_c4_on_s11() {
    run("6a", "no cyclic chain of length 4 on S1,1", Duration::from_secs(600), || {
        let sp = space(1, 1)?;
        match sp.cyclic_chain(4) {
            None => Ok(format!("{} curves searched, 0 findings", sp.curves.len())),
            Some(f) => Err(format!("found {:?}", f.curves.iter().map(|c| c.1.weights().to_vec()).collect::<Vec<_>>())),
        }
    });
}

#[test]
fn criterion_6b_no_c6_on_s12() {
    run("6b", "no cyclic chain of length 6 on S1,2", Duration::from_secs(600), || {
        let sp = space(1, 2)?;
        match sp.cyclic_chain(6) {
            None => Ok(format!("{} curves searched, 0 findings", sp.curves.len())),
            Some(f) => Err(format!("found {:?}", f.curves.iter().map(|c| c.1.weights().to_vec()).collect::<Vec<_>>())),
        }
    });
}

/// Expected to fail: the three edges of the ideal triangulation of S_{1,1}
/// together with a curve meeting all of them form a Y-chained quadruple.
#[test]
fn criterion_6c_no_y_quadruple_on_s11() {
    run("6c", "no Y-quadruple on S1,1", Duration::from_secs(600), || {
        let sp = space(1, 1)?;
        for m in 1..=3 {
            if let Some(f) = sp.y_quadruple(m) {
                let parts: Vec<String> =
                    f.curves.iter().map(|(n, c)| format!("{n}={:?}/{:?}", c.weights(), c.ends())).collect();
                return Err(format!("found a length-{m} Y-quadruple: {}", parts.join(" ")));
            }
        }
        Ok(format!("{} curves and {} arcs searched, 0 findings", sp.curves.len(), sp.arcs.len()))
    });
}

#[test]
fn criterion_6d_no_star_triple_of_length_2_on_s04() {
    run("6d", "no star triple of length 2 on S0,4", Duration::from_secs(600), || {
        let sp = space(0, 4)?;
        match sp.chained_triple(2, TripleVariant::Star) {
            None => Ok(format!("{} curves and {} arcs searched, 0 findings", sp.curves.len(), sp.arcs.len())),
            Some(f) => Err(format!("found {:?}", f.curves.iter().map(|c| c.1.weights().to_vec()).collect::<Vec<_>>())),
        }
    });
}

/// Random graph on at most `max` vertices.
fn random_graph(rng: &mut ChaCha8Rng, max: usize) -> FiniteGraph {
    let n = rng.gen_range(0..=max);
    let mut g = FiniteGraph::empty(n);
    let density: f64 = rng.gen_range(0.1..0.9);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Enumerates every injection and tests each one in full.
fn brute_force(p: &FiniteGraph, h: &FiniteGraph) -> bool {
    fn go(p: &FiniteGraph, h: &FiniteGraph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if map.len() == p.vertex_count() {
            let k = map.len();
            return (0..k).all(|i| (i + 1..k).all(|j| p.has_edge(i, j) == h.has_edge(map[i], map[j])));
        }
        for v in 0..h.vertex_count() {
            if !used[v] {
                used[v] = true;
                map.push(v);
                if go(p, h, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    go(p, h, &mut Vec::new(), &mut vec![false; h.vertex_count()])
}

#[test]
fn criterion_7_graph_oracles() {
    run("7", "graph oracles", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut found = 0;
        for i in 0..1000 {
            let p = random_graph(&mut rng, 6);
            let h = random_graph(&mut rng, 8);
            let got = is_full_subgraph(&p, &h);
            if let Some(w) = &got {
                if !w.is_valid(&p, &h) {
                    return Err(format!("instance {i}: invalid witness"));
                }
                found += 1;
            }
            if got.is_some() != brute_force(&p, &h) {
                return Err(format!("instance {i}: search and brute force disagree"));
            }
        }
        for i in 0..1000 {
            let a = random_graph(&mut rng, 12);
            let n = a.vertex_count();
            let c = complement(&a);
            if complement(&c) != a || a.edge_count() + c.edge_count() != n * n.saturating_sub(1) / 2 {
                return Err(format!("graph {i}: complement identity"));
            }
            let b = random_graph(&mut rng, 12 - n);
            if complement(&join(&a, &b)) != disjoint_union(&c, &complement(&b)) {
                return Err(format!("graph {i}: join identity"));
            }
        }
        Ok(format!("1000 search instances ({found} embeddable), 1000 identity checks"))
    });
}
