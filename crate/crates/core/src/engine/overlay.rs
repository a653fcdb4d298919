//! Overlay of two normal systems as a cellular map on the truncated surface.
//!
//! Each triangle is a hexagon `K0 S0 K1 S1 K2 S2` with strands drawn as
//! straight chords. The relative order of the two systems' points on every
//! side and corner interval is the only freedom; bigon and half-bigon
//! removal act by swapping adjacent points of different systems.

use super::normal::{Layout, NormalCurveSystem, UnionFind};
use super::triangulation::Triangulation;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    Junction,
    Point(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DartKind {
    /// Counterclockwise piece of a side: global glued segment id.
    Side(usize),
    /// Counterclockwise piece of a puncture circle: corner and segment index.
    Circle(usize, usize),
    /// Clockwise boundary piece; lies on the outer face of its hexagon.
    Outer,
    Strand(u8),
}

struct Dart {
    to: usize,
    kind: DartKind,
}

/// A connected component of the complement of both systems.
#[derive(Clone, Debug, Default)]
pub(crate) struct Region {
    pub faces: usize,
    pub side_darts: Vec<usize>,
    pub crossing_corners: Vec<usize>,
    pub circle_segments: Vec<(usize, usize)>,
    pub strand_darts: usize,
}

impl Region {
    pub fn chi(&self) -> i64 {
        self.faces as i64 - (self.side_darts.len() / 2) as i64
    }
}

pub(crate) struct Built {
    pub crossings: usize,
    pub regions: Vec<Region>,
    pub chi: i64,
    darts: Vec<Dart>,
    rot: Vec<Vec<usize>>,
    rot_pos: Vec<usize>,
    region_of_dart: Vec<usize>,
    glued_partner: Vec<usize>,
    /// Glued segment id to (edge, canonical segment index).
    seg_info: Vec<(usize, usize)>,
}

pub(crate) struct Overlay<'a> {
    tri: &'a Triangulation,
    lay: [Layout; 2],
    edge_order: Vec<Vec<u8>>,
    corner_order: Vec<Vec<u8>>,
}

fn merge(ka: usize, kb: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(ka + kb);
    let (mut i, mut j) = (0, 0);
    while i < ka || j < kb {
        let take_a = j == kb || (i < ka && (i + 1) * (kb + 1) <= (j + 1) * (ka + 1));
        if take_a {
            out.push(0);
            i += 1;
        } else {
            out.push(1);
            j += 1;
        }
    }
    out
}

impl<'a> Overlay<'a> {
    pub fn new(a: &'a NormalCurveSystem, b: &'a NormalCurveSystem) -> Result<Self> {
        let tri = a.triangulation().as_ref();
        let lay = [a.layout()?, b.layout()?];
        let edge_order = (0..tri.edge_count())
            .map(|e| merge(a.weights()[e] as usize, b.weights()[e] as usize))
            .collect();
        let corner_order = (0..3 * tri.triangle_count())
            .map(|k| merge(a.ends()[k] as usize, b.ends()[k] as usize))
            .collect();
        Ok(Overlay { tri, lay, edge_order, corner_order })
    }

    pub fn build(&self) -> Built {
        let tri = self.tri;
        let nt = tri.triangle_count();
        let mut seg_off = Vec::with_capacity(tri.edge_count());
        let mut acc = 0;
        let mut seg_info = Vec::new();
        for (e, ord) in self.edge_order.iter().enumerate() {
            seg_off.push(acc);
            acc += ord.len() + 1;
            for j in 0..=ord.len() {
                seg_info.push((e, j));
            }
        }
        let mut darts: Vec<Dart> = Vec::new();
        let mut rot: Vec<Vec<usize>> = Vec::new();
        let mut crossings = 0usize;
        let mut strand_edges = 0usize;

        for t in 0..nt {
            let vbase = rot.len();
            // boundary circle of the hexagon
            let mut items: Vec<Item> = Vec::new();
            let mut seg_kind: Vec<DartKind> = Vec::new();
            let mut pos: [[Vec<usize>; 6]; 2] = Default::default();
            for c in 0..3usize {
                let corner = 3 * t + c;
                let kiv = 2 * c;
                for (j, &tag) in self.corner_order[corner].iter().enumerate() {
                    seg_kind.push(DartKind::Circle(corner, j + 1));
                    pos[tag as usize][kiv].push(items.len());
                    items.push(Item::Point(tag));
                }
                // junction K_c | S_c
                let e = tri.edge(t, c as u8);
                let canon = tri.is_canonical_side(t, c as u8);
                let ord = &self.edge_order[e];
                let k = ord.len();
                let seg = |j: usize| seg_off[e] + if canon { j } else { k - j };
                seg_kind.push(DartKind::Side(seg(0)));
                items.push(Item::Junction);
                let siv = 2 * c + 1;
                for j in 0..k {
                    let tag = if canon { ord[j] } else { ord[k - 1 - j] };
                    seg_kind.push(DartKind::Side(seg(j + 1)));
                    pos[tag as usize][siv].push(items.len());
                    items.push(Item::Point(tag));
                }
                // junction S_c | K_{c+1}
                seg_kind.push(DartKind::Circle(3 * t + (c + 1) % 3, 0));
                items.push(Item::Junction);
            }
            let l = items.len();
            // chords
            let mut chords: [Vec<(usize, usize)>; 2] = Default::default();
            for s in 0..2 {
                for (x, y) in self.lay[s].pieces[t].chords() {
                    chords[s].push((pos[s][x.0 as usize][x.1], pos[s][y.0 as usize][y.1]));
                }
            }
            let dist = |from: usize, x: usize| (x + l - from) % l;
            let in_arc = |x: usize, from: usize, to: usize| dist(from, x) < dist(from, to);
            // crossings: (a chord, b chord)
            let mut xs: Vec<(usize, usize)> = Vec::new();
            for (ia, &(ua, va)) in chords[0].iter().enumerate() {
                for (ib, &(ub, vb)) in chords[1].iter().enumerate() {
                    if in_arc(ub, ua, va) != in_arc(vb, ua, va) {
                        xs.push((ia, ib));
                    }
                }
            }
            crossings += xs.len();
            for _ in 0..l + xs.len() {
                rot.push(Vec::new());
            }
            // circle darts: segment i runs from item i to item i+1
            let mut ccw_dart = vec![0usize; l];
            let mut cw_dart = vec![0usize; l];
            for i in 0..l {
                let d = darts.len();
                darts.push(Dart { to: vbase + (i + 1) % l, kind: seg_kind[i] });
                darts.push(Dart { to: vbase + i, kind: DartKind::Outer });
                ccw_dart[i] = d;
                cw_dart[i] = d + 1;
            }
            // strand pieces; per crossing: [a_fwd, a_back, b_fwd, b_back]
            let mut at_x = vec![[usize::MAX; 4]; xs.len()];
            let mut chord_dart_at = vec![usize::MAX; l];
            for s in 0..2 {
                let mut along: Vec<Vec<(usize, usize)>> = vec![Vec::new(); chords[s].len()];
                for (k, &(ia, ib)) in xs.iter().enumerate() {
                    let (own, other) = if s == 0 { (ia, chords[1][ib]) } else { (ib, chords[0][ia]) };
                    let (u, v) = chords[s][own];
                    let right = if in_arc(other.0, u, v) { other.0 } else { other.1 };
                    along[own].push((dist(u, right), k));
                }
                for (ci, &(u, v)) in chords[s].iter().enumerate() {
                    let list = &mut along[ci];
                    list.sort_unstable();
                    let mut nodes = vec![vbase + u];
                    nodes.extend(list.iter().map(|&(_, k)| vbase + l + k));
                    nodes.push(vbase + v);
                    strand_edges += nodes.len() - 1;
                    for w in 0..nodes.len() - 1 {
                        let d = darts.len();
                        darts.push(Dart { to: nodes[w + 1], kind: DartKind::Strand(s as u8) });
                        darts.push(Dart { to: nodes[w], kind: DartKind::Strand(s as u8) });
                        // d leaves nodes[w] forward, d+1 leaves nodes[w+1] backward
                        if w == 0 {
                            chord_dart_at[u] = d;
                        } else {
                            let k = list[w - 1].1;
                            at_x[k][2 * s] = d;
                        }
                        if w + 1 == nodes.len() - 1 {
                            chord_dart_at[v] = d + 1;
                        } else {
                            let k = list[w].1;
                            at_x[k][2 * s + 1] = d + 1;
                        }
                    }
                }
            }
            for i in 0..l {
                let r = &mut rot[vbase + i];
                r.push(ccw_dart[i]);
                if let Item::Point(_) = items[i] {
                    r.push(chord_dart_at[i]);
                }
                r.push(cw_dart[(i + l - 1) % l]);
            }
            for (k, &(ia, ib)) in xs.iter().enumerate() {
                let (ua, va) = chords[0][ia];
                let (_, vb) = chords[1][ib];
                let [af, ab, bf, bb] = at_x[k];
                // b's forward end lies on the left of a when it is in the arc va -> ua
                let (bl, br) = if in_arc(vb, va, ua) { (bf, bb) } else { (bb, bf) };
                rot[vbase + l + k] = vec![af, bl, ab, br];
            }
        }

        let nd = darts.len();
        let mut rot_pos = vec![0usize; nd];
        for r in &rot {
            for (i, &d) in r.iter().enumerate() {
                rot_pos[d] = i;
            }
        }
        let next = |d: usize| -> usize {
            let v = darts[d].to;
            let r = &rot[v];
            r[(rot_pos[d ^ 1] + r.len() - 1) % r.len()]
        };

        // faces
        let mut face_of = vec![usize::MAX; nd];
        let mut face_outer = Vec::new();
        let mut nfaces = 0;
        for d0 in 0..nd {
            if face_of[d0] != usize::MAX {
                continue;
            }
            let f = nfaces;
            nfaces += 1;
            let mut outer = false;
            let mut d = d0;
            loop {
                face_of[d] = f;
                if darts[d].kind == DartKind::Outer {
                    outer = true;
                }
                d = next(d);
                if d == d0 {
                    break;
                }
            }
            face_outer.push(outer);
        }

        // glue faces across side segments
        let mut seg_darts: Vec<Vec<usize>> = vec![Vec::new(); seg_info.len()];
        for (d, dart) in darts.iter().enumerate() {
            if let DartKind::Side(g) = dart.kind {
                seg_darts[g].push(d);
            }
        }
        let mut glued_partner = vec![usize::MAX; nd];
        let mut uf = UnionFind::new(nfaces);
        for ds in &seg_darts {
            debug_assert_eq!(ds.len(), 2);
            glued_partner[ds[0]] = ds[1];
            glued_partner[ds[1]] = ds[0];
            uf.union(face_of[ds[0]], face_of[ds[1]]);
        }
        let mut region_index = vec![usize::MAX; nfaces];
        let mut regions: Vec<Region> = Vec::new();
        let mut inner_faces = 0;
        for f in 0..nfaces {
            if face_outer[f] {
                continue;
            }
            inner_faces += 1;
            let r = uf.find(f);
            if region_index[r] == usize::MAX {
                region_index[r] = regions.len();
                regions.push(Region::default());
            }
            regions[region_index[r]].faces += 1;
        }
        let is_crossing = |v: usize| rot[v].len() == 4;
        let mut region_of_dart = vec![usize::MAX; nd];
        for d in 0..nd {
            let f = face_of[d];
            if face_outer[f] {
                continue;
            }
            let ri = region_index[uf.find(f)];
            region_of_dart[d] = ri;
            let reg = &mut regions[ri];
            match darts[d].kind {
                DartKind::Side(_) => reg.side_darts.push(d),
                DartKind::Circle(k, j) => reg.circle_segments.push((k, j)),
                DartKind::Strand(_) => {
                    reg.strand_darts += 1;
                    if is_crossing(darts[d].to) {
                        reg.crossing_corners.push(darts[d].to);
                    }
                }
                DartKind::Outer => {}
            }
        }

        let points: usize = self.edge_order.iter().map(Vec::len).sum();
        let ends: usize = self.corner_order.iter().map(Vec::len).sum();
        let v = crossings + points + ends + 2 * tri.edge_count();
        let e = strand_edges + seg_info.len() + ends + 3 * nt;
        let chi = v as i64 - e as i64 + inner_faces as i64;

        Built { crossings, regions, chi, darts, rot, rot_pos, region_of_dart, glued_partner, seg_info }
    }

    /// Swaps to apply for a bigon or half-bigon region, or `None` if the
    /// region is neither.
    fn removal(&self, built: &Built, r: &Region) -> Option<Vec<Swap>> {
        if r.chi() != 1 {
            return None;
        }
        let mut corners = r.crossing_corners.clone();
        corners.sort_unstable();
        let bigon = r.circle_segments.is_empty() && corners.len() == 2 && corners[0] != corners[1];
        let half = r.circle_segments.len() == 1 && corners.len() == 1;
        if !bigon && !half {
            return None;
        }
        let mut swaps = Vec::new();
        for &d in r.side_darts.iter() {
            let Some(DartKind::Side(g)) = built.darts.get(d).map(|x| x.kind) else { continue };
            let (e, j) = built.seg_info[g];
            let ord = &self.edge_order[e];
            if j == 0 || j == ord.len() || ord[j - 1] == ord[j] {
                return None;
            }
            let s = Swap::Edge(e, j);
            if !swaps.contains(&s) {
                swaps.push(s);
            }
        }
        if half {
            let (k, j) = r.circle_segments[0];
            let ord = &self.corner_order[k];
            if j == 0 || j == ord.len() || ord[j - 1] == ord[j] {
                return None;
            }
            swaps.push(Swap::Corner(k, j));
        }
        Some(swaps)
    }

    fn apply(&mut self, s: Swap) {
        match s {
            Swap::Edge(e, j) => self.edge_order[e].swap(j - 1, j),
            Swap::Corner(k, j) => self.corner_order[k].swap(j - 1, j),
        }
    }

    /// Removes bigons and half-bigons until none remain; returns the final
    /// crossing count.
    pub fn minimize(&mut self) -> usize {
        let mut last = usize::MAX;
        loop {
            let built = self.build();
            debug_assert_eq!(built.chi, self.tri.surface().euler_char(), "overlay Euler characteristic");
            assert!(built.crossings < last || last == usize::MAX, "bigon removal must reduce crossings");
            last = built.crossings;
            let mut used_x: Vec<usize> = Vec::new();
            let mut used_pts: Vec<(bool, usize, usize)> = Vec::new();
            let mut chosen: Vec<Swap> = Vec::new();
            for r in &built.regions {
                let Some(sw) = self.removal(&built, r) else { continue };
                let pts: Vec<(bool, usize, usize)> = sw
                    .iter()
                    .flat_map(|s| match *s {
                        Swap::Edge(e, j) => [(true, e, j - 1), (true, e, j)],
                        Swap::Corner(k, j) => [(false, k, j - 1), (false, k, j)],
                    })
                    .collect();
                if r.crossing_corners.iter().any(|x| used_x.contains(x)) || pts.iter().any(|p| used_pts.contains(p)) {
                    continue;
                }
                used_x.extend(&r.crossing_corners);
                used_pts.extend(pts);
                chosen.extend(sw);
            }
            if chosen.is_empty() {
                return built.crossings;
            }
            for s in chosen {
                self.apply(s);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Swap {
    Edge(usize, usize),
    Corner(usize, usize),
}

/// Boundary circles of a region: `true` for those touching a strand.
pub(crate) fn region_boundaries(built: &Built) -> Vec<Vec<bool>> {
    let nd = built.darts.len();
    let next = |d: usize| -> usize {
        let v = built.darts[d].to;
        let r = &built.rot[v];
        r[(built.rot_pos[d ^ 1] + r.len() - 1) % r.len()]
    };
    let mut out = vec![Vec::new(); built.regions.len()];
    let mut seen = vec![false; nd];
    for d0 in 0..nd {
        let ri = built.region_of_dart[d0];
        if ri == usize::MAX || seen[d0] || matches!(built.darts[d0].kind, DartKind::Side(_)) {
            continue;
        }
        let mut strand = false;
        let mut d = d0;
        loop {
            seen[d] = true;
            if let DartKind::Strand(_) = built.darts[d].kind {
                strand = true;
            }
            let mut n = next(d);
            while let DartKind::Side(_) = built.darts[n].kind {
                n = next(built.glued_partner[n]);
            }
            d = n;
            if d == d0 {
                break;
            }
        }
        out[ri].push(strand);
    }
    out
}
