//! Finite simple graphs, the complement/join algebra and full (induced)
//! subgraph search.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n` stored as adjacency bitsets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteGraph {
    n: usize,
    adj: Vec<Vec<u64>>,
    /// Optional per-vertex labels; ignored by equality and search.
    pub labels: Option<Vec<String>>,
}

impl PartialEq for FiniteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for FiniteGraph {}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
}

impl FiniteGraph {
    pub fn empty(n: usize) -> Self {
        FiniteGraph { n, adj: vec![vec![0; words(n)]; n], labels: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = FiniteGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::BadParameter(format!("edge ({u},{v}) outside 0..{}", self.n)));
        }
        if u == v {
            return Err(Error::BadParameter(format!("loop at vertex {u}")));
        }
        self.adj[u][v / 64] |= 1 << (v % 64);
        self.adj[v][u / 64] |= 1 << (u % 64);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_edge(u, v)).collect()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = Some(labels);
        self
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> FiniteGraph {
        let mut g = FiniteGraph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j).expect("indices in range");
                }
            }
        }
        g
    }

    /// Text form: `graph <n>` then one `e <i> <j>` line per edge, sorted.
    pub fn to_text(&self) -> String {
        let mut s = format!("graph {}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph text".into()))?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["graph", n] => n.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex count {n}")))?,
            _ => return Err(Error::Parse(format!("expected 'graph <n>', got {header:?}"))),
        };
        let mut g = FiniteGraph::empty(n);
        for line in lines {
            match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["e", a, b] => {
                    let a = a.parse().map_err(|_| Error::Parse(format!("bad edge line {line:?}")))?;
                    let b = b.parse().map_err(|_| Error::Parse(format!("bad edge line {line:?}")))?;
                    g.add_edge(a, b)?;
                }
                _ => return Err(Error::Parse(format!("bad edge line {line:?}"))),
            }
        }
        Ok(g)
    }
}

pub fn complement(g: &FiniteGraph) -> FiniteGraph {
    let mut h = FiniteGraph::empty(g.n);
    for u in 0..g.n {
        for v in u + 1..g.n {
            if !g.has_edge(u, v) {
                h.add_edge(u, v).expect("indices in range");
            }
        }
    }
    h
}

pub fn disjoint_union(a: &FiniteGraph, b: &FiniteGraph) -> FiniteGraph {
    let mut h = FiniteGraph::empty(a.n + b.n);
    for (u, v) in a.edges() {
        h.add_edge(u, v).expect("indices in range");
    }
    for (u, v) in b.edges() {
        h.add_edge(a.n + u, a.n + v).expect("indices in range");
    }
    h
}

/// Disjoint union plus every edge between the two vertex sets.
pub fn join(a: &FiniteGraph, b: &FiniteGraph) -> FiniteGraph {
    let mut h = disjoint_union(a, b);
    for u in 0..a.n {
        for v in 0..b.n {
            h.add_edge(u, a.n + v).expect("indices in range");
        }
    }
    h
}

pub fn family(kind: Family, m: usize) -> Result<FiniteGraph> {
    let mut g = FiniteGraph::empty(m);
    match kind {
        Family::Path => {
            for i in 1..m {
                g.add_edge(i - 1, i)?;
            }
        }
        Family::Cycle => {
            if m < 3 {
                return Err(Error::BadParameter(format!("cycle needs at least 3 vertices, got {m}")));
            }
            for i in 0..m {
                g.add_edge(i, (i + 1) % m)?;
            }
        }
        Family::Complete => {
            for u in 0..m {
                for v in u + 1..m {
                    g.add_edge(u, v)?;
                }
            }
        }
    }
    Ok(g)
}

pub fn path(m: usize) -> FiniteGraph {
    family(Family::Path, m).expect("paths exist for every m")
}

pub fn cycle(m: usize) -> Result<FiniteGraph> {
    family(Family::Cycle, m)
}

pub fn complete(m: usize) -> FiniteGraph {
    family(Family::Complete, m).expect("complete graphs exist for every m")
}

/// Injective map from pattern vertices to host vertices that preserves and
/// reflects adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullEmbeddingWitness {
    pub vertex_map: Vec<usize>,
}

impl FullEmbeddingWitness {
    pub fn is_valid(&self, pattern: &FiniteGraph, host: &FiniteGraph) -> bool {
        let m = &self.vertex_map;
        if m.len() != pattern.n || m.iter().any(|&v| v >= host.n) {
            return false;
        }
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if m[i] == m[j] || pattern.has_edge(i, j) != host.has_edge(m[i], m[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// `self` embeds A in B, `then` embeds B in C; the result embeds A in C.
    pub fn compose(&self, then: &FullEmbeddingWitness) -> FullEmbeddingWitness {
        FullEmbeddingWitness { vertex_map: self.vertex_map.iter().map(|&v| then.vertex_map[v]).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(FullEmbeddingWitness),
    NotFound,
    /// The node budget ran out before the search finished.
    Exhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&FullEmbeddingWitness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Full-subgraph test without a node budget.
pub fn is_full_subgraph(pattern: &FiniteGraph, host: &FiniteGraph) -> Option<FullEmbeddingWitness> {
    match find_full_embedding(pattern, host, None) {
        SearchOutcome::Found(w) => Some(w),
        SearchOutcome::NotFound => None,
        SearchOutcome::Exhausted { .. } => unreachable!("unbudgeted search always finishes"),
    }
}

/// Backtracking search for the lexicographically least full embedding.
///
/// Pattern vertices are assigned in index order and host candidates are tried
/// in increasing order, so the first witness found is the least one.
pub fn find_full_embedding(
    pattern: &FiniteGraph,
    host: &FiniteGraph,
    budget: Option<u64>,
) -> SearchOutcome {
    let k = pattern.n;
    if k > host.n {
        return SearchOutcome::NotFound;
    }
    if k == 0 {
        return SearchOutcome::Found(FullEmbeddingWitness { vertex_map: vec![] });
    }
    let pdeg: Vec<usize> = (0..k).map(|u| pattern.degree(u)).collect();
    let pcodeg: Vec<usize> = (0..k).map(|u| k - 1 - pdeg[u]).collect();
    let hdeg: Vec<usize> = (0..host.n).map(|u| host.degree(u)).collect();
    let hcodeg: Vec<usize> = (0..host.n).map(|u| host.n - 1 - hdeg[u]).collect();

    // candidates[u]: host vertices with enough neighbours and non-neighbours
    let candidates: Vec<Vec<usize>> = (0..k)
        .map(|u| {
            (0..host.n)
                .filter(|&v| hdeg[v] >= pdeg[u] && hcodeg[v] >= pcodeg[u])
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return SearchOutcome::NotFound;
    }

    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; host.n];
    let mut cursor = vec![0usize; k];
    let mut nodes: u64 = 0;
    let mut depth = 0usize;
    loop {
        let mut advanced = false;
        while cursor[depth] < candidates[depth].len() {
            let v = candidates[depth][cursor[depth]];
            cursor[depth] += 1;
            if used[v] {
                continue;
            }
            nodes += 1;
            if let Some(b) = budget {
                if nodes > b {
                    return SearchOutcome::Exhausted { nodes: b };
                }
            }
            let consistent = (0..depth).all(|i| pattern.has_edge(i, depth) == host.has_edge(map[i], v));
            if consistent {
                map[depth] = v;
                used[v] = true;
                advanced = true;
                break;
            }
        }
        if advanced {
            if depth + 1 == k {
                return SearchOutcome::Found(FullEmbeddingWitness { vertex_map: map });
            }
            depth += 1;
            cursor[depth] = 0;
        } else {
            if depth == 0 {
                return SearchOutcome::NotFound;
            }
            depth -= 1;
            used[map[depth]] = false;
            map[depth] = usize::MAX;
        }
    }
}

/// Vertices adjacent to every other vertex; they generate the centre of the
/// right-angled Artin group on the graph.
pub fn raag_center_support(g: &FiniteGraph) -> Vec<usize> {
    (0..g.n).filter(|&u| g.n > 0 && g.degree(u) == g.n - 1).collect()
}
