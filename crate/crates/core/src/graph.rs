//! Small directed graphs on vertices `0..n` (shown 1-based).

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("malformed edge {0:?}, expected u>v")]
    BadEdge(String),
}

/// A simple digraph. Vertices are `0..n` internally; parsing and display
/// use `1..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { n, edges: BTreeSet::new() }
    }

    /// Builds a graph from 0-based edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Digraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Parses `"2>1,2>3"` (1-based). The vertex count is the largest index
    /// mentioned, or `min_vertices` if larger.
    pub fn parse_edges(text: &str, min_vertices: usize) -> Result<Self, GraphError> {
        let mut pairs = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part.split_once('>').ok_or_else(|| GraphError::BadEdge(part.into()))?;
            let a: usize = a.trim().parse().map_err(|_| GraphError::BadEdge(part.into()))?;
            let b: usize = b.trim().parse().map_err(|_| GraphError::BadEdge(part.into()))?;
            if a == 0 || b == 0 {
                return Err(GraphError::BadEdge(part.into()));
            }
            pairs.push((a - 1, b - 1));
        }
        let n = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0).max(min_vertices);
        Digraph::from_edges(n, pairs)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexRange { vertex: w + 1, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u + 1));
        }
        self.edges.insert((u, v));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((u, 0)..(u + 1, 0)).map(|&(_, v)| v)
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |&&(_, w)| w == v).map(|&(u, _)| u)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.predecessors(v).count()
    }

    /// True iff some directed cycle exists (Kahn's algorithm).
    pub fn has_cycle(&self) -> bool {
        self.topological_order().is_none()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for &(_, v) in &self.edges {
            indeg[v] += 1;
        }
        let mut ready: Vec<usize> = (0..self.n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = ready.pop() {
            order.push(u);
            for v in self.successors(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// Vertices reachable from `v` by a directed path, `v` included.
    pub fn reachable_from(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if seen.insert(u) {
                stack.extend(self.successors(u));
            }
        }
        seen
    }

    /// Induced subgraph on `keep` (sorted), renumbered in order.
    pub fn induced(&self, keep: &[usize]) -> Digraph {
        let index = |v: usize| keep.iter().position(|&w| w == v);
        let edges = self.edges.iter().filter_map(|&(u, v)| Some((index(u)?, index(v)?))).collect();
        Digraph { n: keep.len(), edges }
    }

    pub fn without_vertex(&self, v: usize) -> Digraph {
        let keep: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        self.induced(&keep)
    }

    /// Disjoint union, `other` renumbered after `self`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Digraph { n: self.n + other.n, edges }
    }

    /// Vertices with no incoming edge.
    pub fn roots(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.in_degree(v) == 0).collect()
    }

    /// Vertices with no outgoing edge.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.successors(v).next().is_none()).collect()
    }

    /// Edges `v → w` with no `u` such that `v → u → w`.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().filter(|&(v, w)| !self.successors(v).any(|u| self.has_edge(u, w))).collect()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        Digraph { n: self.n, edges: self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect() }
    }

    /// Lexicographically least relabelling; equal for isomorphic graphs.
    pub fn canonical_form(&self) -> Digraph {
        let mut best: Option<Digraph> = None;
        let mut perm: Vec<usize> = (0..self.n).collect();
        loop {
            let g = self.relabel(&perm);
            if best.as_ref().map_or(true, |b| g.edges < b.edges) {
                best = Some(g);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &Digraph) -> bool {
        self.n == other.n && self.edges.len() == other.edges.len() && self.canonical_form() == other.canonical_form()
    }

    /// DOT text with vertices `1..=n`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        for v in 0..self.n {
            let _ = writeln!(out, "  {};", v + 1);
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {} -> {};", u + 1, v + 1);
        }
        out.push_str("}\n");
        out
    }
}

/// `u>v` list, 1-based.
impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, &(u, v)) in self.edges.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}>{}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All acyclic digraphs on `n` vertices: a vertex order plus a set of
/// forward edges, deduplicated. With `up_to_iso`, one canonical
/// representative per isomorphism class.
pub fn dag_enumerate(n: usize, up_to_iso: bool) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        for mask in 0u64..(1u64 << pairs.len()) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &(a, b))| (order[a], order[b]))
                .collect();
            let g = Digraph { n, edges };
            out.insert(if up_to_iso { g.canonical_form() } else { g });
        }
        if up_to_iso || !next_permutation(&mut order) {
            break;
        }
    }
    out.into_iter().collect()
}

/// Every digraph without self-loops on `n` vertices, one bit per ordered
/// pair, filtered to the acyclic ones.
pub fn dag_brute_force(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    (0u64..(1u64 << pairs.len()))
        .map(|mask| Digraph {
            n,
            edges: pairs.iter().enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).map(|(_, &e)| e).collect(),
        })
        .filter(|g| !g.has_cycle())
        .collect()
}
