//! Immutable simple undirected graphs on dense vertex ids `0..n`.

mod generate;
mod io;

pub use generate::{
    complete, complete_bipartite, cycle, generate_complete_bipartite, generate_dirac, generate_gnp,
    instance_seed, path, petersen, sample_conditioned, star, wheel, MAX_REJECTION_ATTEMPTS,
};
pub use io::{parse_edge_list, parse_edge_list_with_limit, serialize_edge_list};

use std::collections::VecDeque;

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::Vertex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("{n} vertices exceeds the vertex cap of {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("{what} must be at least 1")]
    ZeroSize { what: &'static str },
    #[error("no sample satisfied the condition within {0} attempts")]
    RejectionExhausted(usize),
}

/// A simple undirected graph stored as one adjacency bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                limit: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        g.debug_check();
        Ok(g)
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { v: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// A copy of this graph with the edge `uv` added.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            for u in 0..self.n {
                assert!(!self.adj[u].contains(u), "self-loop at {u}");
                assert!(self.adj[u].is_subset(VertexSet::full(self.n)));
                for v in self.adj[u] {
                    assert!(self.adj[v].contains(u), "asymmetric adjacency {u}-{v}");
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbours(&self, v: Vertex) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|s| s.len()).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].above(u).iter().map(move |v| (u, v)))
    }

    /// Whether some vertex of `xs` is adjacent to some vertex of `ys`.
    pub fn has_edge_between(&self, xs: VertexSet, ys: VertexSet) -> bool {
        xs.iter().any(|u| !self.adj[u].is_disjoint(ys))
    }

    /// Vertices reachable from `start`.
    pub fn component_of(&self, start: Vertex) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next | self.adj[v];
            }
            frontier = next - seen;
            seen = seen | next;
        }
        seen
    }

    /// Connected components, each listed with its vertices ascending, ordered
    /// by smallest vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let mut seen = VertexSet::singleton(v);
            let mut frontier = seen;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for u in frontier {
                    next = next | (self.adj[u] & within);
                }
                frontier = next - seen;
                seen = seen | next;
            }
            left = left - seen;
            out.push(seen);
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Two-colouring of the vertices; every edge joins the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub side_of: Vec<u8>,
}

impl Bipartition {
    pub fn side(&self, s: u8) -> Vec<Vertex> {
        (0..self.side_of.len())
            .filter(|&v| self.side_of[v] == s)
            .collect()
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.side_of.len() == g.n() && g.edges().all(|(u, v)| self.side_of[u] != self.side_of[v])
    }
}

/// Either a proper 2-colouring or an odd cycle certifying there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoColoring {
    Bipartite(Bipartition),
    OddCycle(Vec<Vertex>),
}

pub fn min_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}

pub fn is_connected(g: &Graph) -> bool {
    g.component_of(0) == g.vertices()
}

/// BFS 2-colouring, component by component. On failure the returned odd cycle
/// is the two tree paths from a monochromatic edge up to their lowest common
/// ancestor, which is always a simple cycle.
pub fn two_color(g: &Graph) -> TwoColoring {
    let n = g.n();
    let mut side: Vec<Option<u8>> = vec![None; n];
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut depth = vec![0usize; n];

    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for v in g.neighbours(u) {
                match side[v] {
                    None => {
                        side[v] = Some(1 - su);
                        parent[v] = Some(u);
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => {
                        return TwoColoring::OddCycle(tree_cycle(u, v, &parent, &depth));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    TwoColoring::Bipartite(Bipartition {
        side_of: side.into_iter().map(|s| s.unwrap()).collect(),
    })
}

fn tree_cycle(u: Vertex, v: Vertex, parent: &[Option<Vertex>], depth: &[usize]) -> Vec<Vertex> {
    let (mut a, mut b) = (u, v);
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].unwrap();
        up_a.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].unwrap();
        up_b.push(b);
    }
    while a != b {
        a = parent[a].unwrap();
        b = parent[b].unwrap();
        up_a.push(a);
        up_b.push(b);
    }
    // up_a ends at the ancestor; walk back down the other side without repeating it.
    up_b.pop();
    up_b.reverse();
    up_a.extend(up_b);
    up_a
}

/// Whether `cycle` is a simple cycle of `g` (length ≥ 3, distinct vertices,
/// consecutive vertices adjacent, closing edge present).
pub fn is_simple_cycle(g: &Graph, cycle: &[Vertex]) -> bool {
    crate::structures::verify_cycle(g, cycle).is_ok()
}
