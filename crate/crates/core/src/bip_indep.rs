//! Exact bipartite independence number α̃ and the ordinary independence number.
//!
//! `P(a, b)` holds when every pair of disjoint vertex sets of sizes `a` and `b`
//! is joined by at least one edge. α̃ is the least `k` for which some split
//! `a + b = k + 1` satisfies `P(a, b)`.
//!
//! `P(a, b)` fails exactly when some `a`-set `A` leaves at least `b` vertices
//! outside its closed neighbourhood `A ∪ N(A)`, so the check enumerates the
//! `a`-subsets in lexicographic order; the first failing `A` together with the
//! `b` smallest vertices outside `A ∪ N(A)` is the lexicographically least
//! violating pair.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipError {
    #[error("set sizes a = {a}, b = {b} must be positive with a + b ≤ n = {n}")]
    SizeOutOfRange { a: usize, b: usize, n: usize },
    #[error("α̃ needs at least two vertices (n = {0})")]
    TooSmall(usize),
}

/// α̃ together with the split that attains it.
///
/// `a ≤ b`, `a + b = k + 1`, and `a` is the least among all splits attaining
/// level `k`. When no split with `a + b ≤ n` works (disconnected graphs), the
/// value is `k = n` with the vacuous split `(1, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipWitness {
    pub k: usize,
    pub a: usize,
    pub b: usize,
}

/// Disjoint sets with no edge between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolatingPair {
    pub a_set: Vec<Vertex>,
    pub b_set: Vec<Vertex>,
}

impl ViolatingPair {
    /// Checks disjointness, sizes and the absence of crossing edges.
    pub fn is_valid(&self, g: &Graph, a: usize, b: usize) -> bool {
        let xs: VertexSet = self.a_set.iter().copied().collect();
        let ys: VertexSet = self.b_set.iter().copied().collect();
        xs.len() == a
            && ys.len() == b
            && self.a_set.len() == a
            && self.b_set.len() == b
            && xs.is_disjoint(ys)
            && xs.is_subset(g.vertices())
            && ys.is_subset(g.vertices())
            && !g.has_edge_between(xs, ys)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyCheck {
    Holds,
    Violated(ViolatingPair),
}

impl PropertyCheck {
    pub fn holds(&self) -> bool {
        matches!(self, PropertyCheck::Holds)
    }
}

/// Decides `P(a, b)`, returning the lexicographically least violating pair on
/// failure.
pub fn holds_property(g: &Graph, a: usize, b: usize) -> Result<PropertyCheck, BipError> {
    let n = g.n();
    if a == 0 || b == 0 || a + b > n {
        return Err(BipError::SizeOutOfRange { a, b, n });
    }
    let closed: Vec<VertexSet> = (0..n).map(|v| g.neighbours(v).with(v)).collect();
    let all = g.vertices();
    let mut found = None;
    for_each_subset(n, a, |subset, members| {
        let covered = members
            .iter()
            .fold(VertexSet::EMPTY, |acc, &v| acc | closed[v]);
        let free = all - covered;
        if free.len() >= b {
            found = Some(ViolatingPair {
                a_set: subset.to_vec(),
                b_set: free.take_smallest(b).to_vec(),
            });
            return false;
        }
        true
    });
    Ok(match found {
        Some(pair) => PropertyCheck::Violated(pair),
        None => PropertyCheck::Holds,
    })
}

/// Second route to `P(a, b)`: it fails iff some `(a + b)`-set `W` induces a
/// subgraph whose component sizes contain a sub-multiset summing to exactly
/// `a` (those components form `A`, the rest `B`).
pub fn violated_by_components(g: &Graph, a: usize, b: usize) -> Result<bool, BipError> {
    let n = g.n();
    if a == 0 || b == 0 || a + b > n {
        return Err(BipError::SizeOutOfRange { a, b, n });
    }
    let mut violated = false;
    for_each_subset(n, a + b, |w, _| {
        let sizes: Vec<usize> = g.components_within(w).iter().map(|c| c.len()).collect();
        if subset_sum_hits(&sizes, a) {
            violated = true;
            return false;
        }
        true
    });
    Ok(violated)
}

fn subset_sum_hits(sizes: &[usize], target: usize) -> bool {
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for &s in sizes {
        for t in (s..=target).rev() {
            if reach[t - s] {
                reach[t] = true;
            }
        }
    }
    reach[target]
}

/// Visits the `size`-subsets of `0..n` in lexicographic order until `visit`
/// returns `false`.
fn for_each_subset<F>(n: usize, size: usize, mut visit: F)
where
    F: FnMut(VertexSet, &[Vertex]) -> bool,
{
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let set: VertexSet = idx.iter().copied().collect();
        if !visit(set, &idx) {
            return;
        }
        // rightmost slot that can still move
        let mut i = size;
        while i > 0 && idx[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// α̃ with the least-`a` split at the least level.
pub fn alpha_tilde(g: &Graph) -> Result<BipWitness, BipError> {
    let n = g.n();
    if n < 2 {
        return Err(BipError::TooSmall(n));
    }
    for k in 1..n {
        for a in 1..=k.div_ceil(2) {
            let b = k + 1 - a;
            if holds_property(g, a, b)?.holds() {
                return Ok(BipWitness { k, a, b });
            }
        }
    }
    Ok(BipWitness { k: n, a: 1, b: n })
}

/// Size of a maximum independent set, by branch and bound.
pub fn independence_number(g: &Graph) -> usize {
    fn search(g: &Graph, cands: VertexSet, size: usize, best: &mut usize) {
        if size + cands.len() <= *best {
            return;
        }
        let Some(v) = cands
            .iter()
            .min_by_key(|&v| (g.neighbours(v) & cands).len())
        else {
            *best = (*best).max(size);
            return;
        };
        let nv = g.neighbours(v) & cands;
        // v is taken in some maximum set when it has no candidate neighbours
        search(g, cands - nv - VertexSet::singleton(v), size + 1, best);
        if !nv.is_empty() {
            search(g, cands.without(v), size, best);
        }
    }
    let mut best = 0;
    search(g, g.vertices(), 0, &mut best);
    best
}
