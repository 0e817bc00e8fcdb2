//! Brute-force ground truth. Nothing here shares code with the engine beyond
//! the graph type and the tagged-cycle verifier.
//!
//! Every search counts visited nodes against a budget and fails loudly when
//! the budget runs out, so an oracle answer of `None` always means "does not
//! exist". The default budget is 10⁸ nodes per call; the `TILDE_BUDGET`
//! environment variable overrides it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bip_indep::BipWitness;
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::structures::{tagged_by_apex, TaggedCycle};
use crate::Vertex;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const HAMILTON_BUDGET: u64 = 10_000_000;
pub const ALPHA_TILDE_MAX_N: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("cycle length {len} outside 3..={n}")]
    BadLength { len: usize, n: usize },
    #[error("n = {n} exceeds the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("α̃ needs at least two vertices (n = {0})")]
    TooSmall(usize),
}

/// Node counter shared by one search.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// `TILDE_BUDGET` if set and parseable, else [`DEFAULT_BUDGET`].
    pub fn from_env() -> Self {
        Budget::new(env_budget().unwrap_or(DEFAULT_BUDGET))
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.used += 1;
        if self.used > self.limit {
            Err(OracleError::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

pub fn env_budget() -> Option<u64> {
    std::env::var("TILDE_BUDGET").ok()?.trim().parse().ok()
}

/// Visits every cycle of length `len` once, in canonical form: it starts at
/// its least vertex and its second vertex is smaller than its last. Cycles are
/// visited in lexicographic order. `visit` returns `true` to stop.
fn for_each_cycle<F>(
    g: &Graph,
    len: usize,
    budget: &mut Budget,
    mut visit: F,
) -> Result<bool, OracleError>
where
    F: FnMut(&[Vertex]) -> bool,
{
    let n = g.n();
    if len < 3 || len > n {
        return Err(OracleError::BadLength { len, n });
    }
    struct Search<'a, F> {
        g: &'a Graph,
        len: usize,
        start: Vertex,
        path: Vec<Vertex>,
        visit: F,
    }
    impl<F: FnMut(&[Vertex]) -> bool> Search<'_, F> {
        fn go(&mut self, free: VertexSet, budget: &mut Budget) -> Result<bool, OracleError> {
            budget.tick()?;
            let last = *self.path.last().unwrap();
            if self.path.len() == self.len {
                if self.g.has_edge(last, self.start) && self.path[1] < last {
                    return Ok((self.visit)(&self.path));
                }
                return Ok(false);
            }
            if free.len() < self.len - self.path.len() {
                return Ok(false);
            }
            let mut next = self.g.neighbours(last) & free;
            if self.path.len() + 1 == self.len {
                next = next & self.g.neighbours(self.start);
            }
            for w in next {
                self.path.push(w);
                let stop = self.go(free.without(w), budget)?;
                self.path.pop();
                if stop {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
    let mut search = Search {
        g,
        len,
        start: 0,
        path: Vec::with_capacity(len),
        visit: &mut visit,
    };
    for s in 0..n {
        search.start = s;
        search.path.clear();
        search.path.push(s);
        let free = g.vertices().above(s);
        if search.go(free, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The lexicographically least canonical cycle of length `len`, if any.
pub fn oracle_find_cycle(g: &Graph, len: usize) -> Result<Option<Vec<Vertex>>, OracleError> {
    oracle_find_cycle_with(g, len, &mut Budget::from_env())
}

pub fn oracle_find_cycle_with(
    g: &Graph,
    len: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<Vertex>>, OracleError> {
    let mut found = None;
    for_each_cycle(g, len, budget, |c| {
        found = Some(c.to_vec());
        true
    })?;
    Ok(found)
}

/// Some tagged cycle of length `len`: the first canonical cycle that has an
/// off-cycle vertex adjacent to two consecutive cycle vertices.
pub fn oracle_find_tilde(g: &Graph, len: usize) -> Result<Option<TaggedCycle>, OracleError> {
    oracle_find_tilde_with(g, len, &mut Budget::from_env())
}

pub fn oracle_find_tilde_with(
    g: &Graph,
    len: usize,
    budget: &mut Budget,
) -> Result<Option<TaggedCycle>, OracleError> {
    if len + 1 > g.n() {
        return Ok(None);
    }
    let mut found = None;
    for_each_cycle(g, len, budget, |c| {
        found = tagged_by_apex(g, c);
        found.is_some()
    })?;
    Ok(found)
}

/// Achievable cycle lengths with one witness each.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub witnesses: BTreeMap<usize, Vec<Vertex>>,
}

impl Spectrum {
    pub fn lengths(&self) -> Vec<usize> {
        self.witnesses.keys().copied().collect()
    }

    pub fn contains(&self, len: usize) -> bool {
        self.witnesses.contains_key(&len)
    }
}

pub fn oracle_spectrum(g: &Graph) -> Result<Spectrum, OracleError> {
    let mut spectrum = Spectrum::default();
    for len in 3..=g.n() {
        if let Some(c) = oracle_find_cycle(g, len)? {
            spectrum.witnesses.insert(len, c);
        }
    }
    Ok(spectrum)
}

/// Canonical Hamiltonian cycle by exhaustive search, `None` when `n < 3`.
pub fn oracle_hamilton(g: &Graph) -> Result<Option<Vec<Vertex>>, OracleError> {
    if g.n() < 3 {
        return Ok(None);
    }
    oracle_find_cycle(g, g.n())
}

/// Hamiltonian cycle by backtracking that starts from a minimum-degree vertex
/// and tries low-degree neighbours first. Prunes when an unvisited vertex is
/// left with fewer than two usable neighbours.
pub fn hamilton_backtrack(
    g: &Graph,
    budget: &mut Budget,
) -> Result<Option<Vec<Vertex>>, OracleError> {
    let n = g.n();
    if n < 3 {
        return Ok(None);
    }
    let deg = g.degrees();
    let start = (0..n).min_by_key(|&v| (deg[v], v)).unwrap();
    if deg[start] < 2 {
        return Ok(None);
    }

    fn go(
        g: &Graph,
        deg: &[usize],
        start: Vertex,
        path: &mut Vec<Vertex>,
        free: VertexSet,
        budget: &mut Budget,
    ) -> Result<bool, OracleError> {
        budget.tick()?;
        let last = *path.last().unwrap();
        if free.is_empty() {
            return Ok(g.has_edge(last, start));
        }
        let usable = free.with(last).with(start);
        if free.iter().any(|u| (g.neighbours(u) & usable).len() < 2) {
            return Ok(false);
        }
        let mut next: Vec<Vertex> = (g.neighbours(last) & free).to_vec();
        next.sort_by_key(|&w| (deg[w], w));
        for w in next {
            path.push(w);
            if go(g, deg, start, path, free.without(w), budget)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }

    let mut path = vec![start];
    let free = g.vertices().without(start);
    Ok(go(g, &deg, start, &mut path, free, budget)?.then_some(path))
}

/// α̃ straight from the definition: for each level and split, try every
/// disjoint pair of sets. Only for `n ≤ 8`.
pub fn oracle_alpha_tilde(g: &Graph) -> Result<BipWitness, OracleError> {
    let n = g.n();
    if n > ALPHA_TILDE_MAX_N {
        return Err(OracleError::TooLarge {
            n,
            limit: ALPHA_TILDE_MAX_N,
        });
    }
    if n < 2 {
        return Err(OracleError::TooSmall(n));
    }
    let all: u32 = (1 << n) - 1;
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbours(v).bits() as u32).collect();
    let touches = |xs: u32, ys: u32| (0..n).any(|v| xs >> v & 1 == 1 && nbr[v] & ys != 0);
    let holds = |a: u32, b: u32| {
        (0..=all).filter(|m| m.count_ones() == a).all(|xs| {
            let rest = all & !xs;
            (0..=all)
                .filter(|ys| ys & !rest == 0 && ys.count_ones() == b)
                .all(|ys| touches(xs, ys))
        })
    };
    for k in 1..n {
        for a in 1..=k.div_ceil(2) {
            let b = k + 1 - a;
            if holds(a as u32, b as u32) {
                return Ok(BipWitness { k, a, b });
            }
        }
    }
    Ok(BipWitness { k: n, a: 1, b: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, petersen, star};
    use crate::structures::{verify_cycle, verify_tagged_cycle};

    #[test]
    fn find_cycle_examples() {
        let c5 = cycle(5).unwrap();
        assert_eq!(
            oracle_find_cycle(&c5, 5).unwrap(),
            Some(vec![0, 1, 2, 3, 4])
        );
        assert_eq!(oracle_find_cycle(&c5, 4).unwrap(), None);
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(oracle_find_cycle(&k33, 5).unwrap(), None);
        assert!(oracle_find_cycle(&c5, 6).is_err());
    }

    #[test]
    fn find_tilde_examples() {
        let diamond = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]).unwrap();
        let tc = oracle_find_tilde(&diamond, 3).unwrap().unwrap();
        assert!(verify_tagged_cycle(&diamond, &tc).is_ok());
        assert_eq!(oracle_find_tilde(&cycle(6).unwrap(), 3).unwrap(), None);
        let k5 = complete(5).unwrap();
        let tc = oracle_find_tilde(&k5, 4).unwrap().unwrap();
        assert_eq!(tc.len(), 4);
        assert!(verify_tagged_cycle(&k5, &tc).is_ok());
    }

    #[test]
    fn spectra() {
        assert_eq!(
            oracle_spectrum(&complete(5).unwrap()).unwrap().lengths(),
            vec![3, 4, 5]
        );
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(oracle_spectrum(&k33).unwrap().lengths(), vec![4, 6]);
        // frozen from this oracle; girth 5 and non-Hamiltonicity agree
        let p = petersen();
        let sp = oracle_spectrum(&p).unwrap();
        assert_eq!(sp.lengths(), vec![5, 6, 8, 9]);
        for (len, c) in &sp.witnesses {
            assert_eq!(c.len(), *len);
            assert!(verify_cycle(&p, c).is_ok());
        }
    }

    #[test]
    fn hamilton_examples() {
        let k4 = complete(4).unwrap();
        assert_eq!(oracle_hamilton(&k4).unwrap().unwrap().len(), 4);
        assert_eq!(oracle_hamilton(&petersen()).unwrap(), None);
        assert_eq!(oracle_hamilton(&star(4).unwrap()).unwrap(), None);

        let mut budget = Budget::new(HAMILTON_BUDGET);
        assert_eq!(hamilton_backtrack(&petersen(), &mut budget).unwrap(), None);
        let c = hamilton_backtrack(&complete(9).unwrap(), &mut Budget::new(HAMILTON_BUDGET))
            .unwrap()
            .unwrap();
        assert!(verify_cycle(&complete(9).unwrap(), &c).is_ok() && c.len() == 9);
    }

    #[test]
    fn budget_is_explicit() {
        let k8 = complete(8).unwrap();
        let err = oracle_find_cycle_with(&k8, 8, &mut Budget::new(3)).unwrap_err();
        assert_eq!(err, OracleError::BudgetExceeded(3));
    }

    #[test]
    fn alpha_tilde_examples() {
        let w = |k, a, b| BipWitness { k, a, b };
        assert_eq!(oracle_alpha_tilde(&cycle(5).unwrap()).unwrap(), w(3, 1, 3));
        assert_eq!(
            oracle_alpha_tilde(&complete(4).unwrap()).unwrap(),
            w(1, 1, 1)
        );
        assert_eq!(
            oracle_alpha_tilde(&complete_bipartite(3, 3).unwrap()).unwrap(),
            w(3, 1, 3)
        );
        assert!(matches!(
            oracle_alpha_tilde(&petersen()),
            Err(OracleError::TooLarge { n: 10, .. })
        ));
    }
}
