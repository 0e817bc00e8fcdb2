//! The route for witnesses with `b ≤ 2`, where any two disjoint vertex sets
//! of size two are joined by an edge.

use super::spectrum::{Route, SpectrumCertificate};
use super::{EngineError, Violation};
use crate::graph::{serialize_edge_list, Graph};
use crate::oracle::{hamilton_backtrack, oracle_find_cycle_with, Budget, HAMILTON_BUDGET};
use crate::structures::verify_cycle;
use crate::Vertex;

/// Up to this order every length is found by exhaustive search.
const EXHAUSTIVE_MAX_N: usize = 7;
/// Longest cycle taken from enumeration before climbing.
const SHORT_MAX: usize = 6;

fn violation(g: &Graph, message: String) -> EngineError {
    EngineError::TheoremViolation(Box::new(Violation {
        message,
        graph: serialize_edge_list(g),
        switch: None,
        trace: Vec::new(),
    }))
}

/// Cycles of every length `3..=n` for a graph whose witness has `b ≤ 2`.
///
/// Lengths up to six come from bounded enumeration and the Hamiltonian cycle
/// from backtracking. Lengths in between are climbed one at a time: an
/// outside vertex with three cycle neighbours either sits over two
/// consecutive cycle vertices, or the edge between the predecessors of two
/// of its neighbours reroutes the cycle through it.
pub fn small_b_spectrum(g: &Graph) -> Result<SpectrumCertificate, EngineError> {
    let n = g.n();
    let mut cert = SpectrumCertificate::new(Route::SmallB);
    let mut budget = Budget::from_env();
    let short_max = if n <= EXHAUSTIVE_MAX_N { n } else { SHORT_MAX };
    for len in 3..=short_max {
        match oracle_find_cycle_with(g, len, &mut budget)? {
            Some(c) => {
                cert.cycles.insert(len, c);
            }
            None => return Err(violation(g, format!("no cycle of length {len}"))),
        }
    }
    if n <= EXHAUSTIVE_MAX_N {
        return Ok(cert);
    }

    let mut current = cert.cycles[&SHORT_MAX].clone();
    while current.len() < n - 1 {
        current = climb(g, &current).ok_or_else(|| {
            violation(
                g,
                format!("cannot climb from a cycle of length {}", current.len()),
            )
        })?;
        cert.cycles.insert(current.len(), current.clone());
    }

    let ham = hamilton_backtrack(g, &mut Budget::new(HAMILTON_BUDGET))?
        .ok_or_else(|| violation(g, "no Hamiltonian cycle".into()))?;
    cert.cycles.insert(n, ham);
    Ok(cert)
}

/// A cycle one longer than `c`, through one extra outside vertex.
fn climb(g: &Graph, c: &[Vertex]) -> Option<Vec<Vertex>> {
    let ell = c.len();
    let on: crate::VertexSet = c.iter().copied().collect();
    let pos = |v: Vertex| c.iter().position(|&u| u == v).unwrap();
    for x in g.vertices() - on {
        let mut zs: Vec<usize> = (g.neighbours(x) & on).iter().map(pos).collect();
        if zs.len() < 3 {
            continue;
        }
        zs.sort_unstable();
        for &p in &zs {
            if g.has_edge(x, c[(p + 1) % ell]) {
                let mut out = c[..=p].to_vec();
                out.push(x);
                out.extend_from_slice(&c[p + 1..]);
                if verify_cycle(g, &out).is_ok() {
                    return Some(out);
                }
            }
        }
        for (i, &p) in zs.iter().enumerate() {
            for &q in &zs[i + 1..] {
                if !g.has_edge(c[(p + ell - 1) % ell], c[q - 1]) {
                    continue;
                }
                let mut out = vec![x];
                out.extend_from_slice(&c[p..q]);
                out.extend(c[q..].iter().chain(&c[..p]).rev());
                if verify_cycle(g, &out).is_ok() {
                    return Some(out);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    #[test]
    fn complete_graphs_get_every_length() {
        for n in 5..=10 {
            let g = complete(n).unwrap();
            let cert = small_b_spectrum(&g).unwrap();
            assert_eq!(cert.lengths(), (3..=n).collect::<Vec<_>>());
            for (len, c) in &cert.cycles {
                assert_eq!(c.len(), *len);
                verify_cycle(&g, c).unwrap();
            }
        }
    }

    #[test]
    fn climb_uses_a_predecessor_chord() {
        // 6-cycle 0..5, outside vertex 6 adjacent to 0, 2, 4; chord 5 ~ 1.
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.extend([(6, 0), (6, 2), (6, 4), (5, 1)]);
        let g = Graph::from_edges(7, edges).unwrap();
        let c = climb(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c.len(), 7);
        verify_cycle(&g, &c).unwrap();
    }
}
