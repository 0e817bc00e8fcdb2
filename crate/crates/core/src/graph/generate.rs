//! Graph families and seeded random generation.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, which is
//! specified bit-for-bit and platform independent. Batch runs derive the seed
//! of instance `i` as `seed ^ i` (see [`instance_seed`]).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{min_degree, Graph, GraphError};

/// Attempt cap for rejection sampling.
pub const MAX_REJECTION_ATTEMPTS: usize = 10_000;

/// Seed of the `index`-th instance of a batch started from `seed`.
pub fn instance_seed(seed: u64, index: u64) -> u64 {
    seed ^ index
}

/// Erdős–Rényi `G(n, p)`: pairs `(u, v)`, `u < v`, are visited in
/// lexicographic order and each is kept when a uniform draw in `[0, 1)` falls
/// below `p`.
pub fn generate_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::Probability(p));
    }
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in u + 1..n {
            let draw: f64 = rng.gen();
            if draw < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Resamples `G(n, p)` with seeds `seed, seed+1, …` until `accept` holds.
pub fn sample_conditioned<F>(n: usize, p: f64, seed: u64, accept: F) -> Result<Graph, GraphError>
where
    F: Fn(&Graph) -> bool,
{
    for attempt in 0..MAX_REJECTION_ATTEMPTS as u64 {
        let g = generate_gnp(n, p, seed.wrapping_add(attempt))?;
        if accept(&g) {
            return Ok(g);
        }
    }
    Err(GraphError::RejectionExhausted(MAX_REJECTION_ATTEMPTS))
}

/// A `G(n, p)` sample conditioned on `δ ≥ ⌈n/2⌉`.
pub fn generate_dirac(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    let half = n.div_ceil(2);
    sample_conditioned(n, p, seed, |g| min_degree(g) >= half)
}

pub fn generate_complete_bipartite(a_size: usize, b_size: usize) -> Result<Graph, GraphError> {
    if a_size == 0 || b_size == 0 {
        return Err(GraphError::ZeroSize { what: "side size" });
    }
    let n = a_size + b_size;
    Graph::from_edges(
        n,
        (0..a_size).flat_map(|u| (a_size..n).map(move |v| (u, v))),
    )
}

pub fn complete_bipartite(a_size: usize, b_size: usize) -> Result<Graph, GraphError> {
    generate_complete_bipartite(a_size, b_size)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// The cycle `0 - 1 - … - (n-1) - 0`; requires `n ≥ 3`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::ZeroSize {
            what: "cycle length minus two",
        });
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

/// Wheel: hub 0 joined to a rim cycle `1..=rim`.
pub fn wheel(rim: usize) -> Result<Graph, GraphError> {
    let spokes = (1..=rim).map(|i| (0, i));
    let rim_edges = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
    Graph::from_edges(rim + 1, spokes.chain(rim_edges))
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("static graph")
}
