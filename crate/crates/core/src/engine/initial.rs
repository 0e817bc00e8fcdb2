use super::{EngineError, Violation};
use crate::bitset::VertexSet;
use crate::graph::{serialize_edge_list, two_color, Bipartition, Graph, TwoColoring};
use crate::structures::{verify_tagged_cycle, TaggedCycle};
use crate::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    Triangle([Vertex; 3]),
    Bipartite(Bipartition),
}

fn violation(g: &Graph, message: String) -> EngineError {
    EngineError::TheoremViolation(Box::new(Violation {
        message,
        graph: serialize_edge_list(g),
        switch: None,
        trace: Vec::new(),
    }))
}

/// The lexicographically least triangle `x < y < z`.
pub fn least_triangle(g: &Graph) -> Option<[Vertex; 3]> {
    for x in 0..g.n() {
        for y in g.neighbours(x).above(x) {
            if let Some(z) = (g.neighbours(x) & g.neighbours(y)).above(y).first() {
                return Some([x, y, z]);
            }
        }
    }
    None
}

/// A triangle, or a bipartition when the graph has no odd cycle at all.
pub fn find_triangle_or_bipartite(g: &Graph) -> Result<Dichotomy, EngineError> {
    if let Some(tri) = least_triangle(g) {
        return Ok(Dichotomy::Triangle(tri));
    }
    match two_color(g) {
        TwoColoring::Bipartite(bp) if bp.is_valid_for(g) => Ok(Dichotomy::Bipartite(bp)),
        TwoColoring::Bipartite(_) => Err(violation(g, "two-colouring failed to verify".into())),
        TwoColoring::OddCycle(c) => Err(violation(
            g,
            format!(
                "neither a triangle nor bipartite (odd cycle of length {})",
                c.len()
            ),
        )),
    }
}

/// A tagged triangle or tagged 4-cycle built around the least triangle.
///
/// A common neighbour of two triangle vertices outside the triangle gives a
/// tagged triangle directly. Otherwise, for triangle `xyz`, an edge `i ~ j`
/// with `i ∈ N(x) - {y, z}` and `j ∈ N(y) - {x}` outside the triangle gives
/// the 4-cycle `x i j y` with `z` on the edge `yx`. Each ordered pair of
/// triangle vertices is tried in turn.
pub fn find_initial_tilde(g: &Graph) -> Result<TaggedCycle, EngineError> {
    let tri = match find_triangle_or_bipartite(g)? {
        Dichotomy::Triangle(t) => t,
        Dichotomy::Bipartite(_) => {
            return Err(EngineError::Precondition("graph is bipartite".into()));
        }
    };
    let on: VertexSet = tri.into_iter().collect();
    let roles = [
        (0, 1, 2),
        (0, 2, 1),
        (1, 2, 0),
        (1, 0, 2),
        (2, 0, 1),
        (2, 1, 0),
    ];

    for &(p, q, r) in &roles[..] {
        let (x, y, z) = (tri[p], tri[q], tri[r]);
        if x > y {
            continue;
        }
        if let Some(w) = ((g.neighbours(x) & g.neighbours(y)) - on).first() {
            let tc = TaggedCycle {
                cycle: vec![x, y, z],
                apex: w,
                attach: 0,
            };
            if verify_tagged_cycle(g, &tc).is_ok() {
                return Ok(tc);
            }
        }
    }
    for &(p, q, r) in &roles {
        let (x, y, z) = (tri[p], tri[q], tri[r]);
        let xs = g.neighbours(x) - on;
        let ys = g.neighbours(y) - on;
        for i in xs {
            if let Some(j) = (g.neighbours(i) & ys).without(i).first() {
                let tc = TaggedCycle {
                    cycle: vec![x, i, j, y],
                    apex: z,
                    attach: 3,
                };
                if verify_tagged_cycle(g, &tc).is_ok() {
                    return Ok(tc);
                }
            }
        }
    }
    Err(violation(
        g,
        format!("no tagged triangle or tagged 4-cycle around triangle {tri:?}"),
    ))
}
