//! Verifiable gadgets: tagged cycles, switches and the π ordering of a switch.
//!
//! A *tagged cycle* of length ℓ is a cycle `c_0 … c_{ℓ-1}` plus an apex vertex
//! off the cycle that is adjacent to two consecutive cycle vertices. A
//! *`(t, s)`-switch* is a path `v_1 … v_{ℓ+1}` plus an apex adjacent to
//! `v_t, …, v_{t+s}`. Its π ordering is the path with the apex inserted
//! between `v_t` and `v_{t+1}`; consecutive π vertices are adjacent, so π is
//! itself a Hamiltonian path of the switch's vertex set.
//!
//! Positions in this module follow the path convention: switch positions are
//! 1-based (`t ≥ 1`), π indices and cycle indices are 0-based.

use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::graph::Graph;
use crate::Vertex;

/// First violated condition found by a verifier.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    #[error("sequence too short ({0} vertices)")]
    TooShort(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(Vertex),
    #[error("vertex {0} repeated")]
    Repeated(Vertex),
    #[error("missing edge {0}-{1}")]
    MissingEdge(Vertex, Vertex),
    #[error("apex on cycle")]
    ApexOnCycle,
    #[error("apex on path")]
    ApexOnPath,
    #[error("attachment index {0} out of range")]
    BadAttachment(usize),
    #[error("apex misses attachment")]
    ApexMissesAttachment,
    #[error("switch parameters t = {t}, s = {s} invalid for a path of {len} vertices")]
    BadParameters { t: usize, s: usize, len: usize },
}

fn check_sequence(g: &Graph, seq: &[Vertex]) -> Result<VertexSet, StructureViolation> {
    let mut seen = VertexSet::EMPTY;
    for &v in seq {
        if v >= g.n() {
            return Err(StructureViolation::OutOfRange(v));
        }
        if seen.contains(v) {
            return Err(StructureViolation::Repeated(v));
        }
        seen.insert(v);
    }
    for w in seq.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(StructureViolation::MissingEdge(w[0], w[1]));
        }
    }
    Ok(seen)
}

/// Checks that `cycle` is a simple cycle of `g` with at least 3 vertices.
pub fn verify_cycle(g: &Graph, cycle: &[Vertex]) -> Result<(), StructureViolation> {
    if cycle.len() < 3 {
        return Err(StructureViolation::TooShort(cycle.len()));
    }
    check_sequence(g, cycle)?;
    let (first, last) = (cycle[0], cycle[cycle.len() - 1]);
    if !g.has_edge(last, first) {
        return Err(StructureViolation::MissingEdge(last, first));
    }
    Ok(())
}

/// Checks that `path` is a simple path of `g`.
pub fn verify_path(g: &Graph, path: &[Vertex]) -> Result<(), StructureViolation> {
    if path.is_empty() {
        return Err(StructureViolation::TooShort(0));
    }
    check_sequence(g, path).map(|_| ())
}

/// A cycle with an attached triangle: `apex` is adjacent to `cycle[attach]`
/// and `cycle[(attach + 1) % ℓ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaggedCycle {
    pub cycle: Vec<Vertex>,
    pub apex: Vertex,
    pub attach: usize,
}

impl TaggedCycle {
    /// ℓ, the length of the underlying cycle.
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn attachment(&self) -> (Vertex, Vertex) {
        let l = self.cycle.len();
        (self.cycle[self.attach], self.cycle[(self.attach + 1) % l])
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.cycle
            .iter()
            .copied()
            .collect::<VertexSet>()
            .with(self.apex)
    }
}

pub fn verify_tagged_cycle(g: &Graph, tc: &TaggedCycle) -> Result<(), StructureViolation> {
    verify_cycle(g, &tc.cycle)?;
    if tc.apex >= g.n() {
        return Err(StructureViolation::OutOfRange(tc.apex));
    }
    if tc.cycle.contains(&tc.apex) {
        return Err(StructureViolation::ApexOnCycle);
    }
    if tc.attach >= tc.cycle.len() {
        return Err(StructureViolation::BadAttachment(tc.attach));
    }
    let (u, v) = tc.attachment();
    if !g.has_edge(tc.apex, u) || !g.has_edge(tc.apex, v) {
        return Err(StructureViolation::ApexMissesAttachment);
    }
    Ok(())
}

/// The base cycle of length ℓ and the cycle of length ℓ + 1 that detours
/// through the apex across the attachment edge.
pub fn cycles_of(tc: &TaggedCycle) -> (Vec<Vertex>, Vec<Vertex>) {
    let base = tc.cycle.clone();
    let mut longer = Vec::with_capacity(base.len() + 1);
    longer.extend_from_slice(&base[..=tc.attach]);
    longer.push(tc.apex);
    longer.extend_from_slice(&base[tc.attach + 1..]);
    (base, longer)
}

/// Finds a tagged cycle of length `cycle.len() - 1` inside `cycle` by looking
/// for a vertex whose two cycle neighbours are adjacent; that vertex becomes
/// the apex.
pub fn tagged_by_short_chord(g: &Graph, cycle: &[Vertex]) -> Option<TaggedCycle> {
    let m = cycle.len();
    if m < 4 {
        return None;
    }
    (0..m).find_map(|i| {
        let prev = cycle[(i + m - 1) % m];
        let next = cycle[(i + 1) % m];
        g.has_edge(prev, next).then(|| {
            let rest: Vec<Vertex> = cycle[i + 1..].iter().chain(&cycle[..i]).copied().collect();
            TaggedCycle {
                attach: rest.len() - 1,
                cycle: rest,
                apex: cycle[i],
            }
        })
    })
}

/// Finds an off-cycle vertex adjacent to two consecutive cycle vertices.
/// Candidates are tried in ascending vertex order, then by attachment index.
pub fn tagged_by_apex(g: &Graph, cycle: &[Vertex]) -> Option<TaggedCycle> {
    let m = cycle.len();
    if m < 3 {
        return None;
    }
    let on: VertexSet = cycle.iter().copied().collect();
    (g.vertices() - on).iter().find_map(|x| {
        let nx = g.neighbours(x);
        (0..m)
            .find(|&i| nx.contains(cycle[i]) && nx.contains(cycle[(i + 1) % m]))
            .map(|attach| TaggedCycle {
                cycle: cycle.to_vec(),
                apex: x,
                attach,
            })
    })
}

/// A `(t, s)`-switch: `apex` is adjacent to path positions `t ..= t + s`
/// (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Switch {
    pub path: Vec<Vertex>,
    pub apex: Vertex,
    pub t: usize,
    pub s: usize,
}

impl Switch {
    /// ℓ, so that the path has ℓ + 1 vertices.
    pub fn ell(&self) -> usize {
        self.path.len() - 1
    }

    pub fn p1(&self) -> Vertex {
        self.path[0]
    }

    pub fn p2(&self) -> Vertex {
        *self.path.last().unwrap()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.path
            .iter()
            .copied()
            .collect::<VertexSet>()
            .with(self.apex)
    }

    /// Progress measure: smaller `t` first, then larger `s`.
    pub fn measure(&self) -> (usize, Reverse<usize>) {
        (self.t, Reverse(self.s))
    }

    pub fn improves_on(&self, other: &Switch) -> bool {
        self.measure() < other.measure()
    }

    fn check_shape(&self) -> Result<(), StructureViolation> {
        let len = self.path.len();
        if len < 2 {
            return Err(StructureViolation::TooShort(len));
        }
        if self.t < 1 || self.s < 1 || self.t + self.s > len {
            return Err(StructureViolation::BadParameters {
                t: self.t,
                s: self.s,
                len,
            });
        }
        if self.path.contains(&self.apex) {
            return Err(StructureViolation::ApexOnPath);
        }
        let mut seen = VertexSet::EMPTY;
        for &v in self.path.iter().chain([&self.apex]) {
            if v >= MAX_VERTICES {
                return Err(StructureViolation::OutOfRange(v));
            }
            if seen.contains(v) {
                return Err(StructureViolation::Repeated(v));
            }
            seen.insert(v);
        }
        Ok(())
    }

    pub fn verify(&self, g: &Graph) -> Result<(), StructureViolation> {
        self.check_shape()?;
        verify_path(g, &self.path)?;
        if self.apex >= g.n() {
            return Err(StructureViolation::OutOfRange(self.apex));
        }
        for pos in self.t..=self.t + self.s {
            let v = self.path[pos - 1];
            if !g.has_edge(self.apex, v) {
                return Err(StructureViolation::MissingEdge(self.apex, v));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Switch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})-switch path={:?} apex={}",
            self.t, self.s, self.path, self.apex
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShiftError {
    #[error("vertex {0} is not in the ordering")]
    NotInOrdering(Vertex),
    #[error("vertex {0} has no successor")]
    NoSuccessor(Vertex),
    #[error("vertex {0} has no predecessor")]
    NoPredecessor(Vertex),
}

/// The switch vertices in π order with O(1) position lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiOrdering {
    seq: Vec<Vertex>,
    pos: Vec<Option<usize>>,
}

impl PiOrdering {
    pub fn from_sequence(seq: Vec<Vertex>) -> Self {
        let mut pos = vec![None; MAX_VERTICES];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = Some(i);
        }
        PiOrdering { seq, pos }
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn at(&self, index: usize) -> Vertex {
        self.seq[index]
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.pos.get(v).copied().flatten()
    }

    pub fn successor(&self, v: Vertex) -> Result<Vertex, ShiftError> {
        let i = self.position(v).ok_or(ShiftError::NotInOrdering(v))?;
        self.seq
            .get(i + 1)
            .copied()
            .ok_or(ShiftError::NoSuccessor(v))
    }

    pub fn predecessor(&self, v: Vertex) -> Result<Vertex, ShiftError> {
        let i = self.position(v).ok_or(ShiftError::NotInOrdering(v))?;
        i.checked_sub(1)
            .map(|j| self.seq[j])
            .ok_or(ShiftError::NoPredecessor(v))
    }

    /// `{v⁺ : v ∈ set}`.
    pub fn shift_plus(&self, set: VertexSet) -> Result<VertexSet, ShiftError> {
        set.iter().map(|v| self.successor(v)).collect()
    }

    /// `{v⁻ : v ∈ set}`.
    pub fn shift_minus(&self, set: VertexSet) -> Result<VertexSet, ShiftError> {
        set.iter().map(|v| self.predecessor(v)).collect()
    }
}

/// π: the path with the apex inserted right after position `t`.
pub fn ordering(sw: &Switch) -> Result<PiOrdering, StructureViolation> {
    sw.check_shape()?;
    let mut seq = Vec::with_capacity(sw.path.len() + 1);
    seq.extend_from_slice(&sw.path[..sw.t]);
    seq.push(sw.apex);
    seq.extend_from_slice(&sw.path[sw.t..]);
    Ok(PiOrdering::from_sequence(seq))
}

/// Best switch carried by a Hamiltonian path `q` of a vertex set.
///
/// Any vertex of `q` whose removal leaves a path (an endpoint, or an interior
/// vertex whose two path neighbours are adjacent) may serve as apex. Over both
/// orientations and all such apex choices this returns the switch with least
/// `t`, then greatest `s`; ties go to the first orientation and the earliest
/// apex index.
pub fn best_switch_from_path(g: &Graph, q: &[Vertex]) -> Option<Switch> {
    if q.len() < 3 || verify_path(g, q).is_err() {
        return None;
    }
    let reversed: Vec<Vertex> = q.iter().rev().copied().collect();
    let mut best: Option<Switch> = None;
    for orient in [q, &reversed[..]] {
        let len = orient.len();
        for m in 0..len {
            let removable = m == 0 || m == len - 1 || g.has_edge(orient[m - 1], orient[m + 1]);
            if !removable {
                continue;
            }
            let apex = orient[m];
            let path: Vec<Vertex> = orient[..m]
                .iter()
                .chain(&orient[m + 1..])
                .copied()
                .collect();
            let nx = g.neighbours(apex);
            let Some(t0) =
                (0..path.len() - 1).find(|&i| nx.contains(path[i]) && nx.contains(path[i + 1]))
            else {
                continue;
            };
            let mut s = 1;
            while t0 + s + 1 < path.len() && nx.contains(path[t0 + s + 1]) {
                s += 1;
            }
            let cand = Switch {
                path,
                apex,
                t: t0 + 1,
                s,
            };
            if best.as_ref().is_none_or(|b| cand.measure() < b.measure()) {
                best = Some(cand);
            }
        }
    }
    best
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwitchBuildError {
    #[error("invalid tagged cycle: {0}")]
    Invalid(#[from] StructureViolation),
    #[error("tagged cycle covers every vertex; no outside vertex to extend with")]
    NoOutsideVertex,
    #[error("no edge leaves the tagged cycle (graph disconnected)")]
    NoOutsideEdge,
}

/// A `(t, 1)`-switch on `ℓ + 2` vertices whose path starts at an outside
/// vertex adjacent to the tagged cycle.
///
/// The lexicographically least edge `(v, w)` with `v` outside and `w` in the
/// tagged cycle is used. When `w` is a cycle vertex the path runs `v, w` and
/// then around the cycle; the direction is chosen so the dropped cycle edge is
/// not the attachment edge (the attached triangle stays on the path). When
/// `w` is the apex, the apex joins the path as `v, apex, c_{i+1}, …, c_{i-1}`
/// and the attachment vertex `c_i` becomes the new apex.
pub fn switch_from_tilde_cycle(g: &Graph, tc: &TaggedCycle) -> Result<Switch, SwitchBuildError> {
    verify_tagged_cycle(g, tc)?;
    let inside = tc.vertex_set();
    let outside = g.vertices() - inside;
    if outside.is_empty() {
        return Err(SwitchBuildError::NoOutsideVertex);
    }
    let (v, w) = outside
        .iter()
        .find_map(|v| (g.neighbours(v) & inside).first().map(|w| (v, w)))
        .ok_or(SwitchBuildError::NoOutsideEdge)?;

    let c = &tc.cycle;
    let l = c.len();
    let i = tc.attach;
    let (ci, cj) = tc.attachment();

    let (path, apex) = if w == tc.apex {
        let mut path = vec![v, tc.apex];
        path.extend((1..l).map(|r| c[(i + r) % l]));
        (path, ci)
    } else {
        let j = c.iter().position(|&u| u == w).unwrap();
        let forward_drops = (c[(j + l - 1) % l], c[j]);
        let forward = forward_drops != (ci, cj);
        let mut path = vec![v];
        path.extend((0..l).map(|r| {
            if forward {
                c[(j + r) % l]
            } else {
                c[(j + l - r) % l]
            }
        }));
        (path, tc.apex)
    };
    let nx = g.neighbours(apex);
    let t0 = (0..path.len() - 1)
        .find(|&p| nx.contains(path[p]) && nx.contains(path[p + 1]))
        .expect("attachment edge kept on the path");
    let sw = Switch {
        path,
        apex,
        t: t0 + 1,
        s: 1,
    };
    debug_assert!(sw.verify(g).is_ok());
    Ok(sw)
}
