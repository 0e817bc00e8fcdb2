//! A switch seen through its π ordering, with the helpers every rule uses:
//! index arithmetic on π, candidate verification, and the guaranteed-edge
//! scan.

use super::trace::{OutcomeKind, Rule, SetSnapshot, TraceStep};
use super::{EngineError, Outcome, Resolution, Violation};
use crate::bitset::VertexSet;
use crate::graph::{serialize_edge_list, Graph};
use crate::structures::{
    best_switch_from_path, ordering, tagged_by_apex, tagged_by_short_chord, verify_cycle,
    verify_path, verify_tagged_cycle, PiOrdering, Switch, TaggedCycle,
};
use crate::Vertex;

/// Something a rule built from the edges it found.
pub(crate) enum Candidate {
    /// A cycle that should contain a tagged cycle of length `ℓ+1` or `ℓ+2`.
    Cycle(&'static str, Vec<Vertex>),
    /// A path on `ℓ+2` vertices that should carry a better switch.
    Path(&'static str, Vec<Vertex>),
}

pub(crate) struct View<'a> {
    pub g: &'a Graph,
    pub sw: &'a Switch,
    pub a: usize,
    pub b: usize,
    pub q: Vec<Vertex>,
    pub pi: PiOrdering,
    /// Index of `p₂` in π.
    pub last: usize,
    /// Index of the apex in π (equal to the switch parameter `t`).
    pub t: usize,
    pub r: VertexSet,
    pub ell: usize,
}

impl<'a> View<'a> {
    pub fn new(g: &'a Graph, sw: &'a Switch, a: usize, b: usize) -> Result<Self, EngineError> {
        sw.verify(g)
            .map_err(|e| EngineError::Precondition(format!("invalid switch: {e}")))?;
        let pi = ordering(sw).map_err(|e| EngineError::Precondition(e.to_string()))?;
        let q = pi.sequence().to_vec();
        Ok(View {
            g,
            sw,
            a,
            b,
            last: q.len() - 1,
            t: sw.t,
            r: sw.vertex_set(),
            ell: sw.ell(),
            q,
            pi,
        })
    }

    pub fn p1(&self) -> Vertex {
        self.q[0]
    }

    pub fn p2(&self) -> Vertex {
        self.q[self.last]
    }

    pub fn x(&self) -> Vertex {
        self.q[self.t]
    }

    pub fn idx(&self, v: Vertex) -> usize {
        self.pi.position(v).expect("vertex of the switch")
    }

    pub fn nb(&self, v: Vertex) -> VertexSet {
        self.g.neighbours(v)
    }

    pub fn adj(&self, u: Vertex, v: Vertex) -> bool {
        self.g.has_edge(u, v)
    }

    /// Vertices at π indices `lo..=hi`.
    pub fn range(&self, lo: usize, hi: usize) -> VertexSet {
        if lo > hi {
            return VertexSet::EMPTY;
        }
        self.q[lo..=hi.min(self.last)].iter().copied().collect()
    }

    /// `q[lo..=hi]`, empty when `lo > hi`.
    pub fn fwd(&self, lo: usize, hi: usize) -> Vec<Vertex> {
        if lo > hi {
            Vec::new()
        } else {
            self.q[lo..=hi].to_vec()
        }
    }

    /// `q[lo..=hi]` reversed.
    pub fn back(&self, lo: usize, hi: usize) -> Vec<Vertex> {
        let mut v = self.fwd(lo, hi);
        v.reverse();
        v
    }

    pub fn shift_plus(&self, set: VertexSet) -> Result<VertexSet, EngineError> {
        self.pi
            .shift_plus(set)
            .map_err(|e| self.violation(format!("shift: {e}")))
    }

    pub fn shift_minus(&self, set: VertexSet) -> Result<VertexSet, EngineError> {
        self.pi
            .shift_minus(set)
            .map_err(|e| self.violation(format!("shift: {e}")))
    }

    /// A tagged cycle of length `ℓ+1` or `ℓ+2` inside `cycle`, if any.
    pub fn tagged(&self, cycle: &[Vertex]) -> Option<TaggedCycle> {
        verify_cycle(self.g, cycle).ok()?;
        let m = cycle.len();
        let found = [self.ell + 1, self.ell + 2]
            .into_iter()
            .find_map(|target| {
                if m == target + 1 {
                    tagged_by_short_chord(self.g, cycle)
                } else if m == target {
                    tagged_by_apex(self.g, cycle)
                } else {
                    None
                }
            })?;
        verify_tagged_cycle(self.g, &found).ok()?;
        Some(found)
    }

    /// The best switch carried by `path` if it beats the current one.
    pub fn better(&self, path: &[Vertex]) -> Option<Switch> {
        if path.len() != self.q.len() || verify_path(self.g, path).is_err() {
            return None;
        }
        let sw = best_switch_from_path(self.g, path)?;
        (sw.verify(self.g).is_ok() && sw.improves_on(self.sw)).then_some(sw)
    }

    pub fn attempt(&self, candidates: Vec<Candidate>) -> Option<(Outcome, &'static str)> {
        candidates.into_iter().find_map(|c| match c {
            Candidate::Cycle(name, cyc) => {
                self.tagged(&cyc).map(|tc| (Outcome::FoundTagged(tc), name))
            }
            Candidate::Path(name, p) => self.better(&p).map(|sw| (Outcome::BetterSwitch(sw), name)),
        })
    }

    pub fn resolve(
        &self,
        rule: Rule,
        outcome: Outcome,
        construction: &str,
        edge: Option<(Vertex, Vertex)>,
        skipped_edges: usize,
        sets: SetSnapshot,
    ) -> Resolution {
        let kind = OutcomeKind::of(&outcome);
        Resolution {
            outcome,
            trace: TraceStep {
                rule,
                construction: construction.to_string(),
                edge,
                skipped_edges,
                t: self.sw.t,
                s: self.sw.s,
                ell: self.ell,
                outcome: kind,
                sets,
                switch: self.sw.clone(),
            },
        }
    }

    /// Tries candidates that need no guaranteed edge.
    pub fn direct(
        &self,
        rule: Rule,
        candidates: Vec<Candidate>,
        sets: SetSnapshot,
    ) -> Option<Resolution> {
        self.attempt(candidates)
            .map(|(outcome, name)| self.resolve(rule, outcome, name, None, 0, sets))
    }

    /// Scans `xs × ys` in lexicographic order for edges and returns the first
    /// edge whose constructions verify. The sets must be disjoint and of size
    /// at least `min_x` and `min_y`, otherwise the scan reports a violation.
    #[allow(clippy::too_many_arguments)]
    pub fn scan<F>(
        &self,
        rule: Rule,
        xs: VertexSet,
        ys: VertexSet,
        min_x: usize,
        min_y: usize,
        sets: SetSnapshot,
        build: F,
    ) -> Result<Resolution, EngineError>
    where
        F: Fn(Vertex, Vertex) -> Vec<Candidate>,
    {
        if !xs.is_disjoint(ys) {
            return Err(self.violation(format!(
                "{rule}: sets {:?} and {:?} intersect",
                xs.to_vec(),
                ys.to_vec()
            )));
        }
        if xs.len() < min_x || ys.len() < min_y {
            return Err(self.violation(format!(
                "{rule}: set sizes {} and {} below the guaranteed {min_x} and {min_y}",
                xs.len(),
                ys.len()
            )));
        }
        let mut skipped = 0;
        for i in xs {
            for j in self.nb(i) & ys {
                if let Some((outcome, name)) = self.attempt(build(i, j)) {
                    return Ok(self.resolve(rule, outcome, name, Some((i, j)), skipped, sets));
                }
                skipped += 1;
            }
        }
        Err(self.violation(format!(
            "{rule}: no usable edge between {:?} and {:?} ({skipped} edges tried)",
            xs.to_vec(),
            ys.to_vec()
        )))
    }

    pub fn violation(&self, message: String) -> EngineError {
        EngineError::TheoremViolation(Box::new(Violation {
            message,
            graph: serialize_edge_list(self.g),
            switch: Some(self.sw.clone()),
            trace: Vec::new(),
        }))
    }
}
