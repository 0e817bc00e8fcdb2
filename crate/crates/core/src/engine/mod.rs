//! The constructive extension engine.
//!
//! Starting from any switch, one engine step either builds a tagged cycle
//! that is one or two longer than the current one, or finds a switch with a
//! strictly smaller progress measure `(t, -s)`. Iterating until a tagged cycle
//! appears replaces the "take an optimal switch" argument: every place where
//! optimality would be contradicted becomes an improvement move, and the
//! measure bounds the number of moves by `n²`.
//!
//! Every object produced is verified before it is returned. A step that finds
//! none of the edges the argument guarantees reports
//! [`EngineError::TheoremViolation`], which means either a bug or a graph that
//! does not satisfy the precondition.

mod cases;
mod claims;
mod initial;
mod small_b;
mod spectrum;
mod trace;
mod view;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::oracle::OracleError;
use crate::structures::{Switch, TaggedCycle};
use crate::Vertex;

pub use cases::resolve_case;
pub use claims::{compute_s, enforce_claim_before_t, enforce_claim_outside, engine_step, SetS};
pub use initial::{find_initial_tilde, find_triangle_or_bipartite, Dichotomy};
pub use small_b::small_b_spectrum;
pub use spectrum::{
    extend, full_spectrum, ExtendReport, Route, SpectrumCertificate, SpectrumOptions,
    SpectrumVerdict,
};
pub use trace::{replay, Rule, SetSnapshot, TraceStep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("theorem violation: {0}")]
    TheoremViolation(Box<Violation>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("improvement bound exceeded: {steps} improvements with n = {n}")]
    IterationBound { n: usize, steps: usize },
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
}

/// Engine state that contradicts a guarantee of the argument. Carries enough
/// to reproduce the failure offline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub message: String,
    /// The graph in edge-list format.
    pub graph: String,
    pub switch: Option<Switch>,
    pub trace: Vec<TraceStep>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)?;
        if let Some(sw) = &self.switch {
            write!(f, " at {sw}")?;
        }
        Ok(())
    }
}

impl EngineError {
    pub fn is_violation(&self) -> bool {
        matches!(self, EngineError::TheoremViolation(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    FoundTagged(TaggedCycle),
    BetterSwitch(Switch),
}

/// Outcome of one rule together with its trace entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub outcome: Outcome,
    pub trace: TraceStep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// `p₁` has fewer than `a` neighbours after `min(S)`.
    A,
    /// `p₁` has at least `a` neighbours after `min(S)`.
    B,
}

/// The sets the case analysis works with. `min_s` is a π index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationContext {
    pub s_set: VertexSet,
    pub min_s: usize,
    pub case: Case,
    pub t_set: VertexSet,
    pub t_out: VertexSet,
    pub a_set: VertexSet,
    /// `(v, assigned)` pairs for the reassigned set `T*`, empty when the
    /// regime uses plain shifts.
    pub t_star: Vec<(Vertex, Vertex)>,
    /// `{v_t, x, v_{t+1}}`.
    pub q_set: VertexSet,
}
