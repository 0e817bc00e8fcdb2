use std::fmt;

use serde::{Deserialize, Serialize};

use super::{claims::engine_step, EngineError, Outcome};
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::structures::Switch;
use crate::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `p₁ ~ p₂` closes π into a cycle.
    ClosingEdge,
    /// `t > 1` and `p₂` has a neighbour outside the switch.
    P2Outside,
    /// `t = 1` and `p₁` has at least `a` neighbours outside.
    P1OutsideMany,
    /// `t = 1` and `p₂` has at least `a` neighbours outside.
    P2OutsideMany,
    /// `t > 1` and `p₂` has a neighbour before position `t`.
    P2BeforeT,
    /// `t = 1` and `p₂ ~ x`.
    P2AdjacentApex,
    T1CaseA,
    T1CaseB,
    /// `t = 2`, case A, with `p₁ ~ x`.
    T2ApexInT,
    T2CaseA,
    /// `t = 2`, case B, `p₂` adjacent to `x` and `v₃`, `s = 1`.
    T2DoubleEdge,
    T2CaseB,
    /// `t > 2`, case A, `p₁` adjacent to `v_t` and `x`.
    T3P1TAndApex,
    /// `t > 2`, case A, `p₁` adjacent to `v_t` and `v_{t-1}`.
    T3P1TAndBefore,
    T3CaseA,
    T3CaseB,
    /// Exhaustive search stood in for a failed step.
    OracleFallback,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSnapshot {
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub s: Vec<Vertex>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub t: Vec<Vertex>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub t_out: Vec<Vertex>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub t_star: Vec<Vertex>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub a: Vec<Vertex>,
}

impl SetSnapshot {
    pub fn of(
        s: VertexSet,
        t: VertexSet,
        t_out: VertexSet,
        t_star: VertexSet,
        a: VertexSet,
    ) -> Self {
        SetSnapshot {
            s: s.to_vec(),
            t: t.to_vec(),
            t_out: t_out.to_vec(),
            t_star: t_star.to_vec(),
            a: a.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OutcomeKind {
    FoundTagged { length: usize },
    BetterSwitch { t: usize, s: usize },
}

impl OutcomeKind {
    pub fn of(outcome: &Outcome) -> Self {
        match outcome {
            Outcome::FoundTagged(tc) => OutcomeKind::FoundTagged { length: tc.len() },
            Outcome::BetterSwitch(sw) => OutcomeKind::BetterSwitch { t: sw.t, s: sw.s },
        }
    }
}

/// One resolved engine step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    /// Name of the construction that succeeded.
    pub construction: String,
    /// The guaranteed edge the construction used, if any.
    pub edge: Option<(Vertex, Vertex)>,
    /// Edges found before `edge` whose constructions did not verify.
    pub skipped_edges: usize,
    pub t: usize,
    pub s: usize,
    pub ell: usize,
    pub outcome: OutcomeKind,
    pub sets: SetSnapshot,
    /// The switch the step started from.
    pub switch: Switch,
}

/// Re-executes a recorded step from its switch and checks the rule, edge and
/// outcome coincide.
pub fn replay(g: &Graph, a: usize, b: usize, step: &TraceStep) -> Result<bool, EngineError> {
    if step.rule == Rule::OracleFallback {
        return Ok(true);
    }
    let again = engine_step(g, &step.switch, a, b)?;
    Ok(again.trace.rule == step.rule
        && again.trace.edge == step.edge
        && again.trace.outcome == step.outcome)
}
