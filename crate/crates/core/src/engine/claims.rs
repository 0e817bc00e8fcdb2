//! The preliminary rules about the endpoints of π, then the set `S`.
//!
//! Index conventions: `q` is π, `q[0] = p₁`, `q[last] = p₂`, the apex sits
//! at `q[t]`, path vertex `v_j` sits at `q[j-1]` for `j ≤ t` and at `q[j]`
//! otherwise.

use super::cases::resolve_in;
use super::trace::{Rule, SetSnapshot};
use super::view::{Candidate, View};
use super::{Case, EngineError, Resolution, RotationContext};
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::structures::Switch;

/// Result of computing `S`: either the context for the case analysis or an
/// early resolution.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetS {
    Context(RotationContext),
    Resolved(Resolution),
}

/// One full engine step: closing edge, the two endpoint rules, `S`, then the
/// case analysis.
pub fn engine_step(g: &Graph, sw: &Switch, a: usize, b: usize) -> Result<Resolution, EngineError> {
    let v = View::new(g, sw, a, b)?;
    if let Some(r) = closing_edge(&v) {
        return Ok(r);
    }
    if let Some(r) = outside_in(&v)? {
        return Ok(r);
    }
    if let Some(r) = before_t_in(&v)? {
        return Ok(r);
    }
    match compute_s_in(&v)? {
        SetS::Resolved(r) => Ok(r),
        SetS::Context(ctx) => resolve_in(&v, &ctx),
    }
}

fn closing_edge(v: &View) -> Option<Resolution> {
    if !v.adj(v.p1(), v.p2()) {
        return None;
    }
    v.direct(
        Rule::ClosingEdge,
        vec![Candidate::Cycle("closed-pi", v.q.clone())],
        SetSnapshot::default(),
    )
}

/// Neighbours of the endpoints outside the switch.
///
/// For `t > 1` an outside neighbour `y` of `p₂` gives the path
/// `q[1..] + y`, shifting the apex one step towards the start. For `t = 1`,
/// `p₁` with `a` outside neighbours, or `p₂` with `a` outside neighbours,
/// yields a tagged cycle through the guaranteed edge. `None` means the rule
/// does not apply (the step passes on).
pub fn enforce_claim_outside(
    g: &Graph,
    sw: &Switch,
    a: usize,
    b: usize,
) -> Result<Option<Resolution>, EngineError> {
    outside_in(&View::new(g, sw, a, b)?)
}

fn outside_in(v: &View) -> Result<Option<Resolution>, EngineError> {
    let (p1, p2, last) = (v.p1(), v.p2(), v.last);
    if v.t > 1 {
        let outs = v.nb(p2) - v.r;
        let Some(y) = outs.first() else {
            return Ok(None);
        };
        let mut path = v.fwd(1, last);
        path.push(y);
        let sets = SetSnapshot {
            t_out: outs.to_vec(),
            ..SetSnapshot::default()
        };
        return v
            .direct(
                Rule::P2Outside,
                vec![Candidate::Path("drop-p1-add-y", path)],
                sets,
            )
            .map(Some)
            .ok_or_else(|| {
                v.violation(format!("{}: rerouted path is not better", Rule::P2Outside))
            });
    }

    let a_out = v.nb(p1) - v.r;
    if a_out.len() >= v.a {
        // neighbourhood of the vertex before p₂, measured in R without p₂
        let w = v.q[last - 1];
        let inner = v.r.without(p2);
        let t_in = v.nb(w) & inner;
        let t_out = v.nb(w) - inner;
        let sets = SetSnapshot {
            t: t_in.to_vec(),
            t_out: t_out.to_vec(),
            a: a_out.to_vec(),
            ..SetSnapshot::default()
        };
        let common = a_out & t_out;
        if !common.is_empty() {
            let cands = common
                .iter()
                .map(|y| {
                    let mut c = vec![y];
                    c.extend(v.fwd(0, last - 1));
                    Candidate::Cycle("outside-common", c)
                })
                .collect();
            return v
                .direct(Rule::P1OutsideMany, cands, sets)
                .map(Some)
                .ok_or_else(|| {
                    v.violation(format!(
                        "{}: common neighbour gives no tagged cycle",
                        Rule::P1OutsideMany
                    ))
                });
        }
        let ys = v.shift_plus(t_in)? | t_out;
        let res = v.scan(Rule::P1OutsideMany, a_out, ys, v.a, v.b, sets, |i, j| {
            let mut c = vec![i];
            if t_out.contains(j) {
                c.extend(v.fwd(0, last - 1));
                c.push(j);
                vec![Candidate::Cycle("outside-via-tout", c)]
            } else {
                let u = v.idx(j) - 1;
                c.extend(v.fwd(0, u));
                c.extend(v.back(u + 1, last - 1));
                vec![Candidate::Cycle("outside-via-tplus", c)]
            }
        })?;
        return Ok(Some(res));
    }

    let b_out = v.nb(p2) - v.r;
    if b_out.len() >= v.a {
        let t_set = v.nb(p1) & v.r;
        let xs = v.shift_minus(t_set)?;
        let sets = SetSnapshot {
            t: t_set.to_vec(),
            t_out: b_out.to_vec(),
            ..SetSnapshot::default()
        };
        let res = v.scan(Rule::P2OutsideMany, xs, b_out, v.b, v.a, sets, |i, j| {
            let u = v.idx(i) + 1;
            let mut c = vec![j];
            c.extend(v.back(u, last));
            c.extend(v.fwd(0, u - 1));
            vec![Candidate::Cycle("p2-outside-rotation", c)]
        })?;
        return Ok(Some(res));
    }
    Ok(None)
}

/// For `t > 1`: a neighbour of `p₂` at π index `j < t - 1` gives the path
/// `q[j+1..=last] + reverse(q[..=j])`, whose apex sits `j + 1` positions
/// closer to the start. The largest such `j` is used.
pub fn enforce_claim_before_t(g: &Graph, sw: &Switch) -> Result<Option<Resolution>, EngineError> {
    before_t_in(&View::new(g, sw, 1, 1)?)
}

fn before_t_in(v: &View) -> Result<Option<Resolution>, EngineError> {
    if v.t <= 1 {
        return Ok(None);
    }
    let early = v.nb(v.p2()) & v.range(0, v.t - 2);
    let Some(j) = early.iter().map(|u| v.idx(u)).max() else {
        return Ok(None);
    };
    let mut path = v.fwd(j + 1, v.last);
    path.extend(v.back(0, j));
    let sets = SetSnapshot {
        t: early.to_vec(),
        ..SetSnapshot::default()
    };
    v.direct(
        Rule::P2BeforeT,
        vec![Candidate::Path("reroute-before-t", path)],
        sets,
    )
    .map(Some)
    .ok_or_else(|| v.violation(format!("{}: rerouted path is not better", Rule::P2BeforeT)))
}

/// `S`: the last `a` neighbours of `p₂` in π. At `t = 1` an edge from `p₂`
/// to `p₁` or to the apex resolves the step directly.
pub fn compute_s(g: &Graph, sw: &Switch, a: usize, b: usize) -> Result<SetS, EngineError> {
    let v = View::new(g, sw, a, b)?;
    compute_s_in(&v)
}

pub(super) fn compute_s_in(v: &View) -> Result<SetS, EngineError> {
    if let Some(r) = closing_edge(v) {
        return Ok(SetS::Resolved(r));
    }
    if v.t == 1 && v.adj(v.p2(), v.x()) {
        let mut c = v.fwd(0, 1);
        c.extend(v.back(2, v.last));
        if let Some(r) = v.direct(
            Rule::P2AdjacentApex,
            vec![Candidate::Cycle("p2-apex", c)],
            SetSnapshot::default(),
        ) {
            return Ok(SetS::Resolved(r));
        }
        return Err(v.violation(format!(
            "{}: cycle through p2 and x is not tagged",
            Rule::P2AdjacentApex
        )));
    }
    let inside = v.nb(v.p2()) & v.r;
    if inside.len() < v.a {
        return Err(v.violation(format!(
            "p2 has {} neighbours in the switch, fewer than a = {}",
            inside.len(),
            v.a
        )));
    }
    let mut idxs: Vec<usize> = inside.iter().map(|u| v.idx(u)).collect();
    idxs.sort_unstable();
    let s_idx = &idxs[idxs.len() - v.a..];
    let min_s = s_idx[0];
    if min_s < v.t + 1 {
        return Err(v.violation(format!(
            "min(S) at index {min_s} is before t + 1 = {}",
            v.t + 1
        )));
    }
    let s_set: VertexSet = s_idx.iter().map(|&i| v.q[i]).collect();
    let after = v.range(min_s + 1, v.last);
    let upto = v.range(0, min_s);
    let a_set = v.nb(v.p1()) & after;
    let (case, t_set, t_out) = if a_set.len() < v.a {
        (Case::A, v.nb(v.p1()) & upto, v.nb(v.p1()) - v.r)
    } else {
        (Case::B, v.nb(v.p2()) & upto, v.nb(v.p2()) - v.r)
    };
    let q_set = if v.t < v.last {
        VertexSet::EMPTY
            .with(v.q[v.t - 1])
            .with(v.x())
            .with(v.q[v.t + 1])
    } else {
        VertexSet::EMPTY.with(v.q[v.t - 1]).with(v.x())
    };
    Ok(SetS::Context(RotationContext {
        s_set,
        min_s,
        case,
        t_set,
        t_out,
        a_set: if case == Case::B {
            a_set
        } else {
            VertexSet::EMPTY
        },
        t_star: Vec::new(),
        q_set,
    }))
}
