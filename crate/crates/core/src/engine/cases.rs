//! Case analysis once `S` is known, split by where the apex sits.
//!
//! Constructions are written on π indices. With `u` a neighbour of one
//! endpoint, `w ∈ S` a neighbour of `p₂` and `r ∈ A` a neighbour of `p₁`:
//!
//! * `rotate_both(u, i, w)`: `q[..=i] + q[w+1..] + rev(q[u..=w])`, for an
//!   edge `q_i ~ q_{w+1}` and `p₁ ~ q_u`. Uses all of π when `i = u - 1`;
//!   when `i < u - 1` the skipped vertices are apex candidates.
//! * `outside_rotation(y, w)`: `y + q[..=w] + rev(q[w+1..])` for an outside
//!   `y ~ p₁` with `y ~ q_{w+1}`; one longer than π.
//! * `split_path(i, w)`: `q[..=i] + q[w+1..] + rev(q[i+1..=w])`, a path for
//!   the edge `q_i ~ q_{w+1}`; read from its far end it moves the apex
//!   towards the start when `i < t`.
//! * `cross(u, i, r)`: `q[..=u] + rev(q[r+1..]) + q[i..=r]` for
//!   `p₂ ~ q_u`, `q_i ~ q_{r+1}` and `p₁ ~ q_r`.
//! * `fold_path(i, r)`: `rev(q[r+1..]) + rev(q[..=i]) + rev(q[i+1..=r])`, a
//!   path for `q_i ~ q_{r+1}` and `p₁ ~ q_r`.

use std::collections::BTreeMap;

use super::trace::{Rule, SetSnapshot};
use super::view::{Candidate, View};
use super::{Case, EngineError, Resolution, RotationContext};
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::structures::Switch;
use crate::Vertex;

/// Runs the case analysis for `ctx` (as returned by [`super::compute_s`]).
pub fn resolve_case(
    g: &Graph,
    sw: &Switch,
    ctx: &RotationContext,
    a: usize,
    b: usize,
) -> Result<Resolution, EngineError> {
    resolve_in(&View::new(g, sw, a, b)?, ctx)
}

pub(super) fn resolve_in(v: &View, ctx: &RotationContext) -> Result<Resolution, EngineError> {
    match (v.t, ctx.case) {
        (1, Case::A) => rotate_case_a(v, ctx, Rule::T1CaseA, None),
        (1, Case::B) => t1_case_b(v, ctx),
        (2, Case::A) => t2_case_a(v, ctx),
        (2, Case::B) => t2_case_b(v, ctx),
        (_, Case::A) => t3_case_a(v, ctx),
        (_, Case::B) => t3_case_b(v, ctx),
    }
}

impl View<'_> {
    fn rotate_both(&self, u: usize, i: usize, w: usize) -> Vec<Vertex> {
        let mut c = self.fwd(0, i);
        c.extend(self.fwd(w + 1, self.last));
        c.extend(self.back(u, w));
        c
    }

    fn outside_rotation(&self, y: Vertex, w: usize) -> Vec<Vertex> {
        let mut c = vec![y];
        c.extend(self.fwd(0, w));
        c.extend(self.back(w + 1, self.last));
        c
    }

    fn split_path(&self, i: usize, w: usize) -> Vec<Vertex> {
        let mut p = self.fwd(0, i);
        p.extend(self.fwd(w + 1, self.last));
        p.extend(self.back(i + 1, w));
        p
    }

    fn cross(&self, u: usize, i: usize, r: usize) -> Vec<Vertex> {
        let mut c = self.fwd(0, u);
        c.extend(self.back(r + 1, self.last));
        c.extend(self.fwd(i, r));
        c
    }

    fn fold_path(&self, i: usize, r: usize) -> Vec<Vertex> {
        let mut p = self.back(r + 1, self.last);
        p.extend(self.back(0, i));
        p.extend(self.back(i + 1, r));
        p
    }
}

/// An injective reassignment of `T`, stored from image to preimage.
struct Assignment {
    inverse: BTreeMap<Vertex, Vertex>,
}

impl Assignment {
    fn build(
        v: &View,
        t_set: VertexSet,
        map: impl Fn(usize) -> usize,
    ) -> Result<Self, EngineError> {
        let mut inverse = BTreeMap::new();
        for u in t_set {
            let image = v.q[map(v.idx(u))];
            if inverse.insert(image, u).is_some() {
                return Err(v.violation(format!("assignment collision at {image}")));
            }
        }
        Ok(Assignment { inverse })
    }

    fn images(&self) -> VertexSet {
        self.inverse.keys().copied().collect()
    }

    fn preimage(&self, image: Vertex) -> Vertex {
        self.inverse[&image]
    }

    fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.inverse.iter().map(|(&img, &pre)| (pre, img)).collect()
    }
}

type Extra<'a> = &'a dyn Fn(Vertex, usize) -> Vec<Candidate>;

fn snapshot(ctx: &RotationContext, t_star: VertexSet) -> SetSnapshot {
    SetSnapshot::of(ctx.s_set, ctx.t_set, ctx.t_out, t_star, ctx.a_set)
}

/// Case A with plain predecessors: an edge between `T⁻ ∪ T_out` and `S⁺`.
/// `assign` optionally replaces the predecessor map (the `t > 2` tables);
/// `extra` adds regime-specific constructions tried first.
fn rotate_case_a(
    v: &View,
    ctx: &RotationContext,
    rule: Rule,
    assign: Option<(&Assignment, Extra)>,
) -> Result<Resolution, EngineError> {
    let plain;
    let (table, extra): (&Assignment, Option<Extra>) = match assign {
        Some((table, extra)) => (table, Some(extra)),
        None => {
            plain = Assignment::build(v, ctx.t_set, |i| i - 1)?;
            (&plain, None)
        }
    };
    let t_star = table.images();
    let xs = t_star | ctx.t_out;
    let ys = v.shift_plus(ctx.s_set)?;
    v.scan(rule, xs, ys, v.b, v.a, snapshot(ctx, t_star), |i, j| {
        let w = v.idx(j) - 1;
        if ctx.t_out.contains(i) {
            return vec![Candidate::Cycle(
                "outside-rotation",
                v.outside_rotation(i, w),
            )];
        }
        let ii = v.idx(i);
        let u = v.idx(table.preimage(i));
        let mut cands = extra.map(|f| f(i, w)).unwrap_or_default();
        cands.push(Candidate::Cycle("rotate-both", v.rotate_both(u, ii, w)));
        cands.push(Candidate::Path("split-path", v.split_path(ii, w)));
        cands
    })
}

/// `t = 1`, case B: an edge between `(T - {v₂})⁻ ∪ T_out ∪ {p₂}` and `A⁻`.
fn t1_case_b(v: &View, ctx: &RotationContext) -> Result<Resolution, EngineError> {
    let t0 = ctx.t_set.without(v.q[2]);
    let t0_minus = v.shift_minus(t0)?;
    let xs = t0_minus | ctx.t_out | VertexSet::singleton(v.p2());
    let ys = v.shift_minus(ctx.a_set)?;
    let last = v.last;
    v.scan(
        Rule::T1CaseB,
        xs,
        ys,
        v.b,
        v.a,
        snapshot(ctx, t0_minus),
        |i, j| {
            let r = v.idx(j) + 1;
            if i == v.p2() {
                let mut c = v.fwd(0, r - 1);
                c.extend(v.back(r, last));
                vec![Candidate::Cycle("p2-to-a-minus", c)]
            } else if ctx.t_out.contains(i) {
                let mut c = vec![i];
                c.extend(v.back(0, r - 1));
                c.extend(v.fwd(r, last));
                vec![Candidate::Cycle("outside-to-a-minus", c)]
            } else {
                let u = v.idx(i) + 1;
                let mut c = v.fwd(0, u - 1);
                c.extend(v.back(u, r - 1));
                c.extend(v.back(r, last));
                vec![Candidate::Cycle("double-rotation", c)]
            }
        },
    )
}

/// `t = 2`, case A. `p₁ ~ x` means the same path already carries a
/// `(1, ·)`-switch; otherwise as for `t = 1`.
fn t2_case_a(v: &View, ctx: &RotationContext) -> Result<Resolution, EngineError> {
    if ctx.t_set.contains(v.x()) {
        return v
            .direct(
                Rule::T2ApexInT,
                vec![Candidate::Path("apex-at-start", v.q.clone())],
                snapshot(ctx, VertexSet::EMPTY),
            )
            .ok_or_else(|| {
                v.violation(format!(
                    "{}: no (1, s)-switch on the same path",
                    Rule::T2ApexInT
                ))
            });
    }
    rotate_case_a(v, ctx, Rule::T2CaseA, None)
}

/// `t = 2`, case B.
fn t2_case_b(v: &View, ctx: &RotationContext) -> Result<Resolution, EngineError> {
    let x = v.x();
    let both = v.adj(v.p2(), x) && v.adj(v.p2(), v.q[3]);
    if both && v.sw.s == 1 {
        // v₁ v₂ x v₃ p₂ … v₄: the apex now also sees p₂
        let mut p = v.fwd(0, 3);
        p.extend(v.back(4, v.last));
        return v
            .direct(
                Rule::T2DoubleEdge,
                vec![Candidate::Path("widen-apex", p)],
                snapshot(ctx, VertexSet::EMPTY),
            )
            .ok_or_else(|| {
                v.violation(format!(
                    "{}: widened switch is not better",
                    Rule::T2DoubleEdge
                ))
            });
    }
    let table = if both {
        Assignment::build(v, ctx.t_set, |i| if i == 2 { 0 } else { i + 1 })?
    } else {
        Assignment::build(v, ctx.t_set, |i| match i {
            1 => 0,
            2 | 3 => 4,
            _ => i + 1,
        })?
    };
    cross_case_b(v, ctx, Rule::T2CaseB, &table, &|_| false)
}

/// `t > 2`, case A.
fn t3_case_a(v: &View, ctx: &RotationContext) -> Result<Resolution, EngineError> {
    let t = v.t;
    let p1n = v.nb(v.p1());
    let (vt, x, vt1, vtm1) = (v.q[t - 1], v.q[t], v.q[t + 1], v.q[t - 2]);
    let sets = snapshot(ctx, VertexSet::EMPTY);
    if p1n.contains(vt) && p1n.contains(x) {
        // v_{t-1} … v₁ v_t x v_{t+1} …
        let mut p = v.back(0, t - 2);
        p.extend(v.fwd(t - 1, v.last));
        return v
            .direct(
                Rule::T3P1TAndApex,
                vec![Candidate::Path("apex-shift-one", p)],
                sets,
            )
            .ok_or_else(|| {
                v.violation(format!(
                    "{}: shifted switch is not better",
                    Rule::T3P1TAndApex
                ))
            });
    }
    if p1n.contains(vt) && p1n.contains(vtm1) {
        // v_{t-2} … v₁ v_{t-1} v_t x …: v_{t-1} becomes the apex
        let mut p = v.back(0, t - 3);
        p.extend(v.fwd(t - 2, v.last));
        return v
            .direct(
                Rule::T3P1TAndBefore,
                vec![Candidate::Path("apex-shift-two", p)],
                sets,
            )
            .ok_or_else(|| {
                v.violation(format!(
                    "{}: shifted switch is not better",
                    Rule::T3P1TAndBefore
                ))
            });
    }

    let in_q = p1n & ctx.q_set;
    let regime = if in_q.len() <= 1 {
        1
    } else if in_q == VertexSet::EMPTY.with(x).with(vt1) {
        2
    } else {
        3
    };
    let table = Assignment::build(v, ctx.t_set, |i| match (regime, i) {
        (1, i) if i == t || i == t + 1 => t - 2,
        (2, i) if i == t => t - 1,
        (2, i) if i == t + 1 => t - 2,
        (3, i) if i == t + 1 => t - 3,
        _ => i - 1,
    })?;
    let extra = |i: Vertex, w: usize| -> Vec<Candidate> {
        let ii = v.idx(i);
        let mut cands = Vec::new();
        let rerouted = match regime {
            1 | 2 => ii == t - 2,
            _ => ii == t - 2 || ii == t - 3,
        };
        if rerouted {
            cands.push(Candidate::Path("split-path-early", v.split_path(ii, w)));
        }
        if regime == 2 && ii == t - 1 {
            // v_{t-1} … v₁ v_{t+1} x v_t q_{w+1} … p₂ q_w … v_{t+2}
            let mut p = v.back(0, t - 2);
            p.extend([v.q[t + 1], v.q[t], v.q[t - 1]]);
            p.extend(v.fwd(w + 1, v.last));
            p.extend(v.back(t + 2, w));
            cands.push(Candidate::Path("apex-behind-p1", p));
        }
        cands
    };
    rotate_case_a(v, ctx, Rule::T3CaseA, Some((&table, &extra)))
}

/// `t > 2`, case B.
fn t3_case_b(v: &View, ctx: &RotationContext) -> Result<Resolution, EngineError> {
    let t = v.t;
    let table = Assignment::build(v, ctx.t_set, |i| {
        if i == t {
            t - 3
        } else if i == t - 1 {
            t - 2
        } else {
            i + 1
        }
    })?;
    cross_case_b(v, ctx, Rule::T3CaseB, &table, &|ii| {
        ii + 2 == t || ii + 3 == t
    })
}

/// Case B for `t ≥ 2`: an edge between `T*` and `A⁺`.
fn cross_case_b(
    v: &View,
    ctx: &RotationContext,
    rule: Rule,
    table: &Assignment,
    fold_first: &dyn Fn(usize) -> bool,
) -> Result<Resolution, EngineError> {
    let t_star = table.images();
    let ys = v.shift_plus(ctx.a_set)?;
    let mut sets = snapshot(ctx, t_star);
    sets.t_star = table.pairs().into_iter().map(|(_, img)| img).collect();
    v.scan(rule, t_star, ys, v.b, v.a, sets, |i, j| {
        let r = v.idx(j) - 1;
        let ii = v.idx(i);
        let u = v.idx(table.preimage(i));
        let mut cands = Vec::new();
        if ii == 0 {
            // p₁ sees q_r and q_{r+1}: it slides between them
            let mut p = v.fwd(1, r);
            p.push(v.p1());
            p.extend(v.fwd(r + 1, v.last));
            cands.push(Candidate::Path("p1-between", p));
        }
        if fold_first(ii) {
            cands.push(Candidate::Path("fold-path", v.fold_path(ii, r)));
        }
        if u < ii {
            cands.push(Candidate::Cycle("cross", v.cross(u, ii, r)));
        }
        if ii < r {
            cands.push(Candidate::Path("fold-path", v.fold_path(ii, r)));
        }
        cands
    })
}
