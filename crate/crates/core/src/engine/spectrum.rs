use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::claims::engine_step;
use super::initial::{find_initial_tilde, least_triangle};
use super::small_b::small_b_spectrum;
use super::trace::{OutcomeKind, Rule, SetSnapshot, TraceStep};
use super::{EngineError, Outcome, Violation};
use crate::bip_indep::{alpha_tilde, BipWitness};
use crate::graph::{min_degree, serialize_edge_list, two_color, Graph, TwoColoring};
use crate::oracle::oracle_find_tilde;
use crate::structures::{
    best_switch_from_path, cycles_of, ordering, switch_from_tilde_cycle, verify_cycle,
    verify_tagged_cycle, Switch, TaggedCycle,
};
use crate::Vertex;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpectrumOptions {
    /// Replace a failed engine step by exhaustive tagged-cycle search instead
    /// of reporting a theorem violation.
    pub fallback_oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Tagged cycles grown by the extension engine.
    Engine,
    /// The `b ≤ 2` route: short cycles, climbing, Hamiltonian search.
    SmallB,
    /// Even cycles of a balanced complete bipartite graph.
    Bipartite,
    /// Exhaustive search only.
    Oracle,
}

/// One cycle per length plus the evidence that produced them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumCertificate {
    pub cycles: BTreeMap<usize, Vec<Vertex>>,
    pub tagged: Vec<TaggedCycle>,
    pub trace: Vec<TraceStep>,
    pub route: Route,
    pub oracle_assisted: bool,
    /// Switch improvements made by each `extend` call, in order.
    pub improvements: Vec<usize>,
}

impl SpectrumCertificate {
    pub(super) fn new(route: Route) -> Self {
        SpectrumCertificate {
            cycles: BTreeMap::new(),
            tagged: Vec::new(),
            trace: Vec::new(),
            route,
            oracle_assisted: false,
            improvements: Vec::new(),
        }
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.keys().copied().collect()
    }

    pub fn max_improvements(&self) -> usize {
        self.improvements.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumVerdict {
    Pancyclic {
        witness: BipWitness,
        certificate: SpectrumCertificate,
    },
    /// `G = K_{n/2,n/2}`; `sides` are the two colour classes.
    BipartiteException {
        witness: BipWitness,
        sides: [Vec<Vertex>; 2],
        certificate: SpectrumCertificate,
    },
    /// `δ < α̃` (or `n < 2`, where α̃ is undefined).
    NotApplicable {
        min_degree: usize,
        witness: Option<BipWitness>,
    },
}

impl SpectrumVerdict {
    pub fn certificate(&self) -> Option<&SpectrumCertificate> {
        match self {
            SpectrumVerdict::Pancyclic { certificate, .. }
            | SpectrumVerdict::BipartiteException { certificate, .. } => Some(certificate),
            SpectrumVerdict::NotApplicable { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SpectrumVerdict::Pancyclic { .. } => "pancyclic",
            SpectrumVerdict::BipartiteException { .. } => "bipartite-exception",
            SpectrumVerdict::NotApplicable { .. } => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendReport {
    pub tagged: TaggedCycle,
    pub trace: Vec<TraceStep>,
    pub improvements: usize,
    pub oracle_assisted: bool,
}

fn violation(g: &Graph, message: String, trace: Vec<TraceStep>) -> EngineError {
    EngineError::TheoremViolation(Box::new(Violation {
        message,
        graph: serialize_edge_list(g),
        switch: None,
        trace,
    }))
}

/// From a tagged cycle of length `ℓ < n - 1`, a tagged cycle of length
/// `ℓ + 1` or `ℓ + 2`.
///
/// Builds a switch from `tc`, then repeats engine steps, adopting every
/// better switch, until a step yields a tagged cycle. More than `n²`
/// improvements is reported as an error (the measure `(t, -s)` admits at
/// most `(ℓ + 1)²` distinct values).
pub fn extend(
    g: &Graph,
    tc: &TaggedCycle,
    a: usize,
    b: usize,
    opts: SpectrumOptions,
) -> Result<ExtendReport, EngineError> {
    let n = g.n();
    verify_tagged_cycle(g, tc)
        .map_err(|e| EngineError::Precondition(format!("invalid tagged cycle: {e}")))?;
    if tc.len() + 1 >= n {
        return Err(EngineError::Precondition(format!(
            "tagged cycle of length {} leaves no room in a graph on {n} vertices",
            tc.len()
        )));
    }
    if b < 3 {
        return Err(EngineError::Precondition(format!(
            "extension needs b ≥ 3 (b = {b})"
        )));
    }
    let mut sw =
        switch_from_tilde_cycle(g, tc).map_err(|e| violation(g, e.to_string(), Vec::new()))?;
    if let Some(best) = ordering(&sw)
        .ok()
        .and_then(|pi| best_switch_from_path(g, pi.sequence()))
    {
        if best.improves_on(&sw) {
            sw = best;
        }
    }

    let mut trace = Vec::new();
    let mut improvements = 0;
    loop {
        let step = match engine_step(g, &sw, a, b) {
            Ok(step) => step,
            Err(EngineError::TheoremViolation(mut v)) => {
                if opts.fallback_oracle {
                    if let Some(found) = oracle_fallback(g, &sw)? {
                        trace.push(found.1);
                        return Ok(ExtendReport {
                            tagged: found.0,
                            trace,
                            improvements,
                            oracle_assisted: true,
                        });
                    }
                }
                v.trace = trace;
                return Err(EngineError::TheoremViolation(v));
            }
            Err(e) => return Err(e),
        };
        trace.push(step.trace);
        match step.outcome {
            Outcome::FoundTagged(found) => {
                return Ok(ExtendReport {
                    tagged: found,
                    trace,
                    improvements,
                    oracle_assisted: false,
                });
            }
            Outcome::BetterSwitch(next) => {
                if !next.improves_on(&sw) {
                    return Err(violation(
                        g,
                        format!("switch {next} does not improve on {sw}"),
                        trace,
                    ));
                }
                improvements += 1;
                if improvements > n * n {
                    return Err(EngineError::IterationBound {
                        n,
                        steps: improvements,
                    });
                }
                sw = next;
            }
        }
    }
}

fn oracle_fallback(
    g: &Graph,
    sw: &Switch,
) -> Result<Option<(TaggedCycle, TraceStep)>, EngineError> {
    let ell = sw.ell();
    for len in [ell + 1, ell + 2] {
        if let Some(tc) = oracle_find_tilde(g, len)? {
            let step = TraceStep {
                rule: Rule::OracleFallback,
                construction: "exhaustive-search".into(),
                edge: None,
                skipped_edges: 0,
                t: sw.t,
                s: sw.s,
                ell,
                outcome: OutcomeKind::FoundTagged { length: tc.len() },
                sets: SetSnapshot::default(),
                switch: sw.clone(),
            };
            return Ok(Some((tc, step)));
        }
    }
    Ok(None)
}

/// Decides the condition and, when it holds, produces a verified cycle of
/// every length `3..=n` or the balanced complete bipartite exception.
pub fn full_spectrum(g: &Graph, opts: SpectrumOptions) -> Result<SpectrumVerdict, EngineError> {
    let n = g.n();
    let delta = min_degree(g);
    let Ok(witness) = alpha_tilde(g) else {
        return Ok(SpectrumVerdict::NotApplicable {
            min_degree: delta,
            witness: None,
        });
    };
    if delta < witness.k {
        return Ok(SpectrumVerdict::NotApplicable {
            min_degree: delta,
            witness: Some(witness),
        });
    }

    if let TwoColoring::Bipartite(bp) = two_color(g) {
        let sides = [bp.side(0), bp.side(1)];
        let (l, r) = (sides[0].len(), sides[1].len());
        if l != r || g.edge_count() != l * r {
            return Err(violation(
                g,
                format!("bipartite with sides {l} and {r} but not K_{{n/2,n/2}}"),
                Vec::new(),
            ));
        }
        let mut cert = SpectrumCertificate::new(Route::Bipartite);
        for half in 2..=l {
            let cycle: Vec<Vertex> = (0..half).flat_map(|i| [sides[0][i], sides[1][i]]).collect();
            cert.cycles.insert(2 * half, cycle);
        }
        check_cycles(g, &cert, (4..=n).step_by(2))?;
        return Ok(SpectrumVerdict::BipartiteException {
            witness,
            sides,
            certificate: cert,
        });
    }

    let cert = if witness.b <= 2 {
        small_b_spectrum(g)?
    } else {
        engine_spectrum(g, witness, opts)?
    };
    check_cycles(g, &cert, 3..=n)?;
    Ok(SpectrumVerdict::Pancyclic {
        witness,
        certificate: cert,
    })
}

fn engine_spectrum(
    g: &Graph,
    w: BipWitness,
    opts: SpectrumOptions,
) -> Result<SpectrumCertificate, EngineError> {
    let n = g.n();
    let mut cert = SpectrumCertificate::new(Route::Engine);
    let mut tc = find_initial_tilde(g)?;
    loop {
        let (base, longer) = cycles_of(&tc);
        cert.cycles.entry(base.len()).or_insert(base);
        cert.cycles.entry(longer.len()).or_insert(longer);
        cert.tagged.push(tc.clone());
        if tc.len() + 1 >= n {
            break;
        }
        let report = extend(g, &tc, w.a, w.b, opts)?;
        cert.trace.extend(report.trace);
        cert.improvements.push(report.improvements);
        cert.oracle_assisted |= report.oracle_assisted;
        tc = report.tagged;
    }
    if let Some(tri) = least_triangle(g) {
        cert.cycles.entry(3).or_insert_with(|| tri.to_vec());
    }
    Ok(cert)
}

fn check_cycles(
    g: &Graph,
    cert: &SpectrumCertificate,
    lengths: impl Iterator<Item = usize>,
) -> Result<(), EngineError> {
    for len in lengths {
        match cert.cycles.get(&len) {
            None => {
                return Err(violation(
                    g,
                    format!("no cycle of length {len}"),
                    cert.trace.clone(),
                ));
            }
            Some(c) if c.len() != len || verify_cycle(g, c).is_err() => {
                return Err(violation(
                    g,
                    format!("cycle for length {len} does not verify"),
                    cert.trace.clone(),
                ));
            }
            Some(_) => {}
        }
    }
    Ok(())
}
