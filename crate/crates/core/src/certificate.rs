//! Serialized spectrum certificates and their offline verifier.
//!
//! The graph hash is 64-bit FNV-1a (offset basis `0xcbf29ce484222325`, prime
//! `0x100000001b3`) over the UTF-8 bytes of the canonical edge list produced
//! by [`serialize_edge_list`]: the line `"n m\n"` followed by one line
//! `"u v\n"` per edge with `u < v`, edges in lexicographic order. It is
//! written as 16 lowercase hex digits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bip_indep::{alpha_tilde, BipWitness};
use crate::engine::{replay, Route, SpectrumCertificate, SpectrumVerdict, TraceStep};
use crate::graph::{min_degree, serialize_edge_list, two_color, Graph, TwoColoring};
use crate::structures::{verify_cycle, verify_tagged_cycle, TaggedCycle};
use crate::Vertex;

pub const SCHEMA_VERSION: u32 = 1;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(FNV_PRIME)
    })
}

pub fn graph_hash(g: &Graph) -> String {
    format!("{:016x}", fnv1a64(serialize_edge_list(g).as_bytes()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pancyclic,
    BipartiteException,
    NotApplicable,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleEntry {
    pub length: usize,
    pub cycle: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedEntry {
    pub length: usize,
    pub cycle: Vec<Vertex>,
    pub apex: Vertex,
    pub attach: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub route: Option<Route>,
    pub oracle_assisted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub graph_hash: String,
    pub n: usize,
    pub m: usize,
    pub verdict: Verdict,
    pub min_degree: usize,
    pub alpha_tilde: Option<BipWitness>,
    pub cycles: Vec<CycleEntry>,
    pub tagged: Vec<TaggedEntry>,
    pub trace: Vec<TraceStep>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Certificate {
    fn blank(g: &Graph, verdict: Verdict) -> Self {
        Certificate {
            schema: SCHEMA_VERSION,
            graph_hash: graph_hash(g),
            n: g.n(),
            m: g.edge_count(),
            verdict,
            min_degree: min_degree(g),
            alpha_tilde: None,
            cycles: Vec::new(),
            tagged: Vec::new(),
            trace: Vec::new(),
            provenance: Provenance {
                route: None,
                oracle_assisted: false,
            },
            error: None,
        }
    }

    pub fn from_verdict(g: &Graph, verdict: &SpectrumVerdict) -> Self {
        match verdict {
            SpectrumVerdict::Pancyclic {
                witness,
                certificate,
            } => Self::with_spectrum(g, Verdict::Pancyclic, *witness, certificate),
            SpectrumVerdict::BipartiteException {
                witness,
                certificate,
                ..
            } => Self::with_spectrum(g, Verdict::BipartiteException, *witness, certificate),
            SpectrumVerdict::NotApplicable { witness, .. } => Certificate {
                alpha_tilde: *witness,
                ..Self::blank(g, Verdict::NotApplicable)
            },
        }
    }

    /// A pancyclic certificate from exhaustive search, for the `--oracle` route.
    pub fn from_cycles(
        g: &Graph,
        witness: Option<BipWitness>,
        cycles: &BTreeMap<usize, Vec<Vertex>>,
        verdict: Verdict,
    ) -> Self {
        let mut cert = Self::blank(g, verdict);
        cert.alpha_tilde = witness;
        cert.cycles = entries(cycles);
        cert.provenance.route = Some(Route::Oracle);
        cert
    }

    pub fn error(g: &Graph, message: String, trace: Vec<TraceStep>) -> Self {
        Certificate {
            alpha_tilde: alpha_tilde(g).ok(),
            trace,
            error: Some(message),
            ..Self::blank(g, Verdict::Error)
        }
    }

    fn with_spectrum(
        g: &Graph,
        verdict: Verdict,
        witness: BipWitness,
        sc: &SpectrumCertificate,
    ) -> Self {
        let mut cert = Self::blank(g, verdict);
        cert.alpha_tilde = Some(witness);
        cert.cycles = entries(&sc.cycles);
        cert.tagged = sc
            .tagged
            .iter()
            .map(|tc| TaggedEntry {
                length: tc.len(),
                cycle: tc.cycle.clone(),
                apex: tc.apex,
                attach: tc.attach,
            })
            .collect();
        cert.trace = sc.trace.clone();
        cert.provenance = Provenance {
            route: Some(sc.route),
            oracle_assisted: sc.oracle_assisted,
        };
        cert
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.length).collect()
    }
}

fn entries(cycles: &BTreeMap<usize, Vec<Vertex>>) -> Vec<CycleEntry> {
    cycles
        .iter()
        .map(|(&length, c)| CycleEntry {
            length,
            cycle: c.clone(),
        })
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("unsupported schema {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
    #[error("graph hash {found} does not match {expected}")]
    GraphHash { expected: String, found: String },
    #[error("size: certificate says n={n} m={m}")]
    Size { n: usize, m: usize },
    #[error("length {length}: {reason}")]
    Cycle { length: usize, reason: String },
    #[error("length {0}: missing")]
    Missing(usize),
    #[error("length {0}: not expected for this verdict")]
    Unexpected(usize),
    #[error("tagged cycle {index}: {reason}")]
    Tagged { index: usize, reason: String },
    #[error("trace step {index}: {reason}")]
    Trace { index: usize, reason: String },
    #[error("verdict: {0}")]
    Verdict(String),
    #[error("certificate records an engine error: {0}")]
    RecordedError(String),
}

/// Re-checks every entry of `cert` against `g` from scratch and names the
/// first bad one.
pub fn verify_certificate(cert: &Certificate, g: &Graph) -> Result<(), CertificateError> {
    if cert.schema != SCHEMA_VERSION {
        return Err(CertificateError::Schema(cert.schema));
    }
    let expected = graph_hash(g);
    if cert.graph_hash != expected {
        return Err(CertificateError::GraphHash {
            expected,
            found: cert.graph_hash.clone(),
        });
    }
    if cert.n != g.n() || cert.m != g.edge_count() {
        return Err(CertificateError::Size {
            n: cert.n,
            m: cert.m,
        });
    }
    if cert.verdict == Verdict::Error {
        return Err(CertificateError::RecordedError(
            cert.error.clone().unwrap_or_default(),
        ));
    }

    let delta = min_degree(g);
    if cert.min_degree != delta {
        return Err(CertificateError::Verdict(format!(
            "minimum degree is {delta}, certificate says {}",
            cert.min_degree
        )));
    }
    let witness = alpha_tilde(g).ok();
    if cert.alpha_tilde != witness {
        return Err(CertificateError::Verdict(format!(
            "bipartite independence witness is {witness:?}, certificate says {:?}",
            cert.alpha_tilde
        )));
    }
    let holds = witness.is_some_and(|w| delta >= w.k);

    for entry in &cert.cycles {
        if entry.cycle.len() != entry.length {
            return Err(CertificateError::Cycle {
                length: entry.length,
                reason: format!("cycle has {} vertices", entry.cycle.len()),
            });
        }
        verify_cycle(g, &entry.cycle).map_err(|e| CertificateError::Cycle {
            length: entry.length,
            reason: e.to_string(),
        })?;
    }
    let wanted: Vec<usize> = match cert.verdict {
        Verdict::Pancyclic => (3..=g.n()).collect(),
        Verdict::BipartiteException => (4..=g.n()).step_by(2).collect(),
        Verdict::NotApplicable | Verdict::Error => Vec::new(),
    };
    let have = cert.lengths();
    if let Some(&len) = have.iter().find(|l| !wanted.contains(l)) {
        return Err(CertificateError::Unexpected(len));
    }
    if let Some(&len) = wanted.iter().find(|l| !have.contains(l)) {
        return Err(CertificateError::Missing(len));
    }
    if have.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CertificateError::Verdict(
            "cycle entries repeated or out of order".into(),
        ));
    }

    match cert.verdict {
        Verdict::NotApplicable if holds => {
            return Err(CertificateError::Verdict(
                "condition holds, not-applicable is wrong".into(),
            ));
        }
        Verdict::Pancyclic | Verdict::BipartiteException if !holds => {
            return Err(CertificateError::Verdict(
                "condition fails but the engine claims a spectrum".into(),
            ));
        }
        Verdict::BipartiteException => {
            let balanced_complete = match two_color(g) {
                TwoColoring::Bipartite(bp) => {
                    let (l, r) = (bp.side(0).len(), bp.side(1).len());
                    l == r && g.edge_count() == l * r
                }
                TwoColoring::OddCycle(_) => false,
            };
            if !balanced_complete {
                return Err(CertificateError::Verdict(
                    "graph is not a balanced complete bipartite graph".into(),
                ));
            }
        }
        _ => {}
    }

    for (index, t) in cert.tagged.iter().enumerate() {
        let tc = TaggedCycle {
            cycle: t.cycle.clone(),
            apex: t.apex,
            attach: t.attach,
        };
        let bad = |reason: String| CertificateError::Tagged { index, reason };
        if tc.len() != t.length {
            return Err(bad(format!("cycle has {} vertices", tc.len())));
        }
        verify_tagged_cycle(g, &tc).map_err(|e| bad(e.to_string()))?;
    }

    if !cert.trace.is_empty() {
        let w =
            witness.ok_or_else(|| CertificateError::Verdict("trace without a witness".into()))?;
        for (index, step) in cert.trace.iter().enumerate() {
            let bad = |reason: String| CertificateError::Trace { index, reason };
            match replay(g, w.a, w.b, step) {
                Ok(true) => {}
                Ok(false) => return Err(bad(format!("{} does not replay", step.rule))),
                Err(e) => return Err(bad(e.to_string())),
            }
        }
    }
    Ok(())
}
