//! The `tilde` command line: `analyze`, `spectrum`, `verify` and `hunt`.
//!
//! Graphs are read in the edge-list format of [`tilde_core::graph::parse_edge_list`].
//! Exit codes: 0 success, 1 I/O, parse or verification failure, 2 condition
//! not applicable, 3 theorem violation.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use tilde_core::certificate::{graph_hash, verify_certificate, Certificate, Verdict};
use tilde_core::engine::{full_spectrum, EngineError, SpectrumOptions, SpectrumVerdict};
use tilde_core::graph::{
    generate_gnp, instance_seed, min_degree, parse_edge_list, serialize_edge_list, two_color,
    TwoColoring,
};
use tilde_core::oracle::oracle_spectrum;
use tilde_core::{alpha_tilde, independence_number, BipWitness, Graph};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_NOT_APPLICABLE: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

/// Instances evaluated in parallel before their report lines are written.
const HUNT_CHUNK: usize = 64;

#[derive(Debug, Parser)]
#[command(
    name = "tilde",
    version,
    about = "Cycle spectra of graphs with minimum degree at least the bipartite independence number"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report n, m, δ, α, α̃ with its witness, and whether δ ≥ α̃.
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Produce a cycle of every length, or explain why not.
    Spectrum(SpectrumArgs),
    /// Re-check a certificate against a graph.
    Verify {
        certificate: PathBuf,
        graph: PathBuf,
    },
    /// Run the engine on random graphs and report every outcome.
    Hunt(HuntArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub graph: PathBuf,
    /// Use the extension engine (default).
    #[arg(long, conflicts_with = "oracle")]
    pub engine: bool,
    /// Use exhaustive search instead of the engine.
    #[arg(long)]
    pub oracle: bool,
    /// Re-verify the certificate before emitting it.
    #[arg(long)]
    pub certify: bool,
    /// Replace a failed engine step by exhaustive search.
    #[arg(long)]
    pub fallback_oracle: bool,
    /// Emit the certificate as JSON.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON certificate to this file.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HuntArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 100)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Line-delimited JSON report, one object per instance.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Where graphs and traces of violations are written.
    #[arg(long, default_value = "violations")]
    pub dump_dir: PathBuf,
    #[arg(long)]
    pub fallback_oracle: bool,
    /// Print the summary as JSON.
    #[arg(long)]
    pub json: bool,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Analyze { graph, json } => analyze(graph, *json, out),
        Command::Spectrum(args) => spectrum(args, out),
        Command::Verify { certificate, graph } => verify(certificate, graph, out),
        Command::Hunt(args) => hunt(args, out),
    }
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub independence_number: usize,
    pub alpha_tilde: Option<BipWitness>,
    pub condition: bool,
    pub bipartite: bool,
    pub route: &'static str,
}

pub fn analysis(g: &Graph) -> Analysis {
    let witness = alpha_tilde(g).ok();
    let delta = min_degree(g);
    let condition = witness.is_some_and(|w| delta >= w.k);
    let bipartite = matches!(two_color(g), TwoColoring::Bipartite(_));
    let route = match witness {
        _ if !condition => "none",
        _ if bipartite => "bipartite-exception",
        Some(w) if w.b <= 2 => "small-b",
        _ => "engine",
    };
    Analysis {
        n: g.n(),
        m: g.edge_count(),
        min_degree: delta,
        independence_number: independence_number(g),
        alpha_tilde: witness,
        condition,
        bipartite,
        route,
    }
}

fn analyze(path: &Path, json: bool, out: &mut dyn Write) -> Result<u8> {
    let g = read_graph(path)?;
    let a = analysis(&g);
    if json {
        writeln!(out, "{}", serde_json::to_string(&a)?)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "n = {}, m = {}", a.n, a.m)?;
    writeln!(out, "min degree = {}", a.min_degree)?;
    writeln!(out, "independence number = {}", a.independence_number)?;
    match a.alpha_tilde {
        Some(w) => writeln!(out, "alpha tilde = {} (a = {}, b = {})", w.k, w.a, w.b)?,
        None => writeln!(out, "alpha tilde undefined")?,
    }
    writeln!(
        out,
        "condition {}",
        if a.condition { "holds" } else { "fails" }
    )?;
    if a.bipartite {
        writeln!(
            out,
            "bipartite: only the balanced complete bipartite exception can satisfy the condition"
        )?;
    }
    writeln!(out, "route = {}", a.route)?;
    Ok(EXIT_OK)
}

/// Runs the chosen route and returns the certificate with its exit code.
pub fn certify_graph(g: &Graph, oracle: bool, opts: SpectrumOptions) -> Result<(Certificate, u8)> {
    if oracle {
        return oracle_certificate(g);
    }
    match full_spectrum(g, opts) {
        Ok(v) => {
            let code = match v {
                SpectrumVerdict::NotApplicable { .. } => EXIT_NOT_APPLICABLE,
                _ => EXIT_OK,
            };
            Ok((Certificate::from_verdict(g, &v), code))
        }
        Err(EngineError::TheoremViolation(v)) => {
            let (message, trace) = (v.to_string(), v.trace);
            Ok((Certificate::error(g, message, trace), EXIT_VIOLATION))
        }
        Err(e @ EngineError::IterationBound { .. }) => Ok((
            Certificate::error(g, e.to_string(), Vec::new()),
            EXIT_VIOLATION,
        )),
        Err(e) => Err(e.into()),
    }
}

fn oracle_certificate(g: &Graph) -> Result<(Certificate, u8)> {
    let witness = alpha_tilde(g).ok();
    let delta = min_degree(g);
    if !witness.is_some_and(|w| delta >= w.k) {
        let v = SpectrumVerdict::NotApplicable {
            min_degree: delta,
            witness,
        };
        return Ok((Certificate::from_verdict(g, &v), EXIT_NOT_APPLICABLE));
    }
    let spectrum = oracle_spectrum(g)?;
    let n = g.n();
    let lengths = spectrum.lengths();
    let verdict = if lengths == (3..=n).collect::<Vec<_>>() {
        Verdict::Pancyclic
    } else if lengths == (4..=n).step_by(2).collect::<Vec<_>>() {
        Verdict::BipartiteException
    } else {
        let message = format!("exhaustive search finds only lengths {lengths:?}");
        return Ok((Certificate::error(g, message, Vec::new()), EXIT_VIOLATION));
    };
    Ok((
        Certificate::from_cycles(g, witness, &spectrum.witnesses, verdict),
        EXIT_OK,
    ))
}

fn spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> Result<u8> {
    let g = read_graph(&args.graph)?;
    let opts = SpectrumOptions {
        fallback_oracle: args.fallback_oracle,
    };
    let (cert, code) = certify_graph(&g, args.oracle, opts)?;
    if args.certify && cert.verdict != Verdict::Error {
        if let Err(e) = verify_certificate(&cert, &g) {
            writeln!(out, "certificate failed its own check: {e}")?;
            return Ok(EXIT_VIOLATION);
        }
    }
    let text = serde_json::to_string(&cert)?;
    if let Some(path) = &args.output {
        fs::write(path, format!("{text}\n"))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if args.json {
        writeln!(out, "{text}")?;
    } else {
        describe(&cert, out)?;
    }
    Ok(code)
}

fn describe(cert: &Certificate, out: &mut dyn Write) -> Result<()> {
    let verdict = serde_json::to_value(cert.verdict)?;
    writeln!(out, "verdict: {}", verdict.as_str().unwrap_or("?"))?;
    if let Some(w) = cert.alpha_tilde {
        writeln!(
            out,
            "min degree {}, alpha tilde {} (a = {}, b = {})",
            cert.min_degree, w.k, w.a, w.b
        )?;
    }
    if let Some(e) = &cert.error {
        writeln!(out, "error: {e}")?;
    }
    if !cert.cycles.is_empty() {
        let lens: Vec<String> = cert.lengths().iter().map(ToString::to_string).collect();
        writeln!(out, "lengths: {}", lens.join(" "))?;
        for c in &cert.cycles {
            let vs: Vec<String> = c.cycle.iter().map(ToString::to_string).collect();
            writeln!(out, "  {:>3}: {}", c.length, vs.join(" "))?;
        }
    }
    if let Some(route) = cert.provenance.route {
        let route = serde_json::to_value(route)?;
        let assisted = if cert.provenance.oracle_assisted {
            " (oracle assisted)"
        } else {
            ""
        };
        writeln!(out, "route: {}{assisted}", route.as_str().unwrap_or("?"))?;
    }
    Ok(())
}

fn verify(cert_path: &Path, graph_path: &Path, out: &mut dyn Write) -> Result<u8> {
    let text = fs::read_to_string(cert_path)
        .with_context(|| format!("reading {}", cert_path.display()))?;
    let cert: Certificate = serde_json::from_str(&text)
        .with_context(|| format!("schema mismatch in {}", cert_path.display()))?;
    let g = read_graph(graph_path)?;
    match verify_certificate(&cert, &g) {
        Ok(()) => {
            writeln!(out, "PASS")?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(out, "FAIL: {e}")?;
            Ok(EXIT_FAILURE)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HuntLine {
    pub index: u64,
    pub seed: u64,
    pub graph_hash: String,
    pub n: usize,
    pub m: usize,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lengths: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<tilde_core::engine::Route>,
    pub max_improvements: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Default, Serialize, PartialEq, Eq)]
pub struct HuntSummary {
    pub count: u64,
    pub skipped: u64,
    pub pancyclic: u64,
    pub exceptions: u64,
    pub violations: u64,
    pub oracle_assisted: u64,
    pub max_improvements: usize,
}

struct Instance {
    line: HuntLine,
    graph: Graph,
    cert: Option<Certificate>,
}

fn hunt_one(args: &HuntArgs, index: u64) -> Result<Instance> {
    let seed = instance_seed(args.seed, index);
    let g = generate_gnp(args.n, args.p, seed)?;
    let mut line = HuntLine {
        index,
        seed,
        graph_hash: graph_hash(&g),
        n: g.n(),
        m: g.edge_count(),
        outcome: "skipped",
        lengths: Vec::new(),
        route: None,
        max_improvements: 0,
        error: None,
    };
    let condition = alpha_tilde(&g).is_ok_and(|w| min_degree(&g) >= w.k);
    if !condition {
        return Ok(Instance {
            line,
            graph: g,
            cert: None,
        });
    }
    let opts = SpectrumOptions {
        fallback_oracle: args.fallback_oracle,
    };
    let (outcome, cert) = match full_spectrum(&g, opts) {
        Ok(v) => {
            if let Some(sc) = v.certificate() {
                line.max_improvements = sc.max_improvements();
            }
            (v.label(), Certificate::from_verdict(&g, &v))
        }
        Err(EngineError::TheoremViolation(v)) => {
            ("violation", Certificate::error(&g, v.to_string(), v.trace))
        }
        Err(e @ EngineError::IterationBound { .. }) => (
            "violation",
            Certificate::error(&g, e.to_string(), Vec::new()),
        ),
        Err(e) => return Err(e.into()),
    };
    line.outcome = outcome;
    line.lengths = cert.lengths();
    line.route = cert.provenance.route;
    line.error = cert.error.clone();
    Ok(Instance {
        line,
        graph: g,
        cert: Some(cert),
    })
}

fn hunt(args: &HuntArgs, out: &mut dyn Write) -> Result<u8> {
    if !(0.0..=1.0).contains(&args.p) {
        bail!("p must lie in [0, 1], got {}", args.p);
    }
    if args.n > tilde_core::MAX_VERTICES {
        bail!("n must be at most {}", tilde_core::MAX_VERTICES);
    }
    let mut report = match &args.report {
        Some(path) => Some(std::io::BufWriter::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => None,
    };
    let mut summary = HuntSummary {
        count: args.count,
        ..HuntSummary::default()
    };
    let mut start = 0;
    while start < args.count {
        let end = (start + HUNT_CHUNK as u64).min(args.count);
        let batch: Vec<Result<Instance>> = (start..end)
            .into_par_iter()
            .map(|i| hunt_one(args, i))
            .collect();
        for inst in batch {
            let inst = inst?;
            match inst.line.outcome {
                "skipped" => summary.skipped += 1,
                "pancyclic" => summary.pancyclic += 1,
                "bipartite-exception" => summary.exceptions += 1,
                _ => {
                    summary.violations += 1;
                    dump_violation(&args.dump_dir, &inst)?;
                }
            }
            if inst
                .cert
                .as_ref()
                .is_some_and(|c| c.provenance.oracle_assisted)
            {
                summary.oracle_assisted += 1;
            }
            summary.max_improvements = summary.max_improvements.max(inst.line.max_improvements);
            if let Some(w) = report.as_mut() {
                writeln!(w, "{}", serde_json::to_string(&inst.line)?)?;
            }
        }
        if let Some(w) = report.as_mut() {
            w.flush()?;
        }
        start = end;
    }
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&summary)?)?;
    } else {
        writeln!(
            out,
            "{} graphs: {} skipped, {} pancyclic, {} exceptions, {} violations; max improvements per extension {}",
            summary.count, summary.skipped, summary.pancyclic, summary.exceptions, summary.violations, summary.max_improvements
        )?;
    }
    Ok(if summary.violations > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

fn dump_violation(dir: &Path, inst: &Instance) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let stem = format!("violation-{}", inst.line.index);
    fs::write(
        dir.join(format!("{stem}.txt")),
        serialize_edge_list(&inst.graph),
    )?;
    if let Some(cert) = &inst.cert {
        fs::write(
            dir.join(format!("{stem}.json")),
            serde_json::to_string_pretty(cert)?,
        )?;
    }
    Ok(())
}
