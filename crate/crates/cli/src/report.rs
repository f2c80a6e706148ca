//! Executing prepared queries and rendering the results.
//!
//! Every value in a report is exact text in the field grammar and norms are
//! printed as exponents, so two runs of the same scenario and seed produce
//! byte-identical output.

use std::fmt::Write as _;

use nacalc::measure::{integrate, measure_of, riemann_sum, CFunc, Clopen};
use nacalc::spectral::{gelfand_eval, resolvent, spectral_norm, vandermonde_projection, PointRef, Spectrum};
use nacalc::verify::{run_suite, Execution, SuiteConfig, SuiteReport};
use nacalc::{Error, NormExp, OpRepr, OpSY};
use serde::Serialize;

use crate::scenario::{Prepared, Task};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub operator: OperatorOut,
    pub results: Vec<QueryResult>,
}

impl Report {
    /// True iff every verify query passed.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| match &r.result {
            Some(Outcome::Verify(v)) => v.passed,
            _ => true,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorOut {
    #[serde(flatten)]
    pub op: OpRepr,
    pub rank: usize,
    pub norm: String,
}

impl OperatorOut {
    fn of(op: &OpSY) -> Self {
        OperatorOut {
            op: OpRepr::from(op),
            rank: op.rank(),
            norm: op.norm().to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QueryResult {
    pub index: usize,
    pub kind: &'static str,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorOut {
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for ErrorOut {
    fn from(e: Error) -> Self {
        ErrorOut {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Spectrum(SpectrumOut),
    Operator(OperatorOut),
    Riemann(RiemannOut),
    Verify(VerifyOut),
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumOut {
    pub points: Vec<PointOut>,
    pub gelfand: Vec<GelfandOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointOut {
    pub id: String,
    pub value: String,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GelfandOut {
    pub operator: OpRepr,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral_norm: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RiemannOut {
    pub sum: OperatorOut,
    pub integral: OperatorOut,
    /// Norm exponent of `sum − integral`.
    pub error: String,
    /// Largest oscillation of `f` over a cell, as a norm exponent.
    pub oscillation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOut {
    pub suite: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: usize,
    pub passed: bool,
    pub invariants: Vec<InvariantOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantOut {
    pub name: String,
    pub checks: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub detail: String,
}

impl VerifyOut {
    pub fn from_report(r: &SuiteReport) -> Self {
        let mut invariants: Vec<InvariantOut> = r
            .invariants
            .iter()
            .map(|(name, &checks)| {
                let first = r.failures_of(name).min_by_key(|f| f.trial);
                InvariantOut {
                    name: name.clone(),
                    checks,
                    passed: first.is_none(),
                    counterexample: first.map(|f| Counterexample {
                        trial: f.trial,
                        detail: f.detail.clone(),
                    }),
                }
            })
            .collect();
        invariants.sort_by(|a, b| a.name.cmp(&b.name));
        VerifyOut {
            suite: r.suite.name().to_string(),
            n: r.config.rank,
            trials: r.config.trials,
            seed: r.config.seed,
            checks: r.checks,
            passed: r.passed(),
            invariants,
        }
    }
}

pub fn run_verify(suite: nacalc::verify::Suite, config: &SuiteConfig) -> VerifyOut {
    VerifyOut::from_report(&run_suite(suite, config, Execution::default()))
}

pub fn execute(prepared: &Prepared, seed: u64) -> Report {
    let t = &prepared.operator;
    let results = prepared
        .tasks
        .iter()
        .enumerate()
        .map(|(i, task)| {
            let (result, error) = match run_task(task, t, seed) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(ErrorOut::from(e))),
            };
            QueryResult {
                index: i + 1,
                kind: task.kind(),
                input: describe(task),
                result,
                error,
            }
        })
        .collect();
    Report {
        seed,
        operator: OperatorOut::of(t),
        results,
    }
}

fn clopen_text(c: &Clopen) -> String {
    let ids: Vec<String> = c.refs().map(|p| p.to_string()).collect();
    format!("{{{}}}", ids.join(", "))
}

fn describe(task: &Task) -> String {
    match task {
        Task::Spectrum { gelfand } => format!("{} operator(s)", gelfand.len()),
        Task::Resolvent { z } => format!("z = {z}"),
        Task::Project { k } => format!("k = {k}"),
        Task::Measure { clopen } => format!("C = {}", clopen_text(clopen)),
        Task::Integrate { text, clopen, .. } => format!("f = {text}; C = {}", clopen_text(clopen)),
        Task::Riemann { text, partition, .. } => {
            let cells: Vec<String> = partition
                .cells
                .iter()
                .map(|c| format!("{} @ {}", clopen_text(&c.cell), c.tag))
                .collect();
            format!("f = {text}; cells = [{}]", cells.join(", "))
        }
        Task::Verify { suite, n, trials, .. } => format!("suite = {suite}; n = {n}; trials = {trials}"),
    }
}

fn run_task(task: &Task, t: &OpSY, seed: u64) -> Result<Outcome, Error> {
    Ok(match task {
        Task::Spectrum { gelfand } => {
            let sigma = Spectrum::of(t)?;
            Outcome::Spectrum(SpectrumOut {
                points: sigma
                    .refs()
                    .map(|p| PointOut {
                        id: p.to_string(),
                        value: sigma.value(p).to_string(),
                        indices: match p {
                            PointRef::Zero => sigma.zero_indices().iter().copied().collect(),
                            PointRef::Point(k) => sigma.point(k).indices.iter().copied().collect(),
                        },
                    })
                    .collect(),
                gelfand: gelfand.iter().map(|h| gelfand_row(h, &sigma)).collect(),
            })
        }
        Task::Resolvent { z } => Outcome::Operator(OperatorOut::of(&resolvent(t, z)?)),
        Task::Project { k } => {
            let sigma = Spectrum::of(t)?;
            let p = match sigma.check(*k)? {
                PointRef::Zero => sigma.point_projection(t.system(), PointRef::Zero),
                PointRef::Point(k) => vandermonde_projection(t, k)?,
            };
            Outcome::Operator(OperatorOut::of(&p))
        }
        Task::Measure { clopen } => Outcome::Operator(OperatorOut::of(&measure_of(clopen, t)?)),
        Task::Integrate { f, clopen, .. } => {
            let sigma = Spectrum::of(t)?;
            let f = f.resolve(&sigma)?;
            Outcome::Operator(OperatorOut::of(&integrate(&f, clopen, t)?))
        }
        Task::Riemann { f, partition, .. } => {
            let sigma = Spectrum::of(t)?;
            let f: CFunc = f.resolve(&sigma)?;
            let cover = partition.validate(&sigma)?;
            let sum = riemann_sum(&f, partition, t)?;
            let integral = integrate(&f, &cover, t)?;
            let oscillation = NormExp::sup(partition.cells.iter().map(|c| f.oscillation(&c.cell)));
            Outcome::Riemann(RiemannOut {
                error: sum.sub(&integral)?.norm().to_string(),
                sum: OperatorOut::of(&sum),
                integral: OperatorOut::of(&integral),
                oscillation: oscillation.to_string(),
            })
        }
        Task::Verify {
            suite,
            n,
            trials,
            seed: own,
        } => Outcome::Verify(run_verify(
            *suite,
            &SuiteConfig {
                rank: *n,
                trials: *trials,
                seed: own.unwrap_or(seed),
            },
        )),
    })
}

fn gelfand_row(h: &OpSY, sigma: &Spectrum) -> GelfandOut {
    let values: Result<Vec<(String, String)>, Error> = sigma
        .refs()
        .map(|p| gelfand_eval(h, sigma, p).map(|v| (p.to_string(), v.to_string())))
        .collect();
    match values {
        Ok(values) => GelfandOut {
            operator: OpRepr::from(h),
            spectral_norm: spectral_norm(h, sigma).ok().map(|n| n.to_string()),
            values,
            error: None,
        },
        Err(e) => GelfandOut {
            operator: OpRepr::from(h),
            spectral_norm: None,
            values: Vec::new(),
            error: Some(e.into()),
        },
    }
}

pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report is serialisable");
    s.push('\n');
    s
}

fn op_lines(out: &mut String, indent: &str, op: &OperatorOut) {
    let lambda: Vec<String> = op.op.lambda.iter().map(|l| l.to_string()).collect();
    let _ = writeln!(out, "{indent}alpha  = {}", op.op.alpha);
    let _ = writeln!(out, "{indent}lambda = [{}]", lambda.join(", "));
    let _ = writeln!(out, "{indent}norm   = {}", op.norm);
}

pub fn render_verify_text(out: &mut String, indent: &str, v: &VerifyOut) {
    let _ = writeln!(
        out,
        "{indent}suite {} (n = {}, trials = {}, seed = {})",
        v.suite, v.n, v.trials, v.seed
    );
    for inv in &v.invariants {
        let status = if inv.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{indent}  {status} {} ({} checks)", inv.name, inv.checks);
        if let Some(c) = &inv.counterexample {
            let _ = writeln!(out, "{indent}       trial {}: {}", c.trial, c.detail);
        }
    }
    let status = if v.passed { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{indent}{status}: {} checks", v.checks);
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "operator (rank {})", report.operator.rank);
    op_lines(&mut out, "  ", &report.operator);
    let _ = writeln!(out, "seed {}", report.seed);
    for r in &report.results {
        let _ = writeln!(out);
        let _ = writeln!(out, "[{}] {}: {}", r.index, r.kind, r.input);
        if let Some(e) = &r.error {
            let _ = writeln!(out, "  error {}: {}", e.kind, e.message);
            continue;
        }
        match r.result.as_ref().expect("result or error") {
            Outcome::Spectrum(s) => {
                for p in &s.points {
                    let idx: Vec<String> = p.indices.iter().map(|i| i.to_string()).collect();
                    let _ = writeln!(out, "  {:<4} {}  indices {{{}}}", p.id, p.value, idx.join(", "));
                }
                for (i, g) in s.gelfand.iter().enumerate() {
                    let lambda: Vec<String> = g.operator.lambda.iter().map(|l| l.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "  H{} = alpha {}, lambda [{}]",
                        i + 1,
                        g.operator.alpha,
                        lambda.join(", ")
                    );
                    if let Some(e) = &g.error {
                        let _ = writeln!(out, "    error {}: {}", e.kind, e.message);
                        continue;
                    }
                    if let Some(n) = &g.spectral_norm {
                        let _ = writeln!(out, "    spectral norm {n}");
                    }
                    for (id, v) in &g.values {
                        let _ = writeln!(out, "    {id:<4} {v}");
                    }
                }
            }
            Outcome::Operator(op) => op_lines(&mut out, "  ", op),
            Outcome::Riemann(rs) => {
                let _ = writeln!(out, "  sum");
                op_lines(&mut out, "    ", &rs.sum);
                let _ = writeln!(out, "  integral");
                op_lines(&mut out, "    ", &rs.integral);
                let _ = writeln!(out, "  error norm {}", rs.error);
                let _ = writeln!(out, "  oscillation {}", rs.oscillation);
            }
            Outcome::Verify(v) => render_verify_text(&mut out, "  ", v),
        }
    }
    out
}
