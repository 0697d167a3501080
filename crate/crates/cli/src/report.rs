//! Result payloads and their table, CSV and JSON renderings.
//!
//! JSON is the round-trippable form: `config` and `problem` read back into the
//! same [`RunConfig`] and [`ProblemSpec`].

use crate::config::{Format, MtRuleArg, RunConfig};
use crate::error::{CliError, CliResult};
use crate::problem::ProblemSpec;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use telegraph_core::ErrorReport;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    #[serde(rename = "Linf")]
    pub big_linf: f64,
    pub rms: f64,
}

impl From<&ErrorReport> for Norms {
    fn from(r: &ErrorReport) -> Self {
        Norms {
            l1: r.l1,
            l2: r.l2,
            linf: r.linf,
            big_linf: r.big_linf,
            rms: r.rms,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimingsOut {
    pub assemble_s: f64,
    pub solve_s: f64,
    pub total_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub x: f64,
    pub t: f64,
    pub u: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutput {
    pub config: RunConfig,
    pub problem_id: String,
    pub problem: ProblemSpec,
    /// `None` when the problem has no exact solution.
    pub norms: Option<Norms>,
    pub timings: TimingsOut,
    #[serde(rename = "L_plus_1")]
    pub l_plus_1: usize,
    pub alpha_stars: Vec<f64>,
    /// Relative residual of the collocation solve.
    pub residual: f64,
    /// Coefficients exceeding their a priori bound, when `‖u_xx‖_∞` is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_bound_violations: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probes: Vec<Probe>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRowOut {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "Mt")]
    pub mt: usize,
    #[serde(rename = "L_plus_1")]
    pub l_plus_1: usize,
    pub norms: Option<Norms>,
    /// Best wall time over the repeats, discretization through solve.
    pub seconds: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub config: RunConfig,
    pub problem_id: String,
    pub problem: ProblemSpec,
    pub ns: Vec<usize>,
    pub mt_rule: MtRuleArg,
    pub repeat: usize,
    pub rows: Vec<SweepRowOut>,
    /// Least-squares slope of `log₁₀ Linf` against `N`.
    pub linf_slope: Option<f64>,
    /// Least-squares slope of `log seconds` against `log(L+1)`.
    pub time_slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOutput {
    pub kind: String,
    pub order: usize,
    pub length: f64,
    /// Interpolation degree (`n` for `s`, `m` for `optimal`).
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Interpolation nodes of the fixed grid; empty for `optimal`.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub uppers: Vec<f64>,
    pub alpha_stars: Vec<f64>,
    pub integrand: String,
    pub results: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errors: Option<Vec<f64>>,
    /// Row `i` holds the weights producing `results[i]`.
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodesOutput {
    pub alpha: f64,
    pub n: usize,
    pub length: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub standard_nodes: Vec<f64>,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payload serializes");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

fn sci(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "-".into())
}

impl SolveOutput {
    pub fn render(&self, format: Format) -> CliResult<String> {
        let n = self.norms;
        match format {
            Format::Json => Ok(json(self)),
            Format::Csv => csv_string(
                &[
                    "problem", "Nx", "Nt", "Mt", "alpha", "L_plus_1", "l1", "l2", "linf", "Linf", "rms", "assemble_s",
                    "solve_s", "total_s",
                ],
                [vec![
                    self.problem_id.clone(),
                    self.config.nx.to_string(),
                    self.config.nt.to_string(),
                    self.config.mt.to_string(),
                    self.config.alpha.to_string(),
                    self.l_plus_1.to_string(),
                    opt(n.map(|n| n.l1)),
                    opt(n.map(|n| n.l2)),
                    opt(n.map(|n| n.linf)),
                    opt(n.map(|n| n.big_linf)),
                    opt(n.map(|n| n.rms)),
                    self.timings.assemble_s.to_string(),
                    self.timings.solve_s.to_string(),
                    self.timings.total_s.to_string(),
                ]],
            ),
            Format::Table => {
                let c = &self.config;
                let mut s = String::new();
                let _ = writeln!(s, "problem   {}", self.problem_id);
                let _ = writeln!(
                    s,
                    "grid      N_x = {}  N_t = {}  M_t = {}  alpha = {}  unknowns = {}",
                    c.nx, c.nt, c.mt, c.alpha, self.l_plus_1
                );
                let _ = writeln!(s, "residual  {:.3e}", self.residual);
                match n {
                    Some(n) => {
                        let _ = writeln!(s, "{:>10} {:>10} {:>10} {:>10} {:>10}", "l1", "l2", "linf", "Linf", "RMS");
                        let _ = writeln!(
                            s,
                            "{:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e}",
                            n.l1, n.l2, n.linf, n.big_linf, n.rms
                        );
                    }
                    None => {
                        let _ = writeln!(s, "no exact solution given; error norms skipped");
                    }
                }
                if let Some(v) = self.coefficient_bound_violations {
                    let _ = writeln!(s, "coefficient bound violations  {v}");
                }
                if !self.probes.is_empty() {
                    let _ = writeln!(s, "{:>8} {:>8} {:>22} {:>10}", "x", "t", "u", "error");
                    for p in &self.probes {
                        let _ = writeln!(s, "{:>8} {:>8} {:>22.15e} {:>10}", p.x, p.t, p.u, sci(p.error));
                    }
                }
                let t = &self.timings;
                let _ = writeln!(
                    s,
                    "time      assemble {:.4}s  solve {:.4}s  total {:.4}s",
                    t.assemble_s, t.solve_s, t.total_s
                );
                Ok(s)
            }
        }
    }
}

impl SweepOutput {
    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => Ok(json(self)),
            Format::Csv => csv_string(
                &["N", "Mt", "L_plus_1", "l1", "l2", "linf", "Linf", "rms", "seconds"],
                self.rows.iter().map(|r| {
                    let n = r.norms;
                    vec![
                        r.n.to_string(),
                        r.mt.to_string(),
                        r.l_plus_1.to_string(),
                        opt(n.map(|n| n.l1)),
                        opt(n.map(|n| n.l2)),
                        opt(n.map(|n| n.linf)),
                        opt(n.map(|n| n.big_linf)),
                        opt(n.map(|n| n.rms)),
                        r.seconds.map(|v| v.to_string()).unwrap_or_default(),
                    ]
                }),
            ),
            Format::Table => {
                let mut s = String::new();
                let _ = writeln!(s, "problem {}  alpha = {}  M_t rule {}", self.problem_id, self.config.alpha, self.mt_rule);
                let _ = writeln!(
                    s,
                    "{:>4} {:>4} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
                    "N", "M_t", "L+1", "l1", "l2", "linf", "Linf", "RMS", "seconds"
                );
                for r in &self.rows {
                    let n = r.norms;
                    let _ = write!(
                        s,
                        "{:>4} {:>4} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
                        r.n,
                        r.mt,
                        r.l_plus_1,
                        sci(n.map(|n| n.l1)),
                        sci(n.map(|n| n.l2)),
                        sci(n.map(|n| n.linf)),
                        sci(n.map(|n| n.big_linf)),
                        sci(n.map(|n| n.rms)),
                        r.seconds.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into()),
                    );
                    if let Some(e) = &r.error {
                        let _ = write!(s, "  failed: {e}");
                    }
                    s.push('\n');
                }
                if let Some(v) = self.linf_slope {
                    let _ = writeln!(s, "slope of log10 Linf vs N: {v:.3}");
                }
                if let Some(v) = self.time_slope {
                    let _ = writeln!(s, "slope of log seconds vs log(L+1): {v:.3}");
                }
                Ok(s)
            }
        }
    }
}

impl QuadratureOutput {
    pub fn render(&self, format: Format) -> CliResult<String> {
        let alpha_of = |i: usize| self.alpha_stars.get(i).copied();
        let exact_of = |i: usize| self.exact.as_ref().map(|e| e[i]);
        let err_of = |i: usize| self.errors.as_ref().map(|e| e[i]);
        match format {
            Format::Json => Ok(json(self)),
            Format::Csv => csv_string(
                &["i", "upper", "result", "exact", "error", "alpha_star"],
                (0..self.uppers.len()).map(|i| {
                    vec![
                        i.to_string(),
                        self.uppers[i].to_string(),
                        self.results[i].to_string(),
                        exact_of(i).map(|v| v.to_string()).unwrap_or_default(),
                        opt(err_of(i)),
                        alpha_of(i).map(|v| v.to_string()).unwrap_or_default(),
                    ]
                }),
            ),
            Format::Table => {
                let mut s = String::new();
                let _ = writeln!(
                    s,
                    "{} quadrature, order {}, degree {}, L = {}{}",
                    self.kind,
                    self.order,
                    self.degree,
                    self.length,
                    self.alpha.map(|a| format!(", alpha = {a}")).unwrap_or_default()
                );
                if !self.nodes.is_empty() {
                    let _ = writeln!(s, "{:>4} {:>22} {:>22}", "k", "node", "weight");
                    for (k, (x, w)) in self.nodes.iter().zip(&self.weights).enumerate() {
                        let _ = writeln!(s, "{k:>4} {x:>22.15e} {w:>22.15e}");
                    }
                }
                let _ = writeln!(s, "integrand {}", self.integrand);
                let _ = writeln!(
                    s,
                    "{:>4} {:>22} {:>22} {:>10} {:>12}",
                    "i", "upper", "result", "error", "alpha*"
                );
                for i in 0..self.uppers.len() {
                    let _ = writeln!(
                        s,
                        "{:>4} {:>22.15e} {:>22.15e} {:>10} {:>12}",
                        i,
                        self.uppers[i],
                        self.results[i],
                        sci(err_of(i)),
                        alpha_of(i).map(|a| format!("{a:.6}")).unwrap_or_else(|| "-".into())
                    );
                }
                Ok(s)
            }
        }
    }
}

impl NodesOutput {
    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => Ok(json(self)),
            Format::Csv => csv_string(
                &["k", "node", "weight", "standard_node"],
                (0..self.nodes.len()).map(|k| {
                    vec![
                        k.to_string(),
                        self.nodes[k].to_string(),
                        self.weights[k].to_string(),
                        self.standard_nodes[k].to_string(),
                    ]
                }),
            ),
            Format::Table => {
                let mut s = String::new();
                let _ = writeln!(s, "Gauss nodes, alpha = {}, n = {}, L = {}", self.alpha, self.n, self.length);
                let _ = writeln!(s, "{:>4} {:>22} {:>22}", "k", "node", "weight");
                for k in 0..self.nodes.len() {
                    let _ = writeln!(s, "{:>4} {:>22.15e} {:>22.15e}", k, self.nodes[k], self.weights[k]);
                }
                Ok(s)
            }
        }
    }
}
