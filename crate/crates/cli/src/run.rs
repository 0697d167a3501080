//! The `solve`, `sweep`, `quadrature` and `nodes` operations.

use crate::config::{validate_alpha, MtRuleArg, RunConfig, SecondOrder};
use crate::error::{CliError, CliResult};
use crate::expr::parse_expression;
use crate::problem::{ProblemSpec, Resolved};
use crate::report::{NodesOutput, Norms, Probe, QuadratureOutput, SolveOutput, SweepOutput, SweepRowOut, TimingsOut};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use telegraph_core::analysis::{coefficient_bound_check, error_norms_with, fit_slope};
use telegraph_core::quadrature::HigherOrder;
use telegraph_core::{NodeSet, OptimalConfig, OptimalSMatrix, SMatrix, SolutionField};

fn solve_field(resolved: &Resolved, cfg: &RunConfig) -> CliResult<SolutionField> {
    Ok(SolutionField::compute(&resolved.problem, cfg.discretization())?)
}

/// Solve one problem and collect the report.
pub fn run_solve(spec: &ProblemSpec, cfg: &RunConfig) -> CliResult<SolveOutput> {
    cfg.validate()?;
    let resolved = spec.resolve()?;
    let field = solve_field(&resolved, cfg)?;
    let norms = resolved
        .exact
        .as_ref()
        .map(|e| Norms::from(&error_norms_with(&**e, &field, cfg.lattice)));
    if norms.is_some_and(|n| !n.big_linf.is_finite()) {
        return Err(CliError::Numeric("solution is not finite".into()));
    }
    let violations = resolved.uxx_bound.map(|b| {
        coefficient_bound_check(&field, cfg.alpha, b)
            .iter()
            .filter(|c| !c.pass)
            .count()
    });
    let probes = cfg
        .probes
        .iter()
        .map(|&[x, t]| {
            let u = field.evaluate(x, t);
            let exact = resolved.exact.as_ref().map(|e| e(x, t));
            Probe {
                x,
                t,
                u,
                exact,
                error: exact.map(|e| (u - e).abs()),
            }
        })
        .collect();
    let t = field.timings;
    Ok(SolveOutput {
        config: cfg.clone(),
        problem_id: spec.id(),
        problem: spec.clone(),
        norms,
        timings: TimingsOut {
            assemble_s: t.assemble_s,
            solve_s: t.solve_s,
            total_s: t.total_s,
        },
        l_plus_1: cfg.discretization().unknowns(),
        alpha_stars: field.discretization().alpha_stars(),
        residual: field.residual,
        coefficient_bound_violations: violations,
        probes,
    })
}

/// What a sweep varies beyond the base configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub ns: Vec<usize>,
    pub mt_rule: MtRuleArg,
    /// Solves per row; the fastest is reported.
    pub repeat: usize,
    /// Rows solved concurrently; 1 keeps timings free of contention.
    pub jobs: usize,
}

fn sweep_row(resolved: &Resolved, base: &RunConfig, n: usize, plan: &SweepPlan) -> SweepRowOut {
    let mut cfg = base.clone();
    cfg.nx = n;
    cfg.nt = n;
    cfg.mt = plan.mt_rule.0.mt(n);
    let l_plus_1 = (n + 1) * (n + 1);
    let failed = |e: String| SweepRowOut {
        n,
        mt: cfg.mt,
        l_plus_1,
        norms: None,
        seconds: None,
        error: Some(e),
    };
    if let Err(e) = cfg.validate() {
        return failed(e.to_string());
    }
    let mut best: Option<(f64, SolutionField)> = None;
    for _ in 0..plan.repeat.max(1) {
        match solve_field(resolved, &cfg) {
            Ok(f) => {
                let s = f.timings.total_s;
                if best.as_ref().is_none_or(|(b, _)| s < *b) {
                    best = Some((s, f));
                }
            }
            Err(e) => return failed(e.to_string()),
        }
    }
    let (seconds, field) = best.expect("at least one repeat");
    SweepRowOut {
        n,
        mt: cfg.mt,
        l_plus_1,
        norms: resolved
            .exact
            .as_ref()
            .map(|e| Norms::from(&error_norms_with(&**e, &field, cfg.lattice))),
        seconds: Some(seconds),
        error: None,
    }
}

/// Solve at `N_x = N_t = N` for each planned `N`; rows keep the plan's order.
pub fn run_sweep(spec: &ProblemSpec, base: &RunConfig, plan: &SweepPlan) -> CliResult<SweepOutput> {
    validate_alpha(base.alpha)?;
    if plan.ns.is_empty() {
        return Err(CliError::Usage("sweep needs at least one N".into()));
    }
    let resolved = spec.resolve()?;
    let rows: Vec<SweepRowOut> = if plan.jobs <= 1 {
        plan.ns.iter().map(|&n| sweep_row(&resolved, base, n, plan)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(plan.jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", plan.jobs)))?;
        pool.install(|| plan.ns.par_iter().map(|&n| sweep_row(&resolved, base, n, plan)).collect())
    };
    if rows.iter().all(|r| r.error.is_some()) {
        let first = rows[0].error.clone().unwrap_or_default();
        return Err(CliError::Numeric(format!("every sweep row failed; first failure: {first}")));
    }
    let ok = || rows.iter().filter(|r| r.error.is_none());
    let (xs, ys): (Vec<f64>, Vec<f64>) = ok()
        .filter_map(|r| r.norms.map(|n| (r.n as f64, n.big_linf.max(f64::MIN_POSITIVE).log10())))
        .unzip();
    let (lx, ly): (Vec<f64>, Vec<f64>) = ok()
        .filter_map(|r| r.seconds.filter(|s| *s > 0.0).map(|s| ((r.l_plus_1 as f64).ln(), s.ln())))
        .unzip();
    Ok(SweepOutput {
        config: base.clone(),
        problem_id: spec.id(),
        problem: spec.clone(),
        ns: plan.ns.clone(),
        mt_rule: plan.mt_rule,
        repeat: plan.repeat.max(1),
        linf_slope: fit_slope(&xs, &ys),
        time_slope: fit_slope(&lx, &ly),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum QuadKind {
    /// Fixed Gauss grid of size `n + 1`.
    #[default]
    S,
    /// Per-row optimized parameter with `m + 1` adjoint nodes.
    Optimal,
}

/// Parameters of the `quadrature` subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRequest {
    pub kind: QuadKind,
    pub alpha: f64,
    pub n: usize,
    pub m: usize,
    pub length: f64,
    /// Upper limits; ignored when `upper_all` is set.
    pub nodes: Vec<f64>,
    /// Integrate up to every Gauss node of `(alpha, n, length)`.
    pub upper_all: bool,
    pub order: usize,
    pub integrand: String,
    /// Expected value as a function of the upper limit `x`.
    pub exact: Option<String>,
    pub second_order: SecondOrder,
}

pub fn run_quadrature(req: &QuadratureRequest) -> CliResult<QuadratureOutput> {
    validate_alpha(req.alpha)?;
    if !(req.length.is_finite() && req.length > 0.0) {
        return Err(CliError::Usage(format!("L must be positive, got {}", req.length)));
    }
    if !(1..=2).contains(&req.order) {
        return Err(CliError::Usage(format!("order must be 1 or 2, got {}", req.order)));
    }
    let f = parse_expression(&req.integrand).map_err(|e| CliError::from_expr("integrand", e))?;
    let exact = req
        .exact
        .as_deref()
        .map(|s| parse_expression(s).map_err(|e| CliError::from_expr("exact", e)))
        .transpose()?;
    let grid = NodeSet::shifted_gauss(req.alpha, req.n, req.length)?;
    let uppers: Vec<f64> = if req.upper_all {
        grid.nodes().to_vec()
    } else if req.nodes.is_empty() {
        return Err(CliError::Usage("give --nodes or --upper-all".into()));
    } else {
        req.nodes.clone()
    };
    if let Some(x) = uppers.iter().find(|&&x| !(0.0..=req.length).contains(&x)) {
        return Err(CliError::Usage(format!("upper limit {x} lies outside [0, {}]", req.length)));
    }
    let kind: HigherOrder = req.second_order.into();
    let integrand = |x: f64| f.eval(x, 0.0);

    let (nodes, weights, alpha_stars, results, rows, degree, alpha) = match req.kind {
        QuadKind::S => {
            let s = SMatrix::from_nodeset(&grid, &uppers, req.order, kind)?;
            let rows = (0..uppers.len()).map(|i| s.entries().row(i).to_vec()).collect();
            (
                grid.nodes().to_vec(),
                grid.weights().to_vec(),
                Vec::new(),
                s.apply_fn(integrand),
                rows,
                req.n,
                Some(req.alpha),
            )
        }
        QuadKind::Optimal => {
            let cfg = OptimalConfig { kind, ..OptimalConfig::default() };
            let p = OptimalSMatrix::build(req.m, req.length, &uppers, req.order, &cfg)?;
            let rows = (0..uppers.len()).map(|i| p.entries().row(i).to_vec()).collect();
            (
                Vec::new(),
                Vec::new(),
                p.alphas(),
                p.apply(integrand),
                rows,
                req.m,
                None,
            )
        }
    };
    let exact_vals: Option<Vec<f64>> = exact.map(|e| uppers.iter().map(|&x| e.eval(x, 0.0)).collect());
    let errors = exact_vals
        .as_ref()
        .map(|ev| ev.iter().zip(&results).map(|(e, r)| (r - e).abs()).collect());
    Ok(QuadratureOutput {
        kind: match req.kind {
            QuadKind::S => "s".into(),
            QuadKind::Optimal => "optimal".into(),
        },
        order: req.order,
        length: req.length,
        degree,
        alpha,
        nodes,
        weights,
        uppers,
        alpha_stars,
        integrand: req.integrand.clone(),
        results,
        exact: exact_vals,
        errors,
        rows,
    })
}

pub fn run_nodes(alpha: f64, n: usize, length: f64) -> CliResult<NodesOutput> {
    validate_alpha(alpha)?;
    let ns = NodeSet::shifted_gauss(alpha, n, length)?;
    Ok(NodesOutput {
        alpha,
        n,
        length,
        nodes: ns.nodes().to_vec(),
        weights: ns.weights().to_vec(),
        standard_nodes: ns.standard_nodes().to_vec(),
    })
}

/// Fields of a `solve` JSON payload needed to run it again.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Replay {
    pub config: RunConfig,
    pub problem: ProblemSpec,
}

pub fn parse_replay(text: &str) -> CliResult<Replay> {
    serde_json::from_str(text).map_err(|e| CliError::parse(format!("replay file: {e}")))
}
