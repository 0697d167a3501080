//! Problem specifications: the built-in registry and custom problems.
//!
//! A problem file is plain `key = value` text, one pair per line. Blank lines
//! and anything after `#` are ignored. Either name a registry entry
//!
//! ```text
//! example = 3
//! ```
//!
//! or give a custom problem:
//!
//! ```text
//! beta1 = 12          # required, real
//! beta2 = 4           # required, real
//! l = 1               # optional, default 1
//! tau = 1             # optional, default 1
//! f  = 4*(cos(t) - 3*sin(t))*sin(x)
//! g1 = sin(x)         # u(x, 0), evaluated with t = 0
//! g2 = 0              # u_t(x, 0), evaluated with t = 0
//! h1 = 0              # u(0, t), evaluated with x = 0
//! h2 = sin(1)*cos(t)  # u(l, t), evaluated with x = l
//! exact = sin(x)*cos(t)   # optional, enables error norms
//! uxx_bound = 0.8415      # optional, enables the coefficient bound check
//! ```
//!
//! `f`, `g1`, `g2`, `h1` and `h2` are required for custom problems.

use crate::error::{CliError, CliResult};
use crate::expr::{parse_expression, Expr};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use telegraph_core::telegraph::{Fn2, TelegraphProblem};

/// Registry entry or custom problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum ProblemSpec {
    Registry { id: usize },
    Custom(CustomProblem),
}

/// Problem data with function fields as expression strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomProblem {
    pub beta1: f64,
    pub beta2: f64,
    pub l: f64,
    pub tau: f64,
    pub f: String,
    pub g1: String,
    pub g2: String,
    pub h1: String,
    pub h2: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uxx_bound: Option<f64>,
}

/// Identifiers accepted by `--example`.
pub const REGISTRY_IDS: [usize; 4] = [1, 2, 3, 4];

/// The built-in problem `id` spelled out as a custom problem.
pub fn registry_entry(id: usize) -> Option<CustomProblem> {
    let s = |v: &str| v.to_string();
    let p = match id {
        1 => CustomProblem {
            beta1: 1.0,
            beta2: 1.0,
            l: 1.0,
            tau: 1.0,
            f: s("x^2 + t - 1"),
            g1: s("x^2"),
            g2: s("1"),
            h1: s("t"),
            h2: s("1 + t"),
            exact: Some(s("x^2 + t")),
            uxx_bound: Some(2.0),
        },
        2 => CustomProblem {
            beta1: 10.0,
            beta2: 24.0,
            l: 1.0,
            tau: 1.0,
            f: s("4*exp(2*t)*x^2*(x-1)^2*(12*x^4 - 24*x^3 - 2*x^2 + 14*x - 3)"),
            g1: s("(x*(x-1))^4"),
            g2: s("2*(x*(x-1))^4"),
            h1: s("0"),
            h2: s("0"),
            exact: Some(s("(x*(x-1))^4*exp(2*t)")),
            uxx_bound: Some(0.125 * 2f64.exp()),
        },
        3 => CustomProblem {
            beta1: 12.0,
            beta2: 4.0,
            l: 1.0,
            tau: 1.0,
            f: s("4*(cos(t) - 3*sin(t))*sin(x)"),
            g1: s("sin(x)"),
            g2: s("0"),
            h1: s("0"),
            h2: s("sin(1)*cos(t)"),
            exact: Some(s("sin(x)*cos(t)")),
            uxx_bound: Some(1f64.sin()),
        },
        4 => CustomProblem {
            beta1: 20.0,
            beta2: 25.0,
            l: 1.0,
            tau: 1.0,
            f: s("-12*exp(-2*t)*sinh(x)"),
            g1: s("sinh(x)"),
            g2: s("-2*sinh(x)"),
            h1: s("0"),
            h2: s("exp(-2*t)*sinh(1)"),
            exact: Some(s("exp(-2*t)*sinh(x)")),
            uxx_bound: Some(1f64.sinh()),
        },
        _ => return None,
    };
    Some(p)
}

/// A spec turned into something the solver can run.
#[derive(Clone)]
pub struct Resolved {
    pub problem: TelegraphProblem,
    pub exact: Option<Fn2>,
    pub uxx_bound: Option<f64>,
}

impl ProblemSpec {
    pub fn id(&self) -> String {
        match self {
            ProblemSpec::Registry { id } => format!("example{id}"),
            ProblemSpec::Custom(_) => "custom".into(),
        }
    }

    /// The custom-problem form, expanding registry ids.
    pub fn data(&self) -> CliResult<CustomProblem> {
        match self {
            ProblemSpec::Registry { id } => registry_entry(*id)
                .ok_or_else(|| CliError::Usage(format!("unknown example {id}; expected one of 1, 2, 3, 4"))),
            ProblemSpec::Custom(c) => Ok(c.clone()),
        }
    }

    pub fn resolve(&self) -> CliResult<Resolved> {
        self.data()?.resolve()
    }
}

fn compile(field: &str, src: &str) -> CliResult<Expr> {
    parse_expression(src).map_err(|e| CliError::from_expr(field, e))
}

impl CustomProblem {
    pub fn resolve(&self) -> CliResult<Resolved> {
        let f = compile("f", &self.f)?;
        let g1 = compile("g1", &self.g1)?;
        let g2 = compile("g2", &self.g2)?;
        let h1 = compile("h1", &self.h1)?;
        let h2 = compile("h2", &self.h2)?;
        let exact = self.exact.as_deref().map(|s| compile("exact", s)).transpose()?;
        let l = self.l;
        let problem = TelegraphProblem::new(self.beta1, self.beta2, self.l, self.tau)
            .map_err(|e| CliError::Usage(e.to_string()))?
            .with_source(move |x, t| f.eval(x, t))
            .with_initial(move |x| g1.eval(x, 0.0), move |x| g2.eval(x, 0.0))
            .with_boundary(move |t| h1.eval(0.0, t), move |t| h2.eval(l, t));
        if let Some(b) = self.uxx_bound {
            if !(b.is_finite() && b >= 0.0) {
                return Err(CliError::Usage(format!("uxx_bound must be finite and non-negative, got {b}")));
            }
        }
        Ok(Resolved {
            problem,
            exact: exact.map(|e| -> Fn2 { Arc::new(move |x, t| e.eval(x, t)) }),
            uxx_bound: self.uxx_bound,
        })
    }
}

/// Parse the key-value problem format described in the module docs.
pub fn parse_problem_file(text: &str) -> CliResult<ProblemSpec> {
    let mut pairs: Vec<(usize, String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::parse(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = k.trim().to_ascii_lowercase();
        let value = v.trim().to_string();
        if value.is_empty() {
            return Err(CliError::parse(format!("line {}: empty value for `{key}`", lineno + 1)));
        }
        if pairs.iter().any(|(_, k2, _)| *k2 == key) {
            return Err(CliError::parse(format!("line {}: duplicate key `{key}`", lineno + 1)));
        }
        pairs.push((lineno + 1, key, value));
    }
    let get = |key: &str| pairs.iter().find(|(_, k, _)| k == key);
    let number = |key: &str| -> CliResult<Option<f64>> {
        get(key)
            .map(|(line, _, v)| {
                v.parse::<f64>()
                    .map_err(|_| CliError::parse(format!("line {line}: `{key}` must be a number, got `{v}`")))
            })
            .transpose()
    };

    if let Some((line, _, v)) = get("example") {
        if pairs.len() > 1 {
            return Err(CliError::parse(format!("line {line}: `example` cannot be combined with other keys")));
        }
        let id: usize = v
            .parse()
            .map_err(|_| CliError::parse(format!("line {line}: `example` must be an integer, got `{v}`")))?;
        if !REGISTRY_IDS.contains(&id) {
            return Err(CliError::Usage(format!("unknown example {id}; expected one of 1, 2, 3, 4")));
        }
        return Ok(ProblemSpec::Registry { id });
    }

    const KNOWN: [&str; 11] = ["beta1", "beta2", "l", "tau", "f", "g1", "g2", "h1", "h2", "exact", "uxx_bound"];
    if let Some((line, k, _)) = pairs.iter().find(|(_, k, _)| !KNOWN.contains(&k.as_str())) {
        return Err(CliError::parse(format!("line {line}: unknown key `{k}`")));
    }
    let required_num = |key: &str| -> CliResult<f64> {
        number(key)?.ok_or_else(|| CliError::parse(format!("missing required key `{key}`")))
    };
    let required_expr = |key: &str| -> CliResult<String> {
        let (_, _, v) = get(key).ok_or_else(|| CliError::parse(format!("missing required key `{key}`")))?;
        compile(key, v)?;
        Ok(v.clone())
    };
    let exact = match get("exact") {
        Some((_, _, v)) => {
            compile("exact", v)?;
            Some(v.clone())
        }
        None => None,
    };
    Ok(ProblemSpec::Custom(CustomProblem {
        beta1: required_num("beta1")?,
        beta2: required_num("beta2")?,
        l: number("l")?.unwrap_or(1.0),
        tau: number("tau")?.unwrap_or(1.0),
        f: required_expr("f")?,
        g1: required_expr("g1")?,
        g2: required_expr("g2")?,
        h1: required_expr("h1")?,
        h2: required_expr("h2")?,
        exact,
        uxx_bound: number("uxx_bound")?,
    }))
}

/// Render a spec back into the file format.
pub fn to_problem_file(spec: &ProblemSpec) -> String {
    match spec {
        ProblemSpec::Registry { id } => format!("example = {id}\n"),
        ProblemSpec::Custom(c) => {
            let mut s = format!(
                "beta1 = {}\nbeta2 = {}\nl = {}\ntau = {}\nf = {}\ng1 = {}\ng2 = {}\nh1 = {}\nh2 = {}\n",
                c.beta1, c.beta2, c.l, c.tau, c.f, c.g1, c.g2, c.h1, c.h2
            );
            if let Some(e) = &c.exact {
                s.push_str(&format!("exact = {e}\n"));
            }
            if let Some(b) = c.uxx_bound {
                s.push_str(&format!("uxx_bound = {b}\n"));
            }
            s
        }
    }
}
