//! Run settings shared by the subcommands.

use crate::error::{CliError, CliResult};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use telegraph_core::analysis::{MtRule, DEFAULT_LATTICE};
use telegraph_core::quadrature::HigherOrder;
use telegraph_core::DiscretizationConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// How second-order integration matrices are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SecondOrder {
    #[default]
    Hadamard,
    Cauchy,
}

impl From<SecondOrder> for HigherOrder {
    fn from(s: SecondOrder) -> Self {
        match s {
            SecondOrder::Hadamard => HigherOrder::Hadamard,
            SecondOrder::Cauchy => HigherOrder::Cauchy,
        }
    }
}

/// Everything that determines one solve, plus where its output goes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub nx: usize,
    pub nt: usize,
    pub mt: usize,
    pub alpha: f64,
    #[serde(default)]
    pub second_order: SecondOrder,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default = "default_lattice")]
    pub lattice: usize,
    /// Extra `(x, t)` points at which to report the pointwise error.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probes: Vec<[f64; 2]>,
}

fn default_lattice() -> usize {
    DEFAULT_LATTICE
}

impl RunConfig {
    /// `N_x = N_t = M_t = n` at `α = 0`.
    pub fn square(n: usize) -> Self {
        Self {
            nx: n,
            nt: n,
            mt: n,
            alpha: 0.0,
            second_order: SecondOrder::default(),
            format: Format::default(),
            out: None,
            lattice: DEFAULT_LATTICE,
            probes: Vec::new(),
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        validate_alpha(self.alpha)?;
        if self.nx < 1 || self.nt < 1 || self.mt < 1 {
            return Err(CliError::Usage(format!(
                "grid sizes must be at least 1, got nx={} nt={} mt={}",
                self.nx, self.nt, self.mt
            )));
        }
        if self.lattice < 2 {
            return Err(CliError::Usage(format!("lattice must be at least 2, got {}", self.lattice)));
        }
        if self.probes.iter().flatten().any(|v| !v.is_finite()) {
            return Err(CliError::Usage("probe coordinates must be finite".into()));
        }
        Ok(())
    }

    pub fn discretization(&self) -> DiscretizationConfig {
        DiscretizationConfig::new(self.nx, self.nt, self.mt)
            .with_alpha(self.alpha)
            .with_kind(self.second_order.into())
    }
}

/// Range error for `α ≤ −1/2` or non-finite values.
pub fn validate_alpha(alpha: f64) -> CliResult<()> {
    if alpha.is_finite() && alpha > -0.5 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("range error: alpha must satisfy alpha > -0.5, got {alpha}")))
    }
}

/// `same`, `fixed:K` or `cap:K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MtRuleArg(pub MtRule);

impl FromStr for MtRuleArg {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Usage(format!("invalid M_t rule `{s}`; expected same, fixed:K or cap:K"));
        let s = s.trim();
        if s == "same" {
            return Ok(MtRuleArg(MtRule::SameAsN));
        }
        let (kind, k) = s.split_once(':').ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        match kind.trim() {
            "fixed" => Ok(MtRuleArg(MtRule::Fixed(k))),
            "cap" => Ok(MtRuleArg(MtRule::Capped(k))),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for MtRuleArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            MtRule::SameAsN => f.write_str("same"),
            MtRule::Fixed(k) => write!(f, "fixed:{k}"),
            MtRule::Capped(k) => write!(f, "cap:{k}"),
        }
    }
}

impl Serialize for MtRuleArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MtRuleArg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Comma list of sizes; items may be ranges `a..b` or `a..b:step`, both ends inclusive.
pub fn parse_size_list(s: &str) -> CliResult<Vec<usize>> {
    let bad = |item: &str| CliError::Usage(format!("invalid size list item `{item}`"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        if let Some((a, rest)) = item.split_once("..") {
            let (b, step) = match rest.split_once(':') {
                Some((b, st)) => (b, st.trim().parse::<usize>().map_err(|_| bad(item))?),
                None => (rest, 1),
            };
            let a: usize = a.trim().parse().map_err(|_| bad(item))?;
            let b: usize = b.trim().parse().map_err(|_| bad(item))?;
            if step == 0 || b < a {
                return Err(bad(item));
            }
            out.extend((a..=b).step_by(step));
        } else {
            out.push(item.parse().map_err(|_| bad(item))?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("size list is empty".into()));
    }
    Ok(out)
}

/// Comma list of reals.
pub fn parse_real_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|i| !i.is_empty())
        .map(|i| {
            i.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("invalid number `{i}`")))
        })
        .collect()
}
