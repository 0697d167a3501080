use crate::error::{Error, Result};
use crate::gegenbauer::NodeSet;
use crate::linalg::Matrix;
use crate::quadrature::{HigherOrder, OptimalConfig, OptimalSMatrix, SMatrix};

/// Grid sizes and the collocation parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscretizationConfig {
    pub nx: usize,
    pub nt: usize,
    /// Interpolation degree of the optimal time quadratures.
    pub mt: usize,
    /// Gegenbauer parameter of the collocation grid (0 gives Chebyshev-Gauss).
    pub alpha: f64,
    /// How second-order matrices are formed.
    pub kind: HigherOrder,
    pub optimal: OptimalConfig,
}

impl DiscretizationConfig {
    /// `N_x = N_t = M_t = n` at the Chebyshev-Gauss grid.
    pub fn square(n: usize) -> Self {
        Self::new(n, n, n)
    }

    pub fn new(nx: usize, nt: usize, mt: usize) -> Self {
        Self {
            nx,
            nt,
            mt,
            alpha: 0.0,
            kind: HigherOrder::default(),
            optimal: OptimalConfig::default(),
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_kind(mut self, kind: HigherOrder) -> Self {
        self.kind = kind;
        self.optimal.kind = kind;
        self
    }

    /// Number of unknowns, `L + 1`.
    pub fn unknowns(&self) -> usize {
        (self.nx + 1) * (self.nt + 1)
    }
}

/// Nodes and integration matrices shared by assembly and reconstruction.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub config: DiscretizationConfig,
    pub l: f64,
    pub tau: f64,
    pub nodes_x: NodeSet,
    pub nodes_t: NodeSet,
    /// Second-order x matrix with an extra last row integrating up to `l`.
    pub p2x: SMatrix,
    pub p1t: SMatrix,
    pub p2t: SMatrix,
    pub opt1: OptimalSMatrix,
    pub opt2: OptimalSMatrix,
    /// Discrete `J`: `jx[i][s] = p2x[i][s] − θ_i p2x[N_x+1][s]`.
    pub jx: Matrix,
}

impl Discretization {
    pub fn new(l: f64, tau: f64, config: DiscretizationConfig) -> Result<Self> {
        if config.nx == 0 || config.nt == 0 || config.mt == 0 {
            return Err(Error::InvalidArgument(
                "N_x, N_t and M_t must all be at least 1".into(),
            ));
        }
        let nodes_x = NodeSet::shifted_gauss(config.alpha, config.nx, l)?;
        let nodes_t = NodeSet::shifted_gauss(config.alpha, config.nt, tau)?;

        let mut uppers = nodes_x.nodes().to_vec();
        uppers.push(l);
        let p2x = SMatrix::from_nodeset(&nodes_x, &uppers, 2, config.kind)?;
        let p1t = SMatrix::from_nodeset(&nodes_t, nodes_t.nodes(), 1, config.kind)?;
        let p2t = SMatrix::from_nodeset(&nodes_t, nodes_t.nodes(), 2, config.kind)?;

        let mut opt = config.optimal;
        opt.kind = config.kind;
        let (opt1, opt2) = OptimalSMatrix::build_pair(config.mt, tau, nodes_t.nodes(), &opt)?;

        let nx = config.nx;
        let jx = Matrix::from_fn(nx + 1, nx + 1, |i, s| {
            let theta = nodes_x.nodes()[i] / l;
            p2x.get(i, s) - theta * p2x.get(nx + 1, s)
        });
        Ok(Self {
            config,
            l,
            tau,
            nodes_x,
            nodes_t,
            p2x,
            p1t,
            p2t,
            opt1,
            opt2,
            jx,
        })
    }

    pub fn nx(&self) -> usize {
        self.config.nx
    }

    pub fn nt(&self) -> usize {
        self.config.nt
    }

    pub fn mt(&self) -> usize {
        self.config.mt
    }

    pub fn alpha_stars(&self) -> Vec<f64> {
        self.opt1.alphas()
    }
}
