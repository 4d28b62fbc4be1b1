//! Medium parameters and the critical exponents derived from them.

use crate::error::{Error, Result};
use serde::Serialize;

/// Which evolution equation an operation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Equation {
    /// du/dt = div(|grad u|^{p-2} grad u), slow diffusion p > 2.
    PLaplace,
    /// du/dt = Laplace(u^m), slow diffusion m > 1.
    Pme,
}

/// Exponents of the medium: p for the p-Laplace branch, m for the porous
/// medium branch (optional), and the spatial dimension n.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MediumParams {
    p: Option<f64>,
    m: Option<f64>,
    n: u32,
}

impl MediumParams {
    pub fn new(p: Option<f64>, m: Option<f64>, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::Parameter("dimension n must be >= 1".into()));
        }
        if p.is_none() && m.is_none() {
            return Err(Error::Parameter("at least one of p, m must be given".into()));
        }
        if let Some(p) = p {
            if !(p > 2.0) || !p.is_finite() {
                return Err(Error::Parameter(format!(
                    "p-Laplace branch needs p > 2 (got p = {p})"
                )));
            }
        }
        if let Some(m) = m {
            if !(m > 1.0) || !m.is_finite() {
                return Err(Error::Parameter(format!("PME branch needs m > 1 (got m = {m})")));
            }
        }
        Ok(Self { p, m, n })
    }

    pub fn p_laplace(p: f64, n: u32) -> Result<Self> {
        Self::new(Some(p), None, n)
    }

    pub fn pme(m: f64, n: u32) -> Result<Self> {
        Self::new(None, Some(m), n)
    }

    pub fn p(&self) -> Result<f64> {
        self.p
            .ok_or_else(|| Error::Parameter("p not set on this medium".into()))
    }

    pub fn m(&self) -> Result<f64> {
        self.m
            .ok_or_else(|| Error::Parameter("m not set on this medium".into()))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The diffusion exponent for `eq`: p or m.
    pub fn exponent(&self, eq: Equation) -> Result<f64> {
        match eq {
            Equation::PLaplace => self.p(),
            Equation::Pme => self.m(),
        }
    }
}

/// Critical exponents for one equation branch.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExponentSet {
    /// Intrinsic space-time scaling exponent: the self-similar source
    /// solution spreads as t^{1/lambda}. n(p-2)+p for p-Laplace,
    /// n(m-1)+2 for PME.
    pub lambda: f64,
    /// Local summability fails at and above this exponent for the source
    /// solution: p-1+p/n, resp. m+2/n.
    pub q_crit: f64,
    /// Gradient summability threshold: p-1+1/(n+1), resp. 1+1/(1+nm)
    /// (the PME threshold applies to grad(v^m)).
    pub qgrad_crit: f64,
    /// The dichotomy threshold: p-2, resp. m-1.
    pub class_threshold: f64,
}

/// Derived constants for whichever branches the parameters carry.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DerivedConstants {
    pub p_laplace: Option<ExponentSet>,
    pub pme: Option<ExponentSet>,
}

impl DerivedConstants {
    pub fn branch(&self, eq: Equation) -> Result<&ExponentSet> {
        let set = match eq {
            Equation::PLaplace => self.p_laplace.as_ref(),
            Equation::Pme => self.pme.as_ref(),
        };
        set.ok_or_else(|| Error::Parameter("requested branch has no parameters".into()))
    }
}

/// Compute every derived constant available from `params`.
pub fn derived_constants(params: &MediumParams) -> DerivedConstants {
    let n = params.n() as f64;
    let p_laplace = params.p().ok().map(|p| {
        let set = ExponentSet {
            lambda: n * (p - 2.0) + p,
            q_crit: p - 1.0 + p / n,
            qgrad_crit: p - 1.0 + 1.0 / (n + 1.0),
            class_threshold: p - 2.0,
        };
        debug_assert!(set.class_threshold < set.q_crit);
        set
    });
    let pme = params.m().ok().map(|m| {
        let set = ExponentSet {
            lambda: n * (m - 1.0) + 2.0,
            q_crit: m + 2.0 / n,
            qgrad_crit: 1.0 + 1.0 / (1.0 + n * m),
            class_threshold: m - 1.0,
        };
        debug_assert!(set.class_threshold < set.q_crit);
        set
    });
    DerivedConstants { p_laplace, pme }
}
