//! Porous-medium specializations: the separable Friendly Giant solution,
//! PME dichotomy classification, and the truncation-gradient probe.

use crate::diagnostics::{classify_field, ClassVerdict};
use crate::eigen::EigenResult;
use crate::error::{Error, Result};
use crate::exact::SeparableSpec;
use crate::field::SpaceTimeField;
use crate::grid::{Cylinder, Grid};
use crate::params::{Equation, MediumParams};

/// Separable PME solution G(x) (t - t0)^{-1/(m-1)}, zero for t <= t0, built
/// on a computed Friendly Giant profile.
#[derive(Debug, Clone)]
pub struct PmeSeparableSpec {
    inner: SeparableSpec,
}

impl PmeSeparableSpec {
    pub fn new(giant: EigenResult, t0: f64) -> Result<Self> {
        if giant.equation != Equation::Pme {
            return Err(Error::Contract(
                "PME separable solution needs a Friendly Giant eigenfunction".into(),
            ));
        }
        Ok(Self { inner: SeparableSpec::new(giant, t0) })
    }

    pub fn eigen(&self) -> &EigenResult {
        &self.inner.eigen
    }

    pub fn t0(&self) -> f64 {
        self.inner.t0
    }

    pub fn eval(&self, x: &[f64], t: f64) -> Result<f64> {
        self.inner.eval(x, t)
    }

    pub fn source(&self, t1: f64, t2: f64) -> Result<impl SpaceTimeField + '_> {
        self.inner.source(t1, t2)
    }
}

pub fn pme_separable_eval(spec: &PmeSeparableSpec, x: &[f64], t: f64) -> Result<f64> {
    spec.eval(x, t)
}

/// Class B / class M verdict for a PME field: the shared classifier with
/// threshold m-1 and minorant weight (t - t0)^{1/(m-1)}.
pub fn pme_classify(
    src: &dyn SpaceTimeField,
    scan: &Grid,
    params: &MediumParams,
) -> Result<ClassVerdict> {
    classify_field(src, scan, params, Equation::Pme)
}

/// Discrete int int |grad min(v^m, j)|^2 over the window, sampled on an
/// nx-by-nt lattice. Unbounded growth in j is the class-M signature; bounded
/// fields saturate once j clears sup(v^m).
pub fn pme_truncation_gradient_check(
    src: &dyn SpaceTimeField,
    m: f64,
    j_level: f64,
    window: &Cylinder,
    nx: usize,
    nt: usize,
) -> Result<f64> {
    if !(j_level > 0.0) {
        return Err(Error::Contract("truncation level must be positive".into()));
    }
    if window.spatial_dim() != 1 {
        return Err(Error::Domain("truncation gradient check expects 1D windows".into()));
    }
    let hx = (window.hi(0) - window.lo(0)) / nx as f64;
    let wt = (window.t2 - window.t1) / nt as f64;
    let mut total = 0.0;
    let mut row = vec![0.0; nx + 1];
    for it in 0..nt {
        let t = window.t1 + (it as f64 + 0.5) * wt;
        for (i, r) in row.iter_mut().enumerate() {
            let x = window.lo(0) + i as f64 * hx;
            let v = src.eval(&[x], t).max(0.0);
            *r = v.powf(m).min(j_level);
        }
        for i in 0..nx {
            let d = (row[i + 1] - row[i]) / hx;
            total += d * d * hx * wt;
        }
    }
    Ok(total)
}
