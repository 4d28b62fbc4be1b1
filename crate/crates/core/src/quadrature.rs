//! Quadrature: cell-based integrals of sampled fields over cylinder regions,
//! tensor midpoint rules for closed-form sources, and a double-exponential
//! rule for 1D integrals with endpoint singularities.

use crate::error::{Error, Result};
use crate::field::{ScalarField, SpaceTimeField};
use crate::grid::{Cylinder, Grid, GridKind};

/// Integral of |v|^q over `region` for a sampled field.
///
/// Tensor midpoint rule on grid cells: each cell contributes the value at its
/// center (mean of its corners) weighted by the volume of the cell's overlap
/// with the region. Positive weights keep the result monotone in the region.
pub fn integrate_q_norm(field: &ScalarField, region: &Cylinder, q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::Contract("integrate_q_norm needs q > 0".into()));
    }
    let g = &field.grid;
    if region.spatial_dim() != g.spatial_dim() {
        return Err(Error::Domain("region dimension does not match the grid".into()));
    }
    if g.cylinder().intersect(region).is_none() {
        return Err(Error::Domain("region does not intersect the grid".into()));
    }
    let mut total = 0.0;
    let nt = g.n_slices();
    match g.spatial_dim() {
        1 => {
            let nx = g.counts[0];
            for j in 0..nt.saturating_sub(1) {
                let wt = overlap(g.time(j), g.time(j + 1), region.t1, region.t2);
                if wt == 0.0 {
                    continue;
                }
                for i in 0..nx - 1 {
                    let wx = cell_measure(g, i, region);
                    if wx == 0.0 {
                        continue;
                    }
                    let c = 0.25
                        * (field.get(j, i)
                            + field.get(j, i + 1)
                            + field.get(j + 1, i)
                            + field.get(j + 1, i + 1));
                    total += c.abs().powf(q) * wx * wt;
                }
            }
        }
        2 => {
            let nx = g.counts[0];
            let ny = g.counts[1];
            for j in 0..nt.saturating_sub(1) {
                let wt = overlap(g.time(j), g.time(j + 1), region.t1, region.t2);
                if wt == 0.0 {
                    continue;
                }
                for iy in 0..ny - 1 {
                    let wy = overlap(g.coord(1, iy), g.coord(1, iy + 1), region.lo(1), region.hi(1));
                    if wy == 0.0 {
                        continue;
                    }
                    for ix in 0..nx - 1 {
                        let wx =
                            overlap(g.coord(0, ix), g.coord(0, ix + 1), region.lo(0), region.hi(0));
                        if wx == 0.0 {
                            continue;
                        }
                        let mut c = 0.0;
                        for (dj, dy, dx) in [
                            (0, 0, 0),
                            (0, 0, 1),
                            (0, 1, 0),
                            (0, 1, 1),
                            (1, 0, 0),
                            (1, 0, 1),
                            (1, 1, 0),
                            (1, 1, 1),
                        ] {
                            c += field.get(j + dj, (iy + dy) * nx + ix + dx);
                        }
                        c *= 0.125;
                        total += c.abs().powf(q) * wx * wy * wt;
                    }
                }
            }
        }
        d => return Err(Error::Domain(format!("unsupported spatial dimension {d}"))),
    }
    Ok(total)
}

/// Length of the overlap of [a, b] with [lo, hi].
fn overlap(a: f64, b: f64, lo: f64, hi: f64) -> f64 {
    (b.min(hi) - a.max(lo)).max(0.0)
}

/// Spatial measure of the part of cell i inside the region, honoring the
/// radial volume element sigma_n r^{n-1} dr.
fn cell_measure(g: &Grid, i: usize, region: &Cylinder) -> f64 {
    let lo = g.coord(0, i).max(region.lo(0));
    let hi = g.coord(0, i + 1).min(region.hi(0));
    if !(hi > lo) {
        return 0.0;
    }
    match g.kind {
        GridKind::Radial { dim } => {
            let n = dim as f64;
            sphere_area(dim) * (hi.powf(n) - lo.max(0.0).powf(n)) / n
        }
        _ => hi - lo,
    }
}

/// Surface measure of the unit sphere in dimension n (n = 1 gives 2, the
/// two-sided interval).
pub fn sphere_area(n: u32) -> f64 {
    match n {
        1 => 2.0,
        2 => 2.0 * std::f64::consts::PI,
        3 => 4.0 * std::f64::consts::PI,
        n => {
            let n = n as f64;
            2.0 * std::f64::consts::PI.powf(n / 2.0)
                / statrs::function::gamma::gamma(n / 2.0)
        }
    }
}

/// Tensor midpoint quadrature of `f(x, t)` over a cylinder for closed-form
/// sources: `pts` midpoints per axis.
pub fn integrate_box(src: &dyn SpaceTimeField, region: &Cylinder, pts: usize, f: impl Fn(f64) -> f64) -> f64 {
    let dim = region.spatial_dim();
    let n = pts.max(1);
    let dt = (region.t2 - region.t1) / n as f64;
    let mut total = 0.0;
    let mut x = vec![0.0; dim];
    match dim {
        1 => {
            let dx = (region.hi(0) - region.lo(0)) / n as f64;
            for jt in 0..n {
                let t = region.t1 + (jt as f64 + 0.5) * dt;
                for ix in 0..n {
                    x[0] = region.lo(0) + (ix as f64 + 0.5) * dx;
                    total += f(src.eval(&x, t));
                }
            }
            total * dx * dt
        }
        2 => {
            let dx = (region.hi(0) - region.lo(0)) / n as f64;
            let dy = (region.hi(1) - region.lo(1)) / n as f64;
            for jt in 0..n {
                let t = region.t1 + (jt as f64 + 0.5) * dt;
                for iy in 0..n {
                    x[1] = region.lo(1) + (iy as f64 + 0.5) * dy;
                    for ix in 0..n {
                        x[0] = region.lo(0) + (ix as f64 + 0.5) * dx;
                        total += f(src.eval(&x, t));
                    }
                }
            }
            total * dx * dy * dt
        }
        d => panic!("unsupported spatial dimension {d}"),
    }
}

/// Double-exponential (tanh-sinh) quadrature on [a, b].
///
/// The integrand receives (s, d) where d is the distance from s to the
/// nearest endpoint, computed without cancellation; integrands with endpoint
/// singularities must use d instead of recomputing b - s. Nodes never land
/// exactly on the endpoints. The step refines until the value settles to
/// `tol` (relative).
pub fn tanh_sinh(f: impl Fn(f64, f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let half = 0.5 * (b - a);
    if !(half > 0.0) {
        return Err(Error::Domain("tanh_sinh needs a < b".into()));
    }
    let eval_at = |u: f64| -> (f64, f64, f64) {
        // Node and weight of the transform x = tanh(pi/2 sinh u).
        let z = std::f64::consts::FRAC_PI_2 * u.sinh();
        let w = std::f64::consts::FRAC_PI_2 * u.cosh() / z.cosh().powi(2);
        // Distance of |x| from 1, computed stably: 1 - tanh z = 2e^{-2z}/(1+e^{-2z}).
        let em = (-2.0 * z.abs()).exp();
        let dist = half * (2.0 * em / (1.0 + em));
        let s = if z >= 0.0 { b - dist } else { a + dist };
        (s, dist, w)
    };
    let u_max = 4.0;
    let mut prev = f64::NAN;
    let mut level = 2u32;
    loop {
        let hu = 1.0 / (1 << level) as f64 * 2.0;
        let k_max = (u_max / hu).ceil() as i64;
        let mut sum = 0.0;
        for k in -k_max..=k_max {
            let (s, d, w) = eval_at(k as f64 * hu);
            if w == 0.0 || d == 0.0 {
                continue;
            }
            let v = f(s, d);
            if v.is_finite() {
                sum += w * v;
            }
        }
        let value = sum * hu * half;
        if !value.is_finite() {
            return Err(Error::Numeric("tanh_sinh produced a non-finite value".into()));
        }
        if level >= 5 && (value - prev).abs() <= tol * (1.0 + value.abs()) {
            return Ok(value);
        }
        if level >= 12 {
            return Ok(value);
        }
        prev = value;
        level += 1;
    }
}
