//! Space-time infimal convolution of sampled fields:
//! v_eps(x, t) = inf over (y, tau) of v(y, tau) + (|x-y|^2 + |t-tau|^2)/(2 eps),
//! the infimum running over the declared domain only.
//!
//! Both paths compute the exact discrete infimum over the sample set. The
//! accelerated path exploits the separable quadratic kernel with one
//! lower-envelope (distance-transform) sweep per axis; every candidate value
//! is evaluated with the same floating-point expression as the brute-force
//! path, so the two outputs must agree bitwise.

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::grid::Cylinder;

#[derive(Debug, Clone)]
pub struct InfConvSpec {
    pub epsilon: f64,
    pub domain: Cylinder,
}

impl InfConvSpec {
    pub fn new(epsilon: f64, domain: Cylinder) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::Contract("infimal convolution needs epsilon > 0".into()));
        }
        Ok(Self { epsilon, domain })
    }
}

/// Node index ranges of the sub-grid covered by the domain.
struct SubGrid {
    ax_lo: Vec<usize>,
    ax_hi: Vec<usize>,
    t_lo: usize,
    t_hi: usize,
}

fn sub_grid(field: &ScalarField, domain: &Cylinder) -> Result<SubGrid> {
    let g = &field.grid;
    if domain.spatial_dim() != g.spatial_dim() {
        return Err(Error::Domain("domain dimension mismatch".into()));
    }
    let slack = 1e-9;
    let mut ax_lo = Vec::new();
    let mut ax_hi = Vec::new();
    for a in 0..g.spatial_dim() {
        let lo = ((domain.lo(a) - g.origin[a]) / g.h - slack).ceil().max(0.0) as usize;
        let hi_f = ((domain.hi(a) - g.origin[a]) / g.h + slack).floor();
        if hi_f < 0.0 {
            return Err(Error::Domain("domain lies outside the grid".into()));
        }
        let hi = (hi_f as usize).min(g.counts[a] - 1);
        if hi < lo + 1 {
            return Err(Error::Domain("domain covers fewer than 2 nodes per axis".into()));
        }
        ax_lo.push(lo);
        ax_hi.push(hi);
    }
    let t_lo = ((domain.t1 - g.t0) / g.dt - slack).ceil().max(0.0) as usize;
    let t_hi_f = ((domain.t2 - g.t0) / g.dt + slack).floor();
    if t_hi_f < 0.0 {
        return Err(Error::Domain("domain lies outside the grid in time".into()));
    }
    let t_hi = (t_hi_f as usize).min(g.n_slices() - 1);
    if t_hi < t_lo {
        return Err(Error::Domain("domain covers no time slices".into()));
    }
    Ok(SubGrid { ax_lo, ax_hi, t_lo, t_hi })
}

fn restricted(field: &ScalarField, sub: &SubGrid) -> (crate::grid::Grid, Vec<f64>) {
    let g = &field.grid;
    let mut grid = g.clone();
    for a in 0..g.spatial_dim() {
        grid.origin[a] = g.coord(a, sub.ax_lo[a]);
        grid.counts[a] = sub.ax_hi[a] - sub.ax_lo[a] + 1;
    }
    grid.t0 = g.time(sub.t_lo);
    grid.steps = sub.t_hi - sub.t_lo;
    let mut values = Vec::with_capacity(grid.n_slices() * grid.n_nodes());
    match g.spatial_dim() {
        1 => {
            for j in sub.t_lo..=sub.t_hi {
                for i in sub.ax_lo[0]..=sub.ax_hi[0] {
                    values.push(field.get(j, i));
                }
            }
        }
        2 => {
            let nx = g.counts[0];
            for j in sub.t_lo..=sub.t_hi {
                for iy in sub.ax_lo[1]..=sub.ax_hi[1] {
                    for ix in sub.ax_lo[0]..=sub.ax_hi[0] {
                        values.push(field.get(j, iy * nx + ix));
                    }
                }
            }
        }
        d => panic!("unsupported spatial dimension {d}"),
    }
    (grid, values)
}

/// Brute-force infimal convolution (quadratic in the sample count).
pub fn inf_convolve(field: &ScalarField, spec: &InfConvSpec) -> Result<ScalarField> {
    let sub = sub_grid(field, &spec.domain)?;
    let (grid, values) = restricted(field, &sub);
    let inv2e = 1.0 / (2.0 * spec.epsilon);
    let nn = grid.n_nodes();
    let nt = grid.n_slices();
    let dim = grid.spatial_dim();
    let mut out = vec![f64::INFINITY; values.len()];

    // Axis coordinates of the restricted grid.
    let coords: Vec<Vec<f64>> = (0..dim)
        .map(|a| (0..grid.counts[a]).map(|i| grid.coord(a, i)).collect())
        .collect();
    let times: Vec<f64> = (0..nt).map(|j| grid.time(j)).collect();

    for jt in 0..nt {
        for i in 0..nn {
            let (ix, iy) = (i % grid.counts[0], i / grid.counts[0]);
            let mut best = f64::INFINITY;
            for st in 0..nt {
                let dt = times[jt] - times[st];
                let sqt = dt * dt * inv2e;
                for s in 0..nn {
                    let (sx, sy) = (s % grid.counts[0], s / grid.counts[0]);
                    let dx = coords[0][ix] - coords[0][sx];
                    let mut cand = values[st * nn + s] + dx * dx * inv2e;
                    if dim == 2 {
                        let dy = coords[1][iy] - coords[1][sy];
                        cand += dy * dy * inv2e;
                    }
                    cand += sqt;
                    if cand < best {
                        best = cand;
                    }
                }
            }
            out[jt * nn + i] = best;
        }
    }
    ScalarField::from_values(grid, out, field.cap())
}

/// Accelerated infimal convolution: one lower-envelope sweep per axis.
pub fn inf_convolve_fast(field: &ScalarField, spec: &InfConvSpec) -> Result<ScalarField> {
    let sub = sub_grid(field, &spec.domain)?;
    let (grid, mut values) = restricted(field, &sub);
    let inv2e = 1.0 / (2.0 * spec.epsilon);
    let nn = grid.n_nodes();
    let nt = grid.n_slices();
    let dim = grid.spatial_dim();
    let coords: Vec<Vec<f64>> = (0..dim)
        .map(|a| (0..grid.counts[a]).map(|i| grid.coord(a, i)).collect())
        .collect();
    let times: Vec<f64> = (0..nt).map(|j| grid.time(j)).collect();

    let mut line = Vec::new();
    let mut out_line = Vec::new();

    // x sweep (stride 1 within each slice row)
    let nx = grid.counts[0];
    let rows = nn / nx;
    for jt in 0..nt {
        for r in 0..rows {
            let base = jt * nn + r * nx;
            line.clear();
            line.extend_from_slice(&values[base..base + nx]);
            out_line.resize(nx, 0.0);
            envelope_pass(&coords[0], &line, inv2e, &mut out_line);
            values[base..base + nx].copy_from_slice(&out_line);
        }
    }
    // y sweep
    if dim == 2 {
        let ny = grid.counts[1];
        for jt in 0..nt {
            for ix in 0..nx {
                line.clear();
                for iy in 0..ny {
                    line.push(values[jt * nn + iy * nx + ix]);
                }
                out_line.resize(ny, 0.0);
                envelope_pass(&coords[1], &line, inv2e, &mut out_line);
                for iy in 0..ny {
                    values[jt * nn + iy * nx + ix] = out_line[iy];
                }
            }
        }
    }
    // t sweep
    for i in 0..nn {
        line.clear();
        for jt in 0..nt {
            line.push(values[jt * nn + i]);
        }
        out_line.resize(nt, 0.0);
        envelope_pass(&times, &line, inv2e, &mut out_line);
        for jt in 0..nt {
            values[jt * nn + i] = out_line[jt];
        }
    }
    ScalarField::from_values(grid, values, field.cap())
}

/// 1D infimal convolution of a time series (used to regularize boundary
/// traces in the ring construction).
pub fn inf_convolve_series(series: &[f64], dt: f64, epsilon: f64) -> Result<Vec<f64>> {
    if !(epsilon > 0.0) || !(dt > 0.0) {
        return Err(Error::Contract("series convolution needs dt > 0 and epsilon > 0".into()));
    }
    let coords: Vec<f64> = (0..series.len()).map(|j| j as f64 * dt).collect();
    let mut out = vec![0.0; series.len()];
    envelope_pass(&coords, series, 1.0 / (2.0 * epsilon), &mut out);
    Ok(out)
}

/// Lower envelope of the parabolas s -> f[j] + a (s - c[j])^2, evaluated at
/// the same coordinates. Candidate values use exactly the expression
/// f[j] + (c_i - c_j)^2 * a; a small window around the envelope cell guards
/// the arg-min choice against rounding in the intersection points.
fn envelope_pass(c: &[f64], f: &[f64], a: f64, out: &mut [f64]) {
    let n = f.len();
    debug_assert_eq!(out.len(), n);
    if n == 1 {
        out[0] = f[0];
        return;
    }
    let intersect = |i: usize, j: usize| -> f64 {
        ((f[j] + a * c[j] * c[j]) - (f[i] + a * c[i] * c[i])) / (2.0 * a * (c[j] - c[i]))
    };
    // hull[k] owns the cell [z[k], z[k+1]); z[0] = -inf, z implicit +inf end.
    let mut hull: Vec<usize> = Vec::with_capacity(n);
    let mut z: Vec<f64> = Vec::with_capacity(n);
    hull.push(0);
    z.push(f64::NEG_INFINITY);
    for q in 1..n {
        loop {
            let r = *hull.last().unwrap();
            let s = intersect(r, q);
            if hull.len() > 1 && s <= *z.last().unwrap() {
                hull.pop();
                z.pop();
            } else {
                hull.push(q);
                z.push(s);
                break;
            }
        }
    }
    let value = |j: usize, x: f64| -> f64 {
        let d = x - c[j];
        f[j] + d * d * a
    };
    let mut k = 0usize;
    for (i, o) in out.iter_mut().enumerate() {
        let x = c[i];
        while k + 1 < hull.len() && z[k + 1] < x {
            k += 1;
        }
        let mut best = value(hull[k], x);
        let lo = k.saturating_sub(2);
        let hi = (k + 2).min(hull.len() - 1);
        for kk in lo..=hi {
            let v = value(hull[kk], x);
            if v < best {
                best = v;
            }
        }
        *o = best;
    }
}
