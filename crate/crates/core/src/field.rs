//! Sampled space-time fields and the evaluation trait shared by sampled
//! and closed-form sources.

use crate::error::{Error, Result};
use crate::grid::{Cylinder, Grid};

/// Anything that can be evaluated at a space-time point.
///
/// Closed-form solutions implement this directly; [`ScalarField`] implements
/// it by multilinear interpolation. Diagnostics operate on this trait so the
/// same machinery runs on exact and on computed fields.
pub trait SpaceTimeField {
    fn eval(&self, x: &[f64], t: f64) -> f64;

    /// Region where `eval` is meaningful.
    fn domain(&self) -> Cylinder;

    /// Finest resolved scales (h, dt) for sampled sources; None means the
    /// source is exact at every scale.
    fn resolution(&self) -> Option<(f64, f64)> {
        None
    }
}

/// Closed-form source built from a closure.
pub struct FnField<F: Fn(&[f64], f64) -> f64> {
    f: F,
    domain: Cylinder,
}

impl<F: Fn(&[f64], f64) -> f64> FnField<F> {
    pub fn new(domain: Cylinder, f: F) -> Self {
        Self { f, domain }
    }
}

impl<F: Fn(&[f64], f64) -> f64> SpaceTimeField for FnField<F> {
    fn eval(&self, x: &[f64], t: f64) -> f64 {
        (self.f)(x, t)
    }

    fn domain(&self) -> Cylinder {
        self.domain.clone()
    }
}

/// A sampled scalar function on a [`Grid`], indexed (time, space), with an
/// optional cap marker: values at the cap stand for "truncated at cap".
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: Grid,
    values: Vec<f64>,
    cap: Option<f64>,
}

impl ScalarField {
    pub fn zeros(grid: Grid) -> Self {
        let len = grid.n_slices() * grid.n_nodes();
        Self { grid, values: vec![0.0; len], cap: None }
    }

    /// Sample a function of (x, t) at every node. A cap clamps stored values.
    pub fn from_fn(grid: Grid, cap: Option<f64>, f: impl Fn(&[f64], f64) -> f64) -> Self {
        let nn = grid.n_nodes();
        let mut values = Vec::with_capacity(grid.n_slices() * nn);
        let mut x = vec![0.0; grid.spatial_dim()];
        for j in 0..grid.n_slices() {
            let t = grid.time(j);
            for i in 0..nn {
                node_coords(&grid, i, &mut x);
                let mut v = f(&x, t);
                if let Some(c) = cap {
                    v = v.min(c);
                }
                values.push(v);
            }
        }
        Self { grid, values, cap }
    }

    pub fn from_values(grid: Grid, values: Vec<f64>, cap: Option<f64>) -> Result<Self> {
        if values.len() != grid.n_slices() * grid.n_nodes() {
            return Err(Error::Contract(format!(
                "value array length {} does not match grid ({} slices x {} nodes)",
                values.len(),
                grid.n_slices(),
                grid.n_nodes()
            )));
        }
        if let Some(c) = cap {
            if values.iter().any(|&v| v > c) {
                return Err(Error::Contract("stored value exceeds the declared cap".into()));
            }
        }
        Ok(Self { grid, values, cap })
    }

    pub fn cap(&self) -> Option<f64> {
        self.cap
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, slice: usize, node: usize) -> f64 {
        self.values[slice * self.grid.n_nodes() + node]
    }

    pub fn set(&mut self, slice: usize, node: usize, v: f64) {
        self.values[slice * self.grid.n_nodes() + node] = v;
    }

    pub fn slice(&self, j: usize) -> &[f64] {
        let nn = self.grid.n_nodes();
        &self.values[j * nn..(j + 1) * nn]
    }

    pub fn slice_mut(&mut self, j: usize) -> &mut [f64] {
        let nn = self.grid.n_nodes();
        &mut self.values[j * nn..(j + 1) * nn]
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Pointwise min with level `j`; the result carries the tightest cap
    /// seen so far, so truncations compose like the pointwise minimum.
    pub fn truncate(&self, j: f64) -> Result<ScalarField> {
        if !(j > 0.0) {
            return Err(Error::Contract("truncation level must be positive".into()));
        }
        let values = self.values.iter().map(|&v| v.min(j)).collect();
        let cap = Some(self.cap.map_or(j, |c| c.min(j)));
        Ok(ScalarField { grid: self.grid.clone(), values, cap })
    }

    /// Extend a non-negative field to earlier times by zero slices.
    ///
    /// The new start time is the largest t0 - k*dt not exceeding `new_t0`,
    /// so original slices stay on the same time lattice.
    pub fn extend_to_past(&self, new_t0: f64) -> Result<ScalarField> {
        if new_t0 >= self.grid.t0 {
            return Err(Error::Contract("new_t0 must precede the field's start time".into()));
        }
        if self.min_value() < 0.0 {
            return Err(Error::Contract(
                "extension by zero needs a non-negative field".into(),
            ));
        }
        let extra = ((self.grid.t0 - new_t0) / self.grid.dt).ceil() as usize;
        let mut grid = self.grid.clone();
        grid.t0 -= extra as f64 * grid.dt;
        grid.steps += extra;
        let nn = grid.n_nodes();
        let mut values = vec![0.0; extra * nn];
        values.extend_from_slice(&self.values);
        Ok(ScalarField { grid, values, cap: self.cap })
    }

    /// Restrict to the grid-time window [j0, j1] (inclusive slices).
    pub fn restrict_slices(&self, j0: usize, j1: usize) -> Result<ScalarField> {
        if j1 < j0 || j1 >= self.grid.n_slices() {
            return Err(Error::Contract("bad slice window".into()));
        }
        let nn = self.grid.n_nodes();
        let mut grid = self.grid.clone();
        grid.t0 = self.grid.time(j0);
        grid.steps = j1 - j0;
        let values = self.values[j0 * nn..(j1 + 1) * nn].to_vec();
        Ok(ScalarField { grid, values, cap: self.cap })
    }
}

/// Fill `out` with the coordinates of flat node index `i`.
pub fn node_coords(grid: &Grid, i: usize, out: &mut [f64]) {
    match grid.spatial_dim() {
        1 => out[0] = grid.coord(0, i),
        2 => {
            let nx = grid.counts[0];
            out[0] = grid.coord(0, i % nx);
            out[1] = grid.coord(1, i / nx);
        }
        d => panic!("unsupported spatial dimension {d}"),
    }
}

impl SpaceTimeField for ScalarField {
    /// Multilinear interpolation in space and time, clamped to the grid.
    fn eval(&self, x: &[f64], t: f64) -> f64 {
        let g = &self.grid;
        let (jt, wt) = locate(t, g.t0, g.dt, g.n_slices());
        match g.spatial_dim() {
            1 => {
                let (ix, wx) = locate(x[0], g.origin[0], g.h, g.counts[0]);
                let f = |j: usize| {
                    (1.0 - wx) * self.get(j, ix) + wx * self.get(j, (ix + 1).min(g.counts[0] - 1))
                };
                (1.0 - wt) * f(jt) + wt * f((jt + 1).min(g.n_slices() - 1))
            }
            2 => {
                let nx = g.counts[0];
                let (ix, wx) = locate(x[0], g.origin[0], g.h, g.counts[0]);
                let (iy, wy) = locate(x[1], g.origin[1], g.h, g.counts[1]);
                let ixp = (ix + 1).min(g.counts[0] - 1);
                let iyp = (iy + 1).min(g.counts[1] - 1);
                let f = |j: usize| {
                    let v00 = self.get(j, iy * nx + ix);
                    let v10 = self.get(j, iy * nx + ixp);
                    let v01 = self.get(j, iyp * nx + ix);
                    let v11 = self.get(j, iyp * nx + ixp);
                    (1.0 - wy) * ((1.0 - wx) * v00 + wx * v10) + wy * ((1.0 - wx) * v01 + wx * v11)
                };
                (1.0 - wt) * f(jt) + wt * f((jt + 1).min(g.n_slices() - 1))
            }
            d => panic!("unsupported spatial dimension {d}"),
        }
    }

    fn domain(&self) -> Cylinder {
        self.grid.cylinder()
    }

    fn resolution(&self) -> Option<(f64, f64)> {
        Some((self.grid.h, self.grid.dt))
    }
}

/// Lower cell index and interpolation weight for coordinate `v` on a uniform
/// axis, clamped into the axis range.
fn locate(v: f64, origin: f64, step: f64, count: usize) -> (usize, f64) {
    let s = (v - origin) / step;
    if s <= 0.0 {
        return (0, 0.0);
    }
    let max = (count - 1) as f64;
    if s >= max {
        return (count - 1, 0.0);
    }
    let i = s.floor() as usize;
    (i, s - i as f64)
}
