//! Monotone explicit finite-difference evolution for the p-Laplace equation
//! and the porous medium equation in one spatial dimension (interval, radial,
//! and the two-cube ring probe).
//!
//! The update is conservative, u_i += (dt / vol_i)(A_{i+1/2} F_{i+1/2} -
//! A_{i-1/2} F_{i-1/2}), with flux F = |D|^{p-2} D of the difference quotient
//! (p-Laplace) or the difference quotient of u^m (PME). The adaptive step
//! keeps the update monotone in every stencil argument, which is what the
//! comparison experiments rely on.

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::grid::{Grid, GridKind};
use crate::infconv::inf_convolve_series;
use crate::params::{Equation, MediumParams};
use crate::quadrature::sphere_area;

/// Spatial geometry of an evolution run.
#[derive(Debug, Clone, Copy)]
pub enum Geometry {
    /// Interval [a, b].
    Interval { a: f64, b: f64 },
    /// Radial coordinate [0, rmax] in dimension `dim`, zero-flux at r = 0.
    Radial { rmax: f64, dim: u32 },
    /// Outer half [l, 2l] of the symmetric ring (cube-in-cube) region.
    Ring { l: f64 },
}

/// Boundary condition at one end of the domain.
#[derive(Debug, Clone)]
pub enum Boundary {
    /// Value series sampled on the problem's time grid (steps + 1 entries),
    /// linearly interpolated at sub-step times.
    Dirichlet(Vec<f64>),
    /// No flux through the boundary.
    ZeroFlux,
}

#[derive(Debug, Clone)]
pub struct EvolutionProblem {
    pub params: MediumParams,
    pub equation: Equation,
    pub geometry: Geometry,
    /// Nodal initial data (length = nodes).
    pub initial: Vec<f64>,
    pub left: Boundary,
    pub right: Boundary,
    pub nodes: usize,
    pub t0: f64,
    /// Output (recording) step; the solver sub-steps adaptively inside it.
    pub dt: f64,
    pub steps: usize,
    pub cfl_safety: f64,
    /// Escape level for blow-up detection; default 1e6 x (initial + boundary sup).
    pub blow_up_threshold: Option<f64>,
}

impl EvolutionProblem {
    pub fn new(
        params: MediumParams,
        equation: Equation,
        geometry: Geometry,
        initial: Vec<f64>,
        t0: f64,
        dt: f64,
        steps: usize,
    ) -> Self {
        let nodes = initial.len();
        Self {
            params,
            equation,
            geometry,
            initial,
            left: Boundary::Dirichlet(vec![0.0; steps + 1]),
            right: Boundary::Dirichlet(vec![0.0; steps + 1]),
            nodes,
            t0,
            dt,
            steps,
            cfl_safety: 0.9,
            blow_up_threshold: None,
        }
    }

    fn grid(&self) -> Result<Grid> {
        match self.geometry {
            Geometry::Interval { a, b } => {
                Grid::interval(a, b, self.nodes, self.t0, self.dt, self.steps)
            }
            Geometry::Radial { rmax, dim } => {
                Grid::radial(rmax, dim, self.nodes, self.t0, self.dt, self.steps)
            }
            Geometry::Ring { l } => {
                Grid::interval(l, 2.0 * l, self.nodes, self.t0, self.dt, self.steps)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if self.initial.len() != self.nodes || self.nodes < 3 {
            return Err(Error::Contract("initial data must cover at least 3 nodes".into()));
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return Err(Error::Contract("cfl_safety must lie in (0, 1]".into()));
        }
        if self.initial.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Contract("initial data must be finite and non-negative".into()));
        }
        for b in [&self.left, &self.right] {
            if let Boundary::Dirichlet(series) = b {
                if series.len() != self.steps + 1 {
                    return Err(Error::Contract(
                        "boundary series length must match the time grid".into(),
                    ));
                }
                if series.iter().any(|v| !v.is_finite() || *v < 0.0) {
                    return Err(Error::Contract(
                        "boundary data must be finite and non-negative".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn sup_data(&self) -> f64 {
        let mut sup = self.initial.iter().copied().fold(0.0, f64::max);
        for b in [&self.left, &self.right] {
            if let Boundary::Dirichlet(series) = b {
                sup = series.iter().copied().fold(sup, f64::max);
            }
        }
        sup
    }
}

#[derive(Debug)]
pub struct SolveReport {
    /// Recorded trajectory on the problem's time grid. When a run stops at
    /// blow-up the grid is shortened to the completed steps.
    pub field: ScalarField,
    /// Max nodal value after each recorded step (index 0 = initial data).
    pub max_trace: Vec<f64>,
    /// Smallest sub-step used inside each recorded step.
    pub dt_trace: Vec<f64>,
    pub blow_up_flag: bool,
    pub blow_up_time: Option<f64>,
    pub threshold: f64,
    pub substeps: usize,
}

/// Interior state of the explicit stepper; exposed so ordered pairs can be
/// co-evolved in lockstep.
struct Stepper<'p> {
    problem: &'p EvolutionProblem,
    u: Vec<f64>,
    t: f64,
    h: f64,
    /// Per-node cell volume.
    vol: Vec<f64>,
    /// Interface measure between node i and i+1.
    iface: Vec<f64>,
    /// Whether the left end is a pinned Dirichlet node.
    left_pinned: bool,
    right_pinned: bool,
}

impl<'p> Stepper<'p> {
    fn new(problem: &'p EvolutionProblem, grid: &Grid) -> Self {
        let n = problem.nodes;
        let h = grid.h;
        let (vol, iface) = match grid.kind {
            GridKind::Radial { dim } => {
                let nd = dim as f64;
                let sa = sphere_area(dim);
                let mut vol = vec![0.0; n];
                let mut iface = vec![0.0; n - 1];
                for i in 0..n {
                    let r = grid.node_x(i);
                    let lo = (r - 0.5 * h).max(0.0);
                    let hi = (r + 0.5 * h).min(grid.x_max(0));
                    vol[i] = sa * (hi.powf(nd) - lo.powf(nd)) / nd;
                }
                for i in 0..n - 1 {
                    let r = grid.node_x(i) + 0.5 * h;
                    iface[i] = sa * r.powf(nd - 1.0);
                }
                (vol, iface)
            }
            _ => {
                let mut vol = vec![h; n];
                vol[0] = 0.5 * h;
                vol[n - 1] = 0.5 * h;
                (vol, vec![1.0; n - 1])
            }
        };
        let left_pinned = matches!(problem.left, Boundary::Dirichlet(_));
        let right_pinned = matches!(problem.right, Boundary::Dirichlet(_));
        let mut u = problem.initial.clone();
        apply_boundary(problem, &mut u, problem.t0);
        Stepper { problem, u, t: problem.t0, h, vol, iface, left_pinned, right_pinned }
    }

    /// Monotonicity bound on dt at the current state:
    /// dt <= cfl h^2 / (2 max(p-1,1) max|D|^{p-2}) for the p-Laplace flux and
    /// dt <= cfl h^2 / (2 m max u^{m-1}) for the PME flux, tightened by the
    /// metric factor of non-flat geometries.
    fn dt_bound(&self) -> f64 {
        let p = self.problem.params.exponent(self.problem.equation).unwrap();
        let n = self.u.len();
        let mut coeff_max: f64 = 0.0;
        match self.problem.equation {
            Equation::PLaplace => {
                for i in 0..n - 1 {
                    let d = ((self.u[i + 1] - self.u[i]) / self.h).abs();
                    coeff_max = coeff_max.max(d.powf(p - 2.0));
                }
                coeff_max *= (p - 1.0).max(1.0);
            }
            Equation::Pme => {
                for &v in &self.u {
                    coeff_max = coeff_max.max(v.max(0.0).powf(p - 1.0));
                }
                coeff_max *= p;
            }
        }
        let geom = (0..n)
            .filter(|&i| {
                (i > 0 || !self.left_pinned) && (i + 1 < n || !self.right_pinned)
            })
            .map(|i| {
                let ar = if i + 1 < n { self.iface[i] } else { 0.0 };
                let al = if i > 0 { self.iface[i - 1] } else { 0.0 };
                (ar + al) * self.h / (2.0 * self.vol[i])
            })
            .fold(1.0_f64, f64::max);
        if coeff_max <= 0.0 {
            f64::INFINITY
        } else {
            self.problem.cfl_safety * self.h * self.h / (2.0 * coeff_max * geom)
        }
    }

    /// One explicit sub-step of size dt (assumed within the monotone bound).
    fn step(&mut self, dt: f64) {
        let p = self.problem.params.exponent(self.problem.equation).unwrap();
        let n = self.u.len();
        let flux = |a: f64, b: f64, h: f64| -> f64 {
            match self.problem.equation {
                Equation::PLaplace => {
                    let d = (b - a) / h;
                    d.abs().powf(p - 2.0) * d
                }
                Equation::Pme => (b.max(0.0).powf(p) - a.max(0.0).powf(p)) / h,
            }
        };
        let mut fluxes = vec![0.0; n + 1];
        for i in 0..n - 1 {
            fluxes[i + 1] = self.iface[i] * flux(self.u[i], self.u[i + 1], self.h);
        }
        // outer interfaces: zero-flux ends contribute nothing; Dirichlet ends
        // are pinned and never updated, so their outer flux is irrelevant.
        let lo = if self.left_pinned { 1 } else { 0 };
        let hi = if self.right_pinned { n - 1 } else { n };
        for i in lo..hi {
            self.u[i] += dt / self.vol[i] * (fluxes[i + 1] - fluxes[i]);
        }
        self.t += dt;
        apply_boundary(self.problem, &mut self.u, self.t);
    }

    fn max_value(&self) -> f64 {
        self.u.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    fn check_finite(&self) -> Result<()> {
        if self.u.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite value in the evolved field".into()));
        }
        Ok(())
    }
}

fn apply_boundary(problem: &EvolutionProblem, u: &mut [f64], t: f64) {
    let n = u.len();
    if let Boundary::Dirichlet(series) = &problem.left {
        u[0] = sample_series(series, problem.t0, problem.dt, t);
    }
    if let Boundary::Dirichlet(series) = &problem.right {
        u[n - 1] = sample_series(series, problem.t0, problem.dt, t);
    }
}

/// Linear interpolation of a boundary series at time t.
fn sample_series(series: &[f64], t0: f64, dt: f64, t: f64) -> f64 {
    let s = (t - t0) / dt;
    if s <= 0.0 {
        return series[0];
    }
    let max = (series.len() - 1) as f64;
    if s >= max {
        return *series.last().unwrap();
    }
    let i = s.floor() as usize;
    let w = s - i as f64;
    (1.0 - w) * series[i] + w * series[i + 1]
}

/// Evolve the problem, recording slices on the problem's time grid.
pub fn evolve(problem: &EvolutionProblem) -> Result<SolveReport> {
    problem.validate()?;
    let grid = problem.grid()?;
    let threshold = problem
        .blow_up_threshold
        .unwrap_or_else(|| 1e6 * problem.sup_data().max(f64::MIN_POSITIVE));
    let mut stepper = Stepper::new(problem, &grid);

    let mut slices: Vec<Vec<f64>> = vec![stepper.u.clone()];
    let mut max_trace = vec![stepper.max_value()];
    let mut dt_trace = Vec::new();
    let mut substeps = 0usize;
    let mut blow_up_time = None;

    'outer: for j in 0..problem.steps {
        let t_target = problem.t0 + (j + 1) as f64 * problem.dt;
        let mut min_dt = f64::INFINITY;
        while stepper.t < t_target - 1e-14 * problem.dt.max(1.0) {
            let dt = stepper
                .dt_bound()
                .min(t_target - stepper.t)
                .min(problem.dt);
            if dt < 1e-14 {
                return Err(Error::Stiffness { dt });
            }
            stepper.step(dt);
            stepper.check_finite()?;
            substeps += 1;
            min_dt = min_dt.min(dt);
            if stepper.max_value() > threshold {
                blow_up_time = Some(stepper.t);
                dt_trace.push(min_dt);
                max_trace.push(stepper.max_value());
                break 'outer;
            }
        }
        stepper.t = t_target;
        apply_boundary(problem, &mut stepper.u, t_target);
        slices.push(stepper.u.clone());
        max_trace.push(stepper.max_value());
        dt_trace.push(if min_dt.is_finite() { min_dt } else { problem.dt });
    }

    let recorded_steps = slices.len() - 1;
    let mut out_grid = grid;
    out_grid.steps = recorded_steps;
    let mut values = Vec::with_capacity(slices.len() * problem.nodes);
    for s in &slices {
        values.extend_from_slice(s);
    }
    let field = ScalarField::from_values(out_grid, values, None)?;
    Ok(SolveReport {
        field,
        max_trace,
        dt_trace,
        blow_up_flag: blow_up_time.is_some(),
        blow_up_time,
        threshold,
        substeps,
    })
}

/// Options for the ring probe.
#[derive(Debug, Clone)]
pub struct RingOptions {
    pub cfl_safety: f64,
    pub blow_up_threshold: Option<f64>,
    /// Optional infimal-convolution preprocessing of the inner trace
    /// (epsilon of the space-time quadratic penalty, applied in time).
    pub preprocess_eps: Option<f64>,
}

impl Default for RingOptions {
    fn default() -> Self {
        Self { cfl_safety: 0.9, blow_up_threshold: None, preprocess_eps: None }
    }
}

/// Solve the ring boundary-value problem on the outer region: zero on the
/// outer boundary, the series `inner` on the inner boundary, zero initially.
///
/// The region between the concentric cubes is symmetric under reflection, so
/// with a single inner trace the outer half [l, 2l] determines the whole
/// ring; the report's field lives on [l, 2l].
///
/// A continuous problem of this kind can fail to have a solution at all;
/// numerically that failure shows up as threshold escape, and persistence of
/// the flag under threshold doubling is the operational test. The
/// correspondence is heuristic by nature.
pub fn solve_ring(
    l: f64,
    nodes: usize,
    inner: &[f64],
    t0: f64,
    dt: f64,
    params: MediumParams,
    equation: Equation,
    opts: &RingOptions,
) -> Result<SolveReport> {
    if !(l > 0.0) {
        return Err(Error::Contract("ring needs l > 0".into()));
    }
    if inner.len() < 2 {
        return Err(Error::Contract("inner boundary series too short".into()));
    }
    if inner[0] != 0.0 {
        return Err(Error::Contract(
            "inner boundary trace must vanish on an initial stretch (v = 0 for t <= delta)".into(),
        ));
    }
    let steps = inner.len() - 1;
    let series = match opts.preprocess_eps {
        Some(eps) => inf_convolve_series(inner, dt, eps)?,
        None => inner.to_vec(),
    };
    let mut problem = EvolutionProblem::new(
        params,
        equation,
        Geometry::Ring { l },
        vec![0.0; nodes],
        t0,
        dt,
        steps,
    );
    problem.left = Boundary::Dirichlet(series);
    problem.right = Boundary::Dirichlet(vec![0.0; steps + 1]);
    problem.cfl_safety = opts.cfl_safety;
    problem.blow_up_threshold = opts.blow_up_threshold;
    evolve(&problem)
}

/// Outcome of a lockstep comparison run.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonReport {
    /// Ordering u_a <= u_b + slack held at every node and sub-step.
    pub ordered: bool,
    /// Smallest value either field attained (positivity witness).
    pub min_value: f64,
}

/// Co-evolve two ordered problems in lockstep (shared sub-steps) and verify
/// that ordering persists at every node and sub-step.
///
/// Requires A's initial and boundary data to lie below B's pointwise.
pub fn comparison_check(
    a: &EvolutionProblem,
    b: &EvolutionProblem,
    slack: f64,
) -> Result<ComparisonReport> {
    a.validate()?;
    b.validate()?;
    if a.nodes != b.nodes || a.steps != b.steps || (a.dt - b.dt).abs() > 1e-15 {
        return Err(Error::Contract("comparison needs matching grids".into()));
    }
    for (x, y) in a.initial.iter().zip(&b.initial) {
        if x > y {
            return Err(Error::Contract("initial data not ordered".into()));
        }
    }
    for (ba, bb) in [(&a.left, &b.left), (&a.right, &b.right)] {
        match (ba, bb) {
            (Boundary::Dirichlet(sa), Boundary::Dirichlet(sb)) => {
                if sa.iter().zip(sb).any(|(x, y)| x > y) {
                    return Err(Error::Contract("boundary data not ordered".into()));
                }
            }
            (Boundary::ZeroFlux, Boundary::ZeroFlux) => {}
            _ => return Err(Error::Contract("boundary kinds must match".into())),
        }
    }
    let ga = a.grid()?;
    let gb = b.grid()?;
    let mut sa = Stepper::new(a, &ga);
    let mut sb = Stepper::new(b, &gb);
    let t_end = a.t0 + a.steps as f64 * a.dt;
    let mut ordered = true;
    let mut min_value = f64::INFINITY;
    while sa.t < t_end - 1e-14 {
        let dt = sa
            .dt_bound()
            .min(sb.dt_bound())
            .min(t_end - sa.t)
            .min(a.dt);
        if dt < 1e-14 {
            return Err(Error::Stiffness { dt });
        }
        sa.step(dt);
        sb.step(dt);
        sa.check_finite()?;
        sb.check_finite()?;
        for (x, y) in sa.u.iter().zip(&sb.u) {
            if *x > *y + slack {
                ordered = false;
            }
            min_value = min_value.min(*x).min(*y);
        }
        if !ordered {
            break;
        }
    }
    Ok(ComparisonReport { ordered, min_value })
}

/// Total volume-weighted mass of a recorded slice (used by the conservation
/// tests and the CLI summaries).
pub fn slice_mass(field: &ScalarField, slice: usize) -> f64 {
    let g = &field.grid;
    let n = g.counts[0];
    match g.kind {
        GridKind::Radial { dim } => {
            let nd = dim as f64;
            let sa = sphere_area(dim);
            (0..n)
                .map(|i| {
                    let r = g.node_x(i);
                    let lo = (r - 0.5 * g.h).max(0.0);
                    let hi = (r + 0.5 * g.h).min(g.x_max(0));
                    field.get(slice, i) * sa * (hi.powf(nd) - lo.powf(nd)) / nd
                })
                .sum()
        }
        _ => (0..n)
            .map(|i| {
                let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
                field.get(slice, i) * w * g.h
            })
            .sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> MediumParams {
        MediumParams::p_laplace(3.0, 1).unwrap()
    }

    #[test]
    fn zero_data_stays_zero() {
        let problem = EvolutionProblem::new(
            p3(),
            Equation::PLaplace,
            Geometry::Interval { a: -1.0, b: 1.0 },
            vec![0.0; 33],
            0.0,
            0.01,
            20,
        );
        let rep = evolve(&problem).unwrap();
        assert!(!rep.blow_up_flag);
        assert!(rep.field.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn constant_data_is_steady() {
        let mut problem = EvolutionProblem::new(
            p3(),
            Equation::PLaplace,
            Geometry::Interval { a: 0.0, b: 1.0 },
            vec![2.5; 17],
            0.0,
            0.05,
            10,
        );
        problem.left = Boundary::Dirichlet(vec![2.5; 11]);
        problem.right = Boundary::Dirichlet(vec![2.5; 11]);
        let rep = evolve(&problem).unwrap();
        for &v in rep.field.values() {
            assert!((v - 2.5).abs() < 1e-14);
        }
    }

    #[test]
    fn mass_is_conserved_with_silent_boundaries() {
        // compactly supported bump, zero Dirichlet boundary: fluxes at the
        // ends vanish while the support stays interior.
        let n = 129;
        let initial: Vec<f64> = (0..n)
            .map(|i| {
                let x = -2.0 + 4.0 * i as f64 / (n - 1) as f64;
                (1.0 - x * x).max(0.0).powi(2)
            })
            .collect();
        for eq in [Equation::PLaplace, Equation::Pme] {
            let params = MediumParams::new(Some(3.0), Some(2.0), 1).unwrap();
            let problem = EvolutionProblem::new(
                params,
                eq,
                Geometry::Interval { a: -2.0, b: 2.0 },
                initial.clone(),
                0.0,
                0.01,
                10,
            );
            let rep = evolve(&problem).unwrap();
            let m0 = slice_mass(&rep.field, 0);
            let m1 = slice_mass(&rep.field, rep.field.grid.steps);
            assert!((m1 - m0).abs() <= 1e-10 * m0.max(1.0), "eq {eq:?}: {m0} vs {m1}");
        }
    }

    #[test]
    fn positivity_is_preserved() {
        let n = 65;
        let initial: Vec<f64> = (0..n)
            .map(|i| {
                let x = i as f64 / (n - 1) as f64;
                (10.0 * x).sin().max(0.0)
            })
            .collect();
        let problem = EvolutionProblem::new(
            p3(),
            Equation::PLaplace,
            Geometry::Interval { a: 0.0, b: 1.0 },
            initial,
            0.0,
            0.02,
            25,
        );
        let rep = evolve(&problem).unwrap();
        assert!(rep.field.min_value() >= 0.0);
    }

    #[test]
    fn comparison_identical_and_raised_boundary() {
        let n = 33;
        let initial: Vec<f64> = (0..n)
            .map(|i| {
                let x = i as f64 / (n - 1) as f64;
                (std::f64::consts::PI * x).sin()
            })
            .collect();
        let make = |boost: f64| {
            let mut p = EvolutionProblem::new(
                p3(),
                Equation::PLaplace,
                Geometry::Interval { a: 0.0, b: 1.0 },
                initial.clone(),
                0.0,
                0.02,
                10,
            );
            p.left = Boundary::Dirichlet(vec![boost; 11]);
            p.right = Boundary::Dirichlet(vec![boost; 11]);
            p
        };
        let same = comparison_check(&make(0.0), &make(0.0), 1e-12).unwrap();
        assert!(same.ordered);
        let raised = comparison_check(&make(0.0), &make(1.0), 1e-12).unwrap();
        assert!(raised.ordered);
        assert!(raised.min_value >= 0.0);
        assert!(comparison_check(&make(1.0), &make(0.0), 1e-12).is_err());
    }

    #[test]
    fn ring_with_zero_trace_stays_zero() {
        let rep = solve_ring(
            1.0,
            33,
            &[0.0; 101],
            0.0,
            0.01,
            p3(),
            Equation::PLaplace,
            &RingOptions::default(),
        )
        .unwrap();
        assert!(!rep.blow_up_flag);
        assert_eq!(rep.field.max_value(), 0.0);
    }

    #[test]
    fn radial_barenblatt_n2_tracks_the_closed_form() {
        // n = 2 source solution evolved radially from its t = 0.5 slice,
        // zero-flux at r = 0, exact values held at the outer radius.
        use crate::exact::BarenblattSpec;
        let params = MediumParams::p_laplace(3.0, 2).unwrap();
        let spec = BarenblattSpec::new(params, 1.0).unwrap();
        let nodes = 257;
        let rmax = 4.0;
        let h = rmax / (nodes as f64 - 1.0);
        let t0 = 0.5;
        let steps = 16;
        let t_end = 0.75;
        let initial: Vec<f64> = (0..nodes).map(|i| spec.eval_radial(i as f64 * h, t0)).collect();
        let mut problem = EvolutionProblem::new(
            params,
            Equation::PLaplace,
            Geometry::Radial { rmax, dim: 2 },
            initial,
            t0,
            (t_end - t0) / steps as f64,
            steps,
        );
        problem.left = Boundary::ZeroFlux;
        problem.right = Boundary::Dirichlet(vec![0.0; steps + 1]);
        let rep = evolve(&problem).unwrap();
        let mut sup_err: f64 = 0.0;
        let mut sup: f64 = 0.0;
        for i in 0..nodes {
            let exact = spec.eval_radial(i as f64 * h, t_end);
            sup = sup.max(exact);
            sup_err = sup_err.max((rep.field.get(steps, i) - exact).abs());
        }
        assert!(sup_err / sup < 0.02, "radial sup err {:.3e}", sup_err / sup);
        // conserved mass: zero flux at the center, support away from rmax
        let m0 = slice_mass(&rep.field, 0);
        let m1 = slice_mass(&rep.field, steps);
        assert!((m1 - m0).abs() <= 1e-10 * m0);
    }

    #[test]
    fn error_vs_exact_solution_halves_under_refinement() {
        use crate::exact::BarenblattSpec;
        let params = p3();
        let spec = BarenblattSpec::new(params, 1.0).unwrap();
        let mut errs = Vec::new();
        for lvl in 0..2 {
            let nodes = 128 * (1 << lvl) + 1;
            let steps = 16 << lvl;
            let h = 8.0 / (nodes as f64 - 1.0);
            let initial: Vec<f64> =
                (0..nodes).map(|i| spec.eval(&[-4.0 + i as f64 * h], 0.5)).collect();
            let problem = EvolutionProblem::new(
                params,
                Equation::PLaplace,
                Geometry::Interval { a: -4.0, b: 4.0 },
                initial,
                0.5,
                0.5 / steps as f64,
                steps,
            );
            let rep = evolve(&problem).unwrap();
            let mut sup_err: f64 = 0.0;
            for i in 0..nodes {
                let exact = spec.eval(&[-4.0 + i as f64 * h], 1.0);
                sup_err = sup_err.max((rep.field.get(steps, i) - exact).abs());
            }
            errs.push(sup_err);
        }
        assert!(errs[1] <= 0.5 * errs[0], "errors {errs:?}");
    }

    #[test]
    fn ring_accepts_infimal_convolution_preprocessing() {
        // the regularized trace lies below the raw one, so the run stays tame
        let steps = 200;
        let series: Vec<f64> = (0..=steps)
            .map(|j| if j > 50 { 1.0 + 0.5 * ((j - 50) as f64 * 0.1).sin() } else { 0.0 })
            .collect();
        let opts = RingOptions { preprocess_eps: Some(0.01), ..RingOptions::default() };
        let rep = solve_ring(1.0, 33, &series, 0.0, 0.001, p3(), Equation::PLaplace, &opts)
            .unwrap();
        assert!(!rep.blow_up_flag);
        let sup = rep.max_trace.iter().copied().fold(0.0, f64::max);
        let raw_sup = series.iter().copied().fold(0.0, f64::max);
        assert!(sup <= raw_sup + 1e-12);
    }

    #[test]
    fn ring_rejects_nonvanishing_initial_trace() {
        let r = solve_ring(
            1.0,
            17,
            &[1.0; 11],
            0.0,
            0.01,
            p3(),
            Equation::PLaplace,
            &RingOptions::default(),
        );
        assert!(r.is_err());
    }
}
