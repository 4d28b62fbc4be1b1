//! Uniform space-time grids and axis-aligned cylinder regions.

use crate::error::{Error, Result};
use serde::Serialize;

/// Spatial layout of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GridKind {
    /// Nodes on an interval [a, b].
    Interval,
    /// Nodes on [0, rmax] with the volume element of dimension `dim`
    /// (dim = 1 gives a symmetric two-sided interval measure 2*dr).
    Radial { dim: u32 },
    /// Tensor nodes on an axis-aligned rectangle.
    Box2d,
}

/// A uniform grid: spatial nodes at origin + index*h per axis, time slices
/// at t0 + j*dt for j = 0..=steps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub kind: GridKind,
    pub origin: Vec<f64>,
    pub h: f64,
    pub counts: Vec<usize>,
    pub t0: f64,
    pub dt: f64,
    pub steps: usize,
}

impl Grid {
    fn validate(self) -> Result<Self> {
        if !(self.h > 0.0) || !(self.dt > 0.0) {
            return Err(Error::Parameter("grid needs h > 0 and dt > 0".into()));
        }
        if self.counts.iter().any(|&c| c < 2) {
            return Err(Error::Parameter("grid needs at least 2 nodes per axis".into()));
        }
        Ok(self)
    }

    pub fn interval(a: f64, b: f64, nodes: usize, t0: f64, dt: f64, steps: usize) -> Result<Self> {
        if !(b > a) {
            return Err(Error::Parameter("interval needs b > a".into()));
        }
        Grid {
            kind: GridKind::Interval,
            origin: vec![a],
            h: (b - a) / (nodes as f64 - 1.0),
            counts: vec![nodes],
            t0,
            dt,
            steps,
        }
        .validate()
    }

    pub fn radial(rmax: f64, dim: u32, nodes: usize, t0: f64, dt: f64, steps: usize) -> Result<Self> {
        if !(rmax > 0.0) || dim < 1 {
            return Err(Error::Parameter("radial grid needs rmax > 0, dim >= 1".into()));
        }
        Grid {
            kind: GridKind::Radial { dim },
            origin: vec![0.0],
            h: rmax / (nodes as f64 - 1.0),
            counts: vec![nodes],
            t0,
            dt,
            steps,
        }
        .validate()
    }

    pub fn box2d(
        origin: (f64, f64),
        h: f64,
        nx: usize,
        ny: usize,
        t0: f64,
        dt: f64,
        steps: usize,
    ) -> Result<Self> {
        Grid {
            kind: GridKind::Box2d,
            origin: vec![origin.0, origin.1],
            h,
            counts: vec![nx, ny],
            t0,
            dt,
            steps,
        }
        .validate()
    }

    pub fn spatial_dim(&self) -> usize {
        self.counts.len()
    }

    /// Number of spatial nodes (product over axes).
    pub fn n_nodes(&self) -> usize {
        self.counts.iter().product()
    }

    /// Number of recorded time slices (steps + 1).
    pub fn n_slices(&self) -> usize {
        self.steps + 1
    }

    pub fn time(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.time(self.steps)
    }

    /// Coordinate of node `i` along axis `axis`.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        self.origin[axis] + i as f64 * self.h
    }

    /// Node coordinate for 1D grids.
    pub fn node_x(&self, i: usize) -> f64 {
        self.coord(0, i)
    }

    pub fn x_max(&self, axis: usize) -> f64 {
        self.coord(axis, self.counts[axis] - 1)
    }

    /// Bounding cylinder of the grid (node extent times time extent).
    pub fn cylinder(&self) -> Cylinder {
        let center: Vec<f64> = (0..self.spatial_dim())
            .map(|a| 0.5 * (self.origin[a] + self.x_max(a)))
            .collect();
        let half: Vec<f64> = (0..self.spatial_dim())
            .map(|a| 0.5 * (self.x_max(a) - self.origin[a]))
            .collect();
        Cylinder::new(center, half, self.t0, self.t_end()).expect("grid extent is a valid cylinder")
    }
}

/// A space-time box: spatial box (center, half-widths) times (t1, t2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cylinder {
    pub center: Vec<f64>,
    pub half_widths: Vec<f64>,
    pub t1: f64,
    pub t2: f64,
}

impl Cylinder {
    pub fn new(center: Vec<f64>, half_widths: Vec<f64>, t1: f64, t2: f64) -> Result<Self> {
        if center.len() != half_widths.len() || center.is_empty() {
            return Err(Error::Parameter("cylinder axes mismatch".into()));
        }
        if !(t1 < t2) {
            return Err(Error::Parameter("cylinder needs t1 < t2".into()));
        }
        if half_widths.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::Parameter("cylinder half-widths must be positive".into()));
        }
        Ok(Self { center, half_widths, t1, t2 })
    }

    /// 1D convenience constructor.
    pub fn interval(x_lo: f64, x_hi: f64, t1: f64, t2: f64) -> Result<Self> {
        Cylinder::new(vec![0.5 * (x_lo + x_hi)], vec![0.5 * (x_hi - x_lo)], t1, t2)
    }

    pub fn spatial_dim(&self) -> usize {
        self.center.len()
    }

    pub fn lo(&self, axis: usize) -> f64 {
        self.center[axis] - self.half_widths[axis]
    }

    pub fn hi(&self, axis: usize) -> f64 {
        self.center[axis] + self.half_widths[axis]
    }

    pub fn contains(&self, x: &[f64], t: f64) -> bool {
        if x.len() != self.spatial_dim() || t < self.t1 || t > self.t2 {
            return false;
        }
        x.iter()
            .enumerate()
            .all(|(a, &xi)| xi >= self.lo(a) && xi <= self.hi(a))
    }

    pub fn contains_cylinder(&self, other: &Cylinder) -> bool {
        other.spatial_dim() == self.spatial_dim()
            && other.t1 >= self.t1
            && other.t2 <= self.t2
            && (0..self.spatial_dim())
                .all(|a| other.lo(a) >= self.lo(a) && other.hi(a) <= self.hi(a))
    }

    /// Intersection, or None when it has empty interior.
    pub fn intersect(&self, other: &Cylinder) -> Option<Cylinder> {
        if other.spatial_dim() != self.spatial_dim() {
            return None;
        }
        let t1 = self.t1.max(other.t1);
        let t2 = self.t2.min(other.t2);
        if !(t1 < t2) {
            return None;
        }
        let mut center = Vec::new();
        let mut half = Vec::new();
        for a in 0..self.spatial_dim() {
            let lo = self.lo(a).max(other.lo(a));
            let hi = self.hi(a).min(other.hi(a));
            if !(lo < hi) {
                return None;
            }
            center.push(0.5 * (lo + hi));
            half.push(0.5 * (hi - lo));
        }
        Some(Cylinder { center, half_widths: half, t1, t2 })
    }
}
