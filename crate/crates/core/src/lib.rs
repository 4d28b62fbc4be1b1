//! Numerical laboratory for slow-diffusion equations: the evolutionary
//! p-Laplace equation (p > 2) and the porous medium equation (m > 1).
//!
//! The crate provides
//!
//! - grids, sampled space-time fields and cylinder regions ([`grid`], [`field`]),
//! - closed-form evaluators for the Barenblatt source solution and the
//!   separable blow-up solutions ([`exact`], [`pme`]),
//! - variational solvers and first-integral oracles for the nonlinear
//!   eigenfunctions behind the separable solutions ([`eigen`]),
//! - monotone explicit finite-difference evolution, including the
//!   ring boundary-value probe ([`evolve`]),
//! - space-time infimal convolution ([`infconv`]),
//! - summability classification, blow-up detection, Harnack and
//!   Caccioppoli checks ([`diagnostics`]).
//!
//! All operations are deterministic: random sampling is seeded per call and
//! nothing runs concurrently behind the caller's back.

pub mod diagnostics;
pub mod eigen;
pub mod error;
pub mod evolve;
pub mod exact;
pub mod field;
pub mod grid;
pub mod infconv;
pub mod params;
pub mod pme;
pub mod quadrature;

pub use error::{Error, Result};
pub use field::{FnField, ScalarField, SpaceTimeField};
pub use grid::{Cylinder, Grid, GridKind};
pub use params::{derived_constants, DerivedConstants, Equation, ExponentSet, MediumParams};
