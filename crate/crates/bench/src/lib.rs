//! Shared fixtures for the kernel benchmarks.

use slowdiff::evolve::{EvolutionProblem, Geometry};
use slowdiff::exact::BarenblattSpec;
use slowdiff::field::ScalarField;
use slowdiff::grid::Grid;
use slowdiff::params::{Equation, MediumParams};

/// Barenblatt slice evolution problem on [-4, 4], t from 0.5.
pub fn barenblatt_problem(nodes: usize, t_end: f64) -> EvolutionProblem {
    let params = MediumParams::p_laplace(3.0, 1).unwrap();
    let spec = BarenblattSpec::new(params, 1.0).unwrap();
    let h = 8.0 / (nodes as f64 - 1.0);
    let initial: Vec<f64> = (0..nodes).map(|i| spec.eval(&[-4.0 + i as f64 * h], 0.5)).collect();
    EvolutionProblem::new(
        params,
        Equation::PLaplace,
        Geometry::Interval { a: -4.0, b: 4.0 },
        initial,
        0.5,
        (t_end - 0.5) / 8.0,
        8,
    )
}

/// Oscillatory corpus field for the infimal-convolution benchmarks.
pub fn corpus_field(nx: usize, nt: usize) -> ScalarField {
    let grid = Grid::interval(-1.0, 1.0, nx, 0.0, 1.0 / nt as f64, nt).unwrap();
    ScalarField::from_fn(grid, None, |x, t| {
        x[0].abs() + 0.5 * (3.0 * t).sin().abs() + 0.3 * x[0] * x[0]
    })
}
