//! Boundary element solver for the Dirichlet problem of Laplace's equation on
//! the unit disk.
//!
//! The boundary is approximated by a uniform inscribed polygon carrying
//! piecewise-linear data. Collocation at the polygon vertices gives a dense
//! system `G·q = c·u + H·u` for the unknown normal flux `q`; interior values
//! follow from the discrete representation formula.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for `f32`
//! and `f64`). The aliases at the crate root fix the scalar to `f64`.
//!
//! ```
//! use laplace_bem::{assemble, solve_flux, evaluate_interior, Mesh, Point, Rule, TestProblem};
//!
//! let mesh = Mesh::circle(30)?;
//! let rule = Rule::gauss_legendre(8)?;
//! let system = assemble(&mesh, TestProblem::Quadratic, &rule)?;
//! let solution = solve_flux(&system)?;
//! let centre = evaluate_interior(&solution, Point::new(0.0, 0.0), &rule)?;
//! assert!((centre.value - 1.0).abs() < 1e-6);
//! # Ok::<(), laplace_bem::BemError>(())
//! ```

// `!(x >= floor)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod assembly;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod linalg;
pub mod problems;
pub mod quadrature;
pub mod scalar;
pub mod solver;

pub use analysis::{
    convergence_study, convergence_study_parallel, empirical_orders, error_stats, flux_error_stats,
    run_pipeline, ConvergenceRow, ErrorStats, RunOutput,
};
pub use assembly::{
    assemble, assemble_with_data, element_g_contributions, element_h_contributions, free_term,
    BemSystem,
};
pub use error::{BemError, Result};
pub use geometry::{BoundaryMesh, InteriorGrid, Point2};
pub use kernels::{fundamental_flux, fundamental_solution, normal_flux, KernelEval};
pub use linalg::{DenseMatrix, LuFactors};
pub use problems::{get_problem, TestProblem};
pub use quadrature::{
    basis, beta1, beta2, gauss_legendre, integrate, singular_g_pair, singular_log_moments,
    QuadratureRule,
};
pub use scalar::Real;
pub use solver::{
    evaluate_field, evaluate_interior, solve_flux, BoundarySolution, FieldReport, InteriorValue,
};

pub type Point = Point2<f64>;
pub type Mesh = BoundaryMesh<f64>;
pub type Grid = InteriorGrid<f64>;
pub type Rule = QuadratureRule<f64>;
pub type System = BemSystem<f64>;
pub type Solution = BoundarySolution<f64>;
pub type Report = FieldReport<f64>;
pub type Stats = ErrorStats<f64>;
pub type Matrix = DenseMatrix<f64>;
