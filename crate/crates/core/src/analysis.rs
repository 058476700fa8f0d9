//! Error statistics and convergence studies.

use std::time::Instant;

use rayon::prelude::*;

use crate::assembly::assemble;
use crate::error::{BemError, Result};
use crate::geometry::{BoundaryMesh, InteriorGrid};
use crate::problems::TestProblem;
use crate::quadrature::QuadratureRule;
use crate::scalar::Real;
use crate::solver::{evaluate_field, solve_flux, BoundarySolution, FieldReport, REL_EXCLUSION};

/// Maximum and mean of the absolute and relative error magnitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats<T> {
    pub max_abs: T,
    pub max_rel: T,
    pub mean_abs: T,
    pub mean_rel: T,
    pub n_points: usize,
    /// Points whose exact value was too small for a relative error.
    pub n_rel_excluded: usize,
}

impl<T: Real> ErrorStats<T> {
    fn from_columns(abs_err: &[T], rel_err: &[Option<T>]) -> Result<Self> {
        if abs_err.is_empty() {
            return Err(BemError::EmptyInput("error statistics need at least one point"));
        }
        let (max_abs, mean_abs) = max_mean(abs_err.iter().copied());
        let rel: Vec<T> = rel_err.iter().flatten().copied().collect();
        let (max_rel, mean_rel) = if rel.is_empty() {
            (T::zero(), T::zero())
        } else {
            max_mean(rel.iter().copied())
        };
        Ok(Self {
            max_abs,
            max_rel,
            mean_abs,
            mean_rel,
            n_points: abs_err.len(),
            n_rel_excluded: abs_err.len() - rel.len(),
        })
    }
}

fn max_mean<T: Real>(values: impl Iterator<Item = T>) -> (T, T) {
    let (max, sum, count) = values.fold((T::zero(), T::zero(), 0usize), |(m, s, c), v| {
        (m.max(v), s + v, c + 1)
    });
    (max, sum / T::from_count(count))
}

/// Interior error statistics of a field report.
pub fn error_stats<T: Real>(report: &FieldReport<T>) -> Result<ErrorStats<T>> {
    ErrorStats::from_columns(&report.abs_err, &report.rel_err)
}

/// Error statistics of the solved boundary flux against the exact flux at the
/// nodes.
pub fn flux_error_stats<T: Real>(
    solution: &BoundarySolution<T>,
    problem: TestProblem,
) -> Result<ErrorStats<T>> {
    let floor = T::lit(REL_EXCLUSION);
    let (abs_err, rel_err): (Vec<T>, Vec<Option<T>>) = solution
        .mesh
        .nodes()
        .iter()
        .zip(&solution.q_nodes)
        .map(|(&p, &q)| {
            let exact = problem.q(p);
            let err = (q - exact).abs();
            (err, (exact.abs() >= floor).then(|| err / exact.abs()))
        })
        .unzip();
    ErrorStats::from_columns(&abs_err, &rel_err)
}

/// Full pipeline output for one boundary resolution.
#[derive(Debug, Clone)]
pub struct RunOutput<T> {
    pub solution: BoundarySolution<T>,
    pub report: FieldReport<T>,
    pub interior: ErrorStats<T>,
    pub flux: ErrorStats<T>,
    /// Seconds spent in assembly, solve and interior evaluation.
    pub wall_time_s: f64,
}

/// Assemble, solve and evaluate on `grid` for an `n`-node circle mesh.
pub fn run_pipeline<T: Real>(
    problem: TestProblem,
    n: usize,
    grid: &InteriorGrid<T>,
    rule: &QuadratureRule<T>,
) -> Result<RunOutput<T>> {
    let start = Instant::now();
    let mesh = BoundaryMesh::circle(n)?;
    let system = assemble(&mesh, problem, rule)?;
    let solution = solve_flux(&system)?;
    let report = evaluate_field(&solution, grid, problem, rule)?;
    let elapsed = start.elapsed().as_secs_f64();
    let interior = error_stats(&report)?;
    let flux = flux_error_stats(&solution, problem)?;
    Ok(RunOutput {
        solution,
        report,
        interior,
        flux,
        wall_time_s: (elapsed * 1e3).round() / 1e3,
    })
}

#[derive(Debug, Clone)]
pub struct ConvergenceRow<T> {
    pub n: usize,
    pub result: Result<(ErrorStats<T>, f64)>,
}

impl<T: Real> ConvergenceRow<T> {
    pub fn stats(&self) -> Option<&ErrorStats<T>> {
        self.result.as_ref().ok().map(|(s, _)| s)
    }
}

/// Interior error statistics for each `n` on a common `m × m` grid, sorted by
/// `n`. A failing row keeps its error and does not stop the others.
pub fn convergence_study<T: Real>(
    problem: TestProblem,
    n_list: &[usize],
    m: usize,
    rule: &QuadratureRule<T>,
) -> Result<Vec<ConvergenceRow<T>>> {
    if n_list.is_empty() {
        return Err(BemError::EmptyInput("convergence study needs at least one n"));
    }
    let grid = InteriorGrid::new(m)?;
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    // rows run one after another so wall times are not inflated by contention
    let rows = ns
        .into_iter()
        .map(|n| ConvergenceRow {
            n,
            result: run_pipeline(problem, n, &grid, rule).map(|out| (out.interior, out.wall_time_s)),
        })
        .collect();
    Ok(rows)
}

/// Observed order `ln(e_prev / e_next) / ln(n_next / n_prev)` of the interior
/// `max_abs` between successive rows.
pub fn empirical_orders<T: Real>(rows: &[ConvergenceRow<T>]) -> Vec<Option<f64>> {
    rows.windows(2)
        .map(|w| {
            let (a, b) = (w[0].stats()?, w[1].stats()?);
            let ratio = a.max_abs.to_f64_lossy() / b.max_abs.to_f64_lossy();
            let steps = (w[1].n as f64 / w[0].n as f64).ln();
            (ratio.is_finite() && ratio > 0.0 && steps > 0.0).then(|| ratio.ln() / steps)
        })
        .collect()
}

/// Independent per-row computation for callers that prefer parallel rows;
/// output stays ordered by `n`.
pub fn convergence_study_parallel<T: Real>(
    problem: TestProblem,
    n_list: &[usize],
    m: usize,
    rule: &QuadratureRule<T>,
) -> Result<Vec<ConvergenceRow<T>>> {
    if n_list.is_empty() {
        return Err(BemError::EmptyInput("convergence study needs at least one n"));
    }
    let grid = InteriorGrid::new(m)?;
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    Ok(ns
        .into_par_iter()
        .map(|n| ConvergenceRow {
            n,
            result: run_pipeline(problem, n, &grid, rule).map(|out| (out.interior, out.wall_time_s)),
        })
        .collect())
}
