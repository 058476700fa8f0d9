//! Boundary flux solve and interior evaluation of the representation formula
//! `u(p) = Σ G(p)·q − Σ H(p)·u` (free term one inside the domain).

use rayon::prelude::*;

use crate::assembly::{element_g_contributions, element_h_contributions, BemSystem};
use crate::error::{BemError, Result};
use crate::geometry::{BoundaryMesh, InteriorGrid, Point2};
use crate::linalg::LuFactors;
use crate::problems::TestProblem;
use crate::quadrature::QuadratureRule;
use crate::scalar::Real;

/// Exact values below this magnitude are left out of relative errors.
pub const REL_EXCLUSION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySolution<T> {
    pub mesh: BoundaryMesh<T>,
    pub u_nodes: Vec<T>,
    pub q_nodes: Vec<T>,
    /// Smallest pivot of the factorization of `G`.
    pub min_pivot: T,
    /// `‖G·q − rhs‖∞ / ‖rhs‖∞`, zero when the right-hand side vanishes.
    pub relative_residual: T,
}

impl<T: Real> BoundarySolution<T> {
    /// Trapezoidal `∮ q ds` along the polygon.
    pub fn flux_balance(&self) -> T {
        let n = self.q_nodes.len();
        (0..n)
            .map(|i| {
                self.mesh.element_length(i) * T::lit(0.5) * (self.q_nodes[i] + self.q_nodes[(i + 1) % n])
            })
            .sum()
    }
}

/// Solves `G·q = c·u + H·u` by LU with partial pivoting.
pub fn solve_flux<T: Real>(system: &BemSystem<T>) -> Result<BoundarySolution<T>> {
    let lu: LuFactors<T> = system.g.lu()?;
    let rhs = system.rhs();
    let q = lu.solve(&rhs)?;
    if q.iter().any(|v| !v.is_finite()) {
        return Err(BemError::SolveFailure {
            pivot: lu.min_pivot().to_f64_lossy(),
            column: 0,
        });
    }
    let gq = system.g.mul_vec(&q)?;
    let res = crate::linalg::max_abs_diff(&gq, &rhs);
    let scale = crate::linalg::max_norm(&rhs);
    let relative_residual = if scale > T::zero() { res / scale } else { res };
    Ok(BoundarySolution {
        mesh: system.mesh.clone(),
        u_nodes: system.u_nodes.clone(),
        q_nodes: q,
        min_pivot: lu.min_pivot(),
        relative_residual,
    })
}

/// Interior value plus a flag for points closer to the unit circle than half
/// an element length, where the regular rule loses accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorValue<T> {
    pub value: T,
    pub near_boundary: bool,
}

pub fn evaluate_interior<T: Real>(
    solution: &BoundarySolution<T>,
    point: Point2<T>,
    rule: &QuadratureRule<T>,
) -> Result<InteriorValue<T>> {
    if !(point.norm_sqr() < T::one()) {
        return Err(BemError::OutOfDomain {
            x: point.x.to_f64_lossy(),
            y: point.y.to_f64_lossy(),
        });
    }
    let mesh = &solution.mesh;
    let n = mesh.len();
    let u = &solution.u_nodes;
    let q = &solution.q_nodes;
    let mut single = T::zero();
    let mut double = T::zero();
    for i in 0..n {
        let next = (i + 1) % n;
        let (g1, g2) = element_g_contributions(mesh, i, point, rule)?;
        let (h1, h2) = element_h_contributions(mesh, i, point, rule)?;
        single = single + g1 * q[i] + g2 * q[next];
        double = double + h1 * u[i] + h2 * u[next];
    }
    let half_len = mesh.element_length(0) * T::lit(0.5);
    Ok(InteriorValue {
        value: single - double,
        near_boundary: T::one() - point.norm() < half_len,
    })
}

/// Per-point comparison of BEM and exact interior values.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldReport<T> {
    pub points: Vec<Point2<T>>,
    pub u_bem: Vec<T>,
    pub u_exact: Vec<T>,
    pub abs_err: Vec<T>,
    /// `None` where `|u_exact| < 1e-12`.
    pub rel_err: Vec<Option<T>>,
    pub near_boundary: Vec<bool>,
}

impl<T: Real> FieldReport<T> {
    /// Builds the error columns from BEM and exact values.
    pub fn from_values(points: Vec<Point2<T>>, u_bem: Vec<T>, u_exact: Vec<T>) -> Result<Self> {
        let n = points.len();
        for len in [u_bem.len(), u_exact.len()] {
            if len != n {
                return Err(BemError::Dimension { expected: n, got: len });
            }
        }
        let abs_err = u_bem.iter().zip(&u_exact).map(|(&b, &e)| (b - e).abs()).collect::<Vec<_>>();
        let rel_err = abs_err
            .iter()
            .zip(&u_exact)
            .map(|(&a, &e)| (e.abs() >= T::lit(REL_EXCLUSION)).then(|| a / e.abs()))
            .collect();
        Ok(Self {
            points,
            u_bem,
            u_exact,
            abs_err,
            rel_err,
            near_boundary: vec![false; n],
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn near_boundary_count(&self) -> usize {
        self.near_boundary.iter().filter(|&&f| f).count()
    }
}

/// Evaluates the solution at every grid point and compares with `problem`.
pub fn evaluate_field<T: Real>(
    solution: &BoundarySolution<T>,
    grid: &InteriorGrid<T>,
    problem: TestProblem,
    rule: &QuadratureRule<T>,
) -> Result<FieldReport<T>> {
    let values: Vec<InteriorValue<T>> = grid
        .points
        .par_iter()
        .map(|&p| evaluate_interior(solution, p, rule))
        .collect::<Result<_>>()?;
    let u_bem = values.iter().map(|v| v.value).collect();
    let u_exact = grid.points.iter().map(|&p| problem.u(p)).collect();
    let mut report = FieldReport::from_values(grid.points.clone(), u_bem, u_exact)?;
    report.near_boundary = values.iter().map(|v| v.near_boundary).collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::assemble;
    use approx::assert_abs_diff_eq;

    fn solve(n: usize, problem: TestProblem) -> (BoundarySolution<f64>, QuadratureRule<f64>) {
        let rule = QuadratureRule::gauss_legendre(8).unwrap();
        let mesh = BoundaryMesh::circle(n).unwrap();
        let sys = assemble(&mesh, problem, &rule).unwrap();
        (solve_flux(&sys).unwrap(), rule)
    }

    #[test]
    fn quadratic_flux_at_positive_axis() {
        let (sol, _) = solve(30, TestProblem::Quadratic);
        assert_abs_diff_eq!(sol.q_nodes[29], 2.0, epsilon = 0.05);
        assert!(sol.relative_residual <= 1e-10);
    }

    #[test]
    fn constant_data_has_no_flux() {
        let (sol, rule) = solve(30, TestProblem::Constant);
        assert!(sol.q_nodes.iter().all(|q| q.abs() <= 1e-2));
        let v = evaluate_interior(&sol, Point2::new(0.2, 0.3), &rule).unwrap();
        assert_abs_diff_eq!(v.value, 1.0, epsilon = 5e-3);
    }

    #[test]
    fn flux_tracks_cos_two_theta() {
        let mut last = f64::INFINITY;
        for n in [15usize, 30, 60] {
            let (sol, _) = solve(n, TestProblem::Quadratic);
            let dev = sol
                .mesh
                .nodes()
                .iter()
                .zip(&sol.q_nodes)
                .map(|(p, q)| (q - 2.0 * (2.0 * p.y.atan2(p.x)).cos()).abs())
                .fold(0.0, f64::max);
            assert!(dev < last, "n = {n}: {dev} >= {last}");
            last = dev;
            let peak = sol.q_nodes.iter().fold(0.0f64, |m, q| m.max(q.abs()));
            assert!(sol.flux_balance().abs() <= 1e-2 * peak);
        }
    }

    #[test]
    fn interior_spot_values() {
        let (sol, rule) = solve(30, TestProblem::Quadratic);
        let at = |x: f64, y: f64| evaluate_interior(&sol, Point2::new(x, y), &rule).unwrap();
        assert_abs_diff_eq!(at(0.0, 0.0).value, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(at(0.0, -0.8).value, 0.36, epsilon = 5e-3);
        assert_abs_diff_eq!(at(-0.4, -0.4).value, 1.0, epsilon = 1e-6);
        assert!(!at(0.0, 0.0).near_boundary);
        assert!(at(0.0, 0.97).near_boundary);
    }

    #[test]
    fn out_of_domain_rejected() {
        let (sol, rule) = solve(12, TestProblem::Quadratic);
        for p in [Point2::new(1.0, 0.0), Point2::new(0.8, 0.8), Point2::new(f64::NAN, 0.0)] {
            assert!(matches!(
                evaluate_interior(&sol, p, &rule),
                Err(BemError::OutOfDomain { .. })
            ));
        }
    }

    #[test]
    fn field_report_shape() {
        let (sol, rule) = solve(30, TestProblem::Quadratic);
        let grid = InteriorGrid::new(11).unwrap();
        let report = evaluate_field(&sol, &grid, TestProblem::Quadratic, &rule).unwrap();
        assert_eq!(report.len(), 69);
        assert_eq!(report.near_boundary_count(), 0);
        for k in 0..69 {
            assert_abs_diff_eq!(report.abs_err[k], report.abs_err[68 - k], epsilon = 1e-12);
            assert_eq!(report.abs_err[k], (report.u_bem[k] - report.u_exact[k]).abs());
        }
    }

    #[test]
    fn relative_error_exclusion() {
        let pts = vec![Point2::new(0.0, 0.0), Point2::new(0.5, 0.0)];
        let r = FieldReport::from_values(pts, vec![0.1, 2.2], vec![0.0, 2.0]).unwrap();
        assert_eq!(r.rel_err[0], None);
        assert_abs_diff_eq!(r.rel_err[1].unwrap(), 0.1, epsilon = 1e-15);
        assert!(FieldReport::from_values(vec![], vec![1.0], vec![]).is_err());
    }
}
