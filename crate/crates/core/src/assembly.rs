//! Collocation of the boundary integral equation
//!
//! ```text
//! c·u_k + Σ_j H[k,j]·u_j = Σ_j G[k,j]·q_j
//! ```
//!
//! at every boundary node `k`. `H` integrates the normal derivative of the
//! fundamental solution against the linear basis, `G` the fundamental solution
//! itself. Assembly runs element by element: element `i` adds into columns `i`
//! and `i + 1` (mod n).
//!
//! When node `k` is an endpoint of element `i` the `H` integrand vanishes
//! identically (the chord is orthogonal to its own normal), so those
//! contributions are exactly zero. The matching `G` integrals are weakly
//! singular and come from [`singular_g_pair`].

use log::warn;
use rayon::prelude::*;

use crate::error::{BemError, Result};
use crate::geometry::{BoundaryMesh, Point2};
use crate::kernels::{fundamental_solution, normal_flux};
use crate::linalg::DenseMatrix;
use crate::problems::TestProblem;
use crate::quadrature::{basis, singular_g_pair, QuadratureRule};
use crate::scalar::Real;

/// Distance below which a source is treated as sitting on an element endpoint.
pub const SNAP_TOLERANCE: f64 = 1e-12;

/// Boundary free-term coefficient of the uniform inscribed `n`-gon,
/// `(n − 2)/(2n)`: the interior angle over `2π`.
pub fn free_term<T: Real>(n: usize) -> Result<T> {
    if n < 3 {
        return Err(BemError::InvalidMesh(format!(
            "free term needs n >= 3, got {n}"
        )));
    }
    Ok(T::from_count(n - 2) / T::from_count(2 * n))
}

/// Integrates `kernel(field) · β(t) · L/2` over element `i` for both basis
/// functions with the regular rule.
fn regular_pair<T: Real, K>(
    mesh: &BoundaryMesh<T>,
    i: usize,
    rule: &QuadratureRule<T>,
    kernel: K,
) -> Result<(T, T)>
where
    K: Fn(Point2<T>) -> Result<T>,
{
    let jac = mesh.element_jacobian(i)?;
    let mut start = T::zero();
    let mut end = T::zero();
    for (t, w) in rule.iter() {
        let v = kernel(mesh.chord_point(i, t))?;
        if !v.is_finite() {
            return Err(BemError::Integration(t.to_f64_lossy()));
        }
        let [b1, b2] = basis(t);
        start = start + w * v * b1;
        end = end + w * v * b2;
    }
    Ok((start * jac, end * jac))
}

fn check_near_singular<T: Real>(mesh: &BoundaryMesh<T>, i: usize, source: Point2<T>) {
    let d = mesh.distance_to_element(i, source);
    if d <= T::lit(SNAP_TOLERANCE) {
        warn!(
            "source ({}, {}) lies on element {i}; regular quadrature is inaccurate there",
            source.x, source.y
        );
    }
}

fn snapped<T: Real>(a: Point2<T>, b: Point2<T>) -> bool {
    a.distance(b) <= T::lit(SNAP_TOLERANCE)
}

/// `H` contributions of element `i` into columns `i` and `i + 1` for a
/// collocation point `source`.
///
/// A source on an endpoint of the element yields exact zeros.
pub fn element_h_contributions<T: Real>(
    mesh: &BoundaryMesh<T>,
    i: usize,
    source: Point2<T>,
    rule: &QuadratureRule<T>,
) -> Result<(T, T)> {
    let normal = mesh.element_normal(i)?;
    let (a, b) = mesh.endpoints(i);
    if snapped(source, a) || snapped(source, b) {
        return Ok((T::zero(), T::zero()));
    }
    check_near_singular(mesh, i, source);
    regular_pair(mesh, i, rule, |p| normal_flux(p, source, normal))
}

/// `G` contributions of element `i` into columns `i` and `i + 1`.
///
/// A source on an endpoint switches to the closed-form singular integrals;
/// the basis function that peaks at that endpoint receives the `near` value.
pub fn element_g_contributions<T: Real>(
    mesh: &BoundaryMesh<T>,
    i: usize,
    source: Point2<T>,
    rule: &QuadratureRule<T>,
) -> Result<(T, T)> {
    let (a, b) = mesh.endpoints(i);
    if snapped(source, a) {
        return singular_g_pair(mesh.element_length(i));
    }
    if snapped(source, b) {
        let (near, far) = singular_g_pair(mesh.element_length(i))?;
        return Ok((far, near));
    }
    mesh.element_jacobian(i)?;
    regular_pair(mesh, i, rule, |p| fundamental_solution(p, source))
}

/// Assembled influence matrices and Dirichlet data for one mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct BemSystem<T> {
    pub mesh: BoundaryMesh<T>,
    pub h: DenseMatrix<T>,
    pub g: DenseMatrix<T>,
    /// Boundary free-term coefficient.
    pub c: T,
    pub u_nodes: Vec<T>,
    /// Per row, the two elements whose `H` contributions were zeroed.
    pub zeroed_h: Vec<[usize; 2]>,
}

impl<T: Real> BemSystem<T> {
    pub fn n(&self) -> usize {
        self.u_nodes.len()
    }

    /// Right-hand side `c·u + H·u` of `G·q = c·u + H·u`.
    pub fn rhs(&self) -> Vec<T> {
        self.h
            .mul_vec(&self.u_nodes)
            .expect("H is n x n")
            .into_iter()
            .zip(&self.u_nodes)
            .map(|(hu, &u)| self.c * u + hu)
            .collect()
    }

    /// `max_k |c + Σ_j H[k,j]|`, which vanishes for exact integration.
    pub fn row_identity_residual(&self) -> T {
        (0..self.h.rows())
            .map(|k| (self.c + self.h.row(k).iter().copied().sum::<T>()).abs())
            .fold(T::zero(), T::max)
    }

    /// Same matrices with different Dirichlet data.
    pub fn with_boundary_data(&self, u_nodes: Vec<T>) -> Result<Self> {
        if u_nodes.len() != self.n() {
            return Err(BemError::Dimension {
                expected: self.n(),
                got: u_nodes.len(),
            });
        }
        Ok(Self {
            u_nodes,
            ..self.clone()
        })
    }
}

/// Assembles the system for a test problem's Dirichlet data.
pub fn assemble<T: Real>(
    mesh: &BoundaryMesh<T>,
    problem: TestProblem,
    rule: &QuadratureRule<T>,
) -> Result<BemSystem<T>> {
    let u_nodes = mesh.nodes().iter().map(|&p| problem.u(p)).collect();
    assemble_with_data(mesh, u_nodes, rule)
}

/// Assembles the system for arbitrary nodal Dirichlet values.
///
/// Rows are computed in parallel; each row sums its elements in ascending
/// order so the result does not depend on the thread count.
pub fn assemble_with_data<T: Real>(
    mesh: &BoundaryMesh<T>,
    u_nodes: Vec<T>,
    rule: &QuadratureRule<T>,
) -> Result<BemSystem<T>> {
    let n = mesh.len();
    if !mesh.is_uniform_circle() {
        return Err(BemError::UnsupportedMesh(
            "the free-term coefficient is only known for the uniform circle polygon".into(),
        ));
    }
    if u_nodes.len() != n {
        return Err(BemError::Dimension {
            expected: n,
            got: u_nodes.len(),
        });
    }
    let c = free_term(n)?;
    let rows: Vec<(Vec<T>, Vec<T>)> = (0..n)
        .into_par_iter()
        .map(|k| assemble_row(mesh, k, rule))
        .collect::<Result<_>>()?;
    let (h_rows, g_rows): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let h = DenseMatrix::from_rows(h_rows, n);
    let g = DenseMatrix::from_rows(g_rows, n);
    if !h.is_finite() || !g.is_finite() {
        return Err(BemError::Integration(f64::NAN));
    }
    let zeroed_h = (0..n).map(|k| [(k + n - 1) % n, k]).collect();
    Ok(BemSystem {
        mesh: mesh.clone(),
        h,
        g,
        c,
        u_nodes,
        zeroed_h,
    })
}

fn assemble_row<T: Real>(
    mesh: &BoundaryMesh<T>,
    k: usize,
    rule: &QuadratureRule<T>,
) -> Result<(Vec<T>, Vec<T>)> {
    let n = mesh.len();
    let source = mesh.node(k);
    let mut h_row = vec![T::zero(); n];
    let mut g_row = vec![T::zero(); n];
    for i in 0..n {
        let next = (i + 1) % n;
        // singular configurations are detected by index, not by distance
        let (g_start, g_end) = if i == k {
            singular_g_pair(mesh.element_length(i))?
        } else if next == k {
            let (near, far) = singular_g_pair(mesh.element_length(i))?;
            (far, near)
        } else {
            regular_pair(mesh, i, rule, |p| fundamental_solution(p, source))?
        };
        g_row[i] = g_row[i] + g_start;
        g_row[next] = g_row[next] + g_end;

        if i == k || next == k {
            continue;
        }
        let normal = mesh.element_normal(i)?;
        let (h_start, h_end) = regular_pair(mesh, i, rule, |p| normal_flux(p, source, normal))?;
        h_row[i] = h_row[i] + h_start;
        h_row[next] = h_row[next] + h_end;
    }
    Ok((h_row, g_row))
}
