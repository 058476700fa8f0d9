//! Free-space Green's function of the 2D Laplacian, `w = −ln(r)/(2π)`, and its
//! gradient with respect to the field point.
//!
//! Coincident field and source points are rejected instead of producing
//! infinities. Singular element integrals are evaluated in closed form by the
//! assembly code and never reach these functions.

use crate::error::{BemError, Result};
use crate::geometry::Point2;
use crate::scalar::Real;

/// Value and field-point gradient of the fundamental solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval<T> {
    pub value: T,
    pub flux_vector: Point2<T>,
}

#[inline]
fn separation<T: Real>(field: Point2<T>, source: Point2<T>) -> Result<(Point2<T>, T)> {
    let d = field - source;
    let r2 = d.norm_sqr();
    if r2 == T::zero() {
        return Err(BemError::SingularKernel {
            x: field.x.to_f64_lossy(),
            y: field.y.to_f64_lossy(),
        });
    }
    Ok((d, r2))
}

/// `−ln(r)/(2π)` with `r = |field − source|`.
pub fn fundamental_solution<T: Real>(field: Point2<T>, source: Point2<T>) -> Result<T> {
    let (_, r2) = separation(field, source)?;
    // ln r = ln(r²)/2
    Ok(-r2.ln() / (T::lit(4.0) * T::PI()))
}

/// Gradient of the fundamental solution with respect to the field point,
/// `−(field − source) / (2π r²)`.
pub fn fundamental_flux<T: Real>(field: Point2<T>, source: Point2<T>) -> Result<Point2<T>> {
    let (d, r2) = separation(field, source)?;
    let scale = -(T::TAU() * r2).recip();
    Ok(d * scale)
}

/// Normal derivative `∂w/∂n` at the field point.
pub fn normal_flux<T: Real>(field: Point2<T>, source: Point2<T>, normal: Point2<T>) -> Result<T> {
    Ok(fundamental_flux(field, source)?.dot(normal))
}

/// Value and gradient in one pass.
pub fn evaluate<T: Real>(field: Point2<T>, source: Point2<T>) -> Result<KernelEval<T>> {
    let (d, r2) = separation(field, source)?;
    Ok(KernelEval {
        value: -r2.ln() / (T::lit(4.0) * T::PI()),
        flux_vector: d * -(T::TAU() * r2).recip(),
    })
}
