//! Linear basis functions, Gauss–Legendre rules on `[-1, 1]`, and closed-form
//! weakly singular log-kernel integrals over straight elements.

use crate::error::{BemError, Result};
use crate::scalar::Real;

pub const MAX_ORDER: usize = 64;

/// Basis function weighting the start node of an element.
#[inline]
pub fn beta1<T: Real>(t: T) -> T {
    (T::one() - t) * T::lit(0.5)
}

/// Basis function weighting the end node of an element.
#[inline]
pub fn beta2<T: Real>(t: T) -> T {
    (T::one() + t) * T::lit(0.5)
}

/// Both linear basis functions at `t`.
#[inline]
pub fn basis<T: Real>(t: T) -> [T; 2] {
    [beta1(t), beta2(t)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    points: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    /// `k`-point Gauss–Legendre rule, `1 <= k <= 64`.
    pub fn gauss_legendre(k: usize) -> Result<Self> {
        let (points, weights) = legendre_nodes(k)?;
        Ok(Self {
            points: points.into_iter().map(T::lit).collect(),
            weights: weights.into_iter().map(T::lit).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }

    /// `Σ wᵢ f(tᵢ)`, rejecting non-finite integrand values.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> Result<T> {
        self.try_integrate(|t| Ok(f(t)))
    }

    /// As [`integrate`](Self::integrate) for fallible integrands.
    pub fn try_integrate<F: FnMut(T) -> Result<T>>(&self, mut f: F) -> Result<T> {
        let mut acc = T::zero();
        for (t, w) in self.iter() {
            let v = f(t)?;
            if !v.is_finite() {
                return Err(BemError::Integration(t.to_f64_lossy()));
            }
            acc = acc + w * v;
        }
        Ok(acc)
    }

    /// Integral over `[a, b]` by the affine map onto `[-1, 1]`.
    pub fn integrate_on<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> Result<T> {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        Ok(half * self.integrate(|t| f(mid + half * t))?)
    }
}

/// Free function form of [`QuadratureRule::gauss_legendre`].
pub fn gauss_legendre<T: Real>(k: usize) -> Result<QuadratureRule<T>> {
    QuadratureRule::gauss_legendre(k)
}

/// Free function form of [`QuadratureRule::integrate`].
pub fn integrate<T: Real, F: FnMut(T) -> T>(rule: &QuadratureRule<T>, f: F) -> Result<T> {
    rule.integrate(f)
}

/// Legendre `P_k(x)` and `P_k'(x)` by the three-term recurrence.
fn legendre(k: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=k {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if k == 0 {
        return (1.0, 0.0);
    }
    let dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes (ascending) and weights by Newton iteration on `P_k`, mirrored so the
/// rule is exactly symmetric.
fn legendre_nodes(k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(1..=MAX_ORDER).contains(&k) {
        return Err(BemError::UnsupportedOrder(k));
    }
    let mut points = vec![0.0; k];
    let mut weights = vec![0.0; k];
    let kf = k as f64;
    for i in 0..k.div_ceil(2) {
        // i-th largest root
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (kf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(k, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(k, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        if 2 * i + 1 == k {
            x = 0.0;
        }
        points[k - 1 - i] = x;
        points[i] = -x;
        weights[k - 1 - i] = w;
        weights[i] = w;
    }
    Ok((points, weights))
}

fn check_length<T: Real>(len: T) -> Result<()> {
    if !(len > T::zero()) || !len.is_finite() {
        return Err(BemError::Domain {
            name: "element length",
            value: len.to_f64_lossy(),
            domain: "(0, inf)",
        });
    }
    Ok(())
}

/// `(∫₀ᴸ ln s ds, ∫₀ᴸ s ln s ds) = (L(ln L − 1), L²(ln L − 1/2)/2)`.
pub fn singular_log_moments<T: Real>(len: T) -> Result<(T, T)> {
    check_length(len)?;
    let ln = len.ln();
    let half = T::lit(0.5);
    Ok((len * (ln - T::one()), len * len * half * (ln - half)))
}

/// Singular single-layer integrals over an element of length `L` whose
/// endpoint is the collocation node, split by basis function.
///
/// Returns `(near, far)`: `near` weights the basis function equal to one at
/// the singular node, `far` the other one.
///
/// `near = L(3/4 − ln(L)/2)/(2π)`, `far = L(1/4 − ln(L)/2)/(2π)`.
pub fn singular_g_pair<T: Real>(len: T) -> Result<(T, T)> {
    let (i0, i1) = singular_log_moments(len)?;
    let scale = -(T::TAU()).recip();
    let far = scale * i1 / len;
    let near = scale * i0 - far;
    Ok((near, far))
}
