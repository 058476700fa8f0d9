//! Exact harmonic test solutions on the unit disk.
//!
//! Gradients are differentiated by hand so that the outward flux
//! `q = ∇u · (x, y)` on the unit circle is exact reference data.

use crate::error::{BemError, Result};
use crate::geometry::Point2;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestProblem {
    /// `1 + x² − y²`
    Quadratic,
    /// `e^y cos x`
    ExpCos,
    /// `1 + sin(πx) sinh(πy)`
    SinSinh,
    /// `1 − 3 cosh(4π) sin(2πx) sinh(2π(y − 2)) + csch(6π) sin(3πx) sinh(3πy)`
    SteepSinh,
    /// `π e^y cos(x − π/7) + e^{1−πx} cos(πy − π/2) + e^{5x} cos(5y − π/2)/100`
    Mixed,
    /// `u ≡ 1`, used for constant-potential identities.
    Constant,
}

/// Catalog lookup by the 1-based problem number.
pub fn get_problem(id: u32) -> Result<TestProblem> {
    TestProblem::from_id(id)
}

impl TestProblem {
    pub const ALL: [TestProblem; 5] = [
        TestProblem::Quadratic,
        TestProblem::ExpCos,
        TestProblem::SinSinh,
        TestProblem::SteepSinh,
        TestProblem::Mixed,
    ];

    pub fn from_id(id: u32) -> Result<Self> {
        match id {
            1 => Ok(Self::Quadratic),
            2 => Ok(Self::ExpCos),
            3 => Ok(Self::SinSinh),
            4 => Ok(Self::SteepSinh),
            5 => Ok(Self::Mixed),
            other => Err(BemError::UnknownProblem(other)),
        }
    }

    /// Catalog number, 0 for the constant problem.
    pub fn id(self) -> u32 {
        match self {
            Self::Quadratic => 1,
            Self::ExpCos => 2,
            Self::SinSinh => 3,
            Self::SteepSinh => 4,
            Self::Mixed => 5,
            Self::Constant => 0,
        }
    }

    pub fn u<T: Real>(self, p: Point2<T>) -> T {
        let one = T::one();
        let pi = T::PI();
        let (x, y) = (p.x, p.y);
        match self {
            Self::Quadratic => one + x * x - y * y,
            Self::ExpCos => y.exp() * x.cos(),
            Self::SinSinh => one + (pi * x).sin() * (pi * y).sinh(),
            Self::SteepSinh => {
                let two_pi = T::TAU();
                let three_pi = T::lit(3.0) * pi;
                let a = T::lit(3.0) * (T::lit(2.0) * two_pi).cosh();
                let b = (T::lit(6.0) * pi).sinh().recip();
                one - a * (two_pi * x).sin() * (two_pi * (y - T::lit(2.0))).sinh()
                    + b * (three_pi * x).sin() * (three_pi * y).sinh()
            }
            Self::Mixed => {
                let five = T::lit(5.0);
                let half_pi = T::FRAC_PI_2();
                pi * y.exp() * (x - pi / T::lit(7.0)).cos()
                    + (one - pi * x).exp() * (pi * y - half_pi).cos()
                    + (five * x).exp() / T::lit(100.0) * (five * y - half_pi).cos()
            }
            Self::Constant => one,
        }
    }

    pub fn grad_u<T: Real>(self, p: Point2<T>) -> Point2<T> {
        let pi = T::PI();
        let two = T::lit(2.0);
        let (x, y) = (p.x, p.y);
        match self {
            Self::Quadratic => Point2::new(two * x, -two * y),
            Self::ExpCos => {
                let e = y.exp();
                Point2::new(-e * x.sin(), e * x.cos())
            }
            Self::SinSinh => Point2::new(
                pi * (pi * x).cos() * (pi * y).sinh(),
                pi * (pi * x).sin() * (pi * y).cosh(),
            ),
            Self::SteepSinh => {
                let two_pi = T::TAU();
                let three_pi = T::lit(3.0) * pi;
                let a = T::lit(3.0) * (two * two_pi).cosh();
                let b = (T::lit(6.0) * pi).sinh().recip();
                let shifted = two_pi * (y - two);
                Point2::new(
                    -a * two_pi * (two_pi * x).cos() * shifted.sinh()
                        + b * three_pi * (three_pi * x).cos() * (three_pi * y).sinh(),
                    -a * two_pi * (two_pi * x).sin() * shifted.cosh()
                        + b * three_pi * (three_pi * x).sin() * (three_pi * y).cosh(),
                )
            }
            Self::Mixed => {
                let five = T::lit(5.0);
                let half_pi = T::FRAC_PI_2();
                let shift = x - pi / T::lit(7.0);
                let ey = y.exp();
                let decay = (T::one() - pi * x).exp();
                let grow = (five * x).exp() / T::lit(100.0);
                Point2::new(
                    -pi * ey * shift.sin() - pi * decay * (pi * y - half_pi).cos()
                        + five * grow * (five * y - half_pi).cos(),
                    pi * ey * shift.cos()
                        - pi * decay * (pi * y - half_pi).sin()
                        - five * grow * (five * y - half_pi).sin(),
                )
            }
            Self::Constant => Point2::new(T::zero(), T::zero()),
        }
    }

    /// Outward normal flux on the unit circle, `∇u(p) · p`.
    pub fn q<T: Real>(self, p: Point2<T>) -> T {
        self.grad_u(p).dot(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::TAU;

    fn disk_points(seed: u64, count: usize) -> Vec<Point2<f64>> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut pts = Vec::with_capacity(count);
        while pts.len() < count {
            let p = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if p.norm_sqr() < 0.98 {
                pts.push(p);
            }
        }
        pts
    }

    #[test]
    fn catalog_lookup() {
        for (k, pr) in TestProblem::ALL.iter().enumerate() {
            assert_eq!(get_problem(k as u32 + 1).unwrap(), *pr);
            assert_eq!(pr.id(), k as u32 + 1);
        }
        assert_eq!(get_problem(0), Err(BemError::UnknownProblem(0)));
        assert_eq!(get_problem(6), Err(BemError::UnknownProblem(6)));
    }

    #[test]
    fn reference_values() {
        let pr = TestProblem::Quadratic;
        assert_eq!(pr.u(Point2::new(0.0, 0.0)), 1.0);
        assert_abs_diff_eq!(pr.u(Point2::new(0.0, -0.8)), 0.36, epsilon = 1e-15);
        assert_eq!(TestProblem::ExpCos.u(Point2::new(0.0, 0.0)), 1.0);
        assert_eq!(TestProblem::Constant.u(Point2::new(0.3, 0.2)), 1.0);
    }

    #[test]
    fn quadratic_flux_on_circle() {
        for k in 0..64 {
            let th = TAU * k as f64 / 64.0;
            let p = Point2::new(th.cos(), th.sin());
            let expected = 2.0 * p.x * p.x - 2.0 * p.y * p.y;
            assert_abs_diff_eq!(TestProblem::Quadratic.q(p), expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn all_problems_are_harmonic() {
        let h = 1e-4;
        for pr in TestProblem::ALL {
            for p in disk_points(3, 50) {
                let u = |dx: f64, dy: f64| pr.u(Point2::new(p.x + dx, p.y + dy));
                let lap = (u(h, 0.0) + u(-h, 0.0) + u(0.0, h) + u(0.0, -h) - 4.0 * u(0.0, 0.0))
                    / (h * h);
                let bound = 1e-4 * (1.0 + u(0.0, 0.0).abs());
                assert!(lap.abs() <= bound, "problem {} at {p:?}: {lap}", pr.id());
            }
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let h = 1e-6;
        for pr in TestProblem::ALL {
            for p in disk_points(5, 50) {
                let u = |dx: f64, dy: f64| pr.u(Point2::new(p.x + dx, p.y + dy));
                let gx = (u(h, 0.0) - u(-h, 0.0)) / (2.0 * h);
                let gy = (u(0.0, h) - u(0.0, -h)) / (2.0 * h);
                let g = pr.grad_u(p);
                // absolute floor scaled by |u| covers cancellation in the difference quotient
                let floor = 1e-9 * (1.0 + u(0.0, 0.0).abs());
                let scale = g.norm();
                assert!((gx - g.x).abs() <= 1e-6 * scale + floor, "problem {}", pr.id());
                assert!((gy - g.y).abs() <= 1e-6 * scale + floor, "problem {}", pr.id());
            }
        }
    }

    #[test]
    fn flux_integrates_to_zero() {
        let samples = 1000;
        for pr in TestProblem::ALL {
            let mut total = 0.0;
            let mut peak: f64 = 0.0;
            for k in 0..samples {
                let th = TAU * k as f64 / samples as f64;
                let q = pr.q(Point2::new(th.cos(), th.sin()));
                total += q;
                peak = peak.max(q.abs());
            }
            total *= TAU / samples as f64;
            let tol = if pr == TestProblem::SteepSinh {
                1e-6 * peak
            } else {
                1e-6
            };
            assert!(total.abs() <= tol, "problem {}: {total}", pr.id());
        }
    }
}
