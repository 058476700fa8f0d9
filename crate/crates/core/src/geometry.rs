//! Boundary discretization of the unit circle and the interior sampling grid.
//!
//! Nodes are stored 0-based. Node `j` of a circle mesh sits at angle
//! `2π(j + 1)/n`, so the first stored node is the one at angle `2π/n` and the
//! last one is `(1, 0)`. Element `i` joins node `i` to node `(i + 1) % n`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{BemError, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn norm_sqr(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Self) -> T {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Converts to another scalar type.
    pub fn cast<U: Real>(self) -> Point2<U> {
        Point2::new(U::lit(self.x.to_f64_lossy()), U::lit(self.y.to_f64_lossy()))
    }
}

impl<T: Real> Add for Point2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Real> Sub for Point2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Real> Neg for Point2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<T: Real> Mul<T> for Point2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

/// Closed polygon approximating the boundary, traversed counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMesh<T> {
    nodes: Vec<Point2<T>>,
}

impl<T: Real> BoundaryMesh<T> {
    /// Inscribed uniform `n`-gon of the unit circle.
    pub fn circle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(BemError::InvalidMesh(format!(
                "need at least 3 boundary nodes, got {n}"
            )));
        }
        let two_pi = T::TAU();
        let count = T::from_count(n);
        let nodes = (1..=n)
            .map(|i| {
                let angle = two_pi * (T::from_count(i) / count);
                Point2::new(angle.cos(), angle.sin())
            })
            .collect();
        Ok(Self { nodes })
    }

    /// Arbitrary closed polygon. Nodes must be finite, pairwise distinct and
    /// ordered counterclockwise.
    pub fn from_nodes(nodes: Vec<Point2<T>>) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(BemError::InvalidMesh(format!(
                "need at least 3 boundary nodes, got {}",
                nodes.len()
            )));
        }
        if let Some(j) = nodes.iter().position(|p| !p.is_finite()) {
            return Err(BemError::InvalidMesh(format!("node {j} is not finite")));
        }
        for (a, p) in nodes.iter().enumerate() {
            if let Some(b) = nodes[a + 1..].iter().position(|q| q == p) {
                return Err(BemError::InvalidMesh(format!(
                    "nodes {a} and {} coincide",
                    a + 1 + b
                )));
            }
        }
        let mesh = Self { nodes };
        if mesh.signed_area() <= T::zero() {
            return Err(BemError::InvalidMesh(
                "nodes must be ordered counterclockwise".into(),
            ));
        }
        Ok(mesh)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Point2<T>] {
        &self.nodes
    }

    #[inline]
    pub fn node(&self, j: usize) -> Point2<T> {
        self.nodes[j % self.nodes.len()]
    }

    /// Start and end node of element `i`, with wraparound.
    #[inline]
    pub fn endpoints(&self, i: usize) -> (Point2<T>, Point2<T>) {
        (self.node(i), self.node(i + 1))
    }

    /// Shoelace area; positive for counterclockwise traversal.
    pub fn signed_area(&self) -> T {
        let half = T::lit(0.5);
        (0..self.len())
            .map(|i| {
                let (a, b) = self.endpoints(i);
                a.x * b.y - b.x * a.y
            })
            .sum::<T>()
            * half
    }

    pub fn perimeter(&self) -> T {
        (0..self.len()).map(|i| self.element_length(i)).sum()
    }

    fn check_element(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(BemError::Domain {
                name: "element index",
                value: i as f64,
                domain: "0..n",
            });
        }
        Ok(())
    }

    /// Point on the chord of element `i` at local coordinate `t ∈ [-1, 1]`.
    pub fn element_point(&self, i: usize, t: T) -> Result<Point2<T>> {
        self.check_element(i)?;
        if !(t >= -T::one() && t <= T::one()) {
            return Err(BemError::Domain {
                name: "t",
                value: t.to_f64_lossy(),
                domain: "[-1, 1]",
            });
        }
        Ok(self.chord_point(i, t))
    }

    /// Unchecked parameterization used in the quadrature loops.
    #[inline]
    pub(crate) fn chord_point(&self, i: usize, t: T) -> Point2<T> {
        let (a, b) = self.endpoints(i);
        let half = T::lit(0.5);
        Point2::new(
            t * (b.x - a.x) * half + (a.x + b.x) * half,
            t * (b.y - a.y) * half + (a.y + b.y) * half,
        )
    }

    /// Unit outward normal of element `i`: `(y₂ − y₁, x₁ − x₂) / L`.
    pub fn element_normal(&self, i: usize) -> Result<Point2<T>> {
        self.check_element(i)?;
        let (a, b) = self.endpoints(i);
        let len = a.distance(b);
        if len == T::zero() {
            return Err(BemError::DegenerateElement(i));
        }
        Ok(Point2::new((b.y - a.y) / len, (a.x - b.x) / len))
    }

    #[inline]
    pub fn element_length(&self, i: usize) -> T {
        let (a, b) = self.endpoints(i);
        a.distance(b)
    }

    /// Arc-length factor `ds/dt`, half the chord length.
    pub fn element_jacobian(&self, i: usize) -> Result<T> {
        self.check_element(i)?;
        let len = self.element_length(i);
        if len == T::zero() {
            return Err(BemError::DegenerateElement(i));
        }
        Ok(len * T::lit(0.5))
    }

    /// Euclidean distance from `p` to the closed chord of element `i`.
    pub fn distance_to_element(&self, i: usize, p: Point2<T>) -> T {
        let (a, b) = self.endpoints(i);
        let ab = b - a;
        let s = ((p - a).dot(ab) / ab.norm_sqr()).max(T::zero()).min(T::one());
        p.distance(a + ab * s)
    }

    /// Distance from `p` to the polygon.
    pub fn distance_to_boundary(&self, p: Point2<T>) -> T {
        (0..self.len())
            .map(|i| self.distance_to_element(i, p))
            .fold(T::infinity(), T::min)
    }

    /// True when every node lies on the unit circle and all chords have the
    /// same length, i.e. the mesh is a uniform inscribed polygon.
    pub fn is_uniform_circle(&self) -> bool {
        let tol = T::epsilon() * T::lit(1e3);
        let on_circle = self
            .nodes
            .iter()
            .all(|p| (p.norm() - T::one()).abs() <= tol);
        if !on_circle {
            return false;
        }
        let first = self.element_length(0);
        (1..self.len()).all(|i| (self.element_length(i) - first).abs() <= tol)
    }
}

/// Cartesian sample points strictly inside the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorGrid<T> {
    pub points: Vec<Point2<T>>,
    pub source_grid_size: usize,
}

impl<T: Real> InteriorGrid<T> {
    /// `m × m` grid on `[-1, 1]²` with spacing `2/(m − 1)`, keeping the points
    /// with `x² + y² < 1`. Rows are emitted with `y` outer and `x` inner.
    ///
    /// Membership is decided in integer arithmetic so that grid points lying
    /// exactly on the circle (e.g. `(0.6, 0.8)` for `m = 11`) are always
    /// excluded.
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(BemError::InvalidGrid(m));
        }
        let span = (m - 1) as i64;
        let denom = T::from_count(m - 1);
        let coord = |i: i64| T::from_i64(i).expect("grid index representable") / denom;
        let mut points = Vec::new();
        for j in 0..m as i64 {
            let b = 2 * j - span;
            for i in 0..m as i64 {
                let a = 2 * i - span;
                if a * a + b * b < span * span {
                    points.push(Point2::new(coord(a), coord(b)));
                }
            }
        }
        Ok(Self {
            points,
            source_grid_size: m,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
