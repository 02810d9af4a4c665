use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Point3, Vec3};

/// A line stored as its point closest to the origin plus a unit direction
/// whose first non-zero component is positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line3<T> {
    base: Point3<T>,
    dir: Vec3<T>,
}

impl<T: Scalar> Line3<T> {
    /// Line through `point` with direction `dir` (any non-zero length).
    pub fn new(point: Point3<T>, dir: Vec3<T>) -> Result<Self> {
        if !point.is_finite() || !dir.is_finite() {
            return Err(Error::InvalidInput("line has non-finite components".into()));
        }
        let unit = dir
            .normalized()
            .ok_or_else(|| Error::DegenerateInput("line direction is the zero vector".into()))?;
        Ok(Self::from_unit(point, unit))
    }

    /// Line through two distinct points.
    pub fn through(p: Point3<T>, q: Point3<T>) -> Result<Self> {
        if p.distance(q) <= T::coincidence_tol() {
            return Err(Error::DegenerateInput("line through coincident points".into()));
        }
        Self::new(p, q - p)
    }

    /// `unit_dir` must already have unit length.
    pub(crate) fn from_unit(point: Point3<T>, unit_dir: Vec3<T>) -> Self {
        let (dir, _) = unit_dir.canonical_sign(T::identity_tol());
        let base = point - dir * point.dot(dir);
        Self { base, dir }
    }

    /// Point of the line closest to the origin.
    pub fn base(&self) -> Point3<T> {
        self.base
    }

    pub fn dir(&self) -> Vec3<T> {
        self.dir
    }

    pub fn point_at(&self, t: T) -> Point3<T> {
        self.base + self.dir * t
    }

    pub fn closest_point(&self, p: Point3<T>) -> Point3<T> {
        self.point_at((p - self.base).dot(self.dir))
    }

    pub fn distance_to_point(&self, p: Point3<T>) -> T {
        (p - self.base).cross(self.dir).norm()
    }

    pub fn contains(&self, p: Point3<T>, tol: T) -> bool {
        self.distance_to_point(p) <= tol
    }

    pub fn is_parallel_to(&self, other: &Self, angular_tol: T) -> bool {
        self.dir.line_angle(other.dir) <= angular_tol
    }

    /// Shortest distance between the two lines.
    pub fn distance_to_line(&self, other: &Self) -> T {
        let c = self.dir.cross(other.dir);
        let cn = c.norm();
        if cn <= T::coincidence_tol() {
            other.distance_to_point(self.base)
        } else {
            (other.base - self.base).dot(c).abs() / cn
        }
    }

    /// Pair of closest points `(on self, on other)`, `None` for parallel lines.
    pub fn closest_points(&self, other: &Self) -> Option<(Point3<T>, Point3<T>)> {
        let d1 = self.dir;
        let d2 = other.dir;
        let b = d1.dot(d2);
        let denom = T::one() - b * b;
        if denom <= T::coincidence_tol() * T::coincidence_tol() {
            return None;
        }
        let w = self.base - other.base;
        let dd = d1.dot(w);
        let e = d2.dot(w);
        let s = (b * e - dd) / denom;
        let t = (e - b * dd) / denom;
        Some((self.point_at(s), other.point_at(t)))
    }

    /// Setwise equality: parallel directions and each base on the other line.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.dir.line_angle(other.dir) <= tol && other.distance_to_point(self.base) <= tol
    }
}
