use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Line3, Point3, Vec3};

/// A plane `{ x : normal·x = offset }` with unit normal. The normal's first
/// non-zero component is positive, so set-equal planes share one
/// representation (up to rounding).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plane3<T> {
    normal: Vec3<T>,
    offset: T,
}

impl<T: Scalar> Plane3<T> {
    pub fn new(normal: Vec3<T>, offset: T) -> Result<Self> {
        if !normal.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidInput("plane has non-finite components".into()));
        }
        let n = normal.norm();
        if n <= T::zero() {
            return Err(Error::DegenerateInput("plane normal is the zero vector".into()));
        }
        Ok(Self::from_unit(normal / n, offset / n))
    }

    /// Plane `a x + b y + c z + d = 0`.
    pub fn from_coeffs(a: T, b: T, c: T, d: T) -> Result<Self> {
        Self::new(Vec3::new(a, b, c), -d)
    }

    pub fn through_point(normal: Vec3<T>, point: Point3<T>) -> Result<Self> {
        Self::new(normal, normal.dot(point))
    }

    /// `unit_normal` must already have unit length.
    pub(crate) fn from_unit(unit_normal: Vec3<T>, offset: T) -> Self {
        let (normal, flipped) = unit_normal.canonical_sign(T::identity_tol());
        let offset = if flipped { -offset } else { offset };
        Self { normal, offset }
    }

    pub fn normal(&self) -> Vec3<T> {
        self.normal
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    /// Coefficients `[a, b, c, d]` of `a x + b y + c z + d = 0`.
    pub fn coeffs(&self) -> [T; 4] {
        [self.normal.x, self.normal.y, self.normal.z, -self.offset]
    }

    /// Point of the plane closest to the origin.
    pub fn point(&self) -> Point3<T> {
        self.normal * self.offset
    }

    pub fn signed_distance(&self, p: Point3<T>) -> T {
        self.normal.dot(p) - self.offset
    }

    pub fn distance(&self, p: Point3<T>) -> T {
        self.signed_distance(p).abs()
    }

    pub fn contains(&self, p: Point3<T>, tol: T) -> bool {
        self.distance(p) <= tol
    }

    pub fn project(&self, p: Point3<T>) -> Point3<T> {
        p - self.normal * self.signed_distance(p)
    }

    /// Orthonormal in-plane directions `(u, v)` with `u × v = normal`.
    pub fn basis(&self) -> (Vec3<T>, Vec3<T>) {
        let u = self.normal.any_orthonormal();
        (u, self.normal.cross(u))
    }

    /// Distance used to deduplicate planes: angle between the normals plus
    /// the offset difference, minimized over the relative sign.
    pub fn dedup_distance(&self, other: &Self) -> T {
        let same = self.normal.angle(other.normal) + (self.offset - other.offset).abs();
        let flip = self.normal.angle(-other.normal) + (self.offset + other.offset).abs();
        same.min(flip)
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.dedup_distance(other) <= tol
    }

    pub fn is_parallel_to(&self, other: &Self, angular_tol: T) -> bool {
        self.normal.line_angle(other.normal) <= angular_tol
    }

    /// Reflection of a point. Points on the plane (within the identity
    /// tolerance) are returned unchanged.
    pub fn reflect_point(&self, p: Point3<T>) -> Point3<T> {
        self.reflect_point_with_tol(p, T::identity_tol())
    }

    pub fn reflect_point_with_tol(&self, p: Point3<T>, tol: T) -> Point3<T> {
        let sd = self.signed_distance(p);
        if sd.abs() < tol {
            p
        } else {
            p - self.normal * (sd + sd)
        }
    }

    /// Reflection of a free vector (direction).
    pub fn reflect_vector(&self, v: Vec3<T>) -> Vec3<T> {
        let k = v.dot(self.normal);
        v - self.normal * (k + k)
    }

    pub fn reflect_line(&self, m: &Line3<T>) -> Line3<T> {
        Line3::from_unit(self.reflect_point(m.base()), self.reflect_vector(m.dir()))
    }

    pub fn reflect_plane(&self, pi: &Plane3<T>) -> Plane3<T> {
        let n = self.reflect_vector(pi.normal());
        let p = self.reflect_point(pi.point());
        Plane3::from_unit(n, n.dot(p))
    }

    /// Perpendicular bisector plane of segment `p q`.
    pub fn bisector(p: Point3<T>, q: Point3<T>) -> Result<Self> {
        perpendicular_bisector_plane(p, q)
    }
}

/// Plane of points equidistant from `p` and `q`; reflecting `p` in it gives `q`.
pub fn perpendicular_bisector_plane<T: Scalar>(p: Point3<T>, q: Point3<T>) -> Result<Plane3<T>> {
    if !p.is_finite() || !q.is_finite() {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    if p.distance(q) <= T::coincidence_tol() {
        return Err(Error::DegenerateInput(
            "bisector of coincident points; a point fixed by the fold is an I8 incidence".into(),
        ));
    }
    let mid = (p + q) * T::lit(0.5);
    Plane3::through_point(q - p, mid)
}

/// Relative position of a line and a plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinePlaneRelation {
    Contained,
    ParallelDisjoint,
    Perpendicular,
    Oblique,
}

/// Classifies `m` against `pi` with the scalar's angular tolerance (1e-10 rad
/// for `f64`) and incidence tolerance for containment.
pub fn classify_line_plane<T: Scalar>(m: &Line3<T>, pi: &Plane3<T>) -> LinePlaneRelation {
    let ang = T::coincidence_tol();
    let s = m.dir().dot(pi.normal()).abs();
    // angle between the line and the plane
    let incl = s.min(T::one()).asin();
    if incl <= ang {
        if pi.distance(m.base()) <= T::incidence_tol() {
            LinePlaneRelation::Contained
        } else {
            LinePlaneRelation::ParallelDisjoint
        }
    } else if m.dir().line_angle(pi.normal()) <= ang {
        LinePlaneRelation::Perpendicular
    } else {
        LinePlaneRelation::Oblique
    }
}
