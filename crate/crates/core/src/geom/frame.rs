use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::plane::{classify_line_plane, LinePlaneRelation};
use super::{Line3, Plane3, Point3, Vec3};

/// Proper rigid motion `x ↦ R x + t`.
///
/// The canonical-frame constructors below return the motion taking scene
/// coordinates to the coordinates in which each incidence has its textbook
/// placement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RigidFrame<T> {
    rotation: [[T; 3]; 3],
    translation: Vec3<T>,
}

impl<T: Scalar> RigidFrame<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self {
            rotation: [[o, z, z], [z, o, z], [z, z, o]],
            translation: Vec3::zero(),
        }
    }

    /// Validates `R Rᵀ = I` and `det R = +1` within 1e-10 (scaled for `f32`).
    pub fn new(rotation: [[T; 3]; 3], translation: Vec3<T>) -> Result<Self> {
        let tol = T::coincidence_tol();
        for i in 0..3 {
            for j in 0..3 {
                let dot: T = (0..3).map(|k| rotation[i][k] * rotation[j][k]).sum();
                let expect = if i == j { T::one() } else { T::zero() };
                if (dot - expect).abs() > tol {
                    return Err(Error::InvalidInput("rotation is not orthonormal".into()));
                }
            }
        }
        let frame = Self { rotation, translation };
        if (frame.determinant() - T::one()).abs() > tol {
            return Err(Error::InvalidInput("rotation is not proper (det != +1)".into()));
        }
        if !translation.is_finite() {
            return Err(Error::InvalidInput("non-finite translation".into()));
        }
        Ok(frame)
    }

    /// Frame whose canonical axes are `ex, ey, ez` (orthonormal, right-handed)
    /// and whose canonical origin sits at `origin` in scene coordinates.
    pub(crate) fn from_axes(ex: Vec3<T>, ey: Vec3<T>, ez: Vec3<T>, origin: Point3<T>) -> Self {
        let rotation = [ex.to_array(), ey.to_array(), ez.to_array()];
        let mut f = Self {
            rotation,
            translation: Vec3::zero(),
        };
        f.translation = -f.apply_vector(origin);
        f
    }

    /// Rotation about the z axis by `angle` (active, counter-clockwise).
    pub fn rotation_z(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let (o, z) = (T::one(), T::zero());
        Self {
            rotation: [[c, -s, z], [s, c, z], [z, z, o]],
            translation: Vec3::zero(),
        }
    }

    /// Rotation about the x axis by `angle` (active, counter-clockwise).
    pub fn rotation_x(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let (o, z) = (T::one(), T::zero());
        Self {
            rotation: [[o, z, z], [z, c, -s], [z, s, c]],
            translation: Vec3::zero(),
        }
    }

    /// Rotation by `angle` about `axis` (Rodrigues) followed by `translation`.
    pub fn from_axis_angle(axis: Vec3<T>, angle: T, translation: Vec3<T>) -> Result<Self> {
        let k = axis
            .normalized()
            .ok_or_else(|| Error::DegenerateInput("zero rotation axis".into()))?;
        let (s, c) = angle.sin_cos();
        let v = T::one() - c;
        let rotation = [
            [c + k.x * k.x * v, k.x * k.y * v - k.z * s, k.x * k.z * v + k.y * s],
            [k.y * k.x * v + k.z * s, c + k.y * k.y * v, k.y * k.z * v - k.x * s],
            [k.z * k.x * v - k.y * s, k.z * k.y * v + k.x * s, c + k.z * k.z * v],
        ];
        Self::new(rotation, translation)
    }

    pub fn rotation(&self) -> [[T; 3]; 3] {
        self.rotation
    }

    pub fn translation(&self) -> Vec3<T> {
        self.translation
    }

    pub fn determinant(&self) -> T {
        let r = &self.rotation;
        Vec3::from_array(r[0]).dot(Vec3::from_array(r[1]).cross(Vec3::from_array(r[2])))
    }

    pub fn apply_vector(&self, v: Vec3<T>) -> Vec3<T> {
        let r = &self.rotation;
        Vec3::new(
            Vec3::from_array(r[0]).dot(v),
            Vec3::from_array(r[1]).dot(v),
            Vec3::from_array(r[2]).dot(v),
        )
    }

    /// `Rᵀ v`.
    pub fn apply_vector_inverse(&self, v: Vec3<T>) -> Vec3<T> {
        let r = &self.rotation;
        Vec3::from_array(r[0]) * v.x + Vec3::from_array(r[1]) * v.y + Vec3::from_array(r[2]) * v.z
    }

    pub fn apply_point(&self, p: Point3<T>) -> Point3<T> {
        self.apply_vector(p) + self.translation
    }

    pub fn apply_point_inverse(&self, p: Point3<T>) -> Point3<T> {
        self.apply_vector_inverse(p - self.translation)
    }

    pub fn apply_line(&self, m: &Line3<T>) -> Line3<T> {
        Line3::from_unit(self.apply_point(m.base()), self.apply_vector(m.dir()))
    }

    pub fn apply_plane(&self, pi: &Plane3<T>) -> Plane3<T> {
        let n = self.apply_vector(pi.normal());
        Plane3::from_unit(n, pi.offset() + n.dot(self.translation))
    }

    pub fn inverse(&self) -> Self {
        let r = &self.rotation;
        let rotation = [
            [r[0][0], r[1][0], r[2][0]],
            [r[0][1], r[1][1], r[2][1]],
            [r[0][2], r[1][2], r[2][2]],
        ];
        let mut inv = Self {
            rotation,
            translation: Vec3::zero(),
        };
        inv.translation = -inv.apply_vector(self.translation);
        inv
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let mut rotation = [[T::zero(); 3]; 3];
        for (i, row) in rotation.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.rotation[i][k] * other.rotation[k][j]).sum();
            }
        }
        Self {
            rotation,
            translation: self.apply_point(other.translation),
        }
    }
}

/// Frame placing `p` at `(0, 0, h)` and `m` through `(0, 0, -h)` parallel to
/// the y axis, where `2h` is the distance from `p` to `m`.
pub fn canonical_frame_point_line<T: Scalar>(p: Point3<T>, m: &Line3<T>) -> Result<RigidFrame<T>> {
    let foot = m.closest_point(p);
    let ez = (p - foot)
        .normalized()
        .filter(|_| p.distance(foot) > T::coincidence_tol())
        .ok_or_else(|| Error::DegenerateInput("point lies on the line".into()))?;
    let ey = m.dir();
    let ex = ey.cross(ez);
    Ok(RigidFrame::from_axes(ex, ey, ez, (p + foot) * T::lit(0.5)))
}

/// Frame placing `p` at `(0, 0, h)` and `pi` at `z = -h`.
pub fn canonical_frame_point_plane<T: Scalar>(
    p: Point3<T>,
    pi: &Plane3<T>,
) -> Result<RigidFrame<T>> {
    let sd = pi.signed_distance(p);
    if sd.abs() <= T::coincidence_tol() {
        return Err(Error::DegenerateInput("point lies on the plane".into()));
    }
    let ez = if sd > T::zero() { pi.normal() } else { -pi.normal() };
    let ex = ez.any_orthonormal();
    let ey = ez.cross(ex);
    Ok(RigidFrame::from_axes(ex, ey, ez, (p + pi.project(p)) * T::lit(0.5)))
}

/// Frame for a line and a plane.
///
/// Oblique (including perpendicular): the intersection point goes to the
/// origin, `pi` becomes `z = 0` and `m` lies in the yz plane with direction
/// `(0, sin θ, cos θ)`, `0 ≤ θ < π/2`.
///
/// Parallel: `m` goes through `(0, 0, h)` parallel to the y axis and `pi`
/// becomes `z = -h`.
pub fn canonical_frame_line_plane<T: Scalar>(
    m: &Line3<T>,
    pi: &Plane3<T>,
) -> Result<RigidFrame<T>> {
    match classify_line_plane(m, pi) {
        LinePlaneRelation::Contained => Err(Error::DegenerateInput("line lies in the plane".into())),
        LinePlaneRelation::ParallelDisjoint => {
            let p = m.base();
            let ez = if pi.signed_distance(p) > T::zero() {
                pi.normal()
            } else {
                -pi.normal()
            };
            let ey = (m.dir() - ez * m.dir().dot(ez)).normalized().unwrap_or(m.dir());
            let ex = ey.cross(ez);
            Ok(RigidFrame::from_axes(ex, ey, ez, (p + pi.project(p)) * T::lit(0.5)))
        }
        LinePlaneRelation::Perpendicular | LinePlaneRelation::Oblique => {
            let ez = pi.normal();
            let dir = if m.dir().dot(ez) < T::zero() { -m.dir() } else { m.dir() };
            let along = m.base().dot(ez);
            let t = (pi.offset() - along) / dir.dot(ez);
            let origin = m.base() + dir * t;
            let ey = (dir - ez * dir.dot(ez))
                .normalized()
                .filter(|v| v.dot(dir).abs() > T::coincidence_tol())
                .unwrap_or_else(|| ez.any_orthonormal());
            let ex = ey.cross(ez);
            Ok(RigidFrame::from_axes(ex, ey, ez, origin))
        }
    }
}

/// Frame for two non-intersecting lines: `m` through `(0, 0, h)` parallel to
/// the y axis and `n` in the plane `z = -h` through `(0, 0, -h)`, where `2h`
/// is the distance between the lines.
pub fn canonical_frame_lines<T: Scalar>(m: &Line3<T>, n: &Line3<T>) -> Result<RigidFrame<T>> {
    let (on_m, on_n) = match m.closest_points(n) {
        Some(pair) => pair,
        None => (m.base(), n.closest_point(m.base())),
    };
    let ez = (on_m - on_n)
        .normalized()
        .filter(|_| on_m.distance(on_n) > T::coincidence_tol())
        .ok_or_else(|| Error::DegenerateInput("lines intersect".into()))?;
    let ey = m.dir();
    let ex = ey.cross(ez);
    Ok(RigidFrame::from_axes(ex, ey, ez, (on_m + on_n) * T::lit(0.5)))
}
