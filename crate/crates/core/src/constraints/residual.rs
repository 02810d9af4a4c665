//! Violation measures of a candidate fold plane.
//!
//! [`Constraint::residual`] is the reporting measure: non-negative,
//! continuous, zero exactly when the incidence holds. Point incidences are
//! measured in length; line and plane incidences add an angle (radians) and
//! a distance with equal weight.
//!
//! [`Constraint::equations`] is a smooth vector with the same zero set (up to
//! a few spurious zeros filtered by the residual) that Newton-type solvers
//! drive to zero.

use crate::geom::{Plane3, Point3, Vec3};
use crate::scalar::Scalar;

use super::{Constraint, Incidence};

/// Reflection without the fixed-point branch, smooth in the plane.
fn reflect<T: Scalar>(delta: &Plane3<T>, p: Point3<T>) -> Point3<T> {
    let sd = delta.signed_distance(p);
    p - delta.normal() * (sd + sd)
}

fn push3<T: Scalar>(out: &mut Vec<T>, v: Vec3<T>) {
    out.extend_from_slice(&[v.x, v.y, v.z]);
}

impl<T: Scalar> Constraint<T> {
    /// Non-negative violation of the constraint by `delta`.
    ///
    /// * I1: distance between the image of `P` and `Q`.
    /// * I2: angle between the image of `m` and `n` plus the distance of the
    ///   image's base point from `n`.
    /// * I3: distance between the image of `m` and `n`.
    /// * I4: angle between the image of `π` and `τ` plus the offset gap.
    /// * I5 / I6: distance of the image of `P` from `m` / `π`.
    /// * I7: larger distance from `π` of the images of two points of `m`.
    /// * I8: distance of `P` from `delta`.
    /// * I9: angle between the normal of `delta` and `m`.
    /// * I10: angle between `m` and `delta` plus the distance of `m` from it.
    /// * I11: angle between `delta` and the normal of `π`.
    /// * I12: angle between the planes plus the offset gap.
    pub fn residual(&self, delta: &Plane3<T>) -> T {
        use Incidence::*;
        let n = delta.normal();
        match &self.incidence {
            PointToPoint { point, target } => delta.reflect_point(*point).distance(*target),
            LineToLine { line, target } => {
                let r = delta.reflect_line(line);
                r.dir().line_angle(target.dir()) + target.distance_to_point(r.base())
            }
            LineMeetsLine { line, target } => delta.reflect_line(line).distance_to_line(target),
            PlaneToPlane { plane, target } => delta.reflect_plane(plane).dedup_distance(target),
            PointOntoLine { point, line } => line.distance_to_point(delta.reflect_point(*point)),
            PointOntoPlane { point, plane } => plane.distance(delta.reflect_point(*point)),
            LineIntoPlane { line, plane } => {
                let a = plane.distance(delta.reflect_point(line.base()));
                let b = plane.distance(delta.reflect_point(line.point_at(T::one())));
                a.max(b)
            }
            PointFixed { point } => delta.distance(*point),
            LineReversed { line } => n.line_angle(line.dir()),
            LineFixed { line } => {
                n.dot(line.dir()).abs().min(T::one()).asin() + delta.distance(line.base())
            }
            PlaneReversed { plane } => n.dot(plane.normal()).abs().min(T::one()).asin(),
            PlaneFixed { plane } => delta.dedup_distance(plane),
        }
    }

    /// Appends the smooth equations of the constraint at `delta` to `out`.
    pub fn equations(&self, delta: &Plane3<T>, out: &mut Vec<T>) {
        use Incidence::*;
        let n = delta.normal();
        match &self.incidence {
            PointToPoint { point, target } => push3(out, reflect(delta, *point) - *target),
            LineToLine { line, target } => {
                push3(out, delta.reflect_vector(line.dir()).cross(target.dir()));
                push3(out, (reflect(delta, line.base()) - target.base()).cross(target.dir()));
            }
            LineMeetsLine { line, target } => {
                let d = delta.reflect_vector(line.dir()).cross(target.dir());
                out.push((reflect(delta, line.base()) - target.base()).dot(d));
            }
            PlaneToPlane { plane, target } => {
                push3(out, delta.reflect_vector(plane.normal()).cross(target.normal()));
                out.push(target.signed_distance(reflect(delta, plane.point())));
            }
            PointOntoLine { point, line } => {
                push3(out, (reflect(delta, *point) - line.base()).cross(line.dir()))
            }
            PointOntoPlane { point, plane } => out.push(plane.signed_distance(reflect(delta, *point))),
            LineIntoPlane { line, plane } => {
                out.push(plane.signed_distance(reflect(delta, line.base())));
                out.push(plane.signed_distance(reflect(delta, line.point_at(T::one()))));
            }
            PointFixed { point } => out.push(delta.signed_distance(*point)),
            LineReversed { line } => push3(out, n.cross(line.dir())),
            LineFixed { line } => {
                out.push(n.dot(line.dir()));
                out.push(delta.signed_distance(line.base()));
            }
            PlaneReversed { plane } => out.push(n.dot(plane.normal())),
            PlaneFixed { plane } => {
                push3(out, n.cross(plane.normal()));
                out.push(delta.signed_distance(plane.point()));
            }
        }
    }
}
