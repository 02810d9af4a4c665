//! Plane families of the incidences with infinitely many solutions and the
//! quadric surfaces they envelop.
//!
//! Each family is built in a canonical frame where its planes take the linear
//! form `A(params)·x = b(params)`; the frame's half-distance `a` between the
//! two given objects is kept as a scale so that the frame stays rigid.
//!
//! | shape          | params | `A`                                | `b`          | envelope                                  |
//! |----------------|--------|------------------------------------|--------------|-------------------------------------------|
//! | point-line     | t      | `(0, 2t, -4a)`                     | `t²`         | `y² - 4az`                                 |
//! | point-plane    | s, t   | `(2s, 2t, -4a)`                    | `s² + t²`    | `x² + y² - 4az`                            |
//! | skew lines     | t, s   | `(s cos δ, s sin δ - t, -2a)`      | `(s²-t²)/2`  | `x²cos²δ + 2xy sin δ cos δ - y²cos²δ - 4az` |
//! | parallel lines | t, s   | `(0, t - s, 2a)`                   | `(t²-s²)/2`  | none                                      |
//! | oblique line   | δ      | `(cos δ, sin δ - sin θ, -cos θ)`   | `0`          | `x² + y²cos²θ - 2yz sin θ cos θ - z²cos²θ`  |
//! | parallel line  | k      | `(-2k, 0, 4a)`                     | `-k²`        | `x² - 4az`                                 |

mod family;
mod quadric;
mod verify;

pub use family::{family_i3, family_i5, family_i6, family_i7, Contact, FamilyShape, PlaneFamily};
pub use quadric::Quadric;
pub use verify::{verify_envelope_conditions, EnvelopeReport};

use crate::constraints::{Constraint, Incidence};
use crate::error::{Error, Result};
use crate::geom::{Line3, Plane3, Point3};
use crate::scalar::Scalar;

/// Envelope of the planes folding `p` onto `m`: a parabolic cylinder.
pub fn envelope_i5<T: Scalar>(p: Point3<T>, m: &Line3<T>) -> Result<Quadric<T>> {
    family_i5(p, m)?.envelope()
}

/// Envelope of the planes folding `p` onto `pi`: a paraboloid of revolution
/// with focus `p`.
pub fn envelope_i6<T: Scalar>(p: Point3<T>, pi: &Plane3<T>) -> Result<Quadric<T>> {
    family_i6(p, pi)?.envelope()
}

/// Envelope of the planes folding `m` to meet `n`: a hyperbolic paraboloid.
/// Parallel lines have no envelope.
pub fn envelope_i3<T: Scalar>(m: &Line3<T>, n: &Line3<T>) -> Result<Quadric<T>> {
    family_i3(m, n)?.envelope()
}

/// Envelope of the planes folding `m` into `pi`: an elliptic cone with apex
/// at `m ∩ pi`, or a parabolic cylinder when `m ∥ pi`.
pub fn envelope_i7<T: Scalar>(m: &Line3<T>, pi: &Plane3<T>) -> Result<Quadric<T>> {
    family_i7(m, pi)?.envelope()
}

/// The plane family of an I3, I5, I6 or I7 constraint.
pub fn constraint_family<T: Scalar>(c: &Constraint<T>) -> Result<PlaneFamily<T>> {
    match c.incidence() {
        Incidence::LineMeetsLine { line, target } => family_i3(line, target),
        Incidence::PointOntoLine { point, line } => family_i5(*point, line),
        Incidence::PointOntoPlane { point, plane } => family_i6(*point, plane),
        Incidence::LineIntoPlane { line, plane } => family_i7(line, plane),
        _ => Err(Error::InvalidInput(format!(
            "{} has no envelope family; only I3, I5, I6 and I7 do",
            c.kind()
        ))),
    }
}

#[cfg(test)]
mod tests;
