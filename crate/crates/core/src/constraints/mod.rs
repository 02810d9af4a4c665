//! The twelve incidence constraints between a fold plane and given points,
//! lines and planes.
//!
//! | kind | requirement on the fold `Δ`                          | codim |
//! |------|------------------------------------------------------|-------|
//! | I1   | `Δ` maps point `P` onto point `Q ≠ P`                | 3 |
//! | I2   | `Δ` maps line `m` onto line `n ≠ m`                  | 3 |
//! | I3   | the image of `m` meets `n`, where `m ∩ n = ∅`        | 1 |
//! | I4   | `Δ` maps plane `π` onto plane `τ ≠ π`                | 3 |
//! | I5   | the image of `P` lies on `m`, `P ∉ m`                | 2 |
//! | I6   | the image of `P` lies on `π`, `P ∉ π`                | 1 |
//! | I7   | the image of `m` lies in `π`, `m ⊄ π`                | 2 |
//! | I8   | `P` is fixed                                         | 1 |
//! | I9   | `m` is mapped onto itself, not pointwise             | 2 |
//! | I10  | `m` is fixed pointwise                               | 2 |
//! | I11  | `π` is mapped onto itself, not pointwise             | 1 |
//! | I12  | `π` is fixed pointwise                               | 3 |

mod family;
mod kind;
mod residual;
mod solve;

pub use family::{dedup_planes, family, FamilyGenerator, FoldSolution, FreeParameter, SolutionFamily};
pub use kind::IncidenceKind;
pub use solve::{solve_i1, solve_i12, solve_i2, solve_i4};

use crate::error::{Error, Result};
use crate::geom::{classify_line_plane, LinePlaneRelation, Line3, Plane3, Point3};
use crate::scalar::Scalar;

/// Payload of a constraint, one variant per incidence kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Incidence<T> {
    /// I1
    PointToPoint { point: Point3<T>, target: Point3<T> },
    /// I2
    LineToLine { line: Line3<T>, target: Line3<T> },
    /// I3
    LineMeetsLine { line: Line3<T>, target: Line3<T> },
    /// I4
    PlaneToPlane { plane: Plane3<T>, target: Plane3<T> },
    /// I5
    PointOntoLine { point: Point3<T>, line: Line3<T> },
    /// I6
    PointOntoPlane { point: Point3<T>, plane: Plane3<T> },
    /// I7
    LineIntoPlane { line: Line3<T>, plane: Plane3<T> },
    /// I8
    PointFixed { point: Point3<T> },
    /// I9
    LineReversed { line: Line3<T> },
    /// I10
    LineFixed { line: Line3<T> },
    /// I11
    PlaneReversed { plane: Plane3<T> },
    /// I12
    PlaneFixed { plane: Plane3<T> },
}

/// An incidence constraint whose preconditions have been checked.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    incidence: Incidence<T>,
}

fn violated(kind: IncidenceKind, what: &str) -> Error {
    Error::InvalidConstraint(format!("{kind} precondition violated: {what}"))
}

impl<T: Scalar> Constraint<T> {
    /// I1: fold `point` onto `target`.
    pub fn point_to_point(point: Point3<T>, target: Point3<T>) -> Result<Self> {
        if point.distance(target) <= T::coincidence_tol() {
            return Err(violated(
                IncidenceKind::I1,
                "P ≠ Q (a point folded onto itself is an I8 incidence)",
            ));
        }
        Ok(Self::wrap(Incidence::PointToPoint { point, target }))
    }

    /// I2: fold `line` onto `target`.
    pub fn line_to_line(line: Line3<T>, target: Line3<T>) -> Result<Self> {
        if line.approx_eq(&target, T::coincidence_tol()) {
            return Err(violated(
                IncidenceKind::I2,
                "m ≠ n (a line folded onto itself is an I9 or I10 incidence)",
            ));
        }
        Ok(Self::wrap(Incidence::LineToLine { line, target }))
    }

    /// I3: the image of `line` meets `target`; the lines must not intersect.
    pub fn line_meets_line(line: Line3<T>, target: Line3<T>) -> Result<Self> {
        if line.distance_to_line(&target) <= T::coincidence_tol() {
            return Err(violated(IncidenceKind::I3, "m ∩ n = ∅ (the lines intersect or coincide)"));
        }
        Ok(Self::wrap(Incidence::LineMeetsLine { line, target }))
    }

    /// I4: fold `plane` onto `target`.
    pub fn plane_to_plane(plane: Plane3<T>, target: Plane3<T>) -> Result<Self> {
        if plane.approx_eq(&target, T::coincidence_tol()) {
            return Err(violated(
                IncidenceKind::I4,
                "π ≠ τ (a plane folded onto itself is an I11 or I12 incidence)",
            ));
        }
        Ok(Self::wrap(Incidence::PlaneToPlane { plane, target }))
    }

    /// I5: the image of `point` lies on `line`.
    pub fn point_onto_line(point: Point3<T>, line: Line3<T>) -> Result<Self> {
        if line.contains(point, T::coincidence_tol()) {
            return Err(violated(IncidenceKind::I5, "P ∉ m (the point lies on the line)"));
        }
        Ok(Self::wrap(Incidence::PointOntoLine { point, line }))
    }

    /// I6: the image of `point` lies on `plane`.
    pub fn point_onto_plane(point: Point3<T>, plane: Plane3<T>) -> Result<Self> {
        if plane.contains(point, T::coincidence_tol()) {
            return Err(violated(IncidenceKind::I6, "P ∉ π (the point lies on the plane)"));
        }
        Ok(Self::wrap(Incidence::PointOntoPlane { point, plane }))
    }

    /// I7: the image of `line` lies in `plane`.
    pub fn line_into_plane(line: Line3<T>, plane: Plane3<T>) -> Result<Self> {
        if classify_line_plane(&line, &plane) == LinePlaneRelation::Contained {
            return Err(violated(IncidenceKind::I7, "m ⊄ π (the line lies in the plane)"));
        }
        Ok(Self::wrap(Incidence::LineIntoPlane { line, plane }))
    }

    /// I8: `point` is fixed by the fold.
    pub fn point_fixed(point: Point3<T>) -> Self {
        Self::wrap(Incidence::PointFixed { point })
    }

    /// I9: `line` is folded onto itself, one half onto the other.
    pub fn line_reversed(line: Line3<T>) -> Self {
        Self::wrap(Incidence::LineReversed { line })
    }

    /// I10: `line` is fixed pointwise.
    pub fn line_fixed(line: Line3<T>) -> Self {
        Self::wrap(Incidence::LineFixed { line })
    }

    /// I11: `plane` is folded onto itself, one half onto the other.
    pub fn plane_reversed(plane: Plane3<T>) -> Self {
        Self::wrap(Incidence::PlaneReversed { plane })
    }

    /// I12: `plane` is fixed pointwise.
    pub fn plane_fixed(plane: Plane3<T>) -> Self {
        Self::wrap(Incidence::PlaneFixed { plane })
    }

    fn wrap(incidence: Incidence<T>) -> Self {
        Self { incidence }
    }

    pub fn incidence(&self) -> &Incidence<T> {
        &self.incidence
    }

    pub fn kind(&self) -> IncidenceKind {
        use Incidence::*;
        match self.incidence {
            PointToPoint { .. } => IncidenceKind::I1,
            LineToLine { .. } => IncidenceKind::I2,
            LineMeetsLine { .. } => IncidenceKind::I3,
            PlaneToPlane { .. } => IncidenceKind::I4,
            PointOntoLine { .. } => IncidenceKind::I5,
            PointOntoPlane { .. } => IncidenceKind::I6,
            LineIntoPlane { .. } => IncidenceKind::I7,
            PointFixed { .. } => IncidenceKind::I8,
            LineReversed { .. } => IncidenceKind::I9,
            LineFixed { .. } => IncidenceKind::I10,
            PlaneReversed { .. } => IncidenceKind::I11,
            PlaneFixed { .. } => IncidenceKind::I12,
        }
    }

    pub fn codimension(&self) -> u8 {
        self.kind().codimension()
    }

    /// Largest distance from the origin among the anchor points of the
    /// referenced objects (point positions, line bases, plane feet).
    pub fn extent(&self) -> T {
        use Incidence::*;
        let norms: [T; 2] = match &self.incidence {
            PointToPoint { point, target } => [point.norm(), target.norm()],
            LineToLine { line, target } | LineMeetsLine { line, target } => {
                [line.base().norm(), target.base().norm()]
            }
            PlaneToPlane { plane, target } => [plane.offset().abs(), target.offset().abs()],
            PointOntoLine { point, line } => [point.norm(), line.base().norm()],
            PointOntoPlane { point, plane } => [point.norm(), plane.offset().abs()],
            LineIntoPlane { line, plane } => [line.base().norm(), plane.offset().abs()],
            PointFixed { point } => [point.norm(), T::zero()],
            LineReversed { line } | LineFixed { line } => [line.base().norm(), T::zero()],
            PlaneReversed { plane } | PlaneFixed { plane } => [plane.offset().abs(), T::zero()],
        };
        norms[0].max(norms[1])
    }
}
