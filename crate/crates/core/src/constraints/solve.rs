//! Closed-form solvers for the incidences with finitely many fold planes.

use crate::error::{Error, Result};
use crate::geom::{perpendicular_bisector_plane, Line3, Plane3, Point3};
use crate::scalar::Scalar;

use super::FoldSolution;

/// I1: the perpendicular bisector plane of `p q`.
pub fn solve_i1<T: Scalar>(p: Point3<T>, q: Point3<T>) -> Result<FoldSolution<T>> {
    match perpendicular_bisector_plane(p, q) {
        Ok(plane) => Ok(FoldSolution::Finite(vec![plane])),
        Err(_) => Err(Error::InvalidConstraint(
            "I1 needs distinct points; P = Q is an I8 incidence".into(),
        )),
    }
}

/// I2: folds taking line `m` onto line `n`.
///
/// Intersecting lines give the two planes through the crossing point whose
/// normals are `d_m ∓ d_n` (they bisect the angles between the lines and are
/// mutually perpendicular). Parallel lines give the single plane halfway
/// between them, perpendicular to the plane they span. Skew lines have no
/// solution.
pub fn solve_i2<T: Scalar>(m: &Line3<T>, n: &Line3<T>) -> Result<FoldSolution<T>> {
    let tol = T::coincidence_tol();
    if m.approx_eq(n, tol) {
        return Err(Error::InvalidConstraint(
            "I2 needs distinct lines; m = n is an I9 or I10 incidence".into(),
        ));
    }
    let half = T::lit(0.5);
    if m.is_parallel_to(n, tol) {
        let foot = n.closest_point(m.base());
        let plane = Plane3::through_point(foot - m.base(), (foot + m.base()) * half)?;
        return Ok(FoldSolution::Finite(vec![plane]));
    }
    if m.distance_to_line(n) > T::incidence_tol() {
        return Ok(FoldSolution::NoSolution);
    }
    let (a, b) = m.closest_points(n).expect("non-parallel lines");
    let cross = (a + b) * half;
    let planes = vec![
        Plane3::through_point(m.dir() - n.dir(), cross)?,
        Plane3::through_point(m.dir() + n.dir(), cross)?,
    ];
    Ok(FoldSolution::finite(planes))
}

/// I4: folds taking plane `pi` onto plane `tau`: the two bisectors of the
/// dihedral angles, or the mid-plane when they are parallel.
pub fn solve_i4<T: Scalar>(pi: &Plane3<T>, tau: &Plane3<T>) -> Result<FoldSolution<T>> {
    let tol = T::coincidence_tol();
    if pi.approx_eq(tau, tol) {
        return Err(Error::InvalidConstraint(
            "I4 needs distinct planes; π = τ is an I11 or I12 incidence".into(),
        ));
    }
    let (n1, d1) = (pi.normal(), pi.offset());
    let (n2, d2) = (tau.normal(), tau.offset());
    if pi.is_parallel_to(tau, tol) {
        let d2 = if n1.dot(n2) < T::zero() { -d2 } else { d2 };
        let plane = Plane3::new(n1, (d1 + d2) * T::lit(0.5))?;
        return Ok(FoldSolution::Finite(vec![plane]));
    }
    // points with equal (or opposite) signed distance to both planes
    let planes = vec![
        Plane3::new(n1 - n2, d1 - d2)?,
        Plane3::new(n1 + n2, d1 + d2)?,
    ];
    Ok(FoldSolution::finite(planes))
}

/// I12: the fold plane is `pi` itself.
pub fn solve_i12<T: Scalar>(pi: &Plane3<T>) -> FoldSolution<T> {
    FoldSolution::Finite(vec![*pi])
}
