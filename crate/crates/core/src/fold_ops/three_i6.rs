//! Operation 3I6: fold three points onto three planes.

use crate::constraints::{dedup_planes, Constraint, FoldSolution};
use crate::envelopes::{family_i6, PlaneFamily};
use crate::error::{Error, Result};
use crate::geom::{Plane3, Point3, Vec3};
use crate::numerics::{damped_newton, NewtonOptions};
use crate::scalar::Scalar;

/// Seeds per axis of each `(s, t)` start lattice (27² = 729 starts per radius).
const LATTICE: usize = 27;

/// The polynomial system of 3I6 in the canonical frame of `(P, π)`.
///
/// Unknowns are the images `Q'`, `R'`, the proportionality factors `k`
/// (between the fold normal and `Q' − Q`) and `ℓ` (between `Q' − Q` and
/// `R' − R`), and the family parameters `(s, t)` of the I6 fold
/// `2sx + 2ty − 4az = s² + t²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemInstance3I6<T> {
    family: PlaneFamily<T>,
    q: Point3<T>,
    r: Point3<T>,
    /// `(a, b, c, d)` with `ax + by + cz + d = 0`, canonical coordinates.
    tau: [T; 4],
    rho: [T; 4],
}

/// A candidate assignment of the unknowns of [`SystemInstance3I6`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unknowns3I6<T> {
    pub q_image: Point3<T>,
    pub r_image: Point3<T>,
    pub k: T,
    pub l: T,
    pub s: T,
    pub t: T,
}

fn plane_coeffs<T: Scalar>(p: &Plane3<T>) -> [T; 4] {
    let n = p.normal();
    [n.x, n.y, n.z, -p.offset()]
}

impl<T: Scalar> SystemInstance3I6<T> {
    pub fn new(
        p: Point3<T>,
        pi: &Plane3<T>,
        q: Point3<T>,
        tau: &Plane3<T>,
        r: Point3<T>,
        rho: &Plane3<T>,
    ) -> Result<Self> {
        let family = family_i6(p, pi)?;
        let f = family.frame();
        Ok(Self {
            family,
            q: f.apply_point(q),
            r: f.apply_point(r),
            tau: plane_coeffs(&f.apply_plane(tau)),
            rho: plane_coeffs(&f.apply_plane(rho)),
        })
    }

    /// The I6 family of `(P, π)`; its frame is the canonical frame.
    pub fn family(&self) -> &PlaneFamily<T> {
        &self.family
    }

    /// Canonical coordinates of `Q` and `R`.
    pub fn points(&self) -> (Point3<T>, Point3<T>) {
        (self.q, self.r)
    }

    /// The unknowns induced by the fold with parameters `(s, t)`.
    pub fn unknowns_for(&self, s: T, t: T) -> Result<Unknowns3I6<T>> {
        let delta = self.family.canonical_plane(&[s, t])?;
        let q_image = delta.reflect_point_with_tol(self.q, T::zero());
        let r_image = delta.reflect_point_with_tol(self.r, T::zero());
        let (dq, dr) = (q_image - self.q, r_image - self.r);
        let a = self.family.scale();
        let k = -(a + a) / dq.z;
        let l = if dr.norm_squared() > T::zero() { dq.dot(dr) / dr.norm_squared() } else { T::nan() };
        Ok(Unknowns3I6 { q_image, r_image, k, l, s, t })
    }

    /// Residuals of the system, in order:
    ///
    /// * 3: `(s, t, −2a) − k(Q' − Q)`
    /// * 1: the midpoint of `QQ'` on the fold
    /// * 1: the elimination of `s, t, k` for `Q`
    /// * 1: the same for `R`
    /// * 3: `(Q' − Q) − ℓ(R' − R)`
    /// * 1: `Q' ∈ τ`
    /// * 1: `R' ∈ ρ`
    pub fn residuals(&self, u: &Unknowns3I6<T>) -> Vec<T> {
        let a = self.family.scale();
        let two = T::lit(2.0);
        let (q, r) = (self.q, self.r);
        let (qp, rp) = (u.q_image, u.r_image);
        let dq = qp - q;
        let dr = rp - r;
        let normal = Vec3::new(u.s, u.t, -two * a) - dq * u.k;
        let mid = (q + qp) * T::lit(0.5);
        let on_fold = two * u.s * mid.x + two * u.t * mid.y - T::lit(4.0) * a * mid.z
            - (u.s * u.s + u.t * u.t);
        let elim = |p: Point3<T>, pp: Point3<T>| {
            let lhs = two * a * ((p.y - pp.y).powi(2) + (p.x - pp.x).powi(2));
            let rhs = -((p.x * p.x - pp.x * pp.x) + (p.y * p.y - pp.y * pp.y) + (p.z * p.z - pp.z * pp.z))
                * (p.z - pp.z);
            lhs - rhs
        };
        let parallel = dq - dr * u.l;
        let on = |c: &[T; 4], p: Point3<T>| c[0] * p.x + c[1] * p.y + c[2] * p.z + c[3];
        vec![
            normal.x,
            normal.y,
            normal.z,
            on_fold,
            elim(q, qp),
            elim(r, rp),
            parallel.x,
            parallel.y,
            parallel.z,
            on(&self.tau, qp),
            on(&self.rho, rp),
        ]
    }

    /// The two scalar conditions on `(s, t)`: `Q'` on `τ` and `R'` on `ρ`
    /// with `Q'`, `R'` the reflections in the fold.
    fn core(&self, x: &[T]) -> Vec<T> {
        let Ok((n, b)) = self.family.linear_form(x) else {
            return vec![T::nan(); 2];
        };
        let nn = n.norm_squared();
        let image = |p: Point3<T>| p - n * (T::lit(2.0) * (n.dot(p) - b) / nn);
        let on = |c: &[T; 4], p: Point3<T>| c[0] * p.x + c[1] * p.y + c[2] * p.z + c[3];
        vec![on(&self.tau, image(self.q)), on(&self.rho, image(self.r))]
    }
}

/// Folds placing `p` onto `pi`, `q` onto `tau` and `r` onto `rho`.
///
/// The fold is written as a member `(s, t)` of the I6 family of `(p, pi)`;
/// the other two incidences give two equations in `(s, t)` that are cubic
/// once denominators are cleared. Damped Newton is run from 27 × 27
/// lattices of starts spread over the plane by a `tan` map at four radii,
/// and converged folds are kept when all three residuals are below `tol`.
///
/// Two coinciding (point, plane) pairs make the solution set infinite and
/// give [`Error::IllPosed`]; more than nine distinct folds would contradict
/// the degree bound and give [`Error::SolverInvariant`].
pub fn solve_3i6<T: Scalar>(
    pairs: [(Point3<T>, Plane3<T>); 3],
    tol: T,
) -> Result<FoldSolution<T>> {
    let same = T::coincidence_tol();
    for i in 0..3 {
        for j in i + 1..3 {
            let (p1, pl1) = &pairs[i];
            let (p2, pl2) = &pairs[j];
            if p1.distance(*p2) <= same && pl1.approx_eq(pl2, same) {
                return Err(Error::IllPosed(format!(
                    "I6 constraints {} and {} coincide; the folds form a family",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let constraints = pairs
        .iter()
        .map(|(p, pl)| Constraint::point_onto_plane(*p, *pl))
        .collect::<Result<Vec<_>>>()?;
    let [(p, pi), (q, tau), (r, rho)] = pairs;
    let sys = SystemInstance3I6::new(p, &pi, q, &tau, r, &rho)?;

    let (qc, rc) = sys.points();
    let spread = sys.family.scale().max(qc.norm()).max(rc.norm()).max(T::one());
    let half_pi = T::FRAC_PI_2();
    let n = T::from_usize(LATTICE).unwrap();
    // Roots can cluster near the origin at a much smaller scale than `spread`,
    // so the lattice is repeated at several radii.
    let radii = [spread, spread * T::lit(0.1), spread * T::lit(0.01), sys.family.scale()];
    let axis: Vec<T> = (0..LATTICE)
        .map(|i| (-half_pi + (T::from_usize(i).unwrap() + T::lit(0.5)) * T::PI() / n).tan())
        .collect();
    let seeds: Vec<[T; 2]> = radii
        .iter()
        .flat_map(|&rad| {
            let axis = &axis;
            axis.iter().flat_map(move |&s| axis.iter().map(move |&t| [rad * s, rad * t]))
        })
        .collect();

    let opts = NewtonOptions { tol: T::lit(1e-14).max(T::epsilon() * T::lit(4.0)), max_iter: 80, ..NewtonOptions::default() };
    let f = |x: &[T]| sys.core(x);
    use rayon::prelude::*;
    let candidates: Vec<Plane3<T>> = seeds
        .par_iter()
        .filter_map(|seed| {
            let (x, _) = damped_newton(&f, seed, &opts);
            let plane = sys.family.plane(&x).ok()?;
            constraints.iter().all(|c| c.residual(&plane) < tol).then_some(plane)
        })
        .collect();
    let planes = dedup_planes(candidates, T::lit(1e-6));
    if planes.len() > 9 {
        return Err(Error::SolverInvariant(format!(
            "3I6 produced {} distinct folds, more than the degree bound of 9",
            planes.len()
        )));
    }
    Ok(FoldSolution::finite(planes))
}
