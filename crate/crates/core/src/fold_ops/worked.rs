//! Closed-form solvers for the worked operations I5+I6, I5+I9 and I6+I8+I11.

use crate::constraints::{FoldSolution, SolutionFamily};
use crate::envelopes::{family_i5, family_i6};
use crate::error::{Error, Result};
use crate::geom::{Line3, Plane3, Point3};
use crate::numerics::{real_roots_poly, real_roots_quadratic, Poly};
use crate::scalar::Scalar;

fn real_roots_or_empty<T: Scalar>(r: Result<crate::numerics::RealRoots<T>>) -> Vec<T> {
    match r {
        Ok(roots) => roots.values(),
        Err(_) => Vec::new(),
    }
}

/// Folds placing `p` onto `m` and `q` onto `pi`.
///
/// In the frame where `P = (0,0,a)` and `m` runs through `(0,0,-a)` along y,
/// the candidate folds are the planes `2ty − 4az = t²`, all parallel to the
/// x axis, so the image `Q' = (x_q, y', z')` keeps its x coordinate. `Q'` is
/// the reflection of `Q` in such a plane iff
///
/// `2a(y_q − y')² + (y_q² − y'² + z_q² − z'²)(z_q − z') = 0`,
///
/// and `Q' ∈ π` is linear in `(y', z')`. Eliminating the better-conditioned
/// coordinate leaves a cubic; each real root gives `t = −2a(y' − y_q)/(z' − z_q)`.
///
/// When the cubic vanishes identically every fold of the family works (for
/// instance `P = Q` with `π` containing `m` and perpendicular to the plane
/// spanned by `P` and `m`), and the I5 family is returned.
pub fn solve_i5_i6<T: Scalar>(
    p: Point3<T>,
    m: &Line3<T>,
    q: Point3<T>,
    pi: &Plane3<T>,
) -> Result<FoldSolution<T>> {
    if pi.contains(q, T::coincidence_tol()) {
        return Err(Error::DegenerateInput("I6 point lies on its plane".into()));
    }
    let fam = family_i5(p, m)?;
    let a = fam.scale();
    let frame = fam.frame();
    let qc = frame.apply_point(q);
    let pic = frame.apply_plane(pi);
    let n = pic.normal();
    let (al, be, ga) = (n.x, n.y, n.z);
    // β y' + γ z' = rhs
    let rhs = pic.offset() - al * qc.x;
    let (yq, zq) = (qc.y, qc.z);
    let magnitude = a.max(yq.abs()).max(zq.abs()).max(rhs.abs());
    let tiny = T::coincidence_tol();

    if be.abs() <= tiny && ga.abs() <= tiny {
        // π ⟂ x axis: every image keeps x = x_q
        return Ok(if rhs.abs() <= T::incidence_tol() * (T::one() + magnitude) {
            FoldSolution::Infinite(SolutionFamily::from_envelope(fam))
        } else {
            FoldSolution::NoSolution
        });
    }

    let solve_for_y = ga.abs() >= be.abs();
    let var = Poly::linear(T::zero(), T::one());
    let other = if solve_for_y {
        Poly::linear(rhs / ga, -be / ga)
    } else {
        Poly::linear(rhs / be, -ga / be)
    };
    let (y, z) = if solve_for_y { (var, other) } else { (other, var) };

    let c = |v: T| Poly::constant(v);
    let dy = &c(yq) - &y;
    let dz = &c(zq) - &z;
    let sum_sq = &(&c(yq * yq + zq * zq) - &(&y * &y)) - &(&z * &z);
    let g = &(&dy * &dy).scale(a + a) + &(&sum_sq * &dz);

    let cmax = g.coeffs().iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let reference = magnitude * magnitude * magnitude;
    if cmax <= T::lit(1e-9) * reference {
        return Ok(FoldSolution::Infinite(SolutionFamily::from_envelope(fam)));
    }

    let mut planes = Vec::new();
    for root in real_roots_or_empty(real_roots_poly(g.coeffs())) {
        let (yp, zp) = (y.eval(root), z.eval(root));
        let delta_z = zp - zq;
        if delta_z.abs() <= tiny * (T::one() + magnitude) {
            continue;
        }
        let t = -(a + a) * (yp - yq) / delta_z;
        planes.push(fam.plane(&[t])?);
    }
    Ok(FoldSolution::finite(planes))
}

/// Folds placing `p` onto `m` and taking line `n` onto itself.
///
/// With `n`'s direction `(α, β, γ)` in the frame of the I5 family, the fold
/// normal `(0, 2t, −4a)` must be parallel to it: there is exactly one fold,
/// `t = −2aβ/γ`, when `α = 0` and `γ ≠ 0`, and none otherwise.
pub fn solve_i5_i9<T: Scalar>(p: Point3<T>, m: &Line3<T>, n: &Line3<T>) -> Result<FoldSolution<T>> {
    let fam = family_i5(p, m)?;
    let d = fam.frame().apply_vector(n.dir());
    let tol = T::incidence_tol();
    if d.x.abs() > tol || d.z.abs() <= tol {
        return Ok(FoldSolution::NoSolution);
    }
    let a = fam.scale();
    let t = -(a + a) * d.y / d.z;
    Ok(FoldSolution::finite(vec![fam.plane(&[t])?]))
}

/// Folds placing `p` onto `pi`, passing through `q` and perpendicular to
/// `tau`.
///
/// In the frame where `P = (0,0,a)` and `π: z = −a` the candidates are
/// `2sx + 2ty − 4az = s² + t²`. Perpendicularity to `τ` (normal
/// `(α, β, γ)`) is linear, `sα + tβ − 2aγ = 0`; substituting it into the
/// incidence of `Q` leaves a quadratic.
pub fn solve_i6_i8_i11<T: Scalar>(
    p: Point3<T>,
    pi: &Plane3<T>,
    q: Point3<T>,
    tau: &Plane3<T>,
) -> Result<FoldSolution<T>> {
    let fam = family_i6(p, pi)?;
    let a = fam.scale();
    let frame = fam.frame();
    let qc = frame.apply_point(q);
    let n = frame.apply_vector(tau.normal());
    let (al, be, ga) = (n.x, n.y, n.z);
    if al.abs() <= T::coincidence_tol() && be.abs() <= T::coincidence_tol() {
        return Ok(FoldSolution::NoSolution);
    }
    let two = T::lit(2.0);
    let c = |v: T| Poly::constant(v);
    let var = Poly::linear(T::zero(), T::one());
    // the parameter with the larger coefficient is eliminated
    let (s, t) = if al.abs() >= be.abs() {
        (Poly::linear(two * a * ga / al, -be / al), var)
    } else {
        let t = Poly::linear(two * a * ga / be, -al / be);
        (var, t)
    };
    // 2s x_q + 2t y_q − 4a z_q − s² − t² = 0
    let lhs = &(&(&s.scale(two * qc.x) + &t.scale(two * qc.y)) - &c(T::lit(4.0) * a * qc.z))
        - &(&(&s * &s) + &(&t * &t));
    let k = lhs.coeffs();
    let roots = real_roots_or_empty(real_roots_quadratic(k[2], k[1], k[0]));
    let planes = roots
        .into_iter()
        .map(|r| fam.plane(&[s.eval(r), t.eval(r)]))
        .collect::<Result<Vec<_>>>()?;
    Ok(FoldSolution::finite(planes))
}
