use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::scalar::Scalar;

use super::{Contact, FamilyShape, PlaneFamily, Quadric};

/// Worst-case figures over all verified samples.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeReport<T> {
    pub samples: usize,
    /// Largest `|Q(x)| / (1 + |x|²)` at a contact point.
    pub max_surface_error: T,
    /// Largest sine of the angle between `∇Q` and the plane normal.
    pub max_gradient_error: T,
    /// Largest normalized plane-section determinant.
    pub max_discriminant: T,
}

struct Outcome<T> {
    params: Vec<T>,
    surface: T,
    gradient: T,
    discriminant: T,
    failure: Option<&'static str>,
}

fn halton(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Parameter values of sample `i`: a Halton sequence over the family's
/// ranges, with unbounded parameters drawn from `[-10, 10]`.
pub(crate) fn sample_params<T: Scalar>(f: &PlaneFamily<T>, i: usize) -> Vec<T> {
    f.parameters()
        .iter()
        .zip([2usize, 3])
        .map(|(p, base)| p.lerp(T::lit(halton(i + 1, base)), T::lit(10.0)))
        .collect()
}

fn check_sample<T: Scalar>(f: &PlaneFamily<T>, q: &Quadric<T>, params: Vec<T>) -> Outcome<T> {
    let mut out = Outcome {
        params,
        surface: T::zero(),
        gradient: T::zero(),
        discriminant: T::zero(),
        failure: None,
    };
    let (plane, contact) = match (f.plane(&out.params), f.contact(&out.params)) {
        (Ok(p), Ok(c)) => (p, c),
        _ => {
            out.failure = Some("contact system has no unique solution");
            return out;
        }
    };
    let points: Vec<Point3<T>> = match contact {
        Contact::Point(p) => vec![p],
        // off the base point, which is the apex of a cone
        Contact::Line(l) => vec![l.point_at(T::one()), l.point_at(-T::one())],
    };
    let n = plane.normal();
    for p in points {
        let local = q.frame().apply_point(p);
        let s = q.eval(p).abs() / (T::one() + local.norm_squared());
        out.surface = out.surface.max(s);
        let g = q.gradient(p);
        let gn = g.norm();
        let sine = if gn > T::zero() { g.cross(n).norm() / gn } else { T::one() };
        out.gradient = out.gradient.max(sine);
    }
    out.discriminant = q.plane_section_discriminant(&plane).abs();
    out
}

/// Checks on `samples` parameter values that the family plane touches `q`:
/// the contact point (or line) solving `F = 0` and the vanishing parameter
/// derivatives lies on `q`, `∇Q` is parallel to the plane normal there, and
/// the plane cuts `q` in a degenerate conic.
///
/// Tolerances are ten times the scalar's incidence tolerance (`1e-8` for
/// `f64`). Fails with the worst sample.
pub fn verify_envelope_conditions<T: Scalar>(
    f: &PlaneFamily<T>,
    q: &Quadric<T>,
    samples: usize,
) -> Result<EnvelopeReport<T>> {
    if f.shape() == FamilyShape::ParallelLines {
        return Err(Error::NoEnvelope("the parallel-line family has no envelope surface".into()));
    }
    let tol = T::incidence_tol() * T::lit(10.0);
    let outcomes: Vec<Outcome<T>> = (0..samples)
        .into_par_iter()
        .map(|i| check_sample(f, q, sample_params(f, i)))
        .collect();

    let mut report = EnvelopeReport {
        samples,
        max_surface_error: T::zero(),
        max_gradient_error: T::zero(),
        max_discriminant: T::zero(),
    };
    let mut worst: Option<(usize, &'static str, T)> = None;
    for (i, o) in outcomes.iter().enumerate() {
        report.max_surface_error = report.max_surface_error.max(o.surface);
        report.max_gradient_error = report.max_gradient_error.max(o.gradient);
        report.max_discriminant = report.max_discriminant.max(o.discriminant);
        let candidates = [
            (o.failure.map(|_| T::infinity()).unwrap_or(T::zero()), o.failure.unwrap_or("")),
            (o.surface, "contact point is off the quadric"),
            (o.gradient, "quadric gradient is not parallel to the plane normal"),
            (o.discriminant, "plane section is not degenerate"),
        ];
        for (err, reason) in candidates {
            if err > tol && worst.map_or(true, |w| err > w.2) {
                worst = Some((i, reason, err));
            }
        }
    }
    match worst {
        None => Ok(report),
        Some((i, reason, error)) => Err(Error::VerificationFailed {
            sample: i,
            params: outcomes[i].params.iter().map(|p| p.as_f64()).collect(),
            reason: reason.to_string(),
            error: error.as_f64(),
        }),
    }
}
