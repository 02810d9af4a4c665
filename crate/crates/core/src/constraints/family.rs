//! Solution sets of fold problems.

use std::cmp::Ordering;

use crate::envelopes::PlaneFamily;
use crate::error::{Error, Result};
use crate::geom::{Line3, Plane3, Point3};
use crate::scalar::Scalar;

use super::{Constraint, Incidence};

/// Outcome of solving for fold planes.
#[derive(Clone, Debug)]
pub enum FoldSolution<T> {
    /// Finitely many planes, deduplicated and in canonical order.
    Finite(Vec<Plane3<T>>),
    /// A positive-dimensional family of planes.
    Infinite(SolutionFamily<T>),
    NoSolution,
}

impl<T: Scalar> FoldSolution<T> {
    /// Deduplicates `planes`; an empty list becomes [`FoldSolution::NoSolution`].
    pub fn finite(planes: Vec<Plane3<T>>) -> Self {
        let planes = dedup_planes(planes, T::lit(1e-6));
        if planes.is_empty() {
            Self::NoSolution
        } else {
            Self::Finite(planes)
        }
    }

    /// The planes of a finite solution; empty otherwise.
    pub fn planes(&self) -> &[Plane3<T>] {
        match self {
            Self::Finite(p) => p,
            _ => &[],
        }
    }

    /// Number of planes, `None` for an infinite family.
    pub fn count(&self) -> Option<usize> {
        match self {
            Self::Finite(p) => Some(p.len()),
            Self::Infinite(_) => None,
            Self::NoSolution => Some(0),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite(_))
    }
}

fn canonical_cmp<T: Scalar>(a: &Plane3<T>, b: &Plane3<T>) -> Ordering {
    let ka = a.coeffs();
    let kb = b.coeffs();
    ka.iter()
        .zip(kb.iter())
        .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Merges planes closer than `tol` under [`Plane3::dedup_distance`] (first
/// occurrence wins) and sorts the survivors lexicographically by
/// `(normal, offset)`.
pub fn dedup_planes<T: Scalar>(planes: Vec<Plane3<T>>, tol: T) -> Vec<Plane3<T>> {
    let mut kept: Vec<Plane3<T>> = Vec::with_capacity(planes.len());
    for p in planes {
        if !kept.iter().any(|k| k.dedup_distance(&p) < tol) {
            kept.push(p);
        }
    }
    kept.sort_by(canonical_cmp);
    kept
}

/// A named free parameter of a family and its range. Unbounded ranges use
/// infinite endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeParameter<T> {
    pub name: &'static str,
    pub lower: T,
    pub upper: T,
    pub periodic: bool,
}

impl<T: Scalar> FreeParameter<T> {
    pub fn unbounded(name: &'static str) -> Self {
        Self { name, lower: T::neg_infinity(), upper: T::infinity(), periodic: false }
    }

    pub fn angle(name: &'static str, upper: T) -> Self {
        Self { name, lower: T::zero(), upper, periodic: true }
    }

    /// Maps `u ∈ [0, 1]` into the range, clamping unbounded ends to
    /// `[-window, window]`.
    pub fn lerp(&self, u: T, window: T) -> T {
        let lo = if self.lower.is_finite() { self.lower } else { -window };
        let hi = if self.upper.is_finite() { self.upper } else { window };
        lo + (hi - lo) * u
    }
}

/// How the planes of a family are generated from its parameters.
#[derive(Clone, Debug)]
pub enum FamilyGenerator<T> {
    /// Planes through a point, normal `(sin θ cos φ, sin θ sin φ, cos θ)`.
    ThroughPoint(Point3<T>),
    /// Planes perpendicular to a line, crossing it at `base + s·dir`.
    PerpendicularToLine(Line3<T>),
    /// Planes containing a line, rotated by `φ` about it.
    ContainingLine(Line3<T>),
    /// Planes perpendicular to a plane: normal `cos δ·u + sin δ·v` in terms
    /// of the plane's basis, offset `k`.
    PerpendicularToPlane(Plane3<T>),
    /// Tangent planes of an envelope family.
    Envelope(PlaneFamily<T>),
}

/// A positive-dimensional set of fold planes.
#[derive(Clone, Debug)]
pub struct SolutionFamily<T> {
    pub dimension: usize,
    pub parameters: Vec<FreeParameter<T>>,
    pub generator: FamilyGenerator<T>,
}

impl<T: Scalar> SolutionFamily<T> {
    pub fn from_envelope(f: PlaneFamily<T>) -> Self {
        Self {
            dimension: f.dimension(),
            parameters: f.parameters(),
            generator: FamilyGenerator::Envelope(f),
        }
    }

    /// The plane at the given parameter values.
    pub fn sample(&self, params: &[T]) -> Result<Plane3<T>> {
        if params.len() != self.parameters.len() {
            return Err(Error::InvalidInput(format!(
                "family takes {} parameters, got {}",
                self.parameters.len(),
                params.len()
            )));
        }
        match &self.generator {
            FamilyGenerator::ThroughPoint(p) => {
                let (theta, phi) = (params[0], params[1]);
                let n = crate::geom::Vec3::new(
                    theta.sin() * phi.cos(),
                    theta.sin() * phi.sin(),
                    theta.cos(),
                );
                Plane3::through_point(n, *p)
            }
            FamilyGenerator::PerpendicularToLine(m) => {
                Plane3::through_point(m.dir(), m.point_at(params[0]))
            }
            FamilyGenerator::ContainingLine(m) => {
                let u = m.dir().any_orthonormal();
                let v = m.dir().cross(u);
                let phi = params[0];
                Plane3::through_point(u * phi.cos() + v * phi.sin(), m.base())
            }
            FamilyGenerator::PerpendicularToPlane(pi) => {
                let u = pi.normal().any_orthonormal();
                let v = pi.normal().cross(u);
                let (delta, k) = (params[0], params[1]);
                Plane3::new(u * delta.cos() + v * delta.sin(), k)
            }
            FamilyGenerator::Envelope(f) => f.plane(params),
        }
    }
}

/// The solution family of an I8, I9, I10 or I11 constraint.
pub fn family<T: Scalar>(c: &Constraint<T>) -> Result<SolutionFamily<T>> {
    let two_pi = T::TAU();
    let (parameters, generator) = match c.incidence() {
        Incidence::PointFixed { point } => (
            vec![FreeParameter::angle("theta", T::PI()), FreeParameter::angle("phi", two_pi)],
            FamilyGenerator::ThroughPoint(*point),
        ),
        Incidence::LineReversed { line } => (
            vec![FreeParameter::unbounded("s")],
            FamilyGenerator::PerpendicularToLine(*line),
        ),
        Incidence::LineFixed { line } => (
            vec![FreeParameter::angle("phi", two_pi)],
            FamilyGenerator::ContainingLine(*line),
        ),
        Incidence::PlaneReversed { plane } => (
            vec![FreeParameter::angle("delta", two_pi), FreeParameter::unbounded("k")],
            FamilyGenerator::PerpendicularToPlane(*plane),
        ),
        _ => {
            return Err(Error::InvalidConstraint(format!(
                "{} has no direct solution family",
                c.kind()
            )))
        }
    };
    Ok(SolutionFamily { dimension: parameters.len(), parameters, generator })
}
