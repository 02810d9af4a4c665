use crate::constraints::{FreeParameter, IncidenceKind};
use crate::error::{Error, Result};
use crate::geom::{
    canonical_frame_line_plane, canonical_frame_lines, canonical_frame_point_line,
    canonical_frame_point_plane, classify_line_plane, Line3, LinePlaneRelation, Plane3, Point3,
    RigidFrame, Vec3,
};
use crate::numerics::solve_dense;
use crate::scalar::Scalar;

use super::Quadric;

/// Configuration of a family in its canonical frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyShape<T> {
    /// I5: `P = (0,0,a)`, `m` through `(0,0,-a)` along y.
    PointLine,
    /// I6: `P = (0,0,a)`, `π: z = -a`.
    PointPlane,
    /// I3: `m` through `(0,0,a)` along y, `n` through `(0,0,-a)` along
    /// `(cos δ, sin δ, 0)` with `|δ| < π/2`.
    SkewLines { delta: T },
    /// I3 with parallel lines at `z = ±a`, both along y.
    ParallelLines,
    /// I7: `m ∩ π` at the origin, `π: z = 0`, `m` along
    /// `(0, sin θ, cos θ)` with `0 ≤ θ < π/2`.
    LinePlaneOblique { theta: T },
    /// I7 with `m` through `(0,0,a)` along y and `π: z = -a`.
    LinePlaneParallel,
}

impl<T: Scalar> FamilyShape<T> {
    pub fn kind(&self) -> IncidenceKind {
        match self {
            Self::PointLine => IncidenceKind::I5,
            Self::PointPlane => IncidenceKind::I6,
            Self::SkewLines { .. } | Self::ParallelLines => IncidenceKind::I3,
            Self::LinePlaneOblique { .. } | Self::LinePlaneParallel => IncidenceKind::I7,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::PointLine => "I5",
            Self::PointPlane => "I6",
            Self::SkewLines { .. } => "I3",
            Self::ParallelLines => "I3-parallel",
            Self::LinePlaneOblique { .. } => "I7",
            Self::LinePlaneParallel => "I7-parallel",
        }
    }
}

/// Where a family plane touches the envelope.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Contact<T> {
    Point(Point3<T>),
    Line(Line3<T>),
}

/// A one- or two-parameter family of fold planes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneFamily<T> {
    shape: FamilyShape<T>,
    scale: T,
    frame: RigidFrame<T>,
}

impl<T: Scalar> PlaneFamily<T> {
    /// A family directly in canonical position (identity frame).
    pub fn canonical(shape: FamilyShape<T>, scale: T) -> Result<Self> {
        Self::with_frame(shape, scale, RigidFrame::identity())
    }

    /// `frame` maps scene coordinates to the canonical ones.
    pub fn with_frame(shape: FamilyShape<T>, scale: T, frame: RigidFrame<T>) -> Result<Self> {
        if !(scale > T::zero()) || !scale.is_finite() {
            return Err(Error::InvalidInput(format!("family scale must be positive, got {scale}")));
        }
        match shape {
            FamilyShape::LinePlaneOblique { theta }
                if !(theta >= T::zero() && theta < T::FRAC_PI_2()) =>
            {
                return Err(Error::InvalidConstraint(format!(
                    "I7 needs the line-plane angle θ ≠ π/2 (0 ≤ θ < π/2), got θ = {theta}"
                )));
            }
            FamilyShape::SkewLines { delta } if !(delta.cos() > T::zero()) => {
                return Err(Error::InvalidConstraint(format!(
                    "skew-line angle δ must satisfy |δ| < π/2, got δ = {delta}"
                )));
            }
            _ => {}
        }
        Ok(Self { shape, scale, frame })
    }

    pub fn shape(&self) -> FamilyShape<T> {
        self.shape
    }

    pub fn kind(&self) -> IncidenceKind {
        self.shape.kind()
    }

    /// Half the distance between the two given objects.
    pub fn scale(&self) -> T {
        self.scale
    }

    /// Scene-to-canonical frame.
    pub fn frame(&self) -> RigidFrame<T> {
        self.frame
    }

    pub fn dimension(&self) -> usize {
        match self.shape {
            FamilyShape::PointPlane | FamilyShape::SkewLines { .. } | FamilyShape::ParallelLines => 2,
            _ => 1,
        }
    }

    pub fn parameters(&self) -> Vec<FreeParameter<T>> {
        match self.shape {
            FamilyShape::PointLine => vec![FreeParameter::unbounded("t")],
            FamilyShape::PointPlane => {
                vec![FreeParameter::unbounded("s"), FreeParameter::unbounded("t")]
            }
            FamilyShape::SkewLines { .. } | FamilyShape::ParallelLines => {
                vec![FreeParameter::unbounded("t"), FreeParameter::unbounded("s")]
            }
            FamilyShape::LinePlaneOblique { .. } => vec![FreeParameter::angle("delta", T::TAU())],
            FamilyShape::LinePlaneParallel => vec![FreeParameter::unbounded("k")],
        }
    }

    fn check_arity(&self, params: &[T]) -> Result<()> {
        if params.len() == self.dimension() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{} family takes {} parameters, got {}",
                self.shape.name(),
                self.dimension(),
                params.len()
            )))
        }
    }

    /// `(A, b)` with the canonical plane `A·x = b`.
    pub fn linear_form(&self, params: &[T]) -> Result<(Vec3<T>, T)> {
        self.check_arity(params)?;
        let a = self.scale;
        let (two, four, half) = (T::lit(2.0), T::lit(4.0), T::lit(0.5));
        let z = T::zero();
        Ok(match self.shape {
            FamilyShape::PointLine => {
                let t = params[0];
                (Vec3::new(z, two * t, -four * a), t * t)
            }
            FamilyShape::PointPlane => {
                let (s, t) = (params[0], params[1]);
                (Vec3::new(two * s, two * t, -four * a), s * s + t * t)
            }
            FamilyShape::SkewLines { delta } => {
                let (t, s) = (params[0], params[1]);
                let (sd, cd) = delta.sin_cos();
                (Vec3::new(s * cd, s * sd - t, -two * a), (s * s - t * t) * half)
            }
            FamilyShape::ParallelLines => {
                let (t, s) = (params[0], params[1]);
                (Vec3::new(z, t - s, two * a), (t * t - s * s) * half)
            }
            FamilyShape::LinePlaneOblique { theta } => {
                let (sd, cd) = params[0].sin_cos();
                let (st, ct) = theta.sin_cos();
                (Vec3::new(cd, sd - st, -ct), z)
            }
            FamilyShape::LinePlaneParallel => {
                let k = params[0];
                (Vec3::new(-two * k, z, four * a), -k * k)
            }
        })
    }

    /// Parameter derivatives `(∂A, ∂b)` of the linear form, one per
    /// parameter.
    pub fn partials(&self, params: &[T]) -> Result<Vec<(Vec3<T>, T)>> {
        self.check_arity(params)?;
        let (o, z, two) = (T::one(), T::zero(), T::lit(2.0));
        Ok(match self.shape {
            FamilyShape::PointLine => vec![(Vec3::new(z, two, z), two * params[0])],
            FamilyShape::PointPlane => vec![
                (Vec3::new(two, z, z), two * params[0]),
                (Vec3::new(z, two, z), two * params[1]),
            ],
            FamilyShape::SkewLines { delta } => {
                let (sd, cd) = delta.sin_cos();
                vec![(Vec3::new(z, -o, z), -params[0]), (Vec3::new(cd, sd, z), params[1])]
            }
            FamilyShape::ParallelLines => {
                vec![(Vec3::new(z, o, z), params[0]), (Vec3::new(z, -o, z), -params[1])]
            }
            FamilyShape::LinePlaneOblique { .. } => {
                let (sd, cd) = params[0].sin_cos();
                vec![(Vec3::new(-sd, cd, z), z)]
            }
            FamilyShape::LinePlaneParallel => vec![(Vec3::new(-two, z, z), -two * params[0])],
        })
    }

    /// The family plane in canonical coordinates.
    pub fn canonical_plane(&self, params: &[T]) -> Result<Plane3<T>> {
        let (a, b) = self.linear_form(params)?;
        Plane3::new(a, b)
    }

    /// The family plane in scene coordinates.
    pub fn plane(&self, params: &[T]) -> Result<Plane3<T>> {
        let (a, b) = self.linear_form(params)?;
        // A·(Rx + t) = b
        Plane3::new(self.frame.apply_vector_inverse(a), b - a.dot(self.frame.translation()))
    }

    /// Solves `F = 0` together with the vanishing parameter derivatives, in
    /// scene coordinates: a point for two-parameter families, a line for
    /// one-parameter families.
    pub fn contact(&self, params: &[T]) -> Result<Contact<T>> {
        if self.shape == FamilyShape::ParallelLines {
            return Err(Error::NoEnvelope(
                "the parallel-line family has no envelope surface".into(),
            ));
        }
        let (a, b) = self.linear_form(params)?;
        let partials = self.partials(params)?;
        let singular = || Error::DegenerateInput("contact system is singular".into());
        let to_scene = |p: Point3<T>| self.frame.apply_point_inverse(p);
        if partials.len() == 2 {
            let (ar, br) = partials[0];
            let (as_, bs) = partials[1];
            let m = [a.x, a.y, a.z, ar.x, ar.y, ar.z, as_.x, as_.y, as_.z];
            let x = solve_dense(&m, &[b, br, bs]).ok_or_else(singular)?;
            return Ok(Contact::Point(to_scene(Vec3::new(x[0], x[1], x[2]))));
        }
        let (at, bt) = partials[0];
        let dir = a.cross(at);
        if dir.norm() <= T::identity_tol() * a.norm().max(T::one()) {
            return Err(singular());
        }
        // least-norm solution of the 2x3 system [A; A_t] x = [b; b_t]
        let (aa, ab, bb) = (a.dot(a), a.dot(at), at.dot(at));
        let g = solve_dense(&[aa, ab, ab, bb], &[b, bt]).ok_or_else(singular)?;
        let base = a * g[0] + at * g[1];
        let line = Line3::new(to_scene(base), self.frame.apply_vector_inverse(dir))?;
        Ok(Contact::Line(line))
    }

    /// The closed-form envelope quadric.
    pub fn envelope(&self) -> Result<Quadric<T>> {
        let a = self.scale;
        let z = T::zero();
        let four_a = T::lit(4.0) * a;
        let c = match self.shape {
            FamilyShape::PointLine => [z, T::one(), z, z, z, z, z, z, -four_a, z],
            FamilyShape::PointPlane => [T::one(), T::one(), z, z, z, z, z, z, -four_a, z],
            FamilyShape::SkewLines { delta } => {
                let (s, c) = delta.sin_cos();
                [c * c, -c * c, z, T::lit(2.0) * s * c, z, z, z, z, -four_a, z]
            }
            FamilyShape::ParallelLines => {
                return Err(Error::NoEnvelope(
                    "the parallel-line family has no envelope surface".into(),
                ))
            }
            FamilyShape::LinePlaneOblique { theta } => {
                let (s, c) = theta.sin_cos();
                [T::one(), c * c, -c * c, z, -T::lit(2.0) * s * c, z, z, z, z, z]
            }
            FamilyShape::LinePlaneParallel => [T::one(), z, z, z, z, z, z, z, -four_a, z],
        };
        Quadric::new(c, self.frame)
    }

    /// Rotation taking canonical coordinates to the principal axes of the
    /// envelope, for the skew-line and oblique shapes.
    pub fn normal_frame(&self) -> Option<RigidFrame<T>> {
        let half = T::lit(0.5);
        match self.shape {
            FamilyShape::SkewLines { delta } => Some(RigidFrame::rotation_z(-delta * half)),
            FamilyShape::LinePlaneOblique { theta } => Some(RigidFrame::rotation_x(theta * half)),
            _ => None,
        }
    }

    /// Envelope in principal-axis coordinates `(u, v, z)` or `(x, u, v)`:
    /// `cos δ·u² − cos δ·v² − 4az` for skew lines and
    /// `x²/cos θ + u² − v²` for an oblique line.
    pub fn normal_form(&self) -> Option<Quadric<T>> {
        let z = T::zero();
        let c = match self.shape {
            FamilyShape::SkewLines { delta } => {
                let c = delta.cos();
                [c, -c, z, z, z, z, z, z, -T::lit(4.0) * self.scale, z]
            }
            FamilyShape::LinePlaneOblique { theta } => {
                [T::one() / theta.cos(), T::one(), -T::one(), z, z, z, z, z, z, z]
            }
            _ => return None,
        };
        Quadric::new(c, RigidFrame::identity()).ok()
    }
}

/// Planes folding `p` onto a point of `m`.
pub fn family_i5<T: Scalar>(p: Point3<T>, m: &Line3<T>) -> Result<PlaneFamily<T>> {
    let frame = canonical_frame_point_line(p, m)?;
    PlaneFamily::with_frame(FamilyShape::PointLine, m.distance_to_point(p) * T::lit(0.5), frame)
}

/// Planes folding `p` onto a point of `pi`.
pub fn family_i6<T: Scalar>(p: Point3<T>, pi: &Plane3<T>) -> Result<PlaneFamily<T>> {
    let frame = canonical_frame_point_plane(p, pi)?;
    PlaneFamily::with_frame(FamilyShape::PointPlane, pi.distance(p) * T::lit(0.5), frame)
}

/// Planes folding a point of `m` onto a point of `n`.
pub fn family_i3<T: Scalar>(m: &Line3<T>, n: &Line3<T>) -> Result<PlaneFamily<T>> {
    let dist = m.distance_to_line(n);
    if dist <= T::coincidence_tol() {
        return Err(Error::InvalidConstraint(
            "I3 precondition violated: m ∩ n = ∅ (the lines intersect or coincide)".into(),
        ));
    }
    let frame = canonical_frame_lines(m, n)?;
    let half = dist * T::lit(0.5);
    if m.is_parallel_to(n, T::coincidence_tol()) {
        return PlaneFamily::with_frame(FamilyShape::ParallelLines, half, frame);
    }
    let mut d = frame.apply_vector(n.dir());
    if d.x < T::zero() {
        d = -d;
    }
    let delta = d.y.atan2(d.x);
    PlaneFamily::with_frame(FamilyShape::SkewLines { delta }, half, frame)
}

/// Planes folding `m` into `pi`.
pub fn family_i7<T: Scalar>(m: &Line3<T>, pi: &Plane3<T>) -> Result<PlaneFamily<T>> {
    let relation = classify_line_plane(m, pi);
    let frame = canonical_frame_line_plane(m, pi)?;
    match relation {
        LinePlaneRelation::ParallelDisjoint => PlaneFamily::with_frame(
            FamilyShape::LinePlaneParallel,
            pi.distance(m.base()) * T::lit(0.5),
            frame,
        ),
        _ => {
            let d = frame.apply_vector(m.dir());
            let theta = d.y.abs().atan2(d.z.abs());
            PlaneFamily::with_frame(FamilyShape::LinePlaneOblique { theta }, T::one(), frame)
        }
    }
}
