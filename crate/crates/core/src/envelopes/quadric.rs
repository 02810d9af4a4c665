use crate::error::{Error, Result};
use crate::geom::{Plane3, Point3, RigidFrame, Vec3};
use crate::numerics::det3;
use crate::scalar::Scalar;

/// Quadric surface
/// `c₁x² + c₂y² + c₃z² + c₄xy + c₅yz + c₆zx + c₇x + c₈y + c₉z + c₁₀ = 0`
/// with coefficients given in the coordinates of `frame` (scene to local).
///
/// Coefficients are scaled so that the largest magnitude is 1 and the first
/// nonzero coefficient is positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadric<T> {
    coeffs: [T; 10],
    frame: RigidFrame<T>,
}

type Mat4<T> = [[T; 4]; 4];

fn to_matrix<T: Scalar>(c: &[T; 10]) -> Mat4<T> {
    let h = T::lit(0.5);
    [
        [c[0], c[3] * h, c[5] * h, c[6] * h],
        [c[3] * h, c[1], c[4] * h, c[7] * h],
        [c[5] * h, c[4] * h, c[2], c[8] * h],
        [c[6] * h, c[7] * h, c[8] * h, c[9]],
    ]
}

fn from_matrix<T: Scalar>(m: &Mat4<T>) -> [T; 10] {
    let two = T::lit(2.0);
    [
        m[0][0],
        m[1][1],
        m[2][2],
        two * m[0][1],
        two * m[1][2],
        two * m[0][2],
        two * m[0][3],
        two * m[1][3],
        two * m[2][3],
        m[3][3],
    ]
}

/// Homogeneous matrix of `x ↦ R x + t`.
fn homogeneous<T: Scalar>(f: &RigidFrame<T>) -> Mat4<T> {
    let r = f.rotation();
    let t = f.translation();
    let (z, o) = (T::zero(), T::one());
    [
        [r[0][0], r[0][1], r[0][2], t.x],
        [r[1][0], r[1][1], r[1][2], t.y],
        [r[2][0], r[2][1], r[2][2], t.z],
        [z, z, z, o],
    ]
}

/// `Hᵀ M H`
fn congruence<T: Scalar>(m: &Mat4<T>, h: &Mat4<T>) -> Mat4<T> {
    let mut mh = [[T::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            mh[i][j] = (0..4).map(|k| m[i][k] * h[k][j]).sum();
        }
    }
    let mut out = [[T::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| h[k][i] * mh[k][j]).sum();
        }
    }
    out
}

fn normalize<T: Scalar>(c: [T; 10]) -> Option<[T; 10]> {
    let max = c.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if !(max > T::zero()) || !max.is_finite() {
        return None;
    }
    let first = c.iter().copied().find(|v| *v != T::zero())?;
    let k = if first < T::zero() { -max } else { max };
    Some(c.map(|v| v / k))
}

impl<T: Scalar> Quadric<T> {
    /// Fails when all non-constant coefficients vanish.
    pub fn new(coeffs: [T; 10], frame: RigidFrame<T>) -> Result<Self> {
        if coeffs[..9].iter().all(|c| *c == T::zero()) || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::DegenerateInput("quadric has no non-constant terms".into()));
        }
        let coeffs = normalize(coeffs).expect("checked nonzero");
        Ok(Self { coeffs, frame })
    }

    /// Coefficients in local coordinates.
    pub fn coeffs(&self) -> [T; 10] {
        self.coeffs
    }

    pub fn frame(&self) -> RigidFrame<T> {
        self.frame
    }

    /// Value in local coordinates.
    pub fn eval_local(&self, p: Point3<T>) -> T {
        let c = &self.coeffs;
        let (x, y, z) = (p.x, p.y, p.z);
        c[0] * x * x
            + c[1] * y * y
            + c[2] * z * z
            + c[3] * x * y
            + c[4] * y * z
            + c[5] * z * x
            + c[6] * x
            + c[7] * y
            + c[8] * z
            + c[9]
    }

    /// Gradient in local coordinates.
    pub fn gradient_local(&self, p: Point3<T>) -> Vec3<T> {
        let c = &self.coeffs;
        let two = T::lit(2.0);
        Vec3::new(
            two * c[0] * p.x + c[3] * p.y + c[5] * p.z + c[6],
            two * c[1] * p.y + c[3] * p.x + c[4] * p.z + c[7],
            two * c[2] * p.z + c[4] * p.y + c[5] * p.x + c[8],
        )
    }

    /// Value at a scene point.
    pub fn eval(&self, p: Point3<T>) -> T {
        self.eval_local(self.frame.apply_point(p))
    }

    /// Gradient at a scene point, in scene coordinates.
    pub fn gradient(&self, p: Point3<T>) -> Vec3<T> {
        self.frame.apply_vector_inverse(self.gradient_local(self.frame.apply_point(p)))
    }

    /// Coefficients of `y ↦ Q(f(y))`, canonically scaled.
    fn pullback(&self, f: &RigidFrame<T>) -> [T; 10] {
        let m = congruence(&to_matrix(&self.coeffs), &homogeneous(f));
        normalize(from_matrix(&m)).unwrap_or([T::zero(); 10])
    }

    /// Coefficients in scene coordinates.
    pub fn in_scene_coordinates(&self) -> [T; 10] {
        self.pullback(&self.frame)
    }

    /// The same surface with coefficients expressed in the coordinates
    /// `g(local)`.
    pub fn transformed(&self, g: &RigidFrame<T>) -> Quadric<T> {
        Quadric {
            coeffs: self.pullback(&g.inverse()),
            frame: g.compose(&self.frame),
        }
    }

    /// Same surface up to scaling, coefficients within `tol`.
    pub fn approx_eq_coeffs(&self, other: &[T; 10], tol: T) -> bool {
        match normalize(*other) {
            Some(o) => self.coeffs.iter().zip(o.iter()).all(|(a, b)| (*a - *b).abs() <= tol),
            None => false,
        }
    }

    /// Normalized determinant of the conic cut out by a scene plane. It
    /// vanishes when the section is degenerate, which is the case for
    /// tangent planes.
    pub fn plane_section_discriminant(&self, plane: &Plane3<T>) -> T {
        let local = self.frame.apply_plane(plane);
        let (u, v) = local.basis();
        let p0 = local.point();
        let m = to_matrix(&self.coeffs);
        let cols = [
            [u.x, u.y, u.z, T::zero()],
            [v.x, v.y, v.z, T::zero()],
            [p0.x, p0.y, p0.z, T::one()],
        ];
        let mut c = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..4)
                    .map(|k| cols[i][k] * (0..4).map(|l| m[k][l] * cols[j][l]).sum::<T>())
                    .sum();
            }
        }
        let max = c.iter().flatten().fold(T::zero(), |acc, x| acc.max(x.abs()));
        if max == T::zero() {
            return T::zero();
        }
        det3(c.map(|row| row.map(|x| x / max)))
    }
}
