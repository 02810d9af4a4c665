//! Scalar abstraction shared by every geometric routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the kernel can run on (`f32` or `f64`).
///
/// Besides the arithmetic bounds, each scalar carries its default
/// tolerances, since thresholds that are sensible for `f64` are
/// meaningless for `f32`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Default absolute threshold for incidence residuals.
    fn incidence_tol() -> Self;
    /// Default threshold for algebraic identities (unit norms, fixed points).
    fn identity_tol() -> Self;
    /// Threshold used to decide that two objects coincide, and the angular
    /// threshold (radians) for parallel/perpendicular classification.
    fn coincidence_tol() -> Self;
    /// Relative step for finite-difference Jacobians.
    fn fd_step() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn incidence_tol() -> Self {
        1e-9
    }
    fn identity_tol() -> Self {
        1e-12
    }
    fn coincidence_tol() -> Self {
        1e-10
    }
    fn fd_step() -> Self {
        1e-7
    }
}

impl Scalar for f32 {
    fn incidence_tol() -> Self {
        1e-4
    }
    fn identity_tol() -> Self {
        1e-5
    }
    fn coincidence_tol() -> Self {
        1e-5
    }
    fn fd_step() -> Self {
        1e-3
    }
}

/// Pair of thresholds used by solvers and residual checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T> {
    /// Incidence residual threshold (a plane satisfies a constraint when its
    /// residual is below this value).
    pub incidence: T,
    /// Threshold for algebraic identities.
    pub identity: T,
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            incidence: T::incidence_tol(),
            identity: T::identity_tol(),
        }
    }
}

impl<T: Scalar> Tolerance<T> {
    pub fn with_incidence(mut self, incidence: T) -> Self {
        self.incidence = incidence;
        self
    }
}
