use std::ops::{Add, Mul, Sub};

use crate::scalar::Scalar;

/// Dense univariate polynomial, ascending coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T>(pub Vec<T>);

impl<T: Scalar> Poly<T> {
    pub fn constant(c: T) -> Self {
        Self(vec![c])
    }

    /// `a + b x`.
    pub fn linear(a: T, b: T) -> Self {
        Self(vec![a, b])
    }

    pub fn eval(&self, x: T) -> T {
        super::roots::eval_poly(&self.0, x)
    }

    pub fn scale(&self, k: T) -> Self {
        Self(self.0.iter().map(|&c| c * k).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.0
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: Self) -> Poly<T> {
        let n = self.0.len().max(o.0.len());
        let get = |p: &Poly<T>, i: usize| p.0.get(i).copied().unwrap_or_else(T::zero);
        Poly((0..n).map(|i| get(self, i) + get(o, i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: Self) -> Poly<T> {
        self + &o.scale(-T::one())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: Self) -> Poly<T> {
        let mut out = vec![T::zero(); self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly(out)
    }
}
