use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A real root with its multiplicity (1, 2 or 3).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root<T> {
    pub value: T,
    pub multiplicity: u8,
}

/// Distinct real roots of a polynomial of degree ≤ 3, ascending.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RealRoots<T> {
    pub roots: Vec<Root<T>>,
}

impl<T: Scalar> RealRoots<T> {
    fn from_values(mut values: Vec<(T, u8)>) -> Self {
        values.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite roots"));
        Self {
            roots: values
                .into_iter()
                .map(|(value, multiplicity)| Root { value, multiplicity })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn values(&self) -> Vec<T> {
        self.roots.iter().map(|r| r.value).collect()
    }
}

/// Relative threshold below which a discriminant is treated as zero.
fn disc_eps<T: Scalar>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(16.0))
}

/// Evaluates `coeffs[0] + coeffs[1] x + ...`.
pub fn eval_poly<T: Scalar>(coeffs: &[T], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
}

fn polish<T: Scalar>(ascending: &[T], x: T) -> T {
    let f = eval_poly(ascending, x);
    let deriv: Vec<T> = ascending
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * T::lit(i as f64))
        .collect();
    let df = eval_poly(&deriv, x);
    if df == T::zero() || !df.is_finite() {
        return x;
    }
    let y = x - f / df;
    if y.is_finite() && eval_poly(ascending, y).abs() <= f.abs() {
        y
    } else {
        x
    }
}

/// Real roots of `c2 x² + c1 x + c0`.
///
/// Uses the cancellation-free pairing `q = -(c1 + sign(c1) √disc) / 2`,
/// roots `q / c2` and `c0 / q`. Falls back to the linear case when `c2 = 0`.
pub fn real_roots_quadratic<T: Scalar>(c2: T, c1: T, c0: T) -> Result<RealRoots<T>> {
    if !(c2.is_finite() && c1.is_finite() && c0.is_finite()) {
        return Err(Error::InvalidInput("non-finite polynomial coefficient".into()));
    }
    let zero = T::zero();
    if c2 == zero {
        if c1 == zero {
            return if c0 == zero {
                Err(Error::AllRealLine)
            } else {
                Err(Error::DegenerateInput("constant non-zero polynomial has no roots".into()))
            };
        }
        return Ok(RealRoots::from_values(vec![(-c0 / c1, 1)]));
    }
    let four = T::lit(4.0);
    let disc = c1 * c1 - four * c2 * c0;
    let scale = (c1 * c1).max((four * c2 * c0).abs());
    if disc.abs() <= disc_eps::<T>() * scale {
        let x = -c1 / (c2 + c2);
        return Ok(RealRoots::from_values(vec![(x, 2)]));
    }
    if disc < zero {
        return Ok(RealRoots::default());
    }
    let sign = if c1 < zero { -T::one() } else { T::one() };
    let q = -(c1 + sign * disc.sqrt()) * T::lit(0.5);
    let coeffs = [c0, c1, c2];
    let r1 = polish(&coeffs, q / c2);
    let r2 = polish(&coeffs, c0 / q);
    Ok(RealRoots::from_values(vec![(r1, 1), (r2, 1)]))
}

/// Real roots of `c3 x³ + c2 x² + c1 x + c0`.
///
/// Depressed-cubic split: Cardano for one real root, the trigonometric form
/// for three, and the closed multiple-root forms when the discriminant is
/// within a relative 1e-12 of zero. Every root gets one Newton polish step.
/// Delegates to [`real_roots_quadratic`] when `c3 = 0`.
pub fn real_roots_cubic<T: Scalar>(c3: T, c2: T, c1: T, c0: T) -> Result<RealRoots<T>> {
    if !c3.is_finite() {
        return Err(Error::InvalidInput("non-finite polynomial coefficient".into()));
    }
    if c3 == T::zero() {
        return real_roots_quadratic(c2, c1, c0);
    }
    let coeffs = [c0, c1, c2, c3];
    let (b, c, d) = (c2 / c3, c1 / c3, c0 / c3);
    let three = T::lit(3.0);
    let shift = b / three;
    let p = c - b * b / three;
    let q = T::lit(2.0) * b * b * b / T::lit(27.0) - b * c / three + d;
    let half_q = q * T::lit(0.5);
    let third_p = p / three;
    let cube = third_p * third_p * third_p;
    let disc = half_q * half_q + cube;
    let scale = half_q * half_q + cube.abs();

    let mut out: Vec<(T, u8)> = Vec::with_capacity(3);
    if scale == T::zero() || disc.abs() <= disc_eps::<T>() * scale {
        if p.abs() <= disc_eps::<T>().sqrt() * (T::one() + b * b) || scale == T::zero() {
            out.push((-shift, 3));
        } else {
            let single = three * q / p;
            let double = -three * q / (p + p);
            out.push((single - shift, 1));
            out.push((double - shift, 2));
        }
    } else if disc > T::zero() {
        let sq = disc.sqrt();
        let a = if q > T::zero() {
            -(half_q + sq).cbrt()
        } else {
            (-half_q + sq).cbrt()
        };
        let y = if a == T::zero() { T::zero() } else { a - p / (three * a) };
        out.push((y - shift, 1));
    } else {
        let r = T::lit(2.0) * (-third_p).sqrt();
        let arg = (three * q / (p + p) * (-three / p).sqrt()).max(-T::one()).min(T::one());
        let phi = arg.acos() / three;
        let tau = T::TAU() / three;
        for k in 0..3 {
            let y = r * (phi - tau * T::lit(k as f64)).cos();
            out.push((y - shift, 1));
        }
    }
    for r in out.iter_mut() {
        if r.1 == 1 {
            r.0 = polish(&coeffs, r.0);
        }
    }
    Ok(RealRoots::from_values(out))
}

/// Real roots of a polynomial of degree ≤ 3 given in ascending order.
/// Leading coefficients below `1e-13 · max|c|` are dropped.
pub fn real_roots_poly<T: Scalar>(ascending: &[T]) -> Result<RealRoots<T>> {
    let max = ascending.iter().fold(T::zero(), |m, c| m.max(c.abs()));
    if max == T::zero() {
        return Err(Error::AllRealLine);
    }
    let negligible = T::lit(1e-13).max(T::epsilon() * T::lit(8.0)) * max;
    let mut deg = ascending.len() - 1;
    while deg > 0 && ascending[deg].abs() <= negligible {
        deg -= 1;
    }
    let c = |i: usize| if i <= deg { ascending[i] } else { T::zero() };
    match deg {
        0 => Err(Error::DegenerateInput("constant non-zero polynomial has no roots".into())),
        1 | 2 => real_roots_quadratic(c(2), c(1), c(0)),
        3 => real_roots_cubic(c(3), c(2), c(1), c(0)),
        _ => Err(Error::InvalidInput("polynomial degree above 3".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vals(r: &RealRoots<f64>) -> Vec<f64> {
        r.values()
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(vals(&real_roots_quadratic(1.0, 0.0, -4.0).unwrap()), vec![-2.0, 2.0]);
        let d = real_roots_quadratic(1.0, -2.0, 1.0).unwrap();
        assert_eq!(d.roots, vec![Root { value: 1.0, multiplicity: 2 }]);
        assert!(real_roots_quadratic(1.0, 0.0, 1.0).unwrap().is_empty());
        assert_eq!(real_roots_quadratic(0.0, 0.0, 0.0), Err(Error::AllRealLine));
        assert!(matches!(real_roots_quadratic(0.0, 0.0, 3.0), Err(Error::DegenerateInput(_))));
        assert_eq!(vals(&real_roots_quadratic(0.0, 2.0, -3.0).unwrap()), vec![1.5]);
    }

    #[test]
    fn quadratic_without_cancellation() {
        // roots 1e8 and 1e-8
        let r = real_roots_quadratic(1.0, -(1e8 + 1e-8), 1.0).unwrap();
        let v = vals(&r);
        assert!((v[0] - 1e-8).abs() < 1e-22);
        assert!((v[1] - 1e8).abs() < 1e-6);
    }

    #[test]
    fn cubic_examples() {
        let r = real_roots_cubic(1.0f64, 0.0, -1.0, 0.0).unwrap();
        let v = vals(&r);
        assert_eq!(v.len(), 3);
        for (a, b) in v.iter().zip([-1.0f64, 0.0, 1.0]) {
            assert!((a - b).abs() < 1e-14);
        }
        let r = real_roots_cubic(1.0f64, 0.0, 0.0, -8.0).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r.roots[0].value - 2.0).abs() < 1e-14);
        let r = real_roots_cubic(1.0, -3.0, 3.0, -1.0).unwrap();
        assert_eq!(r.roots, vec![Root { value: 1.0, multiplicity: 3 }]);
    }

    #[test]
    fn cubic_double_root() {
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let r = real_roots_cubic(1.0f64, 0.0, -3.0, 2.0).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r.roots[0].value + 2.0).abs() < 1e-12 && r.roots[0].multiplicity == 1);
        assert!((r.roots[1].value - 1.0).abs() < 1e-12 && r.roots[1].multiplicity == 2);
    }

    #[test]
    fn cubic_with_zero_leading_delegates() {
        assert_eq!(vals(&real_roots_cubic(0.0, 1.0, 0.0, -4.0).unwrap()), vec![-2.0, 2.0]);
    }

    #[test]
    fn single_precision() {
        let r = real_roots_cubic(1.0f32, -6.0, 11.0, -6.0).unwrap();
        let v = r.values();
        assert_eq!(v.len(), 3);
        for (a, b) in v.iter().zip([1.0f32, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-3);
        }
    }

    proptest! {
        #[test]
        fn roots_have_small_scaled_residual(c3 in -10.0..10.0f64, c2 in -10.0..10.0f64,
                                            c1 in -10.0..10.0f64, c0 in -10.0..10.0f64) {
            prop_assume!(c3.abs() > 1e-3);
            let r = real_roots_cubic(c3, c2, c1, c0).unwrap();
            let max = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
            for root in &r.roots {
                let x = root.value;
                let res = eval_poly(&[c0, c1, c2, c3], x).abs();
                // scale by the magnitude of the monomials at the root
                let mag = max * (1.0 + x.abs()).powi(3);
                prop_assert!(res / mag < 1e-10, "residual {} at {}", res / mag, x);
            }
        }

        #[test]
        fn cubic_from_known_roots(a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64) {
            prop_assume!((a - b).abs() > 1e-2 && (b - c).abs() > 1e-2 && (a - c).abs() > 1e-2);
            // (x-a)(x-b)(x-c)
            let c2 = -(a + b + c);
            let c1 = a * b + b * c + a * c;
            let c0 = -a * b * c;
            let r = real_roots_cubic(1.0, c2, c1, c0).unwrap();
            let mut want = vec![a, b, c];
            want.sort_by(|x, y| x.partial_cmp(y).unwrap());
            prop_assert_eq!(r.len(), 3);
            for (got, w) in r.values().iter().zip(want) {
                prop_assert!((got - w).abs() < 1e-6);
            }
        }
    }
}
