use crate::scalar::Scalar;

/// Solves the dense square system `a x = b` by Gaussian elimination with
/// partial pivoting. `a` is row-major `n × n`. Returns `None` when a pivot
/// falls below `1e-14` relative to the largest entry.
pub fn solve_dense<T: Scalar>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let max = m.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    if max == T::zero() || !max.is_finite() {
        return None;
    }
    let tiny = max * T::lit(1e-14).max(T::epsilon());
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i * n + col].abs().partial_cmp(&m[j * n + col].abs()).unwrap())?;
        if m[piv * n + col].abs() <= tiny {
            return None;
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            x.swap(col, piv);
        }
        let p = m[col * n + col];
        for row in col + 1..n {
            let f = m[row * n + col] / p;
            if f == T::zero() {
                continue;
            }
            for k in col..n {
                m[row * n + k] = m[row * n + k] - f * m[col * n + k];
            }
            x[row] = x[row] - f * x[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in col + 1..n {
            s = s - m[col * n + k] * x[k];
        }
        x[col] = s / m[col * n + col];
    }
    Some(x)
}

/// Determinant of a 3×3 matrix given by rows.
pub fn det3<T: Scalar>(m: [[T; 3]; 3]) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = [2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0];
        let x = solve_dense(&a, &[3.0, 5.0, 5.0]).unwrap();
        for (got, want) in x.iter().zip([1.0f64, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!(solve_dense(&[1.0, 2.0, 2.0, 4.0], &[1.0, 2.0]).is_none());
    }

    #[test]
    fn det3_identity() {
        assert_eq!(det3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]), 1.0);
    }
}
