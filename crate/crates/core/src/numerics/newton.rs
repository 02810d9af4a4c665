use rayon::prelude::*;

use crate::scalar::Scalar;

use super::linalg::solve_dense;

/// Settings for the damped Newton (Levenberg–Marquardt) iteration.
#[derive(Clone, Copy, Debug)]
pub struct NewtonOptions<T> {
    /// A run converges when the residual norm drops below this value.
    pub tol: T,
    pub max_iter: usize,
    /// Converged parameter vectors closer than this are merged.
    pub cluster_radius: T,
}

impl<T: Scalar> Default for NewtonOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-12).max(T::epsilon() * T::lit(64.0)),
            max_iter: 60,
            cluster_radius: T::lit(1e-6).max(T::epsilon().sqrt()),
        }
    }
}

fn norm<T: Scalar>(r: &[T]) -> T {
    r.iter().fold(T::zero(), |acc, &v| acc.hypot(v))
}

/// Central-difference Jacobian, step `h = fd_step · (1 + |x_i|)`.
fn jacobian<T, F>(f: &F, x: &[T], m: usize) -> Vec<T>
where
    T: Scalar,
    F: Fn(&[T]) -> Vec<T>,
{
    let n = x.len();
    let mut jac = vec![T::zero(); m * n];
    let mut xp = x.to_vec();
    for j in 0..n {
        let h = T::fd_step() * (T::one() + x[j].abs());
        xp[j] = x[j] + h;
        let fp = f(&xp);
        xp[j] = x[j] - h;
        let fm = f(&xp);
        xp[j] = x[j];
        for i in 0..m {
            jac[i * n + j] = (fp[i] - fm[i]) / (h + h);
        }
    }
    jac
}

/// Runs one damped Newton iteration from `x0`. Returns the final point and
/// its residual norm, whether or not it converged.
pub fn damped_newton<T, F>(f: &F, x0: &[T], opts: &NewtonOptions<T>) -> (Vec<T>, T)
where
    T: Scalar,
    F: Fn(&[T]) -> Vec<T>,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut r = f(&x);
    let mut rn = norm(&r);
    let mut lambda = T::lit(1e-3);
    let mut iter = 0;
    while iter < opts.max_iter && rn.is_finite() && rn > opts.tol {
        iter += 1;
        let m = r.len();
        let jac = jacobian(f, &x, m);
        // normal equations JᵀJ δ = -Jᵀ r
        let mut jtj = vec![T::zero(); n * n];
        let mut jtr = vec![T::zero(); n];
        for i in 0..m {
            for a in 0..n {
                let ja = jac[i * n + a];
                jtr[a] = jtr[a] + ja * r[i];
                for b in 0..n {
                    jtj[a * n + b] = jtj[a * n + b] + ja * jac[i * n + b];
                }
            }
        }
        let mut improved = false;
        while lambda < T::lit(1e12) {
            let mut damped = jtj.clone();
            for a in 0..n {
                let d = damped[a * n + a];
                damped[a * n + a] = d + lambda * (d + T::lit(1e-12));
            }
            let rhs: Vec<T> = jtr.iter().map(|&v| -v).collect();
            let Some(step) = solve_dense(&damped, &rhs) else {
                lambda = lambda * T::lit(10.0);
                continue;
            };
            let trial: Vec<T> = x.iter().zip(&step).map(|(&a, &b)| a + b).collect();
            let rt = f(&trial);
            let rtn = norm(&rt);
            if rtn.is_finite() && rtn < rn {
                let moved = norm(&step);
                x = trial;
                r = rt;
                rn = rtn;
                lambda = (lambda / T::lit(3.0)).max(T::lit(1e-15));
                improved = true;
                if moved <= T::epsilon() * (T::one() + norm(&x)) {
                    return (x, rn);
                }
                break;
            }
            lambda = lambda * T::lit(4.0);
        }
        if !improved {
            break;
        }
    }
    (x, rn)
}

/// Runs damped Newton from every seed, keeps the runs whose residual norm is
/// below `opts.tol`, and merges results closer than `opts.cluster_radius`.
///
/// Seeds are independent and run in parallel; the output depends only on the
/// inputs (merge in seed order, then lexicographic sort).
pub fn newton_multistart<T, F>(f: F, seeds: &[Vec<T>], opts: &NewtonOptions<T>) -> Vec<Vec<T>>
where
    T: Scalar,
    F: Fn(&[T]) -> Vec<T> + Sync,
{
    let runs: Vec<Option<Vec<T>>> = seeds
        .par_iter()
        .map(|s| {
            let (x, rn) = damped_newton(&f, s, opts);
            (rn <= opts.tol).then_some(x)
        })
        .collect();
    let mut out: Vec<Vec<T>> = Vec::new();
    for x in runs.into_iter().flatten() {
        let dup = out.iter().any(|y| {
            let d: Vec<T> = x.iter().zip(y).map(|(&a, &b)| a - b).collect();
            norm(&d) <= opts.cluster_radius
        });
        if !dup {
            out.push(x);
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite solutions"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_roots() {
        let f = |x: &[f64]| vec![x[0] * x[0] - 4.0];
        let seeds = vec![vec![-3.0], vec![0.5], vec![3.0]];
        let sols = newton_multistart(f, &seeds, &NewtonOptions::default());
        assert_eq!(sols.len(), 2);
        assert!((sols[0][0] + 2.0).abs() < 1e-12);
        assert!((sols[1][0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn no_zero_gives_empty() {
        let f = |x: &[f64]| vec![x[0] * x[0] + 1.0];
        let seeds = vec![vec![-3.0], vec![0.5], vec![3.0]];
        assert!(newton_multistart(f, &seeds, &NewtonOptions::default()).is_empty());
    }

    #[test]
    fn overdetermined_system() {
        // circle ∩ line, with a redundant copy of the line equation
        let f = |x: &[f64]| vec![x[0] * x[0] + x[1] * x[1] - 1.0, x[0] - x[1], 2.0 * (x[0] - x[1])];
        let seeds: Vec<Vec<f64>> = (-2..=2)
            .flat_map(|i| (-2..=2).map(move |j| vec![i as f64, j as f64 + 0.1]))
            .collect();
        let sols = newton_multistart(f, &seeds, &NewtonOptions::default());
        assert_eq!(sols.len(), 2);
        let h = 0.5f64.sqrt();
        assert!((sols[0][0] + h).abs() < 1e-10 && (sols[1][0] - h).abs() < 1e-10);
    }

    #[test]
    fn deterministic() {
        let f = |x: &[f64]| vec![x[0].sin() - 0.5 * x[1], x[1] * x[1] - 0.25];
        let seeds: Vec<Vec<f64>> = (0..40).map(|i| vec![i as f64 * 0.37 - 7.0, 1.0]).collect();
        let a = newton_multistart(f, &seeds, &NewtonOptions::default());
        let b = newton_multistart(f, &seeds, &NewtonOptions::default());
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }
}
