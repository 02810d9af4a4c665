use rayon::prelude::*;

use crate::constraints::{dedup_planes, Constraint, FoldSolution};
use crate::numerics::{damped_newton, default_window, plane_from_angles, stacked_equations, NewtonOptions};
use crate::scalar::Scalar;

/// Numeric solver for any operation.
///
/// Runs Levenberg–Marquardt on the stacked constraint equations over the
/// plane parameters `(θ, φ, d)` from an `n³` lattice of starts
/// (`θ ∈ (0, π)`, `φ ∈ [0, 2π)`, `|d| ≤ window`), plus starts at 8 and 64
/// windows out along each lattice direction, and keeps the converged
/// planes whose constraint residuals are all below `tol`. Nothing proves
/// that every solution was found.
pub fn solve_generic<T: Scalar>(
    constraints: &[Constraint<T>],
    tol: T,
    seed_lattice: usize,
    window: Option<T>,
) -> FoldSolution<T> {
    let n = seed_lattice.max(1);
    let nf = T::from_usize(n).unwrap();
    let window = window.unwrap_or_else(|| default_window(constraints));
    let at = |i: usize| T::from_usize(i).unwrap() + T::lit(0.5);
    // near-grazing configurations put folds far outside the window, so each
    // direction also gets starts at a few larger offsets
    let far = [T::lit(-64.0), T::lit(-8.0), T::lit(8.0), T::lit(64.0)];
    let mut seeds = Vec::with_capacity(n * n * (n + far.len()));
    for i in 0..n {
        for j in 0..n {
            let (theta, phi) = (at(i) * T::PI() / nf, T::from_usize(j).unwrap() * T::TAU() / nf);
            for k in 0..n {
                seeds.push([theta, phi, -window + at(k) * (window + window) / nf]);
            }
            for &f in &far {
                seeds.push([theta, phi, f * window]);
            }
        }
    }
    let opts = NewtonOptions { tol: T::lit(1e-14).max(T::epsilon() * T::lit(4.0)), max_iter: 100, ..NewtonOptions::default() };
    let f = |x: &[T]| stacked_equations(constraints, x);
    let found: Vec<_> = seeds
        .par_iter()
        .filter_map(|seed| {
            let (x, _) = damped_newton(&f, seed, &opts);
            let plane = plane_from_angles(x[0], x[1], x[2]);
            constraints.iter().all(|c| c.residual(&plane) < tol).then_some(plane)
        })
        .collect();
    FoldSolution::finite(dedup_planes(found, T::lit(1e-6)))
}
