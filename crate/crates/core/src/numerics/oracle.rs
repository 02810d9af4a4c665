//! Exhaustive search over fold-plane space.
//!
//! A plane is parameterized by the polar angle `θ` and azimuth `φ` of its
//! normal and its offset `d`. The oracle tabulates the summed constraint
//! residual on a regular grid, refines every grid-local minimum with damped
//! Newton on the smooth constraint equations, and clusters the converged
//! planes.

use rayon::prelude::*;

use crate::constraints::{dedup_planes, Constraint};
use crate::geom::{Plane3, Vec3};
use crate::scalar::Scalar;

use super::newton::{damped_newton, NewtonOptions};

/// The plane with normal `(sin θ cos φ, sin θ sin φ, cos θ)` and offset `d`.
pub fn plane_from_angles<T: Scalar>(theta: T, phi: T, d: T) -> Plane3<T> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Plane3::new(Vec3::new(st * cp, st * sp, ct), d).expect("unit normal")
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions<T> {
    /// Grid points per angular axis.
    pub resolution: usize,
    /// Grid points along the offset axis; `None` means `4/3 · resolution`.
    pub offsets: Option<usize>,
    /// Half-width of the offset range; `None` means three times the largest
    /// anchor distance of the constraints (at least 1).
    pub window: Option<T>,
    /// Largest accepted constraint residual after refinement.
    pub tol: T,
    /// At most this many grid-local minima (the lowest) are refined, plus at
    /// most eight times as many cells below the coarse threshold.
    pub max_minima: usize,
}

impl<T: Scalar> Default for OracleOptions<T> {
    fn default() -> Self {
        Self {
            resolution: 48,
            offsets: None,
            window: None,
            tol: T::lit(1e-6),
            max_minima: 256,
        }
    }
}

impl<T: Scalar> OracleOptions<T> {
    pub fn with_resolution(resolution: usize) -> Self {
        Self { resolution, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleCluster<T> {
    pub plane: Plane3<T>,
    /// Largest constraint residual at the representative plane.
    pub residual: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult<T> {
    pub clusters: Vec<OracleCluster<T>>,
    pub resolution: usize,
    /// Number of local refinements run.
    pub refinement_iterations: usize,
}

fn max_residual<T: Scalar>(constraints: &[Constraint<T>], plane: &Plane3<T>) -> T {
    constraints.iter().fold(T::zero(), |m, c| m.max(c.residual(plane)))
}

/// Stacked smooth equations of `constraints` at the plane `x = (θ, φ, d)`.
pub(crate) fn stacked_equations<T: Scalar>(constraints: &[Constraint<T>], x: &[T]) -> Vec<T> {
    let plane = plane_from_angles(x[0], x[1], x[2]);
    let mut out = Vec::with_capacity(4 * constraints.len());
    for c in constraints {
        c.equations(&plane, &mut out);
    }
    out
}

/// Default offset half-width for a constraint set.
pub(crate) fn default_window<T: Scalar>(constraints: &[Constraint<T>]) -> T {
    let extent = constraints.iter().fold(T::zero(), |m, c| m.max(c.extent()));
    (T::lit(3.0) * extent).max(T::one())
}

/// Runs the grid search. Intended as ground truth for solution counts of
/// finite operations; with fewer than three total codimensions the result is
/// an arbitrary sample of a continuum.
pub fn grid_oracle<T: Scalar>(
    constraints: &[Constraint<T>],
    opts: &OracleOptions<T>,
) -> OracleResult<T> {
    let nt = opts.resolution.max(2);
    let np = nt;
    let nd = opts.offsets.unwrap_or(nt * 4 / 3).max(2);
    let window = opts.window.unwrap_or_else(|| default_window(constraints));
    let theta = |i: usize| (T::from_usize(i).unwrap() + T::lit(0.5)) * T::PI() / T::from_usize(nt).unwrap();
    let phi = |j: usize| T::from_usize(j).unwrap() * T::TAU() / T::from_usize(np).unwrap();
    let offset = |k: usize| {
        -window + (T::from_usize(k).unwrap() + T::lit(0.5)) * (window + window) / T::from_usize(nd).unwrap()
    };
    let idx = |i: usize, j: usize, k: usize| (i * np + j) * nd + k;

    let values: Vec<T> = (0..nt)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..np).flat_map(move |j| {
                (0..nd).map(move |k| {
                    let plane = plane_from_angles(theta(i), phi(j), offset(k));
                    constraints.iter().map(|c| c.residual(&plane)).sum::<T>()
                })
            })
        })
        .collect();

    // A cell within one grid step of a fold has a summed residual of order
    // the step times the residuals' Lipschitz bound; such cells are refined
    // along with the grid-local minima.
    let step = T::PI() / T::from_usize(nt).unwrap() * (T::one() + window)
        + (window + window) / T::from_usize(nd).unwrap();
    let coarse = T::lit(2.0) * T::from_usize(constraints.len()).unwrap() * step;
    let mut minima: Vec<(T, usize, usize, usize)> = Vec::new();
    let mut below: Vec<(T, usize, usize, usize)> = Vec::new();
    for i in 0..nt {
        for j in 0..np {
            for k in 0..nd {
                let v = values[idx(i, j, k)];
                if v < coarse {
                    below.push((v, i, j, k));
                }
                let mut is_min = true;
                'scan: for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        for dk in -1i64..=1 {
                            if di == 0 && dj == 0 && dk == 0 {
                                continue;
                            }
                            let (ii, kk) = (i as i64 + di, k as i64 + dk);
                            if ii < 0 || ii >= nt as i64 || kk < 0 || kk >= nd as i64 {
                                continue;
                            }
                            let jj = (j as i64 + dj).rem_euclid(np as i64) as usize;
                            let n = idx(ii as usize, jj, kk as usize);
                            let w = values[n];
                            // ties go to the lower index so plateaus yield one minimum
                            if w < v || (w == v && n < idx(i, j, k)) {
                                is_min = false;
                                break 'scan;
                            }
                        }
                    }
                }
                if is_min {
                    minima.push((v, i, j, k));
                }
            }
        }
    }
    let by_value = |a: &(T, usize, usize, usize), b: &(T, usize, usize, usize)| {
        a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal)
    };
    minima.sort_by(by_value);
    minima.truncate(opts.max_minima);
    below.sort_by(by_value);
    below.truncate(opts.max_minima * 8);
    minima.extend(below);

    let newton = NewtonOptions { tol: T::lit(1e-13).max(T::epsilon() * T::lit(16.0)), max_iter: 80, ..NewtonOptions::default() };
    let f = |x: &[T]| stacked_equations(constraints, x);
    let refined: Vec<Option<OracleCluster<T>>> = minima
        .par_iter()
        .map(|&(_, i, j, k)| {
            let (x, _) = damped_newton(&f, &[theta(i), phi(j), offset(k)], &newton);
            let plane = plane_from_angles(x[0], x[1], x[2]);
            let residual = max_residual(constraints, &plane);
            (residual < opts.tol).then_some(OracleCluster { plane, residual })
        })
        .collect();

    let found: Vec<OracleCluster<T>> = refined.into_iter().flatten().collect();
    let planes = dedup_planes(found.iter().map(|c| c.plane).collect(), T::lit(1e-6));
    let clusters = planes
        .into_iter()
        .map(|plane| {
            let best = found
                .iter()
                .filter(|c| c.plane.dedup_distance(&plane) < T::lit(1e-6))
                .min_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap_or(std::cmp::Ordering::Equal))
                .expect("cluster has a member");
            best.clone()
        })
        .collect();
    OracleResult { clusters, resolution: opts.resolution, refinement_iterations: minima.len() }
}
