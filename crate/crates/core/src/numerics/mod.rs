//! Root finding: closed-form quadratic/cubic roots, damped Newton for small
//! systems, and the brute-force grid oracle over fold-plane space.

mod linalg;
mod newton;
mod oracle;
mod poly;
mod roots;

pub use linalg::{det3, solve_dense};
pub use newton::{damped_newton, newton_multistart, NewtonOptions};
pub use oracle::{grid_oracle, plane_from_angles, OracleCluster, OracleOptions, OracleResult};
pub(crate) use oracle::{default_window, stacked_equations};
pub use poly::Poly;
pub use roots::{eval_poly, real_roots_cubic, real_roots_poly, real_roots_quadratic, RealRoots, Root};
