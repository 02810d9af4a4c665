//! Fold planes in 3D space.
//!
//! A fold is a reflection in a plane. This crate models the twelve
//! incidence constraints a fold plane can be asked to satisfy (a point
//! folded onto a point, a line onto a plane, a plane onto itself, ...),
//! the quadric envelopes of the one- and two-parameter families of
//! solutions, the 47 elementary fold operations obtained by combining
//! constraints, and solvers for them.
//!
//! All geometry is generic over a [`Scalar`] (`f32` or `f64`). The aliases
//! at the crate root fix the scalar to `f64`, which is what the solvers and
//! the command-line tool use.

pub mod constraints;
pub mod envelopes;
mod error;
pub mod fold_ops;
pub mod geom;
pub mod io;
pub mod numerics;
mod scalar;

pub use error::{Error, Result};
pub use scalar::{Scalar, Tolerance};

pub type Vec3 = geom::Vec3<f64>;
pub type Point3 = geom::Point3<f64>;
pub type Line3 = geom::Line3<f64>;
pub type Plane3 = geom::Plane3<f64>;
pub type RigidFrame = geom::RigidFrame<f64>;
pub type Constraint = constraints::Constraint<f64>;
pub type FoldSolution = constraints::FoldSolution<f64>;
pub type SolutionFamily = constraints::SolutionFamily<f64>;
pub type PlaneFamily = envelopes::PlaneFamily<f64>;
pub type Quadric = envelopes::Quadric<f64>;

/// Single-precision aliases.
pub mod f32 {
    pub type Vec3 = crate::geom::Vec3<f32>;
    pub type Point3 = crate::geom::Point3<f32>;
    pub type Line3 = crate::geom::Line3<f32>;
    pub type Plane3 = crate::geom::Plane3<f32>;
    pub type RigidFrame = crate::geom::RigidFrame<f32>;
}
