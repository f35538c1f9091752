//! Finite metric spaces whose distances live in `[0, ∞]`.
//!
//! The crate provides, in rough dependency order:
//!
//! - [`dist`]: the extended-distance value type [`ExtDist`] with saturating
//!   arithmetic and a total order,
//! - [`space`]: semi-metric and metric spaces on named points, axiom
//!   validation, and the basic constructors (two-point spaces, discrete
//!   spaces, discretized segments, tensor products, coproducts, components),
//! - [`morphism`]: point maps with Lipschitz/expansivity constants and the
//!   contraction/isometry predicates,
//! - [`gluing`]: quotients by an equivalence relation via chain infima, a
//!   brute-force oracle for small inputs, and multiple pushouts with the
//!   closed-form distance formulas,
//! - [`graph`] / [`diagram`]: oriented multigraphs, diagrams of spaces over
//!   them, and their colimits,
//! - [`pathconvex`]: discrete intrinsic (ε-path) metrics, midpoint defects,
//!   and convexification by gluing discretized segments,
//! - [`hom`]: enumerated contraction spaces with the sup metric, currying,
//!   and the tensor/hom adjunction at finite scale.
//!
//! Everything is deterministic: point and block orderings are canonical, and
//! no operation depends on hash iteration order. The crate is `no_std`
//! compatible (requires `alloc`); disable the default `std` feature for
//! embedded use.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod diagram;
pub mod dist;
pub mod gluing;
pub mod graph;
pub mod hom;
pub mod morphism;
pub mod pathconvex;
pub mod space;

pub(crate) mod apsp;
#[cfg(test)]
pub(crate) mod testgen;
pub(crate) mod unionfind;

pub use dist::{DistError, ExtDist, DEFAULT_TOL};
pub use morphism::PointMap;
pub use space::{MetricSpace, PointId, SemiMetricSpace};
