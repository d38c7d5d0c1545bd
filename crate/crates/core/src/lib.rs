//! Electrical-network and percolation computations on finite balls of
//! infinite transitive and quasi-transitive graphs.
//!
//! The crate revolves around one quantity: for an edge `e` at the base
//! vertex of an infinite graph, the difference between the free and the
//! wired unit current through `e`, computed on an exhaustion by balls.
//! The free current (computed on the ball as-is) decreases with the
//! radius, the wired current (computed with the boundary contracted to a
//! single hub) increases, so the difference brackets a limit coefficient
//! in `[0, 1]`. Half the sum of these coefficients over the edges at the
//! base vertex is a numerical graph invariant; it vanishes exactly for
//! the graphs whose only harmonic functions of finite energy are the
//! constants, and for a `d`-regular tree it equals `d/2 - 1`.
//!
//! Around that core the crate provides:
//!
//! - [`graphs`]: ball construction for lattices, trees, biregular trees,
//!   free-group and surface-group Cayley graphs, with boundary marking,
//!   orbit data and boundary contraction.
//! - [`numerics`]: sparse symmetric matrices, a Jacobi-preconditioned
//!   conjugate-gradient solver, and a dense projection oracle.
//! - [`harmonic`]: unit currents, per-edge coefficients and the invariant
//!   estimator with its convergence diagnostics.
//! - [`percolation`]: label-coupled Bernoulli percolation, union-find
//!   sweeps over the retention parameter, and threshold estimators.
//! - [`randomcluster`]: heat-bath sampling of the random-cluster model
//!   under free and wired boundary conditions, expected-degree curves.
//! - [`invariants`]: cross-module consistency checks (threshold gaps
//!   against the invariant, cluster-level coefficients, cost bounds, the
//!   mass-transport identity on tori).
//! - [`cli`]: the command-line front end used by the `hdperc` binary.
//!
//! See the `examples/` directory for one runnable program per major
//! capability; `cargo run --example beta1_regular_tree` is a good start.

// Indexed loops over parallel arrays and NaN-rejecting negated
// comparisons are deliberate in the numeric kernels.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod graphs;
pub mod harmonic;
pub mod invariants;
pub mod numerics;
pub mod percolation;
pub mod randomcluster;
pub mod rng;

pub use error::{Error, Result};
pub use graphs::{GraphFamily, GraphSlice, OrbitWeights};
