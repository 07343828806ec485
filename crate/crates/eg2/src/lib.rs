//! Numerical toolkit for the exponentiated Gumbel type-II (EG2) lifetime
//! family and the stochastic orderings of its extreme order statistics.
//!
//! The crate provides
//!
//! * exact pointwise evaluation of the EG2 distribution (cdf, survival,
//!   density, hazard, reversed hazard) and the three scalar kernels its
//!   ordering arguments rest on ([`dist`], [`kernel`]);
//! * series and parallel system lifetimes for independent heterogeneous
//!   components ([`system`]);
//! * vector and matrix majorization machinery, including T-transform
//!   chains and the S_n / T_n membership checks ([`majorization`]);
//! * grid-based comparators for the usual stochastic, failure-rate,
//!   reversed-failure-rate, and likelihood-ratio orders, together with
//!   Schur finite-difference evidence and a crossing finder ([`order`],
//!   [`schur`], [`grid`]).
//!
//! Everything is pure and deterministic; grid sweeps parallelize over
//! points via rayon (the default `parallel` feature) with a sequential
//! fallback when built with `--no-default-features`.

pub mod dist;
pub mod error;
pub mod grid;
pub mod kernel;
pub mod majorization;
mod num;
pub mod order;
pub mod schur;
pub mod system;

pub use dist::{EG2Params, Probability};
pub use error::{Error, Result};
pub use grid::{GridSpec, Spacing};
pub use majorization::{
    apply_transforms, majorizes, recover_t_transform_2x2, verify_chain_path, ChainReport,
    ChainStep, MatrixClass, ParamMatrix, SquareMatrix, TTransform,
};
pub use order::{
    compare_fr, compare_lr, compare_rf, compare_st, find_crossing_intervals, find_crossings,
    implication_audit, AuditReport, CrossingInterval, DominanceVerdict, Relation,
    DEFAULT_DOMINANCE_TOL,
};
pub use schur::{schur_pair_condition, theorem26_condition, SchurClass, SchurEvidence};
pub use system::{ComponentSet, SystemKind};
