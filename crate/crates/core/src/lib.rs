//! Exact certification of sparsest and least l1-norm solutions to
//! linear systems.
//!
//! Everything runs over arbitrary-precision rationals: the simplex
//! engine, the range-space witness programs, and the brute-force
//! enumerations. That makes the verdicts certificates rather than
//! numerics - a strict inequality like `tau < 1` is decided exactly,
//! never within a tolerance.
//!
//! Layering, bottom up:
//!
//! - [`rational`]: scalars, exact parsing of `p/q` and decimal
//!   literals, canonical formatting.
//! - [`linalg`]: dense rational matrices, reduced row echelon form,
//!   rank, solves, null-space bases.
//! - [`lp`]: a two-phase simplex with Bland's rule and an exact
//!   reduced-cost optimality certificate, plus an optimal-face probe.
//! - [`l1`]: basis pursuit, its inspectable reformulations, and the
//!   sparsest-solution enumerator.
//! - [`rsp`]: the tau program deciding the range-space property at a
//!   point, dual certificates, the uniqueness verdict, and the system
//!   classifier.
//! - [`analysis`]: coherence, spark, order-K sweeps (plain and weak),
//!   and the uniform-recovery oracle.

pub mod analysis;
pub mod l1;
pub mod linalg;
pub mod lp;
pub mod rational;
pub mod rsp;

pub use analysis::{
    build_h_g, mutual_coherence, rsp_order, spark, uniform_recovery_oracle, weak_rsp_order,
    AnalysisError, CoherenceReport, OrderRspReport, RecoveryReport,
};
pub use l1::{
    basis_pursuit_lp, build_lp1, build_lp3, default_k_max, solve_min_l1, sparsest_solutions,
    L1Error, LinearSystem, Lp3Construction, SparsestOutcome, SparsestSet,
};
pub use linalg::{
    columns_independent, dot, nullspace_basis, rank, rref, solve_linear, LinalgError,
    LinearSolveOutcome, Matrix, Vector,
};
pub use lp::{
    optimal_face_range, point_satisfies, simplex_solve, simplex_solve_with_stats,
    to_standard_form, ConstraintSense, FaceBound, LpError, LpOutcome, LpProblem, LpSolution,
    SolveStats, VarBound, VariableMap,
};
pub use rational::{format_rational, frac, l0_norm, l1_norm, parse_rational, rat, Rational};
pub use rsp::{
    certify_unique_l1, classify_system, dual_certificate_from_eta, rsp_at_point,
    rsp_for_sign_pattern, support_partition, DualCertificate, RspError, RspPointReport,
    SupportPartition, SystemClassification, SystemGroup, UniquenessVerdict,
};
