//! The graph-sum side: torus weights, disk edge factors, the fixed-point
//! sums and their verification against the closed formula.
//!
//! All weights are concrete rationals. Independence of the results from
//! the chosen weights is checked by comparing several samples exactly.

pub mod edge;
pub mod sums;
pub mod verify;
pub mod weights;

pub use edge::{disk_edge_factor, ds_y0_series, edge_factor_with_exponent, y_series, EdgeFactorFn};
pub use sums::{
    fixed_point_sum, localization_invariants, localization_potential_q, residue_oracle,
    FixedPointEvaluator, FixedPointTerm,
};
pub use verify::{
    verify_identities, verify_identities_with_edge, Identity, IdentityFailure, IdentityOutcome,
    VerificationReport,
};
pub use weights::{
    alpha_from_lambda, sample_weights, validate_weights, AlphaVector, Collision, WeightAssignment,
};
