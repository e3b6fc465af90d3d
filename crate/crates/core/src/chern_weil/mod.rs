//! Matrix-valued forms with truncated polynomial coefficients, connections, curvature and
//! transgression, with checks of the type-vanishing and exactness identities behind refined
//! Chern classes and Nadel invariants.
//!
//! Everything is local on `C^n`: a frame, a metric matrix and a frame change are given as
//! polynomial matrices, and all identities are compared exactly in the truncated quotient.

mod form;
mod invariant;
mod matrix;
mod scenario;

pub use form::{exponent_vectors, Ctx, Mono, PolyForm, EXACT};
pub use invariant::{
    beta_kk, characteristic_form, curvature, det_even, gauge, hermitian_connection, polarized_chern, psi, sigma, total_chern,
    transgression, types_below_diagonal, whitney_form_check, Invariant, Transgression, WhitneyReport,
};
pub use matrix::{constant_inverse, MatrixForm};
pub use scenario::{
    hermitian_pair, nadel, nadel_coefficient, random_holomorphic_type_connection, random_metric, second_connection_pair, type_vanishing,
    verify_low_types_vanish, verify_top_type_exact, ConnectionPair, LowTypeReport, TopTypeReport, NadelReport, Scenario, VanishingReport,
};
