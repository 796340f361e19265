//! Sharp constants, superquadratic refinements and Euler-Lagrange type
//! identities for weighted power sums `sum |x_i|^p / mu_i`, together with a
//! brute-force oracle that checks them numerically.
//!
//! The modules build on each other:
//!
//! * [`domain`] holds exponents, systems, sign cases and inequality reports.
//! * [`bounds`] computes the sharp constant and checks the three sign cases.
//! * [`superquad`] refines the bound using superquadracity of `x^p`.
//! * [`oracle`] searches and fuzzes independently of the closed forms.
//! * [`cli`] is the JSON front end behind the `sharpbound` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod domain;
pub mod error;
pub mod oracle;
pub mod superquad;

pub use bounds::{
    admissible_case_i, admissible_case_ii, admissible_case_iii, bohr_chain_check, bohr_params, case_ii_transform,
    check_case_i, check_case_ii, check_case_iii, extremal_point, q_weights, sharp_lambda, BohrParams,
    BoundCertificate, CaseTransform,
};
pub use domain::{
    classify_case, conjugate_exponent, moduli, CaseLabel, Complex, Direction, Exponent, InequalityReport,
    WeightedSystem,
};
pub use error::{Error, Result};
pub use superquad::{
    euler_lagrange_identity, jensen_refinement, refined_bound, subquadratic_gap, superquadratic_check,
    two_term_refined_bound, RefinedBound,
};
