//! Harmonic analysis on finite inverse semigroups.
//!
//! The crate realizes the restricted convolution algebra `l^1_r(S)`, the
//! restricted left and right regular representations, and decision
//! procedures for (restricted, extendible) positive definite functions,
//! including the square-root factorization `φ = ξ • ξ̃`.
//!
//! ```
//! use std::sync::Arc;
//! use invsemi::{chain_semilattice, is_pd, is_rpd, SFunction, Tolerance};
//!
//! let chain = Arc::new(chain_semilattice(2).unwrap());
//! let u = SFunction::from_real(&chain, &[1.0, 2.0]).unwrap();
//! assert!(!is_pd(&u, Tolerance::default()).verdict);
//! assert!(is_rpd(&u, Tolerance::default()).verdict);
//! ```

pub mod corpus;
pub mod error;
pub mod function;
pub mod io;
pub mod linalg;
pub mod positive;
pub mod representation;
pub mod semigroup;
pub mod suite;

pub use corpus::{builtin, resolve, CORPUS_DIR_ENV, DEFAULT_CORPUS};
pub use error::{Error, Result, SemigroupError};
pub use function::{algebra_identity, polarization_rhs, Norm, SFunction};
pub use io::FileError;
pub use positive::{
    godement_factorize, gram_pd, gram_rpd, is_extendible_rpd, is_pd, is_rpd,
    positive_functional_check, random_rpd, tau_extend, tau_restrict, CheckReport,
    GodementFactorization, Tolerance,
};
pub use representation::{
    coefficient_function, extend_to_sr, is_restricted_representation, is_star_representation,
    lambda_r, lift_lambda, lift_rho, restrict_from_sr, rho_r, LinearOperator, Representation,
    RepresentationReport,
};
pub use semigroup::{
    chain_semilattice, cyclic_group, direct_product, group_from_table, symmetric_group,
    symmetric_inverse_monoid, validate_table, ElementSet, InverseSemigroup,
};

pub use suite::{run_suite, SuiteConfig, SuiteReport};

pub use num_complex::Complex64;
