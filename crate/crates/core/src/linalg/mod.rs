//! Exact integer linear algebra.

pub mod bareiss;
mod local;
mod matrix;
mod snf;

pub use bareiss::{determinant, rank};
pub(crate) use local::inv_mod;
pub use local::{
    elem_divisor_profile, elem_divisor_profile_with_precision, elem_divisor_profiles, rank_mod_p, ElemDivisorProfile,
};
pub use matrix::IntMatrix;
pub use snf::{snf, SnfResult};
