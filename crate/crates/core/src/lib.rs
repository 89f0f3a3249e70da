//! Critical (sandpile) groups of graphs through exact integer linear
//! algebra, plus the divisor-bound and rank-inequality analysis of the
//! Laplacian of a strongly regular graph.

pub mod cli;
pub mod critical;
pub mod error;
pub mod factor;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod moore;
pub mod prime;
pub mod report;
pub mod sandpile;

pub use error::{Error, Result};
pub use factor::Factorization;
pub use graph::{check_srg, moore_graph, srg_spectrum, Graph, QuadraticIrrational, SrgParams, SrgSpectrum};
pub use linalg::{determinant, elem_divisor_profile, rank_mod_p, snf, ElemDivisorProfile, IntMatrix, SnfResult};
pub use prime::Prime;
