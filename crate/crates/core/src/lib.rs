//! Stability statuses, destabilizing strata, connectivity bounds and homotopy
//! tables for GIT stable loci of three model families: thin quiver
//! representations, linear control pairs `(A, B)`, and star-DAG Gaussian
//! samples. All arithmetic is exact.

pub mod algebra;
pub mod connectivity;
pub mod error;
pub mod families;
pub mod harness;
pub mod reports;

pub use error::{Error, Result};
