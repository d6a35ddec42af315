//! Exact linear algebra and the group/1-PS/character combinatorics used by every model family.

pub mod group;
pub mod matrix;
pub mod modular;
pub mod rational;

pub use group::{
    centralizer_dim, character_pairing, group_dim, orbit_dim, parabolic_dim, Character, DiagonalOnePs, GroupSpec,
    OnePSClass, OrbitConvention, WeightData,
};
pub use matrix::{complex_rank, int_matrix, rational_rank, ComplexMatrix, Matrix, RationalMatrix, Scalar};
pub use rational::{ComplexRational, Rational};
