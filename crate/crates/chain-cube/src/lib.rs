//! Finite chain complexes with exact arithmetic, poset-indexed diagrams of
//! them, homotopy limits and colimits by totalization over the strict chains
//! of the shape, and the cube predicates built from those: cartesian,
//! cocartesian, strongly cocartesian, the covering-lemma comparison, and the
//! split-diagram decomposition check.
//!
//! Everything here is rank arithmetic over `Scalar` (arbitrary-precision
//! rationals), so "quasi-isomorphism" always means an exactly acyclic
//! mapping cone, never a tolerance.

pub mod complex;
pub mod cube;
pub mod diagram;
pub mod matrix;
pub mod sample;
pub mod verify;

pub use complex::{
    integral_homology, ChainComplex, ChainError, ChainMap, Cylinder, IntegralHomology,
};
pub use cube::{
    is_cartesian, is_cocartesian, is_strongly_cocartesian, lambda_cube,
    orbit_pushout_homology, total_cofiber, CubeDiagram,
};
pub use diagram::{hocolim, holim, holim_comparison, GradedMap, PosetDiagram, Totalization};
pub use matrix::{smith_invariant_factors, Matrix};
pub use verify::{verify_covering_lemma, verify_decomp, DecompReport};

/// Coefficient ring for all the linear algebra: a field in practice. The
/// exact instantiation used across the workspace is [`Scalar`]; `f64` also
/// satisfies the bounds for quick approximate experiments.
pub trait Coeff:
    Clone
    + PartialEq
    + std::fmt::Debug
    + std::fmt::Display
    + num_traits::Zero
    + num_traits::One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Div<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + std::fmt::Display
        + num_traits::Zero
        + num_traits::One
        + std::ops::Neg<Output = Self>
        + std::ops::Sub<Output = Self>
        + std::ops::Div<Output = Self>
{
}

/// The exact scalar type every verifier runs over.
pub type Scalar = num_rational::BigRational;

/// Seed used by every randomized suite unless the caller passes another one.
pub const DEFAULT_SEED: u64 = 20260814;

/// Shorthand for an integer scalar, exact.
pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}
