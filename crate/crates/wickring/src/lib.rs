//! A workbench for a truncated model of the commutative ring of power series
//! in countably many complex variables z1, z2, z3, ... under the Wick
//! (Cauchy) product.
//!
//! Computation happens in the finite graded quotient selected by a
//! [`TruncationContext`] (m active variables, total degree capped at d).
//! Inside the quotient every element with vanishing constant term is
//! nilpotent, which makes inverses and entire-function calculus exact finite
//! sums. On top of the scalar ring the crate provides:
//!
//! * matrices over the ring, with adjoints, Neumann-series inversion,
//!   Faddeev-LeVerrier determinants/adjugates, and the square-root
//!   factorization A = G G* of strictly positive matrices;
//! * polynomials and rational functions in one complex variable lambda with
//!   ring coefficients, state-space realizations of their transfer functions,
//!   evaluation at complex points and at ring points, and a Cauchy-integral
//!   (contour quadrature) evaluation that serves as an independent oracle;
//! * the ring-valued Nevanlinna-Pick interpolation solver: Pick matrix,
//!   J-inner generating matrix Theta, linear-fractional parameterization of
//!   solutions, and verification reports;
//! * weighted coefficient norms at integer levels, and the level-gap constant
//!   A(q) governing the Wick product's cross-level norm inequality.
//!
//! Elements are immutable values and all operations are pure functions, so
//! concurrent reads are always safe. Iteration over stored coefficients is in
//! graded lexicographic order, which fixes every floating-point summation
//! order and makes results reproducible run to run.

pub mod cmatrix;
pub mod consts;
pub mod context;
pub mod element;
pub mod error;
pub mod index;
pub mod interpolation;
pub mod matrix;
pub mod norms;
pub mod poly;
pub mod rational;
pub mod realization;
pub mod serial;
pub mod series;
#[cfg(test)]
pub(crate) mod testutil;

pub use cmatrix::CMatrix;
pub use context::TruncationContext;
pub use element::RingElement;
pub use error::Error;
pub use index::MultiIndex;
pub use interpolation::{
    classical_solve, lft_apply, theta_identity_residual, verify_solution, InterpolationProblem,
    SchurParameter, SolutionReport, ThetaMatrix, VerifyOptions,
};
pub use matrix::RingMatrix;
pub use norms::vage_constant;
pub use poly::{MatrixPoly, ScalarPoly};
pub use rational::{blaschke_factor, BlaschkeVariant, RingRational};
pub use realization::{wick_convolve, Realization};

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex64;
