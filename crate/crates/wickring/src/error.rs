//! Error type for the analytic failure modes of the algebra.
//!
//! Structural misuse (mismatched truncation contexts, incompatible matrix
//! shapes) is a programming error and panics with a message; the variants
//! here are the mathematically meaningful failures that callers are expected
//! to handle.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Constant term too small for the element to be invertible.
    NotInvertible { constant_modulus: f64 },
    /// Constant-part determinant too small for the matrix to be invertible.
    SingularConstantPart { det_modulus: f64 },
    /// Entire-function calculus requires a vanishing constant term.
    NonzeroConstantTerm { modulus: f64 },
    /// Too few Taylor coefficients supplied for the active degree cap.
    TaylorTooShort { needed: usize, got: usize },
    /// The weight sum defining the level-gap constant diverges for q <= 1.
    DivergentWeightSum { q: f64 },
    /// Matrix is not equal to its adjoint within tolerance.
    NotHermitian { deviation: f64 },
    /// Constant part is not strictly positive definite.
    NotPositiveDefinite { min_eigenvalue: f64 },
    /// A classical (constant-part) matrix could not be inverted.
    SingularMatrix,
    /// Square root of a classical matrix with a non-positive eigenvalue.
    NotPositiveClassical { min_eigenvalue: f64 },
    /// The denominator's constant-part projection is the zero polynomial.
    ZeroDenominator,
    /// Evaluation point lies outside the function's domain: the projected
    /// denominator (nearly) vanishes there.
    PoleAtPoint { denominator_modulus: f64 },
    /// Contour quadrature needs at least 64 nodes.
    TooFewNodes { got: usize },
    /// Interpolation data violates a problem invariant.
    InvalidProblem(String),
    /// Parameter rejected: its projection is not strictly contractive on the
    /// sampling grid.
    NotSchur { max_modulus: f64 },
    /// The interpolation problem is not solvable by this method: the
    /// constant-part Pick matrix is not strictly positive definite.
    Unsolvable { min_eigenvalue: f64 },
    /// Malformed or inconsistent serialized data.
    InvalidData(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotInvertible { constant_modulus } => write!(
                f,
                "element is not invertible: |constant term| = {constant_modulus:.3e} is below the threshold"
            ),
            Error::SingularConstantPart { det_modulus } => write!(
                f,
                "matrix is not invertible: |det of constant part| = {det_modulus:.3e} is below the threshold"
            ),
            Error::NonzeroConstantTerm { modulus } => write!(
                f,
                "entire-function calculus needs a vanishing constant term, got modulus {modulus:.3e}"
            ),
            Error::TaylorTooShort { needed, got } => write!(
                f,
                "need at least {needed} Taylor coefficients for this degree cap, got {got}"
            ),
            Error::DivergentWeightSum { q } => {
                write!(f, "weight sum diverges for q = {q}; the constant A(q) requires q > 1")
            }
            Error::NotHermitian { deviation } => write!(
                f,
                "matrix is not self-adjoint: max coefficient deviation {deviation:.3e}"
            ),
            Error::NotPositiveDefinite { min_eigenvalue } => write!(
                f,
                "matrix is not strictly positive: constant part has min eigenvalue {min_eigenvalue:.3e}"
            ),
            Error::SingularMatrix => write!(f, "classical matrix is singular"),
            Error::NotPositiveClassical { min_eigenvalue } => write!(
                f,
                "classical matrix square root needs positive eigenvalues, found {min_eigenvalue:.3e}"
            ),
            Error::ZeroDenominator => write!(
                f,
                "denominator projects to the identically zero polynomial"
            ),
            Error::PoleAtPoint { denominator_modulus } => write!(
                f,
                "evaluation point outside the domain: projected denominator has modulus {denominator_modulus:.3e}"
            ),
            Error::TooFewNodes { got } => {
                write!(f, "contour quadrature needs at least 64 nodes, got {got}")
            }
            Error::InvalidProblem(msg) => write!(f, "invalid interpolation problem: {msg}"),
            Error::NotSchur { max_modulus } => write!(
                f,
                "parameter is not strictly contractive: max sampled modulus {max_modulus:.6}"
            ),
            Error::Unsolvable { min_eigenvalue } => write!(
                f,
                "problem not solvable by this method: the Pick matrix is not strictly positive \
                 (its constant part has min eigenvalue {min_eigenvalue:.3e}, and strict ring \
                 positivity holds exactly when the constant part is positive definite)"
            ),
            Error::InvalidData(msg) => write!(f, "invalid data: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
