//! Default numerical thresholds.
//!
//! The underlying algebra draws strict analytic dichotomies (invertible or
//! not, strictly positive or not); in double precision each of those needs a
//! floor. The values here are the library-wide defaults, and the operations
//! that depend on them accept explicit overrides where it matters.

/// Minimum modulus of a constant term (or of a constant-part determinant)
/// for an element or matrix to count as invertible.
pub const EPS_INV: f64 = 1e-12;

/// Minimum eigenvalue for a constant-part matrix to count as strictly
/// positive definite in the factorization gate.
pub const EPS_PD: f64 = 1e-10;

/// Contractivity margin required of interpolation parameters: the projected
/// parameter must stay below 1 - EPS_SCHUR in modulus on the sampling grid.
pub const EPS_SCHUR: f64 = 1e-3;

/// Absolute tolerance when checking that a matrix equals its adjoint.
pub const TOL_HERMITIAN: f64 = 1e-9;

/// Default coefficientwise tolerance for approximate equality of elements.
pub const TOL_APPROX: f64 = 1e-10;

/// Minimum separation between constant parts of interpolation nodes.
pub const EPS_DISTINCT: f64 = 1e-12;

/// Dual-norm level used for residual reporting.
pub const K_REPORT: u32 = 4;

/// Default residual gate in verification reports.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Number of boundary samples in the contractivity grid.
pub const SCHUR_GRID: usize = 200;

/// Radius of the contractivity sampling circle.
pub const SCHUR_RADIUS: f64 = 0.95;

/// Default node count for contour-quadrature evaluation.
pub const DEFAULT_NODES: usize = 512;

/// Agreement tolerance between contour evaluation and direct substitution.
pub const CONTOUR_TOL: f64 = 1e-6;
