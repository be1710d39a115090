//! Matrices over the truncated ring: Wick-product linear algebra, adjoints,
//! Neumann-series inversion, Faddeev-LeVerrier determinants and adjugates,
//! and the square-root factorization of strictly positive matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::consts::{EPS_INV, EPS_PD, TOL_HERMITIAN};
use crate::context::TruncationContext;
use crate::element::RingElement;
use crate::error::Error;
use crate::series::sqrt1p_series;

/// A rectangular matrix of ring elements sharing one truncation context,
/// stored row-major. Shape or context mismatches in binary operations are
/// programming errors and panic.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    ctx: TruncationContext,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn zeros(ctx: TruncationContext, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        RingMatrix {
            rows,
            cols,
            ctx,
            entries: vec![RingElement::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: TruncationContext, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, RingElement::one(ctx));
        }
        m
    }

    pub fn from_fn(
        ctx: TruncationContext,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> Self {
        let mut m = Self::zeros(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(e.context() == ctx, "entry context mismatch at ({i}, {j})");
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<RingElement>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match shape"
        );
        let ctx = entries[0].context();
        assert!(
            entries.iter().all(|e| e.context() == ctx),
            "mixed contexts in entries"
        );
        RingMatrix {
            rows,
            cols,
            ctx,
            entries,
        }
    }

    /// Embeds a classical complex matrix as a matrix of constants.
    pub fn embed_complex(ctx: TruncationContext, m: &CMatrix) -> Self {
        Self::from_fn(ctx, m.rows(), m.cols(), |i, j| {
            RingElement::constant(ctx, m.get(i, j))
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn context(&self) -> TruncationContext {
        self.ctx
    }

    pub fn at(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: RingElement) {
        assert!(e.context() == self.ctx, "entry context mismatch");
        self.entries[i * self.cols + j] = e;
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    fn assert_same_shape(&self, other: &Self) {
        assert!(
            self.rows == other.rows && self.cols == other.cols && self.ctx == other.ctx,
            "matrix shape or context mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            entries,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            entries,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let entries = self.entries.iter().map(|e| e.scale(factor)).collect();
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            entries,
        }
    }

    pub fn scale_element(&self, factor: &RingElement) -> Self {
        assert!(factor.context() == self.ctx, "context mismatch");
        let entries = self.entries.iter().map(|e| e.wick_mul(factor)).collect();
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            entries,
        }
    }

    /// Matrix product with the Wick product as scalar multiplication.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.ctx == other.ctx, "context mismatch in matrix product");
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        Self::from_fn(self.ctx, self.rows, other.cols, |i, j| {
            let mut acc = RingElement::zero(self.ctx);
            for k in 0..self.cols {
                acc = &acc + &self.at(i, k).wick_mul(other.at(k, j));
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ctx, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Adjoint: transpose with entrywise conjugation. Anti-multiplicative,
    /// (A B)* = B* A*, and its constant part is the usual matrix adjoint.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.ctx, self.cols, self.rows, |i, j| {
            self.at(j, i).conjugate()
        })
    }

    /// Entrywise evaluation at the origin: the constant-part matrix.
    pub fn eval_origin(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).eval_origin())
    }

    pub fn trace(&self) -> RingElement {
        assert_eq!(self.rows, self.cols, "trace needs a square matrix");
        let mut acc = RingElement::zero(self.ctx);
        for i in 0..self.rows {
            acc = &acc + self.at(i, i);
        }
        acc
    }

    /// Every entry with its constant term removed (exactly).
    pub fn without_constant_part(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| e.without_constant_term())
            .collect();
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            entries,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.assert_same_shape(other);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Largest entrywise dual norm at level k.
    pub fn max_entry_dual_norm(&self, k: u32) -> f64 {
        self.entries
            .iter()
            .map(|e| e.dual_norm(k))
            .fold(0.0, f64::max)
    }

    /// Deviation from self-adjointness, measured coefficientwise.
    pub fn hermitian_deviation(&self) -> f64 {
        assert_eq!(
            self.rows, self.cols,
            "hermitian_deviation needs a square matrix"
        );
        self.max_abs_diff(&self.adjoint())
    }

    /// Inverse, defined exactly when the constant-part determinant is
    /// nonzero. With A0 the constant part and E = A0^{-1} (A - A0), E has
    /// zero constant part and is nilpotent here, so
    /// A^{-1} = (sum_{n<=d} (-E)^n) A0^{-1} is a finite Neumann series and
    /// A ◇ A^{-1} = I up to rounding.
    pub fn inverse(&self) -> Result<Self, Error> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let a0 = self.eval_origin();
        let det = a0.det();
        if det.norm() <= EPS_INV {
            return Err(Error::SingularConstantPart {
                det_modulus: det.norm(),
            });
        }
        let a0_inv = a0.inverse().map_err(|_| Error::SingularConstantPart {
            det_modulus: det.norm(),
        })?;
        let a0_inv = Self::embed_complex(self.ctx, &a0_inv);
        let e = &a0_inv * &self.without_constant_part();
        let identity = Self::identity(self.ctx, self.rows);
        let mut s = identity.clone();
        for _ in 0..self.ctx.degree_cap() {
            s = &identity - &(&e * &s);
        }
        Ok(&s * &a0_inv)
    }

    /// Determinant and adjugate over the ring by the Faddeev-LeVerrier
    /// recursion, which uses only ring operations and division by integers.
    /// Satisfies A ◇ adj(A) = det(A) I.
    pub fn det_adjugate(&self) -> (RingElement, RingMatrix) {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut m = Self::zeros(self.ctx, n, n);
        let mut c = RingElement::one(self.ctx);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{k-1} I
            m = self.mul(&m).add(&Self::scaled_identity(self.ctx, n, &c));
            let t = self.mul(&m).trace();
            c = t.scale(Complex64::new(-1.0 / k as f64, 0.0));
        }
        let det_sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let adj_sign = -det_sign;
        (
            c.scale(Complex64::new(det_sign, 0.0)),
            m.scale(Complex64::new(adj_sign, 0.0)),
        )
    }

    pub fn det(&self) -> RingElement {
        self.det_adjugate().0
    }

    pub fn adjugate(&self) -> RingMatrix {
        self.det_adjugate().1
    }

    fn scaled_identity(ctx: TruncationContext, n: usize, e: &RingElement) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Applies an entire function (Taylor coefficients c_0..c_d, at least
    /// d + 1 of them) to a square matrix with vanishing constant part:
    /// sum_p c_p E^p, a finite sum by nilpotency.
    pub fn apply_entire(&self, taylor: &[Complex64]) -> Result<Self, Error> {
        assert_eq!(self.rows, self.cols, "apply_entire needs a square matrix");
        let c0_norm = self.eval_origin().max_abs();
        if c0_norm > EPS_INV {
            return Err(Error::NonzeroConstantTerm { modulus: c0_norm });
        }
        let needed = self.ctx.degree_cap() as usize + 1;
        if taylor.len() < needed {
            return Err(Error::TaylorTooShort {
                needed,
                got: taylor.len(),
            });
        }
        let identity = Self::identity(self.ctx, self.rows);
        let mut s = identity.scale(taylor[needed - 1]);
        for p in (0..needed - 1).rev() {
            s = identity.scale(taylor[p]).add(&self.mul(&s));
        }
        Ok(s)
    }

    /// Square-root factorization of a strictly positive matrix: returns an
    /// invertible G with G ◇ G* = A.
    ///
    /// A is strictly positive exactly when its constant part A(0) is
    /// positive definite. The witness is G = sqrt(A(0)) ◇ f(E) with
    /// f = (1 + x)^(1/2) and E = sqrt(A(0))^{-1} (A - A(0)) sqrt(A(0))^{-1}:
    /// E is self-adjoint with zero constant part, f has real coefficients,
    /// and f(E)^2 = I + E exactly in the truncation, so
    /// G G* = sqrt(A(0)) (I + E) sqrt(A(0)) = A.
    ///
    /// Fails if A is not self-adjoint within tolerance or if the minimum
    /// eigenvalue of A(0) is not above the positivity floor; the latter is
    /// exactly the strict-positivity criterion.
    pub fn strict_positive_factor(&self) -> Result<Self, Error> {
        assert_eq!(self.rows, self.cols, "factorization needs a square matrix");
        let deviation = self.hermitian_deviation();
        if deviation > TOL_HERMITIAN {
            return Err(Error::NotHermitian { deviation });
        }
        let a0 = self.eval_origin();
        let min_eig = a0.hermitian_eigenvalues()[0];
        if min_eig <= EPS_PD {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min_eig,
            });
        }
        let s0 = a0
            .sqrt_hermitian_pd()
            .map_err(|_| Error::NotPositiveDefinite {
                min_eigenvalue: min_eig,
            })?;
        let s0_inv = s0.inverse().map_err(|_| Error::NotPositiveDefinite {
            min_eigenvalue: min_eig,
        })?;
        let s0_ring = Self::embed_complex(self.ctx, &s0);
        let s0_inv_ring = Self::embed_complex(self.ctx, &s0_inv);
        let e = &(&s0_inv_ring * &self.without_constant_part()) * &s0_inv_ring;
        let f_e = e.apply_entire(&sqrt1p_series(self.ctx.degree_cap() as usize))?;
        Ok(&s0_ring * &f_e)
    }
}

// Reference-only operator impls; inherent methods keep the same names for
// owned receivers.
macro_rules! impl_matrix_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl $trait<&RingMatrix> for &RingMatrix {
            type Output = RingMatrix;
            fn $method(self, rhs: &RingMatrix) -> RingMatrix {
                RingMatrix::$delegate(self, rhs)
            }
        }
    };
}

impl_matrix_binop!(Add, add, add);
impl_matrix_binop!(Sub, sub, sub);
impl_matrix_binop!(Mul, mul, mul);

impl Neg for &RingMatrix {
    type Output = RingMatrix;
    fn neg(self) -> RingMatrix {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Neg for RingMatrix {
    type Output = RingMatrix;
    fn neg(self) -> RingMatrix {
        -&self
    }
}
