//! Polynomials in one complex variable lambda with coefficients in the ring
//! (scalar or matrix valued).
//!
//! Coefficient lists are trimmed of trailing zeros but always keep at least
//! one coefficient, so the zero polynomial has degree 0. Multiplication is
//! the Cauchy product in lambda with the Wick product on coefficients.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::context::TruncationContext;
use crate::element::RingElement;
use crate::matrix::RingMatrix;

/// Scalar-valued polynomial in lambda over the ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarPoly {
    ctx: TruncationContext,
    coeffs: Vec<RingElement>,
}

impl ScalarPoly {
    pub fn new(ctx: TruncationContext, mut coeffs: Vec<RingElement>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.context() == ctx),
            "mixed contexts in coefficients"
        );
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(RingElement::zero(ctx));
        }
        ScalarPoly { ctx, coeffs }
    }

    pub fn zero(ctx: TruncationContext) -> Self {
        Self::new(ctx, vec![RingElement::zero(ctx)])
    }

    pub fn one(ctx: TruncationContext) -> Self {
        Self::new(ctx, vec![RingElement::one(ctx)])
    }

    pub fn constant(value: RingElement) -> Self {
        let ctx = value.context();
        Self::new(ctx, vec![value])
    }

    /// The polynomial lambda itself.
    pub fn lambda(ctx: TruncationContext) -> Self {
        Self::new(ctx, vec![RingElement::zero(ctx), RingElement::one(ctx)])
    }

    /// Polynomial with constant (complex) coefficients.
    pub fn from_complex_coeffs(ctx: TruncationContext, coeffs: &[Complex64]) -> Self {
        Self::new(
            ctx,
            coeffs
                .iter()
                .map(|&c| RingElement::constant(ctx, c))
                .collect(),
        )
    }

    pub fn context(&self) -> TruncationContext {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    /// Coefficient of lambda^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> RingElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.ctx == other.ctx, "context mismatch");
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Self::new(self.ctx, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.ctx == other.ctx, "context mismatch");
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Self::new(self.ctx, coeffs)
    }

    /// Cauchy product in lambda with ◇ on coefficients.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.ctx == other.ctx, "context mismatch");
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![RingElement::zero(self.ctx); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &a.wick_mul(b);
            }
        }
        Self::new(self.ctx, coeffs)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(
            self.ctx,
            self.coeffs.iter().map(|c| c.scale(factor)).collect(),
        )
    }

    pub fn mul_element(&self, factor: &RingElement) -> Self {
        Self::new(
            self.ctx,
            self.coeffs.iter().map(|c| c.wick_mul(factor)).collect(),
        )
    }

    /// Multiplication by lambda^k.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![RingElement::zero(self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.ctx, coeffs)
    }

    /// Evaluation at a complex point (Horner).
    pub fn eval_complex(&self, lambda: Complex64) -> RingElement {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = c + &acc.scale(lambda);
        }
        acc
    }

    /// Evaluation at a ring point: lambda is replaced by r, powers taken
    /// with the Wick product (Horner).
    pub fn eval_ring(&self, r: &RingElement) -> RingElement {
        assert!(r.context() == self.ctx, "context mismatch");
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = c + &acc.wick_mul(r);
        }
        acc
    }

    /// Constant-part projection: the classical complex polynomial.
    pub fn eval_origin_poly(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.eval_origin()).collect()
    }

    /// Classical evaluation of the constant-part projection.
    pub fn eval_origin_at(&self, lambda: Complex64) -> Complex64 {
        let proj = self.eval_origin_poly();
        let mut acc = Complex64::new(0.0, 0.0);
        for c in proj.iter().rev() {
            acc = acc * lambda + c;
        }
        acc
    }

    pub fn conjugate_coeffs(&self) -> Self {
        Self::new(
            self.ctx,
            self.coeffs.iter().map(|c| c.conjugate()).collect(),
        )
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| self.coeff(k).max_abs_diff(&other.coeff(k)))
            .fold(0.0, f64::max)
    }

    /// Embeds as a 1 x 1 matrix polynomial.
    pub fn to_matrix_poly(&self) -> MatrixPoly {
        MatrixPoly::new(
            self.ctx,
            1,
            1,
            self.coeffs
                .iter()
                .map(|c| RingMatrix::from_entries(1, 1, vec![c.clone()]))
                .collect(),
        )
    }
}

/// Matrix-valued polynomial in lambda over the ring.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPoly {
    ctx: TruncationContext,
    rows: usize,
    cols: usize,
    coeffs: Vec<RingMatrix>,
}

impl MatrixPoly {
    pub fn new(
        ctx: TruncationContext,
        rows: usize,
        cols: usize,
        mut coeffs: Vec<RingMatrix>,
    ) -> Self {
        assert!(
            coeffs
                .iter()
                .all(|m| m.context() == ctx && m.rows() == rows && m.cols() == cols),
            "coefficient shape or context mismatch"
        );
        let is_zero = |m: &RingMatrix| m.entries().iter().all(|e| e.is_zero());
        while coeffs.len() > 1 && coeffs.last().is_some_and(&is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(RingMatrix::zeros(ctx, rows, cols));
        }
        MatrixPoly {
            ctx,
            rows,
            cols,
            coeffs,
        }
    }

    pub fn constant(m: RingMatrix) -> Self {
        let (ctx, rows, cols) = (m.context(), m.rows(), m.cols());
        Self::new(ctx, rows, cols, vec![m])
    }

    pub fn zero(ctx: TruncationContext, rows: usize, cols: usize) -> Self {
        Self::new(ctx, rows, cols, vec![RingMatrix::zeros(ctx, rows, cols)])
    }

    /// s(lambda) I_n for a scalar polynomial s.
    pub fn scalar_times_identity(s: &ScalarPoly, n: usize) -> Self {
        let ctx = s.context();
        let coeffs = s
            .coeffs()
            .iter()
            .map(|c| {
                let mut m = RingMatrix::zeros(ctx, n, n);
                for i in 0..n {
                    m.set(i, i, c.clone());
                }
                m
            })
            .collect();
        Self::new(ctx, n, n, coeffs)
    }

    pub fn context(&self) -> TruncationContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RingMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RingMatrix {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| RingMatrix::zeros(self.ctx, self.rows, self.cols))
    }

    /// The scalar polynomial sitting at entry (i, j).
    pub fn block(&self, i: usize, j: usize) -> ScalarPoly {
        ScalarPoly::new(
            self.ctx,
            self.coeffs.iter().map(|m| m.at(i, j).clone()).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.ctx == other.ctx && self.rows == other.rows && self.cols == other.cols);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeff(k).add(&other.coeff(k)))
            .collect();
        Self::new(self.ctx, self.rows, self.cols, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.ctx == other.ctx && self.rows == other.rows && self.cols == other.cols);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeff(k).sub(&other.coeff(k)))
            .collect();
        Self::new(self.ctx, self.rows, self.cols, coeffs)
    }

    /// Matrix product, Cauchy in lambda.
    pub fn matmul(&self, other: &Self) -> Self {
        assert!(self.ctx == other.ctx, "context mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![RingMatrix::zeros(self.ctx, self.rows, other.cols); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.ctx, self.rows, other.cols, coeffs)
    }

    pub fn mul_scalar_poly(&self, s: &ScalarPoly) -> Self {
        assert!(self.ctx == s.context(), "context mismatch");
        let len = self.coeffs.len() + s.degree();
        let mut coeffs = vec![RingMatrix::zeros(self.ctx, self.rows, self.cols); len + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in s.coeffs().iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.scale_element(b));
            }
        }
        Self::new(self.ctx, self.rows, self.cols, coeffs)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(
            self.ctx,
            self.rows,
            self.cols,
            self.coeffs.iter().map(|m| m.scale(factor)).collect(),
        )
    }

    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![RingMatrix::zeros(self.ctx, self.rows, self.cols); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.ctx, self.rows, self.cols, coeffs)
    }

    pub fn eval_complex(&self, lambda: Complex64) -> RingMatrix {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = c.add(&acc.scale(lambda));
        }
        acc
    }

    pub fn eval_ring(&self, r: &RingElement) -> RingMatrix {
        assert!(r.context() == self.ctx, "context mismatch");
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = c.add(&acc.scale_element(r));
        }
        acc
    }

    /// Classical evaluation of the constant-part projection.
    pub fn eval_origin_at(&self, lambda: Complex64) -> CMatrix {
        let mut acc = self.coeffs.last().expect("nonempty").eval_origin();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = c.eval_origin().add(&acc.scale(lambda));
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| self.coeff(k).max_abs_diff(&other.coeff(k)))
            .fold(0.0, f64::max)
    }

    /// Determinant and adjugate of a square matrix polynomial over the
    /// commutative ring of scalar polynomials, by Faddeev-LeVerrier.
    pub fn det_adjugate(&self) -> (ScalarPoly, MatrixPoly) {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut m = Self::zero(self.ctx, n, n);
        let mut c = ScalarPoly::one(self.ctx);
        for k in 1..=n {
            m = self.matmul(&m).add(&Self::scalar_times_identity(&c, n));
            let t = trace_poly(&self.matmul(&m));
            c = t.scale(Complex64::new(-1.0 / k as f64, 0.0));
        }
        let det_sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        (
            c.scale(Complex64::new(det_sign, 0.0)),
            m.scale(Complex64::new(-det_sign, 0.0)),
        )
    }
}

fn trace_poly(p: &MatrixPoly) -> ScalarPoly {
    ScalarPoly::new(p.context(), p.coeffs().iter().map(|m| m.trace()).collect())
}
