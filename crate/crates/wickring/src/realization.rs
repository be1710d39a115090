//! State-space realizations of transfer functions over the ring, and the
//! causal Wick convolution of input-output sequences.
//!
//! A realization (A, B, C, D) has transfer function
//!
//! ```text
//! H(lambda) = D + lambda C (I - lambda A)^{-1} B
//!           = D + sum_{k>=1} lambda^k C A^{k-1} B,
//! ```
//!
//! which is rational with ring coefficients: over the common denominator
//! det(I - lambda A) the numerator is det(I - lambda A) D
//! + lambda C adj(I - lambda A) B.

use num_complex::Complex64;

use crate::context::TruncationContext;
use crate::element::RingElement;
use crate::error::Error;
use crate::matrix::RingMatrix;
use crate::poly::MatrixPoly;
use crate::rational::RingRational;

/// A state-space system (A, B, C, D) with entries in the ring:
/// A is n x n, B is n x q, C is p x n, D is p x q.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    a: RingMatrix,
    b: RingMatrix,
    c: RingMatrix,
    d: RingMatrix,
}

impl Realization {
    pub fn new(a: RingMatrix, b: RingMatrix, c: RingMatrix, d: RingMatrix) -> Self {
        let ctx = a.context();
        assert!(
            b.context() == ctx && c.context() == ctx && d.context() == ctx,
            "context mismatch among state-space matrices"
        );
        assert_eq!(a.rows(), a.cols(), "state matrix must be square");
        assert_eq!(
            b.rows(),
            a.rows(),
            "B row count must match the state dimension"
        );
        assert_eq!(
            c.cols(),
            a.rows(),
            "C column count must match the state dimension"
        );
        assert_eq!(d.rows(), c.rows(), "D row count must match C");
        assert_eq!(d.cols(), b.cols(), "D column count must match B");
        Realization { a, b, c, d }
    }

    pub fn context(&self) -> TruncationContext {
        self.a.context()
    }

    pub fn a(&self) -> &RingMatrix {
        &self.a
    }

    pub fn b(&self) -> &RingMatrix {
        &self.b
    }

    pub fn c(&self) -> &RingMatrix {
        &self.c
    }

    pub fn d(&self) -> &RingMatrix {
        &self.d
    }

    /// The first N + 1 Taylor coefficients of the transfer function:
    /// h_0 = D and h_k = C A^{k-1} B for k = 1..N.
    pub fn taylor(&self, order: usize) -> Vec<RingMatrix> {
        let mut out = Vec::with_capacity(order + 1);
        out.push(self.d.clone());
        if order == 0 {
            return out;
        }
        let mut power_b = self.b.clone(); // A^{k-1} B
        for _ in 1..=order {
            out.push(self.c.mul(&power_b));
            power_b = self.a.mul(&power_b);
        }
        out
    }

    /// The transfer function as a rational pair over det(I - lambda A).
    pub fn to_rational(&self) -> Result<RingRational, Error> {
        let ctx = self.context();
        let n = self.a.rows();
        let pencil = MatrixPoly::new(
            ctx,
            n,
            n,
            vec![
                RingMatrix::identity(ctx, n),
                self.a.scale(Complex64::new(-1.0, 0.0)),
            ],
        );
        let (den, adj) = pencil.det_adjugate();
        let d_term = MatrixPoly::constant(self.d.clone()).mul_scalar_poly(&den);
        let cb_term = MatrixPoly::constant(self.c.clone())
            .matmul(&adj)
            .matmul(&MatrixPoly::constant(self.b.clone()))
            .shift_up(1);
        RingRational::new(d_term.add(&cb_term), den)
    }
}

/// Causal Wick convolution of finite sequences:
/// y_n = sum_{k=0}^{n} h_{n-k} ◇ u_k, for n = 0 .. len(h) + len(u) - 2.
pub fn wick_convolve(h: &[RingElement], u: &[RingElement]) -> Vec<RingElement> {
    assert!(!h.is_empty() && !u.is_empty(), "sequences must be nonempty");
    let ctx = h[0].context();
    assert!(
        h.iter().chain(u.iter()).all(|e| e.context() == ctx),
        "context mismatch in convolution"
    );
    let len = h.len() + u.len() - 1;
    let mut out = vec![RingElement::zero(ctx); len];
    for (i, hi) in h.iter().enumerate() {
        for (k, uk) in u.iter().enumerate() {
            out[i + k] = &out[i + k] + &hi.wick_mul(uk);
        }
    }
    out
}
