//! Sparse elements of the truncated ring and their Wick arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::consts::EPS_INV;
use crate::context::TruncationContext;
use crate::error::Error;
use crate::index::MultiIndex;

/// An element sum_alpha f_alpha z^alpha of the truncated ring.
///
/// Coefficients are complex doubles, stored sparsely and canonically: every
/// stored index is admitted by the context and exact-zero coefficients are
/// dropped. The map is ordered graded-lexicographically, which fixes all
/// summation orders. Values are immutable; operations return new elements.
///
/// The Wick product is the Cauchy product of the coefficient families and is
/// the ring multiplication here. Binary operations panic if the two operands
/// carry different contexts.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement {
    ctx: TruncationContext,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl RingElement {
    pub fn zero(ctx: TruncationContext) -> Self {
        RingElement {
            ctx,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(ctx: TruncationContext) -> Self {
        Self::constant(ctx, Complex64::new(1.0, 0.0))
    }

    pub fn constant(ctx: TruncationContext, value: Complex64) -> Self {
        let mut coeffs = BTreeMap::new();
        if value != Complex64::new(0.0, 0.0) {
            coeffs.insert(MultiIndex::empty(), value);
        }
        RingElement { ctx, coeffs }
    }

    /// The bare variable z_var. Panics if the context does not admit it.
    pub fn variable(ctx: TruncationContext, var: u32) -> Self {
        Self::monomial(ctx, MultiIndex::variable(var), Complex64::new(1.0, 0.0))
    }

    /// A single term c z^alpha. Panics if the context does not admit alpha.
    pub fn monomial(ctx: TruncationContext, index: MultiIndex, value: Complex64) -> Self {
        assert!(
            ctx.admits(&index),
            "index {index} not admitted by context (m={}, d={})",
            ctx.num_vars(),
            ctx.degree_cap()
        );
        let mut coeffs = BTreeMap::new();
        if value != Complex64::new(0.0, 0.0) {
            coeffs.insert(index, value);
        }
        RingElement { ctx, coeffs }
    }

    /// Sums arbitrary (index, coefficient) terms into a canonical element.
    /// Panics on indices outside the context.
    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, Complex64)>>(
        ctx: TruncationContext,
        terms: I,
    ) -> Self {
        let mut coeffs: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (index, value) in terms {
            assert!(
                ctx.admits(&index),
                "index {index} not admitted by context (m={}, d={})",
                ctx.num_vars(),
                ctx.degree_cap()
            );
            *coeffs.entry(index).or_insert(Complex64::new(0.0, 0.0)) += value;
        }
        Self::from_map(ctx, coeffs)
    }

    fn from_map(ctx: TruncationContext, mut coeffs: BTreeMap<MultiIndex, Complex64>) -> Self {
        coeffs.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        RingElement { ctx, coeffs }
    }

    pub fn context(&self) -> TruncationContext {
        self.ctx
    }

    /// The coefficient of z^alpha, zero when the term is absent.
    pub fn coeff(&self, index: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(index)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Stored terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, Complex64)> {
        self.coeffs.iter().map(|(k, v)| (k, *v))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Evaluation at the origin: the constant-term coefficient. This is the
    /// ring homomorphism onto the complex numbers used throughout.
    pub fn eval_origin(&self) -> Complex64 {
        self.coeff(&MultiIndex::empty())
    }

    fn assert_same_context(&self, other: &Self) {
        assert!(
            self.ctx == other.ctx,
            "context mismatch: (m={}, d={}) vs (m={}, d={})",
            self.ctx.num_vars(),
            self.ctx.degree_cap(),
            other.ctx.num_vars(),
            other.ctx.degree_cap()
        );
    }

    /// a F + b G, coefficientwise and canonical. Panics on context mismatch.
    pub fn linear_combine(a: Complex64, f: &Self, b: Complex64, g: &Self) -> Self {
        f.assert_same_context(g);
        let mut coeffs: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (index, value) in &f.coeffs {
            coeffs.insert(index.clone(), a * value);
        }
        for (index, value) in &g.coeffs {
            *coeffs
                .entry(index.clone())
                .or_insert(Complex64::new(0.0, 0.0)) += b * value;
        }
        Self::from_map(f.ctx, coeffs)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.clone(), factor * v))
            .collect();
        Self::from_map(self.ctx, coeffs)
    }

    /// Wick product: (F ◇ G)_gamma = sum_{alpha + beta = gamma} f_alpha
    /// g_beta, keeping only gamma admitted by the context. Terms beyond the
    /// degree cap are dropped, which is the quotient-ring multiplication.
    pub fn wick_mul(&self, other: &Self) -> Self {
        self.assert_same_context(other);
        let cap = self.ctx.degree_cap();
        let mut coeffs: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (alpha, fa) in &self.coeffs {
            let budget = cap - alpha.degree().min(cap);
            for (beta, gb) in &other.coeffs {
                // iteration is degree-ascending, so once past the cap stay past it
                if beta.degree() > budget {
                    break;
                }
                let gamma = alpha.add(beta);
                *coeffs.entry(gamma).or_insert(Complex64::new(0.0, 0.0)) += fa * gb;
            }
        }
        Self::from_map(self.ctx, coeffs)
    }

    /// n-fold Wick power, with the empty product equal to 1.
    pub fn wick_pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..n {
            acc = acc.wick_mul(self);
        }
        acc
    }

    /// Coefficientwise complex conjugation. An involution and, the ring being
    /// commutative, a ring automorphism.
    pub fn conjugate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.clone(), v.conj()))
            .collect();
        RingElement {
            ctx: self.ctx,
            coeffs,
        }
    }

    /// The element with its constant term removed (exactly).
    pub fn without_constant_term(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.remove(&MultiIndex::empty());
        out
    }

    /// Multiplicative inverse. Defined exactly when the constant term c0 is
    /// nonzero: writing F = c0 (1 + e) with e of zero constant term, e is
    /// nilpotent in the truncation and
    /// F^{-1} = c0^{-1} (1 - e + e^{◇2} - ... ± e^{◇d}) is a finite sum, so
    /// F ◇ F^{-1} = 1 holds exactly up to floating-point rounding.
    pub fn inverse(&self) -> Result<Self, Error> {
        self.inverse_with(EPS_INV)
    }

    /// `inverse` with an explicit threshold on the constant-term modulus.
    pub fn inverse_with(&self, eps: f64) -> Result<Self, Error> {
        let c0 = self.eval_origin();
        if c0.norm() <= eps {
            return Err(Error::NotInvertible {
                constant_modulus: c0.norm(),
            });
        }
        let inv_c0 = Complex64::new(1.0, 0.0) / c0;
        let e = self.without_constant_term().scale(inv_c0);
        let one = Self::one(self.ctx);
        // Horner form of the alternating Neumann series of length d + 1
        let mut s = one.clone();
        for _ in 0..self.ctx.degree_cap() {
            s = &one - &e.wick_mul(&s);
        }
        Ok(s.scale(inv_c0))
    }

    /// Applies an entire function, given by Taylor coefficients c_0..c_d (at
    /// least d + 1 of them), to an element with vanishing constant term:
    /// sum_p c_p F^{◇p}. The sum is exact in the truncation because F is
    /// nilpotent of order at most d + 1.
    pub fn apply_entire(&self, taylor: &[Complex64]) -> Result<Self, Error> {
        let c0 = self.eval_origin();
        if c0.norm() > EPS_INV {
            return Err(Error::NonzeroConstantTerm { modulus: c0.norm() });
        }
        let needed = self.ctx.degree_cap() as usize + 1;
        if taylor.len() < needed {
            return Err(Error::TaylorTooShort {
                needed,
                got: taylor.len(),
            });
        }
        let mut s = Self::constant(self.ctx, taylor[needed - 1]);
        for p in (0..needed - 1).rev() {
            s = &Self::constant(self.ctx, taylor[p]) + &self.wick_mul(&s);
        }
        Ok(s)
    }

    /// Largest coefficientwise distance to another element.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.assert_same_context(other);
        let mut worst = 0.0f64;
        for (index, value) in &self.coeffs {
            worst = worst.max((value - other.coeff(index)).norm());
        }
        for (index, value) in &other.coeffs {
            if !self.coeffs.contains_key(index) {
                worst = worst.max(value.norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (index, value) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if index.is_empty() {
                write!(f, "({value})")?;
            } else {
                write!(f, "({value})*{index}")?;
            }
        }
        Ok(())
    }
}

// Operators are implemented on references only, so they never shadow the
// inherent methods of the same names on owned receivers.
macro_rules! impl_element_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                let f: fn(&RingElement, &RingElement) -> RingElement = $body;
                f(self, rhs)
            }
        }
    };
}

impl_element_binop!(Add, add, |a, b| RingElement::linear_combine(
    Complex64::new(1.0, 0.0),
    a,
    Complex64::new(1.0, 0.0),
    b
));
impl_element_binop!(Sub, sub, |a, b| RingElement::linear_combine(
    Complex64::new(1.0, 0.0),
    a,
    Complex64::new(-1.0, 0.0),
    b
));
impl_element_binop!(Mul, mul, |a, b| a.wick_mul(b));

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}
