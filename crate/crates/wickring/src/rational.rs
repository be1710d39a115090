//! Rational functions of one complex variable with ring coefficients:
//! a matrix-valued numerator polynomial over a scalar denominator whose
//! constant-part projection is not identically zero.
//!
//! No cancellation is ever attempted; the pair is kept as constructed and
//! arithmetic goes through common denominators. A point (complex or ring)
//! is in the domain when the projected denominator is nonzero at it (at its
//! constant part, for a ring point); invertibility of the denominator value
//! in the ring then follows from the nonzero constant term.

use num_complex::Complex64;

use crate::consts::EPS_INV;
use crate::context::TruncationContext;
use crate::element::RingElement;
use crate::error::Error;
use crate::index::MultiIndex;
use crate::matrix::RingMatrix;
use crate::norms::KahanComplexSum;
use crate::poly::{MatrixPoly, ScalarPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct RingRational {
    num: MatrixPoly,
    den: ScalarPoly,
}

/// The two elementary factors built from a ring point r.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlaschkeVariant {
    /// (lambda - r)(1 - lambda r*)^{-1}, the disk factor.
    Disk,
    /// (lambda - r)(lambda - r*)^{-1}; not defined at lambda = 0 unless the
    /// constant part of r is nonzero.
    Halfline,
}

impl RingRational {
    /// Builds num/den, checking that the projected denominator is not the
    /// zero polynomial.
    pub fn new(num: MatrixPoly, den: ScalarPoly) -> Result<Self, Error> {
        assert!(num.context() == den.context(), "context mismatch");
        let max_proj = den
            .eval_origin_poly()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        if max_proj <= EPS_INV {
            return Err(Error::ZeroDenominator);
        }
        Ok(RingRational { num, den })
    }

    /// A polynomial viewed as a rational function with denominator 1.
    pub fn from_poly(num: MatrixPoly) -> Self {
        let den = ScalarPoly::one(num.context());
        RingRational { num, den }
    }

    pub fn from_scalar_polys(num: ScalarPoly, den: ScalarPoly) -> Result<Self, Error> {
        Self::new(num.to_matrix_poly(), den)
    }

    pub fn num(&self) -> &MatrixPoly {
        &self.num
    }

    pub fn den(&self) -> &ScalarPoly {
        &self.den
    }

    pub fn context(&self) -> TruncationContext {
        self.num.context()
    }

    pub fn rows(&self) -> usize {
        self.num.rows()
    }

    pub fn cols(&self) -> usize {
        self.num.cols()
    }

    /// Evaluation at a complex point: num(lambda) ◇ den(lambda)^{-1}.
    /// Fails when the projected denominator (nearly) vanishes there.
    pub fn eval_complex(&self, lambda: Complex64) -> Result<RingMatrix, Error> {
        let den_val = self.den.eval_complex(lambda);
        let proj = den_val.eval_origin().norm();
        if proj <= EPS_INV {
            return Err(Error::PoleAtPoint {
                denominator_modulus: proj,
            });
        }
        let den_inv = den_val.inverse()?;
        Ok(self.num.eval_complex(lambda).scale_element(&den_inv))
    }

    /// Evaluation at a ring point by direct substitution: both polynomials
    /// are evaluated at r with Wick powers and the denominator inverted in
    /// the ring. The point is admissible when the projected denominator is
    /// nonzero at the constant part of r; the Taylor series around that
    /// constant part gives the same value because r minus its constant part
    /// is nilpotent in the truncation.
    pub fn eval_ring(&self, r: &RingElement) -> Result<RingMatrix, Error> {
        assert!(r.context() == self.context(), "context mismatch");
        let den_val = self.den.eval_ring(r);
        let proj = den_val.eval_origin().norm();
        if proj <= EPS_INV {
            return Err(Error::PoleAtPoint {
                denominator_modulus: proj,
            });
        }
        let den_inv = den_val.inverse()?;
        Ok(self.num.eval_ring(r).scale_element(&den_inv))
    }

    /// Cauchy-integral evaluation at a ring point: trapezoid quadrature of
    /// (2 pi i)^{-1} times the integral of F(zeta) (zeta - r)^{-1} d zeta
    /// over the circle of the given radius centered at the constant part of
    /// r. For analytic integrands the periodic trapezoid rule converges
    /// geometrically, so this is an accurate independent cross-check of
    /// `eval_ring`. Needs at least 64 nodes, and the circle must avoid the
    /// poles of the projected function; evaluation fails on the offending
    /// node otherwise. Nodes are summed in index order with compensated
    /// accumulation, so the result is deterministic.
    pub fn eval_contour(
        &self,
        r: &RingElement,
        radius: f64,
        nodes: usize,
    ) -> Result<RingMatrix, Error> {
        assert!(r.context() == self.context(), "context mismatch");
        if nodes < 64 {
            return Err(Error::TooFewNodes { got: nodes });
        }
        assert!(radius > 0.0, "contour radius must be positive");
        let ctx = self.context();
        let center = r.eval_origin();
        let mut sums = vec![EntryAccumulator::new(); self.num.rows() * self.num.cols()];
        for node in 0..nodes {
            let angle = 2.0 * std::f64::consts::PI * node as f64 / nodes as f64;
            let w = Complex64::from_polar(radius, angle);
            let zeta = center + w;
            let f_at = self.eval_complex(zeta)?;
            let resolvent = (&RingElement::constant(ctx, zeta) - r).inverse()?;
            let term = f_at.scale_element(&resolvent).scale(w);
            for (slot, e) in sums.iter_mut().zip(term.entries()) {
                slot.add(e);
            }
        }
        let scale = Complex64::new(1.0 / nodes as f64, 0.0);
        let entries = sums
            .into_iter()
            .map(|s| s.finish(ctx).scale(scale))
            .collect();
        Ok(RingMatrix::from_entries(
            self.num.rows(),
            self.num.cols(),
            entries,
        ))
    }

    /// Classical evaluation of the constant-part projection at lambda.
    pub fn eval_origin_at(&self, lambda: Complex64) -> Result<crate::cmatrix::CMatrix, Error> {
        let den = self.den.eval_origin_at(lambda);
        if den.norm() <= EPS_INV {
            return Err(Error::PoleAtPoint {
                denominator_modulus: den.norm(),
            });
        }
        Ok(self
            .num
            .eval_origin_at(lambda)
            .scale(Complex64::new(1.0, 0.0) / den))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.num
            .max_abs_diff(&other.num)
            .max(self.den.max_abs_diff(&other.den))
    }
}

/// Per-coefficient compensated accumulator, keyed by multi-index in the
/// deterministic storage order.
#[derive(Clone)]
struct EntryAccumulator {
    slots: Vec<(MultiIndex, KahanComplexSum)>,
}

impl EntryAccumulator {
    fn new() -> Self {
        EntryAccumulator { slots: Vec::new() }
    }

    fn add(&mut self, e: &RingElement) {
        for (index, value) in e.terms() {
            match self.slots.binary_search_by(|(k, _)| k.cmp(index)) {
                Ok(pos) => self.slots[pos].1.add(value),
                Err(pos) => {
                    let mut sum = KahanComplexSum::new();
                    sum.add(value);
                    self.slots.insert(pos, (index.clone(), sum));
                }
            }
        }
    }

    fn finish(self, ctx: TruncationContext) -> RingElement {
        RingElement::from_terms(ctx, self.slots.into_iter().map(|(k, s)| (k, s.value())))
    }
}

/// The elementary rational factor attached to a ring point r: for the disk
/// variant (lambda - r)(1 - lambda r*)^{-1}, for the halfline variant
/// (lambda - r)(lambda - r*)^{-1}.
pub fn blaschke_factor(r: &RingElement, variant: BlaschkeVariant) -> RingRational {
    let ctx = r.context();
    let one = RingElement::one(ctx);
    let num = ScalarPoly::new(ctx, vec![r.scale(Complex64::new(-1.0, 0.0)), one.clone()]);
    let den = match variant {
        BlaschkeVariant::Disk => ScalarPoly::new(
            ctx,
            vec![one, r.conjugate().scale(Complex64::new(-1.0, 0.0))],
        ),
        BlaschkeVariant::Halfline => ScalarPoly::new(
            ctx,
            vec![r.conjugate().scale(Complex64::new(-1.0, 0.0)), one],
        ),
    };
    RingRational {
        num: num.to_matrix_poly(),
        den,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx() -> TruncationContext {
        TruncationContext::new(3, 4)
    }

    fn scalar_rational(num: ScalarPoly, den: ScalarPoly) -> RingRational {
        RingRational::from_scalar_polys(num, den).unwrap()
    }

    fn entry(m: &RingMatrix) -> RingElement {
        m.at(0, 0).clone()
    }

    #[test]
    fn zero_denominator_projection_is_rejected() {
        let z1 = RingElement::variable(ctx(), 1);
        let den = ScalarPoly::new(ctx(), vec![z1.clone(), z1]);
        let num = ScalarPoly::one(ctx()).to_matrix_poly();
        assert!(matches!(
            RingRational::new(num, den),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn blaschke_disk_with_zero_point_is_lambda() {
        let r = RingElement::zero(ctx());
        let f = blaschke_factor(&r, BlaschkeVariant::Disk);
        assert_eq!(f.den().degree(), 0);
        assert!(f.den().coeff(0).approx_eq(&RingElement::one(ctx()), 0.0));
        assert_eq!(f.num().degree(), 1);
    }

    #[test]
    fn blaschke_vanishes_at_its_own_point() {
        let z1 = RingElement::variable(ctx(), 1);
        let r = &RingElement::constant(ctx(), c(0.4, 0.1)) + &z1.scale(c(0.15, -0.05));
        for variant in [BlaschkeVariant::Disk, BlaschkeVariant::Halfline] {
            let f = blaschke_factor(&r, variant);
            let at_r = f.eval_ring(&r).unwrap();
            assert!(entry(&at_r).max_abs_diff(&RingElement::zero(ctx())) < 1e-14);
        }
    }

    #[test]
    fn blaschke_zero_and_modulus_on_circle() {
        // constant point: a classical Blaschke factor about 0.5
        let r = RingElement::constant(ctx(), c(0.5, 0.0));
        let f = blaschke_factor(&r, BlaschkeVariant::Disk);
        let at_half = entry(&f.eval_complex(c(0.5, 0.0)).unwrap());
        assert!(at_half.max_abs_diff(&RingElement::zero(ctx())) < 1e-15);
        // unit modulus on the unit circle
        for k in 0..8 {
            let lambda = Complex64::from_polar(1.0, 0.25 * k as f64);
            let v = entry(&f.eval_complex(lambda).unwrap()).eval_origin();
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn eval_complex_of_plain_polynomial() {
        let z1 = RingElement::variable(ctx(), 1);
        let p = ScalarPoly::new(ctx(), vec![z1.clone(), RingElement::one(ctx())]);
        let f = RingRational::from_poly(p.to_matrix_poly());
        let v = f.eval_complex(c(0.3, -0.2)).unwrap();
        let expected = &z1 + &RingElement::constant(ctx(), c(0.3, -0.2));
        assert!(entry(&v).approx_eq(&expected, 1e-15));
    }

    #[test]
    fn projection_commutes_with_complex_evaluation() {
        // constant part of F(lambda) equals the classical rational function
        // of the projected coefficients
        let z1 = RingElement::variable(ctx(), 1);
        let num = ScalarPoly::new(
            ctx(),
            vec![
                &RingElement::constant(ctx(), c(0.7, 0.1)) + &z1.scale(c(0.4, 0.0)),
                RingElement::constant(ctx(), c(-0.3, 0.6)),
            ],
        );
        let den = ScalarPoly::new(
            ctx(),
            vec![
                RingElement::one(ctx()),
                &z1 + &RingElement::constant(ctx(), c(0.25, 0.0)),
            ],
        );
        let f = scalar_rational(num.clone(), den.clone());
        for k in 0..6 {
            let lambda = Complex64::from_polar(0.6, 1.1 * k as f64);
            let ring_route = entry(&f.eval_complex(lambda).unwrap()).eval_origin();
            let classical = num.eval_origin_at(lambda) / den.eval_origin_at(lambda);
            assert!((ring_route - classical).norm() < 1e-13);
        }
    }

    #[test]
    fn eval_complex_rejects_poles() {
        // denominator 1 - 2 lambda has a projected zero at 0.5
        let den = ScalarPoly::from_complex_coeffs(ctx(), &[c(1.0, 0.0), c(-2.0, 0.0)]);
        let f = scalar_rational(ScalarPoly::one(ctx()), den);
        assert!(matches!(
            f.eval_complex(c(0.5, 0.0)),
            Err(Error::PoleAtPoint { .. })
        ));
    }

    #[test]
    fn ring_eval_of_lambda_squared_is_binomial() {
        // F = lambda^2 at r = a + eps z1: a^2 + 2 a eps z1 + eps^2 z1^2
        let a = c(0.3, 0.0);
        let eps = c(0.2, 0.0);
        let z1 = RingElement::variable(ctx(), 1);
        let r = &RingElement::constant(ctx(), a) + &z1.scale(eps);
        let lambda_sq =
            ScalarPoly::from_complex_coeffs(ctx(), &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let f = RingRational::from_poly(lambda_sq.to_matrix_poly());
        let v = entry(&f.eval_ring(&r).unwrap());
        let expected = &(&RingElement::constant(ctx(), a * a) + &z1.scale(a * eps * 2.0))
            + &z1.wick_pow(2).scale(eps * eps);
        assert!(v.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn ring_eval_of_constant_matrix_ignores_the_point() {
        let m = RingMatrix::identity(ctx(), 2).scale(c(0.3, 0.7));
        let f = RingRational::from_poly(MatrixPoly::constant(m.clone()));
        let z2 = RingElement::variable(ctx(), 2);
        let r = &RingElement::constant(ctx(), c(0.1, 0.1)) + &z2;
        assert!(f.eval_ring(&r).unwrap().approx_eq(&m, 0.0));
    }

    #[test]
    fn ring_eval_reduces_to_complex_eval_on_constant_points() {
        let z1 = RingElement::variable(ctx(), 1);
        let num = ScalarPoly::new(ctx(), vec![z1.scale(c(0.3, 0.3)), RingElement::one(ctx())]);
        let den = ScalarPoly::from_complex_coeffs(ctx(), &[c(1.0, 0.0), c(0.4, -0.1)]);
        let f = scalar_rational(num, den);
        let point = c(0.2, -0.3);
        let via_ring = f.eval_ring(&RingElement::constant(ctx(), point)).unwrap();
        let via_complex = f.eval_complex(point).unwrap();
        assert!(via_ring.max_abs_diff(&via_complex) < 1e-14);
    }

    // Taylor-shift oracle: the series around the constant part of r with
    // binomially shifted coefficients, summed with Wick powers of the
    // nilpotent part. Independent of the Horner substitution path.
    fn eval_poly_by_taylor_shift(p: &ScalarPoly, r: &RingElement) -> RingElement {
        let ctx = p.context();
        let center = r.eval_origin();
        let h = r.without_constant_term();
        let deg = p.degree();
        let mut acc = RingElement::zero(ctx);
        for n in 0..=deg {
            // f_n = sum_{k>=n} C(k, n) coeff_k center^{k-n}
            let mut fn_val = RingElement::zero(ctx);
            for k in n..=deg {
                let mut binom = 1.0;
                for i in 0..n {
                    binom = binom * (k - i) as f64 / (i + 1) as f64;
                }
                let factor = center.powu((k - n) as u32) * binom;
                fn_val = &fn_val + &p.coeff(k).scale(factor);
            }
            acc = &acc + &fn_val.wick_mul(&h.wick_pow(n as u32));
        }
        acc
    }

    #[test]
    fn ring_eval_matches_taylor_shift_oracle() {
        let z1 = RingElement::variable(ctx(), 1);
        let z3 = RingElement::variable(ctx(), 3);
        let p = ScalarPoly::new(
            ctx(),
            vec![
                &RingElement::constant(ctx(), c(0.4, -0.2)) + &z1.scale(c(0.3, 0.0)),
                z3.scale(c(-0.2, 0.5)),
                RingElement::constant(ctx(), c(0.0, 1.0)),
                &z1 + &z3.scale(c(0.1, 0.1)),
            ],
        );
        let r = &(&RingElement::constant(ctx(), c(0.25, 0.15)) + &z1.scale(c(0.2, -0.1)))
            + &z3.wick_pow(2).scale(c(0.05, 0.0));
        let direct = p.eval_ring(&r);
        let shifted = eval_poly_by_taylor_shift(&p, &r);
        assert!(direct.approx_eq(&shifted, 1e-13));
    }

    #[test]
    fn polynomial_ring_evaluation_is_multiplicative() {
        let z2 = RingElement::variable(ctx(), 2);
        let p = ScalarPoly::new(ctx(), vec![RingElement::one(ctx()), z2.scale(c(0.5, 0.2))]);
        let q = ScalarPoly::new(
            ctx(),
            vec![z2.scale(c(0.0, 0.3)), RingElement::one(ctx()), z2.clone()],
        );
        let r = &RingElement::constant(ctx(), c(0.2, 0.4)) + &z2.scale(c(0.3, 0.0));
        let lhs = p.mul(&q).eval_ring(&r);
        let rhs = p.eval_ring(&r).wick_mul(&q.eval_ring(&r));
        assert!(lhs.approx_eq(&rhs, 1e-13));
    }

    #[test]
    fn contour_of_constant_is_constant() {
        let m = RingMatrix::identity(ctx(), 1).scale(c(0.8, -0.4));
        let f = RingRational::from_poly(MatrixPoly::constant(m.clone()));
        let z1 = RingElement::variable(ctx(), 1);
        let r = &RingElement::constant(ctx(), c(0.2, 0.0)) + &z1.scale(c(0.1, 0.0));
        let v = f.eval_contour(&r, 0.3, 128).unwrap();
        assert!(v.max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn contour_of_identity_function_returns_the_point() {
        let lambda = ScalarPoly::lambda(ctx());
        let f = RingRational::from_poly(lambda.to_matrix_poly());
        let z1 = RingElement::variable(ctx(), 1);
        let z2 = RingElement::variable(ctx(), 2);
        let r = &(&RingElement::constant(ctx(), c(0.3, -0.1)) + &z1.scale(c(0.2, 0.1)))
            + &z2.wick_pow(2).scale(c(-0.15, 0.0));
        let v = entry(&f.eval_contour(&r, 0.5, 256).unwrap());
        assert!(v.approx_eq(&r, 1e-10));
    }

    #[test]
    fn contour_matches_substitution_on_a_rational_function() {
        let z1 = RingElement::variable(ctx(), 1);
        let num = ScalarPoly::new(
            ctx(),
            vec![
                &RingElement::constant(ctx(), c(0.5, 0.2)) + &z1.scale(c(0.2, 0.0)),
                RingElement::constant(ctx(), c(1.0, -0.5)),
                z1.scale(c(0.0, 0.4)),
            ],
        );
        // projected zeros of the denominator sit at +-2
        let den = ScalarPoly::new(
            ctx(),
            vec![
                &RingElement::one(ctx()) + &z1.scale(c(0.1, 0.0)),
                z1.scale(c(0.05, 0.1)),
                RingElement::constant(ctx(), c(-0.25, 0.0)),
            ],
        );
        let f = scalar_rational(num, den);
        let r = &RingElement::constant(ctx(), c(0.3, 0.1)) + &z1.scale(c(0.25, -0.1));
        let direct = f.eval_ring(&r).unwrap();
        // nearest projected pole is at distance about 1.7; stay well inside
        let contour = f.eval_contour(&r, 0.6, 512).unwrap();
        assert!(contour.max_abs_diff(&direct) < 1e-8);
    }

    #[test]
    fn contour_requires_enough_nodes() {
        let f = RingRational::from_poly(ScalarPoly::one(ctx()).to_matrix_poly());
        let r = RingElement::zero(ctx());
        assert!(matches!(
            f.eval_contour(&r, 0.5, 32),
            Err(Error::TooFewNodes { got: 32 })
        ));
    }

    #[test]
    fn contour_refuses_poles_on_the_circle() {
        // projected pole at 0.5; center 0 radius 0.5 passes through it
        let den = ScalarPoly::from_complex_coeffs(ctx(), &[c(1.0, 0.0), c(-2.0, 0.0)]);
        let f = scalar_rational(ScalarPoly::one(ctx()), den);
        let r = RingElement::zero(ctx());
        assert!(f.eval_contour(&r, 0.5, 64).is_err());
    }
}
