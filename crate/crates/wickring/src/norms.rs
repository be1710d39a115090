//! Weighted coefficient norms and the level-gap constant of the Wick product.
//!
//! For an integer level k >= 1 the dual-scale norm is
//!
//! ```text
//! ‖F‖'_k = ( sum_alpha |f_alpha|^2 (2N)^{-k alpha} )^(1/2),
//! (2N)^{q alpha} = prod_j (2j)^{q alpha_j},
//! ```
//!
//! and the test-scale norm carries (alpha!)^2 (2N)^{+k alpha} instead. The
//! dual norms decrease in k and converge to the modulus of the constant term.
//! Across levels the Wick product satisfies
//!
//! ```text
//! ‖F ◇ G‖'_k <= A(k - l) ‖F‖'_l ‖G‖'_k      (l >= 1, k > l + 1),
//! ```
//!
//! where A(q)^2 = sum_alpha (2N)^{-q alpha} = prod_{j>=1} (1 - (2j)^{-q})^{-1}
//! is finite exactly for q > 1. `vage_constant` evaluates A(q) over the full
//! (untruncated) index set.

use num_complex::Complex64;

use crate::element::RingElement;
use crate::error::Error;

impl RingElement {
    /// Dual-scale norm at level k >= 1.
    pub fn dual_norm(&self, k: u32) -> f64 {
        assert!(k >= 1, "norm levels start at 1");
        let q = -f64::from(k);
        let mut sum = KahanSum::new();
        for (index, value) in self.terms() {
            sum.add(value.norm_sqr() * index.weight(q));
        }
        sum.value().sqrt()
    }

    /// Test-scale norm at level k >= 1.
    pub fn test_norm(&self, k: u32) -> f64 {
        assert!(k >= 1, "norm levels start at 1");
        let q = f64::from(k);
        let mut sum = KahanSum::new();
        for (index, value) in self.terms() {
            let fac = index.factorial();
            sum.add(fac * fac * value.norm_sqr() * index.weight(q));
        }
        sum.value().sqrt()
    }
}

/// The constant A(q) = (prod_{j>=1} (1 - (2j)^{-q})^{-1})^(1/2), q > 1.
///
/// Computed from the log of the infinite product: the first 256 factors are
/// summed directly (compensated), and the remaining log-tail
/// sum_{j>J} -ln(1 - (2j)^{-q}) is expanded as
/// sum_{n>=1} 2^{-qn} zeta_tail(qn) / n with the zeta tails evaluated by
/// Euler-Maclaurin. The result carries relative error of a few ulps; in
/// particular the absolute error stays below 1e-12 whenever A(q) <= 1e3,
/// which covers every q >= 1.05. Returns an error for q <= 1, where the
/// product diverges.
pub fn vage_constant(q: f64) -> Result<f64, Error> {
    if !(q > 1.0) {
        return Err(Error::DivergentWeightSum { q });
    }
    const HEAD: u32 = 256;
    let mut log_sq = KahanSum::new();
    for j in 1..=HEAD {
        let x = (2.0 * f64::from(j)).powf(-q);
        log_sq.add(-(-x).ln_1p());
    }
    log_sq.add(log_product_tail(q, f64::from(HEAD) + 1.0));
    Ok((0.5 * log_sq.value()).exp())
}

/// sum_{j>=from} -ln(1 - (2j)^{-q}) = sum_{n>=1} 2^{-qn}/n * sum_{j>=from} j^{-qn}.
fn log_product_tail(q: f64, from: f64) -> f64 {
    let mut total = 0.0;
    for n in 1..200 {
        let s = q * n as f64;
        let term = 2f64.powf(-s) * zeta_tail(s, from) / n as f64;
        total += term;
        if term < 1e-18 * (1.0 + total) {
            break;
        }
    }
    total
}

/// sum_{j>=n0} j^{-s} by Euler-Maclaurin; n0 large enough that the omitted
/// correction (order n0^{-s-7}) is far below double precision.
fn zeta_tail(s: f64, n0: f64) -> f64 {
    n0.powf(1.0 - s) / (s - 1.0) + 0.5 * n0.powf(-s) + s * n0.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n0.powf(-s - 3.0) / 720.0
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * n0.powf(-s - 5.0) / 30240.0
}

/// Compensated (Kahan) accumulator; keeps long sums accurate to O(eps).
#[derive(Clone)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub(crate) fn new() -> Self {
        KahanSum {
            sum: 0.0,
            carry: 0.0,
        }
    }

    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// Compensated complex accumulator built from two real ones.
#[derive(Clone)]
pub(crate) struct KahanComplexSum {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplexSum {
    pub(crate) fn new() -> Self {
        KahanComplexSum {
            re: KahanSum::new(),
            im: KahanSum::new(),
        }
    }

    pub(crate) fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
