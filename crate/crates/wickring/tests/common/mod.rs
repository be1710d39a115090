//! Shared helpers for the integration suites: a seeded generator and
//! constructors for random ring data with controlled properties.

use wickring::{InterpolationProblem, RingElement, RingMatrix, ScalarPoly, TruncationContext, C64};

/// SplitMix64; deterministic across runs and platforms.
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1].
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }

    pub fn complex(&mut self, scale: f64) -> C64 {
        C64::new(self.unit() * scale, self.unit() * scale)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// Random sparse element with coefficients bounded by `scale`.
pub fn random_element(ctx: TruncationContext, rng: &mut Rng, scale: f64) -> RingElement {
    RingElement::from_terms(
        ctx,
        ctx.enumerate().into_iter().filter_map(|idx| {
            if rng.unit() > 0.2 {
                Some((idx, rng.complex(scale)))
            } else {
                None
            }
        }),
    )
}

/// Random element with the constant term removed.
pub fn random_nilpotent(ctx: TruncationContext, rng: &mut Rng, scale: f64) -> RingElement {
    random_element(ctx, rng, scale).without_constant_term()
}

pub fn random_matrix(
    ctx: TruncationContext,
    rows: usize,
    cols: usize,
    rng: &mut Rng,
    scale: f64,
) -> RingMatrix {
    RingMatrix::from_fn(ctx, rows, cols, |_, _| random_element(ctx, rng, scale))
}

/// Exactly self-adjoint random matrix whose constant part has its minimum
/// eigenvalue shifted to `target_min_eig`.
pub fn hermitian_matrix_with_min_eig(
    ctx: TruncationContext,
    n: usize,
    rng: &mut Rng,
    target_min_eig: f64,
) -> RingMatrix {
    let mut m = RingMatrix::zeros(ctx, n, n);
    for i in 0..n {
        // real coefficients on the diagonal keep entries self-conjugate
        let diag = RingElement::from_terms(
            ctx,
            ctx.enumerate().into_iter().filter_map(|idx| {
                if rng.unit() > 0.0 {
                    Some((idx, C64::new(rng.unit() * 0.4, 0.0)))
                } else {
                    None
                }
            }),
        );
        m.set(i, i, diag);
        for j in i + 1..n {
            let e = random_element(ctx, rng, 0.4);
            m.set(i, j, e.clone());
            m.set(j, i, e.conjugate());
        }
    }
    let min_eig = m.eval_origin().hermitian_eigenvalues()[0];
    let shift = RingMatrix::identity(ctx, n).scale(C64::new(target_min_eig - min_eig, 0.0));
    m.add(&shift)
}

/// Random solvable interpolation data: distinct node constant parts in the
/// disk of radius 0.6, target constant parts through a strictly contractive
/// affine map (so the classical Pick matrix is positive definite), and ring
/// perturbations with coefficients bounded by `noise` that leave the
/// constant parts untouched.
pub fn solvable_problem(
    ctx: TruncationContext,
    n: usize,
    rng: &mut Rng,
    noise: f64,
) -> InterpolationProblem {
    let mut centers: Vec<C64> = Vec::with_capacity(n);
    while centers.len() < n {
        let candidate = rng.complex(0.6);
        if candidate.norm() < 0.6 && centers.iter().all(|c| (c - candidate).norm() > 0.15) {
            centers.push(candidate);
        }
    }
    let c0 = rng.complex(0.25);
    let c1 = rng.complex(0.3);
    let points: Vec<RingElement> = centers
        .iter()
        .map(|&a| &RingElement::constant(ctx, a) + &random_nilpotent(ctx, rng, noise))
        .collect();
    let targets: Vec<RingElement> = centers
        .iter()
        .map(|&a| &RingElement::constant(ctx, c0 + c1 * a) + &random_nilpotent(ctx, rng, noise))
        .collect();
    InterpolationProblem::new(points, targets).expect("constructed data is valid")
}

/// Random admissible parameter of the given degree (0 or 1 here).
pub fn random_parameter_poly(ctx: TruncationContext, degree: usize, rng: &mut Rng) -> ScalarPoly {
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..=degree {
        let center = rng.complex(0.25);
        coeffs.push(&RingElement::constant(ctx, center) + &random_nilpotent(ctx, rng, 0.1));
    }
    ScalarPoly::new(ctx, coeffs)
}

/// Relative coefficient error with floor 1: |x - y| / max(1, |x|, |y|).
pub fn rel_err(x: C64, y: C64) -> f64 {
    (x - y).norm() / 1f64.max(x.norm()).max(y.norm())
}

/// Largest relative coefficient error between two elements.
pub fn element_rel_err(f: &RingElement, g: &RingElement) -> f64 {
    let mut worst = 0.0f64;
    for (idx, v) in f.terms() {
        worst = worst.max(rel_err(v, g.coeff(idx)));
    }
    for (idx, v) in g.terms() {
        worst = worst.max(rel_err(f.coeff(idx), v));
    }
    worst
}

/// One pass/fail line per criterion, then the assertion itself.
pub fn criterion(number: u32, description: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("acceptance criterion {number:2}: {tag} - {description} ({detail})");
    assert!(pass, "criterion {number} failed: {description} ({detail})");
}
