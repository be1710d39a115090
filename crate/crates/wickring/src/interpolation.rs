//! Ring-valued Nevanlinna-Pick interpolation.
//!
//! Given nodes a_1..a_n and targets b_1..b_n whose constant parts lie in the
//! open unit disk, the solver builds the Pick matrix
//!
//! ```text
//! P_ij = (1 - b_i ◇ b_j*) ◇ (1 - a_i ◇ a_j*)^{-1},
//! ```
//!
//! gates solvability on strict positivity of P (equivalently, positive
//! definiteness of its constant part), and assembles the 2 x 2 generating
//! matrix
//!
//! ```text
//! Theta(lambda) = I_2 - (1 - lambda) C (I - lambda A)^{-1} P^{-1} (I - A)^{-*} C* J
//! ```
//!
//! with A = diag(a_i*), C = [[1 .. 1], [b_1* .. b_n*]] and J = diag(1, -1).
//! Every interpolant is then a linear fractional image
//! f = (a g + b)(c g + d)^{-1} of a parameter g whose projection is a
//! strictly contractive Schur function; row identities
//! (1, -b_i) Theta(a_i) = 0 make the interpolation conditions hold in the
//! ring, coefficients and all, not just after projection.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::consts::{
    CONTOUR_TOL, DEFAULT_NODES, EPS_DISTINCT, EPS_SCHUR, K_REPORT, RESIDUAL_TOL, SCHUR_GRID,
    SCHUR_RADIUS,
};
use crate::context::TruncationContext;
use crate::element::RingElement;
use crate::error::Error;
use crate::matrix::RingMatrix;
use crate::poly::{MatrixPoly, ScalarPoly};
use crate::rational::RingRational;

/// Interpolation data: nodes and targets with constant parts inside the open
/// unit disk, node constant parts pairwise distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationProblem {
    points: Vec<RingElement>,
    targets: Vec<RingElement>,
}

impl InterpolationProblem {
    pub fn new(points: Vec<RingElement>, targets: Vec<RingElement>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::InvalidProblem(
                "at least one node is required".into(),
            ));
        }
        if points.len() != targets.len() {
            return Err(Error::InvalidProblem(format!(
                "{} nodes but {} targets",
                points.len(),
                targets.len()
            )));
        }
        let ctx = points[0].context();
        if !points
            .iter()
            .chain(targets.iter())
            .all(|e| e.context() == ctx)
        {
            return Err(Error::InvalidProblem("mixed truncation contexts".into()));
        }
        for (i, a) in points.iter().enumerate() {
            let m = a.eval_origin().norm();
            if m >= 1.0 {
                return Err(Error::InvalidProblem(format!(
                    "node {i} has constant part of modulus {m} outside the open unit disk"
                )));
            }
        }
        for (i, b) in targets.iter().enumerate() {
            let m = b.eval_origin().norm();
            if m >= 1.0 {
                return Err(Error::InvalidProblem(format!(
                    "target {i} has constant part of modulus {m} outside the open unit disk"
                )));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let gap = (points[i].eval_origin() - points[j].eval_origin()).norm();
                if gap <= EPS_DISTINCT {
                    return Err(Error::InvalidProblem(format!(
                        "nodes {i} and {j} have coincident constant parts (gap {gap:.3e})"
                    )));
                }
            }
        }
        Ok(InterpolationProblem { points, targets })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn context(&self) -> TruncationContext {
        self.points[0].context()
    }

    pub fn points(&self) -> &[RingElement] {
        &self.points
    }

    pub fn targets(&self) -> &[RingElement] {
        &self.targets
    }

    /// The classical counterpart: constant parts only, in the degenerate
    /// context where the ring is a copy of the complex numbers.
    pub fn project(&self) -> InterpolationProblem {
        let ctx = TruncationContext::degenerate();
        let project = |e: &RingElement| RingElement::constant(ctx, e.eval_origin());
        InterpolationProblem::new(
            self.points.iter().map(project).collect(),
            self.targets.iter().map(project).collect(),
        )
        .expect("projection of a valid problem is valid")
    }

    /// The ring-valued Pick matrix, self-adjoint by construction of the
    /// formula. The denominators 1 - a_i ◇ a_j* are invertible because the
    /// node constant parts lie strictly inside the disk.
    pub fn pick_matrix(&self) -> RingMatrix {
        let ctx = self.context();
        let one = RingElement::one(ctx);
        RingMatrix::from_fn(ctx, self.n(), self.n(), |i, j| {
            let num = &one - &self.targets[i].wick_mul(&self.targets[j].conjugate());
            let den = &one - &self.points[i].wick_mul(&self.points[j].conjugate());
            let den_inv = den
                .inverse()
                .expect("1 - a_i a_j* has nonzero constant term for nodes in the disk");
            num.wick_mul(&den_inv)
        })
    }

    /// The data matrices A = diag(a_i*), C with a row of ones over the row
    /// of b_i*, and the signature matrix J = diag(1, -1).
    pub fn data_matrices(&self) -> (RingMatrix, RingMatrix, RingMatrix) {
        let ctx = self.context();
        let n = self.n();
        let mut a = RingMatrix::zeros(ctx, n, n);
        for i in 0..n {
            a.set(i, i, self.points[i].conjugate());
        }
        let c = RingMatrix::from_fn(ctx, 2, n, |row, col| {
            if row == 0 {
                RingElement::one(ctx)
            } else {
                self.targets[col].conjugate()
            }
        });
        let mut j = RingMatrix::identity(ctx, 2);
        j.set(1, 1, RingElement::constant(ctx, Complex64::new(-1.0, 0.0)));
        (a, c, j)
    }

    /// The classical Pick matrix of the projected data, computed directly in
    /// complex arithmetic.
    pub fn classical_pick(&self) -> CMatrix {
        let n = self.n();
        let a: Vec<Complex64> = self.points.iter().map(|e| e.eval_origin()).collect();
        let b: Vec<Complex64> = self.targets.iter().map(|e| e.eval_origin()).collect();
        let one = Complex64::new(1.0, 0.0);
        CMatrix::from_fn(n, n, |i, j| {
            (one - b[i] * b[j].conj()) / (one - a[i] * a[j].conj())
        })
    }

    /// Builds the generating matrix. Solvable exactly when the Pick matrix
    /// is strictly positive, which the square-root factorization certifies;
    /// a failed gate reports the constant-part minimum eigenvalue.
    pub fn build_theta(&self) -> Result<ThetaMatrix, Error> {
        let ctx = self.context();
        let n = self.n();
        let p = self.pick_matrix();
        p.strict_positive_factor().map_err(|e| match e {
            Error::NotPositiveDefinite { min_eigenvalue } => Error::Unsolvable { min_eigenvalue },
            other => other,
        })?;
        let p_inv = p.inverse()?;
        let (a, c, j) = self.data_matrices();
        let identity = RingMatrix::identity(ctx, n);
        let i_minus_a_inv_adj = identity.sub(&a).inverse()?.adjoint();
        // K = P^{-1} (I - A)^{-*} C* J is free of lambda
        let k = p_inv.mul(&i_minus_a_inv_adj).mul(&c.adjoint()).mul(&j);
        // resolvent of the pencil I - lambda A over the common denominator
        let pencil = MatrixPoly::new(
            ctx,
            n,
            n,
            vec![identity, a.scale(Complex64::new(-1.0, 0.0))],
        );
        let (den, adj) = pencil.det_adjugate();
        let middle = MatrixPoly::constant(c)
            .matmul(&adj)
            .matmul(&MatrixPoly::constant(k));
        let one_minus_lambda = ScalarPoly::from_complex_coeffs(
            ctx,
            &[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
        );
        let num = MatrixPoly::scalar_times_identity(&den, 2)
            .sub(&middle.mul_scalar_poly(&one_minus_lambda));
        Ok(ThetaMatrix {
            rational: RingRational::new(num, den)?,
        })
    }
}

/// The 2 x 2 generating matrix as a rational pair, with block access.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaMatrix {
    rational: RingRational,
}

impl ThetaMatrix {
    pub fn rational(&self) -> &RingRational {
        &self.rational
    }

    pub fn context(&self) -> TruncationContext {
        self.rational.context()
    }

    pub fn den(&self) -> &ScalarPoly {
        self.rational.den()
    }

    /// Numerator block (i, j) as a scalar polynomial; the function block is
    /// this over `den`.
    pub fn block(&self, i: usize, j: usize) -> ScalarPoly {
        self.rational.num().block(i, j)
    }

    pub fn eval_ring(&self, r: &RingElement) -> Result<RingMatrix, Error> {
        self.rational.eval_ring(r)
    }

    pub fn eval_complex(&self, lambda: Complex64) -> Result<RingMatrix, Error> {
        self.rational.eval_complex(lambda)
    }

    /// Classical evaluation of the projection.
    pub fn eval_origin_at(&self, lambda: Complex64) -> Result<CMatrix, Error> {
        self.rational.eval_origin_at(lambda)
    }
}

/// Max over the nodes, and over both components, of the dual norm of
/// (1, -b_i) ◇ Theta(a_i), which vanishes identically in exact arithmetic.
pub fn theta_identity_residual(
    prob: &InterpolationProblem,
    theta: &ThetaMatrix,
    level: u32,
) -> Result<f64, Error> {
    let ctx = prob.context();
    let mut worst = 0.0f64;
    for (a_i, b_i) in prob.points().iter().zip(prob.targets()) {
        let theta_at = theta.eval_ring(a_i)?;
        let row = RingMatrix::from_entries(
            1,
            2,
            vec![RingElement::one(ctx), b_i.scale(Complex64::new(-1.0, 0.0))],
        );
        let v = row.mul(&theta_at);
        worst = worst.max(v.max_entry_dual_norm(level));
    }
    Ok(worst)
}

/// An admissible parameter: a scalar polynomial in lambda with ring
/// coefficients whose projection is strictly contractive. Contractivity is
/// checked on a circle of radius just under 1; by the maximum principle the
/// circle maximum dominates the disk it bounds, so sampling the boundary is
/// enough for a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurParameter {
    poly: ScalarPoly,
}

impl SchurParameter {
    pub fn new(poly: ScalarPoly) -> Result<Self, Error> {
        let max = projected_circle_max(&poly, SCHUR_RADIUS, SCHUR_GRID);
        if max > 1.0 - EPS_SCHUR {
            return Err(Error::NotSchur { max_modulus: max });
        }
        Ok(SchurParameter { poly })
    }

    /// The zero parameter, giving the central solution.
    pub fn zero(ctx: TruncationContext) -> Self {
        SchurParameter {
            poly: ScalarPoly::zero(ctx),
        }
    }

    pub fn constant(value: RingElement) -> Result<Self, Error> {
        Self::new(ScalarPoly::constant(value))
    }

    pub fn poly(&self) -> &ScalarPoly {
        &self.poly
    }

    pub fn context(&self) -> TruncationContext {
        self.poly.context()
    }

    /// The projected parameter in the degenerate context.
    pub fn project(&self) -> SchurParameter {
        let ctx = TruncationContext::degenerate();
        let coeffs = self.poly.eval_origin_poly();
        SchurParameter {
            poly: ScalarPoly::from_complex_coeffs(ctx, &coeffs),
        }
    }
}

/// Largest modulus of the projected polynomial on the sampling circle.
fn projected_circle_max(poly: &ScalarPoly, radius: f64, grid: usize) -> f64 {
    (0..grid)
        .map(|t| {
            let angle = 2.0 * std::f64::consts::PI * t as f64 / grid as f64;
            poly.eval_origin_at(Complex64::from_polar(radius, angle))
                .norm()
        })
        .fold(0.0, f64::max)
}

/// Applies the linear fractional transformation of Theta to a parameter:
/// with blocks a, b, c, d, returns
///
/// * u = (a ◇ g + b) / den,
/// * v = (c ◇ g + d) / den,
/// * f = u ◇ v^{-1} = (a ◇ g + b) / (c ◇ g + d).
///
/// The zero parameter gives the central solution b ◇ d^{-1}.
pub fn lft_apply(
    theta: &ThetaMatrix,
    param: &SchurParameter,
) -> Result<(RingRational, RingRational, RingRational), Error> {
    assert!(theta.context() == param.context(), "context mismatch");
    let g = param.poly();
    let num_u = theta.block(0, 0).mul(g).add(&theta.block(0, 1));
    let num_v = theta.block(1, 0).mul(g).add(&theta.block(1, 1));
    let u = RingRational::from_scalar_polys(num_u.clone(), theta.den().clone())?;
    let v = RingRational::from_scalar_polys(num_v.clone(), theta.den().clone())?;
    let f = RingRational::from_scalar_polys(num_u, num_v)?;
    Ok((u, v, f))
}

/// Verification gates and sampling parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Dual-norm level for residuals.
    pub k_report: u32,
    /// Gate on point and homogeneous residuals.
    pub residual_tol: f64,
    /// Number of boundary samples for the projected contractivity check.
    pub grid: usize,
    /// Radius of the sampling circle.
    pub grid_radius: f64,
    /// Required contractivity margin of the projected solution.
    pub schur_margin_min: f64,
    /// Contour-oracle node count; None disables the cross-check.
    pub contour_nodes: Option<usize>,
    /// Gate on the contour / substitution disagreement.
    pub contour_tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            k_report: K_REPORT,
            residual_tol: RESIDUAL_TOL,
            grid: SCHUR_GRID,
            grid_radius: SCHUR_RADIUS,
            schur_margin_min: EPS_SCHUR / 2.0,
            contour_nodes: Some(DEFAULT_NODES),
            contour_tol: CONTOUR_TOL,
        }
    }
}

/// Everything a verification run measures. All recorded norms are
/// non-negative; gates are recorded next to the measurements they judge.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionReport {
    pub n_points: usize,
    pub k_report: u32,
    pub residual_tol: f64,
    /// Dual norms of f(a_i) - b_i.
    pub point_residuals: Vec<f64>,
    /// Dual norms of num(a_i) - b_i ◇ den(a_i), the pole-free form of the
    /// interpolation identity.
    pub homogeneous_residuals: Vec<f64>,
    pub max_point_residual: f64,
    pub max_homogeneous_residual: f64,
    /// Disagreement between contour evaluation and substitution, per point;
    /// infinite when the contour hit a pole. Empty when disabled.
    pub contour_deviations: Vec<f64>,
    pub max_contour_deviation: Option<f64>,
    /// Largest modulus of the projected solution on the sampling circle.
    pub schur_max_modulus: f64,
    pub schur_margin: f64,
    /// Smallest modulus of the projected denominator on the sampling circle.
    pub den_min_modulus: f64,
    /// Spectrum of the classical Pick matrix of the projected data.
    pub pick_eigenvalues: Vec<f64>,
    pub pick_min_eigenvalue: f64,
    pub residual_pass: bool,
    pub schur_pass: bool,
    pub contour_pass: Option<bool>,
    pub pass: bool,
    /// Free-form description of the parameter that produced the candidate,
    /// when known.
    pub parameter_echo: Option<String>,
}

/// Checks a candidate solution against the data: per-point residuals in the
/// dual norm, the pole-free homogeneous identity, strict contractivity of
/// the projection on a boundary grid, the classical Pick spectrum, and
/// (optionally) agreement of substitution with the contour oracle.
pub fn verify_solution(
    prob: &InterpolationProblem,
    f: &RingRational,
    opts: &VerifyOptions,
) -> Result<SolutionReport, Error> {
    assert!(
        f.rows() == 1 && f.cols() == 1,
        "candidate solutions are scalar valued"
    );
    assert!(f.context() == prob.context(), "context mismatch");
    let num = f.num().block(0, 0);
    let mut point_residuals = Vec::with_capacity(prob.n());
    let mut homogeneous_residuals = Vec::with_capacity(prob.n());
    let mut contour_deviations = Vec::new();
    for (a_i, b_i) in prob.points().iter().zip(prob.targets()) {
        let value = f.eval_ring(a_i)?.at(0, 0).clone();
        point_residuals.push((&value - b_i).dual_norm(opts.k_report));
        let u_at = num.eval_ring(a_i);
        let v_at = f.den().eval_ring(a_i);
        homogeneous_residuals.push((&u_at - &b_i.wick_mul(&v_at)).dual_norm(opts.k_report));
        if let Some(nodes) = opts.contour_nodes {
            // a circle inside the unit disk, clear of the boundary
            let radius = (1.0 - a_i.eval_origin().norm()) / 2.0;
            let deviation = match f.eval_contour(a_i, radius, nodes) {
                Ok(via_contour) => (via_contour.at(0, 0) - &value).dual_norm(opts.k_report),
                Err(_) => f64::INFINITY,
            };
            contour_deviations.push(deviation);
        }
    }
    let max_point_residual = point_residuals.iter().copied().fold(0.0, f64::max);
    let max_homogeneous_residual = homogeneous_residuals.iter().copied().fold(0.0, f64::max);
    let max_contour_deviation = if contour_deviations.is_empty() {
        None
    } else {
        Some(contour_deviations.iter().copied().fold(0.0, f64::max))
    };

    let mut schur_max = 0.0f64;
    let mut den_min = f64::INFINITY;
    for t in 0..opts.grid {
        let angle = 2.0 * std::f64::consts::PI * t as f64 / opts.grid as f64;
        let lambda = Complex64::from_polar(opts.grid_radius, angle);
        den_min = den_min.min(f.den().eval_origin_at(lambda).norm());
        match f.eval_origin_at(lambda) {
            Ok(m) => schur_max = schur_max.max(m.get(0, 0).norm()),
            Err(_) => schur_max = f64::INFINITY,
        }
    }
    let pick_eigenvalues = prob.classical_pick().hermitian_eigenvalues();
    let pick_min_eigenvalue = pick_eigenvalues[0];

    let residual_pass =
        max_point_residual <= opts.residual_tol && max_homogeneous_residual <= opts.residual_tol;
    let schur_pass = schur_max <= 1.0 - opts.schur_margin_min;
    let contour_pass = max_contour_deviation.map(|d| d <= opts.contour_tol);
    let pass = residual_pass && schur_pass && contour_pass.unwrap_or(true);

    Ok(SolutionReport {
        n_points: prob.n(),
        k_report: opts.k_report,
        residual_tol: opts.residual_tol,
        point_residuals,
        homogeneous_residuals,
        max_point_residual,
        max_homogeneous_residual,
        contour_deviations,
        max_contour_deviation,
        schur_max_modulus: schur_max,
        schur_margin: 1.0 - schur_max,
        den_min_modulus: den_min,
        pick_eigenvalues,
        pick_min_eigenvalue,
        residual_pass,
        schur_pass,
        contour_pass,
        pass,
        parameter_echo: None,
    })
}

/// Runs the same pipeline on the projected data in the degenerate context,
/// where the ring collapses to the complex numbers. The result is the
/// classical interpolant for the projected parameter and serves as the
/// consistency oracle for projections of ring solutions.
pub fn classical_solve(
    prob: &InterpolationProblem,
    param: &SchurParameter,
) -> Result<RingRational, Error> {
    let projected = prob.project();
    let theta = projected.build_theta()?;
    let sigma = param.project();
    let (_, _, f) = lft_apply(&theta, &sigma)?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_complex, random_element, splitmix};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx() -> TruncationContext {
        TruncationContext::new(3, 4)
    }

    fn consts(ctx: TruncationContext, values: &[Complex64]) -> Vec<RingElement> {
        values
            .iter()
            .map(|&v| RingElement::constant(ctx, v))
            .collect()
    }

    fn trivial_problem() -> InterpolationProblem {
        InterpolationProblem::new(consts(ctx(), &[c(0.0, 0.0)]), consts(ctx(), &[c(0.0, 0.0)]))
            .unwrap()
    }

    /// A small solvable problem with genuinely ring-valued data. Target
    /// constant parts are the node constant parts through the strictly
    /// contractive map 0.2 + 0.5 lambda, which keeps the classical Pick
    /// matrix positive definite; the ring perturbations leave constant
    /// parts untouched, so solvability is not disturbed.
    fn ring_problem(state: &mut u64) -> InterpolationProblem {
        let centers_a = [c(0.1, 0.2), c(-0.4, 0.1), c(0.3, -0.35)];
        let perturb = |center: Complex64, state: &mut u64| {
            let noise = random_element(ctx(), state, 0.15).without_constant_term();
            &RingElement::constant(ctx(), center) + &noise
        };
        let points: Vec<RingElement> = centers_a.iter().map(|&a| perturb(a, state)).collect();
        let targets = centers_a
            .iter()
            .map(|&a| perturb(c(0.2, 0.0) + a * 0.5, state))
            .collect();
        InterpolationProblem::new(points, targets).unwrap()
    }

    #[test]
    fn problem_validation() {
        // outside the disk
        let bad =
            InterpolationProblem::new(consts(ctx(), &[c(1.0, 0.5)]), consts(ctx(), &[c(0.0, 0.0)]));
        assert!(matches!(bad, Err(Error::InvalidProblem(_))));
        // coincident nodes
        let bad = InterpolationProblem::new(
            consts(ctx(), &[c(0.3, 0.0), c(0.3, 0.0)]),
            consts(ctx(), &[c(0.0, 0.0), c(0.1, 0.0)]),
        );
        assert!(matches!(bad, Err(Error::InvalidProblem(_))));
        // count mismatch
        let bad = InterpolationProblem::new(
            consts(ctx(), &[c(0.3, 0.0)]),
            consts(ctx(), &[c(0.0, 0.0), c(0.1, 0.0)]),
        );
        assert!(matches!(bad, Err(Error::InvalidProblem(_))));
    }

    #[test]
    fn pick_matrix_trivial_cases() {
        // a = b = 0: P = [1]
        let p = trivial_problem().pick_matrix();
        assert!(p.at(0, 0).approx_eq(&RingElement::one(ctx()), 1e-15));

        // a = 0, b = beta: P = [1 - |beta|^2]
        let beta = c(0.3, 0.4);
        let prob = InterpolationProblem::new(consts(ctx(), &[c(0.0, 0.0)]), consts(ctx(), &[beta]))
            .unwrap();
        let p = prob.pick_matrix();
        let expected = RingElement::constant(ctx(), c(1.0 - beta.norm_sqr(), 0.0));
        assert!(p.at(0, 0).approx_eq(&expected, 1e-15));
    }

    #[test]
    fn pick_matrix_is_self_adjoint_and_projects_classically() {
        let mut state = 11u64;
        let prob = ring_problem(&mut state);
        let p = prob.pick_matrix();
        assert!(p.hermitian_deviation() < 1e-13);
        assert!(p.eval_origin().max_abs_diff(&prob.classical_pick()) < 1e-13);
    }

    #[test]
    fn data_matrices_shapes_and_values() {
        let a_val = c(0.5, -0.2);
        let prob =
            InterpolationProblem::new(consts(ctx(), &[a_val]), consts(ctx(), &[c(0.1, 0.3)]))
                .unwrap();
        let (a, cmat, j) = prob.data_matrices();
        assert!(a
            .at(0, 0)
            .approx_eq(&RingElement::constant(ctx(), a_val.conj()), 0.0));
        // first row of C is all ones
        assert!(cmat.at(0, 0).approx_eq(&RingElement::one(ctx()), 0.0));
        assert!(cmat
            .at(1, 0)
            .approx_eq(&RingElement::constant(ctx(), c(0.1, -0.3)), 0.0));
        // J^2 = I
        assert!(j.mul(&j).approx_eq(&RingMatrix::identity(ctx(), 2), 0.0));
    }

    #[test]
    fn theta_for_the_trivial_problem_is_diag_lambda_one() {
        let theta = trivial_problem().build_theta().unwrap();
        // denominator: det(I - lambda * 0) = 1
        assert_eq!(theta.den().degree(), 0);
        assert!(theta
            .den()
            .coeff(0)
            .approx_eq(&RingElement::one(ctx()), 1e-15));
        // a(lambda) = lambda, d = 1, b = c = 0
        let a = theta.block(0, 0);
        assert_eq!(a.degree(), 1);
        assert!(a.coeff(0).max_abs_diff(&RingElement::zero(ctx())) < 1e-15);
        assert!(a.coeff(1).approx_eq(&RingElement::one(ctx()), 1e-15));
        assert!(theta.block(0, 1).is_zero());
        assert!(theta.block(1, 0).is_zero());
        let d = theta.block(1, 1);
        assert_eq!(d.degree(), 0);
        assert!(d.coeff(0).approx_eq(&RingElement::one(ctx()), 1e-15));
    }

    #[test]
    fn theta_at_one_is_the_identity() {
        let mut state = 21u64;
        let prob = ring_problem(&mut state);
        let theta = prob.build_theta().unwrap();
        let at_one = theta.eval_ring(&RingElement::one(ctx())).unwrap();
        // careful: lambda = 1 as a ring point is the constant 1
        assert!(at_one.max_abs_diff(&RingMatrix::identity(ctx(), 2)) < 1e-10);
    }

    // classical Theta by direct complex arithmetic, independent of the ring
    // pipeline
    fn classical_theta(a: &[Complex64], b: &[Complex64], lambda: Complex64) -> CMatrix {
        let n = a.len();
        let one = c(1.0, 0.0);
        let p = CMatrix::from_fn(n, n, |i, j| {
            (one - b[i] * b[j].conj()) / (one - a[i] * a[j].conj())
        });
        let amat = CMatrix::from_fn(n, n, |i, j| if i == j { a[i].conj() } else { c(0.0, 0.0) });
        let cmat = CMatrix::from_fn(2, n, |row, col| if row == 0 { one } else { b[col].conj() });
        let jmat = CMatrix::from_rows(vec![
            vec![one, c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ]);
        let eye = CMatrix::identity(n);
        let resolvent = eye.sub(&amat.scale(lambda)).inverse().unwrap();
        let i_minus_a_adj_inv = eye.sub(&amat).adjoint().inverse().unwrap();
        let correction = cmat
            .mul(&resolvent)
            .mul(&p.inverse().unwrap())
            .mul(&i_minus_a_adj_inv)
            .mul(&cmat.adjoint())
            .mul(&jmat)
            .scale(one - lambda);
        CMatrix::identity(2).sub(&correction)
    }

    #[test]
    fn theta_projection_matches_classical_oracle() {
        let mut state = 33u64;
        let prob = ring_problem(&mut state);
        let theta = prob.build_theta().unwrap();
        let a: Vec<Complex64> = prob.points().iter().map(|e| e.eval_origin()).collect();
        let b: Vec<Complex64> = prob.targets().iter().map(|e| e.eval_origin()).collect();
        for k in 0..12 {
            let lambda = Complex64::from_polar(0.8, 0.5 * k as f64 + 0.1);
            let via_ring = theta.eval_origin_at(lambda).unwrap();
            let oracle = classical_theta(&a, &b, lambda);
            assert!(via_ring.max_abs_diff(&oracle) < 1e-10, "lambda sample {k}");
        }
    }

    #[test]
    fn theta_row_identity_on_constant_and_ring_problems() {
        // constant data
        let prob = InterpolationProblem::new(
            consts(ctx(), &[c(0.2, 0.1), c(-0.3, 0.25)]),
            consts(ctx(), &[c(0.1, -0.2), c(0.3, 0.1)]),
        )
        .unwrap();
        let theta = prob.build_theta().unwrap();
        let residual = theta_identity_residual(&prob, &theta, 4).unwrap();
        assert!(residual < 1e-9, "constant-problem residual {residual}");

        // ring data: identities persist coefficientwise
        let mut state = 55u64;
        let prob = ring_problem(&mut state);
        let theta = prob.build_theta().unwrap();
        let residual = theta_identity_residual(&prob, &theta, 4).unwrap();
        assert!(residual < 1e-8, "ring-problem residual {residual}");
    }

    #[test]
    fn unsolvable_problem_is_rejected_with_the_eigenvalue() {
        // targets of modulus close to one at nearby nodes make the Pick
        // matrix indefinite
        let prob = InterpolationProblem::new(
            consts(ctx(), &[c(0.0, 0.0), c(0.5, 0.0)]),
            consts(ctx(), &[c(0.95, 0.0), c(-0.95, 0.0)]),
        )
        .unwrap();
        match prob.build_theta() {
            Err(Error::Unsolvable { min_eigenvalue }) => assert!(min_eigenvalue < 0.0),
            other => panic!("expected Unsolvable, got {other:?}"),
        }
    }

    #[test]
    fn schur_parameter_gate() {
        assert!(SchurParameter::constant(RingElement::constant(ctx(), c(0.5, 0.3))).is_ok());
        assert!(matches!(
            SchurParameter::constant(RingElement::constant(ctx(), c(0.999, 0.3))),
            Err(Error::NotSchur { .. })
        ));
        // degree-1 polynomial max modulus on the circle decides
        let p = ScalarPoly::from_complex_coeffs(ctx(), &[c(0.6, 0.0), c(0.45, 0.0)]);
        assert!(matches!(
            SchurParameter::new(p),
            Err(Error::NotSchur { .. })
        ));
        let p = ScalarPoly::from_complex_coeffs(ctx(), &[c(0.4, 0.0), c(0.3, 0.0)]);
        assert!(SchurParameter::new(p).is_ok());
    }

    #[test]
    fn lft_on_the_trivial_theta() {
        let theta = trivial_problem().build_theta().unwrap();
        // constant parameter: f(lambda) = sigma lambda
        let sigma = c(0.4, -0.3);
        let param = SchurParameter::constant(RingElement::constant(ctx(), sigma)).unwrap();
        let (_, _, f) = lft_apply(&theta, &param).unwrap();
        for k in 0..6 {
            let lambda = Complex64::from_polar(0.7, 1.3 * k as f64);
            let v = f.eval_complex(lambda).unwrap().at(0, 0).eval_origin();
            assert!((v - sigma * lambda).norm() < 1e-12);
        }
        // zero parameter: the central solution b / d = 0 here
        let central = lft_apply(&theta, &SchurParameter::zero(ctx())).unwrap().2;
        for k in 0..4 {
            let lambda = Complex64::from_polar(0.5, 0.9 * k as f64);
            let v = central.eval_complex(lambda).unwrap().at(0, 0).eval_origin();
            assert!(v.norm() < 1e-14);
        }
    }

    #[test]
    fn lft_projection_is_the_classical_transform() {
        let mut state = 77u64;
        let prob = ring_problem(&mut state);
        let theta = prob.build_theta().unwrap();
        let g_elem = &RingElement::constant(ctx(), c(0.25, 0.1))
            + &random_element(ctx(), &mut state, 0.1).without_constant_term();
        let param = SchurParameter::constant(g_elem).unwrap();
        let (_, _, f) = lft_apply(&theta, &param).unwrap();
        let sigma = param.poly().eval_origin_poly()[0];
        for k in 0..10 {
            let lambda = Complex64::from_polar(0.75, 0.7 * k as f64 + 0.2);
            let lhs = f.eval_origin_at(lambda).unwrap().get(0, 0);
            let th = theta.eval_origin_at(lambda).unwrap();
            let rhs = (th.get(0, 0) * sigma + th.get(0, 1)) / (th.get(1, 0) * sigma + th.get(1, 1));
            assert!((lhs - rhs).norm() < 1e-11);
        }
    }

    #[test]
    fn verify_central_solution_of_trivial_problem() {
        let prob = trivial_problem();
        let theta = prob.build_theta().unwrap();
        let (_, _, f) = lft_apply(&theta, &SchurParameter::zero(ctx())).unwrap();
        let report = verify_solution(&prob, &f, &VerifyOptions::default()).unwrap();
        assert!(report.pass);
        assert!(report.max_point_residual < 1e-14);
        assert!(report.max_homogeneous_residual < 1e-14);
        assert!((report.pick_min_eigenvalue - 1.0).abs() < 1e-12);
    }

    #[test]
    fn verify_end_to_end_on_a_ring_problem() {
        let mut state = 91u64;
        let prob = ring_problem(&mut state);
        let theta = prob.build_theta().unwrap();
        let g = ScalarPoly::new(
            ctx(),
            vec![
                &RingElement::constant(ctx(), c(0.2, -0.1))
                    + &random_element(ctx(), &mut state, 0.1).without_constant_term(),
                RingElement::constant(ctx(), c(0.15, 0.2)),
            ],
        );
        let param = SchurParameter::new(g).unwrap();
        let (u, v, f) = lft_apply(&theta, &param).unwrap();
        let report = verify_solution(&prob, &f, &VerifyOptions::default()).unwrap();
        assert!(report.pass, "report: {report:?}");
        assert!(report.max_point_residual < 1e-8);
        assert!(report.max_homogeneous_residual < 1e-8);
        // u(a_i) = b_i ◇ v(a_i) in the rational form as well
        for (a_i, b_i) in prob.points().iter().zip(prob.targets()) {
            let u_at = u.eval_ring(a_i).unwrap().at(0, 0).clone();
            let v_at = v.eval_ring(a_i).unwrap().at(0, 0).clone();
            assert!((&u_at - &b_i.wick_mul(&v_at)).dual_norm(4) < 1e-8);
        }
    }

    #[test]
    fn verify_flags_a_perturbed_candidate() {
        let mut state = 123u64;
        let prob = ring_problem(&mut state);
        let theta = prob.build_theta().unwrap();
        let (_, _, f) = lft_apply(&theta, &SchurParameter::zero(ctx())).unwrap();
        // shift the numerator by 0.1: no longer interpolates
        let shifted_num = f
            .num()
            .block(0, 0)
            .add(&ScalarPoly::constant(RingElement::constant(
                ctx(),
                c(0.1, 0.0),
            )));
        let bad = RingRational::from_scalar_polys(shifted_num, f.den().clone()).unwrap();
        let report = verify_solution(&prob, &bad, &VerifyOptions::default()).unwrap();
        assert!(!report.residual_pass);
        assert!(report.max_point_residual > 1e-3);
        assert!(!report.pass);
    }

    #[test]
    fn classical_solution_of_the_trivial_problem_is_zero() {
        let prob = trivial_problem();
        let f = classical_solve(&prob, &SchurParameter::zero(ctx())).unwrap();
        for k in 0..5 {
            let lambda = Complex64::from_polar(0.6, 1.1 * k as f64);
            let v = f.eval_origin_at(lambda).unwrap().get(0, 0);
            assert!(v.norm() < 1e-14);
        }
    }

    #[test]
    fn projection_of_ring_solution_matches_classical_pipeline() {
        let mut state = 222u64;
        let prob = ring_problem(&mut state);
        let theta = prob.build_theta().unwrap();
        let param = SchurParameter::constant(
            &RingElement::constant(ctx(), c(-0.2, 0.25))
                + &random_element(ctx(), &mut state, 0.1).without_constant_term(),
        )
        .unwrap();
        let (_, _, f) = lft_apply(&theta, &param).unwrap();
        let classical = classical_solve(&prob, &param).unwrap();
        for k in 0..40 {
            let lambda = Complex64::from_polar(0.85, 0.157 * k as f64);
            let ring_proj = f.eval_origin_at(lambda).unwrap().get(0, 0);
            let cls = classical.eval_origin_at(lambda).unwrap().get(0, 0);
            assert!((ring_proj - cls).norm() < 1e-9, "sample {k}");
        }
    }

    #[test]
    fn theta_projection_is_j_contractive_inside_the_disk() {
        let mut state = 314u64;
        let prob = ring_problem(&mut state);
        let theta = prob.build_theta().unwrap();
        let jmat = CMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ]);
        for k in 0..40 {
            let radius = 0.9 * (k as f64 + 1.0) / 40.0;
            let lambda = Complex64::from_polar(radius, 0.37 * k as f64);
            let th = theta.eval_origin_at(lambda).unwrap();
            let defect = jmat.sub(&th.mul(&jmat).mul(&th.adjoint()));
            let min_eig = defect.hermitian_eigenvalues()[0];
            assert!(min_eig >= -1e-10, "sample {k}: min eig {min_eig}");
        }
    }

    #[test]
    fn distinct_parameters_give_distinct_solutions() {
        let mut state = 999u64;
        let prob = ring_problem(&mut state);
        let theta = prob.build_theta().unwrap();
        let g1 = SchurParameter::constant(RingElement::constant(ctx(), c(0.1, 0.0))).unwrap();
        let g2 = SchurParameter::constant(RingElement::constant(ctx(), c(0.3, 0.0))).unwrap();
        let f1 = lft_apply(&theta, &g1).unwrap().2;
        let f2 = lft_apply(&theta, &g2).unwrap().2;
        let mut best_gap = 0.0f64;
        for k in 0..20 {
            let lambda = Complex64::from_polar(0.8, 0.3 * k as f64);
            let v1 = f1.eval_origin_at(lambda).unwrap().get(0, 0);
            let v2 = f2.eval_origin_at(lambda).unwrap().get(0, 0);
            best_gap = best_gap.max((v1 - v2).norm());
        }
        assert!(
            best_gap > 1e-6,
            "solutions indistinguishable: gap {best_gap}"
        );
    }

    #[test]
    fn random_constant_problems_have_small_identity_residuals() {
        let mut state = 777u64;
        let mut done = 0;
        while done < 10 {
            let n = 1 + (splitmix(&mut state).abs() * 3.0) as usize;
            let points: Vec<RingElement> = (0..n)
                .map(|_| RingElement::constant(ctx(), random_complex(&mut state, 0.6)))
                .collect();
            let targets: Vec<RingElement> = (0..n)
                .map(|_| RingElement::constant(ctx(), random_complex(&mut state, 0.4)))
                .collect();
            let Ok(prob) = InterpolationProblem::new(points, targets) else {
                continue;
            };
            let Ok(theta) = prob.build_theta() else {
                continue;
            };
            let residual = theta_identity_residual(&prob, &theta, 4).unwrap();
            assert!(residual < 1e-9, "residual {residual}");
            done += 1;
        }
    }
}
