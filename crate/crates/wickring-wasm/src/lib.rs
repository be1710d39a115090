//! Browser bindings for the interpolation workbench: three interactive
//! operations behind `wasm_bindgen`, exchanging JSON strings and flat float
//! arrays so the page needs no extra glue.
//!
//! The functions also compile and run natively, which is how the tests in
//! this crate exercise them.

use wasm_bindgen::prelude::wasm_bindgen;

use wickring::serial::{problem_from_file, ProblemFile};
use wickring::{
    blaschke_factor, lft_apply, vage_constant, verify_solution, BlaschkeVariant, RingElement,
    RingRational, SchurParameter, TruncationContext, VerifyOptions, C64,
};

/// Half-width of the sampled square around the unit disk.
const VIEW: f64 = 1.05;

/// Sentinel written to grid cells outside the closed unit disk.
const OUTSIDE: f64 = -1.0;

fn grid_lambda(i: usize, j: usize, size: usize) -> C64 {
    let step = 2.0 * VIEW / size as f64;
    let re = -VIEW + (j as f64 + 0.5) * step;
    let im = VIEW - (i as f64 + 0.5) * step;
    C64::new(re, im)
}

fn modulus_field(f: &RingRational, size: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let lambda = grid_lambda(i, j, size);
            if lambda.norm() > 1.0 {
                out.push(OUTSIDE);
                continue;
            }
            match f.eval_origin_at(lambda) {
                Ok(m) => out.push(m.get(0, 0).norm()),
                Err(_) => out.push(f64::MAX),
            }
        }
    }
    out
}

/// Solves the interpolation problem given as a problem-file JSON string
/// (the same format the command-line tool reads) and returns a JSON string
/// with the verification summary, the modulus field of the projected
/// solution on a size x size grid over [-1.05, 1.05]^2, and the projected
/// nodes and targets for plotting.
#[wasm_bindgen]
pub fn solve_problem(problem_json: &str, size: usize) -> String {
    match solve_impl(problem_json, size.clamp(16, 512)) {
        Ok(value) => value.to_string(),
        Err(message) => serde_json::json!({ "ok": false, "error": message }).to_string(),
    }
}

fn solve_impl(problem_json: &str, size: usize) -> Result<serde_json::Value, String> {
    let file: ProblemFile = serde_json::from_str(problem_json).map_err(|e| e.to_string())?;
    let parsed = problem_from_file(&file).map_err(|e| e.to_string())?;
    let ctx = parsed.problem.context();
    let theta = parsed.problem.build_theta().map_err(|e| e.to_string())?;
    let param = parsed
        .parameter
        .unwrap_or_else(|| SchurParameter::zero(ctx));
    let (_, _, f) = lft_apply(&theta, &param).map_err(|e| e.to_string())?;
    let opts = VerifyOptions {
        contour_nodes: None,
        ..parsed.options
    };
    let report = verify_solution(&parsed.problem, &f, &opts).map_err(|e| e.to_string())?;
    let pair = |v: C64| serde_json::json!([v.re, v.im]);
    Ok(serde_json::json!({
        "ok": true,
        "pass": report.pass,
        "max_point_residual": report.max_point_residual,
        "max_homogeneous_residual": report.max_homogeneous_residual,
        "schur_max_modulus": report.schur_max_modulus,
        "pick_eigenvalues": report.pick_eigenvalues,
        "points": parsed.problem.points().iter().map(|e| pair(e.eval_origin())).collect::<Vec<_>>(),
        "targets": parsed.problem.targets().iter().map(|e| pair(e.eval_origin())).collect::<Vec<_>>(),
        "size": size,
        "field": modulus_field(&f, size),
    }))
}

/// Modulus field of the projected elementary factor attached to the ring
/// point r = re + i im + 0.25 z1 (the fixed perturbation makes the ring
/// coefficients visible in evaluations while keeping the projection simple).
/// `halfline` selects the second variant. Cells outside the closed disk hold
/// the sentinel -1.
#[wasm_bindgen]
pub fn blaschke_field(re: f64, im: f64, halfline: bool, size: usize) -> Vec<f64> {
    let size = size.clamp(16, 512);
    let ctx = TruncationContext::new(1, 2);
    let r = &RingElement::constant(ctx, C64::new(re, im))
        + &RingElement::variable(ctx, 1).scale(C64::new(0.25, 0.0));
    let variant = if halfline {
        BlaschkeVariant::Halfline
    } else {
        BlaschkeVariant::Disk
    };
    let f = blaschke_factor(&r, variant);
    modulus_field(&f, size)
}

/// Samples of the level-gap constant A(q) on a uniform grid from q_min to
/// q_max; values where the sum diverges (q <= 1) come back as -1.
#[wasm_bindgen]
pub fn vage_curve(q_min: f64, q_max: f64, count: usize) -> Vec<f64> {
    let count = count.clamp(2, 2048);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let q = q_min + (q_max - q_min) * k as f64 / (count - 1) as f64;
        out.push(vage_constant(q).unwrap_or(-1.0));
    }
    out
}
