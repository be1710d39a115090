//! Text serialization of ring objects.
//!
//! Formats are plain data structures with serde derives, designed to be
//! human-writable and diffable:
//!
//! * an element is a list of records `{index: [[var, exp], ...], re, im}`;
//!   a standalone element file adds the context as `{m, d, coeffs: [...]}`;
//! * a matrix is `{rows, cols, entries: [element, ...]}` row-major;
//! * a rational pair is `{context, num: [matrix, ...], den: [element, ...]}`
//!   listing lambda coefficients in increasing order;
//! * a realization is `{context, a, b, c, d}`;
//! * an interpolation problem is `{context, points, targets, parameter?,
//!   options?}`.
//!
//! Unknown fields are rejected everywhere. Conversions into domain types
//! validate contexts and admissibility and report `Error::InvalidData`.

use serde::{Deserialize, Serialize};

use crate::consts::{DEFAULT_NODES, EPS_SCHUR};
use crate::context::TruncationContext;
use crate::element::RingElement;
use crate::error::Error;
use crate::index::MultiIndex;
use crate::interpolation::{InterpolationProblem, SchurParameter, SolutionReport, VerifyOptions};
use crate::matrix::RingMatrix;
use crate::poly::{MatrixPoly, ScalarPoly};
use crate::rational::RingRational;
use crate::realization::Realization;

pub type C64 = num_complex::Complex64;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ContextData {
    pub m: u32,
    pub d: u32,
}

impl From<TruncationContext> for ContextData {
    fn from(ctx: TruncationContext) -> Self {
        ContextData {
            m: ctx.num_vars(),
            d: ctx.degree_cap(),
        }
    }
}

impl From<ContextData> for TruncationContext {
    fn from(data: ContextData) -> Self {
        TruncationContext::new(data.m, data.d)
    }
}

/// One monomial coefficient.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoeffData {
    pub index: Vec<(u32, u32)>,
    pub re: f64,
    pub im: f64,
}

/// A serialized element: its list of coefficients.
pub type ElementData = Vec<CoeffData>;

/// A standalone element file carries its context.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub m: u32,
    pub d: u32,
    pub coeffs: ElementData,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixData {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ElementData>,
}

/// A standalone matrix file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub context: ContextData,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ElementData>,
}

/// Rational pair: lambda coefficients of the matrix numerator and the
/// scalar denominator, lowest degree first.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RationalFile {
    pub context: ContextData,
    pub num: Vec<MatrixData>,
    pub den: Vec<ElementData>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RealizationFile {
    pub context: ContextData,
    pub a: MatrixData,
    pub b: MatrixData,
    pub c: MatrixData,
    pub d: MatrixData,
}

/// A parameter is a scalar polynomial in lambda, listed by coefficients.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ParameterData {
    pub lambda_coeffs: Vec<ElementData>,
}

/// Optional knobs of a problem file; unset fields take library defaults.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OptionsData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_report: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
}

impl OptionsData {
    /// Defaults overloaded by whatever the file sets; `nodes = 0` disables
    /// the contour cross-check.
    pub fn to_options(&self) -> VerifyOptions {
        let mut opts = VerifyOptions::default();
        if let Some(k) = self.k_report {
            opts.k_report = k.max(1);
        }
        if let Some(t) = self.residual_tol {
            opts.residual_tol = t;
        }
        if let Some(g) = self.grid {
            opts.grid = g.max(8);
        }
        if let Some(r) = self.grid_radius {
            opts.grid_radius = r;
        }
        match self.nodes {
            Some(0) => opts.contour_nodes = None,
            Some(n) => opts.contour_nodes = Some(n),
            None => opts.contour_nodes = Some(DEFAULT_NODES),
        }
        opts
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub context: ContextData,
    pub points: Vec<ElementData>,
    pub targets: Vec<ElementData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<ParameterData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsData>,
}

/// Flat verification record: metadata first, then measurements, then gates.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub tool_version: String,
    pub input_digest: String,
    pub context: ContextData,
    pub n_points: usize,
    pub k_report: u32,
    pub residual_tol: f64,
    pub parameter: String,
    pub point_residuals: Vec<f64>,
    pub homogeneous_residuals: Vec<f64>,
    pub max_point_residual: f64,
    pub max_homogeneous_residual: f64,
    pub contour_deviations: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_contour_deviation: Option<f64>,
    pub schur_max_modulus: f64,
    pub schur_margin: f64,
    pub den_min_modulus: f64,
    pub pick_eigenvalues: Vec<f64>,
    pub pick_min_eigenvalue: f64,
    pub residual_pass: bool,
    pub schur_pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contour_pass: Option<bool>,
    pub pass: bool,
}

impl ReportFile {
    pub fn new(
        report: &SolutionReport,
        ctx: TruncationContext,
        tool_version: &str,
        input_digest: &str,
    ) -> Self {
        ReportFile {
            tool_version: tool_version.to_string(),
            input_digest: input_digest.to_string(),
            context: ctx.into(),
            n_points: report.n_points,
            k_report: report.k_report,
            residual_tol: report.residual_tol,
            parameter: report
                .parameter_echo
                .clone()
                .unwrap_or_else(|| "unspecified".into()),
            point_residuals: report.point_residuals.clone(),
            homogeneous_residuals: report.homogeneous_residuals.clone(),
            max_point_residual: report.max_point_residual,
            max_homogeneous_residual: report.max_homogeneous_residual,
            contour_deviations: report.contour_deviations.clone(),
            max_contour_deviation: report.max_contour_deviation,
            schur_max_modulus: report.schur_max_modulus,
            schur_margin: report.schur_margin,
            den_min_modulus: report.den_min_modulus,
            pick_eigenvalues: report.pick_eigenvalues.clone(),
            pick_min_eigenvalue: report.pick_min_eigenvalue,
            residual_pass: report.residual_pass,
            schur_pass: report.schur_pass,
            contour_pass: report.contour_pass,
            pass: report.pass,
        }
    }
}

// ---- element conversions ----

pub fn element_to_data(e: &RingElement) -> ElementData {
    e.terms()
        .map(|(index, value)| CoeffData {
            index: index.entries().to_vec(),
            re: value.re,
            im: value.im,
        })
        .collect()
}

/// Rebuilds an element, summing duplicate indices and dropping zero
/// exponents; fails on variable index 0 or indices outside the context.
pub fn element_from_data(ctx: TruncationContext, data: &ElementData) -> Result<RingElement, Error> {
    let mut terms = Vec::with_capacity(data.len());
    for record in data {
        if record.index.iter().any(|&(var, _)| var == 0) {
            return Err(Error::InvalidData("variable indices start at 1".into()));
        }
        let index = MultiIndex::from_pairs(record.index.iter().copied());
        if !ctx.admits(&index) {
            return Err(Error::InvalidData(format!(
                "index {index} not admitted by context (m={}, d={})",
                ctx.num_vars(),
                ctx.degree_cap()
            )));
        }
        terms.push((index, C64::new(record.re, record.im)));
    }
    Ok(RingElement::from_terms(ctx, terms))
}

pub fn element_to_file(e: &RingElement) -> ElementFile {
    let ctx = e.context();
    ElementFile {
        m: ctx.num_vars(),
        d: ctx.degree_cap(),
        coeffs: element_to_data(e),
    }
}

pub fn element_from_file(file: &ElementFile) -> Result<RingElement, Error> {
    element_from_data(TruncationContext::new(file.m, file.d), &file.coeffs)
}

// ---- matrix conversions ----

pub fn matrix_to_data(m: &RingMatrix) -> MatrixData {
    MatrixData {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.entries().iter().map(element_to_data).collect(),
    }
}

pub fn matrix_from_data(ctx: TruncationContext, data: &MatrixData) -> Result<RingMatrix, Error> {
    if data.rows == 0 || data.cols == 0 {
        return Err(Error::InvalidData(
            "matrix dimensions must be positive".into(),
        ));
    }
    if data.entries.len() != data.rows * data.cols {
        return Err(Error::InvalidData(format!(
            "{} entries for a {} x {} matrix",
            data.entries.len(),
            data.rows,
            data.cols
        )));
    }
    let entries = data
        .entries
        .iter()
        .map(|e| element_from_data(ctx, e))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RingMatrix::from_entries(data.rows, data.cols, entries))
}

pub fn matrix_to_file(m: &RingMatrix) -> MatrixFile {
    let data = matrix_to_data(m);
    MatrixFile {
        context: m.context().into(),
        rows: data.rows,
        cols: data.cols,
        entries: data.entries,
    }
}

pub fn matrix_from_file(file: &MatrixFile) -> Result<RingMatrix, Error> {
    let ctx: TruncationContext = file.context.clone().into();
    matrix_from_data(
        ctx,
        &MatrixData {
            rows: file.rows,
            cols: file.cols,
            entries: file.entries.clone(),
        },
    )
}

// ---- rational / realization conversions ----

pub fn rational_to_file(r: &RingRational) -> RationalFile {
    RationalFile {
        context: r.context().into(),
        num: r.num().coeffs().iter().map(matrix_to_data).collect(),
        den: r.den().coeffs().iter().map(element_to_data).collect(),
    }
}

pub fn rational_from_file(file: &RationalFile) -> Result<RingRational, Error> {
    let ctx: TruncationContext = file.context.clone().into();
    if file.num.is_empty() || file.den.is_empty() {
        return Err(Error::InvalidData(
            "num and den need at least one coefficient".into(),
        ));
    }
    let (rows, cols) = (file.num[0].rows, file.num[0].cols);
    if !file.num.iter().all(|m| m.rows == rows && m.cols == cols) {
        return Err(Error::InvalidData(
            "numerator coefficients differ in shape".into(),
        ));
    }
    let num_coeffs = file
        .num
        .iter()
        .map(|m| matrix_from_data(ctx, m))
        .collect::<Result<Vec<_>, _>>()?;
    let den_coeffs = file
        .den
        .iter()
        .map(|e| element_from_data(ctx, e))
        .collect::<Result<Vec<_>, _>>()?;
    RingRational::new(
        MatrixPoly::new(ctx, rows, cols, num_coeffs),
        ScalarPoly::new(ctx, den_coeffs),
    )
}

pub fn realization_to_file(r: &Realization) -> RealizationFile {
    RealizationFile {
        context: r.context().into(),
        a: matrix_to_data(r.a()),
        b: matrix_to_data(r.b()),
        c: matrix_to_data(r.c()),
        d: matrix_to_data(r.d()),
    }
}

pub fn realization_from_file(file: &RealizationFile) -> Result<Realization, Error> {
    let ctx: TruncationContext = file.context.clone().into();
    let a = matrix_from_data(ctx, &file.a)?;
    let b = matrix_from_data(ctx, &file.b)?;
    let c = matrix_from_data(ctx, &file.c)?;
    let d = matrix_from_data(ctx, &file.d)?;
    if a.rows() != a.cols()
        || b.rows() != a.rows()
        || c.cols() != a.rows()
        || d.rows() != c.rows()
        || d.cols() != b.cols()
    {
        return Err(Error::InvalidData("inconsistent state-space shapes".into()));
    }
    Ok(Realization::new(a, b, c, d))
}

// ---- problem conversions ----

pub struct ParsedProblem {
    pub problem: InterpolationProblem,
    pub parameter: Option<SchurParameter>,
    pub options: VerifyOptions,
}

pub fn problem_to_file(
    prob: &InterpolationProblem,
    parameter: Option<&SchurParameter>,
    options: Option<&OptionsData>,
) -> ProblemFile {
    ProblemFile {
        context: prob.context().into(),
        points: prob.points().iter().map(element_to_data).collect(),
        targets: prob.targets().iter().map(element_to_data).collect(),
        parameter: parameter.map(|p| ParameterData {
            lambda_coeffs: p.poly().coeffs().iter().map(element_to_data).collect(),
        }),
        options: options.cloned(),
    }
}

pub fn problem_from_file(file: &ProblemFile) -> Result<ParsedProblem, Error> {
    let ctx: TruncationContext = file.context.clone().into();
    let points = file
        .points
        .iter()
        .map(|e| element_from_data(ctx, e))
        .collect::<Result<Vec<_>, _>>()?;
    let targets = file
        .targets
        .iter()
        .map(|e| element_from_data(ctx, e))
        .collect::<Result<Vec<_>, _>>()?;
    let problem = InterpolationProblem::new(points, targets)?;
    let parameter = match &file.parameter {
        None => None,
        Some(p) => {
            if p.lambda_coeffs.is_empty() {
                return Err(Error::InvalidData(
                    "parameter needs at least one coefficient".into(),
                ));
            }
            let coeffs = p
                .lambda_coeffs
                .iter()
                .map(|e| element_from_data(ctx, e))
                .collect::<Result<Vec<_>, _>>()?;
            Some(SchurParameter::new(ScalarPoly::new(ctx, coeffs))?)
        }
    };
    let options = file.options.clone().unwrap_or_default().to_options();
    Ok(ParsedProblem {
        problem,
        parameter,
        options,
    })
}

/// Echo string for reports: the projected parameter in compact form.
pub fn parameter_echo(param: Option<&SchurParameter>) -> String {
    match param {
        None => "central (zero parameter)".into(),
        Some(p) => {
            let coeffs = p.poly().eval_origin_poly();
            let parts: Vec<String> = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| format!("lambda^{k}: {:+.6}{:+.6}i", c.re, c.im))
                .collect();
            format!(
                "polynomial of degree {} with projected coefficients [{}]; margin floor {}",
                p.poly().degree(),
                parts.join(", "),
                EPS_SCHUR
            )
        }
    }
}
