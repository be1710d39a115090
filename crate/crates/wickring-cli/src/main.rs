//! Command-line workbench: solve and verify interpolation problems, print
//! norms and the level-gap constant, evaluate rational files at ring points,
//! project serialized objects, and generate fixtures.
//!
//! Exit codes: 0 success, 1 the requested check or evaluation failed
//! mathematically (verification gates, evaluation at a pole), 2 unusable
//! input (parse errors, invalid data, divergent constant), 3 unsolvable
//! problem (the Pick matrix constant part is not positive definite).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wickring::serial::{
    element_from_file, element_to_data, matrix_to_file, parameter_echo, problem_from_file,
    rational_from_file, rational_to_file, realization_from_file, ElementFile, MatrixFile,
    ParameterData, ParsedProblem, ProblemFile, RationalFile, RealizationFile, ReportFile,
};
use wickring::{
    lft_apply, verify_solution, Error, RingElement, RingRational, SchurParameter,
    TruncationContext, VerifyOptions, C64,
};

#[derive(Parser)]
#[command(
    name = "wickring",
    version,
    about = "Workbench for truncated Wick-product power series and ring-valued Nevanlinna-Pick interpolation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an interpolation problem and verify the solution
    Solve {
        /// Problem file (JSON)
        problem: PathBuf,
        /// Parameter file overriding the problem's embedded parameter
        #[arg(long)]
        parameter: Option<PathBuf>,
        /// Write the report here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the solution as a rational file
        #[arg(long)]
        solution_out: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Verify an externally supplied candidate solution
    Verify {
        problem: PathBuf,
        /// Candidate rational file
        candidate: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Print the level-gap constant A(q), defined for q > 1
    Const { q: f64 },
    /// Print the dual-scale and test-scale norms of a serialized element
    Norm {
        element: PathBuf,
        /// Norm level
        #[arg(short, long, default_value_t = 4)]
        k: u32,
    },
    /// Evaluate a rational (or realization) file at a serialized ring point
    Eval {
        /// Rational or realization file
        function: PathBuf,
        /// Element file with the ring point
        point: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the constant-part projection of any serialized object
    Project {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a random problem fixture
    Gen {
        /// Generator seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of interpolation nodes
        #[arg(long, default_value_t = 2)]
        points: usize,
        /// Truncation context as m,d
        #[arg(long, default_value = "3,4")]
        context: String,
        /// Produce a problem whose Pick matrix is indefinite
        #[arg(long)]
        unsolvable: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Tolerance and sampling flags shared by solve and verify.
#[derive(Args)]
struct Tuning {
    /// Dual-norm level for residual reporting
    #[arg(long)]
    k_report: Option<u32>,
    /// Residual gate
    #[arg(long)]
    tol: Option<f64>,
    /// Boundary grid size for the contractivity check
    #[arg(long)]
    grid: Option<usize>,
    /// Contour-oracle node count; 0 disables the cross-check
    #[arg(long)]
    nodes: Option<usize>,
}

impl Tuning {
    fn apply(&self, opts: &mut VerifyOptions) {
        if let Some(k) = self.k_report {
            opts.k_report = k.max(1);
        }
        if let Some(t) = self.tol {
            opts.residual_tol = t;
        }
        if let Some(g) = self.grid {
            opts.grid = g.max(8);
        }
        match self.nodes {
            Some(0) => opts.contour_nodes = None,
            Some(n) => opts.contour_nodes = Some(n),
            None => {}
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Unsolvable { .. } => 3,
            Error::InvalidData(_)
            | Error::InvalidProblem(_)
            | Error::DivergentWeightSum { .. }
            | Error::NotSchur { .. } => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve {
            problem,
            parameter,
            output,
            solution_out,
            tuning,
        } => cmd_solve(
            &problem,
            parameter.as_deref(),
            output.as_deref(),
            solution_out.as_deref(),
            &tuning,
        ),
        Command::Verify {
            problem,
            candidate,
            output,
            tuning,
        } => cmd_verify(&problem, &candidate, output.as_deref(), &tuning),
        Command::Const { q } => cmd_const(q),
        Command::Norm { element, k } => cmd_norm(&element, k),
        Command::Eval {
            function,
            point,
            output,
        } => cmd_eval(&function, &point, output.as_deref()),
        Command::Project { input, output } => cmd_project(&input, output.as_deref()),
        Command::Gen {
            seed,
            points,
            context,
            unsolvable,
            output,
        } => cmd_gen(seed, points, &context, unsolvable, output.as_deref()),
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8], what: &str) -> Result<T, Failure> {
    serde_json::from_slice(bytes).map_err(|e| Failure::new(2, format!("cannot parse {what}: {e}")))
}

/// Reports are written whole: to a temp file first, then renamed into place.
fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, text)
                .and_then(|_| fs::rename(&tmp, path))
                .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn load_problem(path: &Path, tuning: &Tuning) -> Result<(ParsedProblem, u64), Failure> {
    let bytes = read_bytes(path)?;
    let file: ProblemFile = parse_json(&bytes, "problem file")?;
    let mut parsed = problem_from_file(&file)?;
    tuning.apply(&mut parsed.options);
    Ok((parsed, fnv1a64(&bytes)))
}

fn report_text(
    report: &wickring::SolutionReport,
    ctx: TruncationContext,
    digest: u64,
) -> Result<String, Failure> {
    let file = ReportFile::new(
        report,
        ctx,
        env!("CARGO_PKG_VERSION"),
        &format!("{digest:016x}"),
    );
    let mut text = serde_json::to_string_pretty(&file)
        .map_err(|e| Failure::new(2, format!("cannot serialize report: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn cmd_solve(
    problem_path: &Path,
    parameter_path: Option<&Path>,
    output: Option<&Path>,
    solution_out: Option<&Path>,
    tuning: &Tuning,
) -> Result<u8, Failure> {
    let (parsed, mut digest) = load_problem(problem_path, tuning)?;
    let ctx = parsed.problem.context();
    let parameter = match parameter_path {
        Some(path) => {
            let bytes = read_bytes(path)?;
            digest ^= fnv1a64(&bytes).rotate_left(17);
            let data: ParameterData = parse_json(&bytes, "parameter file")?;
            if data.lambda_coeffs.is_empty() {
                return Err(Failure::new(2, "parameter needs at least one coefficient"));
            }
            let coeffs = data
                .lambda_coeffs
                .iter()
                .map(|e| wickring::serial::element_from_data(ctx, e))
                .collect::<Result<Vec<_>, _>>()?;
            Some(SchurParameter::new(wickring::ScalarPoly::new(ctx, coeffs))?)
        }
        None => parsed.parameter,
    };
    let theta = parsed.problem.build_theta()?;
    let echo = parameter_echo(parameter.as_ref());
    let used = parameter.unwrap_or_else(|| SchurParameter::zero(ctx));
    let (_, _, f) = lft_apply(&theta, &used)?;
    let mut report = verify_solution(&parsed.problem, &f, &parsed.options)?;
    report.parameter_echo = Some(echo);
    write_output(output, &report_text(&report, ctx, digest)?)?;
    if let Some(path) = solution_out {
        let text = serde_json::to_string_pretty(&rational_to_file(&f))
            .map_err(|e| Failure::new(2, format!("cannot serialize solution: {e}")))?;
        write_output(Some(path), &(text + "\n"))?;
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_verify(
    problem_path: &Path,
    candidate_path: &Path,
    output: Option<&Path>,
    tuning: &Tuning,
) -> Result<u8, Failure> {
    let (parsed, mut digest) = load_problem(problem_path, tuning)?;
    let ctx = parsed.problem.context();
    let bytes = read_bytes(candidate_path)?;
    digest ^= fnv1a64(&bytes).rotate_left(31);
    let file: RationalFile = parse_json(&bytes, "candidate file")?;
    let candidate = rational_from_file(&file)?;
    if candidate.context() != ctx {
        return Err(Failure::new(
            2,
            "candidate context differs from the problem context",
        ));
    }
    if candidate.rows() != 1 || candidate.cols() != 1 {
        return Err(Failure::new(2, "candidate solutions are scalar valued"));
    }
    let mut report = match verify_solution(&parsed.problem, &candidate, &parsed.options) {
        Ok(report) => report,
        // evaluation failure at a node means the candidate is no solution
        Err(Error::PoleAtPoint {
            denominator_modulus,
        }) => {
            return Err(Failure::new(
                1,
                format!(
                    "candidate rejected: its projected denominator nearly vanishes at a node \
                     (modulus {denominator_modulus:.3e})"
                ),
            ));
        }
        Err(other) => return Err(other.into()),
    };
    report.parameter_echo = Some("external candidate".into());
    write_output(output, &report_text(&report, ctx, digest)?)?;
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_const(q: f64) -> Result<u8, Failure> {
    let value = wickring::vage_constant(q)?;
    println!("A({q}) = {value:.11e}");
    Ok(0)
}

fn cmd_norm(element_path: &Path, k: u32) -> Result<u8, Failure> {
    if k < 1 {
        return Err(Failure::new(2, "norm levels start at 1"));
    }
    let bytes = read_bytes(element_path)?;
    let file: ElementFile = parse_json(&bytes, "element file")?;
    let element = element_from_file(&file)?;
    println!("dual_norm(k={k}) = {:.11e}", element.dual_norm(k));
    println!("test_norm(k={k}) = {:.11e}", element.test_norm(k));
    Ok(0)
}

fn cmd_eval(function_path: &Path, point_path: &Path, output: Option<&Path>) -> Result<u8, Failure> {
    let fn_bytes = read_bytes(function_path)?;
    let rational: RingRational = if let Ok(file) = serde_json::from_slice::<RationalFile>(&fn_bytes)
    {
        rational_from_file(&file)?
    } else if let Ok(file) = serde_json::from_slice::<RealizationFile>(&fn_bytes) {
        realization_from_file(&file)?.to_rational()?
    } else {
        return Err(Failure::new(
            2,
            "function file is neither a rational nor a realization",
        ));
    };
    let point_bytes = read_bytes(point_path)?;
    let point_file: ElementFile = parse_json(&point_bytes, "point file")?;
    let point = element_from_file(&point_file)?;
    if point.context() != rational.context() {
        return Err(Failure::new(
            2,
            "point context differs from the function context",
        ));
    }
    let value = rational.eval_ring(&point)?;
    let text = serde_json::to_string_pretty(&matrix_to_file(&value))
        .map_err(|e| Failure::new(2, format!("cannot serialize value: {e}")))?;
    write_output(output, &(text + "\n"))?;
    Ok(0)
}

fn cmd_project(input_path: &Path, output: Option<&Path>) -> Result<u8, Failure> {
    let bytes = read_bytes(input_path)?;
    let pair = |v: C64| serde_json::json!([v.re, v.im]);
    let value = if let Ok(file) = serde_json::from_slice::<ProblemFile>(&bytes) {
        let parsed = problem_from_file(&file)?;
        serde_json::json!({
            "kind": "problem",
            "points": parsed.problem.points().iter().map(|e| pair(e.eval_origin())).collect::<Vec<_>>(),
            "targets": parsed.problem.targets().iter().map(|e| pair(e.eval_origin())).collect::<Vec<_>>(),
        })
    } else if let Ok(file) = serde_json::from_slice::<RationalFile>(&bytes) {
        let rational = rational_from_file(&file)?;
        let num: Vec<serde_json::Value> = rational
            .num()
            .coeffs()
            .iter()
            .map(|m| {
                let rows: Vec<Vec<serde_json::Value>> = (0..m.rows())
                    .map(|i| {
                        (0..m.cols())
                            .map(|j| pair(m.at(i, j).eval_origin()))
                            .collect()
                    })
                    .collect();
                serde_json::json!(rows)
            })
            .collect();
        let den: Vec<serde_json::Value> = rational
            .den()
            .coeffs()
            .iter()
            .map(|e| pair(e.eval_origin()))
            .collect();
        serde_json::json!({ "kind": "rational", "num": num, "den": den })
    } else if let Ok(file) = serde_json::from_slice::<RealizationFile>(&bytes) {
        let real = realization_from_file(&file)?;
        let mat = |m: &wickring::RingMatrix| {
            let rows: Vec<Vec<serde_json::Value>> = (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| pair(m.at(i, j).eval_origin()))
                        .collect()
                })
                .collect();
            serde_json::json!(rows)
        };
        serde_json::json!({
            "kind": "realization",
            "a": mat(real.a()),
            "b": mat(real.b()),
            "c": mat(real.c()),
            "d": mat(real.d()),
        })
    } else if let Ok(file) = serde_json::from_slice::<MatrixFile>(&bytes) {
        let matrix = wickring::serial::matrix_from_file(&file)?;
        let rows: Vec<Vec<serde_json::Value>> = (0..matrix.rows())
            .map(|i| {
                (0..matrix.cols())
                    .map(|j| pair(matrix.at(i, j).eval_origin()))
                    .collect()
            })
            .collect();
        serde_json::json!({ "kind": "matrix", "values": rows })
    } else if let Ok(file) = serde_json::from_slice::<ElementFile>(&bytes) {
        let element = element_from_file(&file)?;
        serde_json::json!({ "kind": "element", "value": pair(element.eval_origin()) })
    } else {
        return Err(Failure::new(2, "input matches no known serialized object"));
    };
    let text = serde_json::to_string_pretty(&value)
        .map_err(|e| Failure::new(2, format!("cannot serialize projection: {e}")))?;
    write_output(output, &(text + "\n"))?;
    Ok(0)
}

// ---- fixture generation ----

struct SplitMix(u64);

impl SplitMix {
    fn unit(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }

    fn complex(&mut self, scale: f64) -> C64 {
        C64::new(self.unit() * scale, self.unit() * scale)
    }
}

fn cmd_gen(
    seed: u64,
    points: usize,
    context: &str,
    unsolvable: bool,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    let (m, d) = context
        .split_once(',')
        .and_then(|(m, d)| Some((m.trim().parse::<u32>().ok()?, d.trim().parse::<u32>().ok()?)))
        .ok_or_else(|| Failure::new(2, "context must look like m,d"))?;
    if points == 0 {
        return Err(Failure::new(2, "at least one node is required"));
    }
    if unsolvable && points < 2 {
        return Err(Failure::new(
            2,
            "an indefinite Pick matrix needs at least two nodes",
        ));
    }
    let ctx = TruncationContext::new(m, d);
    let mut rng = SplitMix(seed);
    let mut centers: Vec<C64> = Vec::with_capacity(points);
    while centers.len() < points {
        let candidate = rng.complex(0.55);
        if candidate.norm() < 0.55 && centers.iter().all(|c| (c - candidate).norm() > 0.2) {
            centers.push(candidate);
        }
    }
    let noise = |rng: &mut SplitMix| {
        RingElement::from_terms(
            ctx,
            ctx.enumerate().into_iter().filter_map(|idx| {
                if idx.is_empty() || rng.unit() > 0.3 {
                    None
                } else {
                    Some((idx, rng.complex(0.15)))
                }
            }),
        )
    };
    let c0 = rng.complex(0.2);
    let c1 = rng.complex(0.3);
    let points_data: Vec<_> = centers
        .iter()
        .map(|&a| element_to_data(&(&RingElement::constant(ctx, a) + &noise(&mut rng))))
        .collect();
    let targets_data: Vec<_> = centers
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let center = if unsolvable {
                // targets of modulus close to one with alternating signs
                // push the Pick matrix indefinite
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                C64::new(0.96 * sign, 0.0)
            } else {
                c0 + c1 * a
            };
            element_to_data(&(&RingElement::constant(ctx, center) + &noise(&mut rng)))
        })
        .collect();
    let file = ProblemFile {
        context: ctx.into(),
        points: points_data,
        targets: targets_data,
        parameter: None,
        options: None,
    };
    let text = serde_json::to_string_pretty(&file)
        .map_err(|e| Failure::new(2, format!("cannot serialize problem: {e}")))?;
    write_output(output, &(text + "\n"))?;
    Ok(0)
}
