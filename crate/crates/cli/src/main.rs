mod output;

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyfourier::curves::{ComplexCircle, ParametricCurve};
use polyfourier::experiments::{
    self, curve_check, dominance_experiment, pompeiu_demo, unit_square, y_grid, DemoConfig, LabeledScan, ScanSummary, SCAN_FLOOR,
};
use polyfourier::io::{parse_complex_list, parse_curve, parse_real, parse_region};
use polyfourier::planar::{polygon_directional_derivative, polygon_directional_derivative_allow_parallel, segment_measure_transform, vertex_polynomial_sum};
use polyfourier::transform::{bb_transform, bb_transform_continued, quadrature_transform, TransformError};
use polyfourier::{Complex64, ComplexVector, PolytopalRegion, VertexConeDecomposition};
use serde::Serialize;

const DEFAULT_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "polyfourier", version, about = "Fourier–Laplace transforms of polytopal regions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform evaluation.
    Transform {
        #[command(subcommand)]
        command: TransformCommand,
    },
    /// Scans over complex circles.
    Circle {
        #[command(subcommand)]
        command: CircleCommand,
    },
    /// Dominant-term growth along a vertical line of a circle parameter.
    Dominance(DominanceArgs),
    /// Minimum-modulus scan of the transform restricted to a curve.
    Scan(ScanArgs),
    /// Planar reductions.
    Planar {
        #[command(subcommand)]
        command: PlanarCommand,
    },
    /// Curve classification.
    Curve {
        #[command(subcommand)]
        command: CurveCommand,
    },
    /// Disk versus polygon on the disk's vanishing circle.
    PompeiuDemo(DemoArgs),
}

#[derive(Subcommand)]
enum TransformCommand {
    /// Evaluate the transform at one complex frequency.
    Eval(EvalArgs),
}

#[derive(Subcommand)]
enum CircleCommand {
    /// Scan the real slice of a circle.
    Scan(CircleScanArgs),
}

#[derive(Subcommand)]
enum PlanarCommand {
    /// Directional derivative as a segment measure and its vertex polynomials.
    Reduce(ReduceArgs),
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Classify a curve and scan the region's transform along it.
    Check(CurveCheckArgs),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    region: PathBuf,
    /// Frequency as `re,im;re,im;…`.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Also evaluate by quadrature and report the residual.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct CircleScanArgs {
    #[arg(long)]
    region: PathBuf,
    #[arg(long)]
    circle: PathBuf,
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DominanceArgs {
    #[arg(long)]
    region: PathBuf,
    #[arg(long)]
    circle: PathBuf,
    #[arg(long, default_value_t = 4.0)]
    ymax: f64,
    #[arg(long, default_value_t = 15)]
    grid: usize,
    /// Seed for the rotation used when no vertex dominates.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    region: PathBuf,
    #[arg(long)]
    curve: PathBuf,
    #[arg(long, default_value_t = 2048)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    region: PathBuf,
    /// Direction as `dx,dy`.
    #[arg(long, allow_hyphen_values = true)]
    direction: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurveCheckArgs {
    #[arg(long)]
    region: PathBuf,
    #[arg(long)]
    curve: PathBuf,
    #[arg(long, default_value_t = 2048)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    /// Planar region; defaults to the unit square.
    #[arg(long)]
    region: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Points on the real circle.
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Why a run did not complete.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_region(path: &Path) -> Result<PolytopalRegion, Failure> {
    parse_region(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_curve(path: &Path) -> Result<ParametricCurve, Failure> {
    parse_curve(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_circle(path: &Path) -> Result<ComplexCircle, Failure> {
    load_curve(path)?
        .circle()
        .cloned()
        .ok_or_else(|| Failure(format!("{}: not a circle", path.display())))
}

fn global_tol() -> Result<f64, Failure> {
    match std::env::var("POLYFOURIER_TOL") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t < 1.0 => Ok(t),
            _ => Err(Failure(format!("POLYFOURIER_TOL must be a number in (0, 1), got {s:?}"))),
        },
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn label(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

#[derive(Serialize)]
struct OracleReport {
    value: Complex64,
    quadrature_tolerance: f64,
    /// `|F_bb - F_quad| / (1 + |F_quad|)`.
    residual: f64,
    threshold: f64,
    passed: bool,
}

#[derive(Serialize)]
struct EvalReport {
    z: Vec<Complex64>,
    value: Complex64,
    modulus: f64,
    min_denominator_factor: f64,
    /// `vertex_cones`, or `circle_mean` near a singular hyperplane.
    method: &'static str,
    oracle: Option<OracleReport>,
}

fn transform_eval(args: &EvalArgs, tol: f64) -> Outcome {
    let region = load_region(&args.region)?;
    let z = parse_complex_list(&args.z)?;
    if z.len() != region.dim() {
        return Err(Failure(format!("z has {} entries, region has dimension {}", z.len(), region.dim())));
    }
    let dec = VertexConeDecomposition::new(&region)?;
    let (value, factor, method) = match bb_transform(&dec, &z) {
        Ok(r) => (r.value, r.min_denominator_factor, "vertex_cones"),
        Err(TransformError::NearSingular { .. }) => {
            (bb_transform_continued(&dec, &z)?, polyfourier::transform::min_denominator_factor(&dec, &z), "circle_mean")
        }
        Err(e) => return Err(e.into()),
    };
    let oracle = if args.oracle {
        let quadrature_tolerance = tol / 10.0;
        let q = quadrature_transform(&region, &z, quadrature_tolerance)?;
        let residual = (value - q).norm() / (1.0 + q.norm());
        let threshold = 1e3 * tol;
        Some(OracleReport { value: q, quadrature_tolerance, residual, threshold, passed: residual <= threshold })
    } else {
        None
    };
    let passed = oracle.as_ref().is_none_or(|o| o.passed);
    let report = EvalReport { z: z.iter().copied().collect(), value, modulus: value.norm(), min_denominator_factor: factor, method, oracle };
    output::emit(None, &output::to_json(&report), None)?;
    Ok(passed)
}

#[derive(Serialize)]
struct ScanReport<'a> {
    region: String,
    curve: &'a ParametricCurve,
    scan: ScanSummary,
    floor: f64,
    passed: bool,
}

fn run_scan(region_path: &Path, curve: &ParametricCurve, grid: usize, out: Option<&Path>) -> Outcome {
    let region = load_region(region_path)?;
    let scan = experiments::curve_scan(&region, curve, grid)?;
    let summary = ScanSummary::new("scan", &scan);
    let passed = summary.min_modulus >= SCAN_FLOOR;
    let report = ScanReport { region: label(region_path), curve, scan: summary.clone(), floor: SCAN_FLOOR, passed };
    let trace = output::scan_csv(&[LabeledScan { summary, scan }]);
    output::emit(out, &output::to_json(&report), Some(&trace))?;
    Ok(passed)
}

#[derive(Serialize)]
struct DominanceCliReport {
    region: String,
    circle: ComplexCircle,
    y_max: f64,
    seed: u64,
    #[serde(flatten)]
    experiment: experiments::DominanceExperiment,
}

fn dominance(args: &DominanceArgs) -> Outcome {
    if !args.ymax.is_finite() || args.ymax <= 0.0 || args.grid < 2 {
        return Err(Failure("need --ymax > 0 and --grid >= 2".into()));
    }
    let region = load_region(&args.region)?;
    let circle = load_circle(&args.circle)?;
    let experiment = dominance_experiment(&region, &circle, &y_grid(args.ymax, args.grid), args.seed)?;
    let passed = experiment.report.passed;
    let trace = output::ratio_csv(&experiment.report.ratio_trace);
    let report = DominanceCliReport { region: label(&args.region), circle, y_max: args.ymax, seed: args.seed, experiment };
    output::emit(args.out.as_deref(), &output::to_json(&report), Some(&trace))?;
    Ok(passed)
}

#[derive(Serialize)]
struct ReduceReport {
    region: String,
    direction: [f64; 2],
    /// Edges parallel to the direction carry no mass and are left out.
    parallel_edges_omitted: bool,
    measure: polyfourier::planar::SegmentMeasure,
    vertex_polynomials: polyfourier::planar::VertexPolynomialSum,
    /// Largest `|μ̂(x) - 2πi (u·x) F(x)|` over the probe points.
    identity_residual: f64,
    threshold: f64,
    passed: bool,
}

/// Fixed probe frequencies for the derivative identity.
const PROBES: [[f64; 2]; 6] = [[0.37, -1.21], [1.73, 0.59], [-0.83, 1.91], [2.47, -1.13], [-1.61, -0.29], [0.11, 2.83]];

fn planar_reduce(args: &ReduceArgs) -> Outcome {
    let region = load_region(&args.region)?;
    let parts = args.direction.split(',').map(parse_real).collect::<Result<Vec<_>, _>>()?;
    let u = match parts[..] {
        [dx, dy] => [dx, dy],
        _ => return Err(Failure(format!("direction must be `dx,dy`, got {:?}", args.direction))),
    };
    let mu = polygon_directional_derivative_allow_parallel(&region, u)?;
    let parallel_edges_omitted = polygon_directional_derivative(&region, u).is_err();
    let dec = VertexConeDecomposition::new(&region)?;
    let norm = u[0].hypot(u[1]);
    let mut identity_residual: f64 = 0.0;
    for x in PROBES {
        let xc = ComplexVector::from_vec(vec![Complex64::new(x[0], 0.0), Complex64::new(x[1], 0.0)]);
        let ux = (u[0] * x[0] + u[1] * x[1]) / norm;
        let rhs = Complex64::new(0.0, 2.0 * PI * ux) * bb_transform(&dec, &xc)?.value;
        identity_residual = identity_residual.max((segment_measure_transform(&mu, &xc) - rhs).norm());
    }
    let threshold = 1e-8;
    let passed = identity_residual <= threshold;
    let report = ReduceReport {
        region: label(&args.region),
        direction: u,
        parallel_edges_omitted,
        vertex_polynomials: vertex_polynomial_sum(&mu),
        measure: mu,
        identity_residual,
        threshold,
        passed,
    };
    output::emit(args.out.as_deref(), &output::to_json(&report), None)?;
    Ok(passed)
}

#[derive(Serialize)]
struct CurveCheckCliReport {
    region: String,
    rank_threshold: f64,
    #[serde(flatten)]
    report: experiments::CurveCheckReport,
}

fn curve_check_cmd(args: &CurveCheckArgs, tol: f64) -> Outcome {
    let region = load_region(&args.region)?;
    let curve = load_curve(&args.curve)?;
    let (report, scan) = curve_check(&region, &curve, args.grid, tol)?;
    let passed = report.passed;
    let trace = output::scan_csv(&[LabeledScan { summary: report.scan.clone(), scan }]);
    let report = CurveCheckCliReport { region: label(&args.region), rank_threshold: tol, report };
    output::emit(args.out.as_deref(), &output::to_json(&report), Some(&trace))?;
    Ok(passed)
}

fn demo(args: &DemoArgs) -> Outcome {
    let (region, name) = match &args.region {
        Some(p) => (load_region(p)?, label(p)),
        None => (unit_square(), "unit_square".to_string()),
    };
    let cfg = DemoConfig { seed: args.seed, real_points: args.grid, ..DemoConfig::default() };
    let (report, scans) = pompeiu_demo(&region, &name, &cfg)?;
    output::emit(args.out.as_deref(), &output::to_json(&report), Some(&output::scan_csv(&scans)))?;
    Ok(report.passed)
}

fn run(cli: Cli) -> Outcome {
    let tol = global_tol()?;
    match cli.command {
        Command::Transform { command: TransformCommand::Eval(a) } => transform_eval(&a, tol),
        Command::Circle { command: CircleCommand::Scan(a) } => {
            let circle = ParametricCurve::trig_circle(load_circle(&a.circle)?);
            run_scan(&a.region, &circle, a.grid, a.out.as_deref())
        }
        Command::Dominance(a) => dominance(&a),
        Command::Scan(a) => run_scan(&a.region, &load_curve(&a.curve)?, a.grid, a.out.as_deref()),
        Command::Planar { command: PlanarCommand::Reduce(a) } => planar_reduce(&a),
        Command::Curve { command: CurveCommand::Check(a) } => curve_check_cmd(&a, tol),
        Command::PompeiuDemo(a) => demo(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_error = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage_error { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("polyfourier: check failed");
            ExitCode::from(2)
        }
        Err(Failure(msg)) => {
            eprintln!("polyfourier: {msg}");
            ExitCode::from(1)
        }
    }
}
