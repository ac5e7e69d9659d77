//! Command-line front end: wires JSON files, seeds, and tolerances to the
//! library and emits machine-readable reports.
//!
//! Exit codes: 0 success/inside/pass, 1 outside/fail, 2 input error,
//! 3 internal invariant violation.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sepsimplex::approx_set::{approx_set, hull_membership, AlphaSpec, MemberMode};
use sepsimplex::decompose::{
    complement_decomposition, threshold_decomposition, verify_decomposition,
};
use sepsimplex::io::{
    ApproxSetJson, DecompositionJson, MemberReportJson, SchmidtJson, SimplexJson, VectorJson,
    VerifyReportJson, VolumeReportJson,
};
use sepsimplex::mc::{mc_fraction, McTarget};
use sepsimplex::schmidt::{ppt_boundary_scan, ppt_threshold, schmidt_decompose};
use sepsimplex::sidon::sidon_exponents;
use sepsimplex::simplex::Simplex;
use sepsimplex::twirl::{product_seed_projector, rho_p_closed_form, twirl_average};
use sepsimplex::volume::volume_report;
use sepsimplex::{Error, DEFAULT_TOL};

#[derive(Parser)]
#[command(
    name = "sepsimplex",
    version,
    about = "Separable-state geometry in commutative simplices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Output path for the JSON report (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Absolute tolerance for validation and comparisons
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Omit the timestamp field for byte-reproducible reports
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args, Clone)]
struct StateArgs {
    /// Pure-state JSON file: {"n": n, "amplitudes": [[re,im] x n^2]}
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Clone)]
struct BuildSetArgs {
    /// Simplex JSON file (rays or projectors)
    #[arg(long)]
    simplex: PathBuf,
    /// "auto", one value, or a comma-separated per-vertex list in (0,1]
    #[arg(long, default_value = "auto")]
    alpha: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Float,
    #[value(name = "exact-rational")]
    ExactRational,
}

#[derive(Args, Clone)]
struct MemberArgs {
    /// Barycentric coordinates: a JSON array, or {"beta": [...]}
    #[arg(long)]
    input: PathBuf,
    /// Approximation-set JSON file (from build-set)
    #[arg(long)]
    simplex: PathBuf,
    /// LP arithmetic
    #[arg(long, value_enum, default_value_t = ModeArg::Float)]
    mode: ModeArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TargetArg {
    Hull,
    Pieces,
    Ppt,
}

#[derive(Args, Clone)]
struct VolumeArgs {
    /// Local dimension n
    #[arg(long)]
    n: usize,
    /// Uniform pencil scale in (0,1]
    #[arg(long)]
    alpha: f64,
    /// Monte Carlo sample count (0 skips sampling)
    #[arg(long, default_value_t = 0)]
    samples: u64,
    /// Monte Carlo seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// What sampled points are tested against
    #[arg(long, value_enum, default_value_t = TargetArg::Hull)]
    target: TargetArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    /// Decomposition JSON file
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Schmidt decomposition of a bipartite pure state
    Schmidt(StateArgs),
    /// PPT pencil threshold, cross-checked by bisection
    Threshold(StateArgs),
    /// Separable decomposition of the first PPT state on the pencil
    DecomposeThreshold(StateArgs),
    /// Separable decomposition of the complementary-face barycenter
    DecomposeComplement(StateArgs),
    /// Deviation of the explicit twirl average from its closed form
    TwirlCheck(StateArgs),
    /// Build the separable approximation set over a simplex
    BuildSet(BuildSetArgs),
    /// Hull membership of barycentric coordinates, with certificate
    Member(MemberArgs),
    /// Triangulation volume, closed-form lower bound, optional Monte Carlo
    Volume(VolumeArgs),
    /// Verify a separable decomposition file
    Verify(VerifyArgs),
}

/// Failure modes that map onto the exit-code contract.
enum CliError {
    /// Unreadable/invalid input: exit 2.
    Input(String),
    /// Library invariant violation: exit 3.
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

/// Classify library errors: data problems are the caller's, the rest are
/// ours.
fn lib_err(e: Error) -> CliError {
    match e {
        Error::Internal(_)
        | Error::SidonCheckFailed { .. }
        | Error::ReassemblyFailed(_)
        | Error::LpIterationCap(_) => CliError::Internal(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let mut buf = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut buf))
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(buf)
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed JSON in {}: {e}", path.display())))
}

fn envelope(command: &str, config: Value, report: Value, stamp: bool) -> Value {
    let mut doc = serde_json::Map::new();
    doc.insert("tool".into(), json!("sepsimplex"));
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    doc.insert("command".into(), json!(command));
    doc.insert("config".into(), config);
    if stamp {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        doc.insert("timestamp".into(), json!(now));
    }
    doc.insert("report".into(), report);
    Value::Object(doc)
}

fn emit(common: &CommonArgs, doc: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc).expect("report serializes") + "\n";
    match &common.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_state(args: &StateArgs) -> Result<sepsimplex::Pure64, CliError> {
    let doc: VectorJson = parse_json(&args.input)?;
    doc.to_state(args.common.tol).map_err(lib_err)
}

fn run_schmidt(args: &StateArgs) -> Result<u8, CliError> {
    let psi = load_state(args)?;
    let sd = schmidt_decompose(&psi, args.common.tol).map_err(lib_err)?;
    let report = serde_json::to_value(SchmidtJson::from_schmidt(&sd)).unwrap();
    let config = json!({"input": args.input, "tol": args.common.tol});
    emit(
        &args.common,
        &envelope("schmidt", config, report, !args.common.no_timestamp),
    )?;
    Ok(0)
}

fn run_threshold(args: &StateArgs) -> Result<u8, CliError> {
    let psi = load_state(args)?;
    let sd = schmidt_decompose(&psi, args.common.tol).map_err(lib_err)?;
    let (m, alpha_m) = ppt_threshold(&sd);
    let scan = ppt_boundary_scan(&psi, args.common.tol).map_err(lib_err)?;
    let report = json!({
        "n": sd.n(),
        "lambdas": sd.lambdas(),
        "m": m,
        "alpha_m": alpha_m,
        "scan_alpha_star": scan.alpha_star,
        "scan_fully_ppt": scan.fully_ppt,
        "scan_deviation": (scan.alpha_star - alpha_m).abs(),
    });
    let config = json!({"input": args.input, "tol": args.common.tol});
    emit(
        &args.common,
        &envelope("threshold", config, report, !args.common.no_timestamp),
    )?;
    Ok(0)
}

fn run_decompose(args: &StateArgs, complement: bool) -> Result<u8, CliError> {
    let psi = load_state(args)?;
    let tol = args.common.tol;
    let sd = schmidt_decompose(&psi, tol).map_err(lib_err)?;
    let schmidt_basis = if complement {
        complement_decomposition(&sd, tol).map_err(lib_err)?
    } else {
        threshold_decomposition(&sd, tol).map_err(lib_err)?
    };
    let dec = schmidt_basis
        .rotated(sd.basis_a(), sd.basis_b(), tol)
        .map_err(lib_err)?;
    let verify = dec.verify(1e-10);
    let (m, alpha_m) = ppt_threshold(&sd);
    let name = if complement {
        "decompose-complement"
    } else {
        "decompose-threshold"
    };
    let report = json!({
        "m": m,
        "alpha_m": alpha_m,
        "terms": dec.terms().len(),
        "decomposition": DecompositionJson::from_decomposition(&dec),
        "verify": VerifyReportJson::from_report(&verify),
    });
    let config = json!({"input": args.input, "tol": tol});
    emit(
        &args.common,
        &envelope(name, config, report, !args.common.no_timestamp),
    )?;
    Ok(if verify.pass { 0 } else { 1 })
}

fn run_twirl_check(args: &StateArgs) -> Result<u8, CliError> {
    let psi = load_state(args)?;
    let tol = args.common.tol;
    let sd = schmidt_decompose(&psi, tol).map_err(lib_err)?;
    let sched = sidon_exponents::<f64>(sd.n()).map_err(lib_err)?;
    let seed = product_seed_projector(&sd, None).map_err(lib_err)?;
    let averaged = twirl_average(&seed, &sched).map_err(lib_err)?;
    let sum: f64 = sd.lambdas().iter().sum();
    let closed = rho_p_closed_form(&sd, tol).map_err(lib_err)?;
    let deviation = averaged
        .max_abs_diff(&closed.matrix().scale_re(sum * sum))
        .map_err(lib_err)?;
    let pass = deviation <= 1e-12;
    let report = json!({
        "n": sd.n(),
        "exponents": sched.exponents(),
        "modulus": sched.modulus(),
        "max_deviation": deviation,
        "pass": pass,
    });
    let config = json!({"input": args.input, "tol": tol});
    emit(
        &args.common,
        &envelope("twirl-check", config, report, !args.common.no_timestamp),
    )?;
    Ok(if pass { 0 } else { 1 })
}

fn parse_alpha_spec(text: &str) -> Result<AlphaSpec<f64>, CliError> {
    if text == "auto" {
        return Ok(AlphaSpec::Auto);
    }
    if text.contains(',') {
        let list = text
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| CliError::Input(format!("bad alpha list: {e}")))?;
        return Ok(AlphaSpec::PerVertex(list));
    }
    text.parse::<f64>()
        .map(AlphaSpec::Uniform)
        .map_err(|e| CliError::Input(format!("bad alpha value {text:?}: {e}")))
}

fn run_build_set(args: &BuildSetArgs) -> Result<u8, CliError> {
    let doc: SimplexJson = parse_json(&args.simplex)?;
    let simplex = doc.to_simplex(args.common.tol).map_err(lib_err)?;
    let spec = parse_alpha_spec(&args.alpha)?;
    let set = approx_set(simplex, spec, args.common.tol).map_err(lib_err)?;
    let report = serde_json::to_value(ApproxSetJson::from_set(&set)).unwrap();
    let config = json!({"simplex": args.simplex, "alpha": args.alpha, "tol": args.common.tol});
    emit(
        &args.common,
        &envelope("build-set", config, report, !args.common.no_timestamp),
    )?;
    Ok(0)
}

fn parse_beta(path: &Path) -> Result<Vec<f64>, CliError> {
    let value: Value = parse_json(path)?;
    let arr = match &value {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("beta")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Input("expected a \"beta\" array".into()))?,
        _ => {
            return Err(CliError::Input(
                "expected a JSON array of coordinates".into(),
            ))
        }
    };
    arr.iter()
        .map(|v| {
            v.as_f64()
                .ok_or_else(|| CliError::Input("non-numeric coordinate".into()))
        })
        .collect()
}

fn run_member(args: &MemberArgs) -> Result<u8, CliError> {
    let set_doc: ApproxSetJson = parse_json(&args.simplex)?;
    let set = set_doc.to_set(args.common.tol).map_err(lib_err)?;
    let beta = parse_beta(&args.input)?;
    let (mode, mode_name) = match args.mode {
        ModeArg::Float => (MemberMode::Float, "float"),
        ModeArg::ExactRational => (MemberMode::ExactRational, "exact-rational"),
    };
    let verdict = hull_membership(&beta, &set, mode, args.common.tol).map_err(lib_err)?;
    let report =
        serde_json::to_value(MemberReportJson::from_membership(&verdict, mode_name)).unwrap();
    let config = json!({
        "input": args.input,
        "simplex": args.simplex,
        "mode": mode_name,
        "tol": args.common.tol,
    });
    emit(
        &args.common,
        &envelope("member", config, report, !args.common.no_timestamp),
    )?;
    Ok(if verdict.inside { 0 } else { 1 })
}

fn run_volume(args: &VolumeArgs) -> Result<u8, CliError> {
    let tol = args.common.tol;
    let mc = if args.samples > 0 {
        let simplex = Simplex::<f64>::bell(args.n, tol).map_err(lib_err)?;
        let set = approx_set(simplex, AlphaSpec::Uniform(args.alpha), tol).map_err(lib_err)?;
        let target = match args.target {
            TargetArg::Hull => McTarget::Hull,
            TargetArg::Pieces => McTarget::Pieces,
            TargetArg::Ppt => McTarget::Ppt,
        };
        Some(mc_fraction(&set, args.samples, args.seed, target, tol).map_err(lib_err)?)
    } else {
        None
    };
    let d = args.n * args.n;
    let report = volume_report(args.n, &vec![args.alpha; d], mc).map_err(lib_err)?;
    let report = serde_json::to_value(VolumeReportJson::from_report(&report)).unwrap();
    let config = json!({
        "n": args.n,
        "alpha": args.alpha,
        "samples": args.samples,
        "seed": args.seed,
        "target": format!("{:?}", args.target).to_lowercase(),
        "tol": tol,
    });
    emit(
        &args.common,
        &envelope("volume", config, report, !args.common.no_timestamp),
    )?;
    Ok(0)
}

fn run_verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let doc: DecompositionJson = parse_json(&args.input)?;
    let (n, terms, target) = doc.to_raw_parts().map_err(lib_err)?;
    let report = verify_decomposition(n, &terms, &target, 1e-10);
    let pass = report.pass;
    let report = serde_json::to_value(VerifyReportJson::from_report(&report)).unwrap();
    let config = json!({"input": args.input, "tol": args.common.tol});
    emit(
        &args.common,
        &envelope("verify", config, report, !args.common.no_timestamp),
    )?;
    Ok(if pass { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Schmidt(a) => run_schmidt(a),
        Command::Threshold(a) => run_threshold(a),
        Command::DecomposeThreshold(a) => run_decompose(a, false),
        Command::DecomposeComplement(a) => run_decompose(a, true),
        Command::TwirlCheck(a) => run_twirl_check(a),
        Command::BuildSet(a) => run_build_set(a),
        Command::Member(a) => run_member(a),
        Command::Volume(a) => run_volume(a),
        Command::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
