//! `aqrm` — asymmetric quantum Rabi model from the command line.
//!
//! Subcommands: `spectrum` (one parameter point), `scan` (levels over
//! coupling), `potential` (effective potential, Taylor coefficients, well
//! geometry), `wavefunction` (spin-resolved eigenstates on a grid), and
//! `degeneracy-map` (onset classification over asymmetry).
//!
//! Output is CSV for bulk numbers, JSON for metadata/sidecars (all
//! documents carry `schema_version`), SVG for quick-look plots. Exit codes
//! are stable: 0 success, 2 invalid input, 3 solver failure, 4 precondition
//! violation; failures print a JSON error record to stderr.

use std::path::{Path, PathBuf};

use aqrm::{
    bo_wavefunction, classify_degeneracy, ed_wavefunction, find_wells, g_c, scan_coupling,
    solve_bo, solve_bo_with_order, solve_ed, taylor_coefficients, v_eff, Axis, Branch,
    DegeneracyReport, Error, Method, MethodChoice, ModelParams, Result, SolverSizes,
    WavefunctionGrid,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use aqrm_cli::config::{self, FileConfig};
use aqrm_cli::emit;
use aqrm_cli::schema::{
    DegeneracyDocument, ErrorRecord, PotentialDocument, PotentialProfile, ScanDocument,
    SpectrumDocument, WavefunctionDocument, SCHEMA_VERSION,
};

const DEFAULT_LEVELS: usize = 6;

#[derive(Parser)]
#[command(
    name = "aqrm",
    version,
    about = "Asymmetric quantum Rabi model: adiabatic and exact spectra, effective-potential \
             analysis, degeneracy maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lowest-k spectrum at one parameter point (JSON)
    Spectrum(SpectrumArgs),
    /// Energy levels swept over coupling (CSV/JSON/SVG)
    Scan(ScanArgs),
    /// Effective potential profile, Taylor coefficients, well geometry
    Potential(PotentialArgs),
    /// Spin-resolved wavefunction of one level on a ξ grid
    Wavefunction(WavefunctionArgs),
    /// Degeneracy-onset classification swept over asymmetry (CSV/JSON)
    DegeneracyMap(DegeneracyMapArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Bo,
    Ed,
    Both,
}

impl MethodArg {
    fn choice(self) -> MethodChoice {
        match self {
            MethodArg::Bo => MethodChoice::Bo,
            MethodArg::Ed => MethodChoice::Ed,
            MethodArg::Both => MethodChoice::Both,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Neg,
    Pos,
}

impl BranchArg {
    fn branch(self) -> Branch {
        match self {
            BranchArg::Neg => Branch::Negative,
            BranchArg::Pos => Branch::Positive,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    G,
    GOverGc,
}

impl AxisArg {
    fn axis(self) -> Axis {
        match self {
            AxisArg::G => Axis::G,
            AxisArg::GOverGc => Axis::GOverGc,
        }
    }
}

#[derive(Args)]
struct OutputOpts {
    /// Write to this file instead of stdout
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Output format (default depends on the command)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// `key = value` file overriding built-in solver defaults
    /// (keys: basis, fock, quad, threshold); flags override the file
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SizeOpts {
    /// Oscillator basis size for the adiabatic solver
    #[arg(long)]
    basis: Option<usize>,
    /// Fock truncation for exact diagonalization
    #[arg(long)]
    fock: Option<usize>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Level splitting Δ
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    /// Coupling strength g
    #[arg(long, allow_negative_numbers = true)]
    g: f64,
    /// Asymmetry η
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    eta: f64,
    /// Solver(s) to run
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// Number of levels
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    levels: usize,
    /// Adiabatic branch (adiabatic solver only)
    #[arg(long, value_enum)]
    branch: Option<BranchArg>,
    /// Fixed Gauss–Hermite order for the adiabatic solves
    /// (default: automatic pairing with the basis size)
    #[arg(long)]
    quad: Option<usize>,
    #[command(flatten)]
    sizes: SizeOpts,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct ScanArgs {
    /// Level splitting Δ
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    /// Asymmetry η
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    eta: f64,
    /// Sweep coordinate: raw coupling or multiples of g_c(Δ)
    #[arg(long, value_enum)]
    axis: AxisArg,
    /// First axis value
    #[arg(long, allow_negative_numbers = true)]
    min: f64,
    /// Last axis value
    #[arg(long, allow_negative_numbers = true)]
    max: f64,
    /// Number of scan points (inclusive endpoints), ≥ 2
    #[arg(long)]
    steps: usize,
    /// Number of levels per point
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    levels: usize,
    /// Solver(s) to run
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[command(flatten)]
    sizes: SizeOpts,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct PotentialArgs {
    /// Level splitting Δ
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    /// Coupling strength g
    #[arg(long, allow_negative_numbers = true)]
    g: f64,
    /// Asymmetry η
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    eta: f64,
    /// Half-width L of the symmetric grid [−L, L]
    /// (default: the wavefunction support bound 1.5·√2·g + 6)
    #[arg(long, allow_negative_numbers = true)]
    range: Option<f64>,
    /// Number of grid points, ≥ 2
    #[arg(long, default_value_t = 501)]
    points: usize,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct WavefunctionArgs {
    /// Level splitting Δ
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    /// Coupling strength g
    #[arg(long, allow_negative_numbers = true)]
    g: f64,
    /// Asymmetry η
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    eta: f64,
    /// Level index (0 = ground state)
    #[arg(long, default_value_t = 0)]
    level: usize,
    /// Solver(s) to run
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// Adiabatic branch (adiabatic solver only)
    #[arg(long, value_enum)]
    branch: Option<BranchArg>,
    /// First grid point (default: −(1.5·√2·g + 6))
    #[arg(long, allow_negative_numbers = true)]
    grid_min: Option<f64>,
    /// Last grid point (default: 1.5·√2·g + 6)
    #[arg(long, allow_negative_numbers = true)]
    grid_max: Option<f64>,
    /// Number of grid points, ≥ 2
    #[arg(long, default_value_t = 801)]
    grid_points: usize,
    #[command(flatten)]
    sizes: SizeOpts,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("coupling").required(true).args(["g", "g_over_gc"])))]
struct DegeneracyMapArgs {
    /// Level splitting Δ
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    /// First asymmetry value
    #[arg(long, allow_negative_numbers = true)]
    eta_min: Option<f64>,
    /// Last asymmetry value
    #[arg(long, allow_negative_numbers = true)]
    eta_max: Option<f64>,
    /// Number of asymmetry values (inclusive endpoints), ≥ 1
    #[arg(long)]
    eta_steps: Option<usize>,
    /// Explicit asymmetry values (alternative to min/max/steps)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true,
          conflicts_with_all = ["eta_min", "eta_max", "eta_steps"])]
    eta_values: Vec<f64>,
    /// Coupling strength g
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Coupling in multiples of g_c(Δ)
    #[arg(long, allow_negative_numbers = true)]
    g_over_gc: Option<f64>,
    /// Number of levels entering the gap list
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    levels: usize,
    /// Gap threshold below which adjacent levels count as degenerate
    #[arg(long, allow_negative_numbers = true)]
    threshold: Option<f64>,
    #[command(flatten)]
    out: OutputOpts,
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            report(&Error::InvalidInput(e.to_string()));
            return 2;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            report(&e);
            i32::from(e.exit_code())
        }
    }
}

/// One JSON error record per failure, on stderr.
fn report(e: &Error) {
    let record = ErrorRecord::from_error(e);
    eprintln!("{}", serde_json::to_string(&record).expect("plain data serializes"));
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Cmd::Spectrum(a) => cmd_spectrum(a),
        Cmd::Scan(a) => cmd_scan(a),
        Cmd::Potential(a) => cmd_potential(a),
        Cmd::Wavefunction(a) => cmd_wavefunction(a),
        Cmd::DegeneracyMap(a) => cmd_degeneracy_map(a),
    }
}

fn load_file_config(out: &OutputOpts) -> Result<FileConfig> {
    match &out.config {
        Some(p) => FileConfig::load(p),
        None => Ok(FileConfig::default()),
    }
}

/// `n` evenly spaced values with exact endpoints; callers guarantee n ≥ 2
/// and min < max.
fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    let step = (max - min) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| min + i as f64 * step).collect();
    v[n - 1] = max;
    v
}

/// Default ξ half-width: the wavefunction-support bound used by the grid
/// validation (bitwise the same expression).
fn support_bound(g: f64) -> f64 {
    std::f64::consts::SQRT_2 * g * 1.5 + 6.0
}

/// Rejects an explicit `--branch` on a run that never touches the adiabatic
/// solver, where it would silently do nothing.
fn resolve_branch(branch: Option<BranchArg>, method: MethodChoice) -> Result<Branch> {
    match branch {
        None => Ok(Branch::Negative),
        Some(_) if method == MethodChoice::Ed => Err(Error::InvalidInput(
            "--branch selects the adiabatic surface; it has no effect with --method ed".into(),
        )),
        Some(b) => Ok(b.branch()),
    }
}

fn cmd_spectrum(a: SpectrumArgs) -> Result<()> {
    let file = load_file_config(&a.out)?;
    let r = config::resolve(a.sizes.basis, a.sizes.fock, a.quad, None, &file);
    config::validate(&r)?;
    let params = ModelParams::new(a.delta, a.g, a.eta)?;
    let method = a.method.choice();
    let branch = resolve_branch(a.branch, method)?;
    let mut results = Vec::new();
    for m in method.methods() {
        results.push(match m {
            Method::Bo => match r.quad {
                Some(q) => solve_bo_with_order(&params, branch, r.basis, q, a.levels)?,
                None => solve_bo(&params, branch, r.basis, a.levels)?,
            },
            Method::Ed => solve_ed(&params, r.fock, a.levels)?,
        });
    }
    let doc = SpectrumDocument { schema_version: SCHEMA_VERSION, results };
    match a.out.format.unwrap_or(Format::Json) {
        Format::Json => emit::write_output(a.out.output.as_deref(), &emit::to_json(&doc)),
        _ => Err(Error::InvalidInput("spectrum supports --format json only".into())),
    }
}

fn cmd_scan(a: ScanArgs) -> Result<()> {
    let file = load_file_config(&a.out)?;
    let mut r = config::resolve(a.sizes.basis, a.sizes.fock, None, None, &file);
    r.quad = None; // automatic pairing; the override is for single-point solves
    config::validate(&r)?;
    if a.steps < 2 {
        return Err(Error::InvalidInput(format!("scan needs --steps ≥ 2, got {}", a.steps)));
    }
    if a.min >= a.max {
        return Err(Error::InvalidInput(format!(
            "scan needs --min < --max, got [{}, {}]",
            a.min, a.max
        )));
    }
    let values = linspace(a.min, a.max, a.steps);
    let sizes = SolverSizes { bo_basis: r.basis, n_fock: r.fock };
    let tables =
        scan_coupling(a.delta, a.eta, &values, a.axis.axis(), a.method.choice(), a.levels, sizes)?;
    let content = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => emit::csv_scan(&tables)?,
        Format::Json => emit::to_json(&ScanDocument { schema_version: SCHEMA_VERSION, tables }),
        Format::Svg => emit::svg_scan(&tables)?,
    };
    emit::write_output(a.out.output.as_deref(), &content)
}

fn cmd_potential(a: PotentialArgs) -> Result<()> {
    let file = load_file_config(&a.out)?;
    let mut r = config::resolve(None, None, None, None, &file);
    r.quad = None;
    config::validate(&r)?;
    let params = ModelParams::new(a.delta, a.g, a.eta)?;
    let range = a.range.unwrap_or_else(|| support_bound(a.g));
    if !range.is_finite() || range <= 0.0 {
        return Err(Error::InvalidInput(format!("--range must be finite and > 0, got {range}")));
    }
    if a.points < 2 {
        return Err(Error::InvalidInput(format!("--points must be ≥ 2, got {}", a.points)));
    }
    let xi = linspace(-range, range, a.points);
    let v: Vec<f64> = xi.iter().map(|&x| v_eff(&params, x)).collect();
    let taylor = match taylor_coefficients(&params) {
        Ok(t) => Some(t),
        Err(Error::Precondition(msg)) => {
            eprintln!("warning: Taylor coefficients omitted: {msg}");
            None
        }
        Err(e) => return Err(e),
    };
    let wells = find_wells(&params);
    let doc = |profile| PotentialDocument {
        schema_version: SCHEMA_VERSION,
        params,
        profile,
        taylor,
        wells: wells.clone(),
    };
    match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let Some(path) = a.out.output.as_deref() else {
                return Err(Error::InvalidInput(
                    "potential --format csv needs --output PATH; the Taylor/wells sidecar is \
                     written next to it as PATH with extension .json"
                        .into(),
                ));
            };
            let sidecar = path.with_extension("json");
            if sidecar == path {
                return Err(Error::InvalidInput(
                    "potential CSV path must not end in .json (it would collide with the \
                     sidecar)"
                        .into(),
                ));
            }
            emit::write_output(Some(path), &emit::csv_profile(&xi, &v))?;
            emit::write_output(Some(&sidecar), &emit::to_json(&doc(None)))
        }
        Format::Json => {
            let d = doc(Some(PotentialProfile { xi, v }));
            emit::write_output(a.out.output.as_deref(), &emit::to_json(&d))
        }
        Format::Svg => emit::write_output(a.out.output.as_deref(), &emit::svg_potential(&xi, &v)),
    }
}

/// `wf.csv` → `wf.bo.csv` / `wf.ed.csv` for two-method CSV runs.
fn path_with_method(path: &Path, m: Method) -> PathBuf {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => path.with_extension(format!("{m}.{ext}")),
        None => path.with_extension(m.label()),
    }
}

fn cmd_wavefunction(a: WavefunctionArgs) -> Result<()> {
    let file = load_file_config(&a.out)?;
    let mut r = config::resolve(a.sizes.basis, a.sizes.fock, None, None, &file);
    r.quad = None;
    config::validate(&r)?;
    let params = ModelParams::new(a.delta, a.g, a.eta)?;
    let method = a.method.choice();
    let branch = resolve_branch(a.branch, method)?;
    let bound = support_bound(a.g);
    let lo = a.grid_min.unwrap_or(-bound);
    let hi = a.grid_max.unwrap_or(bound);
    if lo >= hi {
        return Err(Error::InvalidInput(format!(
            "grid needs --grid-min < --grid-max, got [{lo}, {hi}]"
        )));
    }
    if a.grid_points < 2 {
        return Err(Error::InvalidInput(format!("--grid-points must be ≥ 2, got {}", a.grid_points)));
    }
    let grid = linspace(lo, hi, a.grid_points);
    let mut grids: Vec<WavefunctionGrid> = Vec::new();
    for m in method.methods() {
        grids.push(match m {
            Method::Bo => bo_wavefunction(&params, branch, r.basis, a.level, &grid)?,
            Method::Ed => ed_wavefunction(&params, r.fock, a.level, &grid)?,
        });
    }
    match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            if grids.len() == 1 {
                return emit::write_output(
                    a.out.output.as_deref(),
                    &emit::csv_wavefunction(&grids[0]),
                );
            }
            let Some(path) = a.out.output.as_deref() else {
                return Err(Error::InvalidInput(
                    "wavefunction --method both --format csv needs --output PATH (one file per \
                     method, method label inserted before the extension)"
                        .into(),
                ));
            };
            for g in &grids {
                emit::write_output(
                    Some(&path_with_method(path, g.method)),
                    &emit::csv_wavefunction(g),
                )?;
            }
            Ok(())
        }
        Format::Json => {
            let doc =
                WavefunctionDocument { schema_version: SCHEMA_VERSION, params, grids };
            emit::write_output(a.out.output.as_deref(), &emit::to_json(&doc))
        }
        Format::Svg => {
            emit::write_output(a.out.output.as_deref(), &emit::svg_wavefunction(&grids))
        }
    }
}

fn cmd_degeneracy_map(a: DegeneracyMapArgs) -> Result<()> {
    let file = load_file_config(&a.out)?;
    let mut r = config::resolve(None, None, None, a.threshold, &file);
    r.quad = None;
    config::validate(&r)?;
    let g = match (a.g, a.g_over_gc) {
        (Some(g), None) => g,
        (None, Some(x)) => x * g_c(a.delta),
        _ => unreachable!("clap group enforces exactly one coupling flag"),
    };
    let etas: Vec<f64> = if !a.eta_values.is_empty() {
        if a.eta_values.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidInput("--eta-values must be finite".into()));
        }
        a.eta_values.clone()
    } else {
        let (Some(lo), Some(hi), Some(n)) = (a.eta_min, a.eta_max, a.eta_steps) else {
            return Err(Error::InvalidInput(
                "give either --eta-values or all of --eta-min/--eta-max/--eta-steps".into(),
            ));
        };
        match n {
            0 => return Err(Error::InvalidInput("--eta-steps must be ≥ 1".into())),
            1 if lo == hi => vec![lo],
            1 => {
                return Err(Error::InvalidInput(format!(
                    "--eta-steps 1 needs --eta-min == --eta-max, got [{lo}, {hi}]"
                )))
            }
            _ if lo < hi => linspace(lo, hi, n),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "sweep needs --eta-min < --eta-max, got [{lo}, {hi}]"
                )))
            }
        }
    };
    let reports: Vec<DegeneracyReport> = etas
        .iter()
        .map(|&eta| {
            let p = ModelParams::new(a.delta, g, eta)?;
            classify_degeneracy(&p, a.levels, r.threshold)
                .map_err(|e| e.context(format!("eta={eta}")))
        })
        .collect::<Result<_>>()?;
    let content = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => emit::csv_degeneracy(&reports)?,
        Format::Json => {
            emit::to_json(&DegeneracyDocument { schema_version: SCHEMA_VERSION, reports })
        }
        Format::Svg => {
            return Err(Error::InvalidInput(
                "degeneracy-map supports --format csv or json".into(),
            ))
        }
    };
    emit::write_output(a.out.output.as_deref(), &content)
}
