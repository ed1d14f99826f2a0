//! Command-line front end shared by the `wignerkit` binary and its tests.
//!
//! Exit codes are a stable contract: 0 success, 1 verification or
//! numerical failure, 2 usage error, 3 I/O error.

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::models::{self, ModelKind, ModelSpec};
use crate::phase_space::{read_grid, total_probability, wigner_transform, write_grid, GridFormat, GridSpec, WignerGrid};
use crate::projection::{self as pj, DensityMatrix2, Kernel};
use crate::star_engine::moyal_evolve_series;
use crate::su_matrix::Mat2C;
use crate::verify::{run_suite, Report, Suite, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Largest accepted grid side.
pub const MAX_GRID_SIDE: usize = 4096;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "WIGNERKIT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "wignerkit", version, about = "Wigner functions, Moyal star calculus and SU(1,1) matrix checks")]
pub struct Cli {
    /// Flat key=value file whose keys mirror long flags; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a model Wigner function on a grid.
    Grid(GridArgs),
    /// Run a named invariant suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Evolve a phase-space density under a quadratic Hamiltonian.
    Evolve(EvolveArgs),
    /// Two-level projection reconstruction.
    #[command(subcommand)]
    Project(ProjectCommand),
    /// SU(1,1) matrix identities.
    #[command(subcommand)]
    Su11(Su11Command),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Sho,
    Xp,
    Hyperbolic,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Sho => ModelKind::Sho,
            ModelArg::Xp => ModelKind::Xp,
            ModelArg::Hyperbolic => ModelKind::Hyperbolic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Closed,
    Transform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for GridFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => GridFormat::Json,
            FormatArg::Csv => GridFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridFlags {
    /// Points per axis.
    #[arg(long, default_value_t = 129)]
    pub size: usize,
    /// Half width of the square window `[-extent, extent]²`.
    #[arg(long, default_value_t = 6.0)]
    pub extent: f64,
    /// Lower x edge; overrides the square window together with --dx.
    #[arg(long, requires = "dx")]
    pub x0: Option<f64>,
    #[arg(long)]
    pub dx: Option<f64>,
    #[arg(long, requires = "dp")]
    pub p0: Option<f64>,
    #[arg(long)]
    pub dp: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
}

impl GridFlags {
    fn spec(&self) -> Result<GridSpec> {
        let mut s = GridSpec::square(self.size, self.extent);
        if let (Some(x0), Some(dx)) = (self.x0, self.dx) {
            s.x0 = x0;
            s.dx = dx;
        }
        if let (Some(p0), Some(dp)) = (self.p0, self.dp) {
            s.p0 = p0;
            s.dp = dp;
        }
        if let Some(h) = self.hbar {
            s.hbar = h;
        }
        s.validate()?;
        Ok(s)
    }
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Level for sho and hyperbolic.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Energy for xp.
    #[arg(long, default_value_t = 1.0)]
    pub energy: f64,
    #[arg(long, value_enum, default_value_t = SourceArg::Closed)]
    pub source: SourceArg,
    #[command(flatten)]
    pub grid: GridFlags,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Destination file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// axioms, specfun, star, models, fock, su11, projection or all.
    pub suite: String,
    /// Override as `suite.key=value`; repeatable.
    #[arg(long = "tolerance", value_name = "SUITE.KEY=VALUE")]
    pub tolerance: Vec<String>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Sho)]
    pub model: ModelArg,
    /// Initial grid in the format given by --format; a Gaussian packet otherwise.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Packet centre in x.
    #[arg(long, default_value_t = 1.0)]
    pub center_x: f64,
    /// Packet centre in p.
    #[arg(long, default_value_t = 0.0)]
    pub center_p: f64,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Number of output intervals; snapshots include t = 0 and the final time.
    #[arg(long, default_value_t = 1)]
    pub snapshots: usize,
    #[command(flatten)]
    pub grid: GridFlags,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ProjectCommand {
    /// Integrate ρ's distribution against the kernel over the circle.
    Reconstruct(ReconstructArgs),
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// `mixed <r>` or `pure`.
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "R"], required = true)]
    pub state: Vec<String>,
    #[arg(long, default_value_t = pj::MIN_QUAD_POINTS)]
    pub quad_points: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Su11Command {
    /// Run the SU(1,1) suite; same report schema as `verify`.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "tolerance", value_name = "SUITE.KEY=VALUE")]
    pub tolerance: Vec<String>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Validated run parameters common to every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub model: Option<ModelSpec>,
    pub grid: Option<GridSpec>,
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub output_path: Option<PathBuf>,
    pub format: GridFormat,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(g) = &self.grid {
            if g.nx > MAX_GRID_SIDE || g.np > MAX_GRID_SIDE {
                return Err(Error::InvalidInput(format!(
                    "grid {}×{} exceeds the {MAX_GRID_SIDE} per-axis limit",
                    g.nx, g.np
                )));
            }
            g.validate()?;
        }
        if let Some((k, v)) = self.tolerance_overrides.iter().find(|(_, v)| !(**v > 0.0)) {
            return Err(Error::InvalidInput(format!("tolerance {k} must be positive, got {v}")));
        }
        if let Some(m) = &self.model {
            m.validate()?;
        }
        Ok(())
    }
}

/// Maps a library error to the exit-code contract.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::InvalidInput(_)
        | Error::DomainError(_)
        | Error::GridMismatch(_)
        | Error::OverflowCeiling { .. }
        | Error::OverflowGuard(_)
        | Error::NonHermitianDensity(_)
        | Error::StencilOutOfBounds { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Expands `--config PATH` into trailing `--key=value` flags for keys not
/// already given on the command line.
pub fn expand_config(args: Vec<String>) -> Result<Vec<String>> {
    let mut out = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or_else(|| Error::InvalidInput("--config needs a path".into()))?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            out.push(a);
        }
    }
    let Some(path) = path else { return Ok(out) };
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let given: Vec<String> = out
        .iter()
        .filter_map(|a| a.strip_prefix("--").map(|k| k.split('=').next().unwrap_or(k).to_string()))
        .collect();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("{path}:{}: expected key=value", lineno + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        // repeatable flags accumulate; single-valued ones yield to the command line
        if k != "tolerance" && given.iter().any(|g| g == k) {
            continue;
        }
        match v {
            "true" => out.push(format!("--{k}")),
            "false" => {}
            _ if k == "state" => {
                out.push("--state".into());
                out.extend(v.split_whitespace().map(str::to_string));
            }
            _ => out.push(format!("--{k}={v}")),
        }
    }
    Ok(out)
}

/// Caps the global rayon pool from [`THREADS_ENV`] if set.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidInput(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
    // a pool built earlier in the process stays in place
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code. Diagnostics go to `stderr`.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                let _ = write!(stdout, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(stderr, "{}", e.render());
            if !e.to_string().contains("Usage:") {
                let _ = writeln!(stderr, "\n{}", Cli::command().render_usage());
            }
            return EXIT_USAGE;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(stderr, "error: {e}");
        return exit_code(&e);
    }
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Grid(a) => cmd_grid(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
        Command::Evolve(a) => cmd_evolve(a, stdout),
        Command::Project(ProjectCommand::Reconstruct(a)) => cmd_reconstruct(a, stdout),
        Command::Su11(Su11Command::Check(a)) => {
            let v = VerifyArgs { suite: Suite::Su11.name().into(), tolerance: a.tolerance, output: a.output };
            cmd_verify(v, stdout, stderr)
        }
    }
}

fn with_output(path: &Option<PathBuf>, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn model_spec(kind: ModelArg, n: usize, energy: f64, hbar: Option<f64>) -> ModelSpec {
    let mut m = match kind {
        ModelArg::Sho => ModelSpec::sho(n),
        ModelArg::Xp => ModelSpec::xp(energy),
        ModelArg::Hyperbolic => ModelSpec::hyperbolic(n),
    };
    if let Some(h) = hbar {
        m.hbar = h;
    }
    m
}

/// The grid a `grid` invocation would write.
pub fn grid_for(a: &GridArgs) -> Result<WignerGrid> {
    let spec = a.grid.spec()?;
    let model = model_spec(a.model, a.n, a.energy, a.grid.hbar);
    let cfg = RunConfig {
        command: "grid".into(),
        model: Some(model),
        grid: Some(spec),
        tolerance_overrides: BTreeMap::new(),
        output_path: a.output.clone(),
        format: a.format.into(),
    };
    cfg.validate()?;
    match (a.source, a.model) {
        (SourceArg::Closed, _) => model.wigner_grid(&spec),
        (SourceArg::Transform, ModelArg::Sho) => wigner_transform(&models::sho_wavefunction(a.n, &spec)?, &spec),
        // xp and hyperbolic eigenfunctions are not square integrable
        (SourceArg::Transform, m) => Err(Error::InvalidInput(format!(
            "--source transform needs a normalizable state; {m:?} supports --source closed only"
        ))),
    }
}

fn cmd_grid(a: GridArgs, stdout: &mut dyn Write) -> Result<i32> {
    let g = grid_for(&a)?;
    with_output(&a.output, stdout, |w| write_grid(&g, a.format.into(), w))?;
    Ok(EXIT_OK)
}

fn parse_tolerances(list: &[String]) -> Result<Tolerances> {
    let mut t = Tolerances::default();
    for s in list {
        t.parse_assignment(s)?;
    }
    Ok(t)
}

fn write_report(r: &Report, w: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, r)?;
    writeln!(w)?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let tols = parse_tolerances(&a.tolerance)?;
    let report = run_suite(suite, &tols);
    with_output(&a.output, stdout, |w| write_report(&report, w))?;
    for c in report.failures() {
        let v = c.value.map_or_else(|| c.error.clone().unwrap_or_default(), |v| format!("{v:e}"));
        let _ = writeln!(stderr, "FAIL {}: {v} (tolerance {:e})", c.name, c.tolerance);
    }
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_FAILURE })
}

fn packet(spec: GridSpec, cx: f64, cp: f64) -> Result<WignerGrid> {
    let h = spec.hbar;
    WignerGrid::from_fn(spec, |x, p| (-((x - cx).powi(2) + (p - cp).powi(2)) / h).exp() / (std::f64::consts::PI * h))
}

/// Snapshots an `evolve` invocation would write.
pub fn evolve_for(a: &EvolveArgs) -> Result<Vec<(f64, WignerGrid)>> {
    let f0 = match &a.input {
        Some(p) => {
            let file = File::open(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            read_grid(BufReader::new(file), a.format.into())?
        }
        None => packet(a.grid.spec()?, a.center_x, a.center_p)?,
    };
    let cfg = RunConfig {
        command: "evolve".into(),
        model: Some(model_spec(a.model, 0, 1.0, Some(f0.spec.hbar))),
        grid: Some(f0.spec),
        tolerance_overrides: BTreeMap::new(),
        output_path: a.output.clone(),
        format: a.format.into(),
    };
    cfg.validate()?;
    let h = model_spec(a.model, 0, 1.0, None).hamiltonian();
    moyal_evolve_series(&h, &f0, a.t, a.dt, a.snapshots)
}

fn cmd_evolve(a: EvolveArgs, stdout: &mut dyn Write) -> Result<i32> {
    let snaps = evolve_for(&a)?;
    with_output(&a.output, stdout, |w| match a.format {
        FormatArg::Json => {
            let list: Vec<_> = snaps
                .iter()
                .map(|(t, g)| json!({"t": t, "total_probability": total_probability(g), "grid": g}))
                .collect();
            serde_json::to_writer(&mut *w, &json!({"model": format!("{:?}", a.model).to_lowercase(), "snapshots": list}))?;
            writeln!(w)?;
            Ok(())
        }
        FormatArg::Csv => {
            writeln!(w, "# hbar={:.16e}", snaps[0].1.spec.hbar)?;
            writeln!(w, "t,x,p,value")?;
            for (t, g) in &snaps {
                for i in 0..g.spec.nx {
                    for j in 0..g.spec.np {
                        writeln!(w, "{t:.16e},{:.16e},{:.16e},{:.16e}", g.spec.x(i), g.spec.p(j), g.get(i, j))?;
                    }
                }
            }
            Ok(())
        }
    })?;
    Ok(EXIT_OK)
}

fn matrix_json(m: &Mat2C) -> serde_json::Value {
    let e = m.entries();
    json!([[[e[0].re, e[0].im], [e[1].re, e[1].im]], [[e[2].re, e[2].im], [e[3].re, e[3].im]]])
}

/// The JSON document a `project reconstruct` invocation would write.
pub fn reconstruct_for(a: &ReconstructArgs) -> Result<serde_json::Value> {
    let (rho, kernel, label, expected) = match a.state.as_slice() {
        [k] if k == "pure" => (DensityMatrix2::pure_example(), Kernel::RotationOfRho0, json!({"kind": "pure"}), None),
        [k, r] if k == "mixed" => {
            let r: f64 = r.parse().map_err(|_| Error::InvalidInput(format!("mixed state needs a numeric r, got {r:?}")))?;
            let rho = DensityMatrix2::mixed(r)?;
            (rho, Kernel::StratonovichA3, json!({"kind": "mixed", "r": r}), Some(pj::mixed_reconstruction_closed(r)))
        }
        other => return Err(Error::InvalidInput(format!("--state expects `mixed <r>` or `pure`, got {other:?}"))),
    };
    let rep = pj::reconstruction_report(&rho, kernel, a.quad_points)?;
    let pi_rho = rho.matrix().scale(std::f64::consts::PI.into());
    let kernel_name = match kernel {
        Kernel::StratonovichA3 => "stratonovich_a3",
        Kernel::RotationOfRho0 => "rotation_of_rho0",
    };
    Ok(json!({
        "state": label,
        "kernel": kernel_name,
        "quad_points": a.quad_points,
        "rho": matrix_json(rho.matrix()),
        "reconstruction": matrix_json(&rep.integral),
        "pi_rho": matrix_json(&pi_rho),
        "closed_form": expected.as_ref().map(matrix_json),
        "inferred_a": rep.inferred_a,
        "defect": matrix_json(&rep.defect),
        "pi_defect": rep.pi_defect,
    }))
}

fn cmd_reconstruct(a: ReconstructArgs, stdout: &mut dyn Write) -> Result<i32> {
    let doc = reconstruct_for(&a)?;
    with_output(&a.output, stdout, |w| {
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)?;
        Ok(())
    })?;
    Ok(EXIT_OK)
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let out = io::stdout();
    let err = io::stderr();
    run(std::env::args(), &mut out.lock(), &mut err.lock())
}
