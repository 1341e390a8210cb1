//! Command-line front end.
//!
//! Every command produces one primary artifact (stdout or `--output`) and,
//! for tabular commands in CSV mode, an optional JSON summary (`--summary`).
//! Failures are reported on stderr as a single JSON object and mapped to exit
//! codes: 2 usage, 3 domain, 4 integration or non-finite output.

pub mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Error;
use crate::flow::{integrate, FlowParams, SnakeSolution, Termination, Trajectory, TurtleSolution};
use crate::geometry::{classify, MetricCoeffs, StretchFactors, DEFAULT_EQ_TOL, DEFAULT_R_SQUARED};
use crate::shape::{from_xy, region_boundaries, start_grid, to_rho_tau, to_xy, trace_flowline, FlowLine, ShapePoint};
use table::{to_json_string, Cell, Record, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INTEGRATION: i32 = 4;


#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "dante-flow", version, about = "Ricci flow of homogeneously deformed 3-spheres")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Squared radius of the undeformed sphere.
    #[arg(long = "r2", global = true, env = "DANTE_FLOW_R2", default_value_t = DEFAULT_R_SQUARED)]
    pub r_squared: f64,

    /// Output format; defaults to JSON for single-object commands and CSV otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write the primary artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// In CSV mode, also write the JSON summary to this path.
    #[arg(long, global = true)]
    pub summary: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 1e-10)]
    pub rel_tol: f64,

    #[arg(long, global = true, default_value_t = 1e-12)]
    pub abs_tol: f64,

    #[arg(long, global = true, default_value_t = 1e-9)]
    pub collapse_eps: f64,

    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_steps: usize,

    /// Relative tolerance for shape equality and sign deadbands.
    #[arg(long, global = true, default_value_t = DEFAULT_EQ_TOL)]
    pub eq_tol: f64,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Factors {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Principal curvatures, Ricci eigenvalues, scalar and connection coefficients.
    Curvature(Factors),
    /// Shape kind, curvature sign data and shape-space coordinates.
    Classify(Factors),
    /// Integrate the flow from ordered stretch factors to collapse.
    Simulate {
        #[command(flatten)]
        factors: Factors,
        /// Uniform time samples added to the adaptive steps.
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Closed-form snake solution (a = b).
    Snake {
        #[arg(long = "W", allow_negative_numbers = true)]
        w0: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        /// Also integrate numerically and report the largest deviation.
        #[arg(long)]
        check: bool,
    },
    /// Closed-form turtle solution (b = c).
    Turtle {
        #[arg(long = "U", allow_negative_numbers = true)]
        u0: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long)]
        check: bool,
    },
    /// Trace flow lines through the shape triangle.
    Flowlines {
        /// CSV file of start points, one `x,y` pair per line (header optional).
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        starts: Option<PathBuf>,
        /// Use an N x N lattice of interior starts.
        #[arg(long)]
        grid: Option<usize>,
        /// Largest stretch factor of the lifted start shape.
        #[arg(long, default_value_t = 1.0)]
        c0: f64,
        /// Uniform time samples per direction of each line.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Write the apex table as CSV to this path.
        #[arg(long)]
        apexes: Option<PathBuf>,
    },
    /// Region boundaries CE, CF and CD of the shape triangle.
    Regions {
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
}

/// Errors surfaced by the front end.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Core(e) => match e {
                Error::Domain(_)
                | Error::Degenerate(_)
                | Error::CollapseReached { .. }
                | Error::SingularSlope { .. }
                | Error::SingularMap { .. } => EXIT_DOMAIN,
                Error::Integration { .. } | Error::NonFinite(_) => EXIT_INTEGRATION,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Core(e) => match e {
                Error::Domain(_) | Error::CollapseReached { .. } => "domain",
                Error::Degenerate(_) => "degenerate",
                Error::SingularSlope { .. } | Error::SingularMap { .. } => "singular",
                Error::Integration { .. } => "integration",
                Error::NonFinite(_) => "non_finite",
            },
        }
    }

    /// The single-line JSON object written to stderr.
    pub fn to_json(&self) -> String {
        json!({ "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() }).to_string()
    }
}

/// What a command produced. `summary` is only written in CSV mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub primary: String,
    pub summary: Option<Value>,
    pub apexes: Option<String>,
}

impl Artifacts {
    fn single(primary: String) -> Self {
        Self { primary, summary: None, apexes: None }
    }
}

impl CommonArgs {
    fn flow_params(&self, grid: usize) -> FlowParams {
        FlowParams {
            r_squared: self.r_squared,
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            collapse_eps: self.collapse_eps,
            max_steps: self.max_steps,
            grid,
            ..FlowParams::default()
        }
    }
}

fn factors(f: &Factors, r_squared: f64) -> Result<StretchFactors, Error> {
    StretchFactors::with_r_squared(f.a, f.b, f.c, r_squared)
}

/// Runs the parsed command and returns its artifacts without touching the
/// filesystem (except reading `--starts`).
pub fn execute(config: &RunConfig) -> Result<Artifacts, CliError> {
    let common = &config.common;
    let r2 = common.r_squared;
    match &config.command {
        Command::Curvature(f) => {
            let record = curvature_record(&factors(f, r2)?);
            emit_record(&record, common.format.unwrap_or(OutputFormat::Json))
        }
        Command::Classify(f) => {
            let record = classify_record(&factors(f, r2)?, common.eq_tol)?;
            emit_record(&record, common.format.unwrap_or(OutputFormat::Json))
        }
        Command::Simulate { factors: f, grid } => simulate(f, *grid, common),
        Command::Snake { w0, alpha, grid, check } => snake(*w0, *alpha, *grid, *check, common),
        Command::Turtle { u0, beta, grid, check } => turtle(*u0, *beta, *grid, *check, common),
        Command::Flowlines { starts, grid, c0, samples, apexes } => {
            let starts = match (starts, grid) {
                (Some(path), _) => read_starts(path)?,
                (None, Some(n)) => start_grid(*n),
                (None, None) => return Err(CliError::Usage("either --starts or --grid is required".into())),
            };
            flowlines(&starts, *c0, *samples, apexes.is_some(), common)
        }
        Command::Regions { resolution } => regions(*resolution, common),
    }
}

fn emit_record(record: &Record, format: OutputFormat) -> Result<Artifacts, CliError> {
    let primary = match format {
        OutputFormat::Json => to_json_string(&record.to_json()?),
        OutputFormat::Csv => Table::single(record).to_csv()?,
    };
    Ok(Artifacts::single(primary))
}

/// Tabular output: CSV table (summary kept aside) or one JSON object holding
/// the summary and the rows under `rows_key`.
fn emit_table(
    table: &Table,
    summary: Value,
    rows_key: &str,
    format: OutputFormat,
) -> Result<Artifacts, CliError> {
    match format {
        OutputFormat::Csv => Ok(Artifacts { primary: table.to_csv()?, summary: Some(summary), apexes: None }),
        OutputFormat::Json => {
            let v = json!({ "summary": summary, rows_key: table.to_json()? });
            Ok(Artifacts::single(to_json_string(&v)))
        }
    }
}

pub fn curvature_record(f: &StretchFactors) -> Record {
    let c = f.curvature();
    let [g1, g2, g3] = f.connection_coefficients();
    Record::new()
        .with("a", f.a())
        .with("b", f.b())
        .with("c", f.c())
        .with("r_squared", f.r_squared())
        .with("kappa1", c.kappa1)
        .with("kappa2", c.kappa2)
        .with("kappa3", c.kappa3)
        .with("ricci11", c.ricci11)
        .with("ricci22", c.ricci22)
        .with("ricci33", c.ricci33)
        .with("scalar", c.scalar)
        .with("connection1", g1)
        .with("connection2", g2)
        .with("connection3", g3)
}

pub fn classify_record(f: &StretchFactors, eq_tol: f64) -> Result<Record, Error> {
    let class = classify(f, eq_tol)?;
    let p = to_xy(&f.sorted())?;
    let ratios = to_rho_tau(p)?;
    let [k1, k2, k3] = class.curvature_signs.map(i8::from);
    let [r1, r2, r3] = class.ricci_signs.map(i8::from);
    Ok(Record::new()
        .with("a", f.a())
        .with("b", f.b())
        .with("c", f.c())
        .with("shape", class.shape.as_str())
        .with("kappa1_sign", k1)
        .with("kappa2_sign", k2)
        .with("kappa3_sign", k3)
        .with("ricci11_sign", r1)
        .with("ricci22_sign", r2)
        .with("ricci33_sign", r3)
        .with("scalar_sign", i8::from(class.scalar_sign))
        .with("x", p.x)
        .with("y", p.y)
        .with("rho", ratios.rho)
        .with("tau", ratios.tau))
}

pub const TRAJECTORY_HEADER: [&str; 16] = [
    "t", "u", "v", "w", "a", "b", "c", "x", "y", "kappa1", "kappa2", "kappa3", "ricci11", "ricci22", "ricci33",
    "scalar",
];

fn trajectory_table(traj: &Trajectory, r_squared: f64) -> Result<Table, Error> {
    let mut table = Table::new(&TRAJECTORY_HEADER);
    for s in traj.samples() {
        let [a, b, c] = s.m.stretch_factors();
        let f = StretchFactors::with_r_squared(a, b, c, r_squared)?;
        let p = ShapePoint::from_metric(&s.m);
        let k = f.curvature();
        table.push(vec![
            s.t.into(),
            s.m.u().into(),
            s.m.v().into(),
            s.m.w().into(),
            a.into(),
            b.into(),
            c.into(),
            p.x.into(),
            p.y.into(),
            k.kappa1.into(),
            k.kappa2.into(),
            k.kappa3.into(),
            k.ricci11.into(),
            k.ricci22.into(),
            k.ricci33.into(),
            k.scalar.into(),
        ]);
    }
    Ok(table)
}

fn termination_str(t: Termination) -> &'static str {
    match t {
        Termination::Collapsed => "collapsed",
        Termination::MaxSteps => "max_steps",
        Termination::GrowthCapped => "growth_capped",
    }
}

fn simulate(f: &Factors, grid: usize, common: &CommonArgs) -> Result<Artifacts, CliError> {
    let factors = StretchFactors::ordered(f.a, f.b, f.c, common.r_squared)?;
    let traj = integrate(&factors.metric_coeffs(), &common.flow_params(grid))?;
    let table = trajectory_table(&traj, common.r_squared)?;
    let mut summary = Record::new()
        .with("a", f.a)
        .with("b", f.b)
        .with("c", f.c)
        .with("r_squared", common.r_squared)
        .with("terminated", termination_str(traj.terminated()))
        .with("steps", traj.steps())
        .with("samples", traj.samples().len())
        .with("final_t", traj.last().t);
    summary.push("min_metric_final", traj.last().m.min());
    let collapse = match traj.collapse_time() {
        Some(t) => Value::from(t),
        None => Value::Null,
    };
    let summary = summary.to_json_with(vec![("collapse_time", collapse)])?;
    emit_table(&table, summary, "samples", common.format.unwrap_or(OutputFormat::Csv))
}

/// Parameter values `1, 1 − 1/n, ..., 0`.
fn unit_grid(n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(1);
    (0..=n).map(move |k| if k == n { 0.0 } else { 1.0 - k as f64 / n as f64 })
}

fn max_deviation<F: Fn(&MetricCoeffs) -> Result<f64, Error>>(traj: &Trajectory, closed_time: F) -> Result<f64, Error> {
    traj.samples().iter().try_fold(0.0_f64, |acc, s| Ok(acc.max((closed_time(&s.m)? - s.t).abs())))
}

fn push_check(summary: &mut Record, traj: &Trajectory, closed_collapse: f64, deviation: f64) -> Result<(), Error> {
    let numeric = traj.collapse_time().ok_or_else(|| Error::Integration {
        t: traj.last().t,
        reason: "no collapse within max_steps".into(),
        partial: Box::new(traj.clone()),
    })?;
    summary.push("numeric_collapse_time", numeric);
    summary.push("collapse_time_error", (numeric - closed_collapse).abs());
    summary.push("max_deviation", deviation);
    Ok(())
}

fn snake(w0: f64, alpha: f64, grid: usize, check: bool, common: &CommonArgs) -> Result<Artifacts, CliError> {
    let sol = SnakeSolution::with_r_squared(w0, alpha, common.r_squared)?;
    let mut table = Table::new(&["lambda", "t", "w", "v"]);
    for lambda in unit_grid(grid) {
        let (w, v) = if lambda > 0.0 { sol.profile(lambda)? } else { (0.0, 0.0) };
        table.push(vec![lambda.into(), sol.time_of_lambda(lambda)?.into(), w.into(), v.into()]);
    }
    let mut summary = Record::new()
        .with("w0", w0)
        .with("alpha", alpha)
        .with("r_squared", common.r_squared)
        .with("collapse_time", sol.collapse_time());
    if check {
        let traj = integrate(&sol.initial_metric(), &common.flow_params(grid))?;
        let dev = max_deviation(&traj, |m| sol.time_of_lambda((m.w() / w0).min(1.0)))?;
        push_check(&mut summary, &traj, sol.collapse_time(), dev)?;
    }
    let summary = summary.to_json()?;
    emit_table(&table, summary, "table", common.format.unwrap_or(OutputFormat::Csv))
}

fn turtle(u0: f64, beta: f64, grid: usize, check: bool, common: &CommonArgs) -> Result<Artifacts, CliError> {
    let sol = TurtleSolution::with_r_squared(u0, beta, common.r_squared)?;
    let mut table = Table::new(&["mu", "t", "u", "v"]);
    for mu in unit_grid(grid) {
        let (u, v) = if mu > 0.0 { sol.profile(mu)? } else { (0.0, 0.0) };
        table.push(vec![mu.into(), sol.time_of_mu(mu)?.into(), u.into(), v.into()]);
    }
    let mut summary = Record::new()
        .with("u0", u0)
        .with("beta", beta)
        .with("r_squared", common.r_squared)
        .with("collapse_time", sol.collapse_time());
    if check {
        let traj = integrate(&sol.initial_metric(), &common.flow_params(grid))?;
        let dev = max_deviation(&traj, |m| sol.time_of_mu((m.u() / u0).min(1.0)))?;
        push_check(&mut summary, &traj, sol.collapse_time(), dev)?;
    }
    let summary = summary.to_json()?;
    emit_table(&table, summary, "table", common.format.unwrap_or(OutputFormat::Csv))
}

/// Parses `x,y` lines; blank lines, `#` comments and a non-numeric header
/// line are skipped.
pub fn parse_starts(text: &str) -> Result<Vec<ShapePoint>, CliError> {
    let mut starts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
        match parsed {
            Some(v) if v.len() == 2 => starts.push(ShapePoint::new(v[0], v[1])),
            None if lineno == 0 => continue,
            _ => return Err(CliError::Usage(format!("line {}: expected `x,y`, got `{line}`", lineno + 1))),
        }
    }
    if starts.is_empty() {
        return Err(CliError::Usage("no start points given".into()));
    }
    Ok(starts)
}

fn read_starts(path: &Path) -> Result<Vec<ShapePoint>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_starts(&text)
}

fn flowlines(
    starts: &[ShapePoint],
    c0: f64,
    samples: usize,
    want_apexes: bool,
    common: &CommonArgs,
) -> Result<Artifacts, CliError> {
    let params = common.flow_params(samples);
    // fail fast on bad starts before spending time on integration
    for s in starts {
        from_xy(*s, c0, params.r_squared)?;
    }
    let lines: Vec<FlowLine> = starts
        .par_iter()
        .map(|s| trace_flowline(*s, c0, &params))
        .collect::<Result<_, _>>()?;

    let mut points = Table::new(&["line_id", "x", "y", "t"]);
    let mut apexes = Table::new(&[
        "line_id",
        "start_x",
        "start_y",
        "apex_x",
        "apex_y",
        "apex_radius_squared",
        "end_x",
        "end_y",
        "collapse_time",
    ]);
    for (id, line) in lines.iter().enumerate() {
        for p in &line.points {
            points.push(vec![id.into(), p.x.into(), p.y.into(), p.t.into()]);
        }
        let end = line.end();
        apexes.push(vec![
            id.into(),
            line.start.x.into(),
            line.start.y.into(),
            line.apex.x.into(),
            line.apex.y.into(),
            line.apex.radius_squared().into(),
            end.x.into(),
            end.y.into(),
            line.collapse_time.map_or(Cell::Text(String::new()), Cell::Num),
        ]);
    }
    let apex_csv = if want_apexes { Some(apexes.to_csv()?) } else { None };
    let summary = json!({
        "lines": lines.len(),
        "c0": c0,
        "apexes": apexes.to_json()?,
    });
    let mut artifacts = emit_table(&points, summary, "points", common.format.unwrap_or(OutputFormat::Csv))?;
    artifacts.apexes = apex_csv;
    Ok(artifacts)
}

fn regions(resolution: usize, common: &CommonArgs) -> Result<Artifacts, CliError> {
    let boundaries = region_boundaries(resolution)?;
    match common.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            let mut table = Table::new(&["label", "x", "y"]);
            for b in &boundaries {
                for p in &b.points {
                    table.push(vec![b.label.into(), p.x.into(), p.y.into()]);
                }
            }
            Ok(Artifacts::single(table.to_csv()?))
        }
        OutputFormat::Json => {
            let list = boundaries
                .iter()
                .map(|b| {
                    let mut t = Table::new(&["x", "y"]);
                    for p in &b.points {
                        t.push(vec![p.x.into(), p.y.into()]);
                    }
                    Ok(json!({ "label": b.label, "points": t.to_json()? }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(Artifacts::single(to_json_string(&json!({ "resolution": resolution, "boundaries": list }))))
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_artifacts(config: &RunConfig, artifacts: &Artifacts) -> Result<(), CliError> {
    let common = &config.common;
    match &common.output {
        Some(path) => write_file(path, &artifacts.primary)?,
        None => std::io::stdout()
            .lock()
            .write_all(artifacts.primary.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?,
    }
    if let (Some(path), Some(summary)) = (&common.summary, &artifacts.summary) {
        write_file(path, &to_json_string(summary))?;
    }
    if let (Command::Flowlines { apexes: Some(path), .. }, Some(csv)) = (&config.command, &artifacts.apexes) {
        write_file(path, csv)?;
    }
    Ok(())
}

/// Parses `args`, runs the command and writes its artifacts. Returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_OK;
            }
            let err = CliError::Usage(e.render().to_string().trim().to_owned());
            eprintln!("{}", err.to_json());
            return EXIT_USAGE;
        }
    };
    match execute(&config).and_then(|a| write_artifacts(&config, &a)) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("{}", err.to_json());
            err.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Artifacts, CliError> {
        let mut full = vec!["dante-flow"];
        full.extend_from_slice(args);
        execute(&RunConfig::try_parse_from(full).unwrap())
    }

    #[test]
    fn curvature_json_keys() {
        let out = run(&["curvature", "--a", "1", "--b", "1", "--c", "2"]).unwrap();
        let v: Value = serde_json::from_str(&out.primary).unwrap();
        assert_eq!(v["kappa3"], -1.0);
        assert_eq!(v["ricci33"], 2.0);
        assert_eq!(v["connection3"], 0.0);
    }

    #[test]
    fn classify_snake() {
        let out = run(&["classify", "--a", "1", "--b", "1", "--c", "2"]).unwrap();
        let v: Value = serde_json::from_str(&out.primary).unwrap();
        assert_eq!(v["shape"], "snake");
        assert_eq!((v["ricci11_sign"].as_i64(), v["ricci22_sign"].as_i64(), v["ricci33_sign"].as_i64()), (Some(0), Some(0), Some(1)));
        assert_eq!((v["x"].as_f64(), v["y"].as_f64()), (Some(1.0), Some(0.0)));
    }

    #[test]
    fn simulate_rejects_unordered() {
        let err = run(&["simulate", "--a", "2", "--b", "1", "--c", "3"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_DOMAIN);
    }

    #[test]
    fn negative_factor_is_domain_error() {
        let err = run(&["curvature", "--a", "-1", "--b", "1", "--c", "2"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_DOMAIN);
        let v: Value = serde_json::from_str(&err.to_json()).unwrap();
        assert_eq!(v["error"], "domain");
    }

    #[test]
    fn starts_parsing() {
        let s = parse_starts("x,y\n0.5,0.25\n\n# comment\n1.2, 0.3\n").unwrap();
        assert_eq!(s, vec![ShapePoint::new(0.5, 0.25), ShapePoint::new(1.2, 0.3)]);
        assert!(matches!(parse_starts("0.5\n"), Err(CliError::Usage(_))));
        assert!(matches!(parse_starts("x,y\n"), Err(CliError::Usage(_))));
    }

    #[test]
    fn snake_table_runs_from_one_to_zero() {
        let out = run(&["snake", "--W", "1", "--alpha", "1", "--grid", "4"]).unwrap();
        let lines: Vec<&str> = out.primary.lines().collect();
        assert_eq!(lines[0], "lambda,t,w,v");
        assert_eq!(lines[1], "1.0,0.0,1.0,0.5");
        assert!(lines[5].starts_with("0.0,0.6426990816987241,"));
    }
}
