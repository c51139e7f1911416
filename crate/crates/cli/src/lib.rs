//! Command-line front end: polytope files in, reports out.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage, input
//! or I/O errors.

pub mod input;
pub mod report;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ehrhart::ehrhart::{
    ehrhart_polynomial, hstar_numerator, pick_report, quasi_polynomial, quasi_reciprocity_check,
    reciprocity_check, ReciprocityRow,
};
use ehrhart::exact::format_rational;
use ehrhart::lattice::{count_report, verify_covering, CountMethod};
use ehrhart::solid_angle::{solid_angle_parity_check, solid_angle_sum, REPORT_TOLERANCE};
use ehrhart::triangulation::Triangulation;
use ehrhart::verify::verify_all;
use ehrhart::Polytope;

pub use input::{parse_polytope_file, parse_polytope_str, PolytopeFile};
pub use report::OutputFormat;
use report::{list, render, Block, Record};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("invalid polytope file: {0}")]
    Json(String),
    #[error("malformed rational {token:?} at vertex {row}, coordinate {col}")]
    MalformedRational {
        token: String,
        row: usize,
        col: usize,
    },
    #[error("vertex {row} has {found} coordinates, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex list is empty")]
    EmptyVertexList,
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ehrhart::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use ehrhart::Error as E;
        match self {
            CliError::Core(
                E::HoldoutMismatch { .. }
                | E::DegreeMismatch { .. }
                | E::NonIntegralCoefficient { .. }
                | E::IdentityViolated(_),
            ) => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    BoundingBox,
    Barycentric,
    Triangulation,
}

impl From<Method> for CountMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::BoundingBox => CountMethod::BoundingBox,
            Method::Barycentric => CountMethod::SimplexBarycentric,
            Method::Triangulation => CountMethod::TriangulationIe,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Count(Method),
    Triangulate,
    Ehrhart,
    Quasi,
    Reciprocity,
    Pick,
    SolidAngle,
    Covering,
    VerifyAll,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub t_min: i64,
    pub t_max: i64,
    pub format: OutputFormat,
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(
    name = "ehrhart",
    version,
    about = "Exact lattice-point counting and Ehrhart theory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Polytope file: {"ambient_dim": n, "vertices": [["p/q", ...], ...]}
    pub input: PathBuf,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub t_min: i64,
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    pub t_max: i64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Lattice points of tP (closed, relative interior, boundary)
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::BoundingBox)]
        method: Method,
    },
    /// Pulling triangulation: cells and faces
    Triangulate(Common),
    /// Ehrhart polynomial and h*-vector of an integral polytope
    Ehrhart(Common),
    /// Ehrhart quasi-polynomial of a rational polytope
    Quasi(Common),
    /// Compare (-1)^d L(-t) with interior counts
    Reciprocity(Common),
    /// Pick's theorem for a lattice polygon
    Pick(Common),
    /// Solid-angle sums a_P(t) for a lattice polygon
    SolidAngle(Common),
    /// Check the simplex covering construction for each t (may be negative)
    Covering(Common),
    /// Run the full property suite over the built-in corpus
    VerifyAll {
        #[arg(long, env = "EHRHART_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
    },
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let with = |command, c: Common| RunConfig {
            command,
            input: Some(c.input),
            t_min: c.opts.t_min,
            t_max: c.opts.t_max,
            format: c.opts.format,
            seed: 1,
        };
        match cli.command {
            CliCommand::Count { common, method } => with(Command::Count(method), common),
            CliCommand::Triangulate(c) => with(Command::Triangulate, c),
            CliCommand::Ehrhart(c) => with(Command::Ehrhart, c),
            CliCommand::Quasi(c) => with(Command::Quasi, c),
            CliCommand::Reciprocity(c) => with(Command::Reciprocity, c),
            CliCommand::Pick(c) => with(Command::Pick, c),
            CliCommand::SolidAngle(c) => with(Command::SolidAngle, c),
            CliCommand::Covering(c) => with(Command::Covering, c),
            CliCommand::VerifyAll { seed, format } => RunConfig {
                command: Command::VerifyAll,
                input: None,
                t_min: 1,
                t_max: 1,
                format,
                seed,
            },
        }
    }
}

/// Blocks to print, plus the name of the first failed check if any.
struct Outcome {
    blocks: Vec<Block>,
    failure: Option<String>,
}

impl Outcome {
    fn ok(blocks: Vec<Block>) -> Self {
        Self {
            blocks,
            failure: None,
        }
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rationals(v: &[ehrhart::Rational]) -> String {
    let s: Vec<String> = v.iter().map(format_rational).collect();
    list(&s, true)
}

fn run_count(p: &Polytope, cfg: &RunConfig, method: Method) -> Result<Outcome, CliError> {
    let rows = (cfg.t_min..=cfg.t_max)
        .map(|t| {
            let r = count_report(p, t, method.into())?;
            Ok(Record::new()
                .field("t", r.t)
                .field("closed", r.closed)
                .field("interior", r.interior)
                .field("boundary", r.boundary)
                .field("method", r.method))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(Outcome::ok(vec![Block::Table(rows)]))
}

fn run_triangulate(p: &Polytope) -> Result<Outcome, CliError> {
    let tri = Triangulation::pulling(p)?;
    let summary = Record::new()
        .field("cells", tri.cells().len())
        .field("faces", tri.faces().len())
        .field("interior_faces", tri.interior_faces().len())
        .field("euler_characteristic", tri.euler_characteristic());
    let cells = tri
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let ids: Vec<String> = c.vertex_ids.iter().map(usize::to_string).collect();
            let volume = tri
                .cell_volume(c)
                .map_or("-".to_string(), |v| format_rational(&v));
            Record::new()
                .field("cell", i)
                .field("vertices", list(&ids, false))
                .field("volume", volume)
        })
        .collect();
    Ok(Outcome::ok(vec![
        Block::Single(summary),
        Block::Table(cells),
    ]))
}

fn run_ehrhart(p: &Polytope) -> Result<Outcome, CliError> {
    let l = ehrhart_polynomial(p)?;
    let h = hstar_numerator(&l)?;
    let hs: Vec<String> = h.coeffs.iter().map(ToString::to_string).collect();
    let rec = Record::new()
        .field("polynomial", &l)
        .field("coefficients", rationals(l.coeffs()))
        .field("degree", l.degree())
        .field("hstar", list(&hs, false));
    Ok(Outcome::ok(vec![Block::Single(rec)]))
}

fn run_quasi(p: &Polytope) -> Result<Outcome, CliError> {
    let q = quasi_polynomial(p)?;
    let head = Record::new()
        .field("period", q.period)
        .field("minimal_period", q.minimal_period)
        .field("degree", q.degree());
    let rows = q
        .constituents
        .iter()
        .enumerate()
        .map(|(j, c)| {
            Record::new()
                .field("residue", j)
                .field("coefficients", rationals(c.coeffs()))
        })
        .collect();
    Ok(Outcome::ok(vec![Block::Single(head), Block::Table(rows)]))
}

fn run_reciprocity(p: &Polytope, cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.t_min < 1 {
        return Err(CliError::Usage("reciprocity needs --t-min >= 1".into()));
    }
    let rows: Vec<ReciprocityRow> = if p.is_integral() {
        reciprocity_check(p, cfg.t_max)?
    } else {
        quasi_reciprocity_check(p, &quasi_polynomial(p)?, cfg.t_max)?
    };
    let rows: Vec<_> = rows.into_iter().filter(|r| r.t >= cfg.t_min).collect();
    let failure = rows
        .iter()
        .find(|r| !r.matches)
        .map(|r| format!("reciprocity at t = {}", r.t));
    let table = rows
        .iter()
        .map(|r| {
            Record::new()
                .field("t", r.t)
                .field("l_minus_t", format_rational(&r.value_at_minus_t))
                .field("interior", r.interior)
                .field("match", flag(r.matches))
        })
        .collect();
    Ok(Outcome {
        blocks: vec![Block::Table(table)],
        failure,
    })
}

fn run_pick(p: &Polytope) -> Result<Outcome, CliError> {
    let r = pick_report(p)?;
    let rec = Record::new()
        .field("area", format_rational(&r.area))
        .field("boundary", r.boundary)
        .field("interior", r.interior)
        .field("pick_holds", flag(r.pick_holds))
        .field("polynomial_matches", flag(r.polynomial_matches));
    let failure = (!(r.pick_holds && r.polynomial_matches)).then(|| "pick".to_string());
    Ok(Outcome {
        blocks: vec![Block::Single(rec)],
        failure,
    })
}

fn run_solid_angle(p: &Polytope, cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.t_min < 1 {
        return Err(CliError::Usage("solid-angle needs --t-min >= 1".into()));
    }
    let mut failure = None;
    let mut rows = Vec::new();
    for t in cfg.t_min..=cfg.t_max {
        let r = solid_angle_sum(p, t)?;
        if !r.within(REPORT_TOLERANCE) && failure.is_none() {
            failure = Some(format!("solid-angle sum at t = {t}"));
        }
        rows.push(
            Record::new()
                .field("t", t)
                .field("sum", r.weighted_sum)
                .field("expected", r.expected)
                .field("error", format!("{:.3e}", r.abs_error)),
        );
    }
    let parity = solid_angle_parity_check(p, cfg.t_max)?;
    if !parity.holds && failure.is_none() {
        failure = Some("solid-angle parity".into());
    }
    let fit: Vec<String> = parity.fit.iter().map(|c| format!("{c:.3e}")).collect();
    let summary = Record::new()
        .field("fit", list(&fit, false))
        .field(
            "max_extrapolation_error",
            format!("{:.3e}", parity.max_extrapolation_error),
        )
        .field("even", flag(parity.holds));
    Ok(Outcome {
        blocks: vec![Block::Table(rows), Block::Single(summary)],
        failure,
    })
}

fn run_covering(p: &Polytope, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut failure = None;
    let mut rows = Vec::new();
    for t in cfg.t_min..=cfg.t_max {
        let r = verify_covering(p, t)?;
        if !r.holds() && failure.is_none() {
            failure = Some(format!("covering at t = {t}"));
        }
        rows.push(
            Record::new()
                .field("t", t)
                .field("union", r.q_union_count)
                .field("inclusion_exclusion", r.inclusion_exclusion)
                .field("deficiency", r.deficiency_points.len())
                .field("lhs", r.recurrence_lhs)
                .field("rhs", r.recurrence_rhs)
                .field("holds", flag(r.holds())),
        );
    }
    Ok(Outcome {
        blocks: vec![Block::Table(rows)],
        failure,
    })
}

fn run_verify_all(cfg: &RunConfig) -> Outcome {
    let outcomes = verify_all(cfg.seed);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let rows = outcomes
        .iter()
        .map(|o| {
            let r = Record::new()
                .field("check", &o.name)
                .field("passed", flag(o.passed));
            if o.passed {
                r
            } else {
                r.field("detail", &o.detail)
            }
        })
        .collect();
    let summary = Record::new()
        .field("seed", cfg.seed)
        .field("checks", outcomes.len())
        .field("failed", failed);
    Outcome {
        blocks: vec![Block::Table(rows), Block::Single(summary)],
        failure: outcomes.iter().find(|o| !o.passed).map(|o| o.name.clone()),
    }
}

fn dispatch(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.t_min > cfg.t_max {
        return Err(CliError::Usage(format!(
            "--t-min ({}) exceeds --t-max ({})",
            cfg.t_min, cfg.t_max
        )));
    }
    if cfg.command == Command::VerifyAll {
        return Ok(run_verify_all(cfg));
    }
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("an input polytope file is required".into()))?;
    let p = parse_polytope_file(path)?;
    match cfg.command {
        Command::Count(m) => run_count(&p, cfg, m),
        Command::Triangulate => run_triangulate(&p),
        Command::Ehrhart => run_ehrhart(&p),
        Command::Quasi => run_quasi(&p),
        Command::Reciprocity => run_reciprocity(&p, cfg),
        Command::Pick => run_pick(&p),
        Command::SolidAngle => run_solid_angle(&p, cfg),
        Command::Covering => run_covering(&p, cfg),
        Command::VerifyAll => unreachable!("handled above"),
    }
}

/// Runs one command, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cfg) {
        Ok(outcome) => {
            if let Err(e) = render(out, cfg.format, &outcome.blocks) {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            match outcome.failure {
                Some(name) => {
                    let _ = writeln!(err, "verification failed: {name}");
                    EXIT_VERIFICATION
                }
                None => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
