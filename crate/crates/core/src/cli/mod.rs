//! The `toric` command line: argument parsing, dispatch and report output.
//!
//! Exit codes are 0 on success, 2 for bad arguments or input files and 3
//! when a computation fails or a check comes out negative.

mod input;
mod report;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

use crate::binomial_ideal::{is_overweight, primality_report};
use crate::branch_semigroup::{char_exponents_from_semigroup, default_truncation, value_semigroup, TruncatedSeries};
use crate::exact_linalg::LatticeIndex;
use crate::fan_geometry::{
    barycentric_tower, dual_cone, height, orbit_poset, refine_check, semigroup_generators, stellar_subdivision, Cone, Fan,
};
use crate::field::{CoefficientField, Field, Rationals};
use crate::toric_jacobian::{
    find_tame_projections, gamma_from_weights, minor_congruence_check, minor_nonvanishing_on_torus, projection_is_finite,
    RelationMatrix,
};
use crate::zr_space::{cantor_fiber_experiment, distance_d, distance_dtilde, metric_comparison_experiment, thread, dominated_cone};

pub use input::{read_fan, read_preorder, read_system, write_fan, FieldFile, InputError, SystemFile, FORMAT_VERSION};
pub use report::{OrbitRow, Report, TameRow};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "toric", version, about = "Exact computations with plane branches, binomial ideals, fans and preorders")]
pub struct RunConfig {
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value semigroup of the branch (x(t), y(t)).
    Semigroup {
        /// Characteristic of the coefficient field, 0 for Q.
        #[arg(long = "char")]
        characteristic: u64,
        /// Terms of x as exponent:coefficient pairs, e.g. `8:1`.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Work modulo t^T; defaults to 4·ord(x)·ord(y).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        truncation: Option<u64>,
    },
    /// Saturation and primality of the lattice of a binomial system.
    PrimeCheck {
        #[arg(long)]
        system: PathBuf,
    },
    /// Minors of the relation matrix that are prime to p, with their projections.
    Tame {
        #[arg(long)]
        system: PathBuf,
        /// Overrides the characteristic in the system file.
        #[arg(long = "char")]
        characteristic: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random points for the jacobian checks.
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    #[command(subcommand)]
    Fan(FanCommand),
    #[command(subcommand)]
    Preorder(PreorderCommand),
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Debug, Subcommand)]
pub enum FanCommand {
    /// Complete a fan file to all faces and check it is a fan.
    Validate { file: PathBuf },
    /// Dual cone of the cone spanned by JSON rays, e.g. `[[1,0],[1,2]]`.
    Dual {
        #[arg(long)]
        rays: String,
    },
    /// Generators of the semigroup of lattice points of the dual cone.
    Hilbert {
        #[arg(long)]
        rays: String,
    },
    /// Stellar subdivision at a primitive vector.
    Subdivide {
        file: PathBuf,
        #[arg(long)]
        ray: String,
    },
    /// Whether FINE refines COARSE.
    RefineCheck { fine: PathBuf, coarse: PathBuf },
    /// Orbit closure poset and closed points.
    Orbits { file: PathBuf },
    /// Largest absolute ray coordinate.
    Height { file: PathBuf },
}

#[derive(Debug, Clone, Args)]
pub struct TowerArgs {
    /// A fan file; the quadrant fan when omitted.
    #[arg(long)]
    pub fan: Option<PathBuf>,
    /// JSON list of vectors subdivided one per stage.
    #[arg(long, conflicts_with = "barycentric")]
    pub subdivide: Option<String>,
    /// Number of barycentric stages.
    #[arg(long)]
    pub barycentric: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    D,
    Dtilde,
}

#[derive(Debug, Subcommand)]
pub enum PreorderCommand {
    /// Compare two lattice points.
    Compare {
        file: PathBuf,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Whether the preorder is an order, with its canonical rows.
    IsOrder { file: PathBuf },
    /// The cone of a fan dominated by the preorder.
    Dominate {
        file: PathBuf,
        #[arg(long)]
        fan: PathBuf,
    },
    /// Dominated cones along a tower of refinements.
    Thread {
        file: PathBuf,
        #[command(flatten)]
        tower: TowerArgs,
    },
    /// Distance between two preorders of Z^2.
    Dist {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum)]
        metric: Metric,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        height_cap: u64,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
        radius_cap: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Fibre sizes of the orbit maps on closed points along a barycentric tower.
    CantorFibers {
        #[arg(long)]
        fan: Option<PathBuf>,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        stages: u64,
    },
    /// d against d̃ on random pairs of orders of Z^2.
    MetricCompare {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        height_cap: u64,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
        radius_cap: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(InputError),
    Usage(String),
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Usage(_) => EXIT_INPUT,
            CliError::Compute(_) => EXIT_COMPUTE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "input error: {e}"),
            CliError::Usage(m) => write!(f, "input error: {m}"),
            CliError::Compute(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

fn compute<E: fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn json_arg<T: DeserializeOwned>(flag: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

/// Parses `e:c,e:c,...`; a bare `e` means coefficient 1.
pub fn parse_terms(flag: &str, text: &str) -> Result<Vec<(u64, i64)>, CliError> {
    let bad = |m: String| CliError::Usage(format!("--{flag}: {m}"));
    text.split(',')
        .map(|t| {
            let (e, c) = t.trim().split_once(':').unwrap_or((t.trim(), "1"));
            let e = e.trim().parse::<u64>().map_err(|_| bad(format!("bad exponent {e:?}")))?;
            let c = c.trim().parse::<i64>().map_err(|_| bad(format!("bad coefficient {c:?}")))?;
            Ok((e, c))
        })
        .collect()
}

fn semigroup_over<F: Field>(field: &F, truncation: u64, x: &[(u64, i64)], y: &[(u64, i64)]) -> Result<Vec<u64>, CliError> {
    let series = |terms: &[(u64, i64)]| TruncatedSeries::from_terms(field, truncation, terms.iter().map(|&(e, c)| (e, field.from_i64(c))));
    let g = value_semigroup(&series(x), &series(y)).map_err(compute)?;
    Ok(g.generators().to_vec())
}

fn run_semigroup(characteristic: u64, x: &str, y: &str, truncation: Option<u64>) -> Result<Report, CliError> {
    let field = CoefficientField::new(characteristic).map_err(|e| CliError::Usage(format!("--char: {e}")))?;
    let (xs, ys) = (parse_terms("x", x)?, parse_terms("y", y)?);
    let order = |t: &[(u64, i64)]| {
        t.iter().filter(|&&(_, c)| characteristic == 0 || c.rem_euclid(characteristic as i64) != 0).map(|&(e, _)| e).min().unwrap_or(0)
    };
    let truncation = truncation.unwrap_or_else(|| default_truncation(order(&xs).max(1), order(&ys).max(1)));
    let gens = match field.prime_field() {
        Some(fp) => semigroup_over(&fp, truncation, &xs, &ys)?,
        None => semigroup_over(&Rationals, truncation, &xs, &ys)?,
    };
    let g = crate::branch_semigroup::NumericalSemigroup::from_generators(&gens).map_err(compute)?;
    Ok(Report::Semigroup {
        characteristic,
        truncation,
        generators: g.generators().to_vec(),
        multiplicity: g.multiplicity(),
        conductor: g.conductor(),
        gap_count: g.gap_count(),
        char_exponents: char_exponents_from_semigroup(&g).ok().map(|b| b.beta().to_vec()),
    })
}

fn run_tame(system: &PathBuf, characteristic: Option<u64>, seed: u64, trials: u64) -> Result<Report, CliError> {
    let SystemFile { system, gamma } = read_system(system, characteristic)?;
    let p = system.field().characteristic();
    let gamma = gamma.unwrap_or_else(|| gamma_from_weights(system.weights()));
    if gamma.nrows() != system.nvars() {
        return Err(CliError::Usage(format!("gamma has {} rows for {} variables", gamma.nrows(), system.nvars())));
    }
    let rel = RelationMatrix::of_system(&system).map_err(compute)?;
    let found = find_tame_projections(&rel, &gamma, p).map_err(compute)?;
    let names = |idx: &[usize]| idx.iter().map(|&i| system.variables()[i].clone()).collect::<Vec<_>>();
    let mut projections = Vec::new();
    for t in &found {
        projections.push(TameRow {
            kept: names(&t.kept_variables),
            differentiated: names(&t.differentiated),
            rows: t.rows.clone(),
            minor: t.minor_value.clone(),
            index: match &t.index {
                LatticeIndex::Finite(k) => Some(k.clone()),
                LatticeIndex::Infinite => None,
            },
            index_certified: t.index_certified,
            coprime: t.coprime_to(p),
            finite: projection_is_finite(&gamma, &t.kept_variables).map_err(compute)?,
        });
    }
    let trials = trials as usize;
    let (mut congruence, mut nonvanishing) = (None, None);
    if let Some(t) = found.first() {
        if system.is_deformed() {
            nonvanishing = Some(minor_nonvanishing_on_torus(&system, &t.differentiated, &t.rows, trials, seed).map_err(compute)?);
        } else if system.binomials().iter().all(|b| b.lambda() == 1) {
            congruence = Some(minor_congruence_check(&system, &t.differentiated, &t.rows, trials, seed).map_err(compute)?);
        }
    }
    Ok(Report::Tame { characteristic: p, codim: rel.nvars() - gamma.ncols(), projections, congruence, nonvanishing })
}

fn load_fan(path: &PathBuf) -> Result<Fan, CliError> {
    let raw = read_fan(path)?;
    Fan::try_from(raw).map_err(|e| CliError::Compute(format!("{}: {e}", path.display())))
}

fn quadrants() -> Fan {
    Fan::try_from(crate::fan_geometry::RawFan {
        rays: vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        ambient_rank: None,
    })
    .expect("the quadrant fan")
}

fn cone_arg(flag: &str, text: &str) -> Result<Cone, CliError> {
    let rays: Vec<Vec<i64>> = json_arg(flag, text)?;
    Cone::from_rays(&rays).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn run_fan(cmd: &FanCommand) -> Result<Report, CliError> {
    Ok(match cmd {
        FanCommand::Validate { file } => {
            let fan = load_fan(file)?;
            Report::FanValidate {
                cone_count: fan.cones().len(),
                complete: fan.is_complete(),
                closed_points: fan.closed_points().len(),
                height: height(&fan).map_err(compute)?,
                fan,
            }
        }
        FanCommand::Dual { rays } => {
            let cone = cone_arg("rays", rays)?;
            Report::FanDual { dual: dual_cone(&cone), cone }
        }
        FanCommand::Hilbert { rays } => {
            let cone = cone_arg("rays", rays)?;
            let generators = semigroup_generators(&cone).map_err(compute)?;
            Report::FanHilbert { dual: dual_cone(&cone), cone, generators }
        }
        FanCommand::Subdivide { file, ray } => {
            let fan = load_fan(file)?;
            let ray: Vec<i64> = json_arg("ray", ray)?;
            if ray.len() != fan.ambient_rank() {
                return Err(CliError::Usage(format!("--ray: expected {} coordinates", fan.ambient_rank())));
            }
            let fan = stellar_subdivision(&fan, &ray).map_err(compute)?;
            Report::FanSubdivide { ray, fan }
        }
        FanCommand::RefineCheck { fine, coarse } => Report::FanRefineCheck { refines: refine_check(&load_fan(fine)?, &load_fan(coarse)?) },
        FanCommand::Orbits { file } => {
            let fan = load_fan(file)?;
            let poset = orbit_poset(&fan);
            let orbits = poset
                .cones
                .iter()
                .zip(&poset.closure)
                .map(|(c, cl)| OrbitRow { cone: c.clone(), orbit_dim: fan.ambient_rank() - c.dim(), closure: cl.clone() })
                .collect();
            Report::FanOrbits { orbits, closed_points: poset.closed_points }
        }
        FanCommand::Height { file } => Report::FanHeight { height: height(&load_fan(file)?).map_err(compute)? },
    })
}

fn tower(args: &TowerArgs) -> Result<Vec<Fan>, CliError> {
    let base = match &args.fan {
        Some(p) => load_fan(p)?,
        None => quadrants(),
    };
    match (&args.subdivide, args.barycentric) {
        (Some(s), _) => {
            let rays: Vec<Vec<i64>> = json_arg("subdivide", s)?;
            let mut out = vec![base];
            for v in rays {
                let next = stellar_subdivision(out.last().expect("nonempty"), &v).map_err(compute)?;
                out.push(next);
            }
            Ok(out)
        }
        (None, Some(k)) => barycentric_tower(&base, k).map_err(compute),
        (None, None) => Err(CliError::Usage("give --subdivide or --barycentric".into())),
    }
}

fn run_preorder(cmd: &PreorderCommand) -> Result<Report, CliError> {
    Ok(match cmd {
        PreorderCommand::Compare { file, m, n } => {
            let w = read_preorder(file)?;
            let (m, n): (Vec<i64>, Vec<i64>) = (json_arg("m", m)?, json_arg("n", n)?);
            let ord = w.compare(&m, &n).map_err(|e| CliError::Usage(e.to_string()))?;
            let relation = match ord {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            Report::PreorderCompare { preorder: w, m, n, relation: relation.into() }
        }
        PreorderCommand::IsOrder { file } => {
            let w = read_preorder(file)?;
            Report::PreorderIsOrder { canonical: w.canonical(), is_order: w.is_order(), preorder: w }
        }
        PreorderCommand::Dominate { file, fan } => {
            let w = read_preorder(file)?;
            let d = dominated_cone(&w, &load_fan(fan)?).map_err(compute)?;
            Report::PreorderDominate { preorder: w, cone: d.cone, equivalence_face: d.equivalence_face }
        }
        PreorderCommand::Thread { file, tower: args } => {
            let w = read_preorder(file)?;
            let t = thread(&w, &tower(args)?).map_err(compute)?;
            Report::PreorderThread { preorder: w, stages: t.stages.into_iter().map(|s| s.cone).collect() }
        }
        PreorderCommand::Dist { first, second, metric, height_cap, radius_cap } => {
            let (a, b) = (read_preorder(first)?, read_preorder(second)?);
            let (name, cap, distance) = match metric {
                Metric::D => ("d", *height_cap, distance_d(&a, &b, *height_cap).map_err(compute)?),
                Metric::Dtilde => ("dtilde", *radius_cap, distance_dtilde(&a, &b, *radius_cap).map_err(compute)?),
            };
            Report::PreorderDist { metric: name.into(), cap, distance }
        }
    })
}

fn run_experiment(cmd: &ExperimentCommand) -> Result<Report, CliError> {
    Ok(match cmd {
        ExperimentCommand::CantorFibers { fan, stages } => {
            let t = tower(&TowerArgs { fan: fan.clone(), subdivide: None, barycentric: Some(*stages as usize) })?;
            Report::CantorFibers(cantor_fiber_experiment(&t).map_err(compute)?)
        }
        ExperimentCommand::MetricCompare { samples, seed, height_cap, radius_cap } => {
            Report::MetricCompare(metric_comparison_experiment(*samples, *seed, *height_cap, *radius_cap).map_err(compute)?)
        }
    })
}

/// Runs one command. Checks that come out negative (a file that is not a
/// fan) are errors; yes/no answers (`refine-check`, `is-order`,
/// `prime-check`) are reports.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    match &config.command {
        Command::Semigroup { characteristic, x, y, truncation } => run_semigroup(*characteristic, x, y, *truncation),
        Command::PrimeCheck { system } => {
            let SystemFile { system, .. } = read_system(system, None)?;
            Ok(Report::PrimeCheck {
                variables: system.variables().to_vec(),
                characteristic: system.field().characteristic(),
                primality: primality_report(&system).map_err(compute)?,
                overweight: is_overweight(&system),
            })
        }
        Command::Tame { system, characteristic, seed, trials } => run_tame(system, *characteristic, *seed, *trials),
        Command::Fan(c) => run_fan(c),
        Command::Preorder(c) => run_preorder(c),
        Command::Experiment(c) => run_experiment(c),
    }
}

pub fn report_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize") + "\n"
}

/// Parses `args`, runs, prints, and returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return e.exit_code();
        }
    };
    let json = report_json(&report);
    if let Some(path) = &config.output {
        if let Err(e) = std::fs::write(path, &json) {
            let _ = writeln!(err, "input error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    let text = if config.json { json } else { report.to_string() };
    let _ = out.write_all(text.as_bytes());
    0
}

pub fn main_from_env() -> i32 {
    main_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

