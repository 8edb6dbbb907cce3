//! Command-line driver: verification suites, eigenchecks, rate tables and
//! simulation, all writing JSON lines (or CSV) with a `"schema": 1` field.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use deformed_hecke::hamiltonian::{apply_h, BetheFunction};
use deformed_hecke::lattice::LatticePoint;
use deformed_hecke::params::Params;
use deformed_hecke::sampling::{self, Stratum};
use deformed_hecke::scalar::{self, Scalar};
use deformed_hecke::stochastic::{
    apply_generator, simulate_batch, total_variation, uniformization_distribution, write_events_jsonl,
    write_occupation_csv, ParticleConfig, PsiFunction, RateTable, StochasticParams,
};
use deformed_hecke::verify::{self, CheckRecord, Suite, SuiteConfig, SCHEMA};
use deformed_hecke::function::LatticeFunction;

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact checks and simulation for the deformed Hecke algebra and its particle system")]
pub struct Cli {
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, env = "HECKE_WORKERS", global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite; exits 0 iff every check passes.
    Verify(VerifyArgs),
    /// Print jump rates for all 1 <= r <= c <= c_max.
    Rates(RatesArgs),
    /// Simulate trajectories of the particle system.
    Simulate(SimulateArgs),
    /// Check an eigenrelation exactly on all chamber points in a box.
    Eigen(EigenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Algebra,
    Duality,
    Theorem,
    Hamiltonian,
    Bethe,
    Identities,
    Stochastic,
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    pub suite: SuiteArg,
    /// Restrict to one rank k.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed constants "alpha:beta:gamma:delta" as integers or n/d fractions.
    #[arg(long, conflicts_with = "params_file")]
    pub params: Option<String>,
    /// File whose first non-comment line holds the constants.
    #[arg(long)]
    pub params_file: Option<PathBuf>,
    /// Largest size for the identity checks.
    #[arg(long, default_value_t = 6)]
    pub m_max: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(clap::Args, Debug)]
pub struct RatesArgs {
    #[arg(long)]
    pub c_max: usize,
    #[arg(long)]
    pub s: String,
    #[arg(long)]
    pub q: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(clap::Args, Debug)]
pub struct SimulateArgs {
    /// Initial positions, weakly decreasing, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub initial: Vec<i64>,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub s: String,
    #[arg(long)]
    pub q: String,
    #[arg(long, default_value_t = 1000)]
    pub trajectories: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write every event as a JSON line to this file.
    #[arg(long)]
    pub events: Option<PathBuf>,
    /// Write occupation numbers at evenly spaced times as CSV to this file.
    #[arg(long)]
    pub occupation: Option<PathBuf>,
    /// Number of sample times for the occupation file, including 0 and t.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    /// Also compute the total-variation distance to the uniformization law.
    #[arg(long)]
    pub compare: bool,
    /// Displacement cutoff of the uniformization comparison.
    #[arg(long, default_value_t = 8)]
    pub displacement: usize,
    /// Largest admissible truncated mass for the comparison.
    #[arg(long, default_value_t = 1e-2)]
    pub mass_bound: f64,
    /// Summary output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Eigen {
    Phi,
    Psi,
}

#[derive(clap::Args, Debug)]
pub struct EigenArgs {
    pub which: Eigen,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Spectral parameters p for phi (comma separated); sampled when absent.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p: Vec<String>,
    /// Spectral parameters z for psi (comma separated); sampled when absent.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// Constants for phi; sampled when absent.
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long, default_value = "1")]
    pub s: String,
    #[arg(long, default_value = "1/2")]
    pub q: String,
    /// Check every chamber point with coordinates in [-radius, radius].
    #[arg(long, default_value_t = 3)]
    pub radius: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs one command, writing records to `--out` or `stdout`.
/// Returns whether every check passed.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Verify(a) => with_output(a.out.as_deref(), stdout, |w| cmd_verify(a, w)),
        Command::Rates(a) => with_output(a.out.as_deref(), stdout, |w| cmd_rates(a, w)),
        Command::Simulate(a) => with_output(a.out.as_deref(), stdout, |w| cmd_simulate(a, w)),
        Command::Eigen(a) => with_output(a.out.as_deref(), stdout, |w| cmd_eigen(a, w)),
    }
}

fn with_output<F>(path: Option<&Path>, stdout: &mut dyn Write, f: F) -> Result<bool>
where
    F: FnOnce(&mut dyn Write) -> Result<bool>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            let ok = f(&mut w)?;
            w.flush()?;
            Ok(ok)
        }
        None => f(stdout),
    }
}

fn json_line<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn read_params_file(path: &Path, k: usize) -> Result<Params> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .with_context(|| format!("{} holds no parameter line", path.display()))?;
    Ok(Params::parse(line, k)?)
}

fn cmd_verify(a: &VerifyArgs, w: &mut dyn Write) -> Result<bool> {
    let k = a.k.unwrap_or(4);
    let params = match (&a.params, &a.params_file) {
        (Some(text), _) => Some(Params::parse(text, k)?),
        (None, Some(path)) => Some(read_params_file(path, k)?),
        (None, None) => None,
    };
    let cfg = SuiteConfig {
        k: a.k,
        trials: a.trials,
        seed: a.seed,
        params,
        m_max: a.m_max,
    };
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::Algebra => vec![Suite::Algebra],
        SuiteArg::Duality => vec![Suite::Duality],
        SuiteArg::Theorem => vec![Suite::Theorem],
        SuiteArg::Hamiltonian => vec![Suite::Hamiltonian],
        SuiteArg::Bethe => vec![Suite::Bethe],
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::Stochastic => vec![Suite::Stochastic],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut records = Vec::new();
    for s in suites {
        records.extend(verify::run_suite(s, &cfg).with_context(|| format!("suite {}", s.name()))?);
    }
    write_records(w, &records, a.format)?;
    Ok(records.iter().all(|r| r.pass))
}

#[derive(Serialize)]
struct CsvCheck<'a> {
    schema: u32,
    suite: &'a str,
    check: &'a str,
    k: Option<usize>,
    m: Option<usize>,
    s: Option<usize>,
    trials: usize,
    passed: usize,
    retries: usize,
    pass: bool,
}

fn write_records(w: &mut dyn Write, records: &[CheckRecord], format: Format) -> Result<()> {
    match format {
        Format::Json => {
            for r in records {
                json_line(w, r)?;
            }
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            for r in records {
                csv.serialize(CsvCheck {
                    schema: r.schema,
                    suite: &r.suite,
                    check: &r.check,
                    k: r.k,
                    m: r.m,
                    s: r.s,
                    trials: r.trials,
                    passed: r.passed,
                    retries: r.retries,
                    pass: r.pass,
                })?;
            }
            csv.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct RateRow {
    schema: u32,
    c: usize,
    r: usize,
    exact: String,
    decimal: f64,
}

fn cmd_rates(a: &RatesArgs, w: &mut dyn Write) -> Result<bool> {
    let sp = StochasticParams::parse(&a.s, &a.q)?;
    let table = RateTable::new(a.c_max, &sp)?;
    let rows = (1..=a.c_max).flat_map(|c| {
        let table = &table;
        (1..=c).map(move |r| RateRow {
            schema: SCHEMA,
            c,
            r,
            exact: scalar::format(table.get(c, r)),
            decimal: scalar::to_f64(table.get(c, r)),
        })
    });
    match a.format {
        Format::Json => {
            for row in rows {
                json_line(w, &row)?;
            }
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            for row in rows {
                csv.serialize(row)?;
            }
            csv.flush()?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct JumpHistogram {
    schema: u32,
    kind: &'static str,
    trajectories: usize,
    mean: f64,
    counts: BTreeMap<usize, usize>,
}

#[derive(Serialize)]
struct Marginal {
    schema: u32,
    kind: &'static str,
    particle: usize,
    counts: BTreeMap<i64, usize>,
}

#[derive(Serialize)]
struct Comparison {
    schema: u32,
    kind: &'static str,
    tv_distance: f64,
    displacement: usize,
    truncated_mass: f64,
}

fn cmd_simulate(a: &SimulateArgs, w: &mut dyn Write) -> Result<bool> {
    if a.initial.is_empty() {
        bail!("--initial needs at least one position");
    }
    if !(a.t >= 0.0 && a.t.is_finite()) {
        bail!("--t must be a finite nonnegative time");
    }
    let sp = StochasticParams::parse(&a.s, &a.q)?;
    let initial = ParticleConfig::new(a.initial.clone())?;
    let trajectories = simulate_batch(&initial, a.t, &sp, a.seed, a.trajectories)?;

    if let Some(path) = &a.events {
        let mut f = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
        write_events_jsonl(&mut f, &trajectories)?;
        f.flush()?;
    }
    if let Some(path) = &a.occupation {
        let n = a.samples.max(2);
        let times: Vec<f64> = (0..n).map(|i| a.t * i as f64 / (n - 1) as f64).collect();
        let mut f = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
        write_occupation_csv(&mut f, &trajectories, &times)?;
        f.flush()?;
    }

    let mut counts = BTreeMap::new();
    for tr in &trajectories {
        *counts.entry(tr.jump_count()).or_insert(0) += 1;
    }
    let total: usize = trajectories.iter().map(|t| t.jump_count()).sum();
    json_line(
        w,
        &JumpHistogram {
            schema: SCHEMA,
            kind: "jump-histogram",
            trajectories: trajectories.len(),
            mean: total as f64 / trajectories.len().max(1) as f64,
            counts,
        },
    )?;
    let finals: Vec<ParticleConfig> = trajectories.iter().map(|t| t.final_config()).collect();
    for particle in 0..initial.rank() {
        let mut counts = BTreeMap::new();
        for c in &finals {
            *counts.entry(c.positions()[particle]).or_insert(0) += 1;
        }
        json_line(
            w,
            &Marginal {
                schema: SCHEMA,
                kind: "final-position",
                particle: particle + 1,
                counts,
            },
        )?;
    }
    if a.compare {
        let dist = uniformization_distribution(&initial, a.t, &sp, a.displacement, a.mass_bound)?;
        json_line(
            w,
            &Comparison {
                schema: SCHEMA,
                kind: "uniformization-comparison",
                tv_distance: total_variation(&finals, &dist),
                displacement: dist.displacement,
                truncated_mass: dist.truncated_mass,
            },
        )?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct EigenReport {
    schema: u32,
    which: &'static str,
    k: usize,
    spectrum: Vec<String>,
    eigenvalue: String,
    points: usize,
    nonzero_residuals: usize,
    pass: bool,
}

fn parse_list(items: &[String]) -> Result<Vec<Scalar>> {
    Ok(items.iter().map(|s| scalar::parse(s)).collect::<Result<_, _>>()?)
}

/// All weakly decreasing points in `[-radius, radius]^k`.
fn chamber_box(k: usize, radius: i64) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, hi: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<LatticePoint>) {
        if cur.len() == k {
            out.push(LatticePoint::new(cur.clone()));
            return;
        }
        for v in (lo..=hi).rev() {
            cur.push(v);
            rec(k, v, lo, cur, out);
            cur.pop();
        }
    }
    rec(k, radius, -radius, &mut cur, &mut out);
    out
}

fn cmd_eigen(a: &EigenArgs, w: &mut dyn Write) -> Result<bool> {
    let mut rng = sampling::rng(a.seed);
    let points = chamber_box(a.k, a.radius);
    let report = match a.which {
        Eigen::Phi => {
            let params = match &a.params {
                Some(t) => Params::parse(t, a.k)?,
                None => sampling::params(&mut rng, a.k, Stratum::Generic)?,
            };
            let p = if a.p.is_empty() {
                sampling::distinct_rationals(&mut rng, a.k, &[Scalar::from_integer(0.into())])?
            } else {
                parse_list(&a.p)?
            };
            if p.len() != a.k {
                bail!("expected {} spectral parameters, got {}", a.k, p.len());
            }
            let b = BetheFunction::new(&p, &params)?;
            let phi = b.to_function();
            let h = apply_h(&phi, &params)?;
            let e = b.eigenvalue();
            let bad = points.iter().filter(|x| h.eval(x) != &e * phi.eval(x)).count();
            EigenReport {
                schema: SCHEMA,
                which: "phi",
                k: a.k,
                spectrum: p.iter().map(scalar::format).collect(),
                eigenvalue: scalar::format(&e),
                points: points.len(),
                nonzero_residuals: bad,
                pass: bad == 0,
            }
        }
        Eigen::Psi => {
            let sp = StochasticParams::parse(&a.s, &a.q)?;
            let z = if a.z.is_empty() {
                let nu = sp.nu()?;
                let mut forbidden = vec![Scalar::from_integer(1.into())];
                if nu != Scalar::from_integer(0.into()) {
                    forbidden.push(Scalar::from_integer(1.into()) / nu);
                }
                sampling::distinct_rationals(&mut rng, a.k, &forbidden)?
            } else {
                parse_list(&a.z)?
            };
            if z.len() != a.k {
                bail!("expected {} spectral parameters, got {}", a.k, z.len());
            }
            let psi = PsiFunction::new(&z, &sp)?;
            let f = {
                let psi = psi.clone();
                LatticeFunction::memoized(a.k, move |x| psi.value(x))
            };
            let e = psi.eigenvalue();
            let mut bad = 0;
            for x in &points {
                let cfg = ParticleConfig::from_point(x.clone())?;
                if apply_generator(&f, &cfg, &sp)? != &e * f.eval(x) {
                    bad += 1;
                }
            }
            EigenReport {
                schema: SCHEMA,
                which: "psi",
                k: a.k,
                spectrum: z.iter().map(scalar::format).collect(),
                eigenvalue: scalar::format(&e),
                points: points.len(),
                nonzero_residuals: bad,
                pass: bad == 0,
            }
        }
    };
    json_line(w, &report)?;
    Ok(report.pass)
}
