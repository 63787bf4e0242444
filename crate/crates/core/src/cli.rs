//! Command-line front end: argument parsing, dispatch and serialization.

use std::f64::consts::PI;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::nu::{self, NuTrace};
use crate::oracle::{
    radial_eigen, radial_eigen_richardson, GridSpec, OracleResult, DEFAULT_GRID_POINTS,
};
use crate::systems::{
    angular_form, angular_reduction, energy_closed_form, energy_rootfind, radial_form,
    spectrum_table, AngularCase, QuantumNumbers, SpectrumEntry, SystemError, SystemParams,
    UnitSystem, Wavefunction,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Below this requested tolerance `verify` extrapolates over two grids.
const RICHARDSON_BELOW: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// `--help` or `--version` output; not an error for the caller.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Info(_) => EXIT_OK,
            CliError::Compute(_) | CliError::Io(_) => EXIT_COMPUTE,
        }
    }
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "nucs",
    version,
    about = "Bound-state spectra of separable non-central potentials",
    after_help = "Exit codes: 0 ok, 1 compute error, 2 usage error, 3 verification tolerance exceeded."
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Closed-form energies over a grid of quantum numbers.
    Spectrum {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        levels: LevelArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare closed form, NU root finding and the finite-difference oracle.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        levels: LevelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Largest accepted relative deviation from the closed form.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sample a normalized eigenfunction on an (r, θ) grid.
    Wavefunction {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        levels: LevelArgs,
        /// Outer radius of the sample grid (defaults to ten radial scales).
        #[arg(long = "r-max")]
        r_max: Option<f64>,
        #[arg(long = "r-points", default_value_t = 50)]
        r_points: usize,
        #[arg(long = "theta-points", default_value_t = 13)]
        theta_points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Dump the k candidates, all (k, π, τ, λ) branches and the selection.
    Trace {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value_t = Part::Radial)]
        part: Part,
        /// Orbital number entering l(l + 1).
        #[arg(long, allow_hyphen_values = true)]
        l: f64,
        /// Energy (radial part only).
        #[arg(long = "E", allow_hyphen_values = true)]
        energy: Option<f64>,
        /// Azimuthal number (angular part only).
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        m: i32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct SystemArgs {
    #[arg(long, value_enum)]
    system: SystemKind,
    #[arg(long = "Z", default_value_t = 1.0)]
    z: f64,
    #[arg(long = "B", default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    #[arg(long = "C", default_value_t = 0.0, allow_hyphen_values = true)]
    c: f64,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    /// Aharonov–Bohm flux Φ.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    flux: f64,
    /// Monopole strength g.
    #[arg(long = "g", default_value_t = 0.0, allow_hyphen_values = true)]
    monopole_g: f64,
    /// Oscillator strength, V = A²r².
    #[arg(long = "A")]
    a: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    #[arg(long = "e-charge", default_value_t = 1.0)]
    e_charge: f64,
}

#[derive(Args, Debug)]
struct LevelArgs {
    /// Radial quantum numbers, `a..b` inclusive or a single value.
    #[arg(long, default_value = "0")]
    n: String,
    /// Polar quantum numbers, `a..b` inclusive or a single value.
    #[arg(long, default_value = "0")]
    ntilde: String,
    /// Azimuthal numbers: comma-separated values or `a..b` ranges.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    m: String,
    #[arg(long = "case", value_enum, default_value_t = CaseArg::Ii)]
    case: CaseArg,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Interior grid points of the radial oracle.
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    points: usize,
    /// Radial cutoff of the oracle grid.
    #[arg(long = "r-max")]
    r_max: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    CoulombRing,
    Hartmann,
    AbMonopole,
    Oscillator,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Radial,
    Angular,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CaseArg {
    I,
    Ii,
}

/// A validated request.
#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub action: Action,
    pub params: SystemParams,
    pub units: UnitSystem,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Levels {
    pub n: (u32, u32),
    pub ntilde: (u32, u32),
    pub m: Vec<i32>,
    pub case: AngularCase,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Spectrum {
        levels: Levels,
    },
    Verify {
        levels: Levels,
        grid: GridSpec,
        tol: f64,
    },
    Wavefunction {
        qn: QuantumNumbers,
        r_max: Option<f64>,
        r_points: usize,
        theta_points: usize,
    },
    Trace {
        part: Part,
        l: f64,
        energy: Option<f64>,
        m: i32,
    },
}

fn parse_range(flag: &str, text: &str) -> Result<(u32, u32), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--{flag}: expected a non-negative integer or range a..b, got '{text}'"
        ))
    };
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b)?),
        None => {
            let v = num(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(CliError::Usage(format!("--{flag}: empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

fn parse_m_list(text: &str) -> Result<Vec<i32>, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--m: expected integers or ranges a..b separated by commas, got '{text}'"
        ))
    };
    let mut out = Vec::new();
    for part in text.split(',') {
        let num = |s: &str| s.trim().parse::<i32>().map_err(|_| bad());
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(CliError::Usage(format!("--m: empty range {a}..{b}")));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn positive(flag: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!(
            "--{flag} must be positive, got {v}"
        )))
    }
}

fn required(flag: &str, v: Option<f64>, system: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --system {system}")))
}

impl SystemArgs {
    fn build(&self) -> Result<(SystemParams, UnitSystem), CliError> {
        let units = UnitSystem {
            hbar: positive("hbar", self.hbar)?,
            mu: positive("mu", self.mu)?,
            e_charge: positive("e-charge", self.e_charge)?,
        };
        let params = match self.system {
            SystemKind::CoulombRing => {
                positive("Z", self.z)?;
                if self.b < 0.0 {
                    return Err(CliError::Usage(format!(
                        "--B must be non-negative, got {}",
                        self.b
                    )));
                }
                SystemParams::CoulombRing {
                    z: self.z,
                    b: self.b,
                    c: self.c,
                }
            }
            SystemKind::Hartmann => SystemParams::Hartmann {
                eta: positive("eta", required("eta", self.eta, "hartmann")?)?,
                sigma: positive("sigma", required("sigma", self.sigma, "hartmann")?)?,
            },
            SystemKind::AbMonopole => SystemParams::AbMonopole {
                z: positive("Z", self.z)?,
                flux: self.flux,
                monopole_g: self.monopole_g,
            },
            SystemKind::Oscillator => {
                if self.b < 0.0 {
                    return Err(CliError::Usage(format!(
                        "--B must be non-negative, got {}",
                        self.b
                    )));
                }
                SystemParams::RingOscillator {
                    a: positive("A", required("A", self.a, "oscillator")?)?,
                    b: self.b,
                }
            }
        };
        params
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok((params, units))
    }
}

impl LevelArgs {
    fn build(&self, params: &SystemParams, units: &UnitSystem) -> Result<Levels, CliError> {
        let m = parse_m_list(&self.m)?;
        for &mi in &m {
            match angular_reduction(params, mi, units) {
                Ok(_) => {}
                Err(SystemError::UnsolvableAngular { lhs, rhs }) => {
                    return Err(CliError::Usage(format!(
                        "--m {mi}: requires (m² + B)² ≥ C², got {lhs} < {rhs}"
                    )))
                }
                Err(e) => return Err(CliError::Usage(e.to_string())),
            }
        }
        Ok(Levels {
            n: parse_range("n", &self.n)?,
            ntilde: parse_range("ntilde", &self.ntilde)?,
            m,
            case: match self.case {
                CaseArg::I => AngularCase::I,
                CaseArg::Ii => AngularCase::Ii,
            },
        })
    }
}

/// Parses and validates `argv` (including the program name).
pub fn parse<I, T>(argv: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    })?;
    match cli.command {
        Sub::Spectrum {
            system,
            levels,
            format,
        } => {
            let (params, units) = system.build()?;
            let levels = levels.build(&params, &units)?;
            Ok(Command {
                action: Action::Spectrum { levels },
                params,
                units,
                format,
            })
        }
        Sub::Verify {
            system,
            levels,
            grid,
            tol,
            format,
        } => {
            let (params, units) = system.build()?;
            let levels = levels.build(&params, &units)?;
            let grid = GridSpec {
                n_points: grid.points,
                r_max: grid.r_max,
            };
            grid.validate()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Command {
                action: Action::Verify {
                    levels,
                    grid,
                    tol: positive("tol", tol)?,
                },
                params,
                units,
                format,
            })
        }
        Sub::Wavefunction {
            system,
            levels,
            r_max,
            r_points,
            theta_points,
            format,
        } => {
            let (params, units) = system.build()?;
            let lv = levels.build(&params, &units)?;
            if lv.n.0 != lv.n.1 || lv.ntilde.0 != lv.ntilde.1 || lv.m.len() != 1 {
                return Err(CliError::Usage(
                    "wavefunction takes single values for --n, --ntilde and --m".into(),
                ));
            }
            if let Some(r) = r_max {
                positive("r-max", r)?;
            }
            if r_points < 2 || theta_points < 2 {
                return Err(CliError::Usage(
                    "--r-points and --theta-points must be at least 2".into(),
                ));
            }
            Ok(Command {
                action: Action::Wavefunction {
                    qn: QuantumNumbers::new(lv.n.0, lv.ntilde.0, lv.m[0]).with_case(lv.case),
                    r_max,
                    r_points,
                    theta_points,
                },
                params,
                units,
                format,
            })
        }
        Sub::Trace {
            system,
            part,
            l,
            energy,
            m,
            format,
        } => {
            let (params, units) = system.build()?;
            if !l.is_finite() {
                return Err(CliError::Usage(format!("--l must be finite, got {l}")));
            }
            if part == Part::Radial && energy.is_none() {
                return Err(CliError::Usage("--E is required for --part radial".into()));
            }
            Ok(Command {
                action: Action::Trace { part, l, energy, m },
                params,
                units,
                format,
            })
        }
    }
}

#[derive(Serialize)]
struct SpectrumCsvRow<'a> {
    system: &'a str,
    n: u32,
    ntilde: u32,
    m: i32,
    l_eff: f64,
    energy: f64,
    method: &'a str,
    single_valued: bool,
}

#[derive(Serialize)]
struct SpectrumDoc<'a> {
    system: &'a SystemParams,
    units: &'a UnitSystem,
    entries: &'a [SpectrumEntry],
    failures: &'a [crate::systems::FailedEntry],
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub system: &'static str,
    pub n: u32,
    pub ntilde: u32,
    pub m: i32,
    pub l_eff: f64,
    pub closed_form: f64,
    pub nu_rootfind: f64,
    pub fd_oracle: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub pass: bool,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    system: &'a SystemParams,
    units: &'a UnitSystem,
    tolerance: f64,
    all_pass: bool,
    rows: &'a [VerifyRow],
}

#[derive(Serialize)]
struct SampleRow {
    r: f64,
    theta: f64,
    phi: f64,
    radial: f64,
    angular: f64,
    value: f64,
    phase: f64,
}

#[derive(Serialize)]
struct WavefunctionDoc<'a> {
    system: &'a SystemParams,
    units: &'a UnitSystem,
    entry: &'a SpectrumEntry,
    samples: &'a [SampleRow],
}

#[derive(Serialize)]
struct TraceDoc<'a> {
    system: &'a SystemParams,
    units: &'a UnitSystem,
    part: &'static str,
    l: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<i32>,
    trace: &'a NuTrace,
}

#[derive(Serialize)]
struct TraceCsvRow {
    k_index: u8,
    sign: &'static str,
    k: f64,
    pi_0: f64,
    pi_1: f64,
    tau_0: f64,
    tau_1: f64,
    tau_slope: f64,
    lambda: f64,
    selected: bool,
}

fn write_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(compute)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv<W: Write, T: Serialize>(out: &mut W, rows: &[T]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(compute)?;
    }
    w.flush()?;
    Ok(())
}

fn spectrum(cmd: &Command, levels: &Levels, out: &mut impl Write) -> Result<i32, CliError> {
    let table = spectrum_table(
        &cmd.params,
        levels.n.1 as i64,
        levels.ntilde.1 as i64,
        &levels.m,
        &cmd.units,
        levels.case,
    )
    .map_err(compute)?;
    let in_range = |q: &QuantumNumbers| q.n >= levels.n.0 && q.ntilde >= levels.ntilde.0;
    let entries: Vec<SpectrumEntry> = table
        .entries
        .into_iter()
        .filter(|e| in_range(&e.qn))
        .collect();
    let failures: Vec<_> = table
        .failures
        .into_iter()
        .filter(|f| in_range(&f.qn))
        .collect();
    match cmd.format {
        Format::Json => write_json(
            out,
            &SpectrumDoc {
                system: &cmd.params,
                units: &cmd.units,
                entries: &entries,
                failures: &failures,
            },
        )?,
        Format::Csv => {
            let rows: Vec<_> = entries
                .iter()
                .map(|e| SpectrumCsvRow {
                    system: cmd.params.name(),
                    n: e.qn.n,
                    ntilde: e.qn.ntilde,
                    m: e.qn.m,
                    l_eff: e.l_eff,
                    energy: e.energy,
                    method: e.method.as_str(),
                    single_valued: e.single_valued,
                })
                .collect();
            write_csv(out, &rows)?;
        }
    }
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_COMPUTE
    })
}

/// Rows of the `verify` table, ordered by `(ñ, m, n)`.
pub fn verify_rows(
    params: &SystemParams,
    levels: &Levels,
    grid: GridSpec,
    tol: f64,
    units: &UnitSystem,
) -> Result<Vec<VerifyRow>, CliError> {
    let groups: Vec<(u32, i32)> = (levels.ntilde.0..=levels.ntilde.1)
        .flat_map(|nt| levels.m.iter().map(move |&m| (nt, m)))
        .collect();
    let per_group = groups
        .par_iter()
        .map(|&(nt, m)| -> Result<Vec<VerifyRow>, CliError> {
            let base = QuantumNumbers::new(0, nt, m).with_case(levels.case);
            let l = energy_closed_form(params, base, units)
                .map_err(compute)?
                .l_eff;
            let count = levels.n.1 as usize + 1;
            let oracle: OracleResult = if tol < RICHARDSON_BELOW {
                radial_eigen_richardson(params, l, count, grid, units)
            } else {
                radial_eigen(params, l, count, grid, units)
            }
            .map_err(compute)?;
            let fd = oracle.richardson_estimate.unwrap_or(oracle.eigenvalues);
            (levels.n.0..=levels.n.1)
                .map(|n| {
                    let qn = QuantumNumbers { n, ..base };
                    let cf = energy_closed_form(params, qn, units).map_err(compute)?;
                    let nu = energy_rootfind(params, qn, units).map_err(compute)?;
                    let fd = fd[n as usize];
                    let abs_dev = (nu.energy - cf.energy).abs().max((fd - cf.energy).abs());
                    let rel_dev = abs_dev / cf.energy.abs();
                    Ok(VerifyRow {
                        system: params.name(),
                        n,
                        ntilde: nt,
                        m,
                        l_eff: cf.l_eff,
                        closed_form: cf.energy,
                        nu_rootfind: nu.energy,
                        fd_oracle: fd,
                        abs_dev,
                        rel_dev,
                        pass: rel_dev <= tol,
                    })
                })
                .collect()
        })
        .collect::<Vec<_>>();
    let mut rows = Vec::new();
    for g in per_group {
        rows.extend(g?);
    }
    Ok(rows)
}

fn verify(
    cmd: &Command,
    levels: &Levels,
    grid: GridSpec,
    tol: f64,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    let rows = verify_rows(&cmd.params, levels, grid, tol, &cmd.units)?;
    let all_pass = rows.iter().all(|r| r.pass);
    match cmd.format {
        Format::Json => write_json(
            out,
            &VerifyDoc {
                system: &cmd.params,
                units: &cmd.units,
                tolerance: tol,
                all_pass,
                rows: &rows,
            },
        )?,
        Format::Csv => write_csv(out, &rows)?,
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY })
}

fn wavefunction(
    cmd: &Command,
    qn: QuantumNumbers,
    r_max: Option<f64>,
    r_points: usize,
    theta_points: usize,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    let wf = Wavefunction::new(&cmd.params, qn, &cmd.units).map_err(compute)?;
    let r_max = r_max.unwrap_or(10.0 * wf.radial_scale());
    let mut samples = Vec::with_capacity(r_points * theta_points);
    for i in 0..r_points {
        let r = r_max * i as f64 / (r_points - 1) as f64;
        for j in 0..theta_points {
            let theta = PI * j as f64 / (theta_points - 1) as f64;
            let s = wf.sample(r, theta, 0.0);
            samples.push(SampleRow {
                r,
                theta,
                phi: s.phi,
                radial: s.radial_value,
                angular: s.angular_value,
                value: s.total_value,
                phase: s.phase,
            });
        }
    }
    match cmd.format {
        Format::Json => write_json(
            out,
            &WavefunctionDoc {
                system: &cmd.params,
                units: &cmd.units,
                entry: &wf.entry,
                samples: &samples,
            },
        )?,
        Format::Csv => write_csv(out, &samples)?,
    }
    Ok(EXIT_OK)
}

fn trace(
    cmd: &Command,
    part: Part,
    l: f64,
    energy: Option<f64>,
    m: i32,
    out: &mut impl Write,
) -> Result<i32, CliError> {
    let form = match part {
        Part::Radial => radial_form(
            &cmd.params,
            l,
            energy.expect("checked in parse"),
            &cmd.units,
        ),
        Part::Angular => angular_form(&cmd.params, m, l, &cmd.units),
    }
    .map_err(compute)?;
    let tr = nu::trace(&form).map_err(compute)?;
    match cmd.format {
        Format::Json => write_json(
            out,
            &TraceDoc {
                system: &cmd.params,
                units: &cmd.units,
                part: match part {
                    Part::Radial => "radial",
                    Part::Angular => "angular",
                },
                l,
                energy: if part == Part::Radial { energy } else { None },
                m: if part == Part::Angular { Some(m) } else { None },
                trace: &tr,
            },
        )?,
        Format::Csv => {
            let rows: Vec<_> = tr
                .branches
                .iter()
                .map(|b| TraceCsvRow {
                    k_index: b.k_index,
                    sign: match b.sign {
                        nu::Sign::Plus => "plus",
                        nu::Sign::Minus => "minus",
                    },
                    k: b.k,
                    pi_0: b.pi.c[0],
                    pi_1: b.pi.c[1],
                    tau_0: b.tau.c[0],
                    tau_1: b.tau.c[1],
                    tau_slope: b.tau_slope,
                    lambda: b.lambda,
                    selected: b.key() == tr.selected.key(),
                })
                .collect();
            write_csv(out, &rows)?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs a parsed command, writing data to `out`. Returns the exit code.
pub fn execute(cmd: &Command, out: &mut impl Write) -> Result<i32, CliError> {
    match &cmd.action {
        Action::Spectrum { levels } => spectrum(cmd, levels, out),
        Action::Verify { levels, grid, tol } => verify(cmd, levels, *grid, *tol, out),
        Action::Wavefunction {
            qn,
            r_max,
            r_points,
            theta_points,
        } => wavefunction(cmd, *qn, *r_max, *r_points, *theta_points, out),
        Action::Trace { part, l, energy, m } => trace(cmd, *part, *l, *energy, *m, out),
    }
}

/// Parse, execute and report; diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = parse(argv).and_then(|cmd| execute(&cmd, out));
    match result {
        Ok(code) => code,
        Err(CliError::Info(text)) => {
            let _ = write!(out, "{text}");
            EXIT_OK
        }
        Err(e) => {
            let text = e.to_string();
            let _ = if text.ends_with('\n') {
                write!(err, "{text}")
            } else {
                writeln!(err, "error: {text}")
            };
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        std::iter::once("nucs".to_string())
            .chain(s.split_whitespace().map(String::from))
            .collect()
    }

    #[test]
    fn parses_hartmann_spectrum() {
        let cmd = parse(argv("spectrum --system hartmann --eta 1 --sigma 1 --m 1 --n 0..2 --ntilde 0..2 --format json")).unwrap();
        assert_eq!(
            cmd.params,
            SystemParams::Hartmann {
                eta: 1.0,
                sigma: 1.0
            }
        );
        assert_eq!(cmd.format, Format::Json);
        match cmd.action {
            Action::Spectrum { levels } => {
                assert_eq!(levels.n, (0, 2));
                assert_eq!(levels.ntilde, (0, 2));
                assert_eq!(levels.m, vec![1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_unsolvable_angular() {
        let err = parse(argv(
            "spectrum --system coulomb-ring --Z 1 --B 1 --C 5 --m 0",
        ))
        .unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        assert!(err.to_string().contains("--m 0"), "{err}");
        assert!(err.to_string().contains("(m² + B)² ≥ C²"), "{err}");
    }

    #[test]
    fn parses_trace() {
        let cmd = parse(argv("trace --system oscillator --A 1 --l 0 --E 2.1213203")).unwrap();
        assert_eq!(
            cmd.action,
            Action::Trace {
                part: Part::Radial,
                l: 0.0,
                energy: Some(2.1213203),
                m: 0
            }
        );
    }

    #[test]
    fn m_lists_and_ranges() {
        assert_eq!(parse_m_list("-2..1").unwrap(), vec![-2, -1, 0, 1]);
        assert_eq!(parse_m_list("3,-1,3").unwrap(), vec![-1, 3]);
        assert!(parse_m_list("1..x").is_err());
        assert_eq!(parse_range("n", "2").unwrap(), (2, 2));
        assert!(parse_range("n", "3..1").is_err());
        assert!(parse_range("n", "-1..1").is_err());
    }

    #[test]
    fn missing_system_flag_names_it() {
        let err = parse(argv("spectrum --system oscillator")).unwrap_err();
        assert!(err.to_string().contains("--A"), "{err}");
        let err = parse(argv("spectrum --system hartmann --eta 1 --sigma -1")).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }
}
