//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gmfkit_core::family::{check_family_axioms, AxiomVerdict, BoxDomain, ParamWindow, SearchSettings};
use gmfkit_core::jet::DEFAULT_TOL;
use gmfkit_core::moduli::{
    connectivity_check, cofiber_series, d1_oracle_check, gysin_check, hocolim_cofiber_check, mt_series,
    mtgmf_bounds_check, mtgmf_series, sigma_gmf, sigma_mf_cofibration_check, sigma_mf_series,
    wedge_target_series, CheckOutcome, Provenance, Structure,
};
use gmfkit_core::series::{series_bo, series_bso, series_grassmannian};

use crate::error::CliError;
use crate::family_json::{events_csv, parse_family, preset};
use crate::jet_json::{classification_json, parse_jet};
use crate::report::{CheckRecord, VerifyReport};
use crate::series_json::SeriesOut;

pub const MAX_DEGREE_ENV: &str = "GMFKIT_MAX_DEGREE";
pub const DEFAULT_MAX_DEGREE: usize = 32;

#[derive(Debug, Parser)]
#[command(name = "gmfkit", version, about = "Generalized Morse function toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a 3-jet read from a JSON file.
    ClassifyJet {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Also print the linear normal form of a birth–death jet.
        #[arg(long)]
        normal_form: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace birth–death events of a one-parameter family.
    TraceFamily {
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        family: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        t1: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Fiber box `lo,hi`, the same on every axis.
        #[arg(long = "box", default_value = "-2,2", allow_hyphen_values = true)]
        bounds: String,
        #[arg(long, default_value_t = 5)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        newton_tol: f64,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a Poincaré series.
    Series {
        #[arg(long, value_enum)]
        object: SeriesObject,
        #[arg(long)]
        d: u32,
        /// Codimension for `grassmann`: `d`-planes in `R^{d+n}`.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run consistency checks and print a report.
    Verify {
        #[arg(long, value_enum)]
        check: CheckName,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Structure for `gysin`; both when omitted.
        #[arg(long, value_enum)]
        structure: Option<StructureArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesObject {
    Bo,
    Bso,
    Grassmann,
    SigmaMf,
    SigmaGmf,
    Cofiber,
    WedgeTarget,
    Mt,
    Mtso,
    Mtgmf,
}

impl SeriesObject {
    fn name(self) -> &'static str {
        match self {
            SeriesObject::Bo => "bo",
            SeriesObject::Bso => "bso",
            SeriesObject::Grassmann => "grassmann",
            SeriesObject::SigmaMf => "sigma-mf",
            SeriesObject::SigmaGmf => "sigma-gmf",
            SeriesObject::Cofiber => "cofiber",
            SeriesObject::WedgeTarget => "wedge-target",
            SeriesObject::Mt => "mt",
            SeriesObject::Mtso => "mtso",
            SeriesObject::Mtgmf => "mtgmf",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Gysin,
    HocolimCofiber,
    Connectivity,
    D1Oracle,
    SigmaMfCofibration,
    MtgmfBounds,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StructureArg {
    O,
    So,
}

impl From<StructureArg> for Structure {
    fn from(s: StructureArg) -> Self {
        match s {
            StructureArg::O => Structure::O,
            StructureArg::So => Structure::SO,
        }
    }
}

/// Truncation from the flag, else the environment, else 32.
pub fn resolve_max_degree(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Argument(format!("{MAX_DEGREE_ENV}={v:?} is not a degree"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn parse_box(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Argument(format!("--box expects lo,hi, got {s:?}"));
    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo < hi) {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: String::from("<stdout>"),
            source,
        }),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::ClassifyJet {
            input,
            tol,
            normal_form,
            out,
        } => {
            let jet = parse_jet(&read(&input)?)?;
            let c = classification_json(&jet, tol, normal_form)?;
            emit(&out, &to_json(&c)?, stdout)?;
            Ok(0)
        }
        Command::TraceFamily {
            family,
            preset: name,
            t0,
            t1,
            steps,
            bounds,
            grid,
            newton_tol,
            max_iter,
            tol,
            out,
        } => {
            let family = match (family, name) {
                (Some(path), _) => parse_family(&read(&path)?)?,
                (None, Some(name)) => preset(&name)?,
                (None, None) => return Err(CliError::Argument(String::from("need --family or --preset"))),
            };
            if family.param_dim() != 1 {
                return Err(CliError::Malformed(format!(
                    "tracing needs param_dim 1, got {}",
                    family.param_dim()
                )));
            }
            let (lo, hi) = parse_box(&bounds)?;
            let bounds = BoxDomain::cube(family.fiber_dim(), lo, hi);
            let settings = SearchSettings {
                grid_per_axis: grid,
                newton_tol,
                max_iter,
                class_tol: tol,
            };
            let report = check_family_axioms(&family, Some(ParamWindow { t0, t1, steps }), &bounds, &settings)?;
            let trace = report
                .trace
                .as_ref()
                .expect("a window was given, so a trace was run");
            emit(&out, &events_csv(family.fiber_dim(), trace, &report), stdout)?;
            Ok(if report.gmf.verdict == AxiomVerdict::Pass { 0 } else { 1 })
        }
        Command::Series {
            object,
            d,
            n,
            max_degree,
            out,
        } => {
            let nmax = resolve_max_degree(max_degree)?;
            let s = series_out(object, d, n, nmax)?;
            emit(&out, &to_json(&s)?, stdout)?;
            Ok(0)
        }
        Command::Verify {
            check,
            d,
            max_degree,
            structure,
            out,
        } => {
            let nmax = resolve_max_degree(max_degree)?;
            let report = verify(check, d, nmax, structure.map(Structure::from))?;
            emit(&out, &to_json(&report)?, stdout)?;
            Ok(if report.all_acceptable() { 0 } else { 1 })
        }
    }
}

pub fn series_out(object: SeriesObject, d: u32, n: Option<u32>, max_degree: usize) -> Result<SeriesOut, CliError> {
    let name = object.name();
    let nmax = max_degree as i64;
    let exact = |s| Ok(SeriesOut::new(name, d, None, &s, Provenance::Exact));
    match object {
        SeriesObject::Bo => exact(series_bo(d, nmax)),
        SeriesObject::Bso => exact(series_bso(d, nmax)),
        SeriesObject::Grassmann => {
            let n = n.ok_or_else(|| CliError::Argument(String::from("grassmann needs --n")))?;
            Ok(SeriesOut::new(name, d, Some(n), &series_grassmannian(d, n, nmax), Provenance::Exact))
        }
        SeriesObject::SigmaMf => exact(sigma_mf_series(d, nmax)),
        SeriesObject::SigmaGmf => exact(sigma_gmf(d, max_degree)?.series),
        SeriesObject::Cofiber => exact(cofiber_series(&sigma_gmf(d, max_degree)?)),
        SeriesObject::WedgeTarget => exact(wedge_target_series(d, nmax)),
        SeriesObject::Mt | SeriesObject::Mtso => {
            let structure = if object == SeriesObject::Mt { Structure::O } else { Structure::SO };
            let s = mt_series(d, nmax, structure);
            Ok(SeriesOut::new(name, d, None, &s.series, s.provenance))
        }
        SeriesObject::Mtgmf => {
            if d == 0 {
                return Err(CliError::Argument(String::from("mtgmf needs d >= 1")));
            }
            Ok(SeriesOut::mtgmf(d, &mtgmf_series(&sigma_gmf(d, max_degree)?)))
        }
    }
}

fn timed<F>(f: F) -> Result<CheckRecord, CliError>
where
    F: FnOnce() -> Result<CheckOutcome, gmfkit_core::Error>,
{
    let start = Instant::now();
    let outcome = f()?;
    Ok(CheckRecord::new(&outcome, start.elapsed()))
}

pub fn verify(check: CheckName, d: u32, max_degree: usize, structure: Option<Structure>) -> Result<VerifyReport, CliError> {
    let nmax = max_degree as i64;
    let mut records = Vec::new();
    let wants = |c: CheckName| check == c || check == CheckName::All;
    if wants(CheckName::Gysin) {
        let structures = match structure {
            Some(s) => vec![s],
            None => vec![Structure::O, Structure::SO],
        };
        for s in structures {
            records.push(timed(|| Ok(gysin_check(d, nmax, s)))?);
        }
    }
    if wants(CheckName::HocolimCofiber) {
        records.push(timed(|| hocolim_cofiber_check(d, max_degree))?);
    }
    if wants(CheckName::Connectivity) {
        records.push(timed(|| connectivity_check(d, max_degree))?);
    }
    if wants(CheckName::D1Oracle) {
        if check == CheckName::D1Oracle && d != 1 {
            return Err(CliError::Argument(format!("d1-oracle is defined for d = 1, got {d}")));
        }
        records.push(timed(|| d1_oracle_check(max_degree))?);
    }
    if wants(CheckName::SigmaMfCofibration) {
        records.push(timed(|| sigma_mf_cofibration_check(d, max_degree))?);
    }
    if wants(CheckName::MtgmfBounds) {
        records.push(timed(|| mtgmf_bounds_check(d, max_degree))?);
    }
    Ok(VerifyReport { records })
}
