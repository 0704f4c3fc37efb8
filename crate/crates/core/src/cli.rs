//! Command-line front end.
//!
//! `scan` writes an observable table over a momentum grid as CSV, JSON or
//! gnuplot data. `verify` evaluates one point three ways (closed form,
//! Fock-space trace, P-function Monte Carlo) and reports the deltas.
//!
//! Exit codes: 0 success, 1 domain error, 2 invalid flags, 3 oracle
//! disagreement.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::oracle::{fock_observables, p_representation_mc, McConfig, McResult, TruncationConfig};
use crate::scan::{preset, run_scan, Curve, Grid, ScanRequest};
use crate::squeeze::{squeeze_parameter, MediumParams, SpeciesParams};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

/// Relative paths given to `--out` are resolved against this directory.
pub const OUT_DIR_ENV: &str = "BACKTOBACK_OUT_DIR";

/// Relative accuracy the Fock cutoff of `verify` is chosen for.
pub const FOCK_TAIL_TOLERANCE: f64 = 1e-10;
/// Monte Carlo agreement is judged in standard errors.
pub const MC_SIGMAS: f64 = 3.0;
const MC_ERROR_TARGET: f64 = 0.05;

pub const COLUMNS: [&str; 5] = ["k_MeV", "N1", "C2_bb", "C2_bb_minus_1", "C2_id"];

#[derive(Debug, Parser)]
#[command(
    name = "backtoback",
    version,
    about = "Back-to-back correlations from in-medium mass shifts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate N1 and C2 over a momentum grid.
    Scan(ScanArgs),
    /// Cross-check one point against the Fock-space and Monte Carlo oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct VacuumArgs {
    /// Species preset (pion, kaon, phi).
    #[arg(long)]
    species: Option<String>,
    /// Vacuum mass in MeV.
    #[arg(long, allow_negative_numbers = true)]
    m0: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ShiftArgs {
    /// In-medium mass in MeV.
    #[arg(long = "m-star", allow_negative_numbers = true)]
    m_star: Option<f64>,
    /// Fractional mass shift; -0.10 is a 10 % decrease.
    #[arg(long = "shift-frac", allow_negative_numbers = true)]
    shift_frac: Option<f64>,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[command(flatten)]
    vacuum: VacuumArgs,
    #[command(flatten)]
    shift: ShiftArgs,
    /// Freeze-out temperature in MeV.
    #[arg(long, allow_negative_numbers = true)]
    temp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Gnuplot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridArg {
    Linear,
    Log,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    kmin: f64,
    #[arg(long, default_value_t = 2000.0)]
    kmax: f64,
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u32).range(2..))]
    points: u32,
    #[arg(long, value_enum, default_value_t = GridArg::Linear)]
    grid: GridArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the generation timestamp so reruns are byte-identical.
    #[arg(long)]
    reproducible: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Momentum in MeV.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k: f64,
    /// Fock cutoff per mode; the minimal adequate one when absent.
    #[arg(long)]
    nmax: Option<usize>,
    /// Monte Carlo samples; 0 skips the Monte Carlo oracle.
    #[arg(long = "mc-samples", default_value_t = 200_000)]
    mc_samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Relative tolerance for closed form vs Fock trace.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl PointArgs {
    fn resolve(&self) -> Result<(SpeciesParams, MediumParams, f64), Failure> {
        let species = match (&self.vacuum.species, self.vacuum.m0) {
            (Some(label), _) => {
                preset(label).map_err(|e| Failure::Usage(format!("--species: {e}")))?
            }
            (None, Some(m0)) => SpeciesParams::new("custom", m0)?,
            (None, None) => unreachable!("clap enforces the group"),
        };
        let (medium, fraction) = match (self.shift.m_star, self.shift.shift_frac) {
            (Some(m_star), _) => {
                let medium = MediumParams::new(m_star, self.temp)?;
                (medium, medium.shift_fraction(&species))
            }
            (None, Some(f)) => (
                MediumParams::from_shift_fraction(&species, f, self.temp)?,
                f,
            ),
            (None, None) => unreachable!("clap enforces the group"),
        };
        Ok((species, medium, fraction))
    }
}

/// Parameter provenance written ahead of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub shift_fraction: f64,
    pub generated_unix: Option<u64>,
}

/// Full-precision number formatting shared by all output formats.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn row_values(p: &crate::CorrelationPoint) -> [f64; 5] {
    [
        p.k,
        p.n1,
        p.c2_back_to_back,
        p.c2_back_to_back - 1.0,
        p.c2_identical,
    ]
}

fn header_lines(curve: &Curve, prov: &Provenance) -> Vec<String> {
    let req = &curve.request;
    let mut lines = vec![
        format!("backtoback {}", env!("CARGO_PKG_VERSION")),
        format!(
            "species={} m0={} m_star={} shift_frac={} T={}",
            req.species.label,
            req.species.m0,
            req.medium.m_star,
            prov.shift_fraction,
            req.medium.temperature
        ),
        format!(
            "grid={} k_min={} k_max={} points={}",
            req.grid, req.k_min, req.k_max, req.n_points
        ),
    ];
    if let Some(t) = prov.generated_unix {
        lines.push(format!("generated_unix={t}"));
    }
    lines
}

/// Serializes a curve.
///
/// CSV carries the provenance as `#` lines followed by a plain column header;
/// gnuplot output is the same with the column header commented as well; JSON
/// is a bare array of row objects.
pub fn render(curve: &Curve, format: Format, prov: &Provenance) -> String {
    let mut out = String::new();
    match format {
        Format::Csv | Format::Gnuplot => {
            for line in header_lines(curve, prov) {
                writeln!(out, "# {line}").unwrap();
            }
            if format == Format::Gnuplot {
                out.push_str("# ");
            }
            writeln!(out, "{}", COLUMNS.join(",")).unwrap();
            for p in &curve.points {
                let row: Vec<String> = row_values(p).iter().map(|&x| format_number(x)).collect();
                writeln!(out, "{}", row.join(",")).unwrap();
            }
        }
        Format::Json => {
            out.push_str("[\n");
            for (i, p) in curve.points.iter().enumerate() {
                let fields: Vec<String> = COLUMNS
                    .iter()
                    .zip(row_values(p))
                    .map(|(name, x)| format!("\"{name}\": {}", format_number(x)))
                    .collect();
                let sep = if i + 1 < curve.points.len() { "," } else { "" };
                writeln!(out, "  {{{}}}{sep}", fields.join(", ")).unwrap();
            }
            out.push_str("]\n");
        }
    }
    out
}

fn resolve_out_path(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes `contents` through a temporary file in the target directory.
fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn cmd_scan(args: &ScanArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let (species, medium, fraction) = args.point.resolve()?;
    let grid = match args.grid {
        GridArg::Linear => Grid::Linear,
        GridArg::Log => Grid::Logarithmic,
    };
    let req = ScanRequest::new(
        species,
        medium,
        args.kmin,
        args.kmax,
        args.points as usize,
        grid,
    )
    .map_err(|e| Failure::Usage(format!("--kmin/--kmax/--points/--grid: {e}")))?;
    let curve = run_scan(&req)?;
    let prov = Provenance {
        shift_fraction: fraction,
        generated_unix: (!args.reproducible).then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        }),
    };
    let text = render(&curve, args.format, &prov);
    match &args.out {
        Some(path) => write_atomically(&resolve_out_path(path), &text)
            .map_err(|e| Failure::Domain(format!("writing {}: {e}", path.display())))?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Domain(e.to_string()))?,
    }
    Ok(())
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_delta(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let (species, medium, fraction) = args.point.resolve()?;
    if !(args.tolerance > 0.0) {
        return Err(Failure::Usage(format!(
            "--tolerance must be positive, got {}",
            args.tolerance
        )));
    }
    let mode = squeeze_parameter(args.k, &species, &medium)?;
    let auto =
        TruncationConfig::for_relative_accuracy(args.k, &species, &medium, FOCK_TAIL_TOLERANCE)?;
    let cfg = match args.nmax {
        Some(n) => TruncationConfig::new(n, auto.tolerance),
        None => auto,
    };
    let fock = fock_observables(args.k, &species, &medium, cfg)?;

    let mut report = String::new();
    let mut all_ok = true;
    writeln!(
        report,
        "point: species={} m0={} m_star={} shift_frac={} T={} k={}",
        species.label, species.m0, medium.m_star, fraction, medium.temperature, args.k
    )
    .unwrap();
    writeln!(
        report,
        "fock: n_max={} tail_bound={:e}",
        fock.n_max_used, fock.tail_bound
    )
    .unwrap();
    // a tolerance finer than f64 resolution cannot be certified
    let resolvable = args.tolerance >= f64::EPSILON;
    if !resolvable {
        writeln!(
            report,
            "tolerance {:e} is below f64 resolution {:e}",
            args.tolerance,
            f64::EPSILON
        )
        .unwrap();
    }
    writeln!(
        report,
        "{:<8} {:>24} {:>24} {:>12} status",
        "quantity", "analytic", "fock", "rel_delta"
    )
    .unwrap();
    let rows = [
        ("N1", mode.spectrum(), fock.n1),
        ("C2_bb", mode.c2_back_to_back(), fock.c2_bb),
        ("C2_id", 2.0, fock.c2_id),
    ];
    for (name, analytic, oracle) in rows {
        let delta = relative_delta(analytic, oracle);
        let ok = resolvable && delta <= args.tolerance;
        all_ok &= ok;
        writeln!(
            report,
            "{name:<8} {:>24} {:>24} {delta:>12.3e} {}",
            format_number(analytic),
            format_number(oracle),
            status(ok)
        )
        .unwrap();
    }

    if args.mc_samples > 0 {
        let cfg = McConfig::new(args.mc_samples, args.seed, MC_ERROR_TARGET);
        let mc: Option<McResult> = match p_representation_mc(args.k, &species, &medium, cfg) {
            Ok(r) => Some(r),
            Err(Error::VanishingOccupancy) => {
                writeln!(report, "mc: skipped, thermal occupancy is zero").unwrap();
                None
            }
            Err(Error::McNotConverged { result, target }) => {
                writeln!(report, "mc: FAIL, relative standard error above {target:e}").unwrap();
                all_ok = false;
                Some(*result)
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(mc) = mc {
            writeln!(
                report,
                "mc: samples={} seed={} agreement within {MC_SIGMAS} standard errors",
                mc.n_samples, args.seed
            )
            .unwrap();
            writeln!(
                report,
                "{:<8} {:>24} {:>24} {:>12} {:>8} status",
                "quantity", "analytic", "mc", "std_error", "z"
            )
            .unwrap();
            let rows = [
                ("N1", mode.spectrum(), mc.n1),
                ("C2_bb", mode.c2_back_to_back(), mc.c2_bb),
                ("C2_id", 2.0, mc.c2_id),
            ];
            for (name, analytic, est) in rows {
                let z = est.z_score(analytic);
                let ok = z <= MC_SIGMAS;
                all_ok &= ok;
                writeln!(
                    report,
                    "{name:<8} {:>24} {:>24} {:>12.3e} {z:>8.3} {}",
                    format_number(analytic),
                    format_number(est.mean),
                    est.std_error,
                    status(ok)
                )
                .unwrap();
            }
        }
    }
    writeln!(report, "{}", status(all_ok)).unwrap();
    out.write_all(report.as_bytes())
        .map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(all_ok)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Scan(a) => cmd_scan(a, out).map(|()| EXIT_OK),
        Command::Verify(a) => cmd_verify(a, out).map(|ok| if ok { EXIT_OK } else { EXIT_DISAGREE }),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}
