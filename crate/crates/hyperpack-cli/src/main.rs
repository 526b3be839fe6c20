//! `hyperpack`: command-line access to the orthoscheme packing library.
//!
//! Four subcommands cover the library surface: `density` evaluates one
//! configuration for one parameter triple, `table` recomputes the three
//! reference tables, `scan` ranks exhaustive integer scans (or runs the
//! real-parameter optimization), and `plot-data` emits two-column CSV
//! samples for external plotting.
//!
//! Records go to stdout in the selected `--format`; errors go to stderr
//! as one-line JSON objects `{code, name, message}` with a matching
//! process exit code: 0 success, 2 invalid parameters, 3 infeasible
//! configuration, 4 empty scan, 5 internal inconsistency.

use std::env;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperpack::packing::{
    self, density_noncongruent, density_one_hyperball, density_two_congruent,
    noncongruent_cases, optimize_noncongruent_with_tolerance, scan_integer, scan_real_p,
    BaseVertex, DensityResult, Heights, NonCongruentConfig, PackingMode, ScanMode,
};
use hyperpack::orthoscheme::SchlafliParams;
use hyperpack::Error;

/// Triples printed in the two-congruent-hyperballs reference table.
const TABLE_1_TRIPLES: [(u32, u32, u32); 16] = [
    (7, 3, 7),
    (7, 3, 8),
    (7, 3, 9),
    (7, 3, 50),
    (8, 3, 8),
    (8, 3, 9),
    (8, 3, 10),
    (8, 3, 50),
    (5, 4, 5),
    (5, 4, 6),
    (5, 4, 7),
    (5, 4, 50),
    (4, 5, 4),
    (4, 5, 5),
    (4, 5, 6),
    (4, 5, 50),
];

/// Triples printed in the one-hyperball reference table.
const TABLE_2_TRIPLES: [(u32, u32, u32); 18] = [
    (7, 3, 8),
    (7, 3, 9),
    (7, 3, 50),
    (8, 3, 9),
    (8, 3, 10),
    (8, 3, 50),
    (5, 4, 5),
    (5, 4, 6),
    (5, 4, 7),
    (5, 4, 50),
    (4, 5, 4),
    (4, 5, 5),
    (4, 5, 6),
    (4, 5, 50),
    (4, 6, 4),
    (4, 6, 5),
    (4, 6, 6),
    (4, 6, 50),
];

/// Triples printed in the non-congruent-hyperballs reference table.
const TABLE_3_TRIPLES: [(u32, u32, u32); 17] = [
    (7, 3, 7),
    (7, 3, 8),
    (7, 3, 9),
    (7, 3, 50),
    (8, 3, 8),
    (8, 3, 9),
    (8, 3, 10),
    (8, 3, 50),
    (5, 4, 5),
    (5, 4, 6),
    (5, 4, 7),
    (5, 4, 50),
    (4, 5, 4),
    (4, 5, 5),
    (4, 5, 6),
    (4, 5, 50),
    (5, 5, 5),
];

#[derive(Parser)]
#[command(
    name = "hyperpack",
    version,
    about = "Volumes, hyperball heights, and packing densities of doubly \
             truncated orthoschemes in hyperbolic 3-space"
)]
struct Cli {
    /// Output format for records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Optimizer x-tolerance, used by `density --mode noncongruent-opt`
    /// and `scan --mode real-p`. Integer scans always use the library
    /// default so their output cannot be perturbed by a flag.
    #[arg(
        long,
        global = true,
        default_value_t = packing::DEFAULT_OPTIMIZER_TOL,
        allow_negative_numbers = true
    )]
    tol: f64,

    /// Worker threads for scans; 0 means one per core. The
    /// HYPERPACK_THREADS environment variable overrides this flag.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the density of one packing configuration.
    Density(DensityArgs),
    /// Recompute a reference table (1: two congruent hyperballs,
    /// 2: one hyperball, 3: optimal non-congruent hyperballs).
    Table {
        /// Which table to produce.
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
    },
    /// Rank an exhaustive integer scan, or optimize over real p.
    Scan(ScanArgs),
    /// Emit two-column CSV samples of a density function.
    PlotData(PlotArgs),
}

#[derive(Args)]
struct DensityArgs {
    /// First parameter of the triple {u, v, w}.
    #[arg(long)]
    u: f64,
    /// Middle parameter of the triple.
    #[arg(long)]
    v: f64,
    /// Last parameter of the triple.
    #[arg(long)]
    w: f64,
    /// Packing configuration to evaluate.
    #[arg(long, value_enum, default_value_t = DensityMode::TwoCongruent)]
    mode: DensityMode,
    /// Blow-up parameter along the first applicable case path; required
    /// for --mode noncongruent and meaningless for the other modes.
    #[arg(long)]
    x: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DensityMode {
    /// Two congruent hyperballs at the common maximal height.
    TwoCongruent,
    /// The best single hyperball.
    OneHyperball,
    /// A specific non-congruent configuration, selected by --x.
    Noncongruent,
    /// The optimal non-congruent configuration.
    NoncongruentOpt,
}

#[derive(Args)]
struct ScanArgs {
    /// Density to rank by (or `real-p` for the continuous family).
    #[arg(long, value_enum)]
    mode: ScanModeArg,
    /// Smallest parameter value scanned (integer modes).
    #[arg(long, default_value_t = 3)]
    min: u32,
    /// Largest parameter value scanned (integer modes).
    #[arg(long, default_value_t = 50)]
    max: u32,
    /// Number of top-ranked results to print (integer modes).
    #[arg(long, default_value_t = 10)]
    top: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanModeArg {
    /// Rank by the two-congruent-hyperball density.
    TwoCongruent,
    /// Rank by the one-hyperball density.
    OneHyperball,
    /// Rank by the optimized non-congruent density.
    NoncongruentOpt,
    /// Optimize the two-congruent density of {p, 3, p} over real
    /// p in (6, 7); prints a single record and ignores --min/--max/--top.
    RealP,
}

#[derive(Args)]
struct PlotArgs {
    /// Which density function to sample.
    #[arg(long, value_enum)]
    kind: PlotKind,
    /// Triple for density-vs-x (all three required for that kind).
    #[arg(long)]
    u: Option<f64>,
    /// Middle parameter for density-vs-x.
    #[arg(long)]
    v: Option<f64>,
    /// Last parameter for density-vs-x.
    #[arg(long)]
    w: Option<f64>,
    /// Lower end of the p-interval for density-vs-p.
    #[arg(long, default_value_t = 6.001)]
    p_lo: f64,
    /// Upper end of the p-interval for density-vs-p.
    #[arg(long, default_value_t = 6.999)]
    p_hi: f64,
    /// Number of uniform samples (at least 2).
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    /// Non-congruent density along the first blow-up case of a triple.
    DensityVsX,
    /// Two-congruent density of {p, 3, p} over an interval of real p.
    DensityVsP,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One human-readable line per record.
    Pretty,
    /// Comma-separated values with a header row.
    Csv,
    /// One JSON object per line.
    Json,
}

/// One serialized result row. All numeric fields are pre-rounded to six
/// fractional digits so every format prints the same values.
#[derive(Serialize)]
struct OutputRecord {
    u: f64,
    v: f64,
    w: f64,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    piece_volume_sum: f64,
    orthoscheme_volume: f64,
    density: f64,
}

/// Rounds to the printed precision of six fractional digits.
fn round6(value: f64) -> f64 {
    (value * 1e6).round() / 1e6
}

impl OutputRecord {
    fn from_result(result: &DensityResult) -> Self {
        let (p0, p3) = result.piece_volumes;
        let (h, h0, h3, x, counted) = match (&result.mode, &result.heights) {
            (PackingMode::TwoCongruent, Heights::Profile(profile)) => {
                (Some(profile.h), None, None, None, p0 + p3)
            }
            (PackingMode::OneHyperball { base }, Heights::Profile(profile)) => {
                let counted = match base {
                    BaseVertex::A0 => p0,
                    BaseVertex::A3 => p3,
                };
                (None, Some(profile.h0), Some(profile.h3), None, counted)
            }
            (PackingMode::NonCongruent, Heights::Config(config)) => {
                (None, Some(config.h0), Some(config.h3), Some(config.x), p0 + p3)
            }
            _ => unreachable!("packing results pair each mode with its heights"),
        };
        OutputRecord {
            u: round6(result.params.u()),
            v: round6(result.params.v()),
            w: round6(result.params.w()),
            mode: result.mode.as_str(),
            h: h.map(round6),
            h0: h0.map(round6),
            h3: h3.map(round6),
            x: x.map(round6),
            piece_volume_sum: round6(counted),
            orthoscheme_volume: round6(result.orthoscheme_volume),
            density: round6(result.density),
        }
    }

    /// Cell value for a named column, or `None` where the record has no
    /// such field.
    fn cell(&self, column: &str) -> Option<String> {
        match column {
            "u" => Some(format_param(self.u)),
            "v" => Some(format_param(self.v)),
            "w" => Some(format_param(self.w)),
            "mode" => Some(self.mode.to_string()),
            "h" => self.h.map(format_value),
            "h0" => self.h0.map(format_value),
            "h3" => self.h3.map(format_value),
            "x" => self.x.map(format_value),
            "piece_volume_sum" => Some(format_value(self.piece_volume_sum)),
            "orthoscheme_volume" => Some(format_value(self.orthoscheme_volume)),
            "density" => Some(format_value(self.density)),
            _ => unreachable!("unknown column {column}"),
        }
    }
}

/// Integer parameters print bare; real ones at full printed precision.
fn format_param(value: f64) -> String {
    if value.fract() == 0.0 {
        format!("{value:.0}")
    } else {
        format!("{value:.6}")
    }
}

fn format_value(value: f64) -> String {
    format!("{value:.6}")
}

/// Columns of the generic record streams (density, scan).
const RECORD_COLUMNS: &[&str] = &[
    "u",
    "v",
    "w",
    "mode",
    "h",
    "h0",
    "h3",
    "x",
    "piece_volume_sum",
    "orthoscheme_volume",
    "density",
];

/// Writes one line to stdout. Exits quietly when the consumer has
/// closed the pipe (`hyperpack table 1 | head`); any other stdout
/// failure is fatal.
fn print_line(line: &str) {
    use std::io::Write;

    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

/// Prints a record stream in the selected format, using the given
/// column set for csv and pretty output.
fn emit_records(records: &[OutputRecord], columns: &[&str], format: Format) {
    match format {
        Format::Csv => {
            print_line(&columns.join(","));
            for record in records {
                let row: Vec<String> = columns
                    .iter()
                    .map(|c| record.cell(c).unwrap_or_default())
                    .collect();
                print_line(&row.join(","));
            }
        }
        Format::Json => {
            for record in records {
                print_line(&serde_json::to_string(record).expect("records always serialize"));
            }
        }
        Format::Pretty => {
            let header: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|record| {
                    columns
                        .iter()
                        .map(|c| record.cell(c).unwrap_or_else(|| "-".to_string()))
                        .collect()
                })
                .collect();
            let mut widths: Vec<usize> = header.iter().map(String::len).collect();
            for row in &rows {
                for (width, cell) in widths.iter_mut().zip(row) {
                    *width = (*width).max(cell.len());
                }
            }
            for row in std::iter::once(&header).chain(rows.iter()) {
                let mut line = String::new();
                for (width, cell) in widths.iter().zip(row) {
                    if !line.is_empty() {
                        line.push_str("  ");
                    }
                    write!(line, "{cell:>width$}").expect("writing to a String");
                }
                print_line(&line);
            }
        }
    }
}

fn to_params(u: f64, v: f64, w: f64) -> Result<SchlafliParams, Error> {
    SchlafliParams::new(u, v, w)
}

fn cmd_density(args: &DensityArgs, tol: f64, format: Format) -> Result<(), Error> {
    let params = to_params(args.u, args.v, args.w)?;
    if args.x.is_some() && args.mode != DensityMode::Noncongruent {
        return Err(Error::Domain(
            "--x only applies to --mode noncongruent".to_string(),
        ));
    }
    let result = match args.mode {
        DensityMode::TwoCongruent => density_two_congruent(&params)?,
        DensityMode::OneHyperball => density_one_hyperball(&params)?,
        DensityMode::Noncongruent => {
            let x = args.x.ok_or_else(|| {
                Error::Domain("--mode noncongruent requires --x".to_string())
            })?;
            let case = noncongruent_cases(&params)?[0];
            // Input-precision courtesy: an --x quoting a rounded table
            // value may overshoot the exact case endpoint by its
            // rounding residue; snap such values onto the path domain.
            // Clearly out-of-domain values stay as given and fail the
            // feasibility check below.
            const X_INPUT_SLACK: f64 = 1e-4;
            let x = if x > case.x_max && x <= case.x_max + X_INPUT_SLACK {
                case.x_max
            } else if (-X_INPUT_SLACK..0.0).contains(&x) {
                0.0
            } else {
                x
            };
            let (h0, h3) = case.heights(x);
            density_noncongruent(
                &params,
                &NonCongruentConfig {
                    h0,
                    h3,
                    x,
                    case: case.label,
                },
            )?
        }
        DensityMode::NoncongruentOpt => optimize_noncongruent_with_tolerance(&params, tol)?,
    };
    emit_records(&[OutputRecord::from_result(&result)], RECORD_COLUMNS, format);
    Ok(())
}

fn cmd_table(which: u8, format: Format) -> Result<(), Error> {
    let (triples, columns): (&[(u32, u32, u32)], &[&str]) = match which {
        1 => (
            &TABLE_1_TRIPLES,
            &["u", "v", "w", "h", "orthoscheme_volume", "piece_volume_sum", "density"],
        ),
        2 => (
            &TABLE_2_TRIPLES,
            &["u", "v", "w", "h0", "h3", "orthoscheme_volume", "piece_volume_sum", "density"],
        ),
        3 => (
            &TABLE_3_TRIPLES,
            &["u", "v", "w", "h0", "h3", "orthoscheme_volume", "piece_volume_sum", "density"],
        ),
        _ => unreachable!("clap validates the table number"),
    };
    let mut records = Vec::with_capacity(triples.len());
    for &(u, v, w) in triples {
        let params = to_params(f64::from(u), f64::from(v), f64::from(w))?;
        let result = match which {
            1 => density_two_congruent(&params)?,
            2 => density_one_hyperball(&params)?,
            _ => packing::optimize_noncongruent(&params)?,
        };
        records.push(OutputRecord::from_result(&result));
    }
    emit_records(&records, columns, format);
    Ok(())
}

fn cmd_scan(args: &ScanArgs, tol: f64, format: Format) -> Result<(), Error> {
    if args.mode == ScanModeArg::RealP {
        let (p_opt, _) = scan_real_p(6.001, 6.999, tol)?;
        let result = density_two_congruent(&SchlafliParams::new(p_opt, 3.0, p_opt)?)?;
        emit_records(&[OutputRecord::from_result(&result)], RECORD_COLUMNS, format);
        return Ok(());
    }
    let mode = match args.mode {
        ScanModeArg::TwoCongruent => ScanMode::TwoCongruent,
        ScanModeArg::OneHyperball => ScanMode::OneHyperball,
        ScanModeArg::NoncongruentOpt => ScanMode::NonCongruentOpt,
        ScanModeArg::RealP => unreachable!("handled above"),
    };
    let range = args.min..=args.max;
    let results = scan_integer(mode, range.clone(), range.clone(), range)?;
    let records: Vec<OutputRecord> = results
        .iter()
        .take(args.top)
        .map(OutputRecord::from_result)
        .collect();
    emit_records(&records, RECORD_COLUMNS, format);
    Ok(())
}

fn cmd_plot_data(args: &PlotArgs) -> Result<(), Error> {
    if args.samples < 2 {
        return Err(Error::Domain(format!(
            "--samples must be at least 2, got {}",
            args.samples
        )));
    }
    match args.kind {
        PlotKind::DensityVsX => {
            let (Some(u), Some(v), Some(w)) = (args.u, args.v, args.w) else {
                return Err(Error::Domain(
                    "--kind density-vs-x requires --u, --v, and --w".to_string(),
                ));
            };
            let params = to_params(u, v, w)?;
            let case = noncongruent_cases(&params)?[0];
            print_line("x,density");
            for i in 0..args.samples {
                let x = case.x_max * i as f64 / (args.samples - 1) as f64;
                let (h0, h3) = case.heights(x);
                let result = density_noncongruent(
                    &params,
                    &NonCongruentConfig {
                        h0,
                        h3,
                        x,
                        case: case.label,
                    },
                )?;
                print_line(&format!("{x:.9},{:.9}", result.density));
            }
        }
        PlotKind::DensityVsP => {
            if !args.p_lo.is_finite()
                || !args.p_hi.is_finite()
                || !(6.0 < args.p_lo && args.p_lo < args.p_hi && args.p_hi <= 7.0)
            {
                return Err(Error::Domain(format!(
                    "density-vs-p requires 6 < p_lo < p_hi <= 7, got [{}, {}]",
                    args.p_lo, args.p_hi
                )));
            }
            print_line("p,density");
            for i in 0..args.samples {
                let p = args.p_lo
                    + (args.p_hi - args.p_lo) * i as f64 / (args.samples - 1) as f64;
                let result = density_two_congruent(&SchlafliParams::new(p, 3.0, p)?)?;
                print_line(&format!("{p:.9},{:.9}", result.density));
            }
        }
    }
    Ok(())
}

/// Maps library errors onto the documented process exit codes.
fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Domain(_)
        | Error::NotHyperbolic { .. }
        | Error::NotDoublyTruncated { .. }
        | Error::AmbiguousClassification { .. }
        | Error::SymmetryUnavailable { .. } => 2,
        Error::Infeasible { .. } => 3,
        Error::EmptyScan => 4,
        Error::QuadratureTolerance { .. } | Error::InternalInconsistency(_) => 5,
    }
}

/// Thread count for scans: HYPERPACK_THREADS overrides `--threads`;
/// 0 keeps the library default of one worker per core.
fn configure_threads(flag: usize) {
    let count = env::var("HYPERPACK_THREADS")
        .ok()
        .and_then(|value| value.parse::<usize>().ok())
        .unwrap_or(flag);
    if count > 0 {
        // A second initialization attempt (tests call this in-process)
        // keeps the first pool; that is fine for a fixed-count run.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(count)
            .build_global();
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    configure_threads(cli.threads);
    match &cli.command {
        Command::Density(args) => cmd_density(args, cli.tol, cli.format),
        Command::Table { which } => cmd_table(*which, cli.format),
        Command::Scan(args) => cmd_scan(args, cli.tol, cli.format),
        Command::PlotData(args) => cmd_plot_data(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            let code = exit_code_for(&error);
            let report = serde_json::json!({
                "code": code,
                "name": error.name(),
                "message": error.to_string(),
            });
            eprintln!("{report}");
            ExitCode::from(code)
        }
    }
}
