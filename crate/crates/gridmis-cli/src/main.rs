//! Command-line front end: exact MIS counts, partition functions, count
//! tables, entropy estimates, self-verification against the brute-force
//! oracle, and the tiling text-format tools.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments or
//! malformed/invalid input files, 3 resource refusal (width or cell caps).

use std::collections::HashMap;
use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use gridmis::engine::{self, Transfer};
use gridmis::entropy::{self, EntropyEstimate};
use gridmis::mosaic::{
    self, brute_force_partition, enumerate_mis, mis_to_digit_array, mis_to_mosaic, mosaic_to_mis,
    Mosaic, VertexSet,
};
use gridmis::{barmatrix, Error};

#[derive(Parser)]
#[command(name = "gridmis", version, about = "Exact counting of maximal independent sets on grid graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Worker threads for matrix-vector products (default: all cores).
    #[arg(long, global = true, env = "GRIDMIS_THREADS")]
    threads: Option<usize>,

    /// Raise the width budget beyond the default 12 (memory grows as 3^m).
    #[arg(long, global = true, value_name = "WIDTH")]
    max_width_override: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct GridArgs {
    /// Grid width (number of columns).
    #[arg(short = 'm', long = "width", value_parser = clap::value_parser!(u32).range(1..))]
    width: u32,

    /// Grid height (number of rows).
    #[arg(short = 'n', long = "height", value_parser = clap::value_parser!(u32).range(1..))]
    height: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Number of MISs of the m x n grid, exactly.
    Count(GridArgs),

    /// Partition function of the m x n grid as JSON [degree, coeff] pairs.
    Poly(GridArgs),

    /// Table of results for all widths up to --max.
    Table {
        /// Largest width (and height) to tabulate.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,

        /// Emit the full rectangle instead of the lower triangle (n <= m).
        #[arg(long)]
        full: bool,

        /// Tabulate counts or whole partition functions.
        #[arg(long, value_enum, default_value_t = TableMode::Count)]
        mode: TableMode,
    },

    /// Cross-check the engine against the brute-force oracle and the
    /// structural invariants; exit 1 on any mismatch.
    Verify {
        /// Cell cap for the oracle comparisons (at most 24).
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=mosaic::ORACLE_MAX_CELLS))]
        max_cells: u64,

        /// Corrupt the transfer matrix first; the run must then fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },

    /// Exact sigma plus its per-site growth roots for one grid.
    Entropy(GridArgs),

    /// Growth-root convergence table for a fixed width over a height
    /// schedule, as CSV.
    Kappa {
        /// Grid width.
        #[arg(long = "m", value_name = "WIDTH", value_parser = clap::value_parser!(u32).range(1..))]
        width: u32,

        /// Largest height in the schedule.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,

        /// Height increment.
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        step: u32,
    },

    /// Tiling text-format tools.
    Mosaic {
        #[command(subcommand)]
        op: MosaicOp,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableMode {
    Count,
    Poly,
}

#[derive(Subcommand)]
enum MosaicOp {
    /// Convert between the vertex-set (0/1 lines) and tiling (l.b.r.t
    /// tokens) formats; the direction is detected from the input.
    Convert { input: String },

    /// Check the adjacency rule and the boundary requirement.
    Validate { input: String },

    /// Per-vertex counts of selected neighbors (the 0..4 array form).
    Digits { input: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore the error from configuring twice; only reachable in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let width_limit = cli
        .max_width_override
        .unwrap_or(barmatrix::DEFAULT_MAX_WIDTH);
    match run(cli.command, cli.format, width_limit) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_resource_limit() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(command: Command, format: Format, width_limit: u32) -> Result<ExitCode, Error> {
    match command {
        Command::Count(grid) => cmd_count(grid, format, width_limit),
        Command::Poly(grid) => cmd_poly(grid, format, width_limit),
        Command::Table { max, full, mode } => cmd_table(max, full, mode, format, width_limit),
        Command::Verify {
            max_cells,
            inject_fault,
        } => cmd_verify(max_cells, inject_fault, width_limit),
        Command::Entropy(grid) => cmd_entropy(grid, format, width_limit),
        Command::Kappa { width, n_max, step } => cmd_kappa(width, n_max, step, format, width_limit),
        Command::Mosaic { op } => cmd_mosaic(op),
    }
}

fn transfer(width: u32, limit: u32) -> Result<Transfer, Error> {
    Transfer::with_limit(width, limit)
}

fn cmd_count(grid: GridArgs, format: Format, limit: u32) -> Result<ExitCode, Error> {
    let sigma = transfer(grid.width, limit)?.sigma(grid.height);
    let digits = engine::digit_count(&sigma);
    match format {
        Format::Plain => {
            println!("{sigma}");
            println!("digits: {digits}");
        }
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "m": grid.width,
                "n": grid.height,
                "sigma": sigma.to_string(),
                "digits": digits,
                "sci": engine::sci_string(&sigma, 5),
            })
        ),
        Format::Csv => println!("{},{},{sigma},{digits}", grid.width, grid.height),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_poly(grid: GridArgs, format: Format, limit: u32) -> Result<ExitCode, Error> {
    let poly = transfer(grid.width, limit)?.partition(grid.height);
    match format {
        Format::Plain => println!("{}", poly.to_json()),
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "m": grid.width,
                "n": grid.height,
                "partition": serde_json::from_str::<serde_json::Value>(&poly.to_json()).unwrap(),
            })
        ),
        Format::Csv => {
            for (degree, coeff) in poly.terms() {
                println!("{degree},{coeff}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(
    max: u32,
    full: bool,
    mode: TableMode,
    format: Format,
    limit: u32,
) -> Result<ExitCode, Error> {
    match mode {
        TableMode::Count => {
            let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max as usize);
            for m in 1..=max {
                let hi = if full { max } else { m };
                let heights: Vec<u32> = (1..=hi).collect();
                rows.push(transfer(m, limit)?.sigma_profile(&heights));
            }
            match format {
                Format::Plain | Format::Csv => {
                    for row in &rows {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        println!("{}", cells.join(","));
                    }
                }
                Format::Json => {
                    let rows: Vec<Vec<String>> = rows
                        .iter()
                        .map(|row| row.iter().map(|x| x.to_string()).collect())
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "max": max,
                            "triangular": !full,
                            "rows": rows,
                        })
                    );
                }
            }
        }
        TableMode::Poly => {
            for m in 1..=max {
                let t = transfer(m, limit)?;
                let hi = if full { max } else { m };
                for n in 1..=hi {
                    let poly = t.partition(n);
                    match format {
                        Format::Plain | Format::Csv => println!("{m},{n},{}", poly.to_json()),
                        Format::Json => println!(
                            "{}",
                            serde_json::json!({
                                "m": m,
                                "n": n,
                                "partition": serde_json::from_str::<serde_json::Value>(&poly.to_json()).unwrap(),
                            })
                        ),
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_entropy(grid: GridArgs, format: Format, limit: u32) -> Result<ExitCode, Error> {
    let sigma = transfer(grid.width, limit)?.sigma(grid.height);
    let est = EntropyEstimate::from_sigma(grid.width, grid.height, sigma);
    match format {
        Format::Plain => {
            println!("m: {}", est.width);
            println!("n: {}", est.height);
            println!("sigma: {}", est.sigma);
            println!("digits: {}", engine::digit_count(&est.sigma));
            println!("sci: {}", engine::sci_string(&est.sigma, 5));
            println!("root_mn: {:.4} ({:.12})", est.root_mn, est.root_mn);
            println!("root_sup: {:.4} ({:.12})", est.root_sup, est.root_sup);
        }
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "m": est.width,
                "n": est.height,
                "sigma": est.sigma.to_string(),
                "digits": engine::digit_count(&est.sigma),
                "sci": engine::sci_string(&est.sigma, 5),
                "root_mn": est.root_mn,
                "root_sup": est.root_sup,
            })
        ),
        Format::Csv => println!("{}", est.csv_row()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kappa(
    width: u32,
    n_max: u32,
    step: u32,
    format: Format,
    limit: u32,
) -> Result<ExitCode, Error> {
    let heights: Vec<u32> = (1..=n_max / step).map(|k| k * step).collect();
    if heights.is_empty() {
        return Err(Error::TextFormat {
            line: 1,
            col: 1,
            msg: format!("empty schedule: step {step} exceeds n-max {n_max}"),
        });
    }
    let report = entropy::kappa_convergence_report_with_limit(width, &heights, limit)?;
    match format {
        Format::Plain | Format::Csv => {
            for est in &report {
                println!("{}", est.csv_row());
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = report
                .iter()
                .map(|est| {
                    serde_json::json!({
                        "m": est.width,
                        "n": est.height,
                        "digits": engine::digit_count(&est.sigma),
                        "sci": engine::sci_string(&est.sigma, 5),
                        "root_mn": est.root_mn,
                        "root_sup": est.root_sup,
                    })
                })
                .collect();
            println!("{}", serde_json::Value::Array(rows));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Grids ordered by cell count for the oracle comparisons; widths beyond
/// the budget are checked through the transposed engine run (the graph is
/// the same up to relabeling, the oracle still runs natively).
fn verify_grid_list(max_cells: u64, width_limit: u32) -> Vec<(u32, u32)> {
    let mut grids = Vec::new();
    for m in 1..=max_cells as u32 {
        for n in 1..=(max_cells / m as u64) as u32 {
            if m.min(n) <= width_limit {
                grids.push((m, n));
            }
        }
    }
    grids.sort_by_key(|&(m, n)| (m as u64 * n as u64, m));
    grids
}

fn cmd_verify(max_cells: u64, inject_fault: bool, width_limit: u32) -> Result<ExitCode, Error> {
    let mut failures = 0u32;

    // Suite 1: engine partition functions against the brute-force oracle,
    // plus minimum-term agreement. Smallest failing grid is reported.
    let mut transfers: HashMap<u32, Transfer> = HashMap::new();
    let mut checked = 0u32;
    let mut suite_failure: Option<String> = None;
    for (m, n) in verify_grid_list(max_cells, width_limit) {
        let (tm, tn) = if m <= width_limit { (m, n) } else { (n, m) };
        let t = match transfers.entry(tm) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => {
                let mut t = Transfer::with_limit(tm, width_limit)?;
                if inject_fault {
                    t.inject_fault();
                }
                e.insert(t)
            }
        };
        let engine_poly = t.partition(tn);
        let oracle_poly = brute_force_partition(m, n)?;
        if engine_poly != oracle_poly {
            suite_failure = Some(format!(
                "counterexample at ({m}, {n}): engine {} vs oracle {}",
                engine_poly.to_json(),
                oracle_poly.to_json()
            ));
            break;
        }
        checked += 1;
    }
    match suite_failure {
        None => println!("oracle-equivalence: {checked} grids ok"),
        Some(msg) => {
            println!("oracle-equivalence: FAILED after {checked} grids");
            println!("  {msg}");
            failures += 1;
        }
    }

    // Suite 2: tiling round trip on every MIS of every grid up to 16 cells.
    let mut round_trips = 0u64;
    let mut suite_failure: Option<String> = None;
    'round_trip: for (m, n) in verify_grid_list(max_cells.min(16), width_limit) {
        for set in enumerate_mis(m, n)? {
            let ok = mis_to_mosaic(&set)
                .ok()
                .filter(|mosaic| {
                    let v = mosaic.validate();
                    v.suitably_adjacent
                        && v.boundary_ok
                        && mosaic.vertex_tile_count() == set.len()
                        && mosaic_to_mis(mosaic).as_ref() == Ok(&set)
                })
                .is_some();
            if !ok {
                suite_failure = Some(format!("round trip failed at ({m}, {n}) for:\n{set}"));
                break 'round_trip;
            }
            round_trips += 1;
        }
    }
    match suite_failure {
        None => println!("round-trip: {round_trips} MISs ok"),
        Some(msg) => {
            println!("round-trip: FAILED after {round_trips} MISs");
            println!("  {msg}");
            failures += 1;
        }
    }

    // Suite 3: transpose symmetry of the counts.
    let mut pairs = 0u32;
    let mut suite_failure: Option<String> = None;
    'symmetry: for m in 1..=(max_cells as u32).min(width_limit) {
        for n in m + 1..=(max_cells / m as u64) as u32 {
            if n > width_limit {
                continue;
            }
            let a = engine::count_mis(m, n)?;
            let b = engine::count_mis(n, m)?;
            if a != b {
                suite_failure = Some(format!("sigma({m}, {n}) = {a} but sigma({n}, {m}) = {b}"));
                break 'symmetry;
            }
            pairs += 1;
        }
    }
    match suite_failure {
        None => println!("symmetry: {pairs} pairs ok"),
        Some(msg) => {
            println!("symmetry: FAILED after {pairs} pairs");
            println!("  {msg}");
            failures += 1;
        }
    }

    // Suite 4: superadditivity of the counts under joining, both axes.
    let mut triples = 0u32;
    let mut suite_failure: Option<String> = None;
    'fekete: for m1 in 1..=6u32 {
        for m2 in m1..=6u32 {
            let joined = m1 + m2 + 1;
            if joined > 6.min(width_limit) {
                continue;
            }
            for n in 1..=(max_cells / joined as u64) as u32 {
                if !entropy::fekete_check_width(m1, m2, n)? {
                    suite_failure =
                        Some(format!("width inequality fails at ({m1}, {m2}, {n})"));
                    break 'fekete;
                }
                if !entropy::fekete_check_height(n.min(width_limit), m1, m2)? {
                    suite_failure =
                        Some(format!("height inequality fails at ({n}, {m1}, {m2})"));
                    break 'fekete;
                }
                triples += 1;
            }
        }
    }
    match suite_failure {
        None => println!("fekete: {triples} triples ok"),
        Some(msg) => {
            println!("fekete: FAILED after {triples} triples");
            println!("  {msg}");
            failures += 1;
        }
    }

    if failures == 0 {
        println!("all suites passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{failures} suite(s) failed");
        Ok(ExitCode::from(1))
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    let to_err = |e: std::io::Error| Error::TextFormat {
        line: 1,
        col: 1,
        msg: format!("cannot read {path}: {e}"),
    };
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(to_err)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(to_err)
    }
}

/// Vertex-set files contain only 0/1 lines; tiling files contain dotted
/// tile tokens.
fn looks_like_mosaic(text: &str) -> bool {
    text.lines().any(|line| line.contains('.'))
}

fn cmd_mosaic(op: MosaicOp) -> Result<ExitCode, Error> {
    match op {
        MosaicOp::Convert { input } => {
            let text = read_input(&input)?;
            if looks_like_mosaic(&text) {
                let mosaic: Mosaic = text.parse()?;
                println!("{}", mosaic_to_mis(&mosaic)?);
            } else {
                let set: VertexSet = text.parse()?;
                println!("{}", mis_to_mosaic(&set)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        MosaicOp::Validate { input } => {
            let text = read_input(&input)?;
            let mosaic: Mosaic = text.parse()?;
            let validity = mosaic.validate();
            println!("suitably_adjacent: {}", validity.suitably_adjacent);
            println!("boundary_ok: {}", validity.boundary_ok);
            if let Some(violation) = mosaic.first_violation() {
                println!("violation: {violation}");
                return Err(violation);
            }
            Ok(ExitCode::SUCCESS)
        }
        MosaicOp::Digits { input } => {
            let text = read_input(&input)?;
            let set: VertexSet = text.parse()?;
            println!("{}", mis_to_digit_array(&set)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
