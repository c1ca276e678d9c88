//! `latball`: lattice-point counts in balls, certified discrepancy bounds,
//! and verification sweeps, with machine-readable output.
//!
//! Exit codes: 0 success, 1 a verified inequality failed (a bug, not
//! misuse), 2 bad input, 3 rank-deficient matrix, 4 bound-denominator
//! positivity failure, 5 hypothesis violation (δ·|A| > 1).

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use latball_core::enumerate::{count_ball, BallQuery};
use latball_core::extremal::{u_nu, BoundParams};
use latball_core::lattice::{LatticeBasis, MatrixReal};
use latball_core::verify::{
    poisson_check, sweep_theorem, verify_theorem, DeltaPolicy, SweepConfig,
};
use latball_core::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "latball",
    version,
    about = "Exact lattice-point counts in balls with certified discrepancy bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, ValueEnum)]
enum Format {
    /// JSON document
    #[default]
    Structured,
    /// One CSV header plus one row per record
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count lattice points A(m+x) in the closed ball of radius R
    Count {
        /// Basis matrix file (plain text rows or JSON)
        #[arg(long)]
        matrix: PathBuf,
        /// Ball center coordinate x as comma-separated reals (default 0)
        #[arg(long)]
        center: Option<String>,
        #[arg(long)]
        radius: f64,
        /// Sphere-membership tolerance (default 1e-9·R)
        #[arg(long)]
        boundary_tol: Option<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate the certified bound ω_{N−1}·u_ν(R, δ)
    Bound {
        /// Dimension N ≥ 1
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        radius: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run one inequality trial: count, bound, compare
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        center: Option<String>,
        #[arg(long)]
        boundary_tol: Option<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Randomized inequality trials over seeded random bases
    Sweep {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        /// M is drawn from N..=N+this
        #[arg(long, default_value_t = 3)]
        m_extra_max: u32,
        #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
        entry_min: f64,
        #[arg(long, default_value_t = 2.0)]
        entry_max: f64,
        /// Radius grid as comma-separated reals (default 0.1, 0.2, …, 6.0)
        #[arg(long)]
        r_grid: Option<String>,
        /// δ = fraction·|A|⁻¹ instead of the default δ = |A|⁻¹
        #[arg(long)]
        delta_fraction: Option<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Two-sided Poisson summation check on the Fejér test family
    PoissonCheck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        center: Option<String>,
        /// Test-family bandwidth c with c·√N ≤ δ (default δ/√N)
        #[arg(long)]
        bandwidth: Option<f64>,
        /// Space-side sums run over the box |m|∞ ≤ this
        #[arg(long, default_value_t = 1000)]
        trunc_radius: i64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn bad_input(message: String) -> Self {
        Failure { code: 2, message }
    }
}

fn core_failure(context: &str, err: Error) -> Failure {
    let code = match err {
        Error::RankDeficient { .. } => 3,
        Error::NonpositiveDenominator { .. } => 4,
        Error::HypothesisViolation { .. } => 5,
        _ => 2,
    };
    Failure { code, message: format!("{context}: {err}") }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Count { matrix, center, radius, boundary_tol, format } => {
            let basis = load_basis(&matrix)?;
            let query = build_query(&basis, center.as_deref(), radius, boundary_tol)?;
            let count = count_ball(&basis, &query)
                .map_err(|e| core_failure(&matrix.display().to_string(), e))?;
            print!("{}", output::count_report(&count, format == Format::Csv));
            Ok(0)
        }
        Command::Bound { dim, delta, radius, format } => {
            let params = BoundParams::new(dim, delta, radius)
                .map_err(|e| core_failure("bound parameters", e))?;
            let value = u_nu(&params).map_err(|e| core_failure("bound evaluation", e))?;
            print!("{}", output::bound_report(dim, delta, radius, &value, format == Format::Csv));
            Ok(0)
        }
        Command::Verify { matrix, delta, radius, center, boundary_tol, format } => {
            let basis = load_basis(&matrix)?;
            let query = build_query(&basis, center.as_deref(), radius, boundary_tol)?;
            let record = verify_theorem(&basis, delta, &query)
                .map_err(|e| core_failure(&matrix.display().to_string(), e))?;
            print!("{}", output::verify_report(&record, format == Format::Csv));
            Ok(if record.passed { 0 } else { 1 })
        }
        Command::Sweep {
            trials,
            seed,
            n_min,
            n_max,
            m_extra_max,
            entry_min,
            entry_max,
            r_grid,
            delta_fraction,
            format,
        } => {
            let mut config = SweepConfig::new(trials, seed);
            config.n_min = n_min;
            config.n_max = n_max;
            config.m_extra_max = m_extra_max;
            config.entry_range = (entry_min, entry_max);
            if let Some(grid) = r_grid {
                config.r_grid = parse_reals(&grid, "--r-grid")?;
            }
            if let Some(f) = delta_fraction {
                config.delta_policy = DeltaPolicy::Fraction(f);
            }
            let outcome =
                sweep_theorem(&config).map_err(|e| core_failure("sweep configuration", e))?;
            print!("{}", output::sweep_report(&config, &outcome, format == Format::Csv));

            let completed = outcome.reports.len() - outcome.errors();
            let failures = outcome.inequality_failures();
            let margin = outcome
                .min_margin()
                .map(|m| format!("{m:.16e}"))
                .unwrap_or_else(|| "n/a".to_string());
            eprintln!(
                "trials: {trials}, completed: {completed}, errors: {}, failures: {failures}, min margin: {margin}",
                outcome.errors()
            );
            Ok(if failures == 0 { 0 } else { 1 })
        }
        Command::PoissonCheck { matrix, delta, center, bandwidth, trunc_radius, format } => {
            let basis = load_basis(&matrix)?;
            let n = basis.dim();
            let center = parse_center(center.as_deref(), n)?;
            let bandwidth = bandwidth.unwrap_or(delta / (n as f64).sqrt());
            let result = poisson_check(&basis, delta, &center, bandwidth, trunc_radius)
                .map_err(|e| core_failure(&matrix.display().to_string(), e))?;
            print!("{}", output::poisson_report(&result, format == Format::Csv));
            Ok(0)
        }
    }
}

fn build_query(
    basis: &LatticeBasis,
    center: Option<&str>,
    radius: f64,
    boundary_tol: Option<f64>,
) -> Result<BallQuery, Failure> {
    let center = parse_center(center, basis.dim())?;
    Ok(match boundary_tol {
        Some(tol) => BallQuery::with_boundary_tol(radius, center, tol),
        None => BallQuery::new(radius, center),
    })
}

fn parse_center(center: Option<&str>, n: usize) -> Result<Vec<f64>, Failure> {
    match center {
        None => Ok(vec![0.0; n]),
        Some(text) => {
            let coords = parse_reals(text, "--center")?;
            if coords.len() != n {
                return Err(Failure::bad_input(format!(
                    "--center has {} coordinates but the lattice dimension is {n}",
                    coords.len()
                )));
            }
            Ok(coords)
        }
    }
}

fn parse_reals(text: &str, flag: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Failure::bad_input(format!("{flag}: `{s}` is not a real number")))
        })
        .collect()
}

/// Reads a basis matrix from plain text (one whitespace-separated row per
/// line, `#` comments allowed) or JSON (nested row arrays, or an object
/// with `rows`, `cols`, and flat row-major `entries`).
fn load_matrix(path: &Path) -> Result<MatrixReal, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))?;
    let body = text.trim();
    let (rows, cols, entries) = if body.starts_with('{') || body.starts_with('[') {
        parse_json_matrix(body).map_err(|m| Failure::bad_input(format!("{}: {m}", path.display())))?
    } else {
        parse_text_matrix(body).map_err(|m| Failure::bad_input(format!("{}: {m}", path.display())))?
    };
    MatrixReal::new(rows, cols, entries)
        .map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))
}

fn parse_text_matrix(body: &str) -> Result<(usize, usize, Vec<f64>), String> {
    let mut rows = 0usize;
    let mut cols = 0usize;
    let mut entries = Vec::new();
    for (lineno, line) in body.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in line.split_whitespace() {
            row.push(
                token
                    .parse::<f64>()
                    .map_err(|_| format!("line {}: `{token}` is not a real number", lineno + 1))?,
            );
        }
        if rows == 0 {
            cols = row.len();
        } else if row.len() != cols {
            return Err(format!(
                "line {}: row has {} entries, expected {cols}",
                lineno + 1,
                row.len()
            ));
        }
        rows += 1;
        entries.extend(row);
    }
    if rows == 0 {
        return Err("matrix file contains no rows".to_string());
    }
    Ok((rows, cols, entries))
}

fn parse_json_matrix(body: &str) -> Result<(usize, usize, Vec<f64>), String> {
    let value: serde_json::Value =
        serde_json::from_str(body).map_err(|e| format!("invalid JSON: {e}"))?;
    let as_f64 = |v: &serde_json::Value| -> Result<f64, String> {
        v.as_f64().ok_or_else(|| format!("`{v}` is not a real number"))
    };
    match &value {
        serde_json::Value::Array(rows_value) => {
            let mut rows = 0usize;
            let mut cols = 0usize;
            let mut entries = Vec::new();
            for row in rows_value {
                let row = row.as_array().ok_or("expected an array of row arrays")?;
                if rows == 0 {
                    cols = row.len();
                } else if row.len() != cols {
                    return Err(format!(
                        "row {} has {} entries, expected {cols}",
                        rows + 1,
                        row.len()
                    ));
                }
                for v in row {
                    entries.push(as_f64(v)?);
                }
                rows += 1;
            }
            if rows == 0 {
                return Err("matrix has no rows".to_string());
            }
            Ok((rows, cols, entries))
        }
        serde_json::Value::Object(obj) => {
            let rows = obj
                .get("rows")
                .and_then(|v| v.as_u64())
                .ok_or("missing integer field `rows`")? as usize;
            let cols = obj
                .get("cols")
                .and_then(|v| v.as_u64())
                .ok_or("missing integer field `cols`")? as usize;
            let entries = obj
                .get("entries")
                .and_then(|v| v.as_array())
                .ok_or("missing array field `entries`")?
                .iter()
                .map(as_f64)
                .collect::<Result<Vec<f64>, String>>()?;
            Ok((rows, cols, entries))
        }
        _ => Err("expected a JSON array or object".to_string()),
    }
}

fn load_basis(path: &Path) -> Result<LatticeBasis, Failure> {
    let matrix = load_matrix(path)?;
    LatticeBasis::from_matrix(matrix, LatticeBasis::DEFAULT_RANK_TOL)
        .map_err(|e| core_failure(&path.display().to_string(), e))
}
