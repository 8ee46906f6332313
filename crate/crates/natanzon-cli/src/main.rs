//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage (bad flags, unreadable or malformed
//! config, missing parameters), 2 domain (inadmissible parameters, energies
//! at poles, points outside the chart), 3 numerical (convergence failures,
//! ambiguous roots, failed verification).
//!
//! Output is CSV by default, or a JSON mirror of the same rows with
//! `--format json`. All floats are rendered with `{:.16e}` so repeated runs
//! are byte-identical.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use natanzon::potential::{CoordinateMap, MapConfig, NatanzonParams};
use natanzon::spectrum::bound_spectrum;
use natanzon::verify::{run_all, VerifyConfig};
use natanzon::{green, Error as LibError};

#[derive(Parser)]
#[command(
    name = "natanzon",
    version,
    about = "Bound states and resolvents of the confluent Natanzon potential family",
    after_help = "The six potential parameters may come from flags, from a TOML file \
                  via --config, or both; flags win on conflicts."
)]
struct Cli {
    #[command(flatten)]
    params: ParamFlags,
    /// TOML file holding any of: g2, g1, eta, sigma2, sigma1, c0
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output format for tabulated results
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct ParamFlags {
    /// coefficient of h^2 in the numerator polynomial
    #[arg(long, global = true, allow_hyphen_values = true)]
    g2: Option<f64>,
    /// coefficient of h in the numerator polynomial
    #[arg(long, global = true, allow_hyphen_values = true)]
    g1: Option<f64>,
    /// constant term of the numerator polynomial
    #[arg(long, global = true, allow_hyphen_values = true)]
    eta: Option<f64>,
    /// coefficient of h^2 in R(h)
    #[arg(long, global = true, allow_hyphen_values = true)]
    sigma2: Option<f64>,
    /// coefficient of h in R(h)
    #[arg(long, global = true, allow_hyphen_values = true)]
    sigma1: Option<f64>,
    /// constant term of R(h)
    #[arg(long, global = true, allow_hyphen_values = true)]
    c0: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate r, h(r), V(r) on a uniform grid in r
    Potential {
        #[arg(long, allow_hyphen_values = true)]
        r_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        r_max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Bound levels n = 0.. up to --max-level
    Spectrum {
        #[arg(long, default_value_t = 8)]
        max_level: u32,
    },
    /// Resolvent kernel G(r, r'; epsilon) at one point pair
    Green {
        #[arg(long, allow_hyphen_values = true)]
        epsilon: f64,
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        r_prime: f64,
    },
    /// Run the verification battery and print a JSON summary
    Verify {
        /// seed for the random general-position parameter draws
        #[arg(long)]
        seed: Option<u64>,
        /// number of random parameter sets in the finite-difference check
        #[arg(long)]
        sets: Option<usize>,
        /// multiply every tolerance (1.0 = documented gates)
        #[arg(long)]
        tolerance_scale: Option<f64>,
        /// scale the first disentangling coefficient (defect injection)
        #[arg(long)]
        perturb_bch_a: Option<f64>,
        /// trim random sets and grids for a quick smoke run
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    g2: Option<f64>,
    g1: Option<f64>,
    eta: Option<f64>,
    sigma2: Option<f64>,
    sigma1: Option<f64>,
    c0: Option<f64>,
}

enum CliError {
    Usage(String),
    Domain(String),
    Numerical(String),
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::Domain(_) | LibError::Pole(_) | LibError::DegenerateParameter(_) => {
                CliError::Domain(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

fn load_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed config {}: {e}", path.display())))
}

fn resolve_params(flags: &ParamFlags, config: Option<&Path>) -> Result<NatanzonParams, CliError> {
    let file = match config {
        Some(p) => load_config(p)?,
        None => ConfigFile::default(),
    };
    let mut missing = Vec::new();
    let mut pick = |flag: Option<f64>, filed: Option<f64>, name: &'static str| -> f64 {
        match flag.or(filed) {
            Some(v) => v,
            None => {
                missing.push(name);
                f64::NAN
            }
        }
    };
    let g2 = pick(flags.g2, file.g2, "g2");
    let g1 = pick(flags.g1, file.g1, "g1");
    let eta = pick(flags.eta, file.eta, "eta");
    let sigma2 = pick(flags.sigma2, file.sigma2, "sigma2");
    let sigma1 = pick(flags.sigma1, file.sigma1, "sigma1");
    let c0 = pick(flags.c0, file.c0, "c0");
    if !missing.is_empty() {
        return Err(CliError::Usage(format!(
            "missing potential parameters: {} (pass flags or --config)",
            missing.join(", ")
        )));
    }
    Ok(NatanzonParams::new(g2, g1, eta, sigma2, sigma1, c0)?)
}

/// CSV and JSON emission for uniform rows of named float/bool/int columns.
enum Cell {
    F(f64),
    U(u64),
    B(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(v) => format!("{v:.16e}"),
            Cell::U(v) => v.to_string(),
            Cell::B(v) => v.to_string(),
        }
    }
    fn json(&self) -> String {
        self.csv() // all three render as valid JSON literals
    }
}

fn emit(format: Format, columns: &[&str], rows: &[Vec<Cell>]) {
    match format {
        Format::Csv => {
            println!("{}", columns.join(","));
            for row in rows {
                let line: Vec<String> = row.iter().map(Cell::csv).collect();
                println!("{}", line.join(","));
            }
        }
        Format::Json => {
            let mut out = String::from("{\"rows\":[");
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('{');
                for (j, (name, cell)) in columns.iter().zip(row).enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    out.push_str(&format!("\"{name}\":{}", cell.json()));
                }
                out.push('}');
            }
            out.push_str("]}");
            println!("{out}");
        }
    }
}

fn json_escape(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            '"' => "\\\"".chars().collect::<Vec<_>>(),
            '\\' => "\\\\".chars().collect(),
            '\n' => "\\n".chars().collect(),
            c if (c as u32) < 0x20 => format!("\\u{:04x}", c as u32).chars().collect(),
            c => vec![c],
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Potential { r_min, r_max, points } => {
            if !(r_min < r_max) || points < 2 {
                return Err(CliError::Usage(
                    "need r_min < r_max and at least 2 points".into(),
                ));
            }
            let params = resolve_params(&cli.params, cli.config.as_deref())?;
            let map = CoordinateMap::build(&params, &MapConfig::default())?;
            let step = (r_max - r_min) / (points as f64 - 1.0);
            let mut rows = Vec::with_capacity(points);
            for i in 0..points {
                let r = r_min + step * i as f64;
                let h = map.h_from_r(r)?;
                let v = params.potential_value(h)?;
                rows.push(vec![Cell::F(r), Cell::F(h), Cell::F(v)]);
            }
            emit(cli.format, &["r", "h", "potential"], &rows);
        }
        Cmd::Spectrum { max_level } => {
            let params = resolve_params(&cli.params, cli.config.as_deref())?;
            let levels = bound_spectrum(&params, max_level)?;
            let rows: Vec<Vec<Cell>> = levels
                .iter()
                .map(|l| {
                    vec![
                        Cell::U(l.n as u64),
                        Cell::F(l.epsilon),
                        Cell::F(l.residual),
                        Cell::B(l.threshold),
                    ]
                })
                .collect();
            emit(cli.format, &["n", "epsilon", "residual", "threshold"], &rows);
        }
        Cmd::Green { epsilon, r, r_prime } => {
            let params = resolve_params(&cli.params, cli.config.as_deref())?;
            let map = CoordinateMap::build(&params, &MapConfig::default())?;
            let g = green::green_function(&map, epsilon, r, r_prime)?;
            emit(
                cli.format,
                &["r", "r_prime", "epsilon", "re", "im"],
                &[vec![
                    Cell::F(g.r),
                    Cell::F(g.r_prime),
                    Cell::F(g.epsilon),
                    Cell::F(g.value.re),
                    Cell::F(g.value.im),
                ]],
            );
        }
        Cmd::Verify { seed, sets, tolerance_scale, perturb_bch_a, fast } => {
            let mut cfg = VerifyConfig::default();
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(k) = sets {
                cfg.random_sets = k;
            }
            if let Some(t) = tolerance_scale {
                if !(t > 0.0) {
                    return Err(CliError::Usage("tolerance scale must be positive".into()));
                }
                cfg.tol_scale = t;
            }
            if let Some(a) = perturb_bch_a {
                cfg.bch_a_perturb = a;
            }
            cfg.fast = fast;
            let results = run_all(&cfg);
            let failed = results.iter().filter(|r| !r.passed).count();
            let mut out = String::from("{\"checks\":[");
            for (i, r) in results.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format!(
                    "{{\"name\":\"{}\",\"passed\":{},\"worst\":{:.16e},\"allowed\":{:.16e},\"detail\":\"{}\"}}",
                    json_escape(r.name),
                    r.passed,
                    r.worst,
                    r.allowed,
                    json_escape(&r.detail)
                ));
            }
            out.push_str(&format!(
                "],\"passed\":{},\"failed\":{failed},\"all_passed\":{}}}",
                results.len() - failed,
                failed == 0
            ));
            println!("{out}");
            if failed > 0 {
                return Err(CliError::Numerical(format!(
                    "{failed} verification check(s) failed"
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("domain error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            ExitCode::from(3)
        }
    }
}
