//! `wcc`: command-line driver for the benchmark cases.
//!
//! Exit codes: 0 on success, 2 on a configuration or usage error, 3 when the
//! solver aborts on an inadmissible state, 1 on I/O and internal failures.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wcc_core::bench::{parse_mesh_list, parse_usize_list, run_case, run_convergence, OutputFormat, RunConfig};
use wcc_core::problems::{CaseId, ProblemSpec};
use wcc_core::scheme::{default_cfl, SchemeConfig};
use wcc_core::stability::{max_stable_nu, stability_table};
use wcc_core::Error;

/// Bisection tolerance for stability bounds.
const STABILITY_TOL: f64 = 1e-4;

#[derive(Debug, Parser)]
#[command(name = "wcc", version, about = "Weighted compact central schemes on staggered meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one case to its end time and write the final state.
    Run(RunArgs),
    /// Error table on a sequence of meshes for a case with an exact solution.
    Converge(ConvergeArgs),
    /// Largest stable Courant number of the linear scheme.
    Stability(StabilityArgs),
    /// List the available cases.
    ListCases,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// `key = value` file; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    case: Option<CaseId>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    tend: Option<f64>,
    /// Disable the limiter.
    #[arg(long)]
    linear: bool,
    /// Limit component-wise instead of in characteristic variables.
    #[arg(long)]
    no_char: bool,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<FormatArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Vtk,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Both,
    Linear,
    Weighted,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[arg(long)]
    case: CaseId,
    /// Comma-separated orders.
    #[arg(long, default_value = "2,3,4")]
    orders: String,
    /// Comma-separated inverse mesh sizes.
    #[arg(long, default_value = "25,50,100,200")]
    meshes: String,
    #[arg(long, value_enum, default_value_t = SchemeArg::Both)]
    scheme: SchemeArg,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    tend: Option<f64>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StabilityArgs {
    #[arg(long, required_unless_present = "table")]
    order: Option<usize>,
    #[arg(long, required_unless_present = "table")]
    candidate: Option<usize>,
    /// Print all orders and candidates as CSV.
    #[arg(long, conflicts_with_all = ["order", "candidate"])]
    table: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_physics() => 3,
        Error::Numeric(_) => 3,
        Error::Io { .. } | Error::Shape(_) => 1,
        _ => 2,
    }
}

fn run_config(a: &RunArgs) -> Result<RunConfig, Error> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            RunConfig::from_text(&text)?
        }
        None => {
            let case = a
                .case
                .ok_or_else(|| Error::config("--case is required without --config"))?;
            RunConfig::new(case, 3)
        }
    };
    if let Some(c) = a.case {
        cfg.case = c;
    }
    if let Some(o) = a.order {
        cfg.order = o;
    }
    cfg.nx = a.nx.or(cfg.nx);
    cfg.ny = a.ny.or(cfg.ny);
    cfg.cfl = a.cfl.or(cfg.cfl);
    cfg.t_end = a.tend.or(cfg.t_end);
    cfg.alpha = a.alpha.or(cfg.alpha);
    cfg.linear |= a.linear;
    if a.no_char {
        cfg.characteristic = false;
    }
    if let Some(o) = &a.out {
        cfg.out = Some(o.clone());
    }
    if let Some(f) = a.format {
        cfg.format = match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Vtk => OutputFormat::Vtk,
        };
    }
    Ok(cfg)
}

fn cmd_run(a: &RunArgs) -> Result<(), Error> {
    let cfg = run_config(a)?;
    let out = run_case(&cfg)?;
    println!(
        "case {} order {}: t = {} after {} half-steps, conservation drift {:.3e}",
        cfg.case,
        cfg.order,
        out.state.time(),
        out.half_steps,
        out.conservation.max_drift()
    );
    if let Some(e) = out.error {
        println!("L1 = {:.6e}, Linf = {:.6e}", e.l1, e.linf);
    }
    Ok(())
}

fn cmd_converge(a: &ConvergeArgs) -> Result<(), Error> {
    let orders = parse_usize_list(&a.orders)?;
    let meshes = parse_mesh_list(&a.meshes)?;
    let spec = ProblemSpec::new(a.case);
    let t_end = a.tend.unwrap_or(spec.t_end);
    let variants: &[bool] = match a.scheme {
        SchemeArg::Both => &[true, false],
        SchemeArg::Linear => &[true],
        SchemeArg::Weighted => &[false],
    };
    let mut csv = String::new();
    for &order in &orders {
        for &linear in variants {
            let mut scheme = if linear {
                SchemeConfig::linear(order)?
            } else {
                SchemeConfig::new(order)?
            };
            scheme.cfl = a.cfl.map_or_else(|| default_cfl(order), Ok)?;
            let table = run_convergence(&spec, &scheme, &meshes, t_end)?;
            let text = table.to_csv();
            if csv.is_empty() {
                csv.push_str(&text);
            } else {
                csv.extend(text.lines().skip(1).map(|l| format!("{l}\n")));
            }
        }
    }
    match &a.out {
        Some(path) => fs::write(path, &csv).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{csv}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn cmd_stability(a: &StabilityArgs) -> Result<(), Error> {
    if a.table {
        println!("order,candidate,max_stable_nu");
        for (q, m, nu) in stability_table(STABILITY_TOL)? {
            println!("{q},{m},{nu:.4}");
        }
        return Ok(());
    }
    let (Some(q), Some(m)) = (a.order, a.candidate) else {
        return Err(Error::config("--order and --candidate are required"));
    };
    println!("{:.3}", max_stable_nu(q, m, STABILITY_TOL)?);
    Ok(())
}

fn cmd_list_cases() {
    for c in CaseId::ALL {
        println!("{:<16} {}", c.as_str(), c.description());
    }
}

fn init_threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("WCC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::config(format!("WCC_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::config(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Converge(a) => cmd_converge(a),
        Command::Stability(a) => cmd_stability(a),
        Command::ListCases => {
            cmd_list_cases();
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
