//! Command-line interface: equilibrium queries, grid sweeps,
//! transition-boundary extraction, quasi-static path execution,
//! measurement validation, cable-net form-finding and tendon routing.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when the
//! requested computation is degenerate or fails to converge.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use tenseroll_core::app::{self, emit};
use tenseroll_core::formfind::{self, CableNet, FormFindOptions};
use tenseroll_core::geometry::Screw;
use tenseroll_core::model::{default_t12, MassConfig, RobotParams};
use tenseroll_core::routing;
use tenseroll_core::{solve_all, HybridState};

mod reports;
use reports::{FormFindReport, RouteReport};

#[derive(Parser)]
#[command(
    name = "tenseroll",
    version,
    about = "Statics and hybrid kinematics of a two-arc tensegrity rolling robot"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args)]
struct CommonArgs {
    /// Robot parameter file (keys r_m, link_mass_kg, shift_mass_kg, g).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format; defaults to json for single-record commands and csv
    /// for tabular ones. svg is available for sweep and path.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NetArgs {
    /// Cable-net definition file (`edge <v1> <v2> <stiffness> <free_length>`).
    #[arg(long, conflicts_with = "default_net")]
    net: Option<PathBuf>,
    /// Use the built-in 12-cable net.
    #[arg(long)]
    default_net: bool,
    /// Mirror anchor B to positive y (built-in net only).
    #[arg(long)]
    b_plus_y: bool,
}

#[derive(Subcommand)]
enum Command {
    /// All four static equilibrium solutions for one mass configuration.
    Equilibrium {
        /// Internal mass angle of link 1 (degrees, 0-180).
        #[arg(long)]
        theta1: f64,
        /// Internal mass angle of link 2 (degrees, 0-180).
        #[arg(long)]
        theta2: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Full equilibrium grid over the mass-angle square.
    Sweep {
        /// Grid step in degrees; must divide 180 evenly.
        #[arg(long, default_value_t = 5.0)]
        step: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Transition-boundary polylines extracted from a sweep.
    Boundaries {
        #[arg(long, default_value_t = 5.0)]
        step: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Quasi-static path execution with hybrid transitions.
    Path {
        /// Waypoint file: one `theta1_deg theta2_deg` pair per line.
        #[arg(long)]
        waypoints: PathBuf,
        /// Hybrid state at the first waypoint (1-4).
        #[arg(long, default_value_t = 1)]
        start_state: u8,
        /// Largest per-sample change of either mass angle (degrees).
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Mean absolute error of measured contact angles against the model.
    Validate {
        /// Measurement CSV: theta1_deg,theta2_deg,state,phi1_meas_deg,phi2_meas_deg.
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cable-net form-finding by spring-energy minimization.
    Formfind {
        #[command(flatten)]
        net: NetArgs,
        /// Finite-difference gradient norm target.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Simplex evaluation budget per restart.
        #[arg(long, default_value_t = 6000)]
        max_iter: usize,
        /// Seeded multi-start count.
        #[arg(long, default_value_t = 5)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Euler-circuit tendon routing of a cable net.
    Route {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// Failure modes mapped to exit codes.
enum CliError {
    /// Bad invocation or unreadable/malformed input: exit 1.
    Usage(String),
    /// Degenerate or failed computation: exit 2.
    Compute(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
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
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn load_params(common: &CommonArgs) -> Result<RobotParams, CliError> {
    match &common.config {
        Some(path) => RobotParams::from_config_file(path).map_err(usage),
        None => Ok(RobotParams::default()),
    }
}

fn load_net(params: &RobotParams, net: &NetArgs) -> Result<CableNet, CliError> {
    match (&net.net, net.default_net) {
        (Some(path), _) => {
            if net.b_plus_y {
                return Err(CliError::Usage(
                    "--b-plus-y applies to the built-in net only".into(),
                ));
            }
            CableNet::from_file(params.r, path).map_err(usage)
        }
        (None, true) => Ok(CableNet::default_net_with_options(params.r, net.b_plus_y)),
        (None, false) => Err(CliError::Usage(
            "specify a net: --net FILE or --default-net".into(),
        )),
    }
}

fn pick_format(
    common: &CommonArgs,
    default: Format,
    allowed: &[Format],
) -> Result<Format, CliError> {
    let format = common.format.unwrap_or(default);
    if !allowed.contains(&format) {
        return Err(CliError::Usage(format!(
            "format {} is not available for this command",
            match format {
                Format::Csv => "csv",
                Format::Json => "json",
                Format::Svg => "svg",
            }
        )));
    }
    Ok(format)
}

fn write_output(common: &CommonArgs, content: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Equilibrium {
            theta1,
            theta2,
            common,
        } => {
            let params = load_params(&common)?;
            let format = pick_format(&common, Format::Json, &[Format::Json, Format::Csv])?;
            let config = MassConfig::from_degrees(theta1, theta2).map_err(usage)?;
            let solutions = solve_all(&params, &config).map_err(usage)?;
            let records: Vec<app::SolutionRecord> = solutions
                .iter()
                .map(app::SolutionRecord::from_solution)
                .collect();
            let content = match format {
                Format::Json => emit::to_json(&records),
                Format::Csv => emit::solutions_csv(&records),
                Format::Svg => unreachable!(),
            };
            write_output(&common, &content)?;
            if records.iter().any(|r| r.degenerate == 2) {
                return Err(CliError::Compute(format!(
                    "configuration (θ1={theta1}°, θ2={theta2}°) is degenerate"
                )));
            }
            Ok(())
        }
        Command::Sweep { step, common } => {
            let params = load_params(&common)?;
            let format = pick_format(
                &common,
                Format::Csv,
                &[Format::Csv, Format::Json, Format::Svg],
            )?;
            let result = app::sweep(&params, step).map_err(usage)?;
            let content = match format {
                Format::Csv => emit::sweep_csv(&result),
                Format::Json => emit::to_json(&result),
                Format::Svg => emit::sweep_svg(&result, &app::boundaries(&result)),
            };
            write_output(&common, &content)
        }
        Command::Boundaries { step, common } => {
            let params = load_params(&common)?;
            let format = pick_format(&common, Format::Csv, &[Format::Csv, Format::Json])?;
            let result = app::sweep(&params, step).map_err(usage)?;
            let lines = app::boundaries(&result);
            let content = match format {
                Format::Csv => emit::boundaries_csv(&lines),
                Format::Json => emit::to_json(&lines),
                Format::Svg => unreachable!(),
            };
            write_output(&common, &content)
        }
        Command::Path {
            waypoints,
            start_state,
            step,
            common,
        } => {
            let params = load_params(&common)?;
            let format = pick_format(
                &common,
                Format::Csv,
                &[Format::Csv, Format::Json, Format::Svg],
            )?;
            let text = std::fs::read_to_string(&waypoints)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", waypoints.display())))?;
            let points = app::parse_waypoints(&text).map_err(usage)?;
            let start = HybridState::from_id(start_state).map_err(usage)?;
            let trace = app::run_path(&params, &points, start, step).map_err(usage)?;
            let content = match format {
                Format::Csv => emit::path_csv(&trace),
                Format::Json => emit::to_json(&trace),
                Format::Svg => emit::path_svg(&trace),
            };
            write_output(&common, &content)?;
            match &trace.truncated {
                Some(diagnostic) => Err(CliError::Compute(format!("path truncated: {diagnostic}"))),
                None => Ok(()),
            }
        }
        Command::Validate { data, common } => {
            let params = load_params(&common)?;
            let format = pick_format(&common, Format::Json, &[Format::Json, Format::Csv])?;
            let text = std::fs::read_to_string(&data)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", data.display())))?;
            let report = match app::validate(&params, &text) {
                Ok(report) => report,
                Err(app::AppError::BadDataset { reason }) => {
                    return Err(CliError::Compute(format!("validation failed: {reason}")))
                }
                Err(e) => return Err(usage(e)),
            };
            let content = match format {
                Format::Json => emit::to_json(&report),
                Format::Csv => reports::validation_csv(&report),
                Format::Svg => unreachable!(),
            };
            write_output(&common, &content)
        }
        Command::Formfind {
            net,
            tol,
            max_iter,
            restarts,
            seed,
            common,
        } => {
            let params = load_params(&common)?;
            let format = pick_format(&common, Format::Json, &[Format::Json])?;
            let cable_net = load_net(&params, &net)?;
            let opts = FormFindOptions {
                tol,
                max_iters: max_iter,
                restarts,
                seed,
                ..Default::default()
            };
            let result = formfind::form_find(&cable_net, &Screw::zero(), &opts);
            let report = FormFindReport::new(&cable_net, &result, &default_t12());
            let content = match format {
                Format::Json => emit::to_json(&report),
                _ => unreachable!(),
            };
            write_output(&common, &content)?;
            if !result.converged {
                return Err(CliError::Compute(format!(
                    "form-finding did not reach the gradient target (|g| = {:.3e})",
                    result.grad_norm
                )));
            }
            Ok(())
        }
        Command::Route { net, common } => {
            let params = load_params(&common)?;
            let format = pick_format(&common, Format::Json, &[Format::Json, Format::Csv])?;
            let cable_net = load_net(&params, &net)?;
            let path = routing::euler_circuit(&cable_net)
                .map_err(|e| CliError::Compute(format!("routing failed: {e}")))?;
            let report = routing::validate_routing(&path, &cable_net);
            let content = match format {
                Format::Json => emit::to_json(&RouteReport::new(&path, &report)),
                Format::Csv => reports::route_csv(&path),
                Format::Svg => unreachable!(),
            };
            write_output(&common, &content)
        }
    }
}
