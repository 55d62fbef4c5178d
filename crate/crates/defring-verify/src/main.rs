//! Batch verification harness: runs every kernel check across the
//! parameter grid and emits a deterministic JSON report.
//!
//! Exit codes: 0 all checks pass, 1 at least one check fails, 2 usage
//! error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use defring_verify::checks::{self, Grid};
use defring_verify::report::{Invocation, Report};

#[derive(Parser)]
#[command(
    name = "verify",
    version,
    about = "Exact verification suite for the framed deformation ring kernel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Total-degree truncation cap for series computations.
    #[arg(long, default_value_t = 6)]
    cap: u32,
    /// Fix lambda (integer in O); omitted means the {0, 1} grid.
    #[arg(long)]
    lambda: Option<i64>,
    /// Fix mu (integer in O); omitted means the {0, 1} grid, with the
    /// family-appropriate value for point and arc suites.
    #[arg(long)]
    mu: Option<i64>,
    /// Fix kappa (integer in O); omitted means the {0, 1} grid.
    #[arg(long)]
    kappa: Option<i64>,
    /// Restrict point/arc suites to one family
    /// (punkte1 | punkte2 | bogen1 | bogen2).
    #[arg(long)]
    family: Option<String>,
    /// Write the JSON report to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent checks.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Relation generators: origin values, maximal-ideal membership, and
    /// the three shift isomorphisms.
    Relation(CommonArgs),
    /// The delta ideal-membership witness and the idempotent identity.
    Delta(CommonArgs),
    /// Upper-triangular locus identities and the component-splitting
    /// element.
    Triangular(CommonArgs),
    /// The eight explicit points: relation, reduction, component labels.
    Points(CommonArgs),
    /// Connecting arcs: relation, power identities, endpoints, delta,
    /// nilpotence certificates.
    Arcs(CommonArgs),
    /// Case classification on the triangular locus.
    Schnitt(CommonArgs),
    /// Determinantal ideal dimension via Buchberger bases.
    Groebner(CommonArgs),
    /// Determinant-map specialization and the idempotent of the
    /// determinant deformation ring.
    Bijektion(CommonArgs),
    /// Unipotent fiber orders over small artinian rings and exhaustive
    /// commutation checks.
    Finite(CommonArgs),
    /// Every suite.
    All(CommonArgs),
}

impl Command {
    fn label(&self) -> &'static str {
        match self {
            Command::Relation(_) => "relation",
            Command::Delta(_) => "delta",
            Command::Triangular(_) => "triangular",
            Command::Points(_) => "points",
            Command::Arcs(_) => "arcs",
            Command::Schnitt(_) => "schnitt",
            Command::Groebner(_) => "groebner",
            Command::Bijektion(_) => "bijektion",
            Command::Finite(_) => "finite",
            Command::All(_) => "all",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Relation(a)
            | Command::Delta(a)
            | Command::Triangular(a)
            | Command::Points(a)
            | Command::Arcs(a)
            | Command::Schnitt(a)
            | Command::Groebner(a)
            | Command::Bijektion(a)
            | Command::Finite(a)
            | Command::All(a) => a,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::from(0)
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(2)
                }
            };
        }
    };

    let args = cli.command.args().clone();
    if let Some(f) = &args.family {
        if !["punkte1", "punkte2", "bogen1", "bogen2"].contains(&f.as_str()) {
            eprintln!("error: unknown family `{f}` (expected punkte1 | punkte2 | bogen1 | bogen2)");
            return ExitCode::from(2);
        }
    }
    let grid = Grid {
        cap: args.cap,
        lambda: args.lambda,
        mu: args.mu,
        kappa: args.kappa,
        family: args.family.clone(),
    };

    let jobs = match &cli.command {
        Command::Relation(_) => checks::relation_jobs(&grid),
        Command::Delta(_) => checks::delta_jobs(&grid),
        Command::Triangular(_) => checks::triangular_jobs(&grid),
        Command::Points(_) => checks::points_jobs(&grid),
        Command::Arcs(_) => checks::arcs_jobs(&grid),
        Command::Schnitt(_) => checks::schnitt_jobs(&grid),
        Command::Groebner(_) => checks::groebner_jobs(&grid),
        Command::Bijektion(_) => checks::bijektion_jobs(&grid),
        Command::Finite(_) => checks::finite_jobs(&grid),
        Command::All(_) => checks::all_jobs(&grid),
    };

    let threads = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let t0 = Instant::now();
    let timed = checks::run_jobs(jobs, threads.max(1));
    let total_ms = t0.elapsed().as_millis();

    let report = Report::assemble(
        Invocation {
            subcommand: cli.command.label().to_string(),
            cap: args.cap,
            lambda: args.lambda,
            mu: args.mu,
            kappa: args.kappa,
            family: args.family,
        },
        timed,
        total_ms,
    );

    let json = report.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: cannot write report to {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!(
                "{} checks, {} passed, {} failed -> {}",
                report.summary.total,
                report.summary.passed,
                report.summary.failed,
                path.display()
            );
        }
        None => println!("{json}"),
    }

    if report.all_passed() {
        ExitCode::from(0)
    } else {
        ExitCode::from(1)
    }
}
