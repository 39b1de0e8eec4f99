//! Command-line front end: single runs, experiment presets, SVG
//! renderings, the diversity-optimum oracle and correlation reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use tspdiv::diversity::{optimal_gtype, Measure, Population};
use tspdiv::ea::{self, EaConfig, InitMode};
use tspdiv::harness::corr::{correlation_report, scatter_csv};
use tspdiv::harness::records::{
    emit_records, load_artifact, load_records, save_artifact, RecordFormat, RecordRow, RunArtifact,
};
use tspdiv::harness::render::{render_edge_counts, render_population};
use tspdiv::harness::{load_instance, run_plan, InstanceSpec, Preset};
use tspdiv::mutation::{MutationKind, MutationStyle};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "tspdiv", version, about = "Evolve diverse sets of TSP tours")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the (mu+1)-EA once and report the final population scores.
    Run(RunArgs),
    /// Run a named experiment battery and emit per-run records.
    Plan(PlanArgs),
    /// Render a saved run artifact as SVG.
    Render(RenderArgs),
    /// Print the diversity optimum for (n, mu) and dump an optimal population.
    Oracle(OracleArgs),
    /// Pearson correlation between sigma and div over a records file.
    Corr(CorrArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TSPLIB .tsp file (requires --opt-tour).
    #[arg(long, conflicts_with = "unit")]
    instance: Option<PathBuf>,
    /// Unit-weight complete graph on N vertices.
    #[arg(long, value_name = "N")]
    unit: Option<usize>,
    /// TSPLIB .opt.tour file; its cost is used as OPT.
    #[arg(long)]
    opt_tour: Option<PathBuf>,
    #[arg(long)]
    mu: usize,
    /// Quality threshold factor: accept tours of cost <= (1+alpha)*OPT.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value = "ed")]
    measure: Measure,
    #[arg(long, default_value = "2opt")]
    mutation: MutationKind,
    /// k-opt realisation: inversion (default) or reconnection.
    #[arg(long, default_value = "inversion")]
    style: MutationStyle,
    /// Iteration budget; defaults to mu * n^2.
    #[arg(long)]
    max_iters: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write records.{csv,jsonl} and run.json into this directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: RecordFormat,
}

#[derive(Args)]
struct PlanArgs {
    /// unconstrained-desk | tsplib-desk | unconstrained-full | tsplib-full
    #[arg(long)]
    preset: Preset,
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long)]
    seed_base: Option<u64>,
    /// Parallel worker count (defaults to the available cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory holding the bundled TSPLIB files.
    #[arg(long, default_value = "data")]
    data_dir: PathBuf,
    /// Output directory for the records file.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    #[arg(long, default_value = "csv")]
    format: RecordFormat,
}

#[derive(Args)]
struct RenderArgs {
    /// run.json artifact written by `tspdiv run --out`.
    #[arg(long)]
    record: PathBuf,
    /// edge-counts | population
    #[arg(long)]
    style: String,
    /// Output SVG path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    mu: usize,
    /// Dump the optimal population as a tour list to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CorrArgs {
    /// Records file (.csv or .jsonl).
    #[arg(long)]
    records: PathBuf,
    /// Also write the (sigma, div) scatter data as CSV.
    #[arg(long)]
    scatter: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Plan(args) => cmd_plan(args),
        Command::Render(args) => cmd_render(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Corr(args) => cmd_corr(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn input(err: impl std::fmt::Display) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: err.to_string(),
    }
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let spec = match (&args.instance, args.unit) {
        (Some(tsp), None) => {
            let opt_tour = args
                .opt_tour
                .clone()
                .ok_or_else(|| usage("--instance requires --opt-tour"))?;
            InstanceSpec::Tsplib {
                tsp: tsp.clone(),
                opt_tour,
            }
        }
        (None, Some(n)) => InstanceSpec::Unit { n },
        _ => return Err(usage("exactly one of --instance or --unit is required")),
    };
    let (instance, opt_tour) = load_instance(&spec).map_err(input)?;
    let config = EaConfig {
        mu: args.mu,
        measure: args.measure,
        mutation: args.mutation,
        style: args.style,
        alpha: args.alpha,
        max_iters: args.max_iters,
        init: match opt_tour {
            Some(_) => InitMode::CopiesOfOptimal,
            None => InitMode::RandomTours,
        },
        seed: args.seed,
    };
    let record = ea::run(&config, &instance, opt_tour.as_ref()).map_err(input)?;
    println!(
        "{} n={} mu={} alpha={} {} {} seed={}",
        record.instance,
        record.n,
        config.mu,
        config.alpha,
        config.measure.as_str(),
        config.mutation.as_str(),
        config.seed
    );
    println!(
        "iterations={} ({}) gtype={} gtype%={:.2} div={:.4} sigma={:.4}",
        record.iterations,
        record.terminated.as_str(),
        record.gtype,
        record.gtype_percent,
        record.div,
        record.sigma
    );
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(input)?;
        let records_path = emit_records(std::slice::from_ref(&record), args.format, dir)
            .map_err(input)?;
        let artifact = RunArtifact {
            instance,
            opt_tour,
            record,
        };
        let artifact_path = dir.join("run.json");
        save_artifact(&artifact, &artifact_path).map_err(input)?;
        println!(
            "wrote {} and {}",
            records_path.display(),
            artifact_path.display()
        );
    }
    Ok(())
}

fn cmd_plan(args: PlanArgs) -> Result<(), CliError> {
    let mut plan = args.preset.plan(&args.data_dir);
    if let Some(r) = args.replicates {
        plan.replicates = r;
    }
    if let Some(s) = args.seed_base {
        plan.seed_base = s;
    }
    let jobs = args.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
    });
    eprintln!(
        "plan {}: {} runs on {} jobs",
        args.preset.as_str(),
        plan.run_count(),
        jobs
    );
    let (records, summary) = run_plan(&plan, jobs).map_err(input)?;
    for row in &summary {
        println!("{row}");
    }
    std::fs::create_dir_all(&args.out).map_err(input)?;
    let path = emit_records(&records, args.format, &args.out).map_err(input)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn cmd_render(args: RenderArgs) -> Result<(), CliError> {
    let artifact = load_artifact(&args.record).map_err(input)?;
    let pop = Population::new(
        artifact.instance.n(),
        artifact.record.final_population.clone(),
    );
    let svg = match args.style.as_str() {
        "edge-counts" => render_edge_counts(&pop, &artifact.instance, artifact.opt_tour.as_ref()),
        "population" => render_population(&pop, &artifact.instance),
        other => {
            return Err(usage(format!(
                "unknown render style {other:?}, expected edge-counts or population"
            )))
        }
    }
    .map_err(input)?;
    match &args.out {
        Some(path) => std::fs::write(path, svg).map_err(input)?,
        None => print!("{svg}"),
    }
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    if args.n < 3 {
        return Err(input(format!("n must be at least 3, got {}", args.n)));
    }
    if args.mu < 1 {
        return Err(input("mu must be at least 1"));
    }
    let witness = tspdiv::verify_count_balance(args.n, args.mu);
    let tours = tspdiv::optimal_population(args.n, args.mu);
    let pop = Population::new(args.n, tours);
    println!(
        "n={} mu={} optimal_gtype={} constructed_gtype={} counts=[{}..{}] spread_ok={}",
        args.n,
        args.mu,
        optimal_gtype(args.n, args.mu),
        pop.gtype(),
        witness.min_count,
        witness.max_count,
        witness.holds
    );
    let mut dump = String::new();
    for (i, tour) in pop.tours().enumerate() {
        dump.push_str(&format!("TOUR {} of {}\n", i + 1, pop.len()));
        for v in tour.perm() {
            dump.push_str(&format!("{}\n", v + 1));
        }
        dump.push_str("-1\n");
    }
    match &args.out {
        Some(path) => std::fs::write(path, dump).map_err(input)?,
        None => print!("{dump}"),
    }
    Ok(())
}

fn cmd_corr(args: CorrArgs) -> Result<(), CliError> {
    let rows: Vec<RecordRow> = load_records(&args.records).map_err(input)?;
    let r = correlation_report(&rows).map_err(input)?;
    println!("pearson_r(sigma, div) = {r:.4} over {} records", rows.len());
    if let Some(path) = &args.scatter {
        std::fs::write(path, scatter_csv(&rows)).map_err(input)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
