//! Command-line front end.
//!
//! Exit codes: 0 success, 1 data error (unreadable or invalid input), 2 usage
//! error, 3 resource limit (exhaustive search refused an instance).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchConfig, GeneratorTemplate};
use crate::ga::{ga_schedule, GaParams};
use crate::gantt::{render_ascii, render_svg};
use crate::lsh::{lsh_schedule, PriorityPolicy};
use crate::oracle::{brute_force_optimal, OracleError, DEFAULT_LIMIT_N};
use crate::report;
use crate::schedule::{validate_schedule, Schedule};
use crate::taskgraph::{generate_random, GeneratorParams, TaskGraph};

pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dagsched", version, about = "Multiprocessor DAG scheduling with a genetic algorithm and list scheduling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random task graph
    Generate(GenerateArgs),
    /// Schedule a task graph and print its finish time
    Schedule(ScheduleArgs),
    /// Render a schedule as a Gantt chart
    Gantt(GanttArgs),
    /// Run the paired GA/LSH benchmark and write the results CSV
    Bench(BenchArgs),
    /// Summarize a results CSV into tables and a trend chart
    Report(ReportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorFlags {
    #[arg(long, default_value_t = 3)]
    pub min_succ: usize,
    #[arg(long, default_value_t = 6)]
    pub max_succ: usize,
    #[arg(long, default_value_t = 1)]
    pub min_w: u64,
    #[arg(long, default_value_t = 25)]
    pub max_w: u64,
}

impl GeneratorFlags {
    fn template(&self) -> GeneratorTemplate {
        GeneratorTemplate { min_succ: self.min_succ, max_succ: self.max_succ, min_w: self.min_w, max_w: self.max_w }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GaFlags {
    /// Population size
    #[arg(long, default_value_t = 20)]
    pub pop: usize,
    /// Number of generations
    #[arg(long, default_value_t = 500)]
    pub gens: usize,
    #[arg(long, default_value_t = 0.8)]
    pub cx_rate: f64,
    #[arg(long, default_value_t = 0.1)]
    pub mut_rate: f64,
    /// Individuals carried over unchanged each generation
    #[arg(long, default_value_t = 1)]
    pub elitism: usize,
    /// Stop after this many generations without improvement
    #[arg(long)]
    pub stall: Option<usize>,
    /// Put the list-scheduling result into the initial population
    #[arg(long)]
    pub seed_with_lsh: bool,
}

impl GaFlags {
    fn params(&self, seed: u64) -> Result<GaParams, CliError> {
        let params = GaParams {
            population_size: self.pop,
            max_generations: self.gens,
            crossover_rate: self.cx_rate,
            mutation_rate: self.mut_rate,
            elitism_count: self.elitism,
            seed,
            stall_generations: self.stall,
            seed_with_lsh: self.seed_with_lsh,
        };
        params.validate().map_err(|e| CliError::usage(e.to_string()))?;
        Ok(params)
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Number of tasks
    #[arg(long, value_parser = positive)]
    pub tasks: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub generator: GeneratorFlags,
    /// Output file (stdout when omitted)
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    Lsh,
    Ga,
    Bruteforce,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    /// Graph file
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub alg: Alg,
    /// Number of processors
    #[arg(long, value_parser = positive)]
    pub procs: usize,
    #[arg(long, value_enum, default_value_t = PriorityPolicy::BottomLevel)]
    pub policy: PriorityPolicy,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub ga: GaFlags,
    /// Task limit for the exhaustive solver
    #[arg(long, default_value_t = DEFAULT_LIMIT_N)]
    pub limit: usize,
    /// Schedule output file
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Args)]
pub struct GanttArgs {
    /// Graph file
    pub graph: PathBuf,
    /// Schedule file
    pub schedule: PathBuf,
    /// Defaults to ascii on stdout, svg when writing a file
    #[arg(long, value_enum)]
    pub format: Option<ChartFormat>,
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = bench::DEFAULT_TASK_COUNTS)]
    pub task_counts: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = bench::DEFAULT_PROCESSOR_COUNTS)]
    pub proc_counts: Vec<usize>,
    #[arg(long, default_value_t = 1, value_parser = positive)]
    pub seeds_per_cell: usize,
    /// First graph seed of every cell; also the GA base seed
    #[arg(long, default_value_t = bench::DEFAULT_BASE_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = PriorityPolicy::BottomLevel)]
    pub policy: PriorityPolicy,
    #[command(flatten)]
    pub generator: GeneratorFlags,
    #[command(flatten)]
    pub ga: GaFlags,
    /// Also run the exact solver on cells with at most this many tasks
    #[arg(long)]
    pub oracle_limit: Option<usize>,
    /// Record wall-clock times (makes output nondeterministic)
    #[arg(long)]
    pub timing: bool,
    /// Results CSV (stdout when omitted)
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Results CSV written by `bench`
    pub results: PathBuf,
    /// Directory for summary.csv, heights.csv, trend.svg and report.txt
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn data(message: impl Into<String>) -> Self {
        CliError { code: EXIT_DATA, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::Schedule(a) => cmd_schedule(a),
        Command::Gantt(a) => cmd_gantt(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Report(a) => cmd_report(a),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::data(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::data(e.to_string())),
    }
}

fn load_graph(path: &Path) -> Result<TaskGraph, CliError> {
    TaskGraph::from_json(&read(path)?).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

fn cmd_generate(a: GenerateArgs) -> Result<(), CliError> {
    let params: GeneratorParams = a.generator.template().params(a.tasks, a.seed);
    params.validate().map_err(|e| CliError::usage(e.to_string()))?;
    let graph = generate_random(&params).map_err(|e| CliError::data(e.to_string()))?;
    emit(a.output.as_deref(), &graph.to_json())
}

fn cmd_schedule(a: ScheduleArgs) -> Result<(), CliError> {
    let graph = load_graph(&a.graph)?;
    let (name, schedule) = match a.alg {
        Alg::Lsh => ("lsh", lsh_schedule(&graph, a.procs, a.policy, a.seed).map_err(|e| CliError::data(e.to_string()))?),
        Alg::Ga => {
            let params = a.ga.params(a.seed)?;
            let result = ga_schedule(&graph, a.procs, &params).map_err(|e| CliError::data(e.to_string()))?;
            ("ga", result.best_schedule)
        }
        Alg::Bruteforce => match brute_force_optimal(&graph, a.procs, a.limit) {
            Ok(s) => ("bruteforce", s),
            Err(e @ OracleError::TooLarge { .. }) => {
                return Err(CliError { code: EXIT_LIMIT, message: e.to_string() })
            }
            Err(e) => return Err(CliError::data(e.to_string())),
        },
    };
    if let Some(path) = &a.output {
        emit(Some(path), &schedule.to_json())?;
    }
    println!(
        "algorithm={name} n={} p={} finish_time={} t_cp={}",
        graph.len(),
        a.procs,
        schedule.makespan(),
        graph.critical_path_length()
    );
    Ok(())
}

fn cmd_gantt(a: GanttArgs) -> Result<(), CliError> {
    let graph = load_graph(&a.graph)?;
    let schedule = Schedule::from_json(&read(&a.schedule)?)
        .map_err(|e| CliError::data(format!("{}: {e}", a.schedule.display())))?;
    validate_schedule(&graph, &schedule)
        .map_err(|e| CliError::data(format!("schedule does not match graph: {e}")))?;
    let format = a.format.unwrap_or(if a.output.is_some() { ChartFormat::Svg } else { ChartFormat::Ascii });
    let text = match format {
        ChartFormat::Ascii => render_ascii(&schedule),
        ChartFormat::Svg => render_svg(&schedule),
    };
    emit(a.output.as_deref(), &text)
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    let config = BenchConfig {
        task_counts: a.task_counts,
        processor_counts: a.proc_counts,
        seeds_per_cell: a.seeds_per_cell,
        base_seed: a.seed,
        generator: a.generator.template(),
        ga: a.ga.params(a.seed)?,
        lsh_policy: a.policy,
        oracle_limit: a.oracle_limit,
        record_wall_time: a.timing,
    };
    config.validate().map_err(|e| CliError::usage(e.to_string()))?;
    let rows = bench::run_suite(&config).map_err(|e| CliError::data(e.to_string()))?;
    let mut buf = Vec::new();
    bench::write_csv(&rows, &mut buf).map_err(|e| CliError::data(e.to_string()))?;
    emit(a.output.as_deref(), &String::from_utf8(buf).expect("csv output is utf-8"))
}

fn cmd_report(a: ReportArgs) -> Result<(), CliError> {
    let file = fs::File::open(&a.results).map_err(|e| CliError::data(format!("{}: {e}", a.results.display())))?;
    let rows = bench::read_csv(file).map_err(|e| CliError::data(format!("{}: {e}", a.results.display())))?;
    if rows.is_empty() {
        return Err(CliError::data("no rows"));
    }
    let data_err = |e: bench::BenchError| CliError::data(e.to_string());
    let mut text = report::comparison_tables(&rows).map_err(data_err)?;
    text.push_str(&report::height_table(&rows).map_err(data_err)?);
    print!("{text}");
    if let Some(dir) = &a.output {
        let summary = bench::aggregate(&rows).map_err(data_err)?;
        let heights = bench::height_report(&rows).map_err(data_err)?;
        fs::create_dir_all(dir).map_err(|e| CliError::data(format!("{}: {e}", dir.display())))?;
        emit(Some(&dir.join("report.txt")), &text)?;
        emit(Some(&dir.join("summary.csv")), &report::summary_csv(&summary))?;
        emit(Some(&dir.join("heights.csv")), &report::heights_csv(&heights))?;
        emit(Some(&dir.join("trend.svg")), &report::trend_svg(&summary))?;
    }
    Ok(())
}
