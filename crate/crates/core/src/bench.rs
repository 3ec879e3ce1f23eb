//! Paired GA-vs-LSH benchmark harness.
//!
//! Every `(n, p, seed)` cell generates one graph and runs both algorithms on
//! it (optionally the exact oracle too). Rows carry digests of the graph and
//! of the run parameters so results can be audited after the fact.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ga::{ga_schedule, GaError, GaParams};
use crate::lsh::{lsh_schedule, LshError, PriorityPolicy};
use crate::oracle::{brute_force_optimal, OracleError};
use crate::rng::derive_seed;
use crate::schedule::{validate_schedule, Schedule, ScheduleError};
use crate::taskgraph::{generate_random, GeneratorParams, GraphError, TaskGraph, Time};

/// Task counts of the reference tables.
pub const DEFAULT_TASK_COUNTS: [usize; 16] = [8, 17, 23, 28, 33, 39, 44, 49, 54, 59, 69, 79, 89, 99, 100, 110];
pub const DEFAULT_PROCESSOR_COUNTS: [usize; 3] = [2, 3, 4];
pub const DEFAULT_BASE_SEED: u64 = 42;

pub const CSV_HEADER: &str =
    "n,p,seed,graph_digest,graph_height,algorithm,finish_time,t_cp,total_work,wall_time_ms,params_digest";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "GA")]
    Ga,
    #[serde(rename = "LSH")]
    Lsh,
    #[serde(rename = "ORACLE")]
    Oracle,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Ga => "GA",
            Algorithm::Lsh => "LSH",
            Algorithm::Oracle => "ORACLE",
        })
    }
}

/// Weight and successor ranges; task count and seed vary per cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorTemplate {
    pub min_succ: usize,
    pub max_succ: usize,
    pub min_w: Time,
    pub max_w: Time,
}

impl Default for GeneratorTemplate {
    fn default() -> Self {
        GeneratorTemplate { min_succ: 3, max_succ: 6, min_w: 1, max_w: 25 }
    }
}

impl GeneratorTemplate {
    pub fn params(&self, n: usize, seed: u64) -> GeneratorParams {
        GeneratorParams {
            n,
            min_succ: self.min_succ,
            max_succ: self.max_succ,
            min_w: self.min_w,
            max_w: self.max_w,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub task_counts: Vec<usize>,
    pub processor_counts: Vec<usize>,
    pub seeds_per_cell: usize,
    /// Graph seeds are `base_seed, base_seed + 1, ...` within each cell.
    pub base_seed: u64,
    pub generator: GeneratorTemplate,
    pub ga: GaParams,
    pub lsh_policy: PriorityPolicy,
    /// Also run the exact oracle on cells with at most this many tasks.
    pub oracle_limit: Option<usize>,
    /// Measure wall time. Off by default so that output bytes depend only on
    /// the configuration.
    pub record_wall_time: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            task_counts: DEFAULT_TASK_COUNTS.to_vec(),
            processor_counts: DEFAULT_PROCESSOR_COUNTS.to_vec(),
            seeds_per_cell: 1,
            base_seed: DEFAULT_BASE_SEED,
            generator: GeneratorTemplate::default(),
            ga: GaParams::default(),
            lsh_policy: PriorityPolicy::BottomLevel,
            oracle_limit: None,
            record_wall_time: false,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.task_counts.is_empty() || self.processor_counts.is_empty() {
            return Err(BenchError::InvalidConfig("task and processor count lists must be nonempty".into()));
        }
        if self.seeds_per_cell == 0 {
            return Err(BenchError::InvalidConfig("seeds per cell must be at least 1".into()));
        }
        if self.processor_counts.contains(&0) {
            return Err(BenchError::InvalidConfig("processor counts must be at least 1".into()));
        }
        for &n in &self.task_counts {
            self.generator.params(n, 0).validate().map_err(|e| BenchError::InvalidConfig(e.to_string()))?;
        }
        self.ga.validate().map_err(|e| BenchError::InvalidConfig(e.to_string()))
    }

    /// Digest of everything that shapes the results apart from the cell
    /// coordinates.
    pub fn params_digest(&self) -> String {
        let g = &self.ga;
        let canonical = format!(
            "pop={};gens={};cx={};mut={};elite={};ga_seed={};stall={:?};lsh_seeded={};policy={};succ={}..{};w={}..{}",
            g.population_size,
            g.max_generations,
            g.crossover_rate,
            g.mutation_rate,
            g.elitism_count,
            g.seed,
            g.stall_generations,
            g.seed_with_lsh,
            self.lsh_policy,
            self.generator.min_succ,
            self.generator.max_succ,
            self.generator.min_w,
            self.generator.max_w,
        );
        short_digest(canonical.as_bytes())
    }
}

fn short_digest(bytes: &[u8]) -> String {
    hex::encode(&Sha256::digest(bytes)[..8])
}

pub fn graph_digest(graph: &TaskGraph) -> String {
    short_digest(graph.to_json().as_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub graph_digest: String,
    pub graph_height: u32,
    pub algorithm: Algorithm,
    pub finish_time: Time,
    pub t_cp: Time,
    pub total_work: Time,
    pub wall_time_ms: f64,
    pub params_digest: String,
}

impl BenchRow {
    pub fn lower_bound(&self) -> Time {
        self.t_cp.max(self.total_work.div_ceil(self.p.max(1) as Time))
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),
    #[error("cell n={n} p={p} seed={seed}: {source}")]
    Cell { n: usize, p: usize, seed: u64, source: CellError },
    #[error("no rows")]
    EmptyInput,
    #[error("results CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("results CSV header mismatch: expected `{CSV_HEADER}`")]
    Header,
}

#[derive(Debug, Error)]
pub enum CellError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ga(#[from] GaError),
    #[error(transparent)]
    Lsh(#[from] LshError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid schedule: {0}")]
    Schedule(#[from] ScheduleError),
}

/// Everything one cell produced, for checks that need more than the rows.
#[derive(Debug, Clone)]
pub struct CellOutcome {
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub graph: TaskGraph,
    pub ga_history: Vec<Time>,
    pub schedules: Vec<(Algorithm, Schedule)>,
    pub rows: Vec<BenchRow>,
}

/// Runs every cell in `(n, p, seed)` order.
pub fn run_cells(config: &BenchConfig) -> Result<Vec<CellOutcome>, BenchError> {
    config.validate()?;
    let params_digest = config.params_digest();
    let mut out = Vec::new();
    for &n in &config.task_counts {
        for &p in &config.processor_counts {
            for k in 0..config.seeds_per_cell as u64 {
                let seed = config.base_seed.wrapping_add(k);
                let cell = run_cell(config, n, p, seed, &params_digest)
                    .map_err(|source| BenchError::Cell { n, p, seed, source })?;
                out.push(cell);
            }
        }
    }
    Ok(out)
}

fn run_cell(
    config: &BenchConfig,
    n: usize,
    p: usize,
    seed: u64,
    params_digest: &str,
) -> Result<CellOutcome, CellError> {
    let graph = generate_random(&config.generator.params(n, seed))?;
    let digest = graph_digest(&graph);
    let t_cp = graph.critical_path_length();
    let total_work = graph.total_work();
    let cell = [n as u64, p as u64, seed];

    let timed = |f: &mut dyn FnMut() -> Result<Schedule, CellError>| -> Result<(Schedule, f64), CellError> {
        let started = Instant::now();
        let s = f()?;
        let ms = if config.record_wall_time { (started.elapsed().as_secs_f64() * 1e6).round() / 1e3 } else { 0.0 };
        Ok((s, ms))
    };

    let mut history = Vec::new();
    let ga_params = GaParams { seed: derive_seed(config.ga.seed, &cell), ..config.ga };
    let mut runs = vec![(
        Algorithm::Ga,
        timed(&mut || {
            let r = ga_schedule(&graph, p, &ga_params)?;
            history = r.history;
            Ok(r.best_schedule)
        })?,
    )];
    let lsh_seed = derive_seed(seed, &[n as u64, p as u64, 1]);
    runs.push((Algorithm::Lsh, timed(&mut || Ok(lsh_schedule(&graph, p, config.lsh_policy, lsh_seed)?))?));
    if config.oracle_limit.is_some_and(|limit| n <= limit) {
        runs.push((
            Algorithm::Oracle,
            timed(&mut || Ok(brute_force_optimal(&graph, p, config.oracle_limit.unwrap())?))?,
        ));
    }

    let mut rows = Vec::with_capacity(runs.len());
    let mut schedules = Vec::with_capacity(runs.len());
    for (algorithm, (schedule, wall_time_ms)) in runs {
        validate_schedule(&graph, &schedule)?;
        rows.push(BenchRow {
            n,
            p,
            seed,
            graph_digest: digest.clone(),
            graph_height: graph.max_height(),
            algorithm,
            finish_time: schedule.makespan(),
            t_cp,
            total_work,
            wall_time_ms,
            params_digest: params_digest.to_string(),
        });
        schedules.push((algorithm, schedule));
    }
    Ok(CellOutcome { n, p, seed, graph, ga_history: history, schedules, rows })
}

/// All rows sorted by `(n, p, seed, algorithm)`.
pub fn run_suite(config: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows: Vec<BenchRow> = run_cells(config)?.into_iter().flat_map(|c| c.rows).collect();
    rows.sort_by_key(|r| (r.n, r.p, r.seed, r.algorithm));
    Ok(rows)
}

pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRow>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(BenchError::Header);
    }
    Ok(r.deserialize().collect::<Result<Vec<BenchRow>, _>>()?)
}

/// Mean is kept as an exact fraction `sum / count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryRow {
    pub n: usize,
    pub p: usize,
    pub algorithm: Algorithm,
    pub count: u64,
    pub sum: Time,
    pub min: Time,
    pub max: Time,
}

impl SummaryRow {
    /// Mean rounded half-up to two decimals.
    pub fn mean_display(&self) -> String {
        let hundredths = (self.sum * 200 + self.count) / (2 * self.count);
        format!("{}.{:02}", hundredths / 100, hundredths % 100)
    }

    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.count as f64
    }
}

/// Groups rows by `(n, p, algorithm)`. Cells appear in order of first
/// appearance in the input; algorithms within a cell alphabetically.
pub fn aggregate(rows: &[BenchRow]) -> Result<Vec<SummaryRow>, BenchError> {
    if rows.is_empty() {
        return Err(BenchError::EmptyInput);
    }
    let mut cells: Vec<(usize, usize)> = Vec::new();
    let mut groups: BTreeMap<(usize, usize, Algorithm), SummaryRow> = BTreeMap::new();
    for r in rows {
        if !cells.contains(&(r.n, r.p)) {
            cells.push((r.n, r.p));
        }
        groups
            .entry((r.n, r.p, r.algorithm))
            .and_modify(|g| {
                g.count += 1;
                g.sum += r.finish_time;
                g.min = g.min.min(r.finish_time);
                g.max = g.max.max(r.finish_time);
            })
            .or_insert(SummaryRow {
                n: r.n,
                p: r.p,
                algorithm: r.algorithm,
                count: 1,
                sum: r.finish_time,
                min: r.finish_time,
                max: r.finish_time,
            });
    }
    Ok(cells
        .into_iter()
        .flat_map(|(n, p)| {
            groups.range((n, p, Algorithm::Ga)..=(n, p, Algorithm::Oracle)).map(|(_, g)| g.clone()).collect::<Vec<_>>()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightRow {
    pub height: u32,
    pub ga_min: Option<Time>,
    pub lsh_min: Option<Time>,
}

/// Minimum GA and LSH finish time per graph height, ascending by height.
/// A height with no rows of an algorithm reports `None` for it.
pub fn height_report(rows: &[BenchRow]) -> Result<Vec<HeightRow>, BenchError> {
    if rows.is_empty() {
        return Err(BenchError::EmptyInput);
    }
    let mut by_height: BTreeMap<u32, HeightRow> = BTreeMap::new();
    for r in rows {
        let entry = by_height
            .entry(r.graph_height)
            .or_insert(HeightRow { height: r.graph_height, ga_min: None, lsh_min: None });
        let slot = match r.algorithm {
            Algorithm::Ga => &mut entry.ga_min,
            Algorithm::Lsh => &mut entry.lsh_min,
            Algorithm::Oracle => continue,
        };
        *slot = Some(slot.map_or(r.finish_time, |m| m.min(r.finish_time)));
    }
    Ok(by_height.into_values().collect())
}
