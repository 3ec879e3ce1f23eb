//! Genetic algorithm over height-ordered processor queues.
//!
//! An individual holds one task queue per processor. Within every queue the
//! task heights never decrease, which makes every individual decodable
//! without deadlock: the lowest unfinished task overall is always at the head
//! of its queue with all predecessors done.
//!
//! Operators keep that ordering intact:
//! * crossover cuts every queue at a height boundary `c` and swaps the
//!   `height >= c` tails between the two parents,
//! * mutation swaps the positions of two tasks of equal height.
//!
//! Selection is fitness-proportional on `max_FT - FT + 1`, and the best
//! `elitism_count` individuals survive each generation untouched.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lsh::{lsh_schedule, PriorityPolicy};
use crate::rng::{seeded, SchedRng};
use crate::schedule::{queue_makespan, simulate_queues, Schedule, ScheduleError};
use crate::taskgraph::{TaskGraph, TaskId, Time};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chromosome {
    pub queues: Vec<Vec<TaskId>>,
}

impl Chromosome {
    pub fn processors(&self) -> usize {
        self.queues.len()
    }

    /// Partition of the task set with nondecreasing heights in every queue.
    pub fn is_valid(&self, graph: &TaskGraph) -> bool {
        let mut seen = vec![false; graph.len()];
        for &t in self.queues.iter().flatten() {
            match seen.get_mut(t.0) {
                Some(s) if !*s => *s = true,
                _ => return false,
            }
        }
        seen.iter().all(|&s| s)
            && self
                .queues
                .iter()
                .all(|q| q.windows(2).all(|w| graph.height(w[0]) <= graph.height(w[1])))
    }

    /// Builds an individual from an existing schedule: each processor keeps
    /// its tasks, stably re-sorted by height.
    pub fn from_schedule(graph: &TaskGraph, schedule: &Schedule) -> Self {
        let mut queues = schedule.queues();
        for q in &mut queues {
            q.sort_by_key(|&t| graph.height(t));
        }
        Chromosome { queues }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub population_size: usize,
    pub max_generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub elitism_count: usize,
    pub seed: u64,
    /// Stop once the best makespan has not improved for this many
    /// generations. `None` runs all `max_generations`.
    pub stall_generations: Option<usize>,
    /// Replace one random initial individual with the list-scheduling result.
    pub seed_with_lsh: bool,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population_size: 20,
            max_generations: 500,
            crossover_rate: 0.8,
            mutation_rate: 0.1,
            elitism_count: 1,
            seed: 42,
            stall_generations: None,
            seed_with_lsh: false,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<(), GaError> {
        let bad = |m: String| Err(GaError::InvalidParams(m));
        if self.population_size < 2 {
            return bad(format!("population size must be at least 2, got {}", self.population_size));
        }
        if self.max_generations == 0 {
            return bad("at least one generation is required".into());
        }
        for (name, rate) in [("crossover", self.crossover_rate), ("mutation", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&rate) {
                return bad(format!("{name} rate must lie in [0, 1], got {rate}"));
            }
        }
        if self.elitism_count >= self.population_size {
            return bad(format!(
                "elitism count {} must be below the population size {}",
                self.elitism_count, self.population_size
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaError {
    #[error("invalid GA parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaResult {
    pub best_schedule: Schedule,
    pub best_makespan: Time,
    pub best_chromosome: Chromosome,
    /// Best makespan within the population at each evaluated generation.
    pub history: Vec<Time>,
}

/// Uniform processor per task; each queue shuffled, then stably sorted by
/// height so equal-height tasks land in uniformly random order.
pub fn random_chromosome(graph: &TaskGraph, p: usize, rng: &mut SchedRng) -> Chromosome {
    let p = p.max(1);
    let mut queues = vec![Vec::new(); p];
    for t in graph.tasks() {
        queues[rng.gen_range(0..p)].push(t);
    }
    for q in &mut queues {
        q.shuffle(rng);
        q.sort_by_key(|&t| graph.height(t));
    }
    Chromosome { queues }
}

pub fn decode(graph: &TaskGraph, chromosome: &Chromosome) -> Result<Schedule, ScheduleError> {
    if !chromosome.is_valid(graph) {
        return Err(ScheduleError::NotAPartition(
            "chromosome is not a height-ordered partition".into(),
        ));
    }
    simulate_queues(graph, &chromosome.queues)
}

/// Selection weights `max(FT) - FT + 1`.
pub fn fitness(makespans: &[Time]) -> Vec<u64> {
    let worst = makespans.iter().copied().max().unwrap_or(0);
    makespans.iter().map(|&ft| worst - ft + 1).collect()
}

/// Height-boundary crossover at a uniformly drawn cut in `1..=max_height`.
/// Graphs without precedence (max height 0) return the parents unchanged.
pub fn crossover(
    a: &Chromosome,
    b: &Chromosome,
    graph: &TaskGraph,
    rng: &mut SchedRng,
) -> (Chromosome, Chromosome) {
    let top = graph.max_height();
    if top == 0 {
        return (a.clone(), b.clone());
    }
    crossover_at(a, b, graph, rng.gen_range(1..=top))
}

/// Crossover with an explicit cut height: children take one parent's
/// `height < cut` prefixes and the other parent's `height >= cut` suffixes,
/// queue by queue.
pub fn crossover_at(
    a: &Chromosome,
    b: &Chromosome,
    graph: &TaskGraph,
    cut: u32,
) -> (Chromosome, Chromosome) {
    let split = |q: &[TaskId]| q.partition_point(|&t| graph.height(t) < cut);
    let mut child_a = Vec::with_capacity(a.queues.len());
    let mut child_b = Vec::with_capacity(a.queues.len());
    for (qa, qb) in a.queues.iter().zip(&b.queues) {
        let (sa, sb) = (split(qa), split(qb));
        child_a.push(qa[..sa].iter().chain(&qb[sb..]).copied().collect());
        child_b.push(qb[..sb].iter().chain(&qa[sa..]).copied().collect());
    }
    (Chromosome { queues: child_a }, Chromosome { queues: child_b })
}

/// Tasks grouped by height, keeping only heights with at least two tasks.
fn swappable_levels(graph: &TaskGraph) -> Vec<Vec<TaskId>> {
    let mut levels = vec![Vec::new(); graph.max_height() as usize + 1];
    for t in graph.tasks() {
        levels[graph.height(t) as usize].push(t);
    }
    levels.retain(|l| l.len() >= 2);
    levels
}

/// Swaps two distinct tasks of one uniformly chosen height. Unchanged when
/// every height holds a single task.
pub fn mutate(chromosome: &Chromosome, graph: &TaskGraph, rng: &mut SchedRng) -> Chromosome {
    let mut out = chromosome.clone();
    mutate_in_place(&mut out, &swappable_levels(graph), rng);
    out
}

fn mutate_in_place(ch: &mut Chromosome, levels: &[Vec<TaskId>], rng: &mut SchedRng) {
    if levels.is_empty() {
        return;
    }
    let level = &levels[rng.gen_range(0..levels.len())];
    let pair = rand::seq::index::sample(rng, level.len(), 2);
    let (x, y) = (level[pair.index(0)], level[pair.index(1)]);
    let locate = |t: TaskId| {
        ch.queues
            .iter()
            .enumerate()
            .find_map(|(q, queue)| queue.iter().position(|&u| u == t).map(|i| (q, i)))
            .expect("task is queued")
    };
    let ((qx, ix), (qy, iy)) = (locate(x), locate(y));
    ch.queues[qx][ix] = y;
    ch.queues[qy][iy] = x;
}

/// Runs the generational loop and returns the best individual ever seen.
pub fn ga_schedule(graph: &TaskGraph, p: usize, params: &GaParams) -> Result<GaResult, GaError> {
    params.validate()?;
    if p == 0 {
        return Err(GaError::InvalidParams("processor count must be at least 1".into()));
    }
    let mut rng = seeded(params.seed);
    let levels = swappable_levels(graph);
    let mut population: Vec<Chromosome> =
        (0..params.population_size).map(|_| random_chromosome(graph, p, &mut rng)).collect();
    if params.seed_with_lsh {
        let lsh = lsh_schedule(graph, p, PriorityPolicy::BottomLevel, params.seed)
            .expect("processor count checked above");
        population[0] = Chromosome::from_schedule(graph, &lsh);
    }

    let mut scratch = Vec::with_capacity(graph.len());
    let mut history = Vec::with_capacity(params.max_generations);
    let mut best: Option<(Time, Chromosome)> = None;
    let mut since_improvement = 0usize;

    for generation in 0..params.max_generations {
        let makespans = population
            .iter()
            .map(|c| queue_makespan(graph, &c.queues, &mut scratch))
            .collect::<Result<Vec<_>, _>>()?;
        let (leader, &leader_ft) =
            makespans.iter().enumerate().min_by_key(|&(i, ft)| (*ft, i)).expect("population is nonempty");
        history.push(leader_ft);
        match &best {
            Some((ft, _)) if *ft <= leader_ft => since_improvement += 1,
            _ => {
                best = Some((leader_ft, population[leader].clone()));
                since_improvement = 0;
            }
        }
        if generation + 1 == params.max_generations
            || params.stall_generations.is_some_and(|w| since_improvement >= w)
        {
            break;
        }
        population = next_generation(&population, &makespans, &levels, graph, params, &mut rng);
    }

    let (best_makespan, best_chromosome) = best.expect("at least one generation ran");
    let best_schedule = simulate_queues(graph, &best_chromosome.queues)?;
    debug_assert_eq!(best_schedule.makespan(), best_makespan);
    Ok(GaResult { best_schedule, best_makespan, best_chromosome, history })
}

fn next_generation(
    population: &[Chromosome],
    makespans: &[Time],
    levels: &[Vec<TaskId>],
    graph: &TaskGraph,
    params: &GaParams,
    rng: &mut SchedRng,
) -> Vec<Chromosome> {
    let size = params.population_size;
    let mut ranked: Vec<usize> = (0..size).collect();
    ranked.sort_by_key(|&i| (makespans[i], i));

    let wheel = WeightedIndex::new(fitness(makespans)).expect("fitness weights are positive");
    let mut offspring: Vec<Chromosome> =
        (0..size).map(|_| population[wheel.sample(rng)].clone()).collect();
    for pair in offspring.chunks_exact_mut(2) {
        if rng.gen_bool(params.crossover_rate) {
            let (x, y) = crossover(&pair[0], &pair[1], graph, rng);
            pair[0] = x;
            pair[1] = y;
        }
    }
    for child in &mut offspring {
        if rng.gen_bool(params.mutation_rate) {
            mutate_in_place(child, levels, rng);
        }
    }

    let mut next: Vec<Chromosome> =
        ranked[..params.elitism_count].iter().map(|&i| population[i].clone()).collect();
    next.extend(offspring.into_iter().take(size - params.elitism_count));
    next
}
