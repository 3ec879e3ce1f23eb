//! Timed schedules, the queue simulator that produces them, and a full
//! validity check.
//!
//! Execution is non-preemptive. Intervals are closed-open, so a successor may
//! start at the exact instant its last predecessor finishes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::taskgraph::{TaskGraph, TaskId, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub task: TaskId,
    pub processor: usize,
    pub start: Time,
    pub finish: Time,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("queues are not a partition of the task set: {0}")]
    NotAPartition(String),
    #[error("simulation deadlocked; blocked queue heads: {blocked:?}")]
    Deadlock { blocked: Vec<TaskId> },
    #[error("task {0} is not placed")]
    MissingTask(TaskId),
    #[error("task {0} is placed more than once")]
    DuplicateTask(TaskId),
    #[error("placement references unknown task {0}")]
    UnknownTask(TaskId),
    #[error("task {task} is on processor {processor}, but p = {p}")]
    BadProcessor { task: TaskId, processor: usize, p: usize },
    #[error("tasks {first} and {second} overlap on processor {processor}")]
    ProcessorOverlap { processor: usize, first: TaskId, second: TaskId },
    #[error("task {succ} starts before its predecessor {pred} finishes")]
    PrecedenceViolation { pred: TaskId, succ: TaskId },
    #[error("task {task} runs for {actual} units but has weight {expected}")]
    BadDuration { task: TaskId, expected: Time, actual: Time },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

/// Per-processor timed placements with a cached makespan.
///
/// Placements are kept sorted by `(processor, start, task)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    p: usize,
    placements: Vec<Placement>,
    makespan: Time,
}

impl Schedule {
    pub fn new(p: usize, mut placements: Vec<Placement>) -> Self {
        placements.sort_unstable_by_key(|pl| (pl.processor, pl.start, pl.task));
        let makespan = placements.iter().map(|pl| pl.finish).max().unwrap_or(0);
        Schedule { p, placements, makespan }
    }

    pub fn processors(&self) -> usize {
        self.p
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    /// Finishing time of the last task; 0 when nothing is placed.
    pub fn makespan(&self) -> Time {
        self.makespan
    }

    pub fn placement_of(&self, task: TaskId) -> Option<&Placement> {
        self.placements.iter().find(|pl| pl.task == task)
    }

    /// Placements on one processor in start order.
    pub fn lane(&self, processor: usize) -> impl Iterator<Item = &Placement> {
        self.placements.iter().filter(move |pl| pl.processor == processor)
    }

    /// Per-processor task queues ordered by start time.
    pub fn queues(&self) -> Vec<Vec<TaskId>> {
        (0..self.p).map(|q| self.lane(q).map(|pl| pl.task).collect()).collect()
    }

    /// Placements indexed by task id. Only meaningful for valid schedules.
    pub fn by_task(&self) -> Vec<Placement> {
        let mut v = self.placements.clone();
        v.sort_unstable_by_key(|pl| pl.task);
        v
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\n  \"p\": {},\n  \"placements\": {}\n}}\n",
            self.p,
            crate::taskgraph::json_lines(&self.placements)
        )
    }

    /// Parses a schedule document. The result is not validated against any
    /// graph; use [`validate_schedule`] for that.
    pub fn from_json(text: &str) -> Result<Self, ScheduleError> {
        let doc: ScheduleDocument = serde_json::from_str(text).map_err(|e| ScheduleError::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Ok(Schedule::new(doc.p, doc.placements))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleDocument {
    p: usize,
    placements: Vec<Placement>,
}

/// Maximum finish over placements.
pub fn makespan(schedule: &Schedule) -> Time {
    schedule.makespan()
}

/// Runs each processor's queue strictly in order. A task starts at the later
/// of its processor becoming free and its last predecessor finishing; a
/// processor whose head task is not ready stays idle.
pub fn simulate_queues(graph: &TaskGraph, queues: &[Vec<TaskId>]) -> Result<Schedule, ScheduleError> {
    check_partition(graph, queues)?;
    let mut finish = vec![None::<Time>; graph.len()];
    let placements = run_queues(graph, queues, &mut finish)?;
    Ok(Schedule::new(queues.len(), placements))
}

/// Makespan of [`simulate_queues`] without building the schedule. The caller
/// guarantees `queues` is a partition; `finish` is scratch space.
pub(crate) fn queue_makespan(
    graph: &TaskGraph,
    queues: &[Vec<TaskId>],
    finish: &mut Vec<Option<Time>>,
) -> Result<Time, ScheduleError> {
    finish.clear();
    finish.resize(graph.len(), None);
    let placements = run_queues(graph, queues, finish)?;
    Ok(placements.iter().map(|pl| pl.finish).max().unwrap_or(0))
}

fn run_queues(
    graph: &TaskGraph,
    queues: &[Vec<TaskId>],
    finish: &mut [Option<Time>],
) -> Result<Vec<Placement>, ScheduleError> {
    let mut heads = vec![0usize; queues.len()];
    let mut free_at = vec![0 as Time; queues.len()];
    let mut placements = Vec::with_capacity(graph.len());
    while placements.len() < graph.len() {
        let before = placements.len();
        for (q, queue) in queues.iter().enumerate() {
            while let Some(&t) = queue.get(heads[q]) {
                let mut ready_at = free_at[q];
                let mut ready = true;
                for p in graph.predecessors(t) {
                    match finish[p.0] {
                        Some(f) => ready_at = ready_at.max(f),
                        None => {
                            ready = false;
                            break;
                        }
                    }
                }
                if !ready {
                    break;
                }
                let end = ready_at + graph.weight(t);
                finish[t.0] = Some(end);
                free_at[q] = end;
                heads[q] += 1;
                placements.push(Placement { task: t, processor: q, start: ready_at, finish: end });
            }
        }
        if placements.len() == before {
            let blocked = queues
                .iter()
                .zip(&heads)
                .filter_map(|(queue, &h)| queue.get(h).copied())
                .collect();
            return Err(ScheduleError::Deadlock { blocked });
        }
    }
    Ok(placements)
}

fn check_partition(graph: &TaskGraph, queues: &[Vec<TaskId>]) -> Result<(), ScheduleError> {
    if queues.is_empty() {
        return Err(ScheduleError::NotAPartition("no processors".into()));
    }
    let mut seen = vec![false; graph.len()];
    for &t in queues.iter().flatten() {
        match seen.get_mut(t.0) {
            None => return Err(ScheduleError::NotAPartition(format!("unknown task {t}"))),
            Some(true) => return Err(ScheduleError::NotAPartition(format!("task {t} queued twice"))),
            Some(s) => *s = true,
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(ScheduleError::NotAPartition(format!("task {} is not queued", TaskId(i))));
    }
    Ok(())
}

/// Checks that every task is placed exactly once on an existing processor,
/// durations match weights, a processor runs one task at a time, and every
/// edge `(u, v)` has `finish(u) <= start(v)`.
pub fn validate_schedule(graph: &TaskGraph, schedule: &Schedule) -> Result<(), ScheduleError> {
    let mut slot: Vec<Option<&Placement>> = vec![None; graph.len()];
    for pl in schedule.placements() {
        if pl.task.0 >= graph.len() {
            return Err(ScheduleError::UnknownTask(pl.task));
        }
        if pl.processor >= schedule.processors() {
            return Err(ScheduleError::BadProcessor {
                task: pl.task,
                processor: pl.processor,
                p: schedule.processors(),
            });
        }
        if slot[pl.task.0].replace(pl).is_some() {
            return Err(ScheduleError::DuplicateTask(pl.task));
        }
        let expected = graph.weight(pl.task);
        let actual = pl.finish.saturating_sub(pl.start);
        if pl.finish < pl.start || actual != expected {
            return Err(ScheduleError::BadDuration { task: pl.task, expected, actual });
        }
    }
    if let Some(i) = slot.iter().position(Option::is_none) {
        return Err(ScheduleError::MissingTask(TaskId(i)));
    }
    // Placements are sorted by (processor, start).
    for pair in schedule.placements().windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.processor == b.processor && b.start < a.finish {
            return Err(ScheduleError::ProcessorOverlap {
                processor: a.processor,
                first: a.task,
                second: b.task,
            });
        }
    }
    for &(u, v) in graph.edges() {
        let (pu, pv) = (slot[u.0].unwrap(), slot[v.0].unwrap());
        if pu.finish > pv.start {
            return Err(ScheduleError::PrecedenceViolation { pred: u, succ: v });
        }
    }
    Ok(())
}
