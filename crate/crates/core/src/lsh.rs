//! List scheduling: tasks get a static priority once, then whenever a
//! processor is free it takes the highest-priority ready task. Ties among
//! equally ranked ready tasks are broken uniformly at random from the seed.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::seeded;
use crate::schedule::{Placement, Schedule};
use crate::taskgraph::{TaskGraph, TaskId, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PriorityPolicy {
    /// Own weight plus the heaviest downstream path.
    #[default]
    BottomLevel,
    /// Lower precedence level first.
    Height,
    /// Heavier task first.
    Weight,
}

impl PriorityPolicy {
    pub fn name(self) -> &'static str {
        match self {
            PriorityPolicy::BottomLevel => "bottom_level",
            PriorityPolicy::Height => "height",
            PriorityPolicy::Weight => "weight",
        }
    }
}

impl fmt::Display for PriorityPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PriorityPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bottom_level" | "bottom-level" => Ok(PriorityPolicy::BottomLevel),
            "height" => Ok(PriorityPolicy::Height),
            "weight" => Ok(PriorityPolicy::Weight),
            other => Err(format!("unknown priority policy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LshError {
    #[error("processor count must be at least 1")]
    InvalidProcessorCount,
}

/// Larger value means dispatched earlier.
pub fn compute_priorities(graph: &TaskGraph, policy: PriorityPolicy) -> Vec<i64> {
    match policy {
        PriorityPolicy::BottomLevel => {
            let mut level = vec![0i64; graph.len()];
            for &t in graph.topological_order().iter().rev() {
                let below = graph.successors(t).iter().map(|s| level[s.0]).max().unwrap_or(0);
                level[t.0] = graph.weight(t) as i64 + below;
            }
            level
        }
        PriorityPolicy::Height => graph.heights().iter().map(|&h| -(h as i64)).collect(),
        PriorityPolicy::Weight => graph.weights().iter().map(|&w| w as i64).collect(),
    }
}

/// Event-driven list scheduling on `p` identical processors.
///
/// At each event time, finished tasks release their successors first, then
/// idle processors are served in ascending index order. A processor with no
/// ready task idles until the next finish event.
pub fn lsh_schedule(
    graph: &TaskGraph,
    p: usize,
    policy: PriorityPolicy,
    seed: u64,
) -> Result<Schedule, LshError> {
    if p == 0 {
        return Err(LshError::InvalidProcessorCount);
    }
    let priority = compute_priorities(graph, policy);
    let mut rng = seeded(seed);
    let mut waiting: Vec<usize> = graph.tasks().map(|t| graph.predecessors(t).len()).collect();
    // Kept sorted by id so tie candidates are enumerated in a fixed order.
    let mut ready: Vec<TaskId> = graph.tasks().filter(|t| waiting[t.0] == 0).collect();
    let mut running: Vec<Option<(TaskId, Time)>> = vec![None; p];
    let mut placements = Vec::with_capacity(graph.len());
    let mut now: Time = 0;

    while placements.len() < graph.len() {
        for (q, slot) in running.iter_mut().enumerate() {
            if slot.is_some() || ready.is_empty() {
                continue;
            }
            let best = ready.iter().map(|t| priority[t.0]).max().unwrap();
            let tied: Vec<usize> = (0..ready.len()).filter(|&i| priority[ready[i].0] == best).collect();
            let pick = if tied.len() == 1 { tied[0] } else { tied[rng.gen_range(0..tied.len())] };
            let task = ready.remove(pick);
            let end = now + graph.weight(task);
            *slot = Some((task, end));
            placements.push(Placement { task, processor: q, start: now, finish: end });
        }
        if placements.len() == graph.len() {
            break;
        }

        now = running.iter().flatten().map(|&(_, end)| end).min().expect("something is running");
        for slot in running.iter_mut() {
            if let Some((task, end)) = *slot {
                if end == now {
                    *slot = None;
                    for s in graph.successors(task) {
                        waiting[s.0] -= 1;
                        if waiting[s.0] == 0 {
                            let at = ready.partition_point(|r| r < s);
                            ready.insert(at, *s);
                        }
                    }
                }
            }
        }
    }
    Ok(Schedule::new(p, placements))
}
