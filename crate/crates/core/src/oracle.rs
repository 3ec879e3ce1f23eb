//! Exhaustive optimal scheduling for small instances.
//!
//! Used as ground truth for the heuristics. Nothing here is randomized; ties
//! between optimal schedules go to the lexicographically smallest
//! `(processor, start)` list indexed by task id.

use thiserror::Error;

use crate::schedule::{queue_makespan, simulate_queues, Placement, Schedule};
use crate::taskgraph::{TaskGraph, TaskId, Time};

pub const DEFAULT_LIMIT_N: usize = 9;
pub const MAX_PROCESSORS: usize = 3;
pub const INTERLEAVING_LIMIT_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for exhaustive search: n = {n} (limit {limit_n}), p = {p} (limit {limit_p})")]
    TooLarge { n: usize, p: usize, limit_n: usize, limit_p: usize },
    #[error("processor count must be at least 1")]
    InvalidProcessorCount,
}

/// Renames processors in order of first use by task id, which gives the
/// smallest placement key among all relabelings of the same schedule.
fn relabel(schedule: Schedule) -> Schedule {
    let p = schedule.processors();
    let mut map = vec![usize::MAX; p];
    let mut next = 0;
    for pl in schedule.by_task() {
        if map[pl.processor] == usize::MAX {
            map[pl.processor] = next;
            next += 1;
        }
    }
    let placements = schedule
        .placements()
        .iter()
        .map(|pl| Placement { processor: map[pl.processor], ..*pl })
        .collect();
    Schedule::new(p, placements)
}

fn check_size(graph: &TaskGraph, p: usize, limit_n: usize) -> Result<(), OracleError> {
    if p == 0 {
        return Err(OracleError::InvalidProcessorCount);
    }
    if graph.len() > limit_n || p > MAX_PROCESSORS {
        return Err(OracleError::TooLarge { n: graph.len(), p, limit_n, limit_p: MAX_PROCESSORS });
    }
    Ok(())
}

/// (processor, start) per task, indexed by task id.
type PlacementKey = Vec<(usize, Time)>;

/// Tracks the best schedule under (makespan, placement key) order.
struct Incumbent {
    best: Option<(Time, PlacementKey, Schedule)>,
    scratch: Vec<Option<Time>>,
}

impl Incumbent {
    fn new() -> Self {
        Incumbent { best: None, scratch: Vec::new() }
    }

    fn offer(&mut self, graph: &TaskGraph, queues: &[Vec<TaskId>]) {
        let Ok(ms) = queue_makespan(graph, queues, &mut self.scratch) else { return };
        if matches!(&self.best, Some((b, _, _)) if ms > *b) {
            return;
        }
        let schedule = relabel(simulate_queues(graph, queues).expect("makespan already computed"));
        let key: PlacementKey = schedule.by_task().iter().map(|pl| (pl.processor, pl.start)).collect();
        let better = match &self.best {
            None => true,
            Some((b, k, _)) => ms < *b || key < *k,
        };
        if better {
            self.best = Some((ms, key, schedule));
        }
    }

    fn makespan(&self) -> Option<Time> {
        self.best.as_ref().map(|(ms, _, _)| *ms)
    }

    fn finish(self, p: usize) -> Schedule {
        self.best.map(|(_, _, s)| s).unwrap_or_else(|| Schedule::new(p, Vec::new()))
    }
}

/// Exact minimum-makespan schedule.
///
/// Every schedule a set of processor queues can produce is enumerated once,
/// by placing tasks in increasing `(start, processor)` order: a candidate is
/// any task whose predecessors are all placed, put on any processor, starting
/// at the later of the processor's free time and its predecessors' finishes.
/// Processors are interchangeable, so only the lowest-index idle-so-far
/// processor is opened. Branches whose lower bound exceeds the incumbent are
/// cut.
pub fn brute_force_optimal(graph: &TaskGraph, p: usize, limit_n: usize) -> Result<Schedule, OracleError> {
    check_size(graph, p, limit_n)?;
    let mut search = StartOrderSearch::new(graph, p);
    search.descend(0, 0);
    Ok(search.inc.finish(p))
}

struct StartOrderSearch<'g> {
    graph: &'g TaskGraph,
    bottom: Vec<Time>,
    finish: Vec<Option<Time>>,
    free_at: Vec<Time>,
    used: usize,
    queues: Vec<Vec<TaskId>>,
    remaining_work: Time,
    last: Option<(Time, usize)>,
    inc: Incumbent,
}

impl<'g> StartOrderSearch<'g> {
    fn new(graph: &'g TaskGraph, p: usize) -> Self {
        let bottom = crate::lsh::compute_priorities(graph, crate::lsh::PriorityPolicy::BottomLevel)
            .into_iter()
            .map(|b| b as Time)
            .collect();
        StartOrderSearch {
            graph,
            bottom,
            finish: vec![None; graph.len()],
            free_at: vec![0; p],
            used: 0,
            queues: vec![Vec::new(); p],
            remaining_work: graph.total_work(),
            last: None,
            inc: Incumbent::new(),
        }
    }

    fn lower_bound(&self, floor: Time) -> Time {
        let p = self.free_at.len() as Time;
        let busy: Time = self.free_at.iter().map(|&f| f.max(floor)).sum();
        let mut bound = (busy + self.remaining_work).div_ceil(p);
        bound = bound.max(self.finish.iter().flatten().copied().max().unwrap_or(0));
        for t in self.graph.tasks() {
            if self.finish[t.0].is_none() {
                if let Some(ready) = self.ready_time(t) {
                    bound = bound.max(ready.max(floor) + self.bottom[t.0]);
                }
            }
        }
        bound
    }

    fn ready_time(&self, t: TaskId) -> Option<Time> {
        self.graph
            .predecessors(t)
            .iter()
            .try_fold(0, |acc, pr| self.finish[pr.0].map(|f| acc.max(f)))
    }

    fn descend(&mut self, placed: usize, floor: Time) {
        if placed == self.graph.len() {
            self.inc.offer(self.graph, &self.queues);
            return;
        }
        if let Some(best) = self.inc.makespan() {
            if self.lower_bound(floor) > best {
                return;
            }
        }
        let p = self.free_at.len();
        for t in self.graph.tasks() {
            if self.finish[t.0].is_some() {
                continue;
            }
            let Some(ready) = self.ready_time(t) else { continue };
            for q in 0..p.min(self.used + 1) {
                let start = ready.max(self.free_at[q]);
                if self.last.is_some_and(|last| (start, q) <= last) {
                    continue;
                }
                let end = start + self.graph.weight(t);
                let saved = (self.free_at[q], self.used, self.last);
                self.finish[t.0] = Some(end);
                self.free_at[q] = end;
                self.used = self.used.max(q + 1);
                self.last = Some((start, q));
                self.queues[q].push(t);
                self.remaining_work -= self.graph.weight(t);

                self.descend(placed + 1, start);

                self.remaining_work += self.graph.weight(t);
                self.queues[q].pop();
                (self.free_at[q], self.used, self.last) = saved;
                self.finish[t.0] = None;
            }
        }
    }
}

/// Best schedule within the genetic algorithm's search space: all processor
/// assignments combined with all queue orders whose heights never decrease.
///
/// This is not always a global optimum; a processor may need to run a
/// higher task before a lower one. Assignments are enumerated as restricted
/// growth strings (a task opens processor `k` only after `k - 1` is in use).
pub fn height_ordered_optimal(graph: &TaskGraph, p: usize, limit_n: usize) -> Result<Schedule, OracleError> {
    check_size(graph, p, limit_n)?;
    let n = graph.len();
    let mut inc = Incumbent::new();
    let mut assign = vec![0usize; n];
    enumerate_assignments(graph, p, 0, 0, &mut assign, &mut inc);
    Ok(inc.finish(p))
}

fn enumerate_assignments(
    graph: &TaskGraph,
    p: usize,
    i: usize,
    used: usize,
    assign: &mut [usize],
    inc: &mut Incumbent,
) {
    if i == assign.len() {
        enumerate_orders(graph, p, assign, inc);
        return;
    }
    for q in 0..p.min(used + 1) {
        assign[i] = q;
        enumerate_assignments(graph, p, i + 1, used.max(q + 1), assign, inc);
    }
}

/// Every combination of permutations of the equal-height runs of each queue.
fn enumerate_orders(graph: &TaskGraph, p: usize, assign: &[usize], inc: &mut Incumbent) {
    let mut queues: Vec<Vec<TaskId>> = vec![Vec::new(); p];
    for t in graph.tasks() {
        queues[assign[t.0]].push(t);
    }
    let mut runs = Vec::new();
    for (q, queue) in queues.iter_mut().enumerate() {
        queue.sort_by_key(|&t| (graph.height(t), t));
        let mut start = 0;
        while start < queue.len() {
            let h = graph.height(queue[start]);
            let end = start + queue[start..].iter().take_while(|&&t| graph.height(t) == h).count();
            if end - start > 1 {
                runs.push((q, start, end));
            }
            start = end;
        }
    }
    loop {
        inc.offer(graph, &queues);
        // Odometer over the runs; a run that wraps back to sorted order carries.
        let mut carried = true;
        for &(q, s, e) in &runs {
            if next_permutation(&mut queues[q][s..e]) {
                carried = false;
                break;
            }
        }
        if carried {
            return;
        }
    }
}

/// Advances to the next lexicographic permutation; on the last one, resets
/// to ascending order and returns `false`.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        v.reverse();
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Independent audit route: every topological order of the whole graph combined with
/// every processor assignment, each queue being the order's restriction to
/// that processor. This covers every semi-active schedule, not only
/// height-ordered ones. Limited to `INTERLEAVING_LIMIT_N` tasks by default.
pub fn exhaustive_interleavings(graph: &TaskGraph, p: usize, limit_n: usize) -> Result<Schedule, OracleError> {
    check_size(graph, p, limit_n)?;
    let n = graph.len();
    let mut inc = Incumbent::new();
    let mut order = Vec::with_capacity(n);
    let mut indeg: Vec<usize> = graph.tasks().map(|t| graph.predecessors(t).len()).collect();
    let mut placed = vec![false; n];
    let mut assign = vec![0usize; n];
    topo_orders(graph, &mut order, &mut indeg, &mut placed, &mut |order| {
        assign_along(graph, p, order, 0, 0, &mut assign, &mut inc);
    });
    Ok(inc.finish(p))
}

fn topo_orders(
    graph: &TaskGraph,
    order: &mut Vec<TaskId>,
    indeg: &mut [usize],
    placed: &mut [bool],
    visit: &mut dyn FnMut(&[TaskId]),
) {
    if order.len() == graph.len() {
        visit(order);
        return;
    }
    for t in graph.tasks() {
        if placed[t.0] || indeg[t.0] != 0 {
            continue;
        }
        placed[t.0] = true;
        order.push(t);
        for s in graph.successors(t) {
            indeg[s.0] -= 1;
        }
        topo_orders(graph, order, indeg, placed, visit);
        for s in graph.successors(t) {
            indeg[s.0] += 1;
        }
        order.pop();
        placed[t.0] = false;
    }
}

fn assign_along(
    graph: &TaskGraph,
    p: usize,
    order: &[TaskId],
    i: usize,
    used: usize,
    assign: &mut [usize],
    inc: &mut Incumbent,
) {
    if i == order.len() {
        let mut queues = vec![Vec::new(); p];
        for &t in order {
            queues[assign[t.0]].push(t);
        }
        inc.offer(graph, &queues);
        return;
    }
    for q in 0..p.min(used + 1) {
        assign[order[i].0] = q;
        assign_along(graph, p, order, i + 1, used.max(q + 1), assign, inc);
    }
}
