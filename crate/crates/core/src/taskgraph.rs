//! Weighted task DAG: precedence edges, per-task durations and the derived
//! quantities the schedulers rely on (heights, critical path, total work).
//!
//! A [`TaskGraph`] can only be obtained through validation, so every value of
//! the type is a well-formed DAG with dense ids, positive weights and cached
//! heights. Edges carry precedence only; there is no communication cost.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::seeded;

/// Duration and timestamp unit. All times are exact integers.
pub type Time = u64;

/// Dense task index in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TaskId(pub usize);

impl TaskId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("cycle detected through task {task}")]
    CycleDetected { task: TaskId },
    #[error("task {task} has weight {weight}; weights must be at least 1")]
    BadWeight { task: TaskId, weight: Time },
    #[error("edge {pred} -> {succ} references a task outside 0..{n}")]
    DanglingEdge { pred: usize, succ: usize, n: usize },
    #[error("self edge on task {task}")]
    SelfEdge { task: TaskId },
    #[error("duplicate edge {pred} -> {succ}")]
    DuplicateEdge { pred: TaskId, succ: TaskId },
    #[error("task ids must be dense 0..n and sorted; found id {found} at position {position}")]
    NonDenseIds { position: usize, found: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

/// Checks raw graph parts: dense weights (implicit ids), every weight at
/// least 1, in-range edges, no self or duplicate edges, and no cycles.
pub fn validate_dag(weights: &[Time], edges: &[(TaskId, TaskId)]) -> Result<(), GraphError> {
    check_parts(weights, edges)?;
    topological_order(weights.len(), edges).map(|_| ())
}

fn check_parts(weights: &[Time], edges: &[(TaskId, TaskId)]) -> Result<(), GraphError> {
    let n = weights.len();
    if let Some((i, &w)) = weights.iter().enumerate().find(|(_, &w)| w == 0) {
        return Err(GraphError::BadWeight { task: TaskId(i), weight: w });
    }
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for &(u, v) in edges {
        if u.0 >= n || v.0 >= n {
            return Err(GraphError::DanglingEdge { pred: u.0, succ: v.0, n });
        }
        if u == v {
            return Err(GraphError::SelfEdge { task: u });
        }
        if !seen.insert((u, v)) {
            return Err(GraphError::DuplicateEdge { pred: u, succ: v });
        }
    }
    Ok(())
}

/// Kahn's algorithm. On failure, walks predecessors inside the leftover set
/// until a task repeats, which is guaranteed to lie on a cycle.
fn topological_order(n: usize, edges: &[(TaskId, TaskId)]) -> Result<Vec<TaskId>, GraphError> {
    let mut indeg = vec![0usize; n];
    let mut succs = vec![Vec::new(); n];
    for &(u, v) in edges {
        indeg[v.0] += 1;
        succs[u.0].push(v.0);
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(TaskId(u));
        for &v in &succs[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    let mut preds = vec![Vec::new(); n];
    for &(u, v) in edges {
        if indeg[u.0] > 0 && indeg[v.0] > 0 {
            preds[v.0].push(u.0);
        }
    }
    let start = (0..n).find(|&i| indeg[i] > 0).expect("leftover task exists");
    let mut visited = vec![false; n];
    let mut cur = start;
    while !visited[cur] {
        visited[cur] = true;
        // Every leftover task keeps at least one leftover predecessor.
        cur = preds[cur][0];
    }
    Err(GraphError::CycleDetected { task: TaskId(cur) })
}

/// Immutable, validated task DAG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskGraph {
    weights: Vec<Time>,
    edges: Vec<(TaskId, TaskId)>,
    preds: Vec<Vec<TaskId>>,
    succs: Vec<Vec<TaskId>>,
    topo: Vec<TaskId>,
    heights: Vec<u32>,
}

impl TaskGraph {
    /// Validates the parts and builds the graph. Edges are stored sorted.
    pub fn new(weights: Vec<Time>, mut edges: Vec<(TaskId, TaskId)>) -> Result<Self, GraphError> {
        check_parts(&weights, &edges)?;
        edges.sort_unstable();
        let topo = topological_order(weights.len(), &edges)?;
        let n = weights.len();
        let mut preds = vec![Vec::new(); n];
        let mut succs = vec![Vec::new(); n];
        for &(u, v) in &edges {
            succs[u.0].push(v);
            preds[v.0].push(u);
        }
        let mut graph = TaskGraph { weights, edges, preds, succs, topo, heights: Vec::new() };
        graph.heights = graph.compute_heights();
        Ok(graph)
    }

    /// Graph with no edges.
    pub fn independent(weights: Vec<Time>) -> Result<Self, GraphError> {
        Self::new(weights, Vec::new())
    }

    /// Convenience constructor from plain index pairs.
    pub fn from_pairs(weights: Vec<Time>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new(weights, edges.iter().map(|&(u, v)| (TaskId(u), TaskId(v))).collect())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn tasks(&self) -> impl ExactSizeIterator<Item = TaskId> + '_ {
        (0..self.weights.len()).map(TaskId)
    }

    pub fn weight(&self, t: TaskId) -> Time {
        self.weights[t.0]
    }

    pub fn weights(&self) -> &[Time] {
        &self.weights
    }

    /// Sorted lexicographically by (pred, succ).
    pub fn edges(&self) -> &[(TaskId, TaskId)] {
        &self.edges
    }

    pub fn predecessors(&self, t: TaskId) -> &[TaskId] {
        &self.preds[t.0]
    }

    pub fn successors(&self, t: TaskId) -> &[TaskId] {
        &self.succs[t.0]
    }

    /// A topological order (Kahn, FIFO from lowest-index sources).
    pub fn topological_order(&self) -> &[TaskId] {
        &self.topo
    }

    /// Cached precedence levels: 0 for sources, else 1 + max over predecessors.
    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn height(&self, t: TaskId) -> u32 {
        self.heights[t.0]
    }

    /// Largest height in the graph (0 for an empty graph).
    pub fn max_height(&self) -> u32 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// Recomputes heights from the edges. Equal to [`TaskGraph::heights`] on
    /// every constructed graph.
    pub fn compute_heights(&self) -> Vec<u32> {
        let mut heights = vec![0u32; self.len()];
        for &t in &self.topo {
            heights[t.0] = self.preds[t.0]
                .iter()
                .map(|p| heights[p.0] + 1)
                .max()
                .unwrap_or(0);
        }
        heights
    }

    /// Longest source-to-sink path, summing task weights along it.
    pub fn critical_path_length(&self) -> Time {
        let mut finish = vec![0 as Time; self.len()];
        for &t in &self.topo {
            let ready = self.preds[t.0].iter().map(|p| finish[p.0]).max().unwrap_or(0);
            finish[t.0] = ready + self.weights[t.0];
        }
        finish.into_iter().max().unwrap_or(0)
    }

    pub fn total_work(&self) -> Time {
        self.weights.iter().sum()
    }

    /// `max(t_cp, ceil(total_work / p))`, a lower bound on any schedule.
    pub fn makespan_lower_bound(&self, p: usize) -> Time {
        let p = p.max(1) as Time;
        self.critical_path_length().max(self.total_work().div_ceil(p))
    }

    /// Serializes to the pretty-printed JSON graph document.
    pub fn to_json(&self) -> String {
        let doc = GraphDocument {
            tasks: self
                .tasks()
                .map(|t| TaskRecord { id: t.0, weight: self.weight(t) })
                .collect(),
            edges: self.edges.iter().map(|&(u, v)| [u.0, v.0]).collect(),
        };
        format!(
            "{{\n  \"tasks\": {},\n  \"edges\": {}\n}}\n",
            json_lines(&doc.tasks),
            json_lines(&doc.edges)
        )
    }

    /// Parses a JSON graph document and validates it.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let mut weights = Vec::with_capacity(doc.tasks.len());
        for (position, rec) in doc.tasks.iter().enumerate() {
            if rec.id != position {
                return Err(GraphError::NonDenseIds { position, found: rec.id });
            }
            weights.push(rec.weight);
        }
        let edges = doc.edges.iter().map(|&[u, v]| (TaskId(u), TaskId(v))).collect();
        TaskGraph::new(weights, edges)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    tasks: Vec<TaskRecord>,
    edges: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskRecord {
    id: usize,
    weight: Time,
}

/// Parameters of the random layered-by-index generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub n: usize,
    pub min_succ: usize,
    pub max_succ: usize,
    pub min_w: Time,
    pub max_w: Time,
    pub seed: u64,
}

impl GeneratorParams {
    /// 3..=6 successors and weights 1..=25.
    pub fn standard(n: usize, seed: u64) -> Self {
        GeneratorParams { n, min_succ: 3, max_succ: 6, min_w: 1, max_w: 25, seed }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.n == 0 {
            return Err(GraphError::InvalidParams("task count must be at least 1".into()));
        }
        if self.min_succ == 0 || self.min_succ > self.max_succ {
            return Err(GraphError::InvalidParams(format!(
                "successor bounds must satisfy 1 <= min <= max, got {}..{}",
                self.min_succ, self.max_succ
            )));
        }
        if self.min_w == 0 || self.min_w > self.max_w {
            return Err(GraphError::InvalidParams(format!(
                "weight bounds must satisfy 1 <= min <= max, got {}..{}",
                self.min_w, self.max_w
            )));
        }
        Ok(())
    }
}

/// Draws a random DAG.
///
/// All weights are drawn first, in index order, uniformly from
/// `min_w..=max_w`. Then for each task `i` in index order a successor count is
/// drawn from `min_succ..=max_succ`, clipped to the `n - 1 - i` higher-indexed
/// tasks, and that many distinct successors are sampled uniformly among them.
/// Edges only point to larger indices, so the result is always acyclic.
pub fn generate_random(params: &GeneratorParams) -> Result<TaskGraph, GraphError> {
    params.validate()?;
    let n = params.n;
    let mut rng = seeded(params.seed);
    let weights: Vec<Time> = (0..n).map(|_| rng.gen_range(params.min_w..=params.max_w)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        let available = n - 1 - i;
        let count = rng.gen_range(params.min_succ..=params.max_succ).min(available);
        for offset in sample(&mut rng, available, count) {
            edges.push((TaskId(i), TaskId(i + 1 + offset)));
        }
    }
    TaskGraph::new(weights, edges)
}

/// JSON array with one compact element per line.
pub(crate) fn json_lines<T: Serialize>(items: &[T]) -> String {
    if items.is_empty() {
        return "[]".into();
    }
    let body: Vec<String> =
        items.iter().map(|x| format!("    {}", serde_json::to_string(x).expect("record serializes"))).collect();
    format!("[\n{}\n  ]", body.join(",\n"))
}
