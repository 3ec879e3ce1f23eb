//! # dagsched
//!
//! Scheduling of weighted task DAGs onto identical processors, minimizing
//! the makespan (finish time of the last task).
//!
//! * [`taskgraph`]: the task model, derived heights and critical path, a
//!   seeded random generator and the JSON graph format.
//! * [`schedule`]: timed placements, the queue simulator and validation.
//! * [`lsh`]: list scheduling with static priorities and seeded tie-breaking.
//! * [`ga`]: a genetic algorithm over height-ordered processor queues.
//! * [`oracle`]: exact exhaustive search for small instances.
//! * [`bench`], [`report`]: the paired GA/LSH benchmark harness and its
//!   tables and charts.
//! * [`gantt`]: ASCII and SVG Gantt charts.
//! * [`cli`]: the `dagsched` command-line tool.
//!
//! Each capability has a runnable example under `examples/`:
//!
//! ```bash
//! cargo run --release -p dagsched --example generate_graph
//! cargo run --release -p dagsched --example list_scheduling
//! cargo run --release -p dagsched --example genetic_algorithm
//! cargo run --release -p dagsched --example genetic_operators
//! cargo run --release -p dagsched --example exact_oracle
//! cargo run --release -p dagsched --example gantt_chart
//! cargo run --release -p dagsched --example benchmark_suite
//! ```
//!
//! ```
//! use dagsched::ga::{ga_schedule, GaParams};
//! use dagsched::lsh::{lsh_schedule, PriorityPolicy};
//! use dagsched::taskgraph::TaskGraph;
//!
//! let diamond = TaskGraph::from_pairs(vec![2, 3, 5, 1], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
//! let lsh = lsh_schedule(&diamond, 2, PriorityPolicy::BottomLevel, 7).unwrap();
//! let ga = ga_schedule(&diamond, 2, &GaParams::default()).unwrap();
//! assert_eq!(lsh.makespan(), 8);
//! assert_eq!(ga.best_makespan, 8);
//! ```

pub mod bench;
pub mod cli;
pub mod ga;
pub mod gantt;
pub mod lsh;
pub mod oracle;
pub mod report;
pub mod rng;
pub mod schedule;
pub mod taskgraph;

pub use ga::{ga_schedule, GaParams, GaResult};
pub use lsh::{lsh_schedule, PriorityPolicy};
pub use oracle::brute_force_optimal;
pub use schedule::{simulate_queues, validate_schedule, Placement, Schedule};
pub use taskgraph::{generate_random, GeneratorParams, TaskGraph, TaskId, Time};
