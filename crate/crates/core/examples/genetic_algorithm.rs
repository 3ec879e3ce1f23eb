//! Runs the genetic algorithm on a random graph and compares it with list
//! scheduling and the lower bound.
//!
//! ```bash
//! cargo run --release --example genetic_algorithm -- 30 3
//! ```

use dagsched::ga::{ga_schedule, GaParams};
use dagsched::lsh::{lsh_schedule, PriorityPolicy};
use dagsched::taskgraph::{generate_random, GeneratorParams};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(30, |s| s.parse().expect("task count"));
    let p: usize = args.next().map_or(3, |s| s.parse().expect("processor count"));

    let graph = generate_random(&GeneratorParams::standard(n, 42)).unwrap();
    let params = GaParams { max_generations: 300, ..GaParams::default() };
    let result = ga_schedule(&graph, p, &params).unwrap();

    println!("generation  best finish time");
    for (g, best) in result.history.iter().enumerate().filter(|(g, _)| g % 25 == 0) {
        println!("{g:>10}  {best}");
    }
    let lsh = lsh_schedule(&graph, p, PriorityPolicy::BottomLevel, 42).unwrap();
    println!();
    println!("GA finish time   {}", result.best_makespan);
    println!("LSH finish time  {}", lsh.makespan());
    println!("lower bound      {}", graph.makespan_lower_bound(p));
    println!();
    println!("best chromosome (queues in height order):");
    for (q, queue) in result.best_chromosome.queues.iter().enumerate() {
        let tasks: Vec<String> = queue.iter().map(|t| format!("{t}/h{}", graph.height(*t))).collect();
        println!("  P{q}: {}", tasks.join(" "));
    }
}
