//! Generates a random task graph and prints its derived properties.
//!
//! ```bash
//! cargo run --release --example generate_graph -- 12 7
//! ```

use dagsched::taskgraph::{generate_random, GeneratorParams};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(12, |s| s.parse().expect("task count"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));

    let graph = generate_random(&GeneratorParams::standard(n, seed)).expect("valid parameters");

    println!("{n} tasks, {} edges, seed {seed}", graph.edges().len());
    println!("{:>5} {:>6} {:>6}  successors", "task", "weight", "height");
    for t in graph.tasks() {
        let succ: Vec<String> = graph.successors(t).iter().map(|s| s.to_string()).collect();
        println!("{:>5} {:>6} {:>6}  {}", t.to_string(), graph.weight(t), graph.height(t), succ.join(" "));
    }
    println!();
    println!("max height      {}", graph.max_height());
    println!("critical path   {}", graph.critical_path_length());
    println!("total work      {}", graph.total_work());
    for p in 1..=4 {
        println!("lower bound p={p} {}", graph.makespan_lower_bound(p));
    }
    println!();
    print!("{}", graph.to_json());
}
