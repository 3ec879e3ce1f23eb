//! List scheduling under each priority policy, with the greedy dispatch
//! checked against the precedence and processor constraints.

use dagsched::lsh::{compute_priorities, lsh_schedule, PriorityPolicy};
use dagsched::schedule::validate_schedule;
use dagsched::taskgraph::{generate_random, GeneratorParams, TaskGraph};

fn main() {
    // A -> {B, C} -> D with weights 2, 3, 5, 1.
    let diamond = TaskGraph::from_pairs(vec![2, 3, 5, 1], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let priorities = compute_priorities(&diamond, PriorityPolicy::BottomLevel);
    println!("diamond bottom levels: {priorities:?}");
    let s = lsh_schedule(&diamond, 2, PriorityPolicy::BottomLevel, 0).unwrap();
    for pl in s.placements() {
        println!("  {} on P{} [{}, {})", pl.task, pl.processor, pl.start, pl.finish);
    }
    println!("  makespan {}", s.makespan());

    let graph = generate_random(&GeneratorParams::standard(40, 3)).unwrap();
    println!();
    println!("40 tasks, critical path {}, total work {}", graph.critical_path_length(), graph.total_work());
    println!("{:>3} {:>12} {:>8} {:>8} {:>12}", "p", "bottom_level", "height", "weight", "lower bound");
    for p in 1..=4 {
        let mut cols = Vec::new();
        for policy in [PriorityPolicy::BottomLevel, PriorityPolicy::Height, PriorityPolicy::Weight] {
            let s = lsh_schedule(&graph, p, policy, 11).unwrap();
            validate_schedule(&graph, &s).expect("list schedules are feasible");
            cols.push(s.makespan());
        }
        println!("{p:>3} {:>12} {:>8} {:>8} {:>12}", cols[0], cols[1], cols[2], graph.makespan_lower_bound(p));
    }
}
