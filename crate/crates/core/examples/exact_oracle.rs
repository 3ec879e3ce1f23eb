//! Exact optimum on small instances, compared with both heuristics. The
//! second part shows an instance where restricting each queue to height
//! order misses the optimum.

use dagsched::ga::{ga_schedule, GaParams};
use dagsched::lsh::{lsh_schedule, PriorityPolicy};
use dagsched::oracle::{brute_force_optimal, height_ordered_optimal, DEFAULT_LIMIT_N};
use dagsched::taskgraph::{generate_random, GeneratorParams, TaskGraph};

fn main() {
    println!("{:>4} {:>5} {:>4} {:>4} {:>4}", "seed", "exact", "GA", "LSH", "LB");
    for seed in 0..8 {
        let g = generate_random(&GeneratorParams::standard(8, seed)).unwrap();
        let exact = brute_force_optimal(&g, 2, DEFAULT_LIMIT_N).unwrap().makespan();
        let ga = ga_schedule(&g, 2, &GaParams { seed, ..GaParams::default() }).unwrap().best_makespan;
        let lsh = lsh_schedule(&g, 2, PriorityPolicy::BottomLevel, seed).unwrap().makespan();
        println!("{seed:>4} {exact:>5} {ga:>4} {lsh:>4} {:>4}", g.makespan_lower_bound(2));
    }

    let g = TaskGraph::from_pairs(vec![5, 4, 1, 1, 2, 2], &[(0, 4), (1, 5), (2, 3), (3, 4), (4, 5)]).unwrap();
    let exact = brute_force_optimal(&g, 2, DEFAULT_LIMIT_N).unwrap();
    let ordered = height_ordered_optimal(&g, 2, DEFAULT_LIMIT_N).unwrap();
    println!();
    println!("exact optimum {}, best height-ordered schedule {}", exact.makespan(), ordered.makespan());
    for q in 0..2 {
        let lane: Vec<String> = exact
            .lane(q)
            .map(|pl| format!("{}(h{})[{},{})", pl.task, g.height(pl.task), pl.start, pl.finish))
            .collect();
        println!("  P{q}: {}", lane.join(" "));
    }
}
