//! Crossover and mutation on the diamond graph. Both operators keep every
//! queue sorted by height, so every child decodes to a feasible schedule.

use dagsched::ga::{crossover_at, decode, mutate, Chromosome};
use dagsched::rng::seeded;
use dagsched::taskgraph::{TaskGraph, TaskId};

fn show(label: &str, graph: &TaskGraph, ch: &Chromosome) {
    let queues: Vec<String> = ch
        .queues
        .iter()
        .map(|q| format!("[{}]", q.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    let makespan = decode(graph, ch).unwrap().makespan();
    println!("{label:<10} {}  makespan {makespan}", queues.join(" "));
}

fn main() {
    let g = TaskGraph::from_pairs(vec![2, 3, 5, 1], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let t = TaskId;
    let a = Chromosome { queues: vec![vec![t(0), t(1), t(3)], vec![t(2)]] };
    let b = Chromosome { queues: vec![vec![t(2), t(3)], vec![t(0), t(1)]] };
    show("parent a", &g, &a);
    show("parent b", &g, &b);
    for cut in 1..=g.max_height() {
        let (x, y) = crossover_at(&a, &b, &g, cut);
        println!("cut at height {cut}");
        show("  child a", &g, &x);
        show("  child b", &g, &y);
    }
    let mut rng = seeded(5);
    let m = mutate(&a, &g, &mut rng);
    assert!(m.is_valid(&g));
    show("mutant a", &g, &m);
}
