use dagsched::ga::{crossover, decode, ga_schedule, mutate, random_chromosome, GaParams};
use dagsched::lsh::{lsh_schedule, PriorityPolicy};
use dagsched::oracle::{brute_force_optimal, DEFAULT_LIMIT_N};
use dagsched::rng::seeded;
use dagsched::schedule::{simulate_queues, validate_schedule, Schedule};
use dagsched::taskgraph::{generate_random, validate_dag, GeneratorParams, TaskGraph, TaskId, Time};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random DAG on up to `max_n` tasks: each forward pair (i < j) is an edge
/// with probability 1/`sparsity`.
fn dag(max_n: usize, sparsity: u32) -> impl Strategy<Value = TaskGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (prop::collection::vec(1u64..=20, n), prop::collection::vec(0..sparsity, pairs)).prop_map(
            move |(weights, coins)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if coins[k] == 0 {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                TaskGraph::from_pairs(weights, &edges).unwrap()
            },
        )
    })
}

fn generator_params() -> impl Strategy<Value = GeneratorParams> {
    (1usize..=60, 1usize..=4, 0usize..=4, 1u64..=10, 0u64..=30, any::<u64>()).prop_map(
        |(n, min_succ, extra, min_w, extra_w, seed)| GeneratorParams {
            n,
            min_succ,
            max_succ: min_succ + extra,
            min_w,
            max_w: min_w + extra_w,
            seed,
        },
    )
}

/// Longest weighted path by repeated relaxation over the edge list.
fn longest_path(graph: &TaskGraph) -> Time {
    let mut finish: Vec<Time> = graph.weights().to_vec();
    for _ in 0..graph.len() {
        for &(u, v) in graph.edges() {
            finish[v.0] = finish[v.0].max(finish[u.0] + graph.weight(v));
        }
    }
    finish.into_iter().max().unwrap_or(0)
}

/// A random height-ordered partition of the tasks over `p` queues.
fn height_ordered_partition(graph: &TaskGraph, p: usize, seed: u64) -> Vec<Vec<TaskId>> {
    let mut rng = seeded(seed);
    let mut order: Vec<TaskId> = graph.tasks().collect();
    order.shuffle(&mut rng);
    order.sort_by_key(|&t| graph.height(t));
    let mut queues = vec![Vec::new(); p];
    for t in order {
        queues[rng.gen_range(0..p)].push(t);
    }
    queues
}

fn assert_lower_bounds(graph: &TaskGraph, s: &Schedule, p: usize) {
    assert!(s.makespan() >= graph.critical_path_length());
    assert!(s.makespan() >= graph.total_work().div_ceil(p as Time));
}

/// Every moment a ready task waits must find all processors busy.
fn assert_no_avoidable_idle(graph: &TaskGraph, s: &Schedule) {
    let busy_at = |q: usize, t: Time| s.lane(q).any(|pl| pl.start <= t && t < pl.finish);
    let by_task = s.by_task();
    for v in graph.tasks() {
        let pl = by_task[v.0];
        let ready = graph.predecessors(v).iter().map(|u| by_task[u.0].finish).max().unwrap_or(0);
        let mut probes: Vec<Time> = s.placements().iter().map(|x| x.finish).filter(|&f| f > ready && f < pl.start).collect();
        if ready < pl.start {
            probes.push(ready);
        }
        for t in probes {
            for q in 0..s.processors() {
                assert!(busy_at(q, t), "P{q} idle at {t} while {v} was ready");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn generator_output_is_a_valid_dag(params in generator_params()) {
        let g = generate_random(&params).unwrap();
        prop_assert_eq!(g.len(), params.n);
        prop_assert!(validate_dag(g.weights(), g.edges()).is_ok());
        for t in g.tasks() {
            prop_assert!((params.min_w..=params.max_w).contains(&g.weight(t)));
            let above = params.n - 1 - t.0;
            let out = g.successors(t).len();
            prop_assert!(out <= params.max_succ.min(above));
            prop_assert!(out >= params.min_succ.min(above));
            prop_assert!(g.successors(t).iter().all(|s| s.0 > t.0));
        }
        prop_assert_eq!(generate_random(&params).unwrap(), g);
    }

    #[test]
    fn heights_and_critical_path(g in dag(14, 3)) {
        for &(u, v) in g.edges() {
            prop_assert!(g.height(u) < g.height(v));
        }
        for t in g.tasks() {
            let expected = g.predecessors(t).iter().map(|u| g.height(*u) + 1).max().unwrap_or(0);
            prop_assert_eq!(g.height(t), expected);
        }
        let cp = g.critical_path_length();
        prop_assert_eq!(cp, longest_path(&g));
        prop_assert!(cp >= g.weights().iter().copied().max().unwrap());
        prop_assert!(cp <= g.total_work());
    }

    #[test]
    fn documents_round_trip(g in dag(12, 2), p in 1usize..=4, seed in any::<u64>()) {
        prop_assert_eq!(TaskGraph::from_json(&g.to_json()).unwrap(), g.clone());
        let s = simulate_queues(&g, &height_ordered_partition(&g, p, seed)).unwrap();
        prop_assert_eq!(Schedule::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn height_ordered_queues_simulate_soundly(g in dag(16, 3), p in 1usize..=4, seed in any::<u64>()) {
        let queues = height_ordered_partition(&g, p, seed);
        let s = simulate_queues(&g, &queues).unwrap();
        validate_schedule(&g, &s).unwrap();
        assert_lower_bounds(&g, &s, p);
        let by_task = s.by_task();
        for queue in &queues {
            let mut free = 0;
            for &t in queue {
                let ready = g.predecessors(t).iter().map(|u| by_task[u.0].finish).max().unwrap_or(0);
                prop_assert_eq!(by_task[t.0].start, free.max(ready));
                free = by_task[t.0].finish;
            }
        }
    }

    #[test]
    fn list_schedules_are_valid_and_greedy(g in dag(20, 3), p in 1usize..=4, seed in any::<u64>(), policy in 0usize..3) {
        let policy = [PriorityPolicy::BottomLevel, PriorityPolicy::Height, PriorityPolicy::Weight][policy];
        let s = lsh_schedule(&g, p, policy, seed).unwrap();
        validate_schedule(&g, &s).unwrap();
        assert_lower_bounds(&g, &s, p);
        assert_no_avoidable_idle(&g, &s);
        prop_assert_eq!(&lsh_schedule(&g, p, policy, seed).unwrap(), &s);
        let single = lsh_schedule(&g, 1, policy, seed).unwrap();
        prop_assert_eq!(single.makespan(), g.total_work());
    }

    #[test]
    fn genetic_operators_preserve_validity(g in dag(16, 3), p in 1usize..=4, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_chromosome(&g, p, &mut rng);
        let b = random_chromosome(&g, p, &mut rng);
        prop_assert!(a.is_valid(&g) && b.is_valid(&g));
        let (x, y) = crossover(&a, &b, &g, &mut rng);
        let m = mutate(&x, &g, &mut rng);
        for ch in [&x, &y, &m] {
            prop_assert!(ch.is_valid(&g));
            validate_schedule(&g, &decode(&g, ch).unwrap()).unwrap();
        }
    }

    #[test]
    fn ga_is_deterministic_and_monotone(g in dag(14, 3), p in 1usize..=3, seed in any::<u64>()) {
        let params = GaParams { max_generations: 40, seed, ..GaParams::default() };
        let r = ga_schedule(&g, p, &params).unwrap();
        validate_schedule(&g, &r.best_schedule).unwrap();
        assert_lower_bounds(&g, &r.best_schedule, p);
        prop_assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(*r.history.last().unwrap(), r.best_makespan);
        let again = ga_schedule(&g, p, &params).unwrap();
        prop_assert_eq!(again.best_schedule, r.best_schedule);
        prop_assert_eq!(again.history, r.history);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_bounds_both_heuristics(g in dag(7, 2), p in 1usize..=3, seed in any::<u64>()) {
        let best = brute_force_optimal(&g, p, DEFAULT_LIMIT_N).unwrap();
        validate_schedule(&g, &best).unwrap();
        assert_lower_bounds(&g, &best, p);
        let lsh = lsh_schedule(&g, p, PriorityPolicy::BottomLevel, seed).unwrap();
        let ga = ga_schedule(&g, p, &GaParams { max_generations: 30, seed, ..GaParams::default() }).unwrap();
        prop_assert!(best.makespan() <= lsh.makespan());
        prop_assert!(best.makespan() <= ga.best_makespan);
        prop_assert_eq!(brute_force_optimal(&g, p, DEFAULT_LIMIT_N).unwrap(), best);
    }
}
