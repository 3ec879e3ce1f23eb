//! Acceptance suite. Prints one PASS/FAIL line per criterion followed by its
//! measurements, and exits nonzero if any criterion fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use dagsched::bench::{self, Algorithm, BenchConfig, CellOutcome};
use dagsched::ga::{crossover, decode, ga_schedule, mutate, random_chromosome, GaParams};
use dagsched::lsh::{lsh_schedule, PriorityPolicy};
use dagsched::oracle::{brute_force_optimal, DEFAULT_LIMIT_N, MAX_PROCESSORS};
use dagsched::report;
use dagsched::rng::seeded;
use dagsched::schedule::{validate_schedule, Schedule};
use dagsched::taskgraph::{generate_random, GeneratorParams, TaskGraph, Time};
use rand::Rng;

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    details: Vec<String>,
}

fn secs(d: Duration) -> String {
    format!("{:.1} s", d.as_secs_f64())
}

fn check_schedule(graph: &TaskGraph, p: usize, s: &Schedule) -> Result<(), String> {
    validate_schedule(graph, s).map_err(|e| e.to_string())?;
    let bound = graph.makespan_lower_bound(p);
    if s.makespan() < bound {
        return Err(format!("makespan {} below lower bound {bound}", s.makespan()));
    }
    Ok(())
}

fn nonincreasing(history: &[Time]) -> bool {
    history.windows(2).all(|w| w[1] <= w[0])
}

/// Collects GA histories from every run in the suite.
#[derive(Default)]
struct Histories {
    runs: usize,
    bad: usize,
}

impl Histories {
    fn record(&mut self, history: &[Time]) {
        self.runs += 1;
        if !nonincreasing(history) {
            self.bad += 1;
        }
    }
}

fn validity_suite(histories: &mut Histories) -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(500);
    let (mut violations, mut oracle_runs) = (Vec::new(), 0);
    for i in 0..500u64 {
        let n = rng.gen_range(1..=60);
        let p = rng.gen_range(1..=4);
        let min_succ = rng.gen_range(1..=3);
        let params = GeneratorParams {
            n,
            min_succ,
            max_succ: min_succ + rng.gen_range(0..=3),
            min_w: 1,
            max_w: rng.gen_range(1..=25),
            seed: 10_000 + i,
        };
        let graph = generate_random(&params).unwrap();
        let lsh = lsh_schedule(&graph, p, PriorityPolicy::BottomLevel, i).unwrap();
        let ga = ga_schedule(&graph, p, &GaParams { seed: i, ..GaParams::default() }).unwrap();
        histories.record(&ga.history);
        let mut checks = vec![("LSH", check_schedule(&graph, p, &lsh)), ("GA", check_schedule(&graph, p, &ga.best_schedule))];
        if n <= DEFAULT_LIMIT_N && p <= MAX_PROCESSORS {
            oracle_runs += 1;
            let best = brute_force_optimal(&graph, p, DEFAULT_LIMIT_N).unwrap();
            checks.push(("ORACLE", check_schedule(&graph, p, &best)));
        }
        for (alg, r) in checks {
            if let Err(e) = r {
                violations.push(format!("graph {i} (n={n}, p={p}) {alg}: {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let mut details = vec![format!(
        "500 graphs, {oracle_runs} within oracle limits, {} violations, {}",
        violations.len(),
        secs(elapsed)
    )];
    details.extend(violations.iter().take(10).cloned());
    Outcome {
        id: 1,
        title: "validity and lower bounds",
        pass: violations.is_empty() && elapsed < Duration::from_secs(120),
        details,
    }
}

fn oracle_suite(histories: &mut Histories) -> (Outcome, Outcome) {
    let start = Instant::now();
    let (mut violations, mut optimal) = (Vec::new(), 0);
    for k in 0..100u64 {
        let n = 1 + (k % 8) as usize;
        let graph = generate_random(&GeneratorParams::standard(n, 1000 + k)).unwrap();
        let best = brute_force_optimal(&graph, 2, DEFAULT_LIMIT_N).unwrap().makespan();
        let lsh = lsh_schedule(&graph, 2, PriorityPolicy::BottomLevel, k).unwrap().makespan();
        let ga = ga_schedule(&graph, 2, &GaParams { seed: k, ..GaParams::default() }).unwrap();
        histories.record(&ga.history);
        if best > lsh || best > ga.best_makespan {
            violations.push(format!("graph {k} (n={n}): oracle {best}, LSH {lsh}, GA {}", ga.best_makespan));
        }
        if ga.best_makespan == best {
            optimal += 1;
        }
    }
    let elapsed = start.elapsed();
    let mut details = vec![format!("100 graphs (n <= 8, p = 2), {} violations, {}", violations.len(), secs(elapsed))];
    details.extend(violations);
    let dominance = Outcome {
        id: 2,
        title: "oracle dominates both heuristics",
        pass: details.len() == 1 && elapsed < Duration::from_secs(300),
        details,
    };
    let rate = Outcome {
        id: 3,
        title: "GA optimality rate at toy scale",
        pass: optimal >= 90,
        details: vec![format!("GA reached the optimum on {optimal}/100 instances (required >= 90)")],
    };
    (dominance, rate)
}

fn cell_means(cells: &[CellOutcome], n: usize, alg: Algorithm) -> f64 {
    let values: Vec<Time> = cells
        .iter()
        .filter(|c| c.n == n)
        .flat_map(|c| c.rows.iter().filter(|r| r.algorithm == alg).map(|r| r.finish_time))
        .collect();
    values.iter().sum::<Time>() as f64 / values.len() as f64
}

fn trend_suite(histories: &mut Histories) -> (Outcome, Outcome) {
    let start = Instant::now();
    let config = BenchConfig {
        task_counts: vec![8, 17, 30, 50, 100],
        processor_counts: vec![2],
        seeds_per_cell: 30,
        ..BenchConfig::default()
    };
    let cells = bench::run_cells(&config).unwrap();
    let elapsed = start.elapsed();
    for c in &cells {
        histories.record(&c.ga_history);
    }
    let line = |n: usize| {
        let (ga, lsh) = (cell_means(&cells, n, Algorithm::Ga), cell_means(&cells, n, Algorithm::Lsh));
        let lb: f64 = cells.iter().filter(|c| c.n == n).map(|c| c.graph.makespan_lower_bound(2) as f64).sum::<f64>() / 30.0;
        (ga, lsh, format!("n={n:<3} mean GA {ga:.2}  mean LSH {lsh:.2}  GA/LSH {:.3}  mean lower bound {lb:.2}", ga / lsh))
    };

    let mut pass = elapsed < Duration::from_secs(600);
    let mut details = vec![format!("p = 2, 30 paired seeds per task count, {}", secs(elapsed))];
    for n in [30, 50, 100] {
        let (ga, lsh, text) = line(n);
        let ok = ga <= lsh && (n != 100 || ga <= 0.95 * lsh);
        pass &= ok;
        details.push(format!("{text}  {}", if ok { "ok" } else { "violated" }));
    }
    details.push(format!("n=100 requires mean GA <= {:.2} (0.95 x mean LSH)", 0.95 * cell_means(&cells, 100, Algorithm::Lsh)));
    let trend = Outcome { id: 4, title: "GA beats LSH on larger graphs", pass, details };

    let mut pass = true;
    let mut details = Vec::new();
    for n in [8, 17] {
        let (ga, lsh, text) = line(n);
        let ok = (ga - lsh).abs() <= 0.10 * lsh;
        pass &= ok;
        details.push(format!("{text}  {}", if ok { "ok" } else { "violated" }));
    }
    (trend, Outcome { id: 5, title: "GA and LSH agree within 10% on small graphs", pass, details })
}

fn operator_closure() -> Outcome {
    let mut rng = seeded(6);
    let graphs: Vec<(TaskGraph, usize)> = (0..50u64)
        .map(|i| {
            let min_succ = 1 + (i % 3) as usize;
            let params = GeneratorParams { n: 1 + (i as usize * 7) % 60, min_succ, max_succ: min_succ + 3, min_w: 1, max_w: 25, seed: i };
            (generate_random(&params).unwrap(), 1 + (i % 4) as usize)
        })
        .collect();
    let (mut crossovers, mut mutations, mut failures) = (0, 0, Vec::new());
    for i in 0..10_000 {
        let (graph, p) = &graphs[i % graphs.len()];
        let a = random_chromosome(graph, *p, &mut rng);
        let children = if rng.gen_bool(0.5) {
            crossovers += 1;
            let b = random_chromosome(graph, *p, &mut rng);
            let (x, y) = crossover(&a, &b, graph, &mut rng);
            vec![x, y]
        } else {
            mutations += 1;
            vec![mutate(&a, graph, &mut rng)]
        };
        for ch in children {
            let ok = ch.is_valid(graph) && decode(graph, &ch).is_ok_and(|s| validate_schedule(graph, &s).is_ok());
            if !ok {
                failures.push(format!("application {i}: invalid child {:?}", ch.queues));
            }
        }
    }
    let mut details =
        vec![format!("{crossovers} crossovers, {mutations} mutations over 50 graphs, {} failures", failures.len())];
    details.extend(failures.into_iter().take(5));
    Outcome { id: 6, title: "genetic operators preserve validity", pass: details.len() == 1, details }
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dagsched")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

/// Runs the full command sequence in `dir` and returns every produced file.
fn cli_outputs(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let (graph, ga, lsh, svg, csv, rep) = (p("g.json"), p("ga.json"), p("lsh.json"), p("g.svg"), p("r.csv"), p("report"));
    run_cli(&["generate", "--tasks", "40", "--seed", "9", "-o", &graph])?;
    run_cli(&["schedule", &graph, "--alg", "ga", "--procs", "3", "--seed", "9", "-o", &ga])?;
    run_cli(&["schedule", &graph, "--alg", "lsh", "--procs", "3", "--seed", "9", "-o", &lsh])?;
    run_cli(&["gantt", &graph, &ga, "-o", &svg])?;
    let ascii = run_cli(&["gantt", &graph, &lsh])?;
    run_cli(&["bench", "--task-counts", "8,23", "--proc-counts", "2,3", "--seeds-per-cell", "2", "--gens", "100", "-o", &csv])?;
    let tables = run_cli(&["report", &csv, "-o", &rep])?;
    let mut files = vec![("gantt stdout".to_string(), ascii), ("report stdout".to_string(), tables)];
    for name in ["g.json", "ga.json", "lsh.json", "g.svg", "r.csv", "report/summary.csv", "report/heights.csv", "report/trend.svg", "report/report.txt"] {
        files.push((name.to_string(), fs::read(dir.join(name)).map_err(|e| format!("{name}: {e}"))?));
    }
    Ok(files)
}

fn determinism() -> Outcome {
    let mut details = Vec::new();
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let mut pass = match (cli_outputs(a.path()), cli_outputs(b.path())) {
        (Ok(x), Ok(y)) => {
            let differing: Vec<&str> = x.iter().zip(&y).filter(|(l, r)| l.1 != r.1).map(|(l, _)| l.0.as_str()).collect();
            details.push(format!("{} CLI outputs compared, {} differ {:?}", x.len(), differing.len(), differing));
            differing.is_empty()
        }
        (Err(e), _) | (_, Err(e)) => {
            details.push(format!("command failed: {e}"));
            false
        }
    };

    let config = BenchConfig { task_counts: vec![17, 33], seeds_per_cell: 2, ..BenchConfig::default() };
    let csv = || {
        let mut buf = Vec::new();
        bench::write_csv(&bench::run_suite(&config).unwrap(), &mut buf).unwrap();
        buf
    };
    let same = csv() == csv();
    details.push(format!("library suite CSV rerun identical: {same}"));
    pass &= same;
    Outcome { id: 8, title: "byte-identical reruns", pass, details }
}

fn height_suite(histories: &mut Histories) -> Outcome {
    let start = Instant::now();
    let cells = bench::run_cells(&BenchConfig::default()).unwrap();
    for c in &cells {
        histories.record(&c.ga_history);
    }
    let rows: Vec<_> = cells.iter().flat_map(|c| c.rows.iter().cloned()).collect();
    let table = report::height_table(&rows).unwrap();
    let heights = bench::height_report(&rows).unwrap();
    let mut pass = true;
    let mut failing = Vec::new();
    for h in heights.iter().filter(|h| h.height >= 6) {
        let ok = matches!((h.ga_min, h.lsh_min), (Some(ga), Some(lsh)) if ga <= lsh);
        if !ok {
            pass = false;
            failing.push(h.height);
        }
    }
    let mut details = vec![format!(
        "default benchmark corpus: {} cells, {} rows, {}; heights >= 6 where GA min > LSH min: {failing:?}",
        cells.len(),
        rows.len(),
        secs(start.elapsed())
    )];
    details.extend(table.lines().map(str::to_string));
    Outcome { id: 9, title: "height report, GA minimum <= LSH minimum from height 6", pass, details }
}

fn main() {
    let suite = Instant::now();
    let mut histories = Histories::default();
    let mut outcomes = vec![validity_suite(&mut histories)];
    let (dominance, rate) = oracle_suite(&mut histories);
    outcomes.extend([dominance, rate]);
    let (trend, parity) = trend_suite(&mut histories);
    outcomes.extend([trend, parity, operator_closure()]);
    let heights = height_suite(&mut histories);
    outcomes.push(Outcome {
        id: 7,
        title: "GA history is nonincreasing",
        pass: histories.bad == 0,
        details: vec![format!("{} GA runs checked, {} with an increase", histories.runs, histories.bad)],
    });
    outcomes.push(determinism());
    outcomes.push(heights);
    outcomes.sort_by_key(|o| o.id);

    println!();
    for o in &outcomes {
        println!("{} criterion {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.title);
        for d in &o.details {
            println!("       {d}");
        }
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!();
    println!("{} of {} criteria passed in {}", outcomes.len() - failed.len(), outcomes.len(), secs(suite.elapsed()));
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
