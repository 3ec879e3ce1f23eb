//! A reduced paired benchmark: random graphs per (task count, processor
//! count) cell, each scheduled by the GA and by list scheduling. Prints the
//! comparison tables, the height table and the first CSV rows.

use dagsched::bench::{run_suite, write_csv, BenchConfig};
use dagsched::ga::GaParams;
use dagsched::report::{comparison_tables, height_table};

fn main() {
    let config = BenchConfig {
        task_counts: vec![8, 17, 23, 33],
        processor_counts: vec![2, 3],
        seeds_per_cell: 3,
        ga: GaParams { max_generations: 200, ..GaParams::default() },
        ..BenchConfig::default()
    };
    let rows = run_suite(&config).expect("benchmark runs");
    print!("{}", comparison_tables(&rows).unwrap());
    print!("{}", height_table(&rows).unwrap());

    let mut csv = Vec::new();
    write_csv(&rows, &mut csv).unwrap();
    println!();
    for line in String::from_utf8(csv).unwrap().lines().take(5) {
        println!("{line}");
    }
}
