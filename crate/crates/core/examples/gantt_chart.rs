//! Prints a text Gantt chart and writes the SVG version next to it.
//!
//! ```bash
//! cargo run --release --example gantt_chart -- /tmp/chart.svg
//! ```

use dagsched::gantt::{render_ascii, render_svg};
use dagsched::lsh::{lsh_schedule, PriorityPolicy};
use dagsched::taskgraph::{generate_random, GeneratorParams};

fn main() {
    let out = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("dagsched_gantt.svg"), Into::into);
    let graph = generate_random(&GeneratorParams::standard(20, 5)).unwrap();
    let schedule = lsh_schedule(&graph, 3, PriorityPolicy::BottomLevel, 5).unwrap();
    print!("{}", render_ascii(&schedule));
    std::fs::write(&out, render_svg(&schedule)).expect("write svg");
    println!("wrote {}", out.display());
}
