//! Gantt chart rendering, as terminal text or as a standalone SVG document.
//! One lane per processor, one labeled block per placement.

use std::fmt::Write as _;

use crate::schedule::Schedule;
use crate::taskgraph::Time;

/// Widest chart body in characters before time gets scaled down.
pub const ASCII_MAX_COLUMNS: u64 = 100;

/// Text chart. Each character covers `scale` time units; idle time shows as
/// `.`, a block starts with `|` followed by its task label padded with `=`.
/// A per-lane listing of exact intervals follows the chart.
pub fn render_ascii(schedule: &Schedule) -> String {
    let makespan = schedule.makespan();
    let scale = makespan.div_ceil(ASCII_MAX_COLUMNS).max(1);
    let cols = makespan.div_ceil(scale) as usize;
    let mut out = String::new();
    let _ = writeln!(out, "makespan = {makespan} (1 column = {scale} time unit{})", if scale == 1 { "" } else { "s" });
    for q in 0..schedule.processors() {
        let mut lane = vec!['.'; cols];
        for pl in schedule.lane(q) {
            let from = (pl.start / scale) as usize;
            let to = (pl.finish.div_ceil(scale) as usize).max(from + 1).min(cols);
            let label: Vec<char> = pl.task.to_string().chars().collect();
            for (i, cell) in lane[from..to].iter_mut().enumerate() {
                *cell = match i {
                    0 => '|',
                    i => label.get(i - 1).copied().unwrap_or('='),
                };
            }
        }
        let _ = writeln!(out, "P{q:<3}{}|", lane.into_iter().collect::<String>());
    }
    let _ = writeln!(out, "    {}", axis(cols, scale));
    for q in 0..schedule.processors() {
        let blocks: Vec<String> =
            schedule.lane(q).map(|pl| format!("{}[{},{})", pl.task, pl.start, pl.finish)).collect();
        let _ = writeln!(out, "P{q}: {}", blocks.join(" "));
    }
    out
}

fn axis(cols: usize, scale: Time) -> String {
    let mut line = vec![' '; cols + 8];
    let mut c = 0;
    while c <= cols {
        let mark = (c as Time * scale).to_string();
        for (i, ch) in mark.chars().enumerate() {
            if let Some(slot) = line.get_mut(c + i) {
                *slot = ch;
            }
        }
        c += 10;
    }
    line.into_iter().collect::<String>().trim_end().to_string()
}

const LANE_HEIGHT: f64 = 36.0;
const LEFT: f64 = 48.0;
const TOP: f64 = 40.0;
const PLOT_WIDTH: f64 = 800.0;
const PALETTE: [&str; 8] = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#9c755f"];

/// Standalone SVG chart. Output depends only on the schedule.
pub fn render_svg(schedule: &Schedule) -> String {
    let makespan = schedule.makespan();
    let p = schedule.processors();
    let unit = if makespan == 0 { 0.0 } else { PLOT_WIDTH / makespan as f64 };
    let width = LEFT + PLOT_WIDTH + 24.0;
    let height = TOP + LANE_HEIGHT * p as f64 + 40.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="12">"#
    );
    let _ = writeln!(s, r#"<text x="{LEFT}" y="20">makespan = {makespan}</text>"#);
    for q in 0..p {
        let y = TOP + LANE_HEIGHT * q as f64;
        let _ = writeln!(
            s,
            r##"<rect x="{LEFT}" y="{y}" width="{PLOT_WIDTH}" height="{LANE_HEIGHT}" fill="#f4f4f4" stroke="#cccccc"/>"##
        );
        let _ = writeln!(s, r#"<text x="8" y="{:.1}">P{q}</text>"#, y + LANE_HEIGHT / 2.0 + 4.0);
        for pl in schedule.lane(q) {
            let x = LEFT + pl.start as f64 * unit;
            let w = (pl.finish - pl.start) as f64 * unit;
            let color = PALETTE[pl.task.0 % PALETTE.len()];
            let _ = writeln!(
                s,
                r##"<rect x="{x:.2}" y="{:.1}" width="{w:.2}" height="{:.1}" fill="{color}" stroke="#333333"><title>{} [{}, {})</title></rect>"##,
                y + 4.0,
                LANE_HEIGHT - 8.0,
                pl.task,
                pl.start,
                pl.finish
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.1}" text-anchor="middle" fill="white">{}</text>"#,
                x + w / 2.0,
                y + LANE_HEIGHT / 2.0 + 4.0,
                pl.task
            );
        }
    }
    let axis_y = TOP + LANE_HEIGHT * p as f64;
    let _ = writeln!(s, r#"<line x1="{LEFT}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#, LEFT + PLOT_WIDTH);
    for tick in ticks(makespan) {
        let x = LEFT + tick as f64 * unit;
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{axis_y}" x2="{x:.2}" y2="{}" stroke="black"/>"#, axis_y + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{tick}</text>"#, axis_y + 18.0);
    }
    s.push_str("</svg>\n");
    s
}

/// Roughly ten ticks on a 1-2-5 step, always including 0 and the makespan.
pub(crate) fn ticks(max: Time) -> Vec<Time> {
    if max == 0 {
        return vec![0];
    }
    let raw = max.div_ceil(10).max(1);
    let magnitude = 10u64.pow(raw.ilog10());
    let step = [1, 2, 5, 10].iter().map(|m| m * magnitude).find(|&s| s >= raw).unwrap();
    let mut v: Vec<Time> = (0..=max / step).map(|i| i * step).collect();
    if *v.last().unwrap() != max {
        v.push(max);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::simulate_queues;
    use crate::taskgraph::{TaskGraph, TaskId};

    fn diamond_schedule() -> Schedule {
        let g = TaskGraph::from_pairs(vec![2, 3, 5, 1], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        simulate_queues(&g, &[vec![TaskId(0), TaskId(2), TaskId(3)], vec![TaskId(1)]]).unwrap()
    }

    #[test]
    fn ascii_diamond() {
        let text = render_ascii(&diamond_schedule());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "makespan = 8 (1 column = 1 time unit)");
        assert_eq!(lines[1], "P0  |T|T2==||");
        assert_eq!(lines[2], "P1  ..|T1...|");
        assert!(text.contains("P0: T0[0,2) T2[2,7) T3[7,8)"));
        assert!(text.contains("P1: T1[2,5)"));
    }

    #[test]
    fn ascii_empty() {
        let text = render_ascii(&Schedule::new(2, vec![]));
        assert!(text.starts_with("makespan = 0"));
        assert!(text.contains("P0  |") && text.contains("P1  |"));
    }

    #[test]
    fn ascii_scales_long_schedules() {
        let g = TaskGraph::independent(vec![250, 50]).unwrap();
        let s = simulate_queues(&g, &[vec![TaskId(0)], vec![TaskId(1)]]).unwrap();
        let text = render_ascii(&s);
        assert!(text.starts_with("makespan = 250 (1 column = 3 time units)"));
        let lane0 = text.lines().nth(1).unwrap();
        assert_eq!(lane0.len(), 4 + 84 + 1);
    }

    #[test]
    fn svg_is_well_formed_and_stable() {
        let s = diamond_schedule();
        let svg = render_svg(&s);
        assert_eq!(svg, render_svg(&s));
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let rects = doc.descendants().filter(|n| n.has_tag_name("rect")).count();
        assert_eq!(rects, 2 + 4);
        assert!(svg.contains("makespan = 8"));
        let empty = render_svg(&Schedule::new(3, vec![]));
        roxmltree::Document::parse(&empty).unwrap();
        assert!(empty.contains("makespan = 0"));
    }

    #[test]
    fn tick_steps() {
        assert_eq!(ticks(8), (0..=8).collect::<Vec<_>>());
        assert_eq!(ticks(0), vec![0]);
        assert_eq!(ticks(95), vec![0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 95]);
        assert_eq!(ticks(700)[1], 100);
    }
}
