//! Text tables, summary CSV and the mean-finish-time trend chart built from
//! benchmark rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::bench::{aggregate, height_report, Algorithm, BenchError, BenchRow, HeightRow, SummaryRow};

/// One GA-vs-LSH table per processor count, using mean finish times.
pub fn comparison_tables(rows: &[BenchRow]) -> Result<String, BenchError> {
    let summary = aggregate(rows)?;
    // n, GA mean, LSH mean
    type Line = (usize, Option<String>, Option<String>);
    let mut by_p: BTreeMap<usize, Vec<Line>> = BTreeMap::new();
    for s in &summary {
        let table = by_p.entry(s.p).or_default();
        let idx = match table.iter().position(|(n, _, _)| *n == s.n) {
            Some(i) => i,
            None => {
                table.push((s.n, None, None));
                table.len() - 1
            }
        };
        match s.algorithm {
            Algorithm::Ga => table[idx].1 = Some(s.mean_display()),
            Algorithm::Lsh => table[idx].2 = Some(s.mean_display()),
            Algorithm::Oracle => {}
        }
    }
    let headers = ["No. of tasks", "GA finish time", "LSH finish time"];
    let mut out = String::new();
    for (p, table) in by_p {
        let _ = writeln!(out, "GA vs LSH on {p} processors (mean finish time)");
        let body: Vec<[String; 3]> = table
            .into_iter()
            .map(|(n, ga, lsh)| [n.to_string(), ga.unwrap_or_else(|| "-".into()), lsh.unwrap_or_else(|| "-".into())])
            .collect();
        out.push_str(&render_table(&headers, &body));
        out.push('\n');
    }
    Ok(out)
}

pub fn height_table(rows: &[BenchRow]) -> Result<String, BenchError> {
    let report = height_report(rows)?;
    let headers = ["Height", "Best minimum time GA", "LSH minimum time"];
    let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    let body: Vec<[String; 3]> =
        report.iter().map(|h: &HeightRow| [h.height.to_string(), opt(h.ga_min), opt(h.lsh_min)]).collect();
    let mut out = String::from("Graph height vs minimum finish time\n");
    out.push_str(&render_table(&headers, &body));
    Ok(out)
}

fn render_table(headers: &[&str; 3], body: &[[String; 3]]) -> String {
    let mut widths = headers.map(str::len);
    for row in body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 3]| {
        format!("{:>w0$} | {:>w1$} | {:>w2$}\n", cells[0], cells[1], cells[2], w0 = widths[0], w1 = widths[1], w2 = widths[2])
    };
    let mut out = line(*headers);
    out.push_str(&format!("{}-+-{}-+-{}\n", "-".repeat(widths[0]), "-".repeat(widths[1]), "-".repeat(widths[2])));
    for row in body {
        out.push_str(&line([&row[0], &row[1], &row[2]]));
    }
    out
}

pub fn summary_csv(summary: &[SummaryRow]) -> String {
    let mut out = String::from("n,p,algorithm,count,mean,min,max\n");
    for s in summary {
        let _ = writeln!(out, "{},{},{},{},{},{},{}", s.n, s.p, s.algorithm, s.count, s.mean_display(), s.min, s.max);
    }
    out
}

pub fn heights_csv(report: &[HeightRow]) -> String {
    let mut out = String::from("height,ga_min,lsh_min\n");
    let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
    for h in report {
        let _ = writeln!(out, "{},{},{}", h.height, opt(h.ga_min), opt(h.lsh_min));
    }
    out
}

const W: f64 = 720.0;
const H: f64 = 420.0;
const MARGIN: f64 = 56.0;
const SERIES_COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

/// Line chart of mean finish time against task count, one series per
/// (algorithm, processor count).
pub fn trend_svg(summary: &[SummaryRow]) -> String {
    let mut series: BTreeMap<(usize, Algorithm), Vec<(usize, f64)>> = BTreeMap::new();
    for s in summary {
        series.entry((s.p, s.algorithm)).or_default().push((s.n, s.mean()));
    }
    for points in series.values_mut() {
        points.sort_by_key(|&(n, _)| n);
    }
    let max_n = summary.iter().map(|s| s.n).max().unwrap_or(1).max(1) as f64;
    let max_y = summary.iter().map(|s| s.mean()).fold(1.0, f64::max);
    let x_of = |n: f64| MARGIN + n / max_n * (W - 2.0 * MARGIN);
    let y_of = |v: f64| H - MARGIN - v / max_y * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="24">Mean finish time vs number of tasks</text>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
        H - MARGIN,
        W - MARGIN
    );
    let _ = writeln!(s, r#"<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{}" stroke="black"/>"#, H - MARGIN);
    for tick in crate::gantt::ticks(max_n as u64) {
        let x = x_of(tick as f64);
        let _ = writeln!(s, r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{tick}</text>"#, H - MARGIN + 16.0);
    }
    for tick in crate::gantt::ticks(max_y.ceil() as u64) {
        let y = y_of(tick as f64);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{tick}</text>"#, MARGIN - 6.0, y + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">tasks</text>"#, W / 2.0, H - 12.0);
    for (i, ((p, alg), points)) in series.iter().enumerate() {
        let color = SERIES_COLORS[i % SERIES_COLORS.len()];
        let dash = if *alg == Algorithm::Lsh { r#" stroke-dasharray="6 3""# } else { "" };
        let path: Vec<String> = points.iter().map(|&(n, v)| format!("{:.1},{:.1}", x_of(n as f64), y_of(v))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"{dash}/>"#,
            path.join(" ")
        );
        for &(n, v) in points {
            let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#, x_of(n as f64), y_of(v));
        }
        let ly = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{ly:.1}" fill="{color}">{alg} p={p}</text>"#,
            W - MARGIN - 90.0
        );
    }
    s.push_str("</svg>\n");
    s
}
