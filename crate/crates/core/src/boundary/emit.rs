use std::fmt::Write;

use serde::Serialize;

use super::trace::ArcTrace;

/// `alpha,re,im` rows, ascending in α.
pub fn trace_csv(trace: &ArcTrace) -> String {
    let mut out = String::from("alpha,re,im\n");
    for s in &trace.samples {
        writeln!(out, "{:.12},{:.15},{:.15}", s.alpha, s.point.re, s.point.im).unwrap();
    }
    out
}

/// The boundary polyline over the unit circle, in a 2.4 × 2.4 view box.
pub fn region_svg(traces: &[ArcTrace]) -> String {
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.2 -1.2 2.4 2.4\" width=\"600\" height=\"600\">\n",
    );
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    out.push_str(
        "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.004\"/>\n",
    );
    out.push_str("<line x1=\"-1.1\" y1=\"0\" x2=\"1.1\" y2=\"0\" stroke=\"#dddddd\" stroke-width=\"0.003\"/>\n");
    out.push_str("<line x1=\"0\" y1=\"-1.1\" x2=\"0\" y2=\"1.1\" stroke=\"#dddddd\" stroke-width=\"0.003\"/>\n");
    for t in traces {
        let points: Vec<String> = t
            .samples
            .iter()
            .map(|s| format!("{:.6},{:.6}", s.point.re, s.point.im))
            .collect();
        writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"#1f4e9e\" stroke-width=\"0.006\" points=\"{}\"/>",
            points.join(" ")
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[derive(Serialize)]
struct Bundle<'a> {
    n: u64,
    samples_per_arc: usize,
    arcs: &'a [ArcTrace],
}

/// All traces of one region as pretty-printed JSON.
pub fn region_json(n: u64, traces: &[ArcTrace]) -> String {
    let per_arc = traces.first().map_or(0, |t| t.samples.len());
    serde_json::to_string_pretty(&Bundle {
        n,
        samples_per_arc: per_arc,
        arcs: traces,
    })
    .expect("traces always serialise")
}
