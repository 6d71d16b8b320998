//! SVG wiring diagrams.
//!
//! Model coordinates put the swap at time `k` and position `s` at `(k, s)`,
//! with wire heights at half-integers between swaps, and the y axis pointing
//! up. Each wire becomes one `<polyline>`.

use std::fmt::Write;

use crate::eg::SortingNetwork;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 40.0;

/// Vertices of every wire in model coordinates, indexed by starting label.
pub fn wire_paths(net: &SortingNetwork) -> Vec<Vec<(f64, f64)>> {
    let n = net.n();
    let traj = net.trajectories();
    let mut paths = vec![Vec::new(); n];
    let height = |p: usize| p as f64 - 0.5;
    for (p, &label) in traj[0].iter().enumerate() {
        paths[label - 1].push((0.0, height(p + 1)));
    }
    for (k, &s) in net.swaps().iter().enumerate() {
        let time = (k + 1) as f64;
        let s = s as usize;
        let before = &traj[k];
        for (p, &label) in before.iter().enumerate() {
            let pos = p + 1;
            if pos == s || pos == s + 1 {
                let other = if pos == s { s + 1 } else { s };
                paths[label - 1].push((time - 0.5, height(pos)));
                paths[label - 1].push((time + 0.5, height(other)));
            }
        }
    }
    let end = (net.len() + 1) as f64;
    for (p, &label) in traj[net.len()].iter().enumerate() {
        paths[label - 1].push((end, height(p + 1)));
    }
    paths
}

pub fn render_wiring_diagram(net: &SortingNetwork) -> String {
    let n = net.n();
    let width = (net.len() + 1) as f64 * SCALE + 2.0 * MARGIN;
    let height = n as f64 * SCALE + 2.0 * MARGIN;
    let to_svg = |(x, y): (f64, f64)| (MARGIN + x * SCALE, MARGIN + (n as f64 - y) * SCALE);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="2">"#);
    for (idx, path) in wire_paths(net).iter().enumerate() {
        let pts: Vec<String> = path
            .iter()
            .map(|&p| {
                let (x, y) = to_svg(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline data-wire="{}" points="{}"/>"#,
            idx + 1,
            pts.join(" ")
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="14">"#);
    let traj = net.trajectories();
    let last = traj.last().unwrap();
    for p in 1..=n {
        let (x0, y) = to_svg((0.0, p as f64 - 0.5));
        let (x1, _) = to_svg(((net.len() + 1) as f64, 0.0));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            y + 5.0,
            traj[0][p - 1]
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{}</text>"#,
            x1 + 6.0,
            y + 5.0,
            last[p - 1]
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
