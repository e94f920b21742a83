//! SVG pictures of the punctured disc with convex hulls of puncture sets.

use std::f64::consts::PI;
use std::fmt::Write as _;

use convex_braids::convex::PunctureSet;

const SIZE: f64 = 320.0;
const RADIUS: f64 = 120.0;
const LABEL_RADIUS: f64 = 142.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Position of puncture `k` (1-based): clockwise from the top.
fn point(k: usize, n: usize, r: f64) -> (f64, f64) {
    let theta = -PI / 2.0 + 2.0 * PI * (k as f64 - 1.0) / n as f64;
    (SIZE / 2.0 + r * theta.cos(), SIZE / 2.0 + r * theta.sin())
}

/// Render `n` punctures and the hull of each set. Output depends only on the inputs.
pub fn emit_diagram(n: usize, sets: &[PunctureSet]) -> String {
    let mut svg = String::new();
    let c = SIZE / 2.0;
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE:.0}" height="{SIZE:.0}" viewBox="0 0 {SIZE:.0} {SIZE:.0}">"#
    );
    let _ = writeln!(
        svg,
        r##"  <circle cx="{c:.2}" cy="{c:.2}" r="{:.2}" fill="none" stroke="#999999" stroke-width="1"/>"##,
        RADIUS + 8.0
    );
    for (k, set) in sets.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = set
            .members()
            .map(|l| {
                let (x, y) = point(l, n, RADIUS);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        if pts.len() == 1 {
            let (x, y) = point(set.members().next().expect("nonempty"), n, RADIUS);
            let _ = writeln!(
                svg,
                r#"  <circle cx="{x:.2}" cy="{y:.2}" r="10.00" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="2"/>"#
            );
        } else {
            let _ = writeln!(
                svg,
                r#"  <polygon points="{}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="2" stroke-linejoin="round"/>"#,
                pts.join(" ")
            );
        }
    }
    for k in 1..=n {
        let (x, y) = point(k, n, RADIUS);
        let (lx, ly) = point(k, n, LABEL_RADIUS);
        let _ = writeln!(
            svg,
            r#"  <circle cx="{x:.2}" cy="{y:.2}" r="4.00" fill="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{lx:.2}" y="{ly:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" dominant-baseline="central">{k}</text>"#
        );
    }
    svg.push_str("</svg>\n");
    svg
}
