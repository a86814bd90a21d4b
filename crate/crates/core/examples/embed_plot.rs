//! Places a configuration in the plane and draws it as a small SVG.
//!
//! Usage: `embed_plot [E1|E2|E3|SQ|ISO] [out.svg]`

use std::fmt::Write as _;

use trapcc::geometry::{embed, PlanarEmbedding};
use trapcc::golden;

fn svg(e: &PlanarEmbedding, masses: Option<[f64; 4]>) -> String {
    let pts = e.points();
    let (min_x, max_x) = pts.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| (lo.min(p.x), hi.max(p.x)));
    let span = (max_x - min_x).max(e.h);
    let scale = 360.0 / span;
    let map = |x: f64, y: f64| (20.0 + (x - min_x) * scale, 380.0 - y * scale);

    let mut s = String::from("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\">\n");
    // Perimeter 1-2-3-4 and the two diagonals.
    let order = [0, 1, 2, 3, 0];
    let path: Vec<String> = order
        .iter()
        .map(|&k| {
            let (x, y) = map(pts[k].x, pts[k].y);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    writeln!(s, "<polyline points=\"{}\" fill=\"none\" stroke=\"black\"/>", path.join(" ")).unwrap();
    for (i, j) in [(0, 2), (1, 3)] {
        let (x1, y1) = map(pts[i].x, pts[i].y);
        let (x2, y2) = map(pts[j].x, pts[j].y);
        writeln!(s, "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"gray\" stroke-dasharray=\"4\"/>").unwrap();
    }
    let largest = masses.map(|m| m.iter().cloned().fold(0.0, f64::max));
    for (k, p) in pts.iter().enumerate() {
        let (x, y) = map(p.x, p.y);
        let radius = match (masses, largest) {
            (Some(m), Some(big)) => 3.0 + 9.0 * (m[k] / big).sqrt(),
            _ => 4.0,
        };
        writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{radius:.2}\"/>").unwrap();
        writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>", x + 8.0, y - 8.0, k + 1).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "E1".into());
    let entry = golden::lookup(&name).ok_or_else(|| format!("unknown configuration {name}"))?;
    let r = entry.distances();
    let e = embed(&r)?;

    println!("label,x,y");
    for (k, p) in e.points().iter().enumerate() {
        println!("{},{},{}", k + 1, p.x, p.y);
    }
    let back = e.distances().to_array();
    let worst = back.iter().zip(r.to_array()).map(|(b, w)| (b - w).abs() / w).fold(0.0, f64::max);
    println!("height {:.12}, round-trip error {worst:.1e}", e.h);

    if let Some(path) = args.next() {
        let masses = trapcc::ccsystem::mass_ratios(&r).ok().map(|m| m.to_array());
        std::fs::write(&path, svg(&e, masses))?;
        println!("wrote {path}");
    }
    Ok(())
}
