//! SVG 1.1 graphs and the crookedness heatmap CSV.

use std::fmt::Write as _;

use crookedlab::crookedness::check_pair;
use crookedlab::rational::{int, midpoint, one, to_f64, zero};
use crookedlab::{PlMap, Rational, Result};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

fn sx(x: f64) -> f64 {
    MARGIN + x * (SIZE - 2.0 * MARGIN)
}

fn sy(y: f64) -> f64 {
    SIZE - MARGIN - y * (SIZE - 2.0 * MARGIN)
}

fn coord(v: f64) -> String {
    format!("{v:.3}")
}

fn open(out: &mut String, title: &str, desc: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, "<desc>{desc}</desc>");
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
    let (lo, hi) = (coord(sx(0.0)), coord(sx(1.0)));
    let _ = writeln!(
        out,
        r##"<rect x="{lo}" y="{lo}" width="{w}" height="{w}" fill="none" stroke="#000000" stroke-width="1"/>"##,
        w = coord(sx(1.0) - sx(0.0))
    );
    let _ = writeln!(
        out,
        r##"<line x1="{lo}" y1="{hi}" x2="{hi}" y2="{lo}" stroke="#999999" stroke-width="0.75" stroke-dasharray="4 3"/>"##
    );
}

fn polyline(out: &mut String, f: &PlMap) {
    let pts: Vec<String> = f
        .points()
        .iter()
        .map(|p| format!("{},{}", coord(sx(to_f64(&p.x))), coord(sy(to_f64(&p.y)))))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1f4e9c" stroke-width="1.25" stroke-linejoin="round"/>"##,
        pts.join(" ")
    );
}

fn summary(f: &PlMap) -> String {
    format!("breakpoints {}, laps {}", f.breakpoint_count(), f.lap_number())
}

pub fn graph_svg(f: &PlMap, title: &str) -> String {
    let mut out = String::new();
    open(&mut out, title, &summary(f));
    polyline(&mut out, f);
    out.push_str("</svg>\n");
    out
}

/// The graph with the boxes `I_{k+1} x I_k` that contain the bonding maps.
pub fn tower_svg(f: &PlMap, levels: &[(Rational, Rational)], title: &str) -> String {
    let mut out = String::new();
    let desc = format!("{}, levels {}", summary(f), levels.len());
    open(&mut out, title, &desc);
    for w in levels.windows(2) {
        let ((yu, yv), (xu, xv)) = (&w[0], &w[1]);
        let (x0, x1) = (sx(to_f64(xu)), sx(to_f64(xv)));
        let (y0, y1) = (sy(to_f64(yv)), sy(to_f64(yu)));
        let _ = writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#e8a33d" fill-opacity="0.18" stroke="#e8a33d" stroke-width="0.75"/>"##,
            coord(x0),
            coord(y0),
            coord(x1 - x0),
            coord(y1 - y0)
        );
    }
    if let Some((u, v)) = levels.first() {
        let y = coord(SIZE - MARGIN / 2.0);
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#e8a33d" stroke-width="3"/>"##,
            coord(sx(to_f64(u))),
            coord(sx(to_f64(v)))
        );
    }
    polyline(&mut out, f);
    out.push_str("</svg>\n");
    out
}

/// Least δ at which the pair holds, bracketed by bisection as `(lo, hi]`.
/// `None` when the pair fails even at δ = 1.
fn pair_threshold(f: &PlMap, a: &Rational, b: &Rational, resolution: &Rational) -> Result<Option<(Rational, Rational)>> {
    if !check_pair(f, a, b, &one())?.holds() {
        return Ok(None);
    }
    let (mut lo, mut hi) = (zero(), one());
    while &hi - &lo > *resolution {
        let mid = midpoint(&lo, &hi);
        if check_pair(f, a, b, &mid)?.holds() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some((lo, hi)))
}

/// One row per grid pair `a < b`: the bracket on the least δ for which
/// `f` is δ-crooked between `a` and `b`.
pub fn heatmap_csv(f: &PlMap, step: &Rational, resolution: &Rational) -> Result<String> {
    let mut values = Vec::new();
    let mut k = 0;
    loop {
        let v = step * int(k);
        if v > one() {
            break;
        }
        values.push(v);
        k += 1;
    }
    if values.last() != Some(&one()) {
        values.push(one());
    }
    let mut out = String::from("a,b,delta_lo,delta_hi,delta_hi_decimal\n");
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            match pair_threshold(f, a, b, resolution)? {
                Some((lo, hi)) => {
                    let _ = writeln!(out, "{a},{b},{lo},{hi},{:.6}", to_f64(&hi));
                }
                None => {
                    let _ = writeln!(out, "{a},{b},,,");
                }
            }
        }
    }
    Ok(out)
}
