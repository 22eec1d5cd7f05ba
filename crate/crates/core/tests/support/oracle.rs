//! Brute-force reading of the crookedness definition in floating point.
//!
//! The map is sampled on a uniform grid (plus its breakpoints). For every
//! sampled preimage `c` of `a` and `d` of `b`, the walk from `d` back to `c`
//! records whether some later sample is within `δ` of `a`; a suitable `c'`
//! is any sample within `δ` of `b` with that flag set.

#![allow(dead_code)]

pub struct Sampled {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

pub fn eval(points: &[(f64, f64)], x: f64) -> f64 {
    let i = points.partition_point(|p| p.0 <= x).clamp(1, points.len() - 1);
    let (x0, y0) = points[i - 1];
    let (x1, y1) = points[i];
    if x1 == x0 {
        return y1;
    }
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

pub fn sample(points: &[(f64, f64)], mesh: f64) -> Sampled {
    let n = (1.0 / mesh).ceil() as usize;
    let mut xs: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    xs.extend(points.iter().map(|p| p.0));
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    let ys = xs.iter().map(|&x| eval(points, x)).collect();
    Sampled { xs, ys }
}

/// Preimages of `level`: the crossing of every segment through it, and a
/// few points of every flat segment at that level.
fn level_points(points: &[(f64, f64)], level: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for w in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if y0 == level && y1 == level {
            for k in 0..=8 {
                out.push(x0 + (x1 - x0) * k as f64 / 8.0);
            }
        } else if (y0 - level) * (y1 - level) <= 0.0 {
            out.push(x0 + (level - y0) * (x1 - x0) / (y1 - y0));
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup();
    out
}

fn pair_ok(s: &Sampled, c: f64, d: f64, a: f64, b: f64, delta: f64) -> bool {
    // Samples strictly between c and d, then c and d themselves at the ends.
    let (lo, hi) = if c <= d { (c, d) } else { (d, c) };
    let mut path: Vec<(f64, f64)> = s
        .xs
        .iter()
        .zip(&s.ys)
        .filter(|(x, _)| **x > lo && **x < hi)
        .map(|(x, y)| (*x, *y))
        .collect();
    if c > d {
        path.reverse();
    }
    path.insert(0, (c, a));
    path.push((d, b));
    // near_a[i]: some j >= i on the path has |a - f| < δ.
    let mut seen = false;
    let mut near_a = vec![false; path.len()];
    for i in (0..path.len()).rev() {
        seen |= (a - path[i].1).abs() < delta;
        near_a[i] = seen;
    }
    path.iter()
        .zip(&near_a)
        .any(|((_, y), &ok)| ok && (b - y).abs() < delta)
}

/// Whether `f` is δ-crooked between `a` and `b` at the given sampling mesh.
pub fn crooked_between(points: &[(f64, f64)], a: f64, b: f64, delta: f64, mesh: f64) -> bool {
    let s = sample(points, mesh);
    let pa = level_points(points, a);
    let pb = level_points(points, b);
    pa.iter()
        .all(|&c| pb.iter().all(|&d| pair_ok(&s, c, d, a, b, delta)))
}

/// A case is decisive when the sampled verdict is stable from just below
/// `δ` to well above it; only then must an exact verdict agree with it.
pub fn decisive_verdict(points: &[(f64, f64)], a: f64, b: f64, delta: f64) -> Option<bool> {
    let mesh = 1e-3;
    let below = crooked_between(points, a, b, delta - 1e-9, mesh);
    let above = crooked_between(points, a, b, delta + 1.0 / 50.0, mesh);
    (below == above).then_some(below)
}
