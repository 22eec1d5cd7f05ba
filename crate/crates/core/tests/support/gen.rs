//! Seeded random maps and homeomorphisms for property tests.

#![allow(dead_code)]

use crookedlab::rational::{one, rat, zero, Rational};
use crookedlab::{PlMap, Point};
use rand::Rng;

/// Random map on the `1/grid` lattice with a random subset of interior
/// breakpoints.
pub fn random_map<R: Rng>(rng: &mut R, grid: i64) -> PlMap {
    let mut pts = Vec::new();
    for k in 0..=grid {
        if k == 0 || k == grid || rng.gen_bool(0.5) {
            pts.push(Point::new(rat(k, grid), rat(rng.gen_range(0..=grid), grid)));
        }
    }
    PlMap::new(pts).expect("lattice map")
}

/// Random strictly monotone surjection, increasing or decreasing.
pub fn random_monotone<R: Rng>(rng: &mut R, increasing: bool) -> PlMap {
    let h = random_homeomorphism(rng, 12, true);
    if increasing {
        h
    } else {
        let flip = PlMap::from_pairs([(zero(), one()), (one(), zero())]).unwrap();
        flip.compose(&h)
    }
}

/// Random PL homeomorphism with up to `knots` interior breakpoints.
pub fn random_homeomorphism<R: Rng>(rng: &mut R, knots: usize, increasing: bool) -> PlMap {
    let n = rng.gen_range(0..=knots);
    let denom = 97;
    let mut xs: Vec<i64> = (0..n).map(|_| rng.gen_range(1..denom)).collect();
    let mut ys: Vec<i64> = (0..n).map(|_| rng.gen_range(1..denom)).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let m = xs.len().min(ys.len());
    let mut pts = vec![Point::new(zero(), zero())];
    for i in 0..m {
        pts.push(Point::new(rat(xs[i], denom), rat(ys[i], denom)));
    }
    pts.push(Point::new(one(), one()));
    let h = PlMap::new(pts).unwrap();
    if increasing {
        h
    } else {
        let flip = PlMap::from_pairs([(zero(), one()), (one(), zero())]).unwrap();
        h.compose(&flip)
    }
}

pub fn to_f64_points(f: &PlMap) -> Vec<(f64, f64)> {
    f.points()
        .iter()
        .map(|p| (crookedlab::rational::to_f64(&p.x), crookedlab::rational::to_f64(&p.y)))
        .collect()
}

pub fn random_level<R: Rng>(rng: &mut R, grid: i64) -> Rational {
    rat(rng.gen_range(0..=grid), grid)
}
