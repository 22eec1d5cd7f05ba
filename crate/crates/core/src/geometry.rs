//! Hausdorff distance between graphs of piecewise-linear maps.
//!
//! Distances between rational points are square roots of rationals, so the
//! result is a bracket on the squared distance, exact whenever the two ends
//! coincide. Directed distances are found by branch and bound along each
//! source segment: the squared distance to a fixed target segment is convex
//! along a line, so its maximum over a sub-segment is attained at an end.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::{One, Zero};

use crate::pl_map::{PlMap, Point, Restriction};
use crate::rational::{decimal, midpoint, rat, sqrt_lower, sqrt_upper, to_f64, Rational};

/// Bracket on a Hausdorff distance `d`: `lower_sq <= d^2 <= upper_sq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceBound {
    pub lower_sq: Rational,
    pub upper_sq: Rational,
    /// A graph point whose distance to the other graph realises `lower_sq`.
    pub witness: Point,
}

impl DistanceBound {
    pub fn is_exact(&self) -> bool {
        self.lower_sq == self.upper_sq
    }

    /// Decimal enclosure `[lo, hi]` of the distance itself.
    pub fn enclosure(&self, places: u32) -> (String, String) {
        let bits = (places as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 4;
        (
            decimal_floor(&sqrt_lower(&self.lower_sq, bits), places),
            decimal_ceil(&sqrt_upper(&self.upper_sq, bits), places),
        )
    }

    /// `Some(true)` when the distance is certainly `< bound`, `Some(false)`
    /// when certainly `>= bound`, `None` when the bracket straddles it.
    pub fn less_than(&self, bound: &Rational) -> Option<bool> {
        let sq = bound * bound;
        if self.upper_sq < sq {
            Some(true)
        } else if self.lower_sq >= sq {
            Some(false)
        } else {
            None
        }
    }
}

fn decimal_floor(value: &Rational, places: u32) -> String {
    let scale = Rational::from_integer(num_bigint::BigInt::from(10u32).pow(places));
    decimal(&((value * &scale).floor() / scale), places)
}

fn decimal_ceil(value: &Rational, places: u32) -> String {
    let scale = Rational::from_integer(num_bigint::BigInt::from(10u32).pow(places));
    decimal(&((value * &scale).ceil() / scale), places)
}

/// Squared-distance tolerance at which branch and bound stops refining.
pub fn default_tolerance() -> Rational {
    rat(1, 1 << 40)
}

/// Hausdorff distance between `Γ(f)` and the graph of the restriction `g`.
pub fn hausdorff_graph_distance(f: &PlMap, g: &Restriction) -> DistanceBound {
    hausdorff_between(f.points(), g.points(), &default_tolerance())
}

/// Hausdorff distance between two polylines given by their vertices.
pub fn hausdorff_between(a: &[Point], b: &[Point], tolerance: &Rational) -> DistanceBound {
    let ab = Directed::new(a, b).sup_distance(tolerance);
    let ba = Directed::new(b, a).sup_distance(tolerance);
    let lower_sq = ab.lower_sq.clone().max(ba.lower_sq.clone());
    let upper_sq = ab.upper_sq.clone().max(ba.upper_sq.clone());
    let witness = if ab.lower_sq >= ba.lower_sq {
        ab.witness
    } else {
        ba.witness
    };
    DistanceBound {
        lower_sq,
        upper_sq,
        witness,
    }
}

/// Exact squared distance from `p` to segment `[s, t]`.
pub fn point_segment_sq(p: &Point, s: &Point, t: &Point) -> Rational {
    let dx = &t.x - &s.x;
    let dy = &t.y - &s.y;
    let len = &dx * &dx + &dy * &dy;
    let px = &p.x - &s.x;
    let py = &p.y - &s.y;
    if len.is_zero() {
        return &px * &px + &py * &py;
    }
    let proj = (&px * &dx + &py * &dy) / &len;
    let u = if proj <= Rational::zero() {
        Rational::zero()
    } else if proj >= Rational::one() {
        Rational::one()
    } else {
        proj
    };
    let ex = px - &u * dx;
    let ey = py - u * dy;
    &ex * &ex + &ey * &ey
}

fn point_segment_sq_f64(p: (f64, f64), s: (f64, f64), t: (f64, f64)) -> f64 {
    let (dx, dy) = (t.0 - s.0, t.1 - s.1);
    let len = dx * dx + dy * dy;
    let (px, py) = (p.0 - s.0, p.1 - s.1);
    let u = if len == 0.0 {
        0.0
    } else {
        ((px * dx + py * dy) / len).clamp(0.0, 1.0)
    };
    let (ex, ey) = (px - u * dx, py - u * dy);
    ex * ex + ey * ey
}

/// Sup over the source polyline of the distance to the target polyline.
struct Directed<'a> {
    source: &'a [Point],
    target: &'a [Point],
    target_f64: Vec<(f64, f64)>,
}

/// Distance data at one source point: exact squared distance and the target
/// segments that may realise it.
#[derive(Clone)]
struct Probe {
    point: Point,
    dist_sq: Rational,
    candidates: Vec<usize>,
}

struct Pending {
    upper: Rational,
    segment: usize,
    left: Probe,
    right: Probe,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.upper == other.upper
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper.cmp(&other.upper)
    }
}

const MAX_REFINEMENTS: usize = 200_000;

impl<'a> Directed<'a> {
    fn new(source: &'a [Point], target: &'a [Point]) -> Self {
        let target_f64 = target.iter().map(|p| (to_f64(&p.x), to_f64(&p.y))).collect();
        Directed {
            source,
            target,
            target_f64,
        }
    }

    fn target_segments(&self) -> usize {
        self.target.len().saturating_sub(1)
    }

    fn probe(&self, p: Point) -> Probe {
        let pf = (to_f64(&p.x), to_f64(&p.y));
        let n = self.target_segments();
        if n == 0 {
            let q = &self.target[0];
            let dx = &p.x - &q.x;
            let dy = &p.y - &q.y;
            return Probe {
                dist_sq: &dx * &dx + &dy * &dy,
                point: p,
                candidates: vec![],
            };
        }
        // Scan outwards from the x-position of p; a segment whose x-range lies
        // farther than the best distance so far cannot be closer.
        let start = self
            .target_f64
            .partition_point(|q| q.0 <= pf.0)
            .saturating_sub(1)
            .min(n - 1);
        let seg = |i: usize| point_segment_sq_f64(pf, self.target_f64[i], self.target_f64[i + 1]);
        let mut best = f64::INFINITY;
        let mut dists: Vec<(usize, f64)> = Vec::new();
        let mut i = start as isize;
        while i >= 0 {
            let iu = i as usize;
            let gap = pf.0 - self.target_f64[iu + 1].0;
            if gap > 0.0 && gap * gap > best + 1e-9 {
                break;
            }
            let d = seg(iu);
            best = best.min(d);
            dists.push((iu, d));
            i -= 1;
        }
        for iu in start + 1..n {
            let gap = self.target_f64[iu].0 - pf.0;
            if gap > 0.0 && gap * gap > best + 1e-9 {
                break;
            }
            let d = seg(iu);
            best = best.min(d);
            dists.push((iu, d));
        }
        let margin = 1e-9 + best * 1e-9;
        let mut candidates: Vec<usize> = dists
            .into_iter()
            .filter(|&(_, d)| d <= best + margin)
            .map(|(i, _)| i)
            .collect();
        candidates.sort_unstable();
        let dist_sq = candidates
            .iter()
            .map(|&i| point_segment_sq(&p, &self.target[i], &self.target[i + 1]))
            .min()
            .expect("at least one candidate");
        Probe {
            point: p,
            dist_sq,
            candidates,
        }
    }

    /// Upper bound on the squared distance over the source sub-segment
    /// between two probes.
    fn upper(&self, left: &Probe, right: &Probe) -> Rational {
        if self.target_segments() == 0 {
            return left.dist_sq.clone().max(right.dist_sq.clone());
        }
        let mut cands: Vec<usize> = left
            .candidates
            .iter()
            .chain(right.candidates.iter())
            .copied()
            .collect();
        cands.sort_unstable();
        cands.dedup();
        cands
            .into_iter()
            .map(|i| {
                let (s, t) = (&self.target[i], &self.target[i + 1]);
                point_segment_sq(&left.point, s, t).max(point_segment_sq(&right.point, s, t))
            })
            .min()
            .expect("non-empty candidates")
    }

    fn sup_distance(&self, tolerance: &Rational) -> DistanceBound {
        let probes: Vec<Probe> = self.source.iter().map(|p| self.probe(p.clone())).collect();
        let mut best = probes
            .iter()
            .max_by(|a, b| a.dist_sq.cmp(&b.dist_sq))
            .map(|p| (p.dist_sq.clone(), p.point.clone()))
            .expect("non-empty source");
        let mut heap = BinaryHeap::new();
        let mut iter = probes.into_iter();
        let mut prev = iter.next().expect("non-empty source");
        for (segment, next) in iter.enumerate() {
            let upper = self.upper(&prev, &next);
            let left = std::mem::replace(&mut prev, next);
            let right = prev.clone();
            if upper > best.0 {
                heap.push(Pending {
                    upper,
                    segment,
                    left,
                    right,
                });
            }
        }
        let mut refinements = 0;
        while let Some(top) = heap.peek() {
            if &top.upper - &best.0 <= *tolerance || refinements >= MAX_REFINEMENTS {
                break;
            }
            let Pending {
                segment,
                left,
                right,
                ..
            } = heap.pop().expect("peeked");
            refinements += 1;
            let mid = Point::new(
                midpoint(&left.point.x, &right.point.x),
                midpoint(&left.point.y, &right.point.y),
            );
            let probe = self.probe(mid);
            if probe.dist_sq > best.0 {
                best = (probe.dist_sq.clone(), probe.point.clone());
            }
            let mid_copy = probe.clone();
            for (l, r) in [(left, probe), (mid_copy, right)] {
                let upper = self.upper(&l, &r);
                if upper > best.0 {
                    heap.push(Pending {
                        upper,
                        segment,
                        left: l,
                        right: r,
                    });
                }
            }
        }
        let upper_sq = heap
            .peek()
            .map(|p| p.upper.clone().max(best.0.clone()))
            .unwrap_or_else(|| best.0.clone());
        DistanceBound {
            lower_sq: best.0,
            upper_sq,
            witness: best.1,
        }
    }
}
