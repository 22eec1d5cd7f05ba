//! δ-crookedness between value pairs, on value grids, and along iterates.
//!
//! `f` is δ-crooked between `a` and `b` when for all `c, d` with `f(c) = a`,
//! `f(d) = b` there are `c'` between `c` and `d` and `d'` between `c'` and `d`
//! with `|b - f(c')| < δ` and `|a - f(d')| < δ`.
//!
//! For a path from `c` to `d` let `s` be the first point where `f` enters the
//! open band around `b`. The best choice of `c'` lies just after `s`, so the
//! condition holds iff `f` comes within δ of `a` somewhere on `[s, d]`, which
//! is read off the breakpoint values. Only facing endpoints of adjacent
//! preimage components with different labels need to be tested: any other
//! pair `(c, d)` encloses such a facing pair, and a witness found for the
//! inner pair also serves the outer one.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::{find_map_first, map_collect, Execution};
use crate::inverse_limit::Tower;
use crate::pl_map::{BreakpointLimit, Component, PlMap};
use crate::rational::{int, midpoint, one, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairStatus {
    Holds,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerdict {
    pub status: PairStatus,
    /// `(c, d)` with `f(c) = a`, `f(d) = b` admitting no `(c', d')`.
    pub witness: Option<(Rational, Rational)>,
    /// `(c', d')` for the first tested pair when the condition holds.
    pub trace: Option<(Rational, Rational)>,
    /// `a` or `b` is not attained, so the condition holds vacuously.
    pub vacuous: bool,
}

impl PairVerdict {
    pub fn holds(&self) -> bool {
        self.status == PairStatus::Holds
    }

    fn vacuous() -> Self {
        PairVerdict {
            status: PairStatus::Holds,
            witness: None,
            trace: None,
            vacuous: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridStatus {
    Refuted,
    GridCertified,
}

/// An exact counterexample `(a, b, c, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridWitness {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridVerdict {
    pub status: GridStatus,
    pub delta: Rational,
    pub mesh: Rational,
    pub witness: Option<GridWitness>,
    pub pairs_checked: u64,
    pub grid_size: usize,
    /// The range of the map is shorter than `2δ`, which makes every pair
    /// crooked; no pairs were enumerated.
    pub trivial: bool,
}

impl GridVerdict {
    pub fn certified(&self) -> bool {
        self.status == GridStatus::GridCertified
    }
}

/// Exact decision of δ-crookedness between `a` and `b`.
pub fn check_pair(f: &PlMap, a: &Rational, b: &Rational, delta: &Rational) -> Result<PairVerdict> {
    if !delta.is_positive() {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    let pa = f.preimage(a)?;
    let pb = f.preimage(b)?;
    Ok(decide(f, a, b, delta, &pa.components, &pb.components))
}

/// Whether the range of `f` is shorter than `2δ`. Such a map is δ-crooked
/// between every pair: between `c` and `d` it attains `(a + b) / 2`, which is
/// within δ of both `a` and `b`.
pub fn is_trivially_crooked(f: &PlMap, delta: &Rational) -> bool {
    let (lo, hi) = f.range();
    hi - lo < delta * int(2)
}

fn decide(
    f: &PlMap,
    a: &Rational,
    b: &Rational,
    delta: &Rational,
    pa: &[Component],
    pb: &[Component],
) -> PairVerdict {
    if pa.is_empty() || pb.is_empty() {
        return PairVerdict::vacuous();
    }
    if (a - b).abs() < *delta {
        let c = pa[0].start().clone();
        return PairVerdict {
            status: PairStatus::Holds,
            witness: None,
            trace: Some((c.clone(), c)),
            vacuous: false,
        };
    }
    // Merge both component lists left to right; labels: false = a, true = b.
    let mut merged: Vec<(&Component, bool)> = Vec::with_capacity(pa.len() + pb.len());
    let (mut i, mut j) = (0, 0);
    while i < pa.len() || j < pb.len() {
        let take_a = j >= pb.len() || (i < pa.len() && pa[i].start() < pb[j].start());
        if take_a {
            merged.push((&pa[i], false));
            i += 1;
        } else {
            merged.push((&pb[j], true));
            j += 1;
        }
    }
    let mut trace = None;
    for pair in merged.windows(2) {
        let ((left, left_is_b), (right, right_is_b)) = (pair[0], pair[1]);
        if left_is_b == right_is_b {
            continue;
        }
        let (c, d) = if left_is_b {
            (right.start(), left.end())
        } else {
            (left.end(), right.start())
        };
        match oriented(f, a, b, delta, c, d) {
            Some(t) => {
                if trace.is_none() {
                    trace = Some(t);
                }
            }
            None => {
                return PairVerdict {
                    status: PairStatus::Fails,
                    witness: Some((c.clone(), d.clone())),
                    trace: None,
                    vacuous: false,
                }
            }
        }
    }
    PairVerdict {
        status: PairStatus::Holds,
        witness: None,
        trace,
        vacuous: false,
    }
}

/// Tests the path from `c` (value `a`) to `d` (value `b`); returns `(c', d')`
/// when the condition holds on it.
fn oriented(
    f: &PlMap,
    a: &Rational,
    b: &Rational,
    delta: &Rational,
    c: &Rational,
    d: &Rational,
) -> Option<(Rational, Rational)> {
    let pts = f.points();
    let reversed = c > d;
    let (lo, hi) = if reversed { (d, c) } else { (c, d) };
    let from = pts.partition_point(|p| p.x <= *lo);
    let to = pts.partition_point(|p| p.x < *hi);
    // Positions along the path increase; a right-to-left path is negated.
    let mut path: Vec<(Rational, Rational)> = Vec::with_capacity(to.saturating_sub(from) + 2);
    if reversed {
        path.push((-c, a.clone()));
        path.extend(pts[from..to].iter().rev().map(|p| (-&p.x, p.y.clone())));
        path.push((-d, b.clone()));
    } else {
        path.push((c.clone(), a.clone()));
        path.extend(pts[from..to].iter().map(|p| (p.x.clone(), p.y.clone())));
        path.push((d.clone(), b.clone()));
    }
    let (cp, dp) = path_decide(&path, a, b, delta)?;
    Some(if reversed { (-cp, -dp) } else { (cp, dp) })
}

fn solve(x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational, y: &Rational) -> Rational {
    x0 + (y - y0) * (x1 - x0) / (y1 - y0)
}

fn path_decide(
    path: &[(Rational, Rational)],
    a: &Rational,
    b: &Rational,
    delta: &Rational,
) -> Option<(Rational, Rational)> {
    let b_lo = b - delta;
    let b_hi = b + delta;
    let mut entry = None;
    for (i, w) in path.windows(2).enumerate() {
        let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
        if *y0 >= b_hi && *y1 < b_hi {
            entry = Some((i, solve(x0, y0, x1, y1, &b_hi), b_hi.clone()));
            break;
        }
        if *y0 <= b_lo && *y1 > b_lo {
            entry = Some((i, solve(x0, y0, x1, y1, &b_lo), b_lo.clone()));
            break;
        }
    }
    let (i, s, fs) = entry.expect("the path ends at a value inside the band");
    let a_lo = a - delta;
    let a_hi = a + delta;
    let tail = &path[i + 1..];
    let min = tail.iter().map(|p| &p.1).chain([&fs]).min().expect("non-empty");
    let max = tail.iter().map(|p| &p.1).chain([&fs]).max().expect("non-empty");
    if !(*min < a_hi && *max > a_lo) {
        return None;
    }
    // d': a point strictly inside the a-band after s.
    let mut d_prime = None;
    let mut prev = (s.clone(), fs.clone());
    for next in tail {
        if let Some(x) = band_point(&prev, next, &a_lo, &a_hi) {
            d_prime = Some(x);
            break;
        }
        prev = next.clone();
    }
    let d_prime = d_prime.expect("range test guarantees a band point");
    // c': inside the b-band on the piece leaving s, no later than d'.
    let (x1, y1) = &tail[0];
    let exit = if *y1 > b_lo && *y1 < b_hi {
        x1.clone()
    } else if *y1 >= b_hi {
        solve(&s, &fs, x1, y1, &b_hi)
    } else {
        solve(&s, &fs, x1, y1, &b_lo)
    };
    let c_prime = midpoint(&s, &exit.min(d_prime.clone()));
    Some((c_prime, d_prime))
}

/// A point of the piece `p -> q` whose value lies strictly inside `(lo, hi)`,
/// if the piece meets the band in more than a point.
fn band_point(
    p: &(Rational, Rational),
    q: &(Rational, Rational),
    lo: &Rational,
    hi: &Rational,
) -> Option<Rational> {
    let ((x0, y0), (x1, y1)) = (p, q);
    if y0 == y1 {
        return (y0 > lo && y0 < hi).then(|| midpoint(x0, x1));
    }
    let t_lo = solve(x0, y0, x1, y1, lo);
    let t_hi = solve(x0, y0, x1, y1, hi);
    let (u, v) = if t_lo < t_hi { (t_lo, t_hi) } else { (t_hi, t_lo) };
    let u = u.max(x0.clone());
    let v = v.min(x1.clone());
    (u < v).then(|| midpoint(&u, &v))
}

/// Values tested by [`check_grid`]: breakpoint values of `f`, the lattice
/// `k * mesh` and `1`, sorted without repeats.
pub fn grid_values(f: &PlMap, mesh: &Rational) -> Vec<Rational> {
    let mut values: Vec<Rational> = f.points().iter().map(|p| p.y.clone()).collect();
    let mut k = zero();
    while k <= one() {
        values.push(k.clone());
        k += mesh;
    }
    values.push(one());
    values.sort();
    values.dedup();
    values
}

/// Checks every pair of grid values; see [`check_grid_with`].
pub fn check_grid(f: &PlMap, delta: &Rational, mesh: &Rational) -> Result<GridVerdict> {
    check_grid_with(f, delta, mesh, Execution::default())
}

/// Refutes δ-crookedness exactly or certifies it on the value grid.
/// The reported witness is the first failing pair in lexicographic grid
/// order, whatever the execution strategy.
pub fn check_grid_with(
    f: &PlMap,
    delta: &Rational,
    mesh: &Rational,
    exec: Execution,
) -> Result<GridVerdict> {
    if !delta.is_positive() {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    if !mesh.is_positive() || mesh > delta {
        return Err(Error::InvalidArgument(format!(
            "mesh must satisfy 0 < mesh <= delta, got {mesh}"
        )));
    }
    let grid = grid_values(f, mesh);
    let n = grid.len();
    let total = (n as u64) * (n as u64).saturating_sub(1) / 2;
    if is_trivially_crooked(f, delta) {
        return Ok(GridVerdict {
            status: GridStatus::GridCertified,
            delta: delta.clone(),
            mesh: mesh.clone(),
            witness: None,
            pairs_checked: 0,
            grid_size: n,
            trivial: true,
        });
    }
    let pre: Vec<Vec<Component>> = map_collect(exec, n, |i| {
        f.preimage(&grid[i]).expect("grid values lie in [0, 1]").components
    });
    let found = find_map_first(exec, n, |i| {
        if pre[i].is_empty() {
            return None;
        }
        for j in i + 1..n {
            if pre[j].is_empty() || &grid[j] - &grid[i] < *delta {
                continue;
            }
            let v = decide(f, &grid[i], &grid[j], delta, &pre[i], &pre[j]);
            if let Some((c, d)) = v.witness {
                return Some((i, j, c, d));
            }
        }
        None
    });
    Ok(match found {
        Some((i, j, c, d)) => {
            let (i64_, j64) = (i as u64, j as u64);
            let nn = n as u64;
            let before = i64_ * (nn - 1) - i64_ * i64_.saturating_sub(1) / 2;
            GridVerdict {
                status: GridStatus::Refuted,
                delta: delta.clone(),
                mesh: mesh.clone(),
                witness: Some(GridWitness {
                    a: grid[i].clone(),
                    b: grid[j].clone(),
                    c,
                    d,
                }),
                pairs_checked: before + (j64 - i64_),
                grid_size: n,
                trivial: false,
            }
        }
        None => GridVerdict {
            status: GridStatus::GridCertified,
            delta: delta.clone(),
            mesh: mesh.clone(),
            witness: None,
            pairs_checked: total,
            grid_size: n,
            trivial: false,
        },
    })
}

/// Bracket `(lo, hi]` on the crookedness threshold, `hi - lo <= resolution`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaBracket {
    pub lo: Rational,
    pub hi: Rational,
}

/// Bisects on `(0, 1]` with `mesh = δ / 4`: the grid check refutes at `lo`
/// (unless `lo = 0`) and certifies at `hi`.
pub fn min_delta(f: &PlMap, resolution: &Rational) -> Result<DeltaBracket> {
    min_delta_with(f, resolution, Execution::default())
}

pub fn min_delta_with(f: &PlMap, resolution: &Rational, exec: Execution) -> Result<DeltaBracket> {
    if !resolution.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "resolution must be positive, got {resolution}"
        )));
    }
    let mut lo = zero();
    let mut hi = one();
    while &hi - &lo > *resolution {
        let mid = midpoint(&lo, &hi);
        let verdict = check_grid_with(f, &mid, &(&mid / int(4)), exec)?;
        if verdict.certified() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(DeltaBracket { lo, hi })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Horizon {
    pub delta: Rational,
    pub n_found: Option<usize>,
    pub n_max: usize,
    pub per_n: Vec<GridVerdict>,
}

/// Least `n <= n_max` whose iterate is grid-certified δ-crooked.
pub fn horizon(f: &PlMap, delta: &Rational, n_max: usize, mesh: &Rational) -> Result<Horizon> {
    horizon_with(f, delta, n_max, mesh, BreakpointLimit::from_env(), Execution::default())
}

pub fn horizon_with(
    f: &PlMap,
    delta: &Rational,
    n_max: usize,
    mesh: &Rational,
    limit: BreakpointLimit,
    exec: Execution,
) -> Result<Horizon> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let mut per_n = Vec::new();
    let mut n_found = None;
    let mut iterate = f.clone();
    for n in 1..=n_max {
        if n > 1 {
            iterate = f.compose(&iterate);
        }
        if iterate.breakpoint_count() > limit.0 {
            return Err(Error::ResourceLimit {
                count: iterate.breakpoint_count(),
                limit: limit.0,
            });
        }
        let verdict = check_grid_with(&iterate, delta, mesh, exec)?;
        let certified = verdict.certified();
        per_n.push(verdict);
        if certified {
            n_found = Some(n);
            break;
        }
    }
    Ok(Horizon {
        delta: delta.clone(),
        n_found,
        n_max,
        per_n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOutcome {
    /// `f_{k', k}` is grid-certified.
    Certified { k_prime: usize },
    /// No `k'` up to the tower depth certifies.
    Exhausted,
    /// The level is a single point.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelVerdict {
    pub level: usize,
    pub outcome: LevelOutcome,
    /// `(k', verdict)` for every composition tried, in order.
    pub attempts: Vec<(usize, GridVerdict)>,
    /// The level is shorter than `2δ`, so every map onto it is δ-crooked.
    pub trivial: bool,
}

impl LevelVerdict {
    pub fn certified(&self) -> bool {
        !matches!(self.outcome, LevelOutcome::Exhausted)
    }
}

/// For each level `k`, the first `k' >= k` up to the depth with `f_{k', k}`
/// grid-certified δ-crooked. `delta` and `mesh` are absolute; the check runs
/// on the rescaled composition with both divided by `|I_k|`.
pub fn tower_crookedness(tower: &Tower, delta: &Rational, mesh: &Rational) -> Result<Vec<LevelVerdict>> {
    tower_crookedness_with(tower, delta, mesh, BreakpointLimit::from_env(), Execution::default())
}

pub fn tower_crookedness_with(
    tower: &Tower,
    delta: &Rational,
    mesh: &Rational,
    limit: BreakpointLimit,
    exec: Execution,
) -> Result<Vec<LevelVerdict>> {
    if !delta.is_positive() || !mesh.is_positive() || mesh > delta {
        return Err(Error::InvalidArgument(format!(
            "need 0 < mesh <= delta, got mesh {mesh}, delta {delta}"
        )));
    }
    let depth = tower.depth();
    let mut out = Vec::with_capacity(depth);
    for k in 1..=depth {
        let width = tower.width(k);
        if width.is_zero() {
            out.push(LevelVerdict {
                level: k,
                outcome: LevelOutcome::Vacuous,
                attempts: vec![],
                trivial: true,
            });
            continue;
        }
        let rel_delta = delta / &width;
        let rel_mesh = mesh / &width;
        let trivial = width < delta * int(2);
        let mut attempts = Vec::new();
        let mut outcome = LevelOutcome::Exhausted;
        let mut comp = PlMap::identity();
        for k_prime in k..=depth {
            if k_prime > k {
                match tower.step(k_prime - 1) {
                    Some(step) => comp = comp.compose(&step),
                    None => break,
                }
                if comp.breakpoint_count() > limit.0 {
                    return Err(Error::ResourceLimit {
                        count: comp.breakpoint_count(),
                        limit: limit.0,
                    });
                }
            }
            let verdict = check_grid_with(&comp, &rel_delta, &rel_mesh, exec)?;
            let certified = verdict.certified();
            attempts.push((k_prime, verdict));
            if certified {
                outcome = LevelOutcome::Certified { k_prime };
                break;
            }
        }
        out.push(LevelVerdict {
            level: k,
            outcome,
            attempts,
            trivial,
        });
    }
    Ok(out)
}
