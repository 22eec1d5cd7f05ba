//! Exact piecewise-linear self-maps of the unit interval.
//!
//! A [`PlMap`] is the linear interpolation of finitely many rational
//! breakpoints `(x, y)` with `0 = x_0 < x_1 < ... < x_n = 1` and every `y` in
//! `[0, 1]`. All operations are exact; no floating point is involved.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{in_unit, one, rat, zero, Rational};

/// Default ceiling on the breakpoint count produced by [`PlMap::iterate`].
pub const DEFAULT_MAX_BREAKPOINTS: usize = 2_000_000;

/// Environment variable overriding [`DEFAULT_MAX_BREAKPOINTS`].
pub const MAX_BREAKPOINTS_ENV: &str = "CROOKEDLAB_MAX_BREAKPOINTS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BreakpointLimit(pub usize);

/// `(numerator, denominator)`.
pub type Fraction = (i64, i64);

impl Default for BreakpointLimit {
    fn default() -> Self {
        BreakpointLimit(DEFAULT_MAX_BREAKPOINTS)
    }
}

impl BreakpointLimit {
    /// The default ceiling, overridden by `CROOKEDLAB_MAX_BREAKPOINTS` when it
    /// holds a positive integer.
    pub fn from_env() -> Self {
        std::env::var(MAX_BREAKPOINTS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .map(BreakpointLimit)
            .unwrap_or_default()
    }

    fn check(self, count: usize) -> Result<()> {
        if count > self.0 {
            Err(Error::ResourceLimit {
                count,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A connected piece of a level set or fixed set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Component {
    Point(Rational),
    Interval(Rational, Rational),
}

impl Component {
    pub fn start(&self) -> &Rational {
        match self {
            Component::Point(x) | Component::Interval(x, _) => x,
        }
    }

    pub fn end(&self) -> &Rational {
        match self {
            Component::Point(x) | Component::Interval(_, x) => x,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.start() <= x && x <= self.end()
    }

    pub fn is_interval(&self) -> bool {
        matches!(self, Component::Interval(..))
    }

    /// Image under `x -> 1 - x`.
    pub fn mirrored(&self) -> Component {
        match self {
            Component::Point(x) => Component::Point(one() - x),
            Component::Interval(a, b) => Component::Interval(one() - b, one() - a),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Point(x) => write!(f, "{{{x}}}"),
            Component::Interval(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// Ordered, maximal components of `f^{-1}(y)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PreimageSet {
    pub components: Vec<Component>,
}

impl PreimageSet {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Component> {
        self.components.iter()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.components.iter().any(|c| c.contains(x))
    }
}

/// Position of a map relative to the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagonalClass {
    UnderDiagonal,
    AboveDiagonal,
    ZeroAttracted,
    OneAttracted,
    Neither,
    Identity,
}

impl DiagonalClass {
    /// `f(x) <= x` everywhere.
    pub fn is_under(self) -> bool {
        matches!(
            self,
            DiagonalClass::UnderDiagonal | DiagonalClass::ZeroAttracted | DiagonalClass::Identity
        )
    }

    /// `f(x) >= x` everywhere.
    pub fn is_above(self) -> bool {
        matches!(
            self,
            DiagonalClass::AboveDiagonal | DiagonalClass::OneAttracted | DiagonalClass::Identity
        )
    }

    /// Class of the map conjugated by `x -> 1 - x`.
    pub fn reflected(self) -> DiagonalClass {
        match self {
            DiagonalClass::UnderDiagonal => DiagonalClass::AboveDiagonal,
            DiagonalClass::AboveDiagonal => DiagonalClass::UnderDiagonal,
            DiagonalClass::ZeroAttracted => DiagonalClass::OneAttracted,
            DiagonalClass::OneAttracted => DiagonalClass::ZeroAttracted,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DiagonalClass::UnderDiagonal => "UnderDiagonal",
            DiagonalClass::AboveDiagonal => "AboveDiagonal",
            DiagonalClass::ZeroAttracted => "ZeroAttracted",
            DiagonalClass::OneAttracted => "OneAttracted",
            DiagonalClass::Neither => "Neither",
            DiagonalClass::Identity => "Identity",
        }
    }
}

impl fmt::Display for DiagonalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Increasing,
    Decreasing,
    Flat,
}

/// A maximal run of segments sharing one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneRun {
    pub start: Rational,
    pub end: Rational,
    pub direction: Direction,
}

/// A piecewise-linear self-map of `[0, 1]` with rational breakpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlMap {
    points: Vec<Point>,
}

impl PlMap {
    /// Validates and wraps a breakpoint sequence. Collinear interior
    /// breakpoints are kept; see [`PlMap::canonicalize`].
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty)?;
        let last = points.last().expect("non-empty");
        for (index, pair) in points.windows(2).enumerate() {
            if pair[1].x <= pair[0].x {
                return Err(Error::NotIncreasing { index: index + 1 });
            }
        }
        if !first.x.is_zero() || last.x != one() || points.len() < 2 {
            return Err(Error::XRange {
                first: Box::new(first.x.clone()),
                last: Box::new(last.x.clone()),
            });
        }
        if let Some(p) = points.iter().find(|p| !in_unit(&p.y)) {
            return Err(Error::YOutOfRange {
                x: Box::new(p.x.clone()),
                y: Box::new(p.y.clone()),
            });
        }
        Ok(PlMap { points })
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        PlMap::new(pairs.into_iter().map(|(x, y)| Point::new(x, y)).collect())
    }

    /// Convenience constructor from small integer fractions `((xn, xd), (yn, yd))`.
    pub fn from_fractions(pairs: &[(Fraction, Fraction)]) -> Result<Self> {
        PlMap::from_pairs(
            pairs
                .iter()
                .map(|&((xn, xd), (yn, yd))| (rat(xn, xd), rat(yn, yd))),
        )
    }

    pub fn identity() -> Self {
        PlMap {
            points: vec![Point::new(zero(), zero()), Point::new(one(), one())],
        }
    }

    /// The full tent `x -> 1 - |1 - 2x|`.
    pub fn tent() -> Self {
        PlMap {
            points: vec![
                Point::new(zero(), zero()),
                Point::new(rat(1, 2), one()),
                Point::new(one(), zero()),
            ],
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn breakpoint_count(&self) -> usize {
        self.points.len()
    }

    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    /// Index `i` of the segment `[x_i, x_{i+1}]` containing `x` (the left one
    /// at a breakpoint, except at `x = 1`).
    fn segment_of(&self, x: &Rational) -> usize {
        let idx = self.points.partition_point(|p| p.x <= *x);
        idx.saturating_sub(1).min(self.points.len() - 2)
    }

    /// Exact value at `x`.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if !in_unit(x) {
            return Err(Error::OutOfDomain(x.clone()));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &Rational) -> Rational {
        let i = self.segment_of(x);
        interpolate(&self.points[i], &self.points[i + 1], x)
    }

    /// `self ∘ inner`. The breakpoints of the result are those of `inner`
    /// plus the `inner`-preimages of the breakpoint abscissae of `self`.
    pub fn compose(&self, inner: &PlMap) -> PlMap {
        let outer = &self.points;
        let mut out: Vec<Point> = Vec::with_capacity(inner.points.len() * 2);
        out.push(Point::new(
            inner.points[0].x.clone(),
            self.eval_unchecked(&inner.points[0].y),
        ));
        for seg in inner.points.windows(2) {
            let (p, q) = (&seg[0], &seg[1]);
            match p.y.cmp(&q.y) {
                Ordering::Less => {
                    let lo = outer.partition_point(|o| o.x <= p.y);
                    let hi = outer.partition_point(|o| o.x < q.y);
                    for o in &outer[lo..hi] {
                        out.push(Point::new(solve_x(p, q, &o.x), o.y.clone()));
                    }
                }
                Ordering::Greater => {
                    let lo = outer.partition_point(|o| o.x <= q.y);
                    let hi = outer.partition_point(|o| o.x < p.y);
                    for o in outer[lo..hi].iter().rev() {
                        out.push(Point::new(solve_x(p, q, &o.x), o.y.clone()));
                    }
                }
                Ordering::Equal => {}
            }
            out.push(Point::new(q.x.clone(), self.eval_unchecked(&q.y)));
        }
        PlMap { points: out }
    }

    /// The `n`-fold composition, failing once the breakpoint count exceeds `limit`.
    pub fn iterate(&self, n: usize, limit: BreakpointLimit) -> Result<PlMap> {
        if n == 0 {
            return Err(Error::InvalidArgument("iterate needs n >= 1".into()));
        }
        let mut acc = self.clone();
        limit.check(acc.breakpoint_count())?;
        for _ in 1..n {
            acc = self.compose(&acc);
            limit.check(acc.breakpoint_count())?;
        }
        Ok(acc)
    }

    /// All iterates `f, f^2, ..., f^n`.
    pub fn iterates(&self, n: usize, limit: BreakpointLimit) -> Result<Vec<PlMap>> {
        let mut out = Vec::with_capacity(n);
        let mut acc = self.clone();
        for k in 1..=n {
            if k > 1 {
                acc = self.compose(&acc);
            }
            limit.check(acc.breakpoint_count())?;
            out.push(acc.clone());
        }
        Ok(out)
    }

    /// Exact components of `f^{-1}(y)`, ordered left to right.
    pub fn preimage(&self, y: &Rational) -> Result<PreimageSet> {
        if !in_unit(y) {
            return Err(Error::OutOfDomain(y.clone()));
        }
        Ok(PreimageSet {
            components: level_set(&self.points, y),
        })
    }

    /// Minimum and maximum value.
    pub fn range(&self) -> (Rational, Rational) {
        value_range(&self.points)
    }

    pub fn is_surjective(&self) -> bool {
        let (lo, hi) = self.range();
        lo.is_zero() && hi == one()
    }

    /// Drops interior breakpoints that are collinear with their neighbours.
    pub fn canonicalize(&self) -> PlMap {
        PlMap {
            points: canonical_points(&self.points),
        }
    }

    /// Equality of graphs, independent of redundant breakpoints.
    pub fn graph_eq(&self, other: &PlMap) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// Maximal runs of increasing, decreasing and flat segments.
    pub fn monotone_runs(&self) -> Vec<MonotoneRun> {
        let mut runs: Vec<MonotoneRun> = Vec::new();
        for seg in self.points.windows(2) {
            let direction = match seg[0].y.cmp(&seg[1].y) {
                Ordering::Less => Direction::Increasing,
                Ordering::Greater => Direction::Decreasing,
                Ordering::Equal => Direction::Flat,
            };
            match runs.last_mut() {
                Some(run) if run.direction == direction => run.end = seg[1].x.clone(),
                _ => runs.push(MonotoneRun {
                    start: seg[0].x.clone(),
                    end: seg[1].x.clone(),
                    direction,
                }),
            }
        }
        runs
    }

    /// Number of maximal monotone laps; plateaus count as laps of their own
    /// (see [`PlMap::has_plateau`]). A constant map has one lap.
    pub fn lap_number(&self) -> usize {
        self.monotone_runs().len()
    }

    pub fn has_plateau(&self) -> bool {
        self.points.windows(2).any(|s| s[0].y == s[1].y)
    }

    /// Exact components of `Fix(f)`, found by intersecting every linear
    /// piece with the diagonal.
    pub fn fixed_points(&self) -> Vec<Component> {
        let mut comps: Vec<Component> = Vec::new();
        for seg in self.points.windows(2) {
            let (p, q) = (&seg[0], &seg[1]);
            let dp = &p.y - &p.x;
            let dq = &q.y - &q.x;
            if dp.is_zero() && dq.is_zero() {
                push_interval(&mut comps, p.x.clone(), q.x.clone());
            } else if dp.is_zero() {
                push_point(&mut comps, p.x.clone());
            } else if dq.is_zero() {
                push_point(&mut comps, q.x.clone());
            } else if dp.is_positive() != dq.is_positive() {
                // d(x) = f(x) - x is linear on the piece; solve d = 0.
                let t = &dp / (&dp - &dq);
                push_point(&mut comps, &p.x + t * (&q.x - &p.x));
            }
        }
        comps
    }

    /// Exact diagonal class; piecewise linearity reduces it to the signs of
    /// `f(x) - x` at the breakpoints.
    pub fn classify_diagonal(&self) -> DiagonalClass {
        let diffs: Vec<Rational> = self.points.iter().map(|p| &p.y - &p.x).collect();
        let under = diffs.iter().all(|d| !d.is_positive());
        let above = diffs.iter().all(|d| !d.is_negative());
        let ends_fixed = diffs[0].is_zero() && diffs[diffs.len() - 1].is_zero();
        let interior = &diffs[1..diffs.len() - 1];
        match (under, above) {
            (true, true) => DiagonalClass::Identity,
            (true, false) if ends_fixed && interior.iter().all(|d| d.is_negative()) => {
                DiagonalClass::ZeroAttracted
            }
            (true, false) => DiagonalClass::UnderDiagonal,
            (false, true) if ends_fixed && interior.iter().all(|d| d.is_positive()) => {
                DiagonalClass::OneAttracted
            }
            (false, true) => DiagonalClass::AboveDiagonal,
            (false, false) => DiagonalClass::Neither,
        }
    }

    /// The piece of `f` over `[u, v]`.
    pub fn restrict(&self, u: &Rational, v: &Rational) -> Result<Restriction> {
        if !in_unit(u) {
            return Err(Error::OutOfDomain(u.clone()));
        }
        if !in_unit(v) {
            return Err(Error::OutOfDomain(v.clone()));
        }
        if u >= v {
            return Err(Error::DegenerateInterval(Box::new(u.clone()), Box::new(v.clone())));
        }
        let mut pts = vec![Point::new(u.clone(), self.eval_unchecked(u))];
        pts.extend(
            self.points
                .iter()
                .filter(|p| p.x > *u && p.x < *v)
                .cloned(),
        );
        pts.push(Point::new(v.clone(), self.eval_unchecked(v)));
        Ok(Restriction::from_points(pts))
    }

    /// `φ ∘ f ∘ φ` with `φ(x) = 1 - x`.
    pub fn reflect(&self) -> PlMap {
        PlMap {
            points: self
                .points
                .iter()
                .rev()
                .map(|p| Point::new(one() - &p.x, one() - &p.y))
                .collect(),
        }
    }

    /// Whether the map is a strictly monotone bijection of `[0, 1]`.
    pub fn is_homeomorphism(&self) -> bool {
        let inc = self.points.windows(2).all(|s| s[0].y < s[1].y);
        let dec = self.points.windows(2).all(|s| s[0].y > s[1].y);
        (inc || dec) && self.is_surjective()
    }

    pub fn is_increasing_homeomorphism(&self) -> bool {
        self.is_homeomorphism() && self.points[0].y.is_zero()
    }

    pub fn inverse(&self) -> Result<PlMap> {
        if !self.is_homeomorphism() {
            return Err(Error::NotHomeomorphism);
        }
        let mut pts: Vec<Point> = self
            .points
            .iter()
            .map(|p| Point::new(p.y.clone(), p.x.clone()))
            .collect();
        if pts[0].x > pts[pts.len() - 1].x {
            pts.reverse();
        }
        Ok(PlMap { points: pts })
    }

    /// `h ∘ f ∘ h^{-1}` for a homeomorphism `h`.
    pub fn conjugate_by(&self, h: &PlMap) -> Result<PlMap> {
        let h_inv = h.inverse()?;
        Ok(h.compose(&self.compose(&h_inv)))
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        write!(f, "PlMap[{}]", parts.join(", "))
    }
}

/// `f` over a closed subinterval, with its exact range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    points: Vec<Point>,
    range: (Rational, Rational),
}

impl Restriction {
    fn from_points(points: Vec<Point>) -> Self {
        let range = value_range(&points);
        Restriction { points, range }
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.points[0].x, &self.points[self.points.len() - 1].x)
    }

    pub fn range(&self) -> (&Rational, &Rational) {
        (&self.range.0, &self.range.1)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let (u, v) = self.domain();
        if x < u || x > v {
            return Err(Error::OutOfDomain(x.clone()));
        }
        let idx = self.points.partition_point(|p| p.x <= *x);
        let i = idx.saturating_sub(1).min(self.points.len() - 2);
        Ok(interpolate(&self.points[i], &self.points[i + 1], x))
    }

    pub fn lap_number(&self) -> usize {
        self.rescaled_or_flat().lap_number()
    }

    /// Affinely rescales domain and range onto `[0, 1]`. A constant piece
    /// becomes the zero map.
    pub fn rescaled(&self) -> PlMap {
        self.rescaled_or_flat()
    }

    fn rescaled_or_flat(&self) -> PlMap {
        let (u, v) = self.domain();
        let width = v - u;
        let (lo, hi) = &self.range;
        let height = hi - lo;
        let points = self
            .points
            .iter()
            .map(|p| {
                let x = (&p.x - u) / &width;
                let y = if height.is_zero() {
                    zero()
                } else {
                    (&p.y - lo) / &height
                };
                Point::new(x, y)
            })
            .collect();
        PlMap { points }
    }

    /// Mirror image under `x -> 1 - x` on both axes.
    pub fn mirrored(&self) -> Restriction {
        Restriction::from_points(
            self.points
                .iter()
                .rev()
                .map(|p| Point::new(one() - &p.x, one() - &p.y))
                .collect(),
        )
    }
}

fn interpolate(p: &Point, q: &Point, x: &Rational) -> Rational {
    if *x == p.x {
        return p.y.clone();
    }
    if *x == q.x {
        return q.y.clone();
    }
    &p.y + (&q.y - &p.y) * (x - &p.x) / (&q.x - &p.x)
}

/// Abscissa on segment `pq` (non-flat) where the value equals `y`.
fn solve_x(p: &Point, q: &Point, y: &Rational) -> Rational {
    &p.x + (y - &p.y) * (&q.x - &p.x) / (&q.y - &p.y)
}

fn value_range(points: &[Point]) -> (Rational, Rational) {
    let lo = points.iter().map(|p| &p.y).min().expect("non-empty").clone();
    let hi = points.iter().map(|p| &p.y).max().expect("non-empty").clone();
    (lo, hi)
}

fn push_point(comps: &mut Vec<Component>, x: Rational) {
    if comps.last().is_some_and(|c| *c.end() >= x) {
        return;
    }
    comps.push(Component::Point(x));
}

fn push_interval(comps: &mut Vec<Component>, a: Rational, b: Rational) {
    if let Some(last) = comps.last_mut() {
        if *last.end() == a {
            let start = last.start().clone();
            *last = Component::Interval(start, b);
            return;
        }
    }
    comps.push(Component::Interval(a, b));
}

/// Components of `{x : g(x) = y}` for the linear interpolation `g` of
/// `points`; the values need not lie in `[0, 1]`.
pub fn level_set(points: &[Point], y: &Rational) -> Vec<Component> {
    let mut comps: Vec<Component> = Vec::new();
    for seg in points.windows(2) {
        let (p, q) = (&seg[0], &seg[1]);
        if p.y == *y && q.y == *y {
            push_interval(&mut comps, p.x.clone(), q.x.clone());
            continue;
        }
        if p.y == *y {
            push_point(&mut comps, p.x.clone());
        } else if (p.y < *y && *y < q.y) || (q.y < *y && *y < p.y) {
            push_point(&mut comps, solve_x(p, q, y));
        }
    }
    if let Some(last) = points.last() {
        if last.y == *y {
            push_point(&mut comps, last.x.clone());
        }
    }
    comps
}

fn collinear(a: &Point, b: &Point, c: &Point) -> bool {
    (&b.y - &a.y) * (&c.x - &b.x) == (&c.y - &b.y) * (&b.x - &a.x)
}

fn canonical_points(points: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], p) {
            out.pop();
        }
        out.push(p.clone());
    }
    out
}

/// `x -> 1 - x` applied to a list of components, keeping left-to-right order.
pub fn mirror_components(comps: &[Component]) -> Vec<Component> {
    comps.iter().rev().map(Component::mirrored).collect()
}

/// Uniform PL interpolation helper: values of `g` at `k/n`, `k = 0..=n`.
pub fn sample_grid<F>(n: i64, g: F) -> Result<PlMap>
where
    F: Fn(&Rational) -> Rational,
{
    PlMap::from_pairs((0..=n).map(|k| {
        let x = rat(k, n);
        let y = g(&x);
        (x, y)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    fn plateau_map() -> PlMap {
        PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 3), (1, 2)), ((2, 3), (1, 2)), ((1, 1), (1, 1))])
            .unwrap()
    }

    #[test]
    fn construction_and_validation() {
        assert_eq!(PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 1), (1, 1))]).unwrap(), PlMap::identity());
        assert_eq!(
            PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 2), (1, 1)), ((1, 1), (0, 1))]).unwrap(),
            PlMap::tent()
        );
        assert_eq!(
            PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 1), (1, 1)), ((1, 2), (0, 1))]),
            Err(Error::NotIncreasing { index: 2 })
        );
        assert!(matches!(
            PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 2), (1, 1))]),
            Err(Error::XRange { .. })
        ));
        assert!(matches!(
            PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 1), (3, 2))]),
            Err(Error::YOutOfRange { .. })
        ));
        assert_eq!(PlMap::new(vec![]), Err(Error::Empty));
        assert!(matches!(PlMap::new(vec![Point::new(zero(), zero())]), Err(Error::XRange { .. })));
    }

    #[test]
    fn evaluation() {
        assert_eq!(PlMap::tent().eval(&r(1, 4)).unwrap(), r(1, 2));
        assert_eq!(PlMap::identity().eval(&r(17, 31)).unwrap(), r(17, 31));
        assert_eq!(PlMap::tent().eval(&r(3, 4)).unwrap(), r(1, 2));
        assert_eq!(PlMap::tent().eval(&one()).unwrap(), zero());
        assert!(matches!(PlMap::tent().eval(&r(5, 4)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn composition() {
        let tent = PlMap::tent();
        assert!(PlMap::identity().compose(&tent).graph_eq(&tent));
        let t2 = tent.compose(&tent);
        let expected = PlMap::from_fractions(&[
            ((0, 1), (0, 1)),
            ((1, 4), (1, 1)),
            ((1, 2), (0, 1)),
            ((3, 4), (1, 1)),
            ((1, 1), (0, 1)),
        ])
        .unwrap();
        assert_eq!(t2, expected);
        assert_eq!(t2.lap_number(), 4);
    }

    #[test]
    fn iteration() {
        let lim = BreakpointLimit::default();
        assert!(PlMap::identity().iterate(9, lim).unwrap().graph_eq(&PlMap::identity()));
        let t3 = PlMap::tent().iterate(3, lim).unwrap();
        assert_eq!(t3.lap_number(), 8);
        assert_eq!(PlMap::tent().iterate(1, lim).unwrap(), PlMap::tent());
        assert!(PlMap::tent().iterate(0, lim).is_err());
        assert_eq!(
            PlMap::tent().iterate(6, BreakpointLimit(20)),
            Err(Error::ResourceLimit { count: 33, limit: 20 })
        );
    }

    #[test]
    fn preimages() {
        let tent = PlMap::tent();
        assert_eq!(
            tent.preimage(&r(1, 2)).unwrap().components,
            vec![Component::Point(r(1, 4)), Component::Point(r(3, 4))]
        );
        assert_eq!(tent.preimage(&one()).unwrap().components, vec![Component::Point(r(1, 2))]);
        assert_eq!(
            plateau_map().preimage(&r(1, 2)).unwrap().components,
            vec![Component::Interval(r(1, 3), r(2, 3))]
        );
        let low = PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 1), (1, 2))]).unwrap();
        assert!(low.preimage(&r(3, 4)).unwrap().is_empty());
        assert!(tent.preimage(&r(-1, 2)).is_err());
    }

    #[test]
    fn laps_and_plateaus() {
        assert_eq!(PlMap::identity().lap_number(), 1);
        assert_eq!(PlMap::tent().lap_number(), 2);
        let p = plateau_map();
        assert_eq!(p.lap_number(), 3);
        assert!(p.has_plateau());
        let constant = PlMap::from_fractions(&[((0, 1), (1, 3)), ((1, 1), (1, 3))]).unwrap();
        assert_eq!(constant.lap_number(), 1);
    }

    #[test]
    fn fixed_sets() {
        assert_eq!(PlMap::identity().fixed_points(), vec![Component::Interval(zero(), one())]);
        assert_eq!(
            PlMap::tent().fixed_points(),
            vec![Component::Point(zero()), Component::Point(r(2, 3))]
        );
        assert_eq!(
            plateau_map().fixed_points(),
            vec![Component::Point(zero()), Component::Point(r(1, 2)), Component::Point(one())]
        );
    }

    #[test]
    fn diagonal_classes() {
        assert_eq!(PlMap::identity().classify_diagonal(), DiagonalClass::Identity);
        let square = sample_grid(4, |x| x * x).unwrap();
        assert_eq!(square.classify_diagonal(), DiagonalClass::ZeroAttracted);
        assert_eq!(PlMap::tent().classify_diagonal(), DiagonalClass::Neither);
        assert_eq!(square.reflect().classify_diagonal(), DiagonalClass::OneAttracted);
        let touching =
            PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 2), (1, 2)), ((3, 4), (1, 4)), ((1, 1), (1, 1))]).unwrap();
        assert_eq!(touching.classify_diagonal(), DiagonalClass::UnderDiagonal);
        let both_id =
            PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 2), (1, 2)), ((1, 1), (1, 1))]).unwrap();
        assert_eq!(both_id.classify_diagonal(), DiagonalClass::Identity);
    }

    #[test]
    fn restrictions() {
        let id = PlMap::identity().restrict(&r(1, 2), &one()).unwrap();
        assert_eq!(id.range(), (&r(1, 2), &one()));
        assert!(id.rescaled().graph_eq(&PlMap::identity()));
        let left = PlMap::tent().restrict(&zero(), &r(1, 2)).unwrap();
        assert_eq!(left.lap_number(), 1);
        assert_eq!(left.range(), (&zero(), &one()));
        assert!(matches!(
            PlMap::tent().restrict(&r(1, 2), &r(1, 2)),
            Err(Error::DegenerateInterval(..))
        ));
    }

    #[test]
    fn reflection() {
        let tent = PlMap::tent();
        assert_eq!(tent.reflect().reflect(), tent);
        let flipped = PlMap::from_fractions(&[((0, 1), (1, 1)), ((1, 2), (0, 1)), ((1, 1), (1, 1))]).unwrap();
        assert_eq!(tent.reflect(), flipped);
        let mirror = PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 2), (1, 1)), ((1, 1), (0, 1))]).unwrap();
        assert!(mirror.reflect().reflect().graph_eq(&mirror));
    }

    #[test]
    fn canonical_form_merges_collinear_points() {
        let redundant =
            PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 4), (1, 4)), ((1, 2), (1, 2)), ((1, 1), (1, 1))]).unwrap();
        assert_eq!(redundant.canonicalize(), PlMap::identity());
        assert_eq!(redundant.breakpoint_count(), 4);
    }

    #[test]
    fn conjugation_roundtrip() {
        let h = PlMap::from_fractions(&[((0, 1), (0, 1)), ((1, 3), (1, 2)), ((1, 1), (1, 1))]).unwrap();
        let g = PlMap::tent().conjugate_by(&h).unwrap();
        let back = g.conjugate_by(&h.inverse().unwrap()).unwrap();
        assert!(back.graph_eq(&PlMap::tent()));
        assert!(PlMap::tent().inverse().is_err());
        let flip = PlMap::from_fractions(&[((0, 1), (1, 1)), ((1, 1), (0, 1))]).unwrap();
        let sq = sample_grid(4, |x| x * x).unwrap();
        assert!(sq.conjugate_by(&flip).unwrap().graph_eq(&sq.reflect()));
    }

    #[test]
    fn limit_from_env_defaults() {
        assert_eq!(BreakpointLimit::default().0, DEFAULT_MAX_BREAKPOINTS);
    }

    #[test]
    fn segment_lookup_at_breakpoints() {
        let t = PlMap::tent();
        assert_eq!(t.segment_of(&zero()), 0);
        assert_eq!(t.segment_of(&r(1, 2)), 1);
        assert_eq!(t.segment_of(&one()), 1);
    }
}
