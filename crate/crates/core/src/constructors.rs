//! Concrete map families with machine-readable construction descriptors.
//!
//! Every constructor validates the exact properties its family promises
//! (diagonal class, fixed set, designated values) before returning.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::pl_map::{Component, DiagonalClass, PlMap, Point};
use crate::rational::{int, one, rat, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Henderson,
    NowhereDenseFixed,
    ZeroAttractedVariant,
    DoubleSin,
    ArcExample,
    /// A bare map without construction metadata.
    Plain,
}

impl FamilyTag {
    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Henderson => "henderson",
            FamilyTag::NowhereDenseFixed => "nwd-fixed",
            FamilyTag::ZeroAttractedVariant => "variant",
            FamilyTag::DoubleSin => "double-sin",
            FamilyTag::ArcExample => "arc-example",
            FamilyTag::Plain => "plain",
        }
    }

    pub fn from_name(name: &str) -> Option<FamilyTag> {
        [
            FamilyTag::Henderson,
            FamilyTag::NowhereDenseFixed,
            FamilyTag::ZeroAttractedVariant,
            FamilyTag::DoubleSin,
            FamilyTag::ArcExample,
            FamilyTag::Plain,
        ]
        .into_iter()
        .find(|t| t.name() == name)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One v-shaped notch: the graph leaves the baseline at `entry`, optionally
/// rises to `apex`, drops to `tip` and rejoins the baseline at `exit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Notch {
    pub entry: Point,
    pub apex: Option<Point>,
    pub tip: Point,
    pub exit: Point,
}

impl Notch {
    fn points(&self) -> Vec<Point> {
        let mut pts = vec![self.entry.clone()];
        pts.extend(self.apex.iter().cloned());
        pts.push(self.tip.clone());
        pts.push(self.exit.clone());
        pts
    }

    fn transported(&self, h: &PlMap, reverse: bool) -> Notch {
        let map = |p: &Point| Point::new(h.eval_unchecked(&p.x), h.eval_unchecked(&p.y));
        let (entry, exit) = if reverse {
            (map(&self.exit), map(&self.entry))
        } else {
            (map(&self.entry), map(&self.exit))
        };
        Notch {
            entry,
            apex: self.apex.as_ref().map(map),
            tip: map(&self.tip),
            exit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotchSchedule {
    pub count: usize,
    pub notches: Vec<Notch>,
    /// The point the notches accumulate on.
    pub target: Point,
    pub base_resolution: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetKind {
    FiniteUnion,
    CantorTruncation { depth: usize },
}

/// A closed set `S` given by finitely many disjoint components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetDescriptor {
    pub kind: SetKind,
    pub ambient: (Rational, Rational),
    pub components: Vec<Component>,
    pub rank_tag: usize,
}

impl SetDescriptor {
    /// A finite union of points and intervals inside `(0, 1/4)`.
    pub fn finite_union(components: Vec<Component>) -> Result<SetDescriptor> {
        let ambient = (zero(), rat(1, 4));
        let s = SetDescriptor {
            kind: SetKind::FiniteUnion,
            ambient,
            rank_tag: 0,
            components,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = &self.ambient;
        if self.components.is_empty() {
            return Err(Error::InvalidArgument("the set has no components".into()));
        }
        for c in &self.components {
            if let Component::Interval(a, b) = c {
                if a >= b {
                    return Err(Error::DegenerateInterval(Box::new(a.clone()), Box::new(b.clone())));
                }
            }
            if c.start() < lo || c.end() > hi || !c.start().is_positive() || *c.end() >= rat(1, 4) {
                return Err(Error::InvalidArgument(format!(
                    "component {c} must lie inside [{lo}, {hi}] and (0, 1/4)"
                )));
            }
        }
        for w in self.components.windows(2) {
            if w[0].end() >= w[1].start() {
                return Err(Error::InvalidArgument(format!(
                    "components {} and {} overlap or are out of order",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    pub fn max(&self) -> &Rational {
        self.components.last().expect("validated").end()
    }
}

/// Middle-thirds truncation of depth `depth` of the closed interval `ambient`.
pub fn cantor_descriptor(depth: usize, ambient: (Rational, Rational)) -> Result<SetDescriptor> {
    let (u, v) = &ambient;
    if !u.is_positive() || *v >= rat(1, 4) || u >= v {
        return Err(Error::InvalidArgument(format!(
            "ambient [{u}, {v}] must be a non-degenerate interval inside (0, 1/4)"
        )));
    }
    if depth > 16 {
        return Err(Error::InvalidArgument("Cantor depth is limited to 16".into()));
    }
    let mut intervals = vec![(u.clone(), v.clone())];
    for _ in 0..depth {
        intervals = intervals
            .into_iter()
            .flat_map(|(a, b)| {
                let third = (&b - &a) / int(3);
                let left = (a.clone(), &a + &third);
                let right = (&b - &third, b);
                [left, right]
            })
            .collect();
    }
    let s = SetDescriptor {
        kind: SetKind::CantorTruncation { depth },
        ambient: ambient.clone(),
        components: intervals
            .into_iter()
            .map(|(a, b)| Component::Interval(a, b))
            .collect(),
        rank_tag: depth,
    };
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClusterKind {
    /// A single notch.
    Simple,
    /// Notches shrinking geometrically toward the cluster position.
    Accumulating { oscillations: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub position: Rational,
    pub kind: ClusterKind,
}

impl Cluster {
    pub fn simple(position: Rational) -> Cluster {
        Cluster {
            position,
            kind: ClusterKind::Simple,
        }
    }

    pub fn accumulating(position: Rational, oscillations: usize) -> Cluster {
        Cluster {
            position,
            kind: ClusterKind::Accumulating { oscillations },
        }
    }

    pub fn notch_count(&self) -> usize {
        match self.kind {
            ClusterKind::Simple => 1,
            ClusterKind::Accumulating { oscillations } => oscillations,
        }
    }
}

/// Strict-critical clusters placed on `(0, 1/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalSchedule {
    pub clusters: Vec<Cluster>,
    /// Window `[position - scale, position + scale]` each cluster lives in.
    pub scale: Rational,
}

/// The designated intervals `[a_i, b_i]` of the sin(1/x)-type families and
/// the ratio by which their images shrink per level (1 keeps them equal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinLevels {
    pub levels: usize,
    pub intervals: Vec<(Rational, Rational)>,
    pub image_ratio: Rational,
    /// The point the designated intervals accumulate on.
    pub limit: Rational,
}

/// Construction metadata; each family fills in the parts it uses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Descriptor {
    pub notches: Option<NotchSchedule>,
    pub fixed_set: Option<SetDescriptor>,
    pub critical: Option<CriticalSchedule>,
    pub sin_levels: Option<SinLevels>,
}

impl Descriptor {
    pub fn is_empty(&self) -> bool {
        self.notches.is_none()
            && self.fixed_set.is_none()
            && self.critical.is_none()
            && self.sin_levels.is_none()
    }
}

/// A map with the descriptor of its construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMap {
    pub tag: FamilyTag,
    pub map: PlMap,
    /// Construction parameters as `(key, value)` text, in a fixed order.
    pub params: Vec<(String, String)>,
    pub descriptor: Descriptor,
    /// Rationals the construction guarantees to be attracted to the
    /// attracting end (for Henderson-based maps: `f(f(η))` is 0 or close).
    pub witnesses: Vec<Rational>,
}

impl FamilyMap {
    pub fn plain(map: PlMap) -> FamilyMap {
        FamilyMap {
            tag: FamilyTag::Plain,
            map,
            params: vec![],
            descriptor: Descriptor::default(),
            witnesses: vec![],
        }
    }

    /// `h ∘ f ∘ h^{-1}` with every descriptor position carried along by `h`.
    pub fn conjugate(&self, h: &PlMap) -> Result<FamilyMap> {
        let map = self.map.conjugate_by(h)?;
        let reverse = !h.is_increasing_homeomorphism();
        let hx = |x: &Rational| h.eval_unchecked(x);
        let comp = |c: &Component| match c {
            Component::Point(p) => Component::Point(hx(p)),
            Component::Interval(a, b) if reverse => Component::Interval(hx(b), hx(a)),
            Component::Interval(a, b) => Component::Interval(hx(a), hx(b)),
        };
        let pair = |(a, b): &(Rational, Rational)| {
            if reverse {
                (hx(b), hx(a))
            } else {
                (hx(a), hx(b))
            }
        };
        fn order<T>(mut v: Vec<T>, reverse: bool) -> Vec<T> {
            if reverse {
                v.reverse();
            }
            v
        }
        let d = &self.descriptor;
        let descriptor = Descriptor {
            notches: d.notches.as_ref().map(|s| NotchSchedule {
                count: s.count,
                notches: order(s.notches.iter().map(|n| n.transported(h, reverse)).collect(), reverse),
                target: Point::new(hx(&s.target.x), hx(&s.target.y)),
                base_resolution: s.base_resolution,
            }),
            fixed_set: d.fixed_set.as_ref().map(|s| SetDescriptor {
                kind: s.kind,
                ambient: pair(&s.ambient),
                components: order(s.components.iter().map(comp).collect(), reverse),
                rank_tag: s.rank_tag,
            }),
            critical: d.critical.as_ref().map(|c| CriticalSchedule {
                clusters: order(
                    c.clusters
                        .iter()
                        .map(|cl| Cluster {
                            position: hx(&cl.position),
                            kind: cl.kind,
                        })
                        .collect(),
                    reverse,
                ),
                scale: c.scale.clone(),
            }),
            sin_levels: d.sin_levels.as_ref().map(|s| SinLevels {
                levels: s.levels,
                intervals: s.intervals.iter().map(pair).collect(),
                image_ratio: s.image_ratio.clone(),
                limit: hx(&s.limit),
            }),
        };
        Ok(FamilyMap {
            tag: self.tag,
            map,
            params: self.params.clone(),
            descriptor,
            witnesses: self.witnesses.iter().map(hx).collect(),
        })
    }

    /// Conjugate by `x -> 1 - x`.
    pub fn reflect(&self) -> FamilyMap {
        let phi = PlMap::from_pairs([(zero(), one()), (one(), zero())]).expect("valid flip");
        self.conjugate(&phi).expect("the flip is a homeomorphism")
    }
}

/// Shape of the Henderson-type map shared by the derived families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HendersonConfig {
    pub notches: usize,
    pub base_resolution: u32,
}

impl Default for HendersonConfig {
    fn default() -> Self {
        HendersonConfig {
            notches: 6,
            base_resolution: 16,
        }
    }
}

/// Largest supported notch count; the k-th notch has width `2^{-k}/4`.
pub const MAX_NOTCHES: usize = 48;

/// The two-step witness of the Henderson-based maps: `f(49/80) = 3/8`.
pub fn henderson_witness() -> Rational {
    rat(49, 80)
}

fn sq(x: &Rational) -> Rational {
    x * x
}

fn on_square(x: Rational) -> Point {
    let y = sq(&x);
    Point::new(x, y)
}

fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
    Point::new(rat(x.0, x.1), rat(y.0, y.1))
}

fn notch_schedule(count: usize) -> Vec<Notch> {
    let mut out = Vec::with_capacity(count);
    for k in 1..=count {
        let notch = match k {
            1 => Notch {
                entry: pt((3, 4), (9, 16)),
                apex: Some(pt((77, 100), (3, 5))),
                tip: pt((4, 5), (11, 20)),
                exit: pt((5, 6), (25, 36)),
            },
            2 => Notch {
                entry: pt((43, 50), (1849, 2500)),
                apex: None,
                tip: pt((7, 8), (71, 100)),
                exit: pt((8, 9), (64, 81)),
            },
            _ => {
                let scale = Rational::new(1.into(), num_bigint::BigInt::from(1u8) << k);
                let left = one() - &scale * int(2) / int(4);
                let w = &scale / int(4);
                let x_tip = &left + &w / int(2);
                let tip_y = sq(&x_tip) - &scale / int(2);
                Notch {
                    entry: on_square(&left + &w / int(4)),
                    apex: None,
                    tip: Point::new(x_tip, tip_y),
                    exit: on_square(&left + &w * int(3) / int(4)),
                }
            }
        };
        out.push(notch);
    }
    out
}

/// Points of the Henderson-type map with x in `[from, 1]`.
fn henderson_points(config: HendersonConfig, from: &Rational) -> (Vec<Point>, NotchSchedule) {
    let n = i64::from(config.base_resolution);
    let notches = notch_schedule(config.notches);
    let witness = henderson_witness();
    let window = (&witness - rat(1, 160), &witness + rat(1, 160));
    let mut features: Vec<(Rational, Rational, Vec<Point>)> = vec![(
        window.0.clone(),
        window.1.clone(),
        vec![
            on_square(window.0.clone()),
            Point::new(witness.clone(), rat(3, 8)),
            on_square(window.1.clone()),
        ],
    )];
    features.push((rat(1, 2), rat(1, 2), vec![on_square(rat(1, 2))]));
    for notch in &notches {
        features.push((notch.entry.x.clone(), notch.exit.x.clone(), notch.points()));
    }
    let mut pts: Vec<Point> = (0..=n)
        .map(|i| on_square(rat(i, n)))
        .filter(|p| !features.iter().any(|(l, r, _)| p.x >= *l && p.x <= *r))
        .collect();
    for (_, _, fp) in features {
        pts.extend(fp);
    }
    pts.sort_by(|a, b| a.x.cmp(&b.x));
    pts.dedup();
    pts.retain(|p| p.x >= *from);
    let schedule = NotchSchedule {
        count: config.notches,
        notches,
        target: Point::new(one(), one()),
        base_resolution: config.base_resolution,
    };
    (pts, schedule)
}

fn check_class(map: &PlMap, expected: DiagonalClass, family: &str) -> Result<()> {
    let got = map.classify_diagonal();
    if got != expected {
        return Err(Error::Precondition(format!(
            "{family} construction produced a {got} map, expected {expected}"
        )));
    }
    Ok(())
}

fn check_ends(map: &PlMap, family: &str) -> Result<()> {
    let p = map.points();
    if !p[0].y.is_zero() || p[p.len() - 1].y != one() {
        return Err(Error::Precondition(format!("{family} construction must fix 0 and 1")));
    }
    Ok(())
}

fn henderson_params(config: HendersonConfig) -> Vec<(String, String)> {
    vec![
        ("notches".into(), config.notches.to_string()),
        ("base-resolution".into(), config.base_resolution.to_string()),
    ]
}

fn validate_config(config: HendersonConfig) -> Result<()> {
    if config.base_resolution < 4 {
        return Err(Error::InvalidArgument(format!(
            "base resolution must be at least 4, got {}",
            config.base_resolution
        )));
    }
    if config.notches > MAX_NOTCHES {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_NOTCHES} notches are supported, got {}",
            config.notches
        )));
    }
    Ok(())
}

/// PL interpolation of `x^2` perturbed by `n_notches` v-shaped notches
/// accumulating on `(1, 1)`. Base grid points inside a notch are replaced by
/// the notch, so notches never collide with the grid.
pub fn henderson(n_notches: usize, base_resolution: u32) -> Result<FamilyMap> {
    let config = HendersonConfig {
        notches: n_notches,
        base_resolution,
    };
    validate_config(config)?;
    let (pts, schedule) = henderson_points(config, &zero());
    let map = PlMap::new(pts)?;
    check_class(&map, DiagonalClass::ZeroAttracted, "henderson")?;
    if map.lap_number() != 1 + 2 * n_notches {
        return Err(Error::Precondition("notch overlay changed the lap count".into()));
    }
    Ok(FamilyMap {
        tag: FamilyTag::Henderson,
        map,
        params: henderson_params(config),
        descriptor: Descriptor {
            notches: Some(schedule),
            ..Descriptor::default()
        },
        witnesses: vec![henderson_witness()],
    })
}

/// A map with `Fix(f) = S ∪ {0, 1}`: the Henderson-type map on `[1/2, 1]`,
/// two monotone pieces on `[3/8, 1/2]` with `f(3/8) = 0`, and on `[0, 1/4]`
/// the identity on `S` with dips below the diagonal in every gap.
pub fn nowhere_dense_fixed(set: &SetDescriptor, config: HendersonConfig) -> Result<FamilyMap> {
    validate_config(config)?;
    set.validate()?;
    let mut pts: Vec<Point> = vec![Point::new(zero(), zero())];
    let mut prev = zero();
    for c in &set.components {
        let (u, v) = (c.start().clone(), c.end().clone());
        let mid = (&prev + &u) / int(2);
        let dip = (&prev + &mid) / int(2);
        pts.push(Point::new(mid, dip));
        pts.push(Point::new(u.clone(), u.clone()));
        if u != v {
            pts.push(Point::new(v.clone(), v.clone()));
        }
        prev = v;
    }
    pts.push(Point::new(rat(1, 4), set.max() / int(2)));
    pts.push(Point::new(rat(3, 8), zero()));
    pts.push(Point::new(rat(7, 16), rat(5, 16)));
    let (upper, schedule) = henderson_points(config, &rat(1, 2));
    pts.extend(upper);
    let map = PlMap::new(pts)?;
    check_class(&map, DiagonalClass::UnderDiagonal, "nowhere-dense-fixed")?;
    let mut expected = vec![Component::Point(zero())];
    expected.extend(set.components.iter().cloned());
    expected.push(Component::Point(one()));
    if map.fixed_points() != expected {
        return Err(Error::Precondition("fixed set differs from S ∪ {0, 1}".into()));
    }
    let witness = henderson_witness();
    if map.eval_unchecked(&map.eval_unchecked(&witness)) != zero() {
        return Err(Error::Precondition("two-step witness does not reach 0".into()));
    }
    let mut params = henderson_params(config);
    match set.kind {
        SetKind::FiniteUnion => params.push(("set".into(), "finite".into())),
        SetKind::CantorTruncation { depth } => {
            params.push(("set".into(), "cantor".into()));
            params.push(("cantor-depth".into(), depth.to_string()));
        }
    }
    Ok(FamilyMap {
        tag: FamilyTag::NowhereDenseFixed,
        map,
        params,
        descriptor: Descriptor {
            notches: Some(schedule),
            fixed_set: Some(set.clone()),
            ..Descriptor::default()
        },
        witnesses: vec![witness],
    })
}

/// Default window half-width for clusters at the given positions.
fn cluster_scale(positions: &[Rational]) -> Rational {
    let mut gaps: Vec<Rational> = Vec::new();
    let mut prev = zero();
    for p in positions {
        gaps.push(p - &prev);
        prev = p.clone();
    }
    gaps.push(rat(1, 2) - prev);
    let min_gap = gaps.into_iter().min().expect("non-empty");
    // A power of two keeps the notch coordinates short.
    let mut scale = rat(1, 16);
    while &scale * int(4) > min_gap {
        scale /= int(2);
    }
    scale
}

/// One notch on `[e, e + l]` over the baseline `x/2`.
fn half_line_notch(e: &Rational, l: &Rational) -> [Point; 4] {
    let base = |x: &Rational| x / int(2);
    let peak_x = e + l / int(3);
    let tip_x = e + l * int(2) / int(3);
    let exit_x = e + l;
    [
        Point::new(e.clone(), base(e)),
        Point::new(peak_x.clone(), base(&peak_x) + l / int(4)),
        Point::new(tip_x.clone(), base(&tip_x) - l / int(4)),
        Point::new(exit_x.clone(), base(&exit_x)),
    ]
}

/// Map with `f(x) = x/2` on `[0, 1/2]` perturbed by strict-critical
/// clusters, and the Henderson-type map on `[1/2, 1]`.
pub fn zero_attracted_variant(clusters: &[Cluster], config: HendersonConfig) -> Result<FamilyMap> {
    validate_config(config)?;
    for w in clusters.windows(2) {
        if w[0].position >= w[1].position {
            return Err(Error::InvalidArgument("cluster positions must increase".into()));
        }
    }
    for c in clusters {
        if !(c.position.is_positive() && c.position < rat(1, 2)) {
            return Err(Error::InvalidArgument(format!(
                "cluster position {} must lie in (0, 1/2)",
                c.position
            )));
        }
        if let ClusterKind::Accumulating { oscillations } = c.kind {
            if oscillations == 0 || oscillations > MAX_NOTCHES {
                return Err(Error::InvalidArgument(format!(
                    "oscillation count must be in 1..={MAX_NOTCHES}"
                )));
            }
        }
    }
    let positions: Vec<Rational> = clusters.iter().map(|c| c.position.clone()).collect();
    let scale = cluster_scale(&positions);
    let mut pts = vec![Point::new(zero(), zero())];
    for c in clusters {
        let p = &c.position;
        match c.kind {
            ClusterKind::Simple => pts.extend(half_line_notch(&(p - &scale / int(2)), &scale)),
            ClusterKind::Accumulating { oscillations } => {
                let mut len = scale.clone();
                for _ in 0..oscillations {
                    len /= int(2);
                    pts.extend(half_line_notch(&(p - &len * int(2)), &len));
                }
            }
        }
    }
    let (upper, schedule) = henderson_points(config, &rat(1, 2));
    pts.extend(upper);
    pts.dedup();
    let map = PlMap::new(pts)?;
    check_class(&map, DiagonalClass::ZeroAttracted, "variant")
        .map_err(|_| Error::InvalidArgument("the schedule's oscillations cross the diagonal".into()))?;
    let mut params = henderson_params(config);
    params.push(("clusters".into(), clusters.len().to_string()));
    Ok(FamilyMap {
        tag: FamilyTag::ZeroAttractedVariant,
        map,
        params,
        descriptor: Descriptor {
            notches: Some(schedule),
            critical: Some(CriticalSchedule {
                clusters: clusters.to_vec(),
                scale,
            }),
            ..Descriptor::default()
        },
        witnesses: vec![henderson_witness()],
    })
}

/// Ten cluster schedules with pairwise different mark patterns; the `m`
/// clusters of a schedule sit at `i / (2(m + 1))`.
pub fn census_schedules() -> Vec<Vec<Cluster>> {
    use ClusterKind::{Accumulating, Simple};
    let acc = Accumulating { oscillations: 3 };
    let patterns: [&[ClusterKind]; 10] = [
        &[],
        &[Simple],
        &[acc],
        &[Simple, Simple],
        &[Simple, acc],
        &[acc, Simple],
        &[acc, acc],
        &[Simple, Simple, Simple],
        &[acc, Simple, acc],
        &[Simple, acc, Simple],
    ];
    patterns
        .iter()
        .map(|kinds| {
            let m = kinds.len() as i64;
            kinds
                .iter()
                .enumerate()
                .map(|(i, &kind)| Cluster {
                    position: rat(i as i64 + 1, 2 * (m + 1)),
                    kind,
                })
                .collect()
        })
        .collect()
}

/// Points `t_i = (3/4)^i`.
fn staircase(levels: usize) -> Vec<Rational> {
    let mut t = vec![one()];
    for _ in 0..=levels {
        let next = t[t.len() - 1].clone() * rat(3, 4);
        t.push(next);
    }
    t
}

/// Above-diagonal staircase map: on `[t_{i+1}, t_i]` a decreasing piece on
/// `[a_i, b_i]` maps onto `image_i` reversed, where `image_1 = [β, β + w_1]`
/// and `image_i` is the centered subinterval of `[a_{i-1}, b_{i-1}]` scaled by
/// `ratio`.
fn sin_staircase(levels: usize, ratio: &Rational) -> Result<(PlMap, Vec<(Rational, Rational)>)> {
    if levels == 0 {
        return Err(Error::InvalidArgument("levels must be at least 1".into()));
    }
    if levels > 40 {
        return Err(Error::InvalidArgument("at most 40 levels are supported".into()));
    }
    let t = staircase(levels);
    let mut designated: Vec<(Rational, Rational)> = Vec::with_capacity(levels);
    // (x, y) points in increasing x, built from the top level down and reversed.
    let mut rev: Vec<Point> = vec![Point::new(one(), one()), Point::new(rat(3, 4), rat(7, 8))];
    for i in 1..=levels {
        let (top, bottom) = (&t[i], &t[i + 1]);
        let gap = top - bottom;
        let a = bottom + &gap * int(3) / int(8);
        let b = &a + &gap / int(4);
        let (img_lo, img_hi) = if i == 1 {
            let beta = rat(25, 32);
            let hi = &beta + (&b - &a);
            (beta, hi)
        } else {
            let (pa, pb) = &designated[i - 2];
            let w = pb - pa;
            let half = &w * ratio / int(2);
            let mid = (pa + pb) / int(2);
            (&mid - &half, &mid + half)
        };
        rev.push(Point::new(b.clone(), img_lo));
        rev.push(Point::new(a.clone(), img_hi));
        rev.push(Point::new(bottom.clone(), top.clone()));
        designated.push((a, b));
    }
    rev.push(Point::new(zero(), zero()));
    rev.reverse();
    Ok((PlMap::new(rev)?, designated))
}

/// 1-attracted map whose designated intervals keep the diameter of their
/// images: slope -1 on `[a_1, b_1]` and `f([a_{i+1}, b_{i+1}]) = [a_i, b_i]`.
pub fn double_sin_map(levels: usize) -> Result<FamilyMap> {
    let (map, intervals) = sin_staircase(levels, &one())?;
    check_class(&map, DiagonalClass::OneAttracted, "double-sin")?;
    check_ends(&map, "double-sin")?;
    Ok(FamilyMap {
        tag: FamilyTag::DoubleSin,
        map,
        params: vec![("levels".into(), levels.to_string())],
        descriptor: Descriptor {
            sin_levels: Some(SinLevels {
                levels,
                intervals,
                image_ratio: one(),
                limit: zero(),
            }),
            ..Descriptor::default()
        },
        witnesses: vec![],
    })
}

/// 0-attracted map whose oscillation clusters have iterated images shrinking
/// by half per level; the reflection of a staircase built like
/// [`double_sin_map`].
pub fn arc_example_map(levels: usize) -> Result<FamilyMap> {
    let (above, intervals) = sin_staircase(levels, &rat(1, 2))?;
    let map = above.reflect();
    check_class(&map, DiagonalClass::ZeroAttracted, "arc-example")?;
    check_ends(&map, "arc-example")?;
    let intervals = intervals
        .into_iter()
        .map(|(a, b)| (one() - b, one() - a))
        .collect();
    Ok(FamilyMap {
        tag: FamilyTag::ArcExample,
        map,
        params: vec![("levels".into(), levels.to_string())],
        descriptor: Descriptor {
            sin_levels: Some(SinLevels {
                levels,
                intervals,
                image_ratio: rat(1, 2),
                limit: one(),
            }),
            ..Descriptor::default()
        },
        witnesses: vec![],
    })
}
