//! Finite component towers, orbit attraction and the finite-scale reports
//! built on them.
//!
//! For an under-diagonal map the tower at `η` starts with `I_1 = [η, 1]`;
//! `I_{i+1}` is the component of `f^{-1}(I_i)` containing `1`. Because
//! `f <= 1`, that preimage is `{x : f(x) >= min I_i}`, and `f` maps `I_{i+1}`
//! exactly onto `I_i`. Above-diagonal maps are handled through the
//! reflection `x -> 1 - x`.

use num_traits::{Signed, Zero};

use crate::crookedness::{check_grid_with, tower_crookedness_with, GridVerdict, LevelVerdict};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{hausdorff_graph_distance, DistanceBound};
use crate::pl_map::{BreakpointLimit, Component, DiagonalClass, PlMap, Restriction};
use crate::rational::{in_unit, int, one, rat, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TowerSide {
    /// Levels `[η, 1]`-type, built directly.
    Under,
    /// Levels `[0, η]`-type, built on the reflected map and mirrored back.
    Above,
}

/// Nested intervals `I_1 ⊇ I_2 ⊇ ...` with the bonding restrictions of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub eta: Rational,
    pub side: TowerSide,
    levels: Vec<(Rational, Rational)>,
    /// `f` restricted to `I_{i+1}`, mapping onto `I_i`.
    restrictions: Vec<Restriction>,
}

impl Tower {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// `I_k`, for `1 <= k <= depth`.
    pub fn level(&self, k: usize) -> (&Rational, &Rational) {
        let (u, v) = &self.levels[k - 1];
        (u, v)
    }

    pub fn levels(&self) -> &[(Rational, Rational)] {
        &self.levels
    }

    pub fn width(&self, k: usize) -> Rational {
        let (u, v) = self.level(k);
        v - u
    }

    /// `f` on `I_{j+1}`, onto `I_j`.
    pub fn restriction(&self, j: usize) -> Option<&Restriction> {
        j.checked_sub(1).and_then(|i| self.restrictions.get(i))
    }

    /// The bonding map `I_{j+1} -> I_j` with both intervals rescaled to `[0, 1]`.
    pub fn step(&self, j: usize) -> Option<PlMap> {
        self.restriction(j).map(Restriction::rescaled)
    }

    /// `f_{k', k} = f^{k' - k}` from `I_{k'}` onto `I_k`, rescaled.
    pub fn composition(&self, k_prime: usize, k: usize) -> Option<PlMap> {
        if k == 0 || k_prime < k || k_prime > self.depth() {
            return None;
        }
        let mut comp = PlMap::identity();
        for j in k..k_prime {
            comp = comp.compose(&self.step(j)?);
        }
        Some(comp)
    }
}

/// Builds the tower of depth `depth` at `eta`.
pub fn component_tower(f: &PlMap, eta: &Rational, depth: usize) -> Result<Tower> {
    if !(eta.is_positive() && *eta < one()) {
        return Err(Error::InvalidArgument(format!("eta must lie in (0, 1), got {eta}")));
    }
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let class = f.classify_diagonal();
    if class.is_under() {
        let levels = under_levels(f, eta, depth)?;
        finish_tower(f, eta, TowerSide::Under, levels)
    } else if class.is_above() {
        let mirrored = under_levels(&f.reflect(), &(one() - eta), depth)?;
        let levels = mirrored
            .into_iter()
            .map(|(u, v)| (one() - v, one() - u))
            .collect();
        finish_tower(f, eta, TowerSide::Above, levels)
    } else {
        Err(Error::Precondition(format!(
            "component towers need an under- or above-diagonal map, got {class}"
        )))
    }
}

fn under_levels(f: &PlMap, eta: &Rational, depth: usize) -> Result<Vec<(Rational, Rational)>> {
    let mut levels = vec![(eta.clone(), one())];
    while levels.len() < depth {
        let lo = &levels[levels.len() - 1].0;
        let start = component_containing_one(f, lo).ok_or_else(|| {
            Error::Precondition(format!("f(1) < {lo}: no preimage component contains 1"))
        })?;
        levels.push((start, one()));
    }
    Ok(levels)
}

/// Left end of the component of `{x : f(x) >= lo}` containing 1.
fn component_containing_one(f: &PlMap, lo: &Rational) -> Option<Rational> {
    let pts = f.points();
    if pts[pts.len() - 1].y < *lo {
        return None;
    }
    for w in pts.windows(2).rev() {
        let (p, q) = (&w[0], &w[1]);
        if p.y < *lo {
            return Some(&p.x + (lo - &p.y) * (&q.x - &p.x) / (&q.y - &p.y));
        }
    }
    Some(zero())
}

fn finish_tower(
    f: &PlMap,
    eta: &Rational,
    side: TowerSide,
    levels: Vec<(Rational, Rational)>,
) -> Result<Tower> {
    let mut restrictions = Vec::with_capacity(levels.len().saturating_sub(1));
    for pair in levels.windows(2) {
        let (target, source) = (&pair[0], &pair[1]);
        let r = f.restrict(&source.0, &source.1)?;
        if r.range() != (&target.0, &target.1) {
            return Err(Error::Precondition(format!(
                "f does not map [{}, {}] onto [{}, {}]",
                source.0, source.1, target.0, target.1
            )));
        }
        restrictions.push(r);
    }
    Ok(Tower {
        eta: eta.clone(),
        side,
        levels,
        restrictions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttractionStatus {
    /// The orbit lands on a fixed component.
    ReachedExactly,
    /// The orbit approaches a fixed component monotonically and ends within
    /// the tolerance of it.
    ConvergingTo,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttractionResult {
    pub start: Rational,
    pub status: AttractionStatus,
    /// The fixed component reached or approached.
    pub limit: Option<Component>,
    pub steps: usize,
    pub n_max: usize,
    /// Exact orbit `x, f(x), ...` up to `steps`.
    pub orbit: Vec<Rational>,
}

impl AttractionResult {
    /// Whether the orbit reaches or approaches the fixed point `p`.
    pub fn attracted_to(&self, p: &Rational) -> bool {
        self.status != AttractionStatus::Undecided
            && self.limit.as_ref().is_some_and(|c| c.contains(p))
    }
}

fn distance_to(x: &Rational, c: &Component) -> Rational {
    if x < c.start() {
        c.start() - x
    } else if x > c.end() {
        x - c.end()
    } else {
        zero()
    }
}

/// Iterates `f` from `x` exactly for up to `n_max` steps.
pub fn attraction(f: &PlMap, x: &Rational, n_max: usize, tol: &Rational) -> Result<AttractionResult> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if !in_unit(x) {
        return Err(Error::OutOfDomain(x.clone()));
    }
    let fixed = f.fixed_points();
    let mut orbit = vec![x.clone()];
    for step in 0..=n_max {
        let current = &orbit[step];
        if let Some(c) = fixed.iter().find(|c| c.contains(current)) {
            return Ok(AttractionResult {
                start: x.clone(),
                status: AttractionStatus::ReachedExactly,
                limit: Some(c.clone()),
                steps: step,
                n_max,
                orbit,
            });
        }
        if step < n_max {
            let next = f.eval(current)?;
            orbit.push(next);
        }
    }
    let last = &orbit[n_max];
    let nearest = fixed
        .iter()
        .min_by(|a, b| distance_to(last, a).cmp(&distance_to(last, b)))
        .cloned();
    let increasing = orbit.windows(2).all(|w| w[0] <= w[1]);
    let decreasing = orbit.windows(2).all(|w| w[0] >= w[1]);
    let status = match &nearest {
        Some(c) if distance_to(last, c) < *tol => {
            let toward = if last < c.start() { increasing } else { decreasing };
            if toward {
                AttractionStatus::ConvergingTo
            } else {
                AttractionStatus::Undecided
            }
        }
        _ => AttractionStatus::Undecided,
    };
    Ok(AttractionResult {
        start: x.clone(),
        limit: if status == AttractionStatus::Undecided { None } else { nearest },
        status,
        steps: n_max,
        n_max,
        orbit,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixDensity {
    /// Every component of `Fix(f)` is a point.
    NowhereDense,
    /// `Fix(f)` contains this interval.
    Interval(Rational, Rational),
}

/// Exact check: a finite union of points and intervals is nowhere dense iff
/// it contains no interval.
pub fn nowhere_dense_fix_check(f: &PlMap) -> FixDensity {
    f.fixed_points()
        .into_iter()
        .find_map(|c| match c {
            Component::Interval(a, b) => Some(FixDensity::Interval(a, b)),
            Component::Point(_) => None,
        })
        .unwrap_or(FixDensity::NowhereDense)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionB {
    pub bound: Rational,
    pub distance: DistanceBound,
    /// `None` when the distance bracket straddles the bound.
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaAttempt {
    /// 1-based position of `η_N` in the sequence.
    pub n: usize,
    pub eta: Rational,
    pub m: Option<usize>,
    pub a_bound: Rational,
    pub a_pass: bool,
    pub condition_b: Option<ConditionB>,
    pub condition_c: Option<GridVerdict>,
}

impl LemmaAttempt {
    pub fn passed(&self) -> usize {
        usize::from(self.a_pass)
            + usize::from(self.condition_b.as_ref().is_some_and(|b| b.pass == Some(true)))
            + usize::from(self.condition_c.as_ref().is_some_and(GridVerdict::certified))
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == 3
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaConditionsReport {
    pub delta: Rational,
    pub mesh: Rational,
    pub m_search_max: usize,
    /// The first attempt passing all three conditions, or the attempt
    /// passing the most of them (earliest on ties).
    pub chosen: LemmaAttempt,
    pub all_pass: bool,
}

/// Searches `η_N` along the sequence and `m <= m_search_max` for
/// (a) `η_N < δ/12`, (b) `d_H(Γ(f^m), Γ(f^m|[η_N, 1])) < δ/24` and
/// (c) `f^m|[η_N, 1]` grid-certified `δ/3`-crooked (δ measured in `[0, 1]`).
pub fn lemma_conditions(
    f: &PlMap,
    delta: &Rational,
    eta_sequence: &[Rational],
    m_search_max: usize,
    mesh: &Rational,
) -> Result<LemmaConditionsReport> {
    lemma_conditions_with(
        f,
        delta,
        eta_sequence,
        m_search_max,
        mesh,
        BreakpointLimit::from_env(),
        Execution::default(),
    )
}

pub fn lemma_conditions_with(
    f: &PlMap,
    delta: &Rational,
    eta_sequence: &[Rational],
    m_search_max: usize,
    mesh: &Rational,
    limit: BreakpointLimit,
    exec: Execution,
) -> Result<LemmaConditionsReport> {
    if eta_sequence.is_empty() {
        return Err(Error::InvalidArgument("eta sequence is empty".into()));
    }
    if !delta.is_positive() || !mesh.is_positive() {
        return Err(Error::InvalidArgument("delta and mesh must be positive".into()));
    }
    if m_search_max == 0 {
        return Err(Error::InvalidArgument("m search bound must be at least 1".into()));
    }
    let class = f.classify_diagonal();
    if !class.is_under() {
        return Err(Error::Precondition(format!(
            "the lemma conditions need an under-diagonal map, got {class}"
        )));
    }
    if let Some(bad) = eta_sequence.iter().find(|e| !(e.is_positive() && **e < one())) {
        return Err(Error::InvalidArgument(format!("eta must lie in (0, 1), got {bad}")));
    }
    let a_bound = delta / int(12);
    let b_bound = delta / int(24);
    let c_delta = delta / int(3);
    let c_mesh = mesh.clone().min(c_delta.clone());
    let iterates = f.iterates(m_search_max, limit)?;
    let mut best: Option<LemmaAttempt> = None;
    let mut consider = |attempt: LemmaAttempt| -> bool {
        let done = attempt.all_pass();
        if best.as_ref().is_none_or(|b| attempt.passed() > b.passed()) {
            best = Some(attempt);
        }
        done
    };
    'outer: for (idx, eta) in eta_sequence.iter().enumerate() {
        let a_pass = *eta < a_bound;
        let base = LemmaAttempt {
            n: idx + 1,
            eta: eta.clone(),
            m: None,
            a_bound: a_bound.clone(),
            a_pass,
            condition_b: None,
            condition_c: None,
        };
        if consider(base.clone()) {
            break;
        }
        for (mi, g) in iterates.iter().enumerate() {
            let r = g.restrict(eta, &one())?;
            let distance = hausdorff_graph_distance(g, &r);
            let pass = distance.less_than(&b_bound);
            let mut attempt = LemmaAttempt {
                m: Some(mi + 1),
                condition_b: Some(ConditionB {
                    bound: b_bound.clone(),
                    distance,
                    pass,
                }),
                ..base.clone()
            };
            if pass == Some(true) {
                attempt.condition_c = Some(restricted_crookedness(&r, &c_delta, &c_mesh, exec)?);
            }
            if consider(attempt) {
                break 'outer;
            }
        }
    }
    let chosen = best.expect("at least one attempt");
    Ok(LemmaConditionsReport {
        delta: delta.clone(),
        mesh: mesh.clone(),
        m_search_max,
        all_pass: chosen.all_pass(),
        chosen,
    })
}

/// Grid check of a restriction with absolute `delta` and `mesh`.
fn restricted_crookedness(
    r: &Restriction,
    delta: &Rational,
    mesh: &Rational,
    exec: Execution,
) -> Result<GridVerdict> {
    let (lo, hi) = r.range();
    let width = hi - lo;
    let scaled = r.rescaled();
    if width.is_zero() {
        return check_grid_with(&scaled, &one(), &one(), exec).map(|mut v| {
            v.delta = delta.clone();
            v.mesh = mesh.clone();
            v
        });
    }
    let mut verdict = check_grid_with(&scaled, &(delta / &width), &(mesh / &width), exec)?;
    // Report the witness in absolute coordinates.
    if let Some(w) = verdict.witness.as_mut() {
        let (u, v) = r.domain();
        let span = v - u;
        w.a = lo + &w.a * &width;
        w.b = lo + &w.b * &width;
        w.c = u + &w.c * &span;
        w.d = u + &w.d * &span;
    }
    verdict.delta = delta.clone();
    verdict.mesh = mesh.clone();
    Ok(verdict)
}

/// `η` candidates: the given witnesses first, then `k/64`, without repeats.
pub fn default_eta_grid(witnesses: &[Rational]) -> Vec<Rational> {
    let mut grid: Vec<Rational> = Vec::new();
    for w in witnesses.iter().cloned().chain((1..64).map(|k| rat(k, 64))) {
        if !grid.contains(&w) {
            grid.push(w);
        }
    }
    grid
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationOptions {
    pub eta_grid: Vec<Rational>,
    pub depth: usize,
    pub deltas: Vec<Rational>,
    pub mesh: Rational,
    pub attraction_steps: usize,
    pub attraction_tol: Rational,
}

impl CharacterizationOptions {
    pub fn new(eta_grid: Vec<Rational>, depth: usize, deltas: Vec<Rational>, mesh: Rational) -> Self {
        CharacterizationOptions {
            eta_grid,
            depth,
            deltas,
            mesh,
            attraction_steps: 256,
            attraction_tol: rat(1, 1_000_000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaOutcome {
    pub delta: Rational,
    pub levels: Vec<LevelVerdict>,
}

impl DeltaOutcome {
    pub fn certified(&self) -> bool {
        self.levels.iter().all(LevelVerdict::certified)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaOutcome {
    pub eta: Rational,
    pub attraction: AttractionResult,
    pub tower: Option<Tower>,
    pub deltas: Vec<DeltaOutcome>,
    /// Every level at every scheduled δ is shorter than `2δ`, so the
    /// certification holds for any map and says nothing about `f`.
    pub uninformative: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Overall {
    ConditionsMet { eta: Rational, deltas: Vec<Rational> },
    RefutedClass(DiagonalClass),
    RefutedFixedInterval(Rational, Rational),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub class: DiagonalClass,
    pub fix: Option<FixDensity>,
    pub eta_search: Vec<EtaOutcome>,
    pub overall: Overall,
    pub options: CharacterizationOptions,
}

impl CharacterizationReport {
    pub fn conditions_met(&self) -> bool {
        matches!(self.overall, Overall::ConditionsMet { .. })
    }
}

/// Diagonal class, fixed-set density, then for each `η` in grid order:
/// attraction to the attracting end, the component tower and its
/// crookedness at every scheduled δ. The first `η` passing everything gives
/// `ConditionsMet`; towers whose certification is uninformative do not count.
pub fn characterization_report(f: &PlMap, options: &CharacterizationOptions) -> Result<CharacterizationReport> {
    characterization_report_with(f, options, BreakpointLimit::from_env(), Execution::default())
}

pub fn characterization_report_with(
    f: &PlMap,
    options: &CharacterizationOptions,
    limit: BreakpointLimit,
    exec: Execution,
) -> Result<CharacterizationReport> {
    if options.depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    if options.deltas.is_empty() {
        return Err(Error::InvalidArgument("delta schedule is empty".into()));
    }
    let class = f.classify_diagonal();
    let mut report = CharacterizationReport {
        class,
        fix: None,
        eta_search: vec![],
        overall: Overall::Inconclusive,
        options: options.clone(),
    };
    if !class.is_under() && !class.is_above() {
        report.overall = Overall::RefutedClass(class);
        return Ok(report);
    }
    let fix = nowhere_dense_fix_check(f);
    report.fix = Some(fix.clone());
    if let FixDensity::Interval(a, b) = fix {
        report.overall = Overall::RefutedFixedInterval(a, b);
        return Ok(report);
    }
    let target = if class.is_under() { zero() } else { one() };
    for eta in &options.eta_grid {
        if !(eta.is_positive() && *eta < one()) {
            continue;
        }
        let att = attraction(f, eta, options.attraction_steps, &options.attraction_tol)?;
        let mut outcome = EtaOutcome {
            eta: eta.clone(),
            attraction: att,
            tower: None,
            deltas: vec![],
            uninformative: false,
            pass: false,
        };
        if outcome.attraction.attracted_to(&target) {
            let tower = component_tower(f, eta, options.depth)?;
            for delta in &options.deltas {
                let mesh = options.mesh.clone().min(delta.clone());
                let levels = tower_crookedness_with(&tower, delta, &mesh, limit, exec)?;
                outcome.deltas.push(DeltaOutcome {
                    delta: delta.clone(),
                    levels,
                });
            }
            outcome.uninformative = outcome
                .deltas
                .iter()
                .all(|d| d.levels.iter().all(|l| l.trivial));
            outcome.pass = !outcome.uninformative && outcome.deltas.iter().all(DeltaOutcome::certified);
            outcome.tower = Some(tower);
        }
        let pass = outcome.pass;
        report.eta_search.push(outcome);
        if pass {
            report.overall = Overall::ConditionsMet {
                eta: eta.clone(),
                deltas: options.deltas.clone(),
            };
            break;
        }
    }
    Ok(report)
}
