//! Conjugacy invariants of interval maps and non-conjugacy witnesses.
//!
//! `distinguish` is one-sided: a witness proves two maps are not
//! topologically conjugate, while `None` only means the implemented
//! invariants agree.

use std::fmt;

use crate::constructors::{ClusterKind, FamilyMap};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Execution};
use crate::pl_map::{BreakpointLimit, Component, DiagonalClass, Direction, PlMap};
use crate::rational::{one, zero, Rational};

/// Maximal strictly monotone intervals and plateaus of a map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneDecomposition {
    pub increasing: Vec<(Rational, Rational)>,
    pub decreasing: Vec<(Rational, Rational)>,
    pub plateaus: Vec<(Rational, Rational)>,
}

pub fn monotonicity_decomposition(f: &PlMap) -> MonotoneDecomposition {
    let mut out = MonotoneDecomposition {
        increasing: vec![],
        decreasing: vec![],
        plateaus: vec![],
    };
    for run in f.monotone_runs() {
        let iv = (run.start, run.end);
        match run.direction {
            Direction::Increasing => out.increasing.push(iv),
            Direction::Decreasing => out.decreasing.push(iv),
            Direction::Flat => out.plateaus.push(iv),
        }
    }
    out
}

/// Interior breakpoints where an increasing run meets a decreasing one.
pub fn strict_critical_points(f: &PlMap) -> Vec<Rational> {
    f.monotone_runs()
        .windows(2)
        .filter(|w| {
            w[0].direction != Direction::Flat
                && w[1].direction != Direction::Flat
                && w[0].direction != w[1].direction
        })
        .map(|w| w[0].end.clone())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixKind {
    Point,
    Interval,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixSignature {
    pub components: Vec<FixKind>,
    pub contains_zero: bool,
    pub contains_one: bool,
}

impl FixSignature {
    /// The signature seen through an orientation-reversing conjugacy.
    pub fn reversed(&self) -> FixSignature {
        let mut components = self.components.clone();
        components.reverse();
        FixSignature {
            components,
            contains_zero: self.contains_one,
            contains_one: self.contains_zero,
        }
    }
}

impl fmt::Display for FixSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kinds: Vec<&str> = self
            .components
            .iter()
            .map(|k| match k {
                FixKind::Point => "P",
                FixKind::Interval => "I",
            })
            .collect();
        write!(
            f,
            "({}) zero={} one={}",
            kinds.join(","),
            self.contains_zero,
            self.contains_one
        )
    }
}

pub fn fix_signature(f: &PlMap) -> FixSignature {
    let comps = f.fixed_points();
    FixSignature {
        components: comps
            .iter()
            .map(|c| match c {
                Component::Point(_) => FixKind::Point,
                Component::Interval(..) => FixKind::Interval,
            })
            .collect(),
        contains_zero: comps.first().is_some_and(|c| c.contains(&zero())),
        contains_one: comps.last().is_some_and(|c| c.contains(&one())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarkKind {
    /// An isolated strict-critical cluster (no accumulation).
    Simple,
    /// Decreasing branches degenerating onto the mark's position.
    Accumulating,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccumulationMark {
    pub position: Rational,
    pub kind: MarkKind,
}

/// Family-level accumulation data: every finite member has only finitely
/// many branches, so the marks are read from the construction descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccumulationDescriptor {
    /// All marks ordered by position.
    pub marks: Vec<AccumulationMark>,
}

impl AccumulationDescriptor {
    pub fn count(&self) -> usize {
        self.marks.iter().filter(|m| m.kind == MarkKind::Accumulating).count()
    }

    /// Positions of the accumulating marks.
    pub fn positions(&self) -> Vec<Rational> {
        self.marks
            .iter()
            .filter(|m| m.kind == MarkKind::Accumulating)
            .map(|m| m.position.clone())
            .collect()
    }

    pub fn pattern(&self) -> Vec<MarkKind> {
        self.marks.iter().map(|m| m.kind).collect()
    }
}

fn pattern_text(p: &[MarkKind]) -> String {
    let s: Vec<&str> = p
        .iter()
        .map(|k| match k {
            MarkKind::Simple => "S",
            MarkKind::Accumulating => "A",
        })
        .collect();
    format!("[{}]", s.join(","))
}

pub fn accumulation_descriptor(fm: &FamilyMap) -> Result<AccumulationDescriptor> {
    let d = &fm.descriptor;
    if d.notches.is_none() && d.critical.is_none() && d.sin_levels.is_none() {
        return Err(Error::NotApplicable(format!(
            "{} map carries no branch schedule",
            fm.tag
        )));
    }
    let mut marks = Vec::new();
    if let Some(s) = &d.notches {
        if s.count > 0 {
            marks.push(AccumulationMark {
                position: s.target.x.clone(),
                kind: MarkKind::Accumulating,
            });
        }
    }
    if let Some(c) = &d.critical {
        for cl in &c.clusters {
            let kind = match cl.kind {
                ClusterKind::Simple => MarkKind::Simple,
                ClusterKind::Accumulating { .. } => MarkKind::Accumulating,
            };
            marks.push(AccumulationMark {
                position: cl.position.clone(),
                kind,
            });
        }
    }
    if let Some(s) = &d.sin_levels {
        marks.push(AccumulationMark {
            position: s.limit.clone(),
            kind: MarkKind::Accumulating,
        });
    }
    marks.sort_by(|a, b| a.position.cmp(&b.position));
    Ok(AccumulationDescriptor { marks })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyEstimate {
    /// Least-squares slope of `ln lap(f^n)` against `n`.
    pub slope: f64,
    pub laps: Vec<usize>,
}

pub fn entropy_estimate(f: &PlMap, n_max: usize, limit: BreakpointLimit) -> Result<EntropyEstimate> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("n_max must be at least 2".into()));
    }
    let laps: Vec<usize> = f.iterates(n_max, limit)?.iter().map(PlMap::lap_number).collect();
    let n = laps.len() as f64;
    let xs: Vec<f64> = (1..=laps.len()).map(|k| k as f64).collect();
    let ys: Vec<f64> = laps.iter().map(|&l| (l as f64).ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(EntropyEstimate {
        slope: sxy / sxx,
        laps,
    })
}

/// Lap numbers of `f, f^2, ..., f^depth`; stops early at the breakpoint
/// ceiling.
pub fn lap_profile(f: &PlMap, depth: usize, limit: BreakpointLimit) -> Vec<usize> {
    let mut out = Vec::with_capacity(depth);
    let mut g = f.clone();
    for n in 1..=depth {
        out.push(g.lap_number());
        if n == depth {
            break;
        }
        if g.breakpoint_count().saturating_mul(f.breakpoint_count()) > limit.0 {
            break;
        }
        g = f.compose(&g);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    FixSignatureMismatch,
    AccumulationCountMismatch,
    LapProfileMismatch,
    DiagonalPairMismatch,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::FixSignatureMismatch => "FixSignatureMismatch",
            WitnessKind::AccumulationCountMismatch => "AccumulationCountMismatch",
            WitnessKind::LapProfileMismatch => "LapProfileMismatch",
            WitnessKind::DiagonalPairMismatch => "DiagonalPairMismatch",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonConjugacyWitness {
    pub kind: WitnessKind,
    /// The differing values, as text, for the first and second map.
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Copy)]
pub struct DistinguishOptions {
    pub lap_depth: usize,
    pub limit: BreakpointLimit,
}

impl Default for DistinguishOptions {
    fn default() -> Self {
        DistinguishOptions {
            lap_depth: 6,
            limit: BreakpointLimit::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Orientations {
    forward: bool,
    reversed: bool,
}

/// Orientations a conjugacy between maps of these classes could have.
/// A decreasing conjugacy turns an under-diagonal map into an above-diagonal
/// one, and only the identity is both.
fn orientations(a: DiagonalClass, b: DiagonalClass) -> Orientations {
    let strict_under = |c: DiagonalClass| c.is_under() && c != DiagonalClass::Identity;
    let strict_above = |c: DiagonalClass| c.is_above() && c != DiagonalClass::Identity;
    if (strict_under(a) && strict_under(b)) || (strict_above(a) && strict_above(b)) {
        Orientations {
            forward: true,
            reversed: false,
        }
    } else if (strict_under(a) && strict_above(b)) || (strict_above(a) && strict_under(b)) {
        Orientations {
            forward: false,
            reversed: true,
        }
    } else {
        Orientations {
            forward: true,
            reversed: true,
        }
    }
}

fn diagonal_pair(c: DiagonalClass) -> (DiagonalClass, DiagonalClass) {
    let r = c.reflected();
    if c.name() <= r.name() {
        (c, r)
    } else {
        (r, c)
    }
}

pub fn distinguish(a: &FamilyMap, b: &FamilyMap) -> Option<NonConjugacyWitness> {
    distinguish_with(a, b, DistinguishOptions::default())
}

pub fn distinguish_with(a: &FamilyMap, b: &FamilyMap, opts: DistinguishOptions) -> Option<NonConjugacyWitness> {
    let (ca, cb) = (a.map.classify_diagonal(), b.map.classify_diagonal());
    let orient = orientations(ca, cb);

    let (sa, sb) = (fix_signature(&a.map), fix_signature(&b.map));
    let fix_ok = (orient.forward && sa == sb) || (orient.reversed && sa.reversed() == sb);
    if !fix_ok {
        return Some(NonConjugacyWitness {
            kind: WitnessKind::FixSignatureMismatch,
            left: sa.to_string(),
            right: sb.to_string(),
        });
    }

    if let (Ok(da), Ok(db)) = (accumulation_descriptor(a), accumulation_descriptor(b)) {
        if da.count() != db.count() {
            return Some(NonConjugacyWitness {
                kind: WitnessKind::AccumulationCountMismatch,
                left: da.count().to_string(),
                right: db.count().to_string(),
            });
        }
        let (pa, pb) = (da.pattern(), db.pattern());
        let mut pa_rev = pa.clone();
        pa_rev.reverse();
        let order_ok = (orient.forward && pa == pb) || (orient.reversed && pa_rev == pb);
        if !order_ok {
            return Some(NonConjugacyWitness {
                kind: WitnessKind::AccumulationCountMismatch,
                left: pattern_text(&pa),
                right: pattern_text(&pb),
            });
        }
    }

    let (la, lb) = (
        lap_profile(&a.map, opts.lap_depth, opts.limit),
        lap_profile(&b.map, opts.lap_depth, opts.limit),
    );
    let common = la.len().min(lb.len());
    if la[..common] != lb[..common] {
        let fmt = |v: &[usize]| format!("{v:?}");
        return Some(NonConjugacyWitness {
            kind: WitnessKind::LapProfileMismatch,
            left: fmt(&la[..common]),
            right: fmt(&lb[..common]),
        });
    }

    let (pa, pb) = (diagonal_pair(ca), diagonal_pair(cb));
    if pa != pb {
        return Some(NonConjugacyWitness {
            kind: WitnessKind::DiagonalPairMismatch,
            left: format!("{{{}, {}}}", pa.0, pa.1),
            right: format!("{{{}, {}}}", pb.0, pb.1),
        });
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub i: usize,
    pub j: usize,
    pub witness: Option<NonConjugacyWitness>,
}

/// `distinguish` over every unordered pair `i < j`, in lexicographic order.
pub fn census(members: &[FamilyMap], opts: DistinguishOptions, exec: Execution) -> Vec<CensusEntry> {
    let pairs: Vec<(usize, usize)> = (0..members.len())
        .flat_map(|i| (i + 1..members.len()).map(move |j| (i, j)))
        .collect();
    map_collect(exec, pairs.len(), |k| {
        let (i, j) = pairs[k];
        CensusEntry {
            i,
            j,
            witness: distinguish_with(&members[i], &members[j], opts),
        }
    })
}
