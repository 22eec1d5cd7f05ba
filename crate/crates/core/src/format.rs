//! Text formats for maps (`plmap v1`) and family maps (`family v1`).
//!
//! Both formats are line based, LF terminated and use the canonical rational
//! form (`p/q`, or `p` for integers). Parsers accept exactly what the
//! writers produce, so `write(parse(text)) == text` for every accepted text.
//!
//! ```text
//! plmap v1
//! 0 0
//! 1/2 1
//! 1 0
//! ```
//!
//! A family file is a header, a tag line, descriptor lines and the embedded
//! plmap block:
//!
//! ```text
//! family v1
//! tag henderson
//! param notches 1
//! param base-resolution 16
//! witness 49/80
//! notches 1 16
//! target 1 1
//! notch 3/4 9/16 77/100 3/5 4/5 11/20 5/6 25/36
//! plmap v1
//! ...
//! ```

use std::fmt::Write as _;

use crate::constructors::{
    Cluster, ClusterKind, CriticalSchedule, Descriptor, FamilyMap, FamilyTag, Notch, NotchSchedule, SetDescriptor,
    SetKind, SinLevels,
};
use crate::error::{Error, Result};
use crate::pl_map::{Component, PlMap, Point};
use crate::rational::{parse_canonical, Rational};

pub const PLMAP_HEADER: &str = "plmap v1";
pub const FAMILY_HEADER: &str = "family v1";

pub fn write_plmap(f: &PlMap) -> String {
    let mut out = String::with_capacity(16 * f.breakpoint_count());
    out.push_str(PLMAP_HEADER);
    out.push('\n');
    for p in f.points() {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn split_lines(text: &str) -> Result<Vec<&str>> {
    if text.is_empty() {
        return Err(parse_err(1, "empty input"));
    }
    let Some(body) = text.strip_suffix('\n') else {
        return Err(parse_err(text.lines().count(), "missing final newline"));
    };
    let lines: Vec<&str> = body.split('\n').collect();
    if let Some(i) = lines.iter().position(|l| l.ends_with('\r')) {
        return Err(parse_err(i + 1, "carriage return in line ending"));
    }
    Ok(lines)
}

fn rational_at(token: &str, line: usize) -> Result<Rational> {
    parse_canonical(token).ok_or_else(|| parse_err(line, format!("`{token}` is not a canonical rational")))
}

/// Parses the breakpoint lines of a plmap block; `first_line` is the line
/// number of the header.
fn plmap_block(lines: &[&str], first_line: usize) -> Result<PlMap> {
    match lines.first() {
        Some(&PLMAP_HEADER) => {}
        _ => return Err(parse_err(first_line, format!("expected `{PLMAP_HEADER}`"))),
    }
    let mut pts = Vec::with_capacity(lines.len() - 1);
    for (i, line) in lines.iter().enumerate().skip(1) {
        let n = first_line + i;
        let tokens: Vec<&str> = line.split(' ').collect();
        if tokens.len() != 2 {
            return Err(parse_err(n, "expected `x y`"));
        }
        pts.push(Point::new(rational_at(tokens[0], n)?, rational_at(tokens[1], n)?));
    }
    PlMap::new(pts).map_err(|e| parse_err(first_line, e.to_string()))
}

pub fn parse_plmap(text: &str) -> Result<PlMap> {
    let lines = split_lines(text)?;
    plmap_block(&lines, 1)
}

fn push_line(out: &mut String, parts: &[String]) {
    out.push_str(&parts.join(" "));
    out.push('\n');
}

fn s<T: ToString>(v: T) -> String {
    v.to_string()
}

pub fn write_family(fm: &FamilyMap) -> String {
    let mut out = String::new();
    out.push_str(FAMILY_HEADER);
    out.push('\n');
    push_line(&mut out, &[s("tag"), s(fm.tag)]);
    for (k, v) in &fm.params {
        push_line(&mut out, &[s("param"), k.clone(), v.clone()]);
    }
    for w in &fm.witnesses {
        push_line(&mut out, &[s("witness"), s(w)]);
    }
    let d = &fm.descriptor;
    if let Some(n) = &d.notches {
        push_line(&mut out, &[s("notches"), s(n.count), s(n.base_resolution)]);
        push_line(&mut out, &[s("target"), s(&n.target.x), s(&n.target.y)]);
        for notch in &n.notches {
            let mut parts = vec![s("notch"), s(&notch.entry.x), s(&notch.entry.y)];
            match &notch.apex {
                Some(a) => parts.extend([s(&a.x), s(&a.y)]),
                None => parts.extend([s("-"), s("-")]),
            }
            parts.extend([s(&notch.tip.x), s(&notch.tip.y), s(&notch.exit.x), s(&notch.exit.y)]);
            push_line(&mut out, &parts);
        }
    }
    if let Some(set) = &d.fixed_set {
        match set.kind {
            SetKind::FiniteUnion => push_line(&mut out, &[s("set"), s("finite"), s(set.rank_tag)]),
            SetKind::CantorTruncation { depth } => {
                push_line(&mut out, &[s("set"), s("cantor"), s(set.rank_tag), s(depth)])
            }
        }
        push_line(&mut out, &[s("ambient"), s(&set.ambient.0), s(&set.ambient.1)]);
        for c in &set.components {
            match c {
                Component::Point(p) => push_line(&mut out, &[s("component"), s(p)]),
                Component::Interval(a, b) => push_line(&mut out, &[s("component"), s(a), s(b)]),
            }
        }
    }
    if let Some(c) = &d.critical {
        push_line(&mut out, &[s("critical"), s(&c.scale)]);
        for cl in &c.clusters {
            match cl.kind {
                ClusterKind::Simple => push_line(&mut out, &[s("cluster"), s(&cl.position), s("simple")]),
                ClusterKind::Accumulating { oscillations } => push_line(
                    &mut out,
                    &[s("cluster"), s(&cl.position), s("accumulating"), s(oscillations)],
                ),
            }
        }
    }
    if let Some(sl) = &d.sin_levels {
        push_line(&mut out, &[s("sin"), s(sl.levels), s(&sl.image_ratio), s(&sl.limit)]);
        for (a, b) in &sl.intervals {
            push_line(&mut out, &[s("level"), s(a), s(b)]);
        }
    }
    out.push_str(&write_plmap(&fm.map));
    out
}

fn count_at<T: std::str::FromStr + ToString>(token: &str, line: usize) -> Result<T> {
    token
        .parse::<T>()
        .ok()
        .filter(|v| v.to_string() == token)
        .ok_or_else(|| parse_err(line, format!("`{token}` is not a canonical count")))
}

fn expect_len(tokens: &[&str], lens: &[usize], line: usize) -> Result<()> {
    if lens.contains(&tokens.len()) {
        Ok(())
    } else {
        Err(parse_err(line, format!("wrong number of fields for `{}`", tokens[0])))
    }
}

pub fn parse_family(text: &str) -> Result<FamilyMap> {
    let lines = split_lines(text)?;
    if lines[0] != FAMILY_HEADER {
        return Err(parse_err(1, format!("expected `{FAMILY_HEADER}`")));
    }
    let Some(block) = lines.iter().position(|l| *l == PLMAP_HEADER) else {
        return Err(parse_err(lines.len(), "missing plmap block"));
    };
    let map = plmap_block(&lines[block..], block + 1)?;
    let mut tag = None;
    let mut params = Vec::new();
    let mut witnesses = Vec::new();
    let mut d = Descriptor::default();
    for (i, line) in lines[1..block].iter().enumerate() {
        let n = i + 2;
        let t: Vec<&str> = line.split(' ').collect();
        let r = |k: usize| rational_at(t[k], n);
        match t[0] {
            "tag" => {
                expect_len(&t, &[2], n)?;
                tag = Some(FamilyTag::from_name(t[1]).ok_or_else(|| parse_err(n, "unknown family tag"))?);
            }
            "param" => {
                expect_len(&t, &[3], n)?;
                params.push((t[1].to_string(), t[2].to_string()));
            }
            "witness" => {
                expect_len(&t, &[2], n)?;
                witnesses.push(r(1)?);
            }
            "notches" => {
                expect_len(&t, &[3], n)?;
                d.notches = Some(NotchSchedule {
                    count: count_at(t[1], n)?,
                    notches: vec![],
                    target: Point::new(Rational::default(), Rational::default()),
                    base_resolution: count_at(t[2], n)?,
                });
            }
            "target" | "notch" => {
                let sched = d.notches.as_mut().ok_or_else(|| parse_err(n, "notch data before `notches`"))?;
                if t[0] == "target" {
                    expect_len(&t, &[3], n)?;
                    sched.target = Point::new(r(1)?, r(2)?);
                } else {
                    expect_len(&t, &[9], n)?;
                    let apex = match (t[3], t[4]) {
                        ("-", "-") => None,
                        _ => Some(Point::new(r(3)?, r(4)?)),
                    };
                    sched.notches.push(Notch {
                        entry: Point::new(r(1)?, r(2)?),
                        apex,
                        tip: Point::new(r(5)?, r(6)?),
                        exit: Point::new(r(7)?, r(8)?),
                    });
                }
            }
            "set" => {
                expect_len(&t, &[3, 4], n)?;
                let kind = match (t[1], t.len()) {
                    ("finite", 3) => SetKind::FiniteUnion,
                    ("cantor", 4) => SetKind::CantorTruncation {
                        depth: count_at(t[3], n)?,
                    },
                    _ => return Err(parse_err(n, "unknown set kind")),
                };
                d.fixed_set = Some(SetDescriptor {
                    kind,
                    ambient: (Rational::default(), Rational::default()),
                    components: vec![],
                    rank_tag: count_at(t[2], n)?,
                });
            }
            "ambient" | "component" => {
                let set = d.fixed_set.as_mut().ok_or_else(|| parse_err(n, "set data before `set`"))?;
                if t[0] == "ambient" {
                    expect_len(&t, &[3], n)?;
                    set.ambient = (r(1)?, r(2)?);
                } else {
                    expect_len(&t, &[2, 3], n)?;
                    set.components.push(if t.len() == 2 {
                        Component::Point(r(1)?)
                    } else {
                        Component::Interval(r(1)?, r(2)?)
                    });
                }
            }
            "critical" => {
                expect_len(&t, &[2], n)?;
                d.critical = Some(CriticalSchedule {
                    clusters: vec![],
                    scale: r(1)?,
                });
            }
            "cluster" => {
                let crit = d.critical.as_mut().ok_or_else(|| parse_err(n, "cluster before `critical`"))?;
                expect_len(&t, &[3, 4], n)?;
                let kind = match (t[2], t.len()) {
                    ("simple", 3) => ClusterKind::Simple,
                    ("accumulating", 4) => ClusterKind::Accumulating {
                        oscillations: count_at(t[3], n)?,
                    },
                    _ => return Err(parse_err(n, "unknown cluster kind")),
                };
                crit.clusters.push(Cluster { position: r(1)?, kind });
            }
            "sin" => {
                expect_len(&t, &[4], n)?;
                d.sin_levels = Some(SinLevels {
                    levels: count_at(t[1], n)?,
                    intervals: vec![],
                    image_ratio: r(2)?,
                    limit: r(3)?,
                });
            }
            "level" => {
                let sl = d.sin_levels.as_mut().ok_or_else(|| parse_err(n, "level before `sin`"))?;
                expect_len(&t, &[3], n)?;
                sl.intervals.push((r(1)?, r(2)?));
            }
            other => return Err(parse_err(n, format!("unknown key `{other}`"))),
        }
    }
    let fm = FamilyMap {
        tag: tag.ok_or_else(|| parse_err(2, "missing `tag` line"))?,
        map,
        params,
        descriptor: d,
        witnesses,
    };
    // Key order is fixed; anything the writer would lay out differently is
    // rejected so the round trip stays byte-identical.
    let canonical = write_family(&fm);
    if canonical != text {
        let line = canonical
            .split('\n')
            .zip(text.split('\n'))
            .position(|(a, b)| a != b)
            .map_or(lines.len(), |i| i + 1);
        return Err(parse_err(line, "lines are out of canonical order"));
    }
    Ok(fm)
}

/// Reads either format; a bare map becomes a `plain` family map.
pub fn parse_any(text: &str) -> Result<FamilyMap> {
    if text.starts_with(FAMILY_HEADER) {
        parse_family(text)
    } else {
        parse_plmap(text).map(FamilyMap::plain)
    }
}
