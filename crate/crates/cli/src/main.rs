//! `crookedlab` command-line front end.
//!
//! Exit codes: `check` and `report` return 0 when the property is certified
//! or holds, 1 when it is refuted and 2 when the result is inconclusive
//! (`report distinguish`: 0 witness found, 2 none). Invalid input files and
//! failed computations exit with 3, command-line usage errors with 64.

mod plot;
mod report;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crookedlab::constructors::{
    arc_example_map, cantor_descriptor, census_schedules, double_sin_map, henderson, nowhere_dense_fixed,
    zero_attracted_variant, Cluster, FamilyMap, HendersonConfig, SetDescriptor,
};
use crookedlab::crookedness::{check_grid, check_pair, horizon_with, tower_crookedness_with, LevelOutcome};
use crookedlab::format::{parse_any, write_family, write_plmap};
use crookedlab::invariants::{
    accumulation_descriptor, distinguish_with, entropy_estimate, fix_signature, lap_profile,
    monotonicity_decomposition, strict_critical_points, DistinguishOptions, MarkKind,
};
use crookedlab::inverse_limit::{
    characterization_report_with, component_tower, default_eta_grid, lemma_conditions_with,
    CharacterizationOptions, FixDensity, Overall,
};
use crookedlab::pl_map::{BreakpointLimit, Component};
use crookedlab::rational::{decimal, parse_lenient, rat};
use crookedlab::{Execution, PlMap, Rational};

use report::{sha256_hex, Report};

#[derive(Parser)]
#[command(name = "crookedlab", version, about = "Exact crookedness analysis of piecewise-linear interval maps")]
struct Cli {
    /// Spacing of value grids (`p/q`).
    #[arg(long, global = true, value_parser = rational_arg)]
    mesh: Option<Rational>,
    /// Crookedness scale δ (`p/q`).
    #[arg(long, global = true, value_parser = rational_arg)]
    delta: Option<Rational>,
    /// Tower depth, or lap-profile depth for `report distinguish`.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Iterate bound for horizons and entropy estimates.
    #[arg(long = "n-max", global = true)]
    n_max: Option<usize>,
    /// Leave the timing section out of reports.
    #[arg(long = "no-timing", global = true)]
    no_timing: bool,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family map and write it as a `family v1` file.
    Construct(ConstructArgs),
    /// Crookedness checks on a map file.
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// Characterization, lemma conditions, invariants and non-conjugacy.
    Report {
        #[command(subcommand)]
        kind: ReportKind,
    },
    /// SVG graphs and the crookedness heatmap CSV.
    Plot {
        #[command(subcommand)]
        kind: PlotKind,
    },
    /// Rewrite a map or family file in canonical form.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Henderson,
    NwdFixed,
    Variant,
    DoubleSin,
    ArcExample,
}

#[derive(Args)]
struct ConstructArgs {
    family: FamilyArg,
    /// Number of notches of the Henderson-type part.
    #[arg(long, default_value_t = 6)]
    notches: usize,
    /// Resolution of the underlying `x^2` interpolation.
    #[arg(long = "base-resolution", default_value_t = 16)]
    base_resolution: u32,
    /// Fixed set for `nwd-fixed`: comma-separated points `p/q` and intervals `p/q:r/s`.
    #[arg(long)]
    set: Option<String>,
    /// Use a middle-thirds truncation of this depth as the fixed set.
    #[arg(long = "cantor-depth")]
    cantor_depth: Option<usize>,
    /// Ambient interval `lo:hi` of the Cantor truncation.
    #[arg(long, default_value = "1/16:3/16")]
    ambient: String,
    /// Clusters for `variant`: comma-separated `S@p/q` or `A<m>@p/q`.
    #[arg(long)]
    clusters: Option<String>,
    /// Use the census schedule with this index (0-9) for `variant`.
    #[arg(long = "census-pattern")]
    census_pattern: Option<usize>,
    /// Number of designated levels for `double-sin` and `arc-example`.
    #[arg(long, default_value_t = 4)]
    levels: usize,
    /// Conjugate the result by `x -> 1 - x`.
    #[arg(long)]
    reflect: bool,
}

#[derive(Subcommand)]
enum CheckKind {
    /// δ-crookedness between two values.
    Pair {
        map: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        b: Rational,
    },
    /// δ-crookedness on the value grid.
    Grid { map: PathBuf },
    /// Least iterate that is grid-certified δ-crooked.
    Horizon { map: PathBuf },
    /// Crookedness of every level of the component tower.
    Tower {
        map: PathBuf,
        #[arg(long, value_parser = rational_arg)]
        eta: Option<Rational>,
    },
}

#[derive(Subcommand)]
enum ReportKind {
    /// Finite-scale check of the pseudo-arc characterization conditions.
    Characterize {
        map: PathBuf,
        /// η candidates, comma-separated (default: witnesses, then k/64).
        #[arg(long)]
        etas: Option<String>,
        /// δ schedule, comma-separated (default: --delta, else 1/2,1/4).
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Conditions (a), (b), (c) of the approximation lemma.
    Lemma46 {
        map: PathBuf,
        /// η sequence, comma-separated (default: 1/2, 1/4, ..., 1/1024).
        #[arg(long)]
        etas: Option<String>,
        #[arg(long = "m-max", default_value_t = 3)]
        m_max: usize,
    },
    /// Conjugacy invariants of one map.
    Invariants { map: PathBuf },
    /// Look for a non-conjugacy witness between two maps.
    Distinguish { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand)]
enum PlotKind {
    Graph {
        map: PathBuf,
    },
    IterateN {
        map: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// CSV of the least δ per value pair (grid step: --mesh, default 1/16).
    CrookednessHeatmap {
        map: PathBuf,
    },
    Tower {
        map: PathBuf,
        #[arg(long, value_parser = rational_arg)]
        eta: Option<Rational>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Plmap,
    Family,
}

#[derive(Args)]
struct ConvertArgs {
    input: PathBuf,
    /// Output format (default: the input's own format).
    #[arg(long)]
    to: Option<FormatArg>,
    /// Export the rescaled composition `I_depth -> I_1` of the tower at this η.
    #[arg(long = "tower-eta", value_parser = rational_arg)]
    tower_eta: Option<Rational>,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_lenient(s).ok_or_else(|| format!("`{s}` is not a rational of the form p/q or an integer"))
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<crookedlab::Error> for Failure {
    fn from(e: crookedlab::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

const EXIT_RUNTIME: u8 = 3;
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let command: Vec<String> = std::env::args().skip(1).collect();
    let ctx = Context {
        command: command.join(" "),
        started: Instant::now(),
        limit: BreakpointLimit::from_env(),
        cli: &cli,
    };
    match ctx.run() {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}

struct Loaded {
    family: FamilyMap,
    digest: String,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::Runtime(format!("{}: not UTF-8 text", path.display())))?;
    let family = parse_any(&text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    Ok(Loaded {
        family,
        digest: sha256_hex(&bytes),
    })
}

fn rational_list(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|t| rational_arg(t.trim()).map_err(Failure::Usage))
        .collect()
}

fn parse_set(s: &str) -> Result<SetDescriptor, Failure> {
    let mut comps = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let comp = match part.split_once(':') {
            Some((a, b)) => Component::Interval(
                rational_arg(a).map_err(Failure::Usage)?,
                rational_arg(b).map_err(Failure::Usage)?,
            ),
            None => Component::Point(rational_arg(part).map_err(Failure::Usage)?),
        };
        comps.push(comp);
    }
    SetDescriptor::finite_union(comps).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_clusters(s: &str) -> Result<Vec<Cluster>, Failure> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|part| {
            let (kind, pos) = part
                .trim()
                .split_once('@')
                .ok_or_else(|| Failure::Usage(format!("cluster `{part}` must look like S@p/q or A3@p/q")))?;
            let pos = rational_arg(pos).map_err(Failure::Usage)?;
            match kind {
                "S" => Ok(Cluster::simple(pos)),
                _ => {
                    let m = kind
                        .strip_prefix('A')
                        .and_then(|m| m.parse::<usize>().ok())
                        .ok_or_else(|| Failure::Usage(format!("unknown cluster kind `{kind}`")))?;
                    Ok(Cluster::accumulating(pos, m))
                }
            }
        })
        .collect()
}

fn status_code(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

struct Context<'a> {
    command: String,
    started: Instant,
    limit: BreakpointLimit,
    cli: &'a Cli,
}

impl Context<'_> {
    fn delta(&self) -> Rational {
        self.cli.delta.clone().unwrap_or_else(|| rat(1, 2))
    }

    /// Grid mesh, never coarser than `delta`.
    fn mesh_for(&self, delta: &Rational) -> Rational {
        self.cli.mesh.clone().unwrap_or_else(|| rat(1, 64)).min(delta.clone())
    }

    fn depth(&self) -> usize {
        self.cli.depth.unwrap_or(6)
    }

    fn report(&self) -> Report {
        Report::new(self.command.clone())
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.cli.out {
            Some(path) => fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .map_err(|e| Failure::Runtime(e.to_string()))
            }
        }
    }

    fn finish(&self, mut r: Report, code: u8) -> Outcome {
        if !self.cli.no_timing {
            r.set_timing(self.started.elapsed());
        }
        self.emit(&r.render())?;
        Ok(code)
    }

    fn inputs(r: &mut Report, loaded: &[(&str, &Loaded)]) {
        let mut s = r.section("inputs");
        for (name, l) in loaded {
            s.text(&format!("{name}.sha256"), &l.digest)
                .text(&format!("{name}.family"), l.family.tag)
                .text(&format!("{name}.breakpoints"), l.family.map.breakpoint_count());
        }
    }

    fn run(&self) -> Outcome {
        match &self.cli.command {
            Command::Construct(args) => self.construct(args),
            Command::Check { kind } => self.check(kind),
            Command::Report { kind } => self.report_cmd(kind),
            Command::Plot { kind } => self.plot(kind),
            Command::Convert(args) => self.convert(args),
        }
    }

    fn construct(&self, args: &ConstructArgs) -> Outcome {
        let cfg = HendersonConfig {
            notches: args.notches,
            base_resolution: args.base_resolution,
        };
        let usage = |e: crookedlab::Error| Failure::Usage(e.to_string());
        let fm = match args.family {
            FamilyArg::Henderson => henderson(args.notches, args.base_resolution).map_err(usage)?,
            FamilyArg::NwdFixed => {
                let set = match (args.cantor_depth, &args.set) {
                    (Some(_), Some(_)) => {
                        return Err(Failure::Usage("--set and --cantor-depth are exclusive".into()));
                    }
                    (Some(depth), None) => {
                        let (lo, hi) = args
                            .ambient
                            .split_once(':')
                            .ok_or_else(|| Failure::Usage("--ambient must look like lo:hi".into()))?;
                        let lo = rational_arg(lo).map_err(Failure::Usage)?;
                        let hi = rational_arg(hi).map_err(Failure::Usage)?;
                        cantor_descriptor(depth, (lo, hi)).map_err(usage)?
                    }
                    (None, set) => parse_set(set.as_deref().unwrap_or("1/8"))?,
                };
                nowhere_dense_fixed(&set, cfg).map_err(usage)?
            }
            FamilyArg::Variant => {
                let clusters = match (args.census_pattern, &args.clusters) {
                    (Some(_), Some(_)) => {
                        return Err(Failure::Usage("--clusters and --census-pattern are exclusive".into()));
                    }
                    (Some(i), None) => census_schedules()
                        .get(i)
                        .cloned()
                        .ok_or_else(|| Failure::Usage(format!("census pattern {i} is out of range 0-9")))?,
                    (None, c) => parse_clusters(c.as_deref().unwrap_or(""))?,
                };
                zero_attracted_variant(&clusters, cfg).map_err(usage)?
            }
            FamilyArg::DoubleSin => double_sin_map(args.levels).map_err(usage)?,
            FamilyArg::ArcExample => arc_example_map(args.levels).map_err(usage)?,
        };
        let fm = if args.reflect { fm.reflect() } else { fm };
        let text = write_family(&fm);
        let fix: Vec<String> = fm.map.fixed_points().iter().map(ToString::to_string).collect();
        let summary = format!(
            "family {}\nbreakpoints {}\nlaps {}\nclass {}\nfix {} components: {}\n",
            fm.tag,
            fm.map.breakpoint_count(),
            fm.map.lap_number(),
            fm.map.classify_diagonal(),
            fix.len(),
            fix.join(" ")
        );
        match &self.cli.out {
            Some(_) => {
                self.emit(&text)?;
                print!("{summary}");
            }
            None => {
                self.emit(&text)?;
                eprint!("{summary}");
            }
        }
        Ok(0)
    }

    fn check(&self, kind: &CheckKind) -> Outcome {
        let mut r = self.report();
        let delta = self.delta();
        match kind {
            CheckKind::Pair { map, a, b } => {
                let l = load(map)?;
                Self::inputs(&mut r, &[("map", &l)]);
                let v = check_pair(&l.family.map, a, b, &delta)?;
                r.section("parameters").rational("a", a).rational("b", b).rational("delta", &delta);
                let mut s = r.section("verdict");
                s.text("status", if v.holds() { "holds" } else { "fails" })
                    .text("vacuous", v.vacuous);
                if let Some((c, d)) = &v.witness {
                    s.rational("witness.c", c).rational("witness.d", d);
                }
                if let Some((c, d)) = &v.trace {
                    s.rational("trace.c_prime", c).rational("trace.d_prime", d);
                }
                self.finish(r, status_code(v.holds()))
            }
            CheckKind::Grid { map } => {
                let l = load(map)?;
                Self::inputs(&mut r, &[("map", &l)]);
                let mesh = self.mesh_for(&delta);
                let v = check_grid(&l.family.map, &delta, &mesh)?;
                r.section("parameters").rational("delta", &delta).rational("mesh", &mesh);
                let mut s = r.section("verdict");
                s.text("status", if v.certified() { "grid-certified" } else { "refuted" })
                    .text("trivial", v.trivial)
                    .text("grid_size", v.grid_size)
                    .text("pairs_checked", v.pairs_checked);
                if let Some(w) = &v.witness {
                    s.rational("witness.a", &w.a)
                        .rational("witness.b", &w.b)
                        .rational("witness.c", &w.c)
                        .rational("witness.d", &w.d);
                }
                self.finish(r, status_code(v.certified()))
            }
            CheckKind::Horizon { map } => {
                let l = load(map)?;
                Self::inputs(&mut r, &[("map", &l)]);
                let mesh = self.mesh_for(&delta);
                let n_max = self.cli.n_max.unwrap_or(8);
                let h = horizon_with(&l.family.map, &delta, n_max, &mesh, self.limit, Execution::default())?;
                r.section("parameters")
                    .rational("delta", &delta)
                    .rational("mesh", &mesh)
                    .text("n_max", n_max);
                let mut s = r.section("iterates");
                for (i, v) in h.per_n.iter().enumerate() {
                    let line = match &v.witness {
                        Some(w) => format!("refuted a={} b={} c={} d={}", w.a, w.b, w.c, w.d),
                        None if v.trivial => "grid-certified (trivial)".to_string(),
                        None => "grid-certified".to_string(),
                    };
                    s.text(&format!("n.{}", i + 1), line);
                }
                let mut s = r.section("verdict");
                match h.n_found {
                    Some(n) => s.text("status", "found").text("n", n),
                    None => s.text("status", "refuted-up-to-n-max"),
                };
                self.finish(r, status_code(h.n_found.is_some()))
            }
            CheckKind::Tower { map, eta } => {
                let l = load(map)?;
                Self::inputs(&mut r, &[("map", &l)]);
                let eta = eta
                    .clone()
                    .or_else(|| l.family.witnesses.first().cloned())
                    .unwrap_or_else(|| rat(1, 2));
                let depth = self.depth();
                let mesh = self.mesh_for(&delta);
                let tower = component_tower(&l.family.map, &eta, depth)?;
                let levels = tower_crookedness_with(&tower, &delta, &mesh, self.limit, Execution::default())?;
                r.section("parameters")
                    .rational("eta", &eta)
                    .text("depth", depth)
                    .rational("delta", &delta)
                    .rational("mesh", &mesh);
                let mut s = r.section("tower");
                for (k, (u, v)) in tower.levels().iter().enumerate() {
                    s.interval(&format!("level.{}", k + 1), u, v);
                }
                let all = levels.iter().all(|l| l.certified());
                let mut s = r.section("verdict");
                for lv in &levels {
                    let text = match lv.outcome {
                        LevelOutcome::Certified { k_prime } => format!("certified k'={k_prime}"),
                        LevelOutcome::Exhausted => "exhausted".to_string(),
                        LevelOutcome::Vacuous => "vacuous".to_string(),
                    };
                    let text = if lv.trivial { format!("{text} (trivial)") } else { text };
                    s.text(&format!("level.{}", lv.level), text);
                }
                s.text("status", if all { "certified" } else { "exhausted" });
                self.finish(r, if all { 0 } else { 2 })
            }
        }
    }

    fn report_cmd(&self, kind: &ReportKind) -> Outcome {
        let mut r = self.report();
        match kind {
            ReportKind::Characterize { map, etas, schedule } => {
                let l = load(map)?;
                Self::inputs(&mut r, &[("map", &l)]);
                let grid = match etas {
                    Some(s) => rational_list(s)?,
                    None => default_eta_grid(&l.family.witnesses),
                };
                let deltas = match (schedule, &self.cli.delta) {
                    (Some(s), _) => rational_list(s)?,
                    (None, Some(d)) => vec![d.clone()],
                    (None, None) => vec![rat(1, 2), rat(1, 4)],
                };
                let mesh = self.cli.mesh.clone().unwrap_or_else(|| rat(1, 64));
                let opts = CharacterizationOptions::new(grid, self.depth(), deltas.clone(), mesh.clone());
                let rep = characterization_report_with(&l.family.map, &opts, self.limit, Execution::default())?;
                let sched: Vec<String> = deltas.iter().map(ToString::to_string).collect();
                r.section("parameters")
                    .text("depth", opts.depth)
                    .rational("mesh", &mesh)
                    .text("schedule", sched.join(","))
                    .text("eta_candidates", opts.eta_grid.len());
                let mut s = r.section("classification");
                s.text("class", rep.class);
                match &rep.fix {
                    Some(FixDensity::NowhereDense) => s.text("fix", "nowhere-dense"),
                    Some(FixDensity::Interval(a, b)) => s.interval("fix.interval", a, b),
                    None => s.text("fix", "not-checked"),
                };
                let mut s = r.section("eta-search");
                for (i, e) in rep.eta_search.iter().enumerate() {
                    let key = format!("eta.{}", i + 1);
                    s.rational(&key, &e.eta);
                    let att = match &e.attraction.limit {
                        Some(c) => format!("{:?} {} steps {}", e.attraction.status, c, e.attraction.steps),
                        None => format!("{:?} steps {}", e.attraction.status, e.attraction.steps),
                    };
                    s.text(&format!("{key}.attraction"), att);
                    for d in &e.deltas {
                        let lv: Vec<String> = d
                            .levels
                            .iter()
                            .map(|l| match l.outcome {
                                LevelOutcome::Certified { k_prime } if l.trivial => format!("{k_prime}t"),
                                LevelOutcome::Certified { k_prime } => k_prime.to_string(),
                                LevelOutcome::Exhausted => "x".to_string(),
                                LevelOutcome::Vacuous => "v".to_string(),
                            })
                            .collect();
                        s.text(&format!("{key}.delta.{}", d.delta), lv.join(" "));
                    }
                    if e.tower.is_some() {
                        s.text(&format!("{key}.uninformative"), e.uninformative)
                            .text(&format!("{key}.pass"), e.pass);
                    }
                }
                let mut s = r.section("verdict");
                let code = match &rep.overall {
                    Overall::ConditionsMet { eta, .. } => {
                        s.text("overall", "conditions-met").rational("eta", eta);
                        0
                    }
                    Overall::RefutedClass(c) => {
                        s.text("overall", "refuted-class").text("class", c);
                        1
                    }
                    Overall::RefutedFixedInterval(a, b) => {
                        s.text("overall", "refuted-fixed-interval").interval("interval", a, b);
                        1
                    }
                    Overall::Inconclusive => {
                        s.text("overall", "inconclusive");
                        2
                    }
                };
                self.finish(r, code)
            }
            ReportKind::Lemma46 { map, etas, m_max } => {
                let l = load(map)?;
                Self::inputs(&mut r, &[("map", &l)]);
                let delta = self.delta();
                let mesh = self.cli.mesh.clone().unwrap_or_else(|| rat(1, 64));
                let etas = match etas {
                    Some(s) => rational_list(s)?,
                    None => (1..=10).map(|k| rat(1, 1 << k)).collect(),
                };
                let rep = lemma_conditions_with(
                    &l.family.map,
                    &delta,
                    &etas,
                    *m_max,
                    &mesh,
                    self.limit,
                    Execution::default(),
                )?;
                r.section("parameters")
                    .rational("delta", &delta)
                    .rational("mesh", &mesh)
                    .text("m_max", m_max)
                    .text("eta_sequence_length", etas.len());
                let c = &rep.chosen;
                let mut s = r.section("chosen");
                s.text("n", c.n).rational("eta", &c.eta);
                if let Some(m) = c.m {
                    s.text("m", m);
                }
                r.section("condition-a")
                    .rational("eta", &c.eta)
                    .rational("bound", &c.a_bound)
                    .text("pass", c.a_pass);
                let mut s = r.section("condition-b");
                if let Some(b) = &c.condition_b {
                    let (lo, hi) = b.distance.enclosure(6);
                    s.rational("bound", &b.bound)
                        .text("distance.lower_sq", &b.distance.lower_sq)
                        .text("distance.upper_sq", &b.distance.upper_sq)
                        .text("distance.enclosure", format!("[{lo}, {hi}]"))
                        .text(
                            "pass",
                            match b.pass {
                                Some(p) => p.to_string(),
                                None => "undecided".to_string(),
                            },
                        );
                } else {
                    s.text("pass", "not-evaluated");
                }
                let mut s = r.section("condition-c");
                if let Some(v) = &c.condition_c {
                    s.rational("delta", &v.delta)
                        .rational("mesh", &v.mesh)
                        .text("status", if v.certified() { "grid-certified" } else { "refuted" });
                    if let Some(w) = &v.witness {
                        s.rational("witness.a", &w.a)
                            .rational("witness.b", &w.b)
                            .rational("witness.c", &w.c)
                            .rational("witness.d", &w.d);
                    }
                    s.text("pass", v.certified());
                } else {
                    s.text("pass", "not-evaluated");
                }
                r.section("verdict").text("all_pass", rep.all_pass);
                self.finish(r, if rep.all_pass { 0 } else { 2 })
            }
            ReportKind::Invariants { map } => {
                let l = load(map)?;
                Self::inputs(&mut r, &[("map", &l)]);
                let f = &l.family.map;
                let n_max = self.cli.n_max.unwrap_or(10).max(2);
                let dec = monotonicity_decomposition(f);
                let crit = strict_critical_points(f);
                let fix: Vec<String> = f.fixed_points().iter().map(ToString::to_string).collect();
                let mut s = r.section("invariants");
                s.text("class", f.classify_diagonal())
                    .text("fix.signature", fix_signature(f))
                    .text("fix.components", fix.join(" "))
                    .text("laps", f.lap_number())
                    .text("increasing", dec.increasing.len())
                    .text("decreasing", dec.decreasing.len())
                    .text("plateaus", dec.plateaus.len())
                    .text("strict_critical.count", crit.len());
                match accumulation_descriptor(&l.family) {
                    Ok(a) => {
                        let pos: Vec<String> = a.positions().iter().map(ToString::to_string).collect();
                        let pat: Vec<&str> = a
                            .pattern()
                            .iter()
                            .map(|k| if *k == MarkKind::Simple { "S" } else { "A" })
                            .collect();
                        s.text("accumulation.count", a.count())
                            .text("accumulation.positions", pos.join(","))
                            .text("accumulation.pattern", pat.join(","));
                    }
                    Err(e) => {
                        s.text("accumulation", e);
                    }
                }
                let mut s = r.section("entropy");
                match entropy_estimate(f, n_max, self.limit) {
                    Ok(e) => {
                        let laps: Vec<String> = e.laps.iter().map(ToString::to_string).collect();
                        s.text("n_max", n_max)
                            .text("slope", format!("{:.6}", e.slope))
                            .text("laps", laps.join(","));
                    }
                    Err(e) => {
                        s.text("status", e);
                    }
                }
                self.finish(r, 0)
            }
            ReportKind::Distinguish { first, second } => {
                let a = load(first)?;
                let b = load(second)?;
                Self::inputs(&mut r, &[("first", &a), ("second", &b)]);
                let opts = DistinguishOptions {
                    lap_depth: self.depth(),
                    limit: self.limit,
                };
                r.section("parameters").text("lap_depth", opts.lap_depth);
                let la: Vec<String> = lap_profile(&a.family.map, opts.lap_depth, opts.limit)
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                let w = distinguish_with(&a.family, &b.family, opts);
                let mut s = r.section("verdict");
                let code = match &w {
                    Some(w) => {
                        s.text("status", "witness")
                            .text("kind", w.kind)
                            .text("first", &w.left)
                            .text("second", &w.right);
                        0
                    }
                    None => {
                        s.text("status", "indistinguishable").text("lap_profile", la.join(","));
                        2
                    }
                };
                self.finish(r, code)
            }
        }
    }

    fn plot(&self, kind: &PlotKind) -> Outcome {
        let text = match kind {
            PlotKind::Graph { map } => {
                let l = load(map)?;
                plot::graph_svg(&l.family.map, &format!("{} graph", l.family.tag))
            }
            PlotKind::IterateN { map, n } => {
                if *n == 0 {
                    return Err(Failure::Usage("--n must be at least 1".into()));
                }
                let l = load(map)?;
                let g = l.family.map.iterate(*n, self.limit)?;
                plot::graph_svg(&g, &format!("{} iterate {n}", l.family.tag))
            }
            PlotKind::CrookednessHeatmap { map } => {
                let l = load(map)?;
                let step = self.cli.mesh.clone().unwrap_or_else(|| rat(1, 16));
                if step <= rat(0, 1) || step > rat(1, 1) {
                    return Err(Failure::Usage("--mesh must lie in (0, 1]".into()));
                }
                plot::heatmap_csv(&l.family.map, &step, &rat(1, 1024))?
            }
            PlotKind::Tower { map, eta } => {
                let l = load(map)?;
                let eta = eta
                    .clone()
                    .or_else(|| l.family.witnesses.first().cloned())
                    .unwrap_or_else(|| rat(1, 2));
                let tower = component_tower(&l.family.map, &eta, self.depth())?;
                plot::tower_svg(
                    &l.family.map,
                    tower.levels(),
                    &format!("{} tower at eta = {} ({})", l.family.tag, eta, decimal(&eta, 4)),
                )
            }
        };
        self.emit(&text)?;
        Ok(0)
    }

    fn convert(&self, args: &ConvertArgs) -> Outcome {
        let l = load(&args.input)?;
        let input_is_family = l.family.tag != crookedlab::constructors::FamilyTag::Plain
            || fs::read_to_string(&args.input)
                .map(|t| t.starts_with(crookedlab::format::FAMILY_HEADER))
                .unwrap_or(false);
        let (fm, target) = match &args.tower_eta {
            Some(eta) => {
                let tower = component_tower(&l.family.map, eta, self.depth())?;
                let comp: PlMap = tower
                    .composition(tower.depth(), 1)
                    .ok_or_else(|| Failure::Runtime("empty tower".into()))?;
                (FamilyMap::plain(comp), args.to.unwrap_or(FormatArg::Plmap))
            }
            None => {
                let default = if input_is_family { FormatArg::Family } else { FormatArg::Plmap };
                (l.family, args.to.unwrap_or(default))
            }
        };
        let text = match target {
            FormatArg::Plmap => write_plmap(&fm.map),
            FormatArg::Family => write_family(&fm),
        };
        self.emit(&text)?;
        Ok(0)
    }
}
