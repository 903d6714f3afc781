//! Task execution and report assembly.

use std::time::Instant;

use cca_core::engine::{
    corollary_4_10_harness, is_cca_graph, is_cca_group, is_complete_colour_pair, regular_realization, replay,
    Verdict, VerdictKind, DEFAULT_SUBSET_CAP,
};
use cca_core::graph::{cayley_graph, complete_colour_graph, CayleyGraph};
use cca_core::group::{are_isomorphic, DEFAULT_ORDER_CAP};
use cca_core::lab::{arc_labeling, cayley_form, knn_actors, proposition_3_3_witness, theorem_3_1_witness};
use cca_core::FiniteGroup;

use crate::elaborate::{elaborate, parse_connection, Env};
use crate::error::{CliError, Pos, Result};
use crate::program::{SpecProgram, Task};
use crate::report::{CensusEntry, GroupSummary, Report, Stats, VerdictReport, VERSION};
use crate::syntax::{parse_expr, Expr, ExprKind};

pub const ORDER_CAP_VAR: &str = "CCA_MAX_ORDER";

#[derive(Clone, Copy, Debug)]
pub struct Config {
    /// Largest group order elaborated.
    pub order_cap: usize,
    /// Whether the order cap came from the environment; only then does it
    /// also bound the fixed `K_{n,n}` constructions.
    pub order_cap_overridden: bool,
    pub seedless: bool,
    pub verify: bool,
    pub strict: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { order_cap: DEFAULT_ORDER_CAP, order_cap_overridden: false, seedless: false, verify: false, strict: false }
    }
}

impl Config {
    /// Read `CCA_MAX_ORDER`, if set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Config::default();
        if let Ok(v) = std::env::var(ORDER_CAP_VAR) {
            cfg.order_cap = v
                .trim()
                .parse()
                .ok()
                .filter(|&c| c > 0)
                .ok_or_else(|| CliError::Usage(format!("{ORDER_CAP_VAR} must be a positive integer, got `{v}`")))?;
            cfg.order_cap_overridden = true;
        }
        Ok(cfg)
    }
}

/// A finished task: its report and the graph to draw, if any.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub graph: Option<CayleyGraph>,
}

impl Outcome {
    /// Exit code for a completed analysis.
    pub fn exit_code(&self, cfg: &Config) -> i32 {
        if cfg.strict && self.report.verdict.kind == VerdictKind::UnknownCap {
            2
        } else {
            0
        }
    }
}

/// Engine errors, with resource caps singled out.
fn engine(e: cca_core::Error) -> CliError {
    match e {
        cca_core::Error::OrderExceedsCap { .. } | cca_core::Error::AutomorphismCap { .. } => CliError::Cap(e.to_string()),
        e => e.into(),
    }
}

fn unknown_cap(reason: &str) -> Verdict {
    let mut v = Verdict::new(VerdictKind::UnknownCap);
    v.check("resource cap", false, reason);
    v
}

fn millis(v: &Verdict, cfg: &Config) -> u64 {
    if cfg.seedless {
        0
    } else {
        v.stats.elapsed.as_millis() as u64
    }
}

/// Replay every witness; `--verify` also records the replay as a check.
fn certify(v: &mut Verdict, cfg: &Config) -> Result<()> {
    if let Some(w) = &v.witness {
        let ok = replay(w).map_err(|e| CliError::Inconsistency(format!("witness does not replay: {e}")))?;
        if !ok {
            return Err(CliError::Inconsistency("witness does not replay".into()));
        }
        if cfg.verify {
            v.check("witness replay", true, "colour-preserving and non-affine on the rebuilt graph");
        }
    }
    Ok(())
}

fn report(task: &Task, mut v: Verdict, group: Option<GroupSummary>, cfg: &Config) -> Result<Report> {
    certify(&mut v, cfg)?;
    Ok(Report {
        version: VERSION.to_string(),
        task: task.to_string(),
        verdict: VerdictReport::new(&v, group),
        stats: Stats { nodes: v.stats.nodes, millis: millis(&v, cfg) },
        entries: Vec::new(),
    })
}

fn witness_graph(v: &Verdict) -> Option<CayleyGraph> {
    v.witness.as_ref().and_then(|w| cayley_graph(&w.group, &w.connection).ok())
}

fn lab_n(n: usize, cfg: &Config) -> Result<Option<Verdict>> {
    if n < 3 || n % 2 == 0 {
        return Err(CliError::Usage(format!("--n must be odd and at least 3, got {n}")));
    }
    if cfg.order_cap_overridden && 8 * n * n > cfg.order_cap {
        return Ok(Some(unknown_cap(&format!("|H| = {} exceeds order cap {}", 8 * n * n, cfg.order_cap))));
    }
    Ok(None)
}

/// Run one task against the declarations in `env`.
pub fn run_task(task: &Task, env: &Env, cfg: &Config) -> Result<Outcome> {
    match run_inner(task, env, cfg) {
        Err(CliError::Cap(reason)) => {
            Ok(Outcome { report: report(task, unknown_cap(&reason), None, cfg)?, graph: None })
        }
        other => other,
    }
}

fn run_inner(task: &Task, env: &Env, cfg: &Config) -> Result<Outcome> {
    let group = |e: &Expr| elaborate(e, env, cfg.order_cap);
    let summary = |g: &FiniteGroup, e: &Expr| Some(GroupSummary::of(g, Some(e.to_string())));
    match task {
        Task::CheckGraph { group: e, connection } => {
            let g = group(e)?;
            let c = parse_connection(&g, connection, Pos { line: 1, column: 1 })?;
            let cg = cayley_graph(&g, &c).map_err(|err| match err {
                cca_core::Error::ConnectionNotInverseClosed(x) => {
                    CliError::Usage(format!("connection set is not inverse-closed: add the inverse of {x} or write `{x}+inv`"))
                }
                err => engine(err),
            })?;
            let start = Instant::now();
            let mut v = is_cca_graph(&cg).map_err(engine)?;
            v.stats.elapsed = start.elapsed();
            Ok(Outcome { report: report(task, v, summary(&g, e), cfg)?, graph: Some(cg) })
        }
        Task::CheckGroup { group: e, cap } => {
            let g = group(e)?;
            let v = is_cca_group(&g, cap.unwrap_or(DEFAULT_SUBSET_CAP), !cfg.seedless).map_err(engine)?;
            let graph = witness_graph(&v);
            Ok(Outcome { report: report(task, v, summary(&g, e), cfg)?, graph })
        }
        Task::Pair { g: ge, b: be } => {
            let (g, b) = (group(ge)?, group(be)?);
            let start = Instant::now();
            let mut v = match regular_realization(&g, &b).map_err(engine)? {
                Some((gr, br)) => is_complete_colour_pair(&gr, &br).map_err(engine)?,
                None => {
                    let mut v = Verdict::new(VerdictKind::PairNo);
                    v.check("regular realization", false, format!("`{be}` has no action in which `{ge}` is regular"));
                    v
                }
            };
            v.stats.elapsed = start.elapsed();
            let graph = complete_colour_graph(&g).ok();
            Ok(Outcome { report: report(task, v, summary(&g, ge), cfg)?, graph })
        }
        Task::WitnessThm31 { n } | Task::WitnessProp33 { n } => {
            if let Some(v) = lab_n(*n, cfg)? {
                return Ok(Outcome { report: report(task, v, None, cfg)?, graph: None });
            }
            let v = match task {
                Task::WitnessThm31 { .. } => theorem_3_1_witness(*n),
                _ => proposition_3_3_witness(*n),
            }
            .map_err(engine)?;
            let graph = witness_graph(&v);
            Ok(Outcome { report: report(task, v, None, cfg)?, graph })
        }
        Task::Harness { n } => {
            if let Some(v) = lab_n(*n, cfg)? {
                return Ok(Outcome { report: report(task, v, None, cfg)?, graph: None });
            }
            let start = Instant::now();
            let actors = knn_actors(*n).map_err(engine)?;
            let mut v = corollary_4_10_harness(&actors.graph, &actors.g, &actors.h, Some(actors.base_arc()))
                .map_err(engine)?;
            v.stats.elapsed = start.elapsed();
            let labeling = arc_labeling(&actors).map_err(engine)?;
            let form = cayley_form(&actors, &labeling).map_err(engine)?;
            let g = GroupSummary::of(form.cayley.group(), None);
            Ok(Outcome { report: report(task, v, Some(g), cfg)?, graph: Some(form.cayley) })
        }
        Task::Census { from, to } => census(task, *from, *to, cfg),
    }
}

/// Candidate expressions of order exactly `n`, before deduplication.
fn family(n: usize, cap: usize) -> Vec<String> {
    let mut out = vec![format!("C({n})")];
    if n % 2 == 0 && n >= 6 {
        out.push(format!("D({})", n / 2));
    }
    if n >= 8 && n.is_power_of_two() {
        out.push("Q8".to_string());
        for k in 1..=(n / 8).trailing_zeros() {
            out.push(format!("Q8{}", " x C(2)".repeat(k as usize)));
        }
    }
    if n % 2 == 0 && n >= 4 {
        for a in abelian_family(n / 2) {
            out.push(format!("Dih({a})"));
            if (n / 2) % 2 == 0 {
                if let Ok(g) = elaborate(&parse_expr(&a).expect("family expressions parse"), &Env::new(), cap) {
                    for y in g.involutions() {
                        out.push(format!("Dic({a}, {})", g.name(y)));
                    }
                }
            }
        }
    }
    for d in 2..n {
        if n % d == 0 && d * d <= n {
            for a in family(d, cap) {
                for b in family(n / d, cap) {
                    out.push(format!("{} x {}", paren(&a), paren(&b)));
                }
            }
        }
    }
    if n == 12 {
        out.push("Perm[(0 1 2), (0 1)(2 3)]".to_string());
    }
    for m in 3..n {
        if 2 * m * m == n {
            out.push(format!("Wr2(C({m}))"));
        }
    }
    out
}

fn paren(e: &str) -> String {
    if e.contains(" x ") {
        format!("({e})")
    } else {
        e.to_string()
    }
}

/// Abelian groups of order `n` as products of cyclic factors.
fn abelian_family(n: usize) -> Vec<String> {
    fn parts(n: usize, min: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![n]];
        for d in min..n {
            if n % d == 0 && d * d <= n {
                for mut rest in parts(n / d, d) {
                    rest.insert(0, d);
                    out.push(rest);
                }
            }
        }
        out
    }
    parts(n, 2)
        .into_iter()
        .map(|p| p.iter().map(|k| format!("C({k})")).collect::<Vec<_>>().join(" x "))
        .collect()
}

/// One representative per isomorphism class among the built-in family.
pub fn census_groups(from: usize, to: usize, cap: usize) -> Result<Vec<(Expr, FiniteGroup)>> {
    let mut out: Vec<(Expr, FiniteGroup)> = Vec::new();
    for n in from.max(1)..=to {
        let start = out.len();
        for src in family(n, cap) {
            let e = parse_expr(&src)?;
            let g = match elaborate(&e, &Env::new(), cap) {
                Ok(g) => g,
                Err(CliError::Cap(_)) => continue,
                Err(err) => return Err(err),
            };
            if g.order() == n && !out[start..].iter().any(|(_, h)| are_isomorphic(h, &g).is_some()) {
                out.push((e, g));
            }
        }
    }
    Ok(out)
}

fn census(task: &Task, from: usize, to: usize, cfg: &Config) -> Result<Outcome> {
    let start = Instant::now();
    let mut entries = Vec::new();
    let mut aggregate = Verdict::new(VerdictKind::Cca);
    for (e, g) in census_groups(from, to, cfg.order_cap)? {
        let mut v = match is_cca_group(&g, DEFAULT_SUBSET_CAP, !cfg.seedless) {
            Err(err @ (cca_core::Error::AutomorphismCap { .. } | cca_core::Error::OrderExceedsCap { .. })) => {
                unknown_cap(&err.to_string())
            }
            other => other.map_err(engine)?,
        };
        certify(&mut v, cfg)?;
        aggregate.stats.nodes += v.stats.nodes;
        aggregate.check(e.to_string(), v.kind != VerdictKind::UnknownCap, v.kind.as_str());
        entries.push(CensusEntry {
            group: e.to_string(),
            order: g.order(),
            stats: Stats { nodes: v.stats.nodes, millis: millis(&v, cfg) },
            verdict: VerdictReport::new(&v, Some(GroupSummary::of(&g, Some(e.to_string())))),
        });
    }
    let kinds: Vec<VerdictKind> = entries.iter().map(|e| e.verdict.kind).collect();
    aggregate.kind = if kinds.contains(&VerdictKind::NonCca) {
        VerdictKind::NonCca
    } else if kinds.contains(&VerdictKind::UnknownCap) {
        VerdictKind::UnknownCap
    } else {
        VerdictKind::Cca
    };
    aggregate.stats.elapsed = start.elapsed();
    let mut report = report(task, aggregate, None, cfg)?;
    report.entries = entries;
    Ok(Outcome { report, graph: None })
}

/// Elaborate declarations in order, then run every task.
pub fn run_program(p: &SpecProgram, cfg: &Config) -> Result<Vec<Outcome>> {
    let mut env = Env::new();
    for (name, e) in &p.declarations {
        match elaborate(e, &env, cfg.order_cap) {
            Ok(g) => {
                env.insert(name.clone(), g);
            }
            // Tasks naming an oversized group report unknown-cap themselves.
            Err(CliError::Cap(_)) => {}
            Err(err) => return Err(err),
        }
    }
    let capped: Vec<&String> =
        p.declarations.iter().map(|(n, _)| n).filter(|n| !env.contains_key(n.as_str())).collect();
    p.tasks
        .iter()
        .map(|t| {
            if let Some(name) = capped.iter().find(|n| mentions(t, n)) {
                let v = unknown_cap(&format!("`{name}` exceeds order cap {}", cfg.order_cap));
                return Ok(Outcome { report: report(t, v, None, cfg)?, graph: None });
            }
            run_task(t, &env, cfg)
        })
        .collect()
}

fn mentions(t: &Task, name: &str) -> bool {
    fn walk(e: &Expr, name: &str) -> bool {
        match &e.kind {
            ExprKind::Name(n) => n == name,
            ExprKind::Dih(a) | ExprKind::Dic(a, _) | ExprKind::Wr2(a) => walk(a, name),
            ExprKind::Product(a, b) => walk(a, name) || walk(b, name),
            _ => false,
        }
    }
    match t {
        Task::CheckGraph { group, .. } | Task::CheckGroup { group, .. } => walk(group, name),
        Task::Pair { g, b } => walk(g, name) || walk(b, name),
        _ => false,
    }
}
