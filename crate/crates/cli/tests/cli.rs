use std::fs;
use std::process::{Command, Output};

use cca_cli::program::{parse_spec, SpecProgram, Task};
use cca_cli::report::Report;
use cca_cli::syntax::{parse_expr, Expr, ExprKind};
use cca_cli::Pos;
use cca_core::engine::{replay, VerdictKind};
use proptest::prelude::*;

fn cca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cca")).args(args).env_remove("CCA_MAX_ORDER").output().unwrap()
}

fn report(out: &Output) -> Report {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn circulant_and_pair_examples() {
    assert_eq!(report(&cca(&["check-group", "C(7)"])).verdict.kind, VerdictKind::Cca);
    assert_eq!(report(&cca(&["pair", "C(3)", "Dih(C(3))"])).verdict.kind, VerdictKind::PairYes);
}

#[test]
fn check_graph_reports_a_replayable_witness() {
    let r = report(&cca(&["check-graph", "C(3) x D(3)", "s_2, r_1 r_2+inv", "--seedless"]));
    assert_eq!(r.verdict.kind, VerdictKind::NonCca);
    assert_eq!(r.verdict.witness_images.len(), 18);
    assert_eq!(r.verdict.group.as_ref().unwrap().expression.as_deref(), Some("C(3) x D(3)"));
    assert!(replay(r.verdict.witness.as_ref().unwrap()).unwrap());
}

#[test]
fn exit_codes() {
    let out = cca(&["check-group", "C(3) x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1, column 7"));
    assert_eq!(cca(&["witness-thm31", "--n", "4"]).status.code(), Some(1));
    assert_eq!(cca(&["check-graph", "D(4)", "r"]).status.code(), Some(1));
    assert_eq!(cca(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cca(&["--help"]).status.code(), Some(0));

    let capped = |strict: bool| {
        let mut args = vec!["check-group", "C(12)"];
        if strict {
            args.push("--strict");
        }
        Command::new(env!("CARGO_BIN_EXE_cca")).args(&args).env("CCA_MAX_ORDER", "10").output().unwrap()
    };
    let lenient = capped(false);
    assert_eq!(lenient.status.code(), Some(0));
    assert_eq!(report(&lenient).verdict.kind, VerdictKind::UnknownCap);
    assert_eq!(capped(true).status.code(), Some(2));
    let subset_cap = cca(&["check-group", "C(3) x D(3)", "--cap", "2", "--strict"]);
    assert_eq!(subset_cap.status.code(), Some(2));

    let bad_env = Command::new(env!("CARGO_BIN_EXE_cca")).args(["check-group", "C(3)"]).env("CCA_MAX_ORDER", "lots").output().unwrap();
    assert_eq!(bad_env.status.code(), Some(1));
}

#[test]
fn order_cap_override_bounds_lab_constructions() {
    let out = Command::new(env!("CARGO_BIN_EXE_cca"))
        .args(["witness-thm31", "--n", "9"])
        .env("CCA_MAX_ORDER", "512")
        .output()
        .unwrap();
    assert_eq!(report(&out).verdict.kind, VerdictKind::UnknownCap);
    assert_eq!(report(&cca(&["witness-thm31", "--n", "9"])).verdict.kind, VerdictKind::NonCca);
}

#[test]
fn files_and_dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let out = cca(&["witness-thm31", "--n", "3", "--emit", "both", "--out", path]);
    assert_eq!(out.status.code(), Some(0));
    let r: Report = serde_json::from_str(&fs::read_to_string(dir.path().join("witness-thm31.json")).unwrap()).unwrap();
    assert_eq!(r.verdict.witness_images.len(), 18);
    let dot = fs::read_to_string(dir.path().join("witness-thm31.dot")).unwrap();
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains(" -- ")).collect();
    assert_eq!(edges.len(), 27);
    let colours: std::collections::BTreeSet<&str> =
        edges.iter().map(|l| l.split("color=\"").nth(1).unwrap().split('"').next().unwrap()).collect();
    assert_eq!(colours.len(), 2);
    assert!(dot.contains("label=\"{rho2, rho2^2}\""));
}

#[test]
fn seedless_output_is_byte_identical() {
    for args in [
        vec!["check-group", "C(3) x D(3)", "--seedless"],
        vec!["census", "--orders", "1..8", "--seedless"],
        vec!["witness-prop33", "--n", "3", "--seedless", "--emit", "both"],
    ] {
        let a = cca(&args);
        let b = cca(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_records_the_replay() {
    let r = report(&cca(&["witness-prop33", "--n", "3", "--verify"]));
    assert!(r.verdict.checks.iter().any(|c| c.name == "witness replay" && c.pass));
    let r = report(&cca(&["witness-prop33", "--n", "3"]));
    assert!(!r.verdict.checks.iter().any(|c| c.name == "witness replay"));
}

#[test]
fn census_entries_replay() {
    let r = report(&cca(&["census", "--orders", "1..12", "--seedless"]));
    assert_eq!(r.entries.len(), 1 + 1 + 1 + 2 + 1 + 2 + 1 + 5 + 2 + 2 + 1 + 5);
    for w in r.witnesses() {
        assert!(replay(w).unwrap());
    }
}

#[test]
fn program_files_run_every_task() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("tasks.cca");
    fs::write(&file, "G = C(3) x D(3)\ncheck-graph G \"s_2, r_1 r_2+inv\"\npair \"C(5)\" \"Dih(C(5))\"\n").unwrap();
    let out = cca(&["run", file.to_str().unwrap(), "--seedless"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: Vec<Report> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0].verdict.kind, VerdictKind::NonCca);
    assert_eq!(reports[1].verdict.kind, VerdictKind::PairYes);

    fs::write(&file, "G = C(3)\n\ncheck-group H\n").unwrap();
    let out = cca(&["run", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 13"));
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let pos = Pos::default();
    let mk = move |kind| Expr { kind, pos };
    let leaf = prop_oneof![
        (1usize..40).prop_map(move |n| mk(ExprKind::Cyclic(n))),
        (3usize..40).prop_map(move |n| mk(ExprKind::Dihedral(n))),
        Just(mk(ExprKind::Q8)),
        prop::sample::select(vec!["G", "H2", "my_group"]).prop_map(move |s| mk(ExprKind::Name(s.to_string()))),
        prop::collection::vec(prop::collection::vec(prop::collection::vec(0usize..9, 1..4), 0..3), 1..3)
            .prop_map(move |g| mk(ExprKind::Perm(g))),
    ];
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(move |e| mk(ExprKind::Dih(Box::new(e)))),
            inner.clone().prop_map(move |e| mk(ExprKind::Wr2(Box::new(e)))),
            (inner.clone(), prop::sample::select(vec!["r^2", "r_1 r_2^-1", "(ab)^3"]))
                .prop_map(move |(e, w)| mk(ExprKind::Dic(Box::new(e), w.to_string()))),
            (inner.clone(), inner).prop_map(move |(a, b)| mk(ExprKind::Product(Box::new(a), Box::new(b)))),
        ]
    })
}

fn arb_task() -> impl Strategy<Value = Task> {
    prop_oneof![
        (arb_expr(), prop::sample::select(vec!["r+inv", "s_2, r_1 r_2+inv", "a, b^-1, (ab)^2"]))
            .prop_map(|(group, c)| Task::CheckGraph { group, connection: c.to_string() }),
        (arb_expr(), prop::option::of(1u64..100_000)).prop_map(|(group, cap)| Task::CheckGroup { group, cap }),
        (arb_expr(), arb_expr()).prop_map(|(g, b)| Task::Pair { g, b }),
        (3usize..20).prop_map(|n| Task::WitnessThm31 { n }),
        (3usize..20).prop_map(|n| Task::WitnessProp33 { n }),
        (3usize..20).prop_map(|n| Task::Harness { n }),
        (1usize..10, 0usize..10).prop_map(|(a, d)| Task::Census { from: a, to: a + d }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn expressions_round_trip(e in arb_expr()) {
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn programs_round_trip(
        decls in prop::collection::vec(arb_expr(), 0..4),
        tasks in prop::collection::vec(arb_task(), 0..5),
    ) {
        let p = SpecProgram {
            declarations: decls.into_iter().enumerate().map(|(k, e)| (format!("G{k}"), e)).collect(),
            tasks,
        };
        prop_assert_eq!(parse_spec(&p.to_string()).unwrap(), p);
    }
}
