mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use petersen_cg::catalog::{build, FamilyMember};
use petersen_cg::graph::{vl, Graph, VertexLabel};
use petersen_cg::spatial::SpatialEmbedding;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_petersen-cg"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("no signal"),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}

fn fixture(name: &str) -> String {
    common::fixture_path(name).to_string_lossy().into_owned()
}

#[test]
fn catalog_output_is_frozen_and_deterministic() {
    let a = run(["catalog"]);
    let b = run(["catalog"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout, "catalog output must be byte-identical");
    assert!(a.stdout.contains(
        "K6   6 vertices, 15 edges, 197 cycles (20x3 45x4 72x5 60x6), 10 disjoint pairs"
    ));
    assert!(a.stdout.contains(
        "P10  10 vertices, 15 edges, 57 cycles (12x5 10x6 15x8 20x9), 6 disjoint pairs"
    ));
    assert_eq!(a.stdout.lines().count(), 7);
}

#[test]
fn catalog_json_carries_the_census() {
    let r = run(["catalog", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let members = v.as_array().unwrap();
    assert_eq!(members.len(), 7);
    assert_eq!(members[0]["member"], "K6");
    assert_eq!(members[0]["cycles"], 197);
    assert_eq!(members[0]["cycles_by_length"]["5"], 72);
    assert_eq!(members[6]["member"], "P10");
    assert_eq!(members[6]["disjoint_pairs"], 6);
}

#[test]
fn unknown_member_exits_with_usage_error() {
    let r = run(["catalog", "K9"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unknown family member"));
}

#[test]
fn export_round_trips_through_the_text_format() {
    for m in FamilyMember::ALL {
        let r = run(["export", m.id()]);
        assert_eq!(r.code, 0);
        assert_eq!(Graph::parse_text(&r.stdout).unwrap(), build(m), "{m}");
    }
}

#[test]
fn weight_checks_pass_for_every_member() {
    for m in FamilyMember::ALL {
        let r = run(["weights", m.id(), "--check"]);
        assert_eq!(r.code, 0, "{m}: {}", r.stderr);
        assert!(r.stdout.contains("PASS"), "{m}: {}", r.stdout);
        assert!(!r.stdout.contains("FAIL"), "{m}: {}", r.stdout);
    }
    let p8 = run(["weights", "P8", "--check"]);
    assert_eq!(p8.stdout.matches(" PASS via ").count(), 2, "{}", p8.stdout);
}

#[test]
fn weight_table_lists_every_cycle() {
    let r = run(["weights", "K6"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 198, "header plus one line per cycle");
    let derived = run(["weights", "K6", "--derive"]);
    assert_eq!(
        r.stdout.lines().skip(1).collect::<Vec<_>>(),
        derived.stdout.lines().skip(1).collect::<Vec<_>>(),
        "derived table prints the same weights"
    );
}

#[test]
fn verify_reports_and_exit_codes() {
    let moment = run(["verify", &fixture("k6_moment.json")]);
    assert_eq!(moment.code, 0, "{}", moment.stderr);
    assert!(moment.stdout.contains("check identity: pass"));
    assert!(moment.stdout.contains("check parity: pass"));
    assert!(moment.stdout.contains("check complexity_bound: skipped"));
    assert!(moment.stdout.contains("sum lk^2: 1"));

    let as_corollary = run(["verify", &fixture("k6_moment.json"), "--corollary"]);
    assert_eq!(as_corollary.code, 2);
    assert!(as_corollary.stderr.contains("precondition"));

    let doubled = run(["verify", &fixture("k6_doubled.json")]);
    assert_eq!(doubled.code, 0, "{}", doubled.stderr);
    assert!(doubled.stdout.contains("check complexity_bound: pass"));
    assert!(doubled.stdout.contains("sum lk^2: 5"));
    assert!(doubled.stdout.contains("lk  -2  [A u' v'] | [u v w]"));
}

#[test]
fn verify_json_is_deterministic_and_structured() {
    let args = ["verify", &fixture("k6_doubled.json"), "--format", "json"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["report"]["member"], "K6");
    assert_eq!(v["report"]["sum_lk_sq"], 5);
    assert_eq!(v["report"]["sum_weighted_a2"], 2);
    assert_eq!(v["checks"]["identity"], "pass");
    assert_eq!(v["checks"]["parity"], "pass");
    assert_eq!(v["checks"]["complexity_bound"], "pass");
    assert_eq!(v["report"]["witnesses"].as_array().unwrap().len(), 6);
}

/// The moment fixture with every vertex renamed, written to a temp file.
fn renamed_fixture(dir: &Path) -> String {
    let emb = SpatialEmbedding::load(&common::fixture_path("k6_moment.json")).unwrap();
    let rename: BTreeMap<VertexLabel, VertexLabel> = emb
        .graph()
        .vertices()
        .enumerate()
        .map(|(i, v)| (v.clone(), vl(&format!("n{i}"))))
        .collect();
    let g = Graph::new(
        emb.graph().vertices().map(|v| rename[v].clone()),
        emb.graph().edges().map(|e| {
            let (a, b) = e.ends();
            (rename[a].clone(), rename[b].clone())
        }),
    )
    .unwrap();
    let positions: BTreeMap<VertexLabel, [f64; 3]> = emb
        .graph()
        .vertices()
        .map(|v| (rename[v].clone(), emb.position(v)))
        .collect();
    let renamed = SpatialEmbedding::new(g, positions, BTreeMap::new()).unwrap();
    let path = dir.join("renamed.json");
    renamed.save(&path).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn relabel_flag_recovers_renamed_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let path = renamed_fixture(dir.path());

    let plain = run(["verify", &path]);
    assert_eq!(plain.code, 2);
    assert!(plain.stderr.contains("does not match any catalog member"));

    let relabeled = run(["verify", &path, "--relabel"]);
    assert_eq!(relabeled.code, 0, "{}", relabeled.stderr);
    assert!(relabeled.stdout.contains("member: K6"));
    assert!(relabeled.stdout.contains("sum lk^2: 1"));
}

#[test]
fn malformed_input_exits_with_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "this is not an embedding").unwrap();
    let r = run(["verify", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(!r.stderr.is_empty());
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let direct = run(["verify", &fixture("k6_doubled.json")]);
    let redirected = run([
        "verify",
        &fixture("k6_doubled.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(redirected.code, 0);
    assert!(redirected.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), direct.stdout);
}

#[test]
fn gauss_codes_for_one_cycle_and_for_all() {
    let one = run(["gauss", &fixture("k6_doubled.json"), "--cycle", "u v w"]);
    assert_eq!(one.code, 0, "{}", one.stderr);
    assert_eq!(one.stdout.lines().count(), 1);
    assert!(one.stdout.starts_with("[u v w]"));

    let all = run(["gauss", &fixture("k6_moment.json")]);
    assert_eq!(all.code, 0);
    assert_eq!(all.stdout.lines().count(), 197);

    let bad = run(["gauss", &fixture("k6_moment.json"), "--cycle", "u v q"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn exchange_scripts_apply_and_invert() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("steps.txt");
    std::fs::write(&script, "DY u v w -> x\nYD x\n").unwrap();
    let r = run([
        "exchange",
        "--member",
        "K6",
        "--script",
        script.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(Graph::parse_text(&r.stdout).unwrap(), build(FamilyMember::K6));

    let forward = dir.path().join("forward.txt");
    std::fs::write(&forward, "DY u v w -> x\n").unwrap();
    let q7 = run([
        "exchange",
        "--member",
        "K6",
        "--script",
        forward.to_str().unwrap(),
    ]);
    assert_eq!(Graph::parse_text(&q7.stdout).unwrap(), build(FamilyMember::Q7));
}

#[test]
fn random_test_command_reports_seed_counts() {
    let r = run(["random-test", "K6", "--seeds", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "K6: 3/3 seeds pass");
    assert!(lines[1].starts_with("sum lk^2 distribution: "));
    assert!(lines[2].starts_with("sum w*a2 distribution: "));
    let repeat = run(["random-test", "K6", "--seeds", "3"]);
    assert_eq!(r.stdout, repeat.stdout, "seeded runs are reproducible");

    let zero = run(["random-test", "K6", "--seeds", "0"]);
    assert_eq!(zero.code, 2);
    assert!(zero.stderr.contains("at least 1"));
}
