use std::path::Path;

use hpr::experiment::{run_experiment, sampled_audit_parallel, ExperimentSpec, GridPoint, Row, Task};
use hpr::hg;
use hpr::report::CertificateFile;
use hpr_core::audit::{audit, AuditMode, Criterion};
use hpr_core::generators::{random_kgraph, GenSpec};
use hpr_core::pipeline::PipelineConfig;

fn hpr(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hpr").chain(args.iter().copied());
    let code = hpr::run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn gen_writes_a_file_that_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = p(dir.path(), "H.hg");
    let (code, out, _) = hpr(&["gen", "--k", "3", "--n", "60", "--p", "0.4", "--seed", "7", "-o", &file]);
    assert_eq!(code, 0);
    let loaded = hg::load(Path::new(&file)).unwrap();
    let direct = random_kgraph(&GenSpec { k: 3, n: 60, p: 0.4, seed: 7 }).unwrap();
    assert_eq!(loaded.digest(), direct.digest());
    assert_eq!(loaded, direct);
    assert!(out.contains(&format!("digest={}", direct.digest())));

    let again = p(dir.path(), "H2.hg");
    hpr(&["gen", "--k", "3", "--n", "60", "--p", "0.4", "--seed", "7", "-o", &again]);
    assert_eq!(std::fs::read(&file).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn degen_of_a_path_rooted_at_its_ends() {
    let (code, out, _) = hpr(&["degen", "--motif", "loose_path", "--k", "3", "--edges", "3", "--root-ends"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("degen=2"));
    let (_, out, _) = hpr(&["degen", "--motif", "loose_triangle", "--k", "3", "--seed", "5"]);
    assert!(out.contains("degen=2") && out.contains("max_edge_degree=2"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(hpr(&[]).0, 2);
    assert_eq!(hpr(&["frobnicate"]).0, 2);
    assert_eq!(hpr(&["gen", "--k", "3"]).0, 2);
    assert_eq!(hpr(&["solve", "matching", "-i", "/nonexistent/H.hg"]).0, 2);
    assert_eq!(hpr(&["degen", "--motif", "loose_path"]).0, 2);
    assert_eq!(hpr(&["--help"]).0, 0);
}

#[test]
fn solved_certificates_pass_standalone_verify() {
    let dir = tempfile::tempdir().unwrap();
    let host = p(dir.path(), "H.hg");
    let cert = p(dir.path(), "out.json");
    hpr(&["gen", "--k", "3", "--n", "60", "--p", "0.6", "--seed", "8", "-o", &host]);
    let (code, out, _) = hpr(&["solve", "hamcycle", "-i", &host, "--seed", "1", "--json", &cert]);
    assert_eq!(code, 0, "{out}");
    let text = std::fs::read_to_string(&cert).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["verified"], true);
    assert_eq!(value["kind"], "ham_cycle");
    assert_eq!(value["config"]["seed"], 1);
    assert!(value["certificate"]["report"]["phases"].as_array().is_some_and(|a| !a.is_empty()));
    assert_eq!(hpr(&["verify", "-i", &host, "-c", &cert]).0, 0);

    // A different host fails verification.
    let other = p(dir.path(), "H2.hg");
    hpr(&["gen", "--k", "3", "--n", "60", "--p", "0.6", "--seed", "9", "-o", &other]);
    let (code, out, _) = hpr(&["verify", "-i", &other, "-c", &cert]);
    assert_eq!(code, 1);
    assert!(out.contains("verified=false"));

    // Dropping a piece is caught.
    let mut file: CertificateFile = serde_json::from_str(&text).unwrap();
    file.certificate.as_mut().unwrap().pieces.pop();
    let broken = p(dir.path(), "broken.json");
    hpr::report::write_json(&file, Path::new(&broken)).unwrap();
    assert_eq!(hpr(&["verify", "-i", &host, "-c", &broken]).0, 1);
}

#[test]
fn absorbing_matching_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let host = p(dir.path(), "H.hg");
    let cert = p(dir.path(), "m.json");
    hpr(&["gen", "--k", "3", "--n", "120", "--p", "0.5", "--seed", "11", "-o", &host]);
    let (code, out, _) = hpr(&["solve", "matching", "-i", &host, "--seed", "4", "--no-greedy", "--json", &cert]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("greedy_only=false"));
    assert_eq!(hpr(&["verify", "-i", &host, "-c", &cert]).0, 0);
}

#[test]
fn solve_failure_exits_with_one_and_records_the_phase() {
    let dir = tempfile::tempdir().unwrap();
    let host = p(dir.path(), "H.hg");
    std::fs::write(&host, "3 30\n").unwrap();
    let cert = p(dir.path(), "fail.json");
    let (code, out, _) = hpr(&["solve", "matching", "-i", &host, "--json", &cert]);
    assert_eq!(code, 1);
    assert!(out.contains("verified=false"));
    let file: CertificateFile = hpr::report::read_json(Path::new(&cert)).unwrap();
    assert!(file.certificate.is_none());
    assert!(file.error.unwrap().starts_with("absorbing-degree-audit"));
}

#[test]
fn audit_finds_a_planted_hole() {
    let dir = tempfile::tempdir().unwrap();
    let host = p(dir.path(), "H.hg");
    let report = p(dir.path(), "audit.json");
    hpr(&["gen", "--k", "3", "--n", "24", "--p", "0.5", "--seed", "3", "--hole", "12", "-o", &host]);
    let (code, out, _) =
        hpr(&["audit", "-i", &host, "--p", "0.5", "--alpha", "0.1", "--eps", "0.5", "--trials", "400", "--json", &report]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("verdict=fail") && out.contains("A1="));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["worst_violation"]["violates"], true);
}

#[test]
fn spectral_template_and_absorber_commands() {
    let dir = tempfile::tempdir().unwrap();
    let host = p(dir.path(), "G.hg");
    hpr(&["gen", "--k", "2", "--n", "8", "--p", "0.5", "--seed", "2", "-o", &host]);
    let (code, out, _) = hpr(&["spectral", "-i", &host, "--restarts", "20"]);
    assert_eq!(code, 0);
    assert!(out.contains("exact lambda1="));

    let (code, out, _) = hpr(&["template", "--r", "3", "--m", "4", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("flexibility=pass tested=70"));

    let abs = p(dir.path(), "A.hg");
    let (code, out, _) = hpr(&["absorber", "--kind", "path", "--k", "4", "-o", &abs]);
    assert_eq!(code, 0, "{out}");
    let a = hg::load(Path::new(&abs)).unwrap();
    assert_eq!(a.n(), 9 * 16 - 23 * 4 + 15);
    let side: hpr::report::AbsorberSidecar = hpr::report::read_json(&dir.path().join("A.json")).unwrap();
    assert!(side.verified && side.ends.is_some() && side.roots.len() == 3);
    assert_eq!(side.edges, a.edge_count());

    let fab = p(dir.path(), "F.hg");
    let (code, _, _) = hpr(&["absorber", "--kind", "factor", "--k", "3", "--motif", "loose_path", "--edges", "2", "-o", &fab]);
    assert_eq!(code, 0);
    let side: hpr::report::AbsorberSidecar = hpr::report::read_json(&dir.path().join("F.json")).unwrap();
    assert_eq!(side.complete_factor.len(), 5);
    assert_eq!(side.internal_factor.len(), 4);
}

fn without_timings(rows: &[Row]) -> Vec<Row> {
    rows.iter().map(|r| Row { gen_ms: 0.0, audit_ms: 0.0, solve_ms: 0.0, verify_ms: 0.0, ..r.clone() }).collect()
}

fn spec(task: Task, ns: &[usize], ps: &[f64]) -> ExperimentSpec {
    ExperimentSpec {
        task,
        k: 3,
        grid: ExperimentSpec::grid(ns, ps, &[0]),
        motif: None,
        config: PipelineConfig::default(),
        audit_alpha: 0.05,
        audit_eps: 0.25,
        audit_trials: 50,
    }
}

#[test]
fn experiment_grid_has_one_row_per_point() {
    let s = spec(Task::Matching, &[30, 36, 42], &[0.5, 0.6, 0.7]);
    let rows = run_experiment(&s, 3).unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| !r.status.starts_with("skipped")));
    let again = run_experiment(&s, 1).unwrap();
    assert_eq!(without_timings(&rows), without_timings(&again));
}

#[test]
fn experiment_skips_indivisible_sizes() {
    let rows = run_experiment(&spec(Task::Hamcycle, &[31, 40], &[0.6]), 2).unwrap();
    assert_eq!(rows[0].status, "skipped: divisibility");
    assert!(!rows[0].success);
    assert_eq!(rows[1].n, 40);
    assert!(run_experiment(&spec(Task::Audit, &[], &[0.5]), 1).is_err());
}

#[test]
fn experiment_command_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = p(dir.path(), "exp");
    let (code, out, _) =
        hpr(&["experiment", "--task", "audit", "--n", "20,21", "--p", "0.5", "--seeds", "1,2", "--audit-trials", "20", "-o", &out_dir]);
    assert_eq!(code, 0);
    assert!(out.contains("rows=4"));
    let mut reader = csv::Reader::from_path(Path::new(&out_dir).join("experiment.csv")).unwrap();
    let headers = reader.headers().unwrap().clone();
    for col in ["n", "p", "seed", "success", "gen_ms", "solve_ms", "certificate_pieces", "audit_verdict"] {
        assert!(headers.iter().any(|h| h == col), "{col}");
    }
    assert_eq!(reader.records().count(), 4);
}

#[test]
fn split_sampled_audit_matches_single_run() {
    let h = random_kgraph(&GenSpec { k: 3, n: 30, p: 0.5, seed: 4 }).unwrap();
    let c = Criterion::PseudoRandom { p: 0.5, alpha: 0.05, eps: 0.3 };
    let single = audit(&h, c, AuditMode::Sampled, 101, 9, 0).unwrap();
    for threads in [1, 2, 7] {
        assert_eq!(sampled_audit_parallel(&h, c, 101, 9, threads), single);
    }
}

#[test]
fn experiment_points_do_not_depend_on_neighbours() {
    let s = spec(Task::Audit, &[24, 27], &[0.5, 0.7]);
    let all = run_experiment(&s, 2).unwrap();
    let one = ExperimentSpec { grid: vec![GridPoint { n: 27, p: 0.7, seed: 0 }], ..s };
    let alone = run_experiment(&one, 1).unwrap();
    assert_eq!(without_timings(&alone)[0], without_timings(&all)[3]);
}
