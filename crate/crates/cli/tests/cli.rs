//! End-to-end runs of the `kradon` binary.

use std::path::Path;
use std::process::{Command, Output};

fn kradon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kradon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn thresholds_rows() {
    let out = kradon(&["--format", "json", "thresholds", "--r", "2", "--t", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "thresholds");
    let row = &v["result"][0];
    assert_eq!((row["m"].as_u64(), row["n_sum"].as_u64()), (Some(4), Some(14)));
    assert_eq!((row["n_prod"].as_u64(), row["akr"].as_u64()), (Some(14), Some(4)));

    let row = &json(&kradon(&["--format", "json", "thresholds", "--r", "4", "--t", "2"]))["result"][0];
    assert_eq!((row["m"].as_u64(), row["n_sum"].as_u64(), row["akr"].as_u64()), (Some(8), Some(172), Some(9)));

    let table = kradon(&["thresholds", "--max-r", "3"]);
    assert_eq!(code(&table), 0);
    // Header plus one row per 1 <= t <= r <= 3.
    assert_eq!(stdout(&table).lines().count(), 1 + 6);
}

#[test]
fn bad_parameters_exit_2() {
    assert_eq!(code(&kradon(&["thresholds", "--r", "1", "--t", "2"])), 2);
    assert_eq!(code(&kradon(&["verify", "lemma", "bogus"])), 2);
    assert_eq!(code(&kradon(&["--workers", "0", "thresholds"])), 2);
    assert_eq!(code(&kradon(&["solve", "--power-set", "4"])), 2);
    assert_eq!(code(&kradon(&["solve", "--power-set", "4", "--levels", "x"])), 2);
}

#[test]
fn malformed_and_missing_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "ground 3\n1 2 9\n").unwrap();
    assert_eq!(code(&kradon(&["family", "info", "--host", path(&bad)])), 2);
    std::fs::write(&bad, "not a family\n").unwrap();
    assert_eq!(code(&kradon(&["solve", "--host", path(&bad), "--levels", "2", "--k", "2"])), 2);
    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&kradon(&["family", "info", "--host", path(&missing)])), 2);
    let graph = dir.path().join("g.txt");
    std::fs::write(&graph, "graph 3\n1 1\n").unwrap();
    assert_eq!(code(&kradon(&["family", "info", "--graph", path(&graph)])), 2);
}

#[test]
fn family_info_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let host = dir.path().join("h.txt");
    std::fs::write(&host, "ground 4\n1 2 3\n3 4\n").unwrap();
    let out = kradon(&["--format", "json", "family", "info", "--host", path(&host)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["command"], "family info");
    assert_eq!(v["result"]["mu"], 2);
    // ∅, four singletons, {12},{13},{23},{34}, {123}.
    assert_eq!(v["result"]["members"], 10);

    // The path 1-2-3: independent sets ∅, {1},{2},{3}, {1,3}.
    let graph = dir.path().join("g.txt");
    std::fs::write(&graph, "graph 3\n1 2\n2 3\n").unwrap();
    let v = json(&kradon(&["--format", "json", "family", "info", "--graph", path(&graph)]));
    assert_eq!(v["result"]["members"], 5);
    assert_eq!(v["result"]["mu"], 1);
}

#[test]
fn named_optima() {
    let cases = [
        (vec!["--power-set", "4", "--levels", "2", "--k", "3"], 9),
        (vec!["--power-set", "5", "--levels", "2", "--k", "2"], 10),
        (vec!["--power-set", "4", "--levels", "2", "--k", "2", "--mode", "product"], 9),
    ];
    for (args, expected) in cases {
        let mut full = vec!["--format", "json", "solve"];
        full.extend(args.iter().copied());
        let out = kradon(&full);
        assert_eq!(code(&out), 0, "{args:?}");
        let v = json(&out);
        assert_eq!(v["result"]["optimum"], expected, "{args:?}");
        assert_eq!(v["result"]["prediction"], expected, "{args:?}");
    }
    let text = stdout(&kradon(&["solve", "--power-set", "5", "--levels", "2", "--k", "2"]));
    assert!(text.contains("optimum: 10"), "{text}");
    assert!(text.contains("SingleFull"), "{text}");
}

#[test]
fn strategies_agree() {
    for strategy in ["closed-sets", "branch-and-bound", "brute-force"] {
        let out = kradon(&[
            "--format", "json", "solve", "--power-set", "4", "--levels", "2", "--k", "2", "--strategy", strategy,
        ]);
        assert_eq!(code(&out), 0, "{strategy}");
        assert_eq!(json(&out)["result"]["optimum"], 6, "{strategy}");
    }
}

#[test]
fn oversized_solve_exits_3() {
    let out = kradon(&["solve", "--power-set", "8", "--levels", "3", "--k", "3", "--strategy", "branch-and-bound"]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn chvatal_hunt_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let findings = dir.path().join("findings.jsonl");
    let out = kradon(&["hunt", "--conjecture", "chvatal", "--n", "4", "--findings", path(&findings)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("instances: 167"), "{text}");
    assert!(text.contains("findings: 0"), "{text}");
    assert_eq!(std::fs::read_to_string(&findings).unwrap(), "");
}

#[test]
fn sharpness_witness_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.txt");
    let out = kradon(&["--out", path(&file), "witness", "sharpness", "--r", "4", "--t", "2"]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&file).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("ground 8"));
    let sets: Vec<Vec<usize>> = lines.map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(sets.len(), 4);
    assert!(sets.iter().all(|s| s.len() == 4));
    let mut union: Vec<usize> = sets.concat();
    union.sort_unstable();
    union.dedup();
    assert_eq!(union, (1..=8).collect::<Vec<_>>());

    // The written family is accepted back as keyint input.
    let out = kradon(&["--format", "json", "witness", "keyint", "--input", path(&file), "--t", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn lemma_sweep_is_clean() {
    let out = kradon(&["--format", "json", "verify", "lemma", "sperner", "--exhaustive-n", "5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["result"]["families"], 7580);
    assert_eq!(v["result"]["violations"].as_array().map(Vec::len), Some(0));
}

#[test]
fn theorem_harnesses_run() {
    let out = kradon(&["--format", "json", "verify", "theorem", "powerset", "--n", "14", "--levels", "2", "--k", "8"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["result"][0]["details"]["prediction"], 104);
    let out = kradon(&["verify", "theorem", "ekr-boundary", "--grid", "5"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let commands: [&[&str]; 6] = [
        &["thresholds"],
        &["solve", "--power-set", "5", "--levels", "2", "--k", "3"],
        &["verify", "lemma", "star-ratio", "--exhaustive-n", "4"],
        &["verify", "lemma", "transversal-bound", "--n", "6", "--samples", "300"],
        &["hunt", "--conjecture", "akgen", "--n", "4", "--levels", "1,2"],
        &["--seed", "9", "hunt", "--conjecture", "chvatal", "--n", "7", "--samples", "40", "--sizes", "2..4"],
    ];
    for cmd in commands {
        for format in ["text", "json"] {
            let run = |workers: &str| {
                let mut args = vec!["--workers", workers, "--format", format];
                args.extend_from_slice(cmd);
                kradon(&args)
            };
            let (one, eight) = (run("1"), run("8"));
            assert_eq!(code(&one), 0, "{cmd:?}");
            assert_eq!(one.stdout, eight.stdout, "{cmd:?} {format}");
        }
    }
}
