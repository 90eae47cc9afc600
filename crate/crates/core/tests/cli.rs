use std::process::{Command, Output};

fn posetlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn rank2_report_matches_golden() {
    let o = posetlab(&["report", "rank2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = include_str!("fixtures/rank2.json");
    assert_eq!(stdout(&o), golden);
}

#[test]
fn thread_count_does_not_change_reports() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_posetlab"))
            .args(["report", "fibers", "--json"])
            .env("POSETLAB_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn graphs_of_rank_two() {
    let o = posetlab(&["graphs", "--rank", "2"]);
    assert_eq!(stdout(&o), "1|0-0,0-0\n2|0-0,0-1,1-1 separating\n2|0-1,0-1,0-1\n");
    let o = posetlab(&["graphs", "--rank", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 15);
}

#[test]
fn dot_exports() {
    let o = posetlab(&["poset", "--graph", "dumbbell", "--kind", "c", "--dot"]);
    let dot = stdout(&o);
    assert_eq!(dot.matches("label=").count(), 3);
    assert_eq!(dot.matches("->").count(), 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.json");
    std::fs::write(&path, r#"{"vertices":[0,1],"edges":[[0,0,1],[1,0,1],[2,0,1]]}"#).unwrap();
    let o = posetlab(&["verify", "x", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("x-sphericity pass betti=[2]"));
}

#[test]
fn homology_of_a_poset_file() {
    let dir = tempfile::tempdir().unwrap();
    let poset = dir.path().join("c.json");
    let o = posetlab(&["poset", "--graph", "theta", "--kind", "c", "--json", "--out", poset.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = posetlab(&["homology", "--poset", poset.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([3]));
    assert_eq!(v["homology"][1]["betti"], 2);
}

#[test]
fn morse_commands() {
    let o = posetlab(&["morse", "search", "--graph", "theta", "--kind", "c"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "no certificate\n");

    let dir = tempfile::tempdir().unwrap();
    let poset = dir.path().join("c.json");
    let values = dir.path().join("v.json");
    posetlab(&["poset", "--graph", "dumbbell", "--kind", "c", "--json", "--out", poset.to_str().unwrap()]);
    std::fs::write(&values, r#"{"{0}": 1, "{2}": "3/2", "{0,2}": 0}"#).unwrap();
    let o = posetlab(&[
        "morse",
        "verify",
        "--poset",
        poset.to_str().unwrap(),
        "--values",
        values.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "contractible");
    assert_eq!(v["cone_point"], "{0,2}");
}

#[test]
fn exit_codes() {
    assert_eq!(posetlab(&["verify", "x", "--graph", "theta"]).status.code(), Some(0));
    assert_eq!(posetlab(&["verify", "x", "--graph", "no-such-graph"]).status.code(), Some(2));
    assert_eq!(posetlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(posetlab(&["report", "rank4-deep"]).status.code(), Some(2));
    assert_eq!(posetlab(&["graphs", "--rank", "9"]).status.code(), Some(2));
    // a precondition failure of a valid request is a runtime failure
    assert_eq!(posetlab(&["verify", "generators", "--graph", "dumbbell"]).status.code(), Some(1));
}
