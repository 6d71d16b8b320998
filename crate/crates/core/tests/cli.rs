use std::process::Command;

fn sortnet() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sortnet"));
    c.env_remove("SORTNET_SEED");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = sortnet().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn sample_then_map_both_ways() {
    let dir = tempfile::tempdir().unwrap();
    let tab = dir.path().join("t.json");
    let (code, out, _) = run(&["sample", "--shape", "staircase:6", "--seed", "7"]);
    assert_eq!(code, 0);
    std::fs::write(&tab, &out).unwrap();
    let (code, net_json, _) = run(&["eg", "--to-network", tab.to_str().unwrap()]);
    assert_eq!(code, 0);
    let net = dir.path().join("n.json");
    std::fs::write(&net, &net_json).unwrap();
    let (code, back, _) = run(&["eg", "--to-tableau", net.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(back, out);
}

#[test]
fn sample_writes_one_object_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let (code, _, _) = run(&["sample", "--shape", "3,2,1", "--count", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let _: sortnet::StandardTableau = serde_json::from_str(line).unwrap();
    }
}

#[test]
fn seed_falls_back_to_environment() {
    let a = sortnet().args(["sample-network", "--n", "8"]).env("SORTNET_SEED", "11").output().unwrap();
    let (_, b, _) = run(&["sample-network", "--n", "8", "--seed", "11"]);
    assert_eq!(String::from_utf8(a.stdout).unwrap(), b);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("n.json");
    std::fs::write(&net, r#"{"n":4,"swaps":[1,3,2,1,3,2]}"#).unwrap();
    let svg = dir.path().join("d.svg");
    let (code, _, _) = run(&["render", net.to_str().unwrap(), "-o", svg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(svg).unwrap().matches("<polyline").count(), 4);
}

#[test]
fn pattern_counts() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("n.json");
    std::fs::write(&net, r#"{"n":5,"swaps":[4,2,3,1,4,2,1,3,4,2]}"#).unwrap();
    for flag in ["--exact", "--greedy"] {
        let (code, out, _) = run(&["pattern", "--network", net.to_str().unwrap(), "--pattern", "1,2", flag]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], 3);
        assert_eq!(v["pattern"], serde_json::json!([1, 2]));
        assert_eq!(v["windows"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn realize_and_certify() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("p.json");
    std::fs::write(&pts, r#"{"points":[[0,0],[1,1],[2,0]]}"#).unwrap();
    let (code, out, _) = run(&["realize", pts.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"n":3,"swaps":[1,2,1]}"#);

    let gp = dir.path().join("gp.json");
    std::fs::write(&gp, sortnet::geometry::GP5_JSON).unwrap();
    let (code, out, _) = run(&["certify", gp.to_str().unwrap(), "--gp-pattern", gp.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "non-realizable");
    assert_eq!(v["window"]["time"], serde_json::json!([1, 10]));
}

#[test]
fn experiment_reports_in_both_formats() {
    let args = ["experiment", "t1", "--pattern", "1,2", "--n", "8,12", "--samples", "6", "--seed", "1"];
    let (code, json, _) = run(&args);
    assert_eq!(code, 0);
    let report = sortnet::experiments::ExperimentReport::from_json(&json).unwrap();
    assert_eq!(report.experiment, "t1");
    assert_eq!(report.per_n.len(), 2);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv", "--jobs", "2"]);
    let (code, csv, _) = run(&csv_args);
    assert_eq!(code, 0);
    let from_csv = sortnet::experiments::ExperimentReport::from_csv(&csv).unwrap();
    assert_eq!(from_csv.without_timing(), report.without_timing());

    for sub in [["t2", "--n", "8"], ["t3", "--n", "6"]] {
        let (code, out, err) = run(&["experiment", sub[0], sub[1], sub[2], "--samples", "3"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains(&format!("\"experiment\": \"{}\"", sub[0])));
    }
    let (code, out, _) = run(&["experiment", "stationarity", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"s1_equals_s2\": true"));
}

#[test]
fn oracles_pass() {
    let (code, out, _) = run(&["oracle", "enumerate", "--n", "3,4"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("PASS").count(), 2);
    let (code, out, _) = run(&["oracle", "gp-check", "--draws", "20000"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.trim_end().ends_with("PASS"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&["--no-such-flag"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    assert_eq!(run(&["sample-network", "--n", "1"]).0, 2);
    assert_eq!(run(&["experiment", "stationarity", "--n", "6"]).0, 2);

    let invalid = dir.path().join("bad.json");
    std::fs::write(&invalid, r#"{"n":3,"swaps":[1,1,1]}"#).unwrap();
    assert_eq!(run(&["eg", "--to-tableau", invalid.to_str().unwrap()]).0, 2);

    let malformed = dir.path().join("mal.json");
    std::fs::write(&malformed, "{not json").unwrap();
    assert_eq!(run(&["eg", "--to-tableau", malformed.to_str().unwrap()]).0, 3);
    assert_eq!(run(&["render", dir.path().join("missing.json").to_str().unwrap()]).0, 3);

    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("experiment"));
}
