use std::path::PathBuf;
use std::process::{Command, Output};

fn gnpmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnpmod"))
        .args(args)
        .output()
        .expect("run gnpmod")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gnpmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn mod_exact_on_two_edges() {
    let o = gnpmod(&["mod-exact", "--graph", &data("two_disjoint_edges.txt"), "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["score", "0.5"]), "{text}");
}

#[test]
fn sample_round_trips_through_score() {
    let path = scratch("g.txt");
    let o = gnpmod(&["sample", "--n", "12", "--p", "0.4", "--seed", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    let again = stdout(&gnpmod(&["sample", "--n", "12", "--p", "0.4", "--seed", "5"]));
    assert_eq!(first, again);
    let exact = gnpmod(&["mod-exact", "--graph", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(exact.status.code(), Some(0));
    assert!(stdout(&exact).starts_with("n,"));
}

#[test]
fn exit_codes() {
    // p and d together.
    assert_eq!(gnpmod(&["sample", "--n", "5", "--p", "0.5", "--d", "2"]).status.code(), Some(2));
    // Out-of-range probability.
    assert_eq!(gnpmod(&["sample", "--n", "5", "--p", "1.5"]).status.code(), Some(2));
    // Unknown flag.
    assert_eq!(gnpmod(&["sample", "--bogus"]).status.code(), Some(2));
    // Exact modularity above its cap.
    let o = gnpmod(&["mod-exact", "--n", "20", "--p", "0.3", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
    // Malformed graph file.
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "3 1\n1 1\n").unwrap();
    assert_eq!(gnpmod(&["score", "--graph", bad.to_str().unwrap()]).status.code(), Some(2));
    // Missing file.
    assert_ne!(gnpmod(&["score", "--graph", "/nonexistent/graph.txt"]).status.code(), Some(0));
}

#[test]
fn sweep_is_deterministic_and_independent_of_jobs() {
    let args = ["sweep", "--n", "300", "--d", "5,20", "--trials", "3", "--seed", "9", "--restarts", "1"];
    let one = gnpmod(&[&args[..], &["--jobs", "1"]].concat());
    let four = gnpmod(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one).lines().count(), 7);
}

#[test]
fn sweep_replay_reproduces_a_row() {
    let base = ["sweep", "--n", "400", "--d", "10", "--trials", "3", "--seed", "4", "--restarts", "2"];
    let full = stdout(&gnpmod(&base));
    let row = full.lines().nth(2).unwrap();
    let seed = row.split(',').nth(2).unwrap();
    let replay = stdout(&gnpmod(&[&base[..], &["--replay", seed]].concat()));
    assert_eq!(replay.lines().nth(1).unwrap(), row);
    assert_eq!(replay.lines().count(), 2);
}

#[test]
fn config_file_with_flag_override() {
    let cfg = scratch("sweep.json");
    std::fs::write(
        &cfg,
        r#"{"n": 300, "d": [8], "trials": 2, "seed": 1, "restarts": 1}"#,
    )
    .unwrap();
    let from_file = stdout(&gnpmod(&["sweep", "--config", cfg.to_str().unwrap()]));
    let from_flags = stdout(&gnpmod(&["sweep", "--n", "300", "--d", "8", "--trials", "2", "--seed", "1", "--restarts", "1"]));
    assert_eq!(from_file, from_flags);
    let overridden = stdout(&gnpmod(&["sweep", "--config", cfg.to_str().unwrap(), "--seed", "2"]));
    assert_ne!(overridden, from_file);

    std::fs::write(&cfg, r#"{"n": 300, "dd": 8}"#).unwrap();
    assert_eq!(gnpmod(&["sweep", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn sweep_meta_record() {
    let meta = scratch("meta.json");
    let o = gnpmod(&[
        "sweep", "--n", "200", "--d", "6", "--trials", "2", "--restarts", "1", "--no-timestamp", "--meta",
        meta.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(v.get("unix_time").is_none());
    assert_eq!(v["columns"][0], "n");
}

#[test]
fn table_footer_and_timestamp_suppression() {
    let with = stdout(&gnpmod(&["bounds", "--n", "1000", "--d", "20", "--format", "table"]));
    assert!(with.contains("wall-clock"));
    let without = stdout(&gnpmod(&["bounds", "--n", "1000", "--d", "20", "--format", "table", "--no-timestamp"]));
    assert!(!without.contains("wall-clock") && !without.contains("unix time"));
    assert!(without.contains("# gnpmod "));
}

#[test]
fn other_subcommands_run() {
    for args in [
        &["spectral", "--n", "30", "--p", "0.3", "--seed", "2"][..],
        &["mod-heuristic", "--n", "100", "--d", "5", "--seed", "2"],
        &["certificate", "--n", "100", "--d", "5", "--seed", "2"],
        &["bisect", "--n", "14", "--d", "4", "--seed", "2", "--exact"],
        &["chernoff", "--n", "100", "--p", "0.1", "--t", "10", "--samples", "10000"],
        &["events", "--n", "14", "--p", "0.8", "--seed", "1"],
        &["events", "--n", "200", "--d", "20", "--mode", "sampled", "--trials", "100", "--per-size", "5"],
        &["verify-appendix", "--no-timestamp"],
    ] {
        let o = gnpmod(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
    }
}
