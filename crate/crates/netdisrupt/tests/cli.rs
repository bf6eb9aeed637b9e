//! End-to-end tests of the `netdisrupt` binary: exit-code discipline,
//! output purity, and reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(format!("../../data/{name}"))
        .display()
        .to_string()
}

fn netdisrupt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netdisrupt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn stats_prints_table_one_values() {
    let out = netdisrupt(&["stats", "--dataset", &fixture("meetings.csv")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("Nodes: 101"), "{text}");
    assert!(text.contains("Edges: 256"), "{text}");
    assert!(text.contains("Max weight: 10"), "{text}");
    assert!(text.contains("Avg degree: 5.07"), "{text}");
    assert!(text.contains("Max shortest path: 7"), "{text}");
}

#[test]
fn stats_json_has_all_five_fields() {
    let out = netdisrupt(&[
        "stats",
        "--dataset",
        &fixture("phone_calls.csv"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["node_count"], 100);
    assert_eq!(parsed["edge_count"], 124);
    assert_eq!(parsed["max_weight"], 8);
    assert_eq!(parsed["max_shortest_path"], 14);
    assert!((parsed["avg_degree"].as_f64().unwrap() - 2.48).abs() < 1e-9);
}

#[test]
fn stats_on_empty_file_exits_with_parse_code() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let out = netdisrupt(&["stats", "--dataset", &file.path().display().to_string()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("missing header"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn missing_dataset_exits_with_io_code() {
    let out = netdisrupt(&["stats", "--dataset", "/nonexistent/nowhere.csv"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn katz_alpha_above_bound_exits_with_divergence_code() {
    let out = netdisrupt(&[
        "disrupt",
        "--dataset",
        &fixture("meetings.csv"),
        "--metric",
        "katz",
        "--katz-alpha",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let err = stderr(&out);
    assert!(err.contains("spectral bound"), "{err}");
}

#[test]
fn compare_with_one_metric_is_a_usage_error() {
    let out = netdisrupt(&[
        "compare",
        "--dataset",
        &fixture("meetings.csv"),
        "--metric",
        "degree",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn disrupt_block_size_one_equals_sequential_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("seq.csv");
    let blk = dir.path().join("blk.csv");
    let common = [
        "--dataset",
        &fixture("phone_calls.csv"),
        "--metric",
        "betweenness",
        "--mode",
        "weighted",
    ];
    let out = netdisrupt(
        &[
            &["disrupt"],
            &common[..],
            &[
                "--strategy",
                "sequential",
                "--output",
                &seq.display().to_string(),
            ],
        ]
        .concat(),
    );
    assert_eq!(out.status.code(), Some(0));
    let out = netdisrupt(
        &[
            &["disrupt"],
            &common[..],
            &[
                "--strategy",
                "block",
                "--block-size",
                "1",
                "--output",
                &blk.display().to_string(),
            ],
        ]
        .concat(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&seq).unwrap(), std::fs::read(&blk).unwrap());
}

#[test]
fn disrupt_summary_reports_collapse_and_output_stays_pure() {
    let out = netdisrupt(&[
        "disrupt",
        "--dataset",
        &fixture("meetings.csv"),
        "--metric",
        "betweenness",
        "--strategy",
        "sequential",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let data = stdout(&out);
    let diag = stderr(&out);
    assert!(
        data.starts_with("iteration,removed,lcc_size,rho\n"),
        "{data}"
    );
    assert!(
        diag.contains("rho <= 0.3 first reached at iteration"),
        "{diag}"
    );
    // The summary must not leak into the data stream.
    assert!(!data.contains("first reached"));
    let iteration5 = data.lines().find(|l| l.starts_with("5,")).unwrap();
    let rho: f64 = iteration5.rsplit(',').next().unwrap().parse().unwrap();
    assert!(rho <= 0.30, "{iteration5}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = netdisrupt(&[
            "disrupt",
            "--dataset",
            &fixture("meetings.csv"),
            "--metric",
            "katz",
            "--mode",
            "weighted",
            "--strategy",
            "block",
            "--format",
            "json",
            "--output",
            &path.display().to_string(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn exported_json_reimports_to_the_same_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let out = netdisrupt(&[
        "disrupt",
        "--dataset",
        &fixture("phone_calls.csv"),
        "--metric",
        "degree",
        "--format",
        "json",
        "--output",
        &path.display().to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (run, checksum) = netdisrupt::dataset::import_run(&path).unwrap();
    assert_eq!(run.metric, netdisrupt::Metric::Degree);
    assert_eq!(run.trace[0].rho, 1.0);
    assert_eq!(run.trace.last().unwrap().rho, 0.0);
    let expected =
        netdisrupt::dataset::file_checksum(std::path::Path::new(&fixture("phone_calls.csv")))
            .unwrap();
    assert_eq!(checksum.as_deref(), Some(expected.as_str()));
}

#[test]
fn centrality_ranking_is_sorted_and_complete() {
    let out = netdisrupt(&[
        "centrality",
        "--dataset",
        &fixture("meetings.csv"),
        "--metric",
        "degree",
        "--mode",
        "weighted",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("node,score"));
    let scores: Vec<f64> = lines
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(scores.len(), 101);
    for pair in scores.windows(2) {
        assert!(pair[0] >= pair[1]);
    }
}

#[test]
fn compare_emits_one_column_per_metric() {
    let out = netdisrupt(&[
        "compare",
        "--dataset",
        &fixture("meetings.csv"),
        "--mode",
        "weighted",
        "--metric",
        "degree",
        "--metric",
        "betweenness",
        "--metric",
        "katz",
        "--metric",
        "ci",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "iteration,degree/weighted/sequential,betweenness/weighted/sequential,\
         katz/weighted/sequential,ci/weighted/sequential"
    );
    let first = text.lines().nth(1).unwrap();
    assert_eq!(first, "0,1.000000,1.000000,1.000000,1.000000");
    // Katz dominates at iteration 5.
    let row5: Vec<f64> = text
        .lines()
        .find(|l| l.starts_with("5,"))
        .unwrap()
        .split(',')
        .skip(1)
        .map(|v| v.parse().unwrap())
        .collect();
    let katz = row5[2];
    for rho in &row5 {
        assert!(katz >= *rho, "{row5:?}");
    }
    assert!(stderr(&out).contains("betweenness/weighted/sequential: rho <= 0.3"));
}
