use std::fs;
use std::path::Path;

use foldobs::cli::checkpoint::{Checkpoint, CheckpointRecord};
use foldobs::cli::{auto_ks, run_with};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("foldobs").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    let r = run(&a);
    (r.code, serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{e}: {}", r.out)))
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
    assert_eq!(run(&["sweep", "--help"]).code, 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["dims", "--n", "5"][..],
        &["bogus"],
        &["dims", "--n", "4", "--k", "4"],
        &["rp", "--n", "3", "--target", "9"],
        &["--jobs", "0", "sweep", "--n-max", "10"],
        &["--checkpoint", "x.jsonl", "dims", "--n", "8", "--k", "1"],
        &["sweep", "--n-max", "20", "--k", "5"],
        &["numbers", "--file", "/nonexistent/numbers.json", "--k", "1"],
        &["binom", "--b", "2000000", "--a", "1"],
        &["rank2", "--n", "1"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.out);
        assert!(!r.err.is_empty(), "{args:?}");
    }
}

#[test]
fn obstructions_exit_one() {
    assert_eq!(run(&["rp", "--n", "13", "--target", "12"]).code, 1);
    assert_eq!(run(&["cp", "--n", "4", "--target", "7"]).code, 1);
    assert_eq!(run(&["cp", "--n", "4", "--target", "4"]).code, 0);
    assert_eq!(run(&["dims", "--n", "9", "--k", "1"]).code, 0);
}

#[test]
fn dims_json_fields() {
    let (code, v) = json(&["dims", "--n", "9", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["quotient_dim"], 2);
    assert_eq!(v["complement"], serde_json::json!(["x^2t^5", "x^4t"]));
    let (_, v) = json(&["dims", "--n", "8", "--k", "1", "--exclude-r0"]);
    assert_eq!(v["include_r0"], false);
    assert_eq!(v["quotient_dim"], 2);
}

#[test]
fn classify_and_rank2() {
    let (code, v) = json(&["classify", "--n", "11"]);
    assert_eq!((code, v["class"].as_str(), v["quotient_dim"].as_u64()), (0, Some("B1"), Some(1)));
    let (code, v) = json(&["rank2", "--n", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["complement"], serde_json::json!(["w1^10"]));
}

#[test]
fn binom_negative_upper_index() {
    let (_, v) = json(&["binom", "--b", "-1", "--a", "0"]);
    assert_eq!(v["parity"], 1);
    let (_, v) = json(&["binom", "--b", "12", "--a", "6"]);
    assert_eq!((v["parity"].as_u64(), v["val2"].as_u64()), (Some(0), Some(2)));
}

#[test]
fn rp_json_witnesses() {
    let (_, v) = json(&["rp", "--n", "13", "--target", "12"]);
    assert_eq!(v["min_threshold"], 6);
    let fold = &v["verdicts"][0];
    assert_eq!(fold["map_class"], "fold");
    assert_eq!(fold["outcome"], "obstructed");
    assert_eq!(fold["witness"]["kind"], "relation");
}

#[test]
fn csv_has_header_and_rows() {
    let r = run(&["--format", "csv", "rp", "--n", "13", "--target", "12"]);
    let mut rd = csv::Reader::from_reader(r.out.as_bytes());
    assert_eq!(rd.headers().unwrap().get(0), Some("source"));
    assert_eq!(rd.records().count(), 7);
}

#[test]
fn numbers_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rp4.json");
    // RP4: w = (1+a)^5 = 1 + a + a^4
    let doc = serde_json::json!({"n": 4, "numbers": [
        {"partition": [4], "value": 1},
        {"partition": [1, 3], "value": 0},
        {"partition": [2, 2], "value": 0},
        {"partition": [1, 1, 2], "value": 0},
        {"partition": [1, 1, 1, 1], "value": 1},
    ]});
    fs::write(&path, doc.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let r = run(&["numbers", "--file", p, "--k", "1", "--class", "corank1"]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    fs::write(&path, r#"{"n": 4, "numbers": []}"#).unwrap();
    assert_eq!(run(&["numbers", "--file", p, "--k", "1"]).code, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "sweep", "--n-max", "40", "--jobs", "4"][..],
        &["--format", "json", "rp", "--n", "31", "--target", "21"],
        &["--format", "csv", "dold-basis", "--n", "20", "--k", "3"],
    ] {
        let a = run(args).out;
        let b = run(args).out;
        assert_eq!(a, b, "{args:?}");
    }
    let one = run(&["--format", "json", "sweep", "--n-max", "40", "--jobs", "1"]).out;
    let many = run(&["--format", "json", "sweep", "--n-max", "40", "--jobs", "4"]).out;
    assert_eq!(one, many);
}

#[test]
fn auto_k_set() {
    assert_eq!(auto_ks(40), vec![3, 7, 15, 31]);
    assert_eq!(auto_ks(3), Vec::<usize>::new());
    assert_eq!(auto_ks(5000).last(), Some(&1023));
}

fn sweep_with(cp: &Path, n_max: &str) -> Run {
    run(&["--format", "json", "--checkpoint", cp.to_str().unwrap(), "sweep", "--n-max", n_max, "--jobs", "3"])
}

fn read_records(cp: &Path) -> Vec<CheckpointRecord> {
    fs::read_to_string(cp).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn checkpoint_resume_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("sweep.jsonl");
    let fresh = run(&["--format", "json", "sweep", "--n-max", "48"]).out;

    let first = sweep_with(&cp, "30");
    assert_eq!(first.code, 0);
    let n_first = read_records(&cp).len();
    let second = sweep_with(&cp, "48");
    assert_eq!(second.out, fresh);
    assert!(second.err.contains(&format!("{n_first} from checkpoint")), "{}", second.err);

    // a full rerun computes nothing
    let third = sweep_with(&cp, "48");
    assert!(third.err.contains(" 0 computed"), "{}", third.err);
    assert_eq!(third.out, fresh);
}

#[test]
fn corrupt_trailing_line_is_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("sweep.jsonl");
    sweep_with(&cp, "20");
    let good = read_records(&cp).len();
    let mut text = fs::read_to_string(&cp).unwrap();
    text.push_str("{\"n\": 21, \"k\": 3, \"quot");
    fs::write(&cp, text).unwrap();

    let r = sweep_with(&cp, "20");
    assert_eq!(r.code, 0);
    assert!(r.err.contains("corrupt trailing"), "{}", r.err);
    assert_eq!(read_records(&cp).len(), good);
}

#[test]
fn corrupt_middle_line_is_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("sweep.jsonl");
    sweep_with(&cp, "20");
    let mut lines: Vec<String> = fs::read_to_string(&cp).unwrap().lines().map(String::from).collect();
    lines.insert(1, "not json".into());
    fs::write(&cp, lines.join("\n") + "\n").unwrap();
    let r = sweep_with(&cp, "20");
    assert_eq!(r.code, 2);
    assert!(r.err.contains("line 2"), "{}", r.err);
}

#[test]
fn duplicates_keep_the_first_record() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("sweep.jsonl");
    sweep_with(&cp, "20");
    let recs = read_records(&cp);
    let mut fake = recs[0].clone();
    fake.quotient_dim = 99;
    let mut text = fs::read_to_string(&cp).unwrap();
    text.push_str(&serde_json::to_string(&fake).unwrap());
    text.push('\n');
    fs::write(&cp, text).unwrap();

    let mut warnings = Vec::new();
    let loaded = Checkpoint::open(&cp, &mut |w| warnings.push(w)).unwrap();
    assert_eq!(loaded.len(), recs.len());
    assert_eq!(loaded.records().find(|r| (r.n, r.k) == (fake.n, fake.k)).unwrap().quotient_dim, recs[0].quotient_dim);
    assert!(warnings.iter().any(|w| w.contains("duplicate")));
}

#[test]
fn foreign_engine_records_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("sweep.jsonl");
    let rec = CheckpointRecord {
        n: 8,
        k: 3,
        quotient_dim: 7,
        complement: vec![],
        elapsed_ms: 0,
        engine_version: "0.0.0-other".into(),
    };
    fs::write(&cp, serde_json::to_string(&rec).unwrap() + "\n").unwrap();
    let r = sweep_with(&cp, "10");
    assert!(r.err.contains("differs"), "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    let rec = v["records"].as_array().unwrap().iter().find(|r| r["n"] == 8 && r["k"] == 3).unwrap();
    assert_eq!(rec["quotient_dim"], 1);
}
