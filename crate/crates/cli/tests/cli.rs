use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stemcluster"))
}

fn demo(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/demo")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn assert_single_line_error(out: &Output, kind: &str) {
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    let lines: Vec<_> = stderr.lines().collect();
    assert_eq!(lines.len(), 1, "stderr: {stderr}");
    assert!(
        lines[0].starts_with(&format!("error[{kind}]: ")),
        "stderr: {stderr}"
    );
}

struct Trained {
    dir: TempDir,
}

impl Trained {
    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }
}

fn train_demo(backend: &str) -> Trained {
    let dir = TempDir::new().unwrap();
    let t = Trained { dir };
    run_ok(&[
        "preprocess",
        demo("corpus.txt").to_str().unwrap(),
        "-o",
        &t.path("lexicon.txt"),
        "--stats",
    ]);
    run_ok(&[
        "train",
        &t.path("lexicon.txt"),
        "--backend",
        backend,
        "--table-out",
        &t.path("stems.tsv"),
        "--report-out",
        &t.path("clusters.json"),
    ]);
    t
}

#[test]
fn preprocess_tiny_corpus() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in.txt");
    fs::write(&input, "বাংলা দেশ। বাংলার মানুষ, দেশ 123 ক!\nআমার বাংলা").unwrap();
    let out = dir.path().join("lex.txt");
    let stdout = run_ok(&[
        "preprocess",
        input.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(stdout, "total=8 unique=5\n");
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "দেশ\nআমার\nবাংলা\nমানুষ\nবাংলার\n"
    );
}

#[test]
fn preprocess_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        run_ok(&[
            "preprocess",
            demo("corpus.txt").to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
            "--stats",
        ]);
    }
    let first = fs::read(&a).unwrap();
    assert_eq!(first, fs::read(&b).unwrap());
    assert!(String::from_utf8(first)
        .unwrap()
        .starts_with("#stats total=78 unique=57\n"));
}

#[test]
fn preprocess_errors() {
    let out = run(&["preprocess", "/nonexistent/corpus.txt", "-o", "/tmp/x"]);
    assert_single_line_error(&out, "io");
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/corpus.txt"));

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, [0xE0, 0xA6, 0xAC, 0xFF]).unwrap();
    let out = run(&["preprocess", bad.to_str().unwrap(), "-o", "/tmp/x"]);
    assert_single_line_error(&out, "encoding");

    let empty = dir.path().join("latin.txt");
    fs::write(&empty, "only latin text 42").unwrap();
    let lex = dir.path().join("lex.txt");
    let out = run(&[
        "preprocess",
        empty.to_str().unwrap(),
        "-o",
        lex.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("warning:"));
    assert_eq!(fs::read_to_string(&lex).unwrap(), "");
}

#[test]
fn train_greedy_related_pair() {
    let dir = TempDir::new().unwrap();
    let lex = dir.path().join("lex.txt");
    fs::write(&lex, "বাংলা\nবাংলাদেশ\n").unwrap();
    let table = dir.path().join("t.tsv");
    let report = dir.path().join("r.json");
    let stdout = run_ok(&[
        "train",
        lex.to_str().unwrap(),
        "--table-out",
        table.to_str().unwrap(),
        "--report-out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(
        stdout,
        "backend=greedy clusters=1 unique=2 reduction_ratio=0.5000\n"
    );
    assert_eq!(
        fs::read_to_string(&table).unwrap(),
        "#stemcluster v1 order=2 threshold=0.06\nবাংলা\tবাংলা\nবাংলাদেশ\tবাংলা\n"
    );
}

#[test]
fn train_ap_median_unrelated_pair() {
    let dir = TempDir::new().unwrap();
    let lex = dir.path().join("lex.txt");
    fs::write(&lex, "কলম\nদোয়াত\n").unwrap();
    let report = dir.path().join("r.json");
    let stdout = run_ok(&[
        "train",
        lex.to_str().unwrap(),
        "--backend",
        "ap-median",
        "--preference",
        "-1",
        "--table-out",
        dir.path().join("t.tsv").to_str().unwrap(),
        "--report-out",
        report.to_str().unwrap(),
    ]);
    assert!(
        stdout.starts_with("backend=ap-median clusters=2 unique=2"),
        "{stdout}"
    );
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["mode"], "median");
    assert_eq!(json["converged"], true);
    assert_eq!(json["clusters"].as_array().unwrap().len(), 2);
}

#[test]
fn train_capacity_guard_exits_nonzero() {
    let dir = TempDir::new().unwrap();
    let lex = dir.path().join("lex.txt");
    fs::write(&lex, "কলম\nকলমে\nকলমের\n").unwrap();
    let out = run(&[
        "train",
        lex.to_str().unwrap(),
        "--backend",
        "ap-coeff",
        "--max-points",
        "2",
        "--table-out",
        "/tmp/unused.tsv",
        "--report-out",
        "/tmp/unused.json",
    ]);
    assert_single_line_error(&out, "capacity");
}

#[test]
fn train_rejects_bad_config() {
    let out = run(&[
        "train",
        "x",
        "--table-out",
        "a",
        "--report-out",
        "b",
        "--ngram",
        "4",
    ]);
    assert_single_line_error(&out, "usage");
    let out = run(&[
        "train",
        "x",
        "--table-out",
        "a",
        "--report-out",
        "b",
        "--preference",
        "lots",
    ]);
    assert_single_line_error(&out, "usage");

    let t = train_demo("greedy");
    for args in [["--threshold", "1.5"], ["--backend", "kmeans"]] {
        let mut all = vec![
            "train".to_string(),
            t.path("lexicon.txt"),
            "--table-out".into(),
            t.path("x.tsv"),
            "--report-out".into(),
            t.path("x.json"),
        ];
        all.extend(args.iter().map(|s| s.to_string()));
        let argv: Vec<&str> = all.iter().map(String::as_str).collect();
        assert_single_line_error(&run(&argv), "config");
    }
}

#[test]
fn stem_lookup_oov_and_stdin() {
    let t = train_demo("greedy");
    let table = t.path("stems.tsv");
    assert_eq!(
        run_ok(&["stem", "--table", &table, "বইগুলো", "কম্পিউটার", "বই"]),
        "বই\nকম্পিউটার\nবই\n"
    );
    assert_eq!(
        run_ok(&["stem", "--table", &table, "--mark-oov", "নদীতে", "কম্পিউটার"]),
        "নদী\nকম্পিউটার\tOOV\n"
    );

    let mut child = bin()
        .args(["stem", "--table", &table])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all("শহরের কাজে\nবছরে\n".as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "শহর\nকাজ\nবছর\n");

    let out = bin()
        .args(["stem", "--table", &table])
        .stdin(Stdio::null())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn stem_malformed_table() {
    let dir = TempDir::new().unwrap();
    let table = dir.path().join("t.tsv");
    fs::write(
        &table,
        "#stemcluster v1 order=2 threshold=0.06\nab\tab\nbroken line\n",
    )
    .unwrap();
    let out = run(&["stem", "--table", table.to_str().unwrap(), "ab"]);
    assert_single_line_error(&out, "format");
    assert!(String::from_utf8_lossy(&out.stderr).contains("t.tsv:3:"));
}

#[test]
fn evaluate_pure_and_impure_reports() {
    let dir = TempDir::new().unwrap();
    let gold = dir.path().join("gold.tsv");
    fs::write(&gold, "ab\tS1\nabc\tS1\nxy\tS2\n").unwrap();
    let pure = dir.path().join("pure.json");
    fs::write(&pure, r#"[{"stem":"ab","members":["ab","abc"]}]"#).unwrap();
    let impure = dir.path().join("impure.json");
    fs::write(&impure, r#"[{"stem":"ab","members":["ab","xy"]}]"#).unwrap();

    let json: serde_json::Value = serde_json::from_str(&run_ok(&[
        "evaluate",
        pure.to_str().unwrap(),
        gold.to_str().unwrap(),
    ]))
    .unwrap();
    assert_eq!(json["accuracy"], 1.0);
    assert_eq!(json["correct_words"], 2);

    let json: serde_json::Value = serde_json::from_str(&run_ok(&[
        "evaluate",
        impure.to_str().unwrap(),
        gold.to_str().unwrap(),
    ]))
    .unwrap();
    assert_eq!(json["accuracy"], 0.0);

    let out = run(&[
        "evaluate",
        impure.to_str().unwrap(),
        gold.to_str().unwrap(),
        "--min-accuracy",
        "0.5",
    ]);
    assert_single_line_error(&out, "accuracy");
    assert!(!out.stdout.is_empty());
}

#[test]
fn evaluate_demo_matches_committed_report() {
    let t = train_demo("greedy");
    let report = t.path("clusters.json");
    let gold = demo("gold.tsv");
    let out_path = t.path("eval.json");
    run_ok(&["evaluate", &report, gold.to_str().unwrap(), "-o", &out_path]);
    assert_eq!(
        fs::read_to_string(&out_path).unwrap(),
        fs::read_to_string(demo("expected_report.json")).unwrap()
    );

    let table = run_ok(&["evaluate", &report, gold.to_str().unwrap(), "--table"]);
    assert!(table.contains("Total Cluster    18\n"));
    assert!(table.ends_with("Accuracy         55%\n"));

    let strict = run_ok(&[
        "evaluate",
        &report,
        gold.to_str().unwrap(),
        "--strict",
        "--table",
    ]);
    assert!(strict.contains("Correct Cluster  8\n"));
}

#[test]
fn evaluate_accepts_affinity_reports() {
    let t = train_demo("ap-coeff");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(t.path("clusters.json")).unwrap()).unwrap();
    assert_eq!(json["mode"], "coefficient");
    for cluster in json["clusters"].as_array().unwrap() {
        let members = cluster["members"].as_array().unwrap();
        assert!(members.contains(&cluster["exemplar"]));
    }
    run_ok(&[
        "evaluate",
        &t.path("clusters.json"),
        demo("gold.tsv").to_str().unwrap(),
    ]);
    let table = fs::read_to_string(t.path("stems.tsv")).unwrap();
    assert!(table.starts_with("#stemcluster v1 backend=ap-coeff order=2+3\n"));
}

#[test]
fn evaluate_malformed_inputs() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("r.json");
    fs::write(&report, "not json").unwrap();
    let gold = dir.path().join("g.tsv");
    fs::write(&gold, "ab\tS1\nab\tS2\n").unwrap();
    assert_single_line_error(
        &run(&[
            "evaluate",
            report.to_str().unwrap(),
            demo("gold.tsv").to_str().unwrap(),
        ]),
        "format",
    );
    fs::write(&report, "[]").unwrap();
    assert_single_line_error(
        &run(&["evaluate", report.to_str().unwrap(), gold.to_str().unwrap()]),
        "format",
    );
}

#[test]
fn whole_pipeline_is_deterministic() {
    for backend in ["greedy", "ap-coeff", "ap-median"] {
        let a = train_demo(backend);
        let b = train_demo(backend);
        for file in ["lexicon.txt", "stems.tsv", "clusters.json"] {
            assert_eq!(
                fs::read(a.path(file)).unwrap(),
                fs::read(b.path(file)).unwrap(),
                "{backend} {file}"
            );
        }
    }
}
