use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn sample() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/assets/sample_corpus.csv")
}

fn reqclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reqclass"))
        .args(args)
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn show_defaults_is_a_valid_config() {
    let o = reqclass(&["report", "--show-defaults"]);
    assert!(o.status.success());
    let cfg = reqclass::experiment::ExperimentConfig::from_toml(&stdout(&o)).unwrap();
    assert_eq!(cfg, Default::default());
}

#[test]
fn ingest_counts_labels() {
    let dir = tempfile::tempdir().unwrap();
    let o = reqclass(&["--out", s(dir.path()), "ingest", "--input", s(&sample())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 95);
    assert_eq!(v["labels"]["F"], 40);
    let written = reqclass::corpus::read_corpus_file(&dir.path().join("corpus.csv"), None).unwrap();
    assert_eq!(written.len(), 95);
}

#[test]
fn preprocess_raw_is_verbatim_and_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("raw");
    let o = reqclass(&["--out", s(&out), "preprocess", "--input", s(&sample()), "--raw"]);
    assert!(o.status.success());
    let input = reqclass::corpus::read_corpus_file(&sample(), None).unwrap();
    let output = reqclass::corpus::read_corpus_file(&out.join("processed.csv"), None).unwrap();
    assert_eq!(input, output);

    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        assert!(reqclass(&["--out", s(d), "preprocess", "--input", s(&sample())])
            .status
            .success());
    }
    for f in ["processed.csv", "audit.json"] {
        assert_eq!(
            std::fs::read(a.join(f)).unwrap(),
            std::fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
    let audit: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("audit.json")).unwrap()).unwrap();
    assert_eq!(audit.as_array().unwrap().len(), 95);
}

#[test]
fn csv_audit_log() {
    let dir = tempfile::tempdir().unwrap();
    let o = reqclass(&[
        "--out",
        s(dir.path()),
        "--format",
        "csv",
        "preprocess",
        "--input",
        s(&sample()),
        "--no-rules",
    ]);
    assert!(o.status.success());
    let audit = std::fs::read_to_string(dir.path().join("audit.csv")).unwrap();
    assert!(audit.starts_with("id,stage,rule,before,after\n"));
    assert!(audit.contains(",blinding,"));
    assert!(!audit.contains(",rules,"));
}

#[test]
fn evaluate_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let o = reqclass(&[
            "--out",
            s(d),
            "--seed",
            "7",
            "evaluate",
            "--input",
            s(&sample()),
            "--folds",
            "5",
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in [
        "fr-nfr-tree-processed.json",
        "fr-nfr-tree-processed.csv",
        "fr-nfr-tree-processed-confusion.csv",
    ] {
        assert_eq!(
            std::fs::read(a.join(f)).unwrap(),
            std::fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
    let csv = std::fs::read_to_string(a.join("fr-nfr-tree-processed.csv")).unwrap();
    assert!(csv.starts_with("Class,Correctly Classified,Incorrectly Classified,Precision,Recall,F-Measure,Kappa\n"));
}

#[test]
fn config_file_drives_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    std::fs::write(
        &cfg,
        format!(
            "task = \"nfr-sub\"\nmethod = \"kmeans\"\nout = \"results\"\n[corpus]\npath = {:?}\n[cluster]\nk = 6\n",
            s(&sample())
        ),
    )
    .unwrap();
    let o = reqclass(&["--config", s(&cfg), "--format", "csv", "evaluate"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("Total,"));
    // `out` in the file is relative to the working directory, --out wins when given
    let o = reqclass(&["--config", s(&cfg), "--out", s(dir.path()), "evaluate"]);
    assert!(o.status.success());
    assert!(dir.path().join("nfr-sub-kmeans-processed-diagnostics.csv").exists());
}

#[test]
fn compare_builds_a_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = s(dir.path());
    let input = sample();
    for m in ["bnb", "kmeans"] {
        for raw in [false, true] {
            let mut args = vec![
                "--out",
                out,
                "evaluate",
                "--input",
                s(&input),
                "--task",
                "nfr-sub",
                "--method",
                m,
            ];
            if raw {
                args.push("--raw");
            }
            assert!(reqclass(&args).status.success());
        }
    }
    let f = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let files = [
        f("nfr-sub-bnb-processed.json"),
        f("nfr-sub-bnb-raw.json"),
        f("nfr-sub-kmeans-processed.json"),
        f("nfr-sub-kmeans-raw.json"),
    ];
    let mut args = vec!["--out", out, "--format", "csv", "compare"];
    args.extend(files.iter().map(String::as_str));
    let o = reqclass(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let grid = stdout(&o);
    let lines: Vec<&str> = grid.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("Algorithm,"));
    assert!(lines[0].ends_with("Total[P] R,Total[P] P,Total[UP] R,Total[UP] P"));
    assert!(lines[1].starts_with("Naive Bayes,"));
    assert!(lines[2].starts_with("K-means,"));

    // two identical reports give identical rows
    let p = f("nfr-sub-bnb-processed.json");
    let o = reqclass(&["--out", out, "--format", "csv", "compare", &p, &p]);
    let grid = stdout(&o);
    let rows: Vec<&str> = grid.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], rows[1]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = s(dir.path());
    // usage
    assert_eq!(reqclass(&["--bogus"]).status.code(), Some(1));
    assert_eq!(reqclass(&["evaluate"]).status.code(), Some(1));
    assert_eq!(
        reqclass(&["evaluate", "--input", s(&sample()), "--method", "lda"])
            .status
            .code(),
        Some(1)
    );
    let one = dir.path().join("one.json");
    assert_eq!(reqclass(&["compare", s(&one)]).status.code(), Some(1));
    let bad_cfg = dir.path().join("bad.toml");
    std::fs::write(&bad_cfg, "method = 3\n").unwrap();
    assert_eq!(reqclass(&["--config", s(&bad_cfg), "ingest"]).status.code(), Some(1));
    assert_eq!(
        reqclass(&["--config", s(&dir.path().join("missing.toml")), "ingest"])
            .status
            .code(),
        Some(1)
    );

    // data
    assert_eq!(
        reqclass(&["--out", out, "ingest", "--input", s(&dir.path().join("nope.csv"))])
            .status
            .code(),
        Some(2)
    );
    let broken = dir.path().join("broken.csv");
    std::fs::write(&broken, "project_id,text,label\n1,\"text\",ZZ\n").unwrap();
    assert_eq!(
        reqclass(&["--out", out, "ingest", "--input", s(&broken)]).status.code(),
        Some(2)
    );

    // mismatched label sets
    assert!(
        reqclass(&["--out", out, "evaluate", "--input", s(&sample()), "--folds", "5"])
            .status
            .success()
    );
    assert!(
        reqclass(&["--out", out, "evaluate", "--input", s(&sample()), "--task", "nfr-sub"])
            .status
            .success()
    );
    let a = dir.path().join("fr-nfr-tree-processed.json");
    let b = dir.path().join("nfr-sub-bnb-processed.json");
    assert_eq!(
        reqclass(&["--out", out, "compare", s(&a), s(&b)]).status.code(),
        Some(2)
    );

    assert_eq!(reqclass(&["--help"]).status.code(), Some(0));
}
