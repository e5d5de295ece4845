use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn subsel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subsel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = subsel(&[
            "generate",
            "--case",
            "3",
            "--n",
            "500",
            "--seed",
            "9",
            "--output-dir",
            path(out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for file in ["data.csv", "data.meta.json"] {
        assert_eq!(
            fs::read(a.join(file)).unwrap(),
            fs::read(b.join(file)).unwrap(),
            "{file}"
        );
    }
    let meta: serde_json::Value =
        serde_json::from_slice(&fs::read(a.join("data.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["dataset"]["case"], 3);
    assert_eq!(meta["dataset"]["beta"].as_array().unwrap().len(), 7);
    assert_eq!(meta["seed"], 9);
    let csv = fs::read_to_string(a.join("data.csv")).unwrap();
    assert_eq!(csv.lines().count(), 501);
    assert!(csv.starts_with("x1,x2,x3,x4,x5,x6,x7,y\n"));
}

#[test]
fn unknown_case_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = subsel(&["generate", "--case", "9", "--output-dir", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1-6"));
}

#[test]
fn missing_input_names_the_path() {
    let o = subsel(&["select", "--input", "/nonexistent/data.csv", "--k", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/data.csv"));
}

#[test]
fn select_writes_indices_report_and_fit() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(subsel(&[
        "generate",
        "--n",
        "2000",
        "--seed",
        "1",
        "--output-dir",
        path(d)
    ])
    .status
    .success());
    let data = d.join("data.csv");

    let small_k = subsel(&[
        "select",
        "--input",
        path(&data),
        "--k",
        "7",
        "--output-dir",
        path(d),
    ]);
    assert_eq!(small_k.status.code(), Some(2));

    let out = d.join("sel");
    let o = subsel(&[
        "select",
        "--input",
        path(&data),
        "--response",
        "y",
        "--algorithm",
        "alg2",
        "--k",
        "150",
        "--output-dir",
        path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let indices: Vec<usize> = fs::read_to_string(out.join("indices.csv"))
        .unwrap()
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    assert_eq!(indices.len(), 150);
    assert!(indices.iter().all(|&i| i < 2000));

    let report: serde_json::Value =
        serde_json::from_slice(&fs::read(out.join("selection.json")).unwrap()).unwrap();
    assert_eq!(report["report"]["algorithm"], "alg2");
    assert_eq!(report["report"]["k"], 150);
    let fitted = &report["fitted_model"];
    assert_eq!(
        fitted["beta_original"].as_array().unwrap().len(),
        fitted["beta_scaled"].as_array().unwrap().len()
    );
    assert!(out.join("scale_map.json").is_file());
    assert!(fs::read_to_string(out.join("candidates.csv"))
        .unwrap()
        .starts_with("model_mask,p_r,rss,bic"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let config = d.join("run.toml");
    fs::write(&config, "case = [6]\nn = 300\nseed = 5\n").unwrap();
    let o = subsel(&[
        "--config",
        path(&config),
        "generate",
        "--n",
        "120",
        "--output-dir",
        path(d),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let meta: serde_json::Value =
        serde_json::from_slice(&fs::read(d.join("data.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["dataset"]["case"], 6);
    assert_eq!(meta["dataset"]["n"], 120);
    assert_eq!(meta["seed"], 5);

    fs::write(&config, "bogus-key = 1\n").unwrap();
    let o = subsel(&[
        "--config",
        path(&config),
        "generate",
        "--output-dir",
        path(d),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = subsel(&[
        "sweep",
        "--case",
        "1",
        "--n",
        "1500",
        "--k",
        "100,200",
        "--replicates",
        "3",
        "--algorithm",
        "levss,alg2",
        "--search",
        "forward",
        "--output-dir",
        path(d),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = fs::read_to_string(d.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 4);
    let outcomes = fs::read_to_string(d.join("outcomes.csv")).unwrap();
    assert_eq!(outcomes.lines().count(), 1 + 12);

    let o = subsel(&[
        "report",
        "--input",
        path(&d.join("summary.csv")),
        "--output-dir",
        path(d),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for svg in ["accuracy.svg", "mspe.svg"] {
        assert!(fs::read_to_string(d.join(svg)).unwrap().starts_with("<svg"));
    }
}

#[test]
fn bench_writes_one_row_per_k() {
    let dir = tempfile::tempdir().unwrap();
    let o = subsel(&[
        "bench",
        "--n",
        "2000",
        "--k",
        "50,120",
        "--runs",
        "1",
        "--output-dir",
        path(dir.path()),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = fs::read_to_string(dir.path().join("timing.csv")).unwrap();
    let rows: Vec<&str> = table.lines().collect();
    assert_eq!(rows[0], "k,levss,alg1,alg2");
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("50,") && rows[2].starts_with("120,"));
}
