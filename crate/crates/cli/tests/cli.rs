use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shadowrank"))
}

fn run(args: &[&str], out: &Path) -> Output {
    bin().args(args).arg("--out").arg(out).output().unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&v).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

fn numeric_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("csv" | "json")))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn unknown_experiment_exits_2_and_lists_names() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["run", "not-a-pipeline"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    for name in [
        "discs-methods",
        "discs-scaling",
        "slanted-squares",
        "planar-2d3d",
        "quasi-planar-slab",
        "parallel-lines",
        "line-modes",
        "custom",
    ] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn malformed_config_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("bad.json");
    fs::write(&cfg, r#"{"experiment": "custom", "cases": [{"shape": "triangle", "a": 1}]}"#).unwrap();
    let o = run(&["spectrum", "--config", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parallel-discs"));
    let o = run(&["spectrum", "--config", tmp.path().join("missing.json").to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn touching_domains_exit_3() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("touch.json");
    fs::write(&cfg, r#"{"experiment": "custom", "cases": [{"shape": "parallel-lines", "a": 4, "d": 0}]}"#).unwrap();
    let o = run(&["spectrum", "--config", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn shipped_configs_match_schema() {
    let v = schema("config.schema.json");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_valid(&v, &doc);
        shadowrank_cli::ExperimentConfig::load(&path).unwrap().validate().unwrap();
    }
    assert!(!v.is_valid(&serde_json::json!({"experiment": "fig4"})));
}

#[test]
fn summaries_match_schema() {
    let v = schema("summary.schema.json");
    let tmp = tempfile::tempdir().unwrap();
    let cfg = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/custom-plates.json");
    for stage in ["shadow", "spectrum", "analyze"] {
        let o = run(&[stage, "--config", cfg.to_str().unwrap()], tmp.path());
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let doc: Value =
            serde_json::from_slice(&fs::read(tmp.path().join(format!("custom/{stage}.summary.json"))).unwrap())
                .unwrap();
        assert_valid(&v, &doc);
    }
    for exp in ["line-modes", "parallel-lines"] {
        let o = run(&["run", exp], tmp.path());
        assert!(o.status.success());
        let doc: Value =
            serde_json::from_slice(&fs::read(tmp.path().join(format!("{exp}/run.summary.json"))).unwrap()).unwrap();
        assert_valid(&v, &doc);
    }
}

#[test]
fn seeded_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("rand.json");
    fs::write(
        &cfg,
        r#"{"experiment": "custom", "cases": [{"shape": "parallel-discs", "a": 2.5, "d": 2.5}], "method": "randomized", "taus": [1e-3, 1e-6]}"#,
    )
    .unwrap();
    let (a, b, c) = (tmp.path().join("a"), tmp.path().join("b"), tmp.path().join("c"));
    for (dir, threads) in [(&a, "1"), (&b, "3")] {
        let o = bin()
            .env("SHADOWRANK_THREADS", threads)
            .args(["run", "--config", cfg.to_str().unwrap(), "--out"])
            .arg(dir)
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let o = run(&["run", "line-modes"], dir);
        assert!(o.status.success());
    }
    for exp in ["custom", "line-modes"] {
        let fa = numeric_files(&a.join(exp));
        assert!(fa.len() >= 2);
        assert_eq!(fa, numeric_files(&b.join(exp)), "{exp}");
    }
    let o = bin().args(["run", "--config", cfg.to_str().unwrap(), "--seed", "7", "--out"]).arg(&c).output().unwrap();
    assert!(o.status.success());
    let doc: Value = serde_json::from_slice(&fs::read(c.join("custom/run.summary.json")).unwrap()).unwrap();
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["cases"][0]["spectrum"]["seed"], 7);
}

#[test]
fn discs_methods_single_case() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["run", "discs-methods", "--a", "2.5", "--d", "2.5"], tmp.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(tmp.path().join("discs-methods/parallel-discs_a2.5_d2.5.spectrum.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,sigma,sigma_norm"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    assert_eq!(first[2].parse::<f64>().unwrap(), 1.0);
    let doc: Value =
        serde_json::from_slice(&fs::read(tmp.path().join("discs-methods/run.summary.json")).unwrap()).unwrap();
    let methods: Vec<&str> =
        doc["cases"][0]["shadows"].as_array().unwrap().iter().map(|s| s["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["closed-form", "plane-wave-sweep"]);
    let o = run(&["run", "parallel-lines", "--a", "2"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}
