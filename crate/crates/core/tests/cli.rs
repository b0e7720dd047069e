use std::process::{Command, Output};

fn superband(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superband"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_default_passes() {
    let o = superband(&["verify", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("0 failed"));
    // every claim tag appears exactly once
    let tags: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with('['))
        .map(|l| l.split_once("] ").unwrap().1.split(':').next().unwrap())
        .collect();
    let mut unique = tags.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), tags.len());
    assert!(tags.len() >= 40);
}

#[test]
fn verify_one_generator_warns_but_passes() {
    let o = superband(&["verify", "-n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[WARN]"));
    assert!(text.contains("0 failed"));
}

#[test]
fn verify_json_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# small run\nn_generators = 3\nalpha = g1 + g1.g2.g3\nseed = 5\n",
    )
    .unwrap();
    let out = dir.path().join("report.json");
    let o = superband(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["n_generators"], 3);
    assert_eq!(report["seed"], 5);
    assert!(report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] != "fail"));
}

#[test]
fn malformed_alpha_is_a_usage_error() {
    let o = superband(&["verify", "--alpha", "θ0+"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"));
    let o = superband(&["ann", "--alpha", "θ1.θ2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = superband(&["verify", "--format", "yaml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "gens = 3\n").unwrap();
    let o = superband(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown key"));
}

#[test]
fn eval_examples() {
    let o = superband(&["eval", "ber([[1,θ1],[θ2,1]])"]);
    assert_eq!(stdout(&o).trim(), "1 - θ1.θ2");
    let o = superband(&["eval", "--ascii", "ber([[1,g1],[g2,1]])"]);
    assert_eq!(stdout(&o).trim(), "1 - g1.g2");
    let o = superband(&["eval", "str([[2,0],[0,1]])"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = superband(&["eval", "ber([[1,θ1],[θ2,θ1.θ2]])"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-invertible body"));
    let o = superband(&["eval", "(1 + θ1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cayley_symbolic_wreath_csv() {
    let o = superband(&["cayley", "wreath", "--symbolic", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rows = text.lines();
    assert_eq!(
        rows.next().unwrap(),
        "*,e,p[t],p[u],q[t],q[u],r[t;u],r[u;t],r[t;w],r[v;w]"
    );
    assert_eq!(
        rows.next().unwrap(),
        "e,e,e,e,q[t],q[u],q[u],q[t],q[w],q[w]"
    );
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn cayley_null_is_all_zero() {
    let o = superband(&["cayley", "null", "--grid", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 4);
    assert!(cells
        .iter()
        .flat_map(|r| r.as_array().unwrap())
        .all(|c| c == "z"));
}

#[test]
fn cayley_band_grid_is_closed() {
    let o = superband(&["cayley", "band", "2", "--grid", "2x2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["labels"].as_array().unwrap().len(), 16);
    assert_eq!(v["closed"], true);
}

#[test]
fn eggbox_exports() {
    let o = superband(&["eggbox", "(1|1)", "--axes", "R,L", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("rank=same").count(), 3);

    let o = superband(&["eggbox", "(2|2)", "--axes", "R1,R2,L1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["axes"], serde_json::json!(["R1", "R2", "L1"]));
    assert_eq!(v["classes_per_axis"], serde_json::json!([2, 2, 2]));
    assert!(v["cells"]["0,0,0"].is_array());

    let o = superband(&["eggbox", "(1|1)", "--axes", "R,R"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("duplicate axis"));
    let o = superband(&["eggbox", "(1|1)", "--axes", "Q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ann_reports() {
    let o = superband(&["ann", "-n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["basis"], serde_json::json!(["θ1.θ2", "θ1.θ3"]));
    let o = superband(&["ann", "-n", "1"]);
    assert!(stdout(&o).contains("dimension: 0"));
    let o = superband(&["ann", "--alpha", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = superband(&["verify", "--seed", "11"]);
    let b = superband(&["verify", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}
