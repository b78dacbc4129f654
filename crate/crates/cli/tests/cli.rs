use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heun-qes")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn assert_schema(name: &str, doc: &Value) {
    let path = format!("{}/schema/{name}", env!("CARGO_MANIFEST_DIR"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

fn energies(doc: &Value) -> Vec<f64> {
    doc["energies"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect()
}

#[test]
fn spectrum_two_levels() {
    let out = run(&["spectrum", "--potential", "v1", "--l", "2", "--k2", "0.5", "--family", "ring5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_schema("spectrum.schema.json", &doc);
    assert_eq!(doc["truncation_N"], 1);
    assert_eq!(doc["arscott_ok"], true);
    let e = energies(&doc);
    let r = 11f64.sqrt();
    assert_eq!(e.len(), 2);
    assert!((e[0] + 6.0 + r).abs() < 1e-10 && (e[1] + 6.0 - r).abs() < 1e-10);
}

#[test]
fn spectrum_closed_form() {
    let out = run(&["spectrum", "--potential", "v1", "--l", "-1.5", "--k2", "0.5", "--family", "bold5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_schema("spectrum.schema.json", &doc);
    assert!((energies(&doc)[0] + 1.375).abs() < 1e-12);
    assert_eq!(doc["closed_form_match"], true);
}

#[test]
fn spectrum_complex_pair_is_not_returned() {
    let out = run(&["spectrum", "--potential", "v2", "--l", "-0.5", "--k2", "0.5", "--family", "bar5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_schema("spectrum.schema.json", &doc);
    assert!(energies(&doc).is_empty());
    assert_eq!(doc["missing_real_roots"], 2);
    assert_eq!(doc["complex_roots"].as_array().unwrap().len(), 2);
    assert_eq!(doc["closed_form_match"], true);
}

#[test]
fn spectrum_infinite_family() {
    let out = run(&["spectrum", "--potential", "v1", "--l", "0.3", "--k2", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_schema("spectrum.schema.json", &doc);
    assert_eq!(doc["series"], "infinite");
    assert_eq!(doc["truncation_N"], Value::Null);
    let e = energies(&doc);
    assert_eq!(e.len(), 5);
    assert!(e.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn domain_errors_exit_2() {
    for args in [
        &["spectrum", "--potential", "v1", "--l", "2", "--k2", "1.5"][..],
        &["spectrum", "--potential", "v1", "--l", "2", "--k2", "0.5", "--family", "bar5"],
        &["spectrum", "--potential", "v3", "--l", "2", "--k2", "0.5"],
        &["eigenfunction", "--potential", "v1", "--l", "2", "--k2", "0.5", "--grid", "8"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn eigenfunction_table() {
    let args = ["eigenfunction", "--potential", "v1", "--l", "2", "--k2", "0.5", "--family", "ring6"];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# u psi"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let mut it = l.split(' ').map(|x| x.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 256);
    // odd family vanishes at the first sample, u = 0
    assert!(rows[0].1.abs() < 1e-10);
    assert!(rows.iter().any(|r| r.1.abs() > 1e-3));
    let kk = rows.last().unwrap().0 / (1.0 - 1e-3);
    assert!((kk - 1.854_074_677_301_372).abs() < 1e-12);
    // 15 significant digits
    assert!(text.lines().nth(2).unwrap().split(' ').all(|x| x.split('e').next().unwrap().len() >= 16));
    assert_eq!(stdout(&run(&args)), text);
}

#[test]
fn eigenfunction_json() {
    let out = run(&[
        "eigenfunction",
        "--potential",
        "v2",
        "--l",
        "1",
        "--k2",
        "0.5",
        "--family",
        "ring5",
        "--format",
        "json",
        "--grid",
        "32",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_schema("eigenfunction.schema.json", &doc);
    assert_eq!(doc["psi"].as_array().unwrap().len(), 32);
}

#[test]
fn eigenfunction_bad_index_exits_3() {
    let out =
        run(&["eigenfunction", "--potential", "v1", "--l", "2", "--k2", "0.5", "--family", "ring5", "--index", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_passes_at_l0() {
    let out = run(&["verify", "--potential", "v1", "--l", "0", "--k2", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_schema("verify.schema.json", &doc);
    assert_eq!(doc["passed"], true);
}

#[test]
fn verify_detects_energy_override() {
    let out = run(&["verify", "--potential", "v1", "--l", "0", "--k2", "0.5", "--energy-override", "-0.99"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_schema("verify.schema.json", &doc);
    let residual = doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == "ode_residual").unwrap();
    assert_eq!(residual["passed"], false);
}

#[test]
fn verify_reports_arscott_flag() {
    let out = run(&["verify", "--potential", "v2", "--l", "2.5", "--k2", "0.5", "--family", "bar5"]);
    let doc = json(&out);
    assert_schema("verify.schema.json", &doc);
    assert_eq!(doc["arscott"][0]["arscott_ok"], false);
    // the flag alone is not a failed check
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| !c["name"].as_str().unwrap().contains("arscott")));
}

#[test]
fn sweep_closed_form() {
    let out = run(&["sweep", "--potential", "v1", "--l", "-1.5", "--family", "bold5", "--k2", "0.25,0.5,0.75"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k2,l,family,index,energy"));
    let e: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    for (got, want) in e.iter().zip([-0.9375, -1.375, -1.8125]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn sweep_point_matches_spectrum() {
    let base = ["--potential", "v2", "--l", "3", "--family", "ring7"];
    let sweep = stdout(&run(&[&["sweep"][..], &base, &["--k2", "0.4"]].concat()));
    let doc = json(&run(&[&["spectrum"][..], &base, &["--k2", "0.4"]].concat()));
    let from_sweep: Vec<f64> = sweep.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(from_sweep, energies(&doc));
}

#[test]
fn sweep_is_deterministic_and_sorted() {
    let args = ["sweep", "--potential", "v1", "--l", "3", "--k2", "0.7,0.2,0.5"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    let k2: Vec<f64> = a.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(k2.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn sweep_empty_range_exits_2() {
    let out = run(&["sweep", "--potential", "v1", "--l", "2", "--k2-range", "0.1:0.9:0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_hundred_points() {
    let start = std::time::Instant::now();
    let out = run(&["sweep", "--potential", "v1", "--l", "4", "--family", "ring5", "--k2-range", "0.01:0.99:100"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1 + 100 * 3);
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn sweep_independent_of_worker_count() {
    let args = ["sweep", "--potential", "v2", "--l", "2", "--k2-range", "0.05:0.95:19"];
    let single =
        Command::new(env!("CARGO_BIN_EXE_heun-qes")).args(args).env("RAYON_NUM_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_heun-qes")).args(args).env("RAYON_NUM_THREADS", "8").output().unwrap();
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(single.stdout, many.stdout);
}
