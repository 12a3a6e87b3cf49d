use std::process::{Command, Output};

use serde_json::Value;

fn loggas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loggas"))
        .args(args)
        .output()
        .expect("run loggas")
}

fn ok_stdout(args: &[&str]) -> Vec<u8> {
    let out = loggas(args);
    assert!(
        out.status.success(),
        "loggas {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn json(args: &[&str]) -> Value {
    serde_json::from_slice(&ok_stdout(args)).expect("valid JSON")
}

#[test]
fn sample_is_reproducible() {
    let args = ["sample", "--n", "4", "--beta", "2", "--reps", "10", "--seed", "7"];
    let a = ok_stdout(&args);
    let b = ok_stdout(&args);
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("rep,x1,x2,x3,x4"));
    assert_eq!(lines.count(), 10);
    let other = ok_stdout(&["sample", "--n", "4", "--beta", "2", "--reps", "10", "--seed", "8"]);
    assert_ne!(text.as_bytes(), &other[..]);
}

#[test]
fn results_do_not_depend_on_threads() {
    let base = ["sample", "--n", "6", "--beta", "1.5", "--reps", "50", "--seed", "3"];
    let one = ok_stdout(&[&base[..], &["--threads", "1"]].concat());
    let three = ok_stdout(&[&base[..], &["--threads", "3"]].concat());
    assert_eq!(one, three);

    let verify = ["verify", "poincare", "--n", "3", "--beta", "2", "--fn", "max", "--reps", "5000"];
    let one = ok_stdout(&[&verify[..], &["--threads", "1"]].concat());
    let four = ok_stdout(&[&verify[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);

    let couple = [
        "dou", "couple", "--n", "3", "--beta", "2", "--t-end", "0.2", "--reps", "20", "--record-every", "20",
    ];
    let one = ok_stdout(&[&couple[..], &["--threads", "1"]].concat());
    let two = ok_stdout(&[&couple[..], &["--threads", "2"]].concat());
    assert_eq!(one, two);
}

#[test]
fn domain_errors_exit_2() {
    for args in [
        &["sample", "--n", "0", "--beta", "2"][..],
        &["sample", "--n", "3", "--beta", "-1"],
        &["sample", "--n", "3", "--beta", "1", "--method", "gue-dense"],
        &["verify", "poincare", "--n", "3", "--beta", "2", "--fn", "linear:1,1"],
        &["verify", "lsi", "--n", "3", "--beta", "2", "--fn", "explin:0.3", "--reps", "10"],
        &["dou", "simulate", "--n", "3", "--beta", "2", "--dt", "0.5"],
        &["lassalle", "--n", "3", "--max-degree", "9"],
        &["sample", "--n", "3"],
        &["no-such-command"],
    ] {
        let out = loggas(args);
        assert_eq!(out.status.code(), Some(2), "loggas {args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn malformed_config_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# comment\nn = 4\nbeta 2\n").unwrap();
    let out = loggas(&["sample", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    std::fs::write(&cfg, "n = 4\nbeta = 2\nbetta = 3\n").unwrap();
    let out = loggas(&["sample", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("betta"));
}

#[test]
fn flag_overrides_config_with_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "n = 2\nbeta = 2\nreps = 3\n").unwrap();
    let v = json(&["sample", "--config", cfg.to_str().unwrap(), "--beta", "4", "--format", "json"]);
    let params = &v["manifest"]["parameters"];
    assert_eq!(params["beta"]["value"], "4");
    assert_eq!(params["beta"]["source"], "flag");
    assert_eq!(params["n"]["source"], "file");
    assert_eq!(params["seed"]["source"], "default");
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);
}

#[test]
fn out_file_gets_manifest_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spectra.csv");
    let status = loggas(&["sample", "--n", "5", "--beta", "2", "--reps", "20", "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let manifest: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("spectra.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "sample");
    assert_eq!(manifest["seed"], 0);
    assert_eq!(manifest["outputs"][0]["sha256"].as_str().unwrap().len(), 64);

    let stats = json(&["spectrum-stats", "--in", out.to_str().unwrap(), "--beta", "2"]);
    assert_eq!(stats["spectra"].as_array().unwrap().len(), 20);
    assert_eq!(stats["pooled"]["atoms"], 100);
    let w2 = stats["pooled"]["w2_semicircle"].as_f64().unwrap();
    assert!(w2 > 0.0 && w2 < 0.2, "{w2}");
}

#[test]
fn stats_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.csv");
    std::fs::write(&p, "rep,x1,x2\n0,1.0,oops\n").unwrap();
    let out = loggas(&["spectrum-stats", "--in", p.to_str().unwrap(), "--beta", "2"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&p, "a,b\n1,2\n").unwrap();
    let out = loggas(&["spectrum-stats", "--in", p.to_str().unwrap(), "--beta", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lassalle_low_degree() {
    let v = json(&["lassalle", "--n", "3", "--max-degree", "2"]);
    assert_eq!(v["schema"], "loggas.lassalle.v1");
    let polys = v["polynomials"].as_array().unwrap();
    let eig: Vec<&str> = polys.iter().map(|p| p["eigenvalue"].as_str().unwrap()).collect();
    assert_eq!(eig, ["0", "-3", "-6", "-6"]);
    let p2 = polys.iter().find(|p| p["partition"] == "2").unwrap();
    assert_eq!(p2["coefficients"]["2"], "1");
    assert_eq!(p2["coefficients"][""], "-1 - b");

    let exact = json(&["lassalle", "--n", "3", "--beta", "1/2", "--max-degree", "2"]);
    let p2 = exact["polynomials"].as_array().unwrap().iter().find(|p| p["partition"] == "2").unwrap();
    assert_eq!(p2["coefficients"][""], "-3/2");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lassalle.json");
    let quiet = ok_stdout(&["lassalle", "--n", "3", "--beta", "1/2", "--max-degree", "2", "--json-out", path.to_str().unwrap()]);
    assert!(quiet.is_empty());
    let written: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(written["polynomials"], exact["polynomials"]);
    assert!(dir.path().join("lassalle.json.manifest.json").exists());
}

#[test]
fn poincare_equality_for_trace() {
    let v = json(&[
        "verify", "poincare", "--fn", "linear:1,1,1,1", "--n", "4", "--beta", "2", "--reps", "100000", "--out", "json",
    ]);
    assert_eq!(v["schema"], "loggas.verify-poincare.v1");
    assert_eq!(v["report"]["verdict"], "equality_within_error");
    let v = json(&["verify", "poincare", "--fn", "linear:1,-1", "--n", "2", "--beta", "2", "--reps", "100000"]);
    assert_eq!(v["report"]["verdict"], "strict_inequality");
}

#[test]
fn tails_csv_is_two_columns() {
    let text = String::from_utf8(ok_stdout(&[
        "verify", "tails", "--fn", "max", "--n", "8", "--beta", "2", "--reps", "20000", "--format", "csv",
    ]))
    .unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,empirical"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 >= w[1].1));
}

#[test]
fn polynomial_function_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p2.json");
    std::fs::write(&p, r#"{"coefficients": {"2": "1", "": "-1 - 1/2*b"}}"#).unwrap();
    let spec = format!("poly:{}", p.display());
    let v = json(&["verify", "poincare", "--fn", &spec, "--n", "2", "--beta", "2", "--reps", "50000"]);
    assert_ne!(v["report"]["verdict"], "violation");
}

#[test]
fn couple_csv_decays() {
    let text = String::from_utf8(ok_stdout(&[
        "dou", "couple", "--n", "4", "--beta", "2", "--rho", "4", "--t-end", "1", "--reps", "20", "--record-every",
        "250",
    ]))
    .unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,distance"));
    let d: Vec<f64> = lines.map(|l| l.split_once(',').unwrap().1.parse().unwrap()).collect();
    assert_eq!(d.len(), 5);
    assert!(d.windows(2).all(|w| w[1] < w[0]));
    // Contraction at rate rho = 4 over one time unit.
    assert!(d[4] <= d[0] * (-3.8f64).exp());
}

#[test]
fn simulate_json_records_paths() {
    let v = json(&[
        "dou", "simulate", "--n", "3", "--beta", "0.5", "--dt", "0.001", "--t-end", "0.05", "--record-every", "10",
        "--scheme", "euler-reflected", "--x0", "equispaced[-1,1]", "--format", "json",
    ]);
    let path = &v["paths"][0];
    assert_eq!(path["t"].as_array().unwrap().len(), 6);
    assert_eq!(path["x"][0], serde_json::json!([1.0, 0.0, -1.0]));
    for x in path["x"].as_array().unwrap() {
        let x: Vec<f64> = x.as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
        assert!(x.windows(2).all(|w| w[0] >= w[1]));
    }
}
