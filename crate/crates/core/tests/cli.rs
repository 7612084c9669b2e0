use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newtonpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn analyze_power_family() {
    let out = run(&["analyze", "(x2-x1^2)^4", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["heightData"]["h"], "4");
    assert_eq!(v["rHeight"]["value"], "3");
    assert_eq!(v["criticalExponents"]["restrictionPcPrime"], "8");
}

#[test]
fn analyze_cross() {
    let v = json(&run(&["analyze", "x1^2*x2^2", "--no-timestamp"]));
    assert_eq!(v["heightData"]["h"], "2");
    assert_eq!(v["heightData"]["nu"], 1);
    assert_eq!(v["criticalExponents"]["restrictionPcPrime"], "6");
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["analyze", "x1^"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax"));
    assert!(out.stdout.is_empty());
}

#[test]
fn pipeline_and_budget_exit_codes() {
    assert_eq!(run(&["analyze", "x1+x2^2"]).status.code(), Some(3));
    let out = run(&["verify", "x1^2+x2^2", "--mode", "decay", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn timestamps_are_optional() {
    let v = json(&run(&["analyze", "x1^2+x2^2"]));
    assert!(v["generatedAt"].as_u64().unwrap() > 1_600_000_000);
    let v = json(&run(&["analyze", "x1^2+x2^2", "--no-timestamp"]));
    assert!(v.get("generatedAt").is_none());
}

#[test]
fn runs_are_byte_identical() {
    let args = ["verify", "x1^4+x2^2", "--mode", "sublevel", "--json", "--no-timestamp", "--seed", "11"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["analyze", "(x2-x1^2)^2+x1^5", "--no-timestamp"]);
    let b = run(&["analyze", "(x2-x1^2)^2+x1^5", "--no-timestamp"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_decay_writes_csv() {
    let dir = scratch("decay");
    let d = dir.to_str().unwrap();
    let out = run(&["verify", "x1^4+x2^2", "--mode", "decay", "--csv-dir", d, "--json", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["prediction"]["decayRate"], "3/4");
    let slope = v["result"]["fit"]["slope"].as_f64().unwrap();
    assert!((slope + 0.75).abs() < 0.05, "{slope}");
    let csv = std::fs::read_to_string(dir.join("decay.csv")).unwrap();
    assert!(csv.starts_with("lambda,s1,s2,reI,imI,absI,estErr\n"));
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn verify_sublevel_text_summary() {
    let out = run(&["verify", "x1^4+x2^2", "--mode", "sublevel"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("sublevel pass: exponent=0.75"), "{text}");
}

#[test]
fn verify_knapp_horizontal_box() {
    let dir = scratch("knapp");
    let path = dir.join("summary.json");
    let out = run(&[
        "verify", "(x2-x1^2)^4", "--mode", "knapp", "--edge", "horizontal", "--eps-seq", "4:20",
        "--out", path.to_str().unwrap(), "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["necessityBound"], "8");
    let series = &v["result"]["series"][0];
    assert_eq!(series["boxes"].as_array().unwrap().len(), 17);
    for b in series["boxes"].as_array().unwrap() {
        assert!((b["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn verify_integrability_boundary() {
    let out = run(&["verify", "x1^4+x2^2", "--mode", "integrability", "--p", "4/3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["prediction"], "boundary-divergent");
}

#[test]
fn config_file_supplies_defaults() {
    let dir = scratch("config");
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "# defaults\nlambda-min = 2^8\nlambda-max=2^15\nno-timestamp=true\njson=true\n").unwrap();
    let out = run(&["verify", "x1^2+x2^2", "--mode", "decay", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v.get("generatedAt").is_none());
    assert_eq!(v["result"]["integrals"].as_array().unwrap().len(), 8);
    // Flags win over the file.
    let out = run(&["verify", "x1^2+x2^2", "--mode", "decay", "--config", cfg.to_str().unwrap(), "--lambda-max", "2^16"]);
    assert_eq!(json(&out)["result"]["integrals"].as_array().unwrap().len(), 9);

    std::fs::write(&cfg, "bogus=1\n").unwrap();
    assert_eq!(run(&["analyze", "x1^2+x2^2", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}
