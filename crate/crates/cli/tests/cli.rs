use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dyadic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyadic")).args(args).output().expect("binary runs")
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn fejer_table_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.csv");
    let run = dyadic(&["kernel", "--kind", "fejer", "--n", "4", "--resolution", "4", "--output", out.to_str().unwrap()]);
    assert!(run.status.success());
    let table = rows(&out);
    assert_eq!(table.len(), 16);
    // K_4 = 5/2 on I_2, 1 on I_2(e_1), 1/2 on I_2(e_0), 0 on I_2(e_0 + e_1)
    for row in &table {
        let i: usize = row[0].parse().unwrap();
        let expected = match i % 4 {
            0 => ("5", "2"),
            1 => ("1", "2"),
            2 => ("1", "1"),
            _ => ("0", "1"),
        };
        assert_eq!((row[1].as_str(), row[2].as_str()), expected, "coset {i}");
    }
}

#[test]
fn dirichlet_power_of_two_is_an_indicator() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    let run = dyadic(&["kernel", "--kind", "dirichlet", "--n", "8", "--resolution", "4", "--output", out.to_str().unwrap()]);
    assert!(run.status.success());
    for row in rows(&out) {
        let i: u32 = row[0].parse().unwrap();
        let expected = if i.is_multiple_of(8) { "8" } else { "0" };
        assert_eq!(row[1], expected, "coset {i}");
        assert_eq!(row[2], "1");
    }
}

#[test]
fn kernel_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let run = dyadic(&["kernel", "--kind", "fejer", "--n", "11", "--resolution", "6", "--output", p.to_str().unwrap()]);
        assert!(run.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn kernel_rejects_unresolvable_index() {
    let run = dyadic(&["kernel", "--kind", "dirichlet", "--n", "17", "--resolution", "4"]);
    assert_eq!(run.status.code(), Some(64));
    assert!(!run.stderr.is_empty());
}

#[test]
fn kernel_json_format() {
    let run = dyadic(&["kernel", "--kind", "fejer", "--n", "3", "--resolution", "2", "--format", "json"]);
    assert!(run.status.success());
    let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(v["resolution"], 2);
    assert_eq!(v["values"].as_array().unwrap().len(), 4);
    assert_eq!(v["values"][0]["numerator"], "2");
}

#[test]
fn identity_sweep_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("9a.json");
    let run = dyadic(&["verify", "--check", "9a", "--max-n", "1024", "--output", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let report = &v[0];
    assert_eq!(report["check"], "9a");
    assert_eq!(report["pass"], true);
    assert_eq!(report["range"], serde_json::json!([1, 1024]));
    for key in ["resolution", "worst_ratio", "witness", "constant"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn prop1_sweep_to_4096_passes() {
    let run = dyadic(&["verify", "--check", "prop1", "--max-n", "4096"]);
    assert_eq!(run.status.code(), Some(0));
}

#[test]
fn tiny_constant_fails_with_witness() {
    let run = dyadic(&["verify", "--check", "prop2", "--max-n", "64", "--constant", "0.001"]);
    assert_eq!(run.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(v[0]["pass"], false);
    assert!(v[0]["witness"]["n"].as_u64().unwrap() <= 64);
    assert_eq!(v[0]["constant"], serde_json::json!({"num": 1, "den": 1000}));
}

#[test]
fn lemma2_without_resolution_is_a_usage_error() {
    assert_eq!(dyadic(&["verify", "--check", "lemma2", "--max-n", "3"]).status.code(), Some(64));
    assert_eq!(dyadic(&["verify", "--check", "lemma2", "--max-n", "3", "--resolution", "6"]).status.code(), Some(0));
    // n < M is required
    assert_eq!(dyadic(&["verify", "--check", "lemma2", "--max-n", "6", "--resolution", "6"]).status.code(), Some(2));
}

#[test]
fn blowup_refuses_bounded_family() {
    let run = dyadic(&["blowup", "--family", "powers"]);
    assert_eq!(run.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&run.stderr).contains("no blow-up predicted"));
}

#[test]
fn beta_growth_table_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("beta.csv");
    let run = dyadic(&["blowup", "--family", "beta", "--scales", "4..10", "--output", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    let header = fs::read_to_string(&out).unwrap().lines().next().unwrap().to_string();
    assert_eq!(header, "s,family,block_size,t_s,predicted_lower,min_region_margin,pass");
    let table = rows(&out);
    assert_eq!(table.len(), 7);
    let t: Vec<f64> = table.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(t.windows(2).all(|w| w[1] > w[0]), "{t:?}");
    for r in &table {
        assert_eq!(r[2], (r[0].parse::<usize>().unwrap() + 1).to_string());
    }
}

#[test]
fn alpha_margins_are_nonnegative() {
    let run = dyadic(&["blowup", "--family", "alpha", "--scales", "4..8", "--format", "json"]);
    assert_eq!(run.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    for row in v["rows"].as_array().unwrap() {
        assert!(row["min_region_margin"].as_f64().unwrap() >= 0.0);
    }
    assert_eq!(v["strictly_increasing"], true);
}

#[test]
fn bounded_sweep_reports_block_sizes() {
    let run = dyadic(&["bounded", "--family", "powers_plus_one", "--levels", "4..5", "--seeds", "10"]);
    assert_eq!(run.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["block_sizes"].as_array().unwrap().iter().all(|b| b["size"].as_u64().unwrap() <= 3));
    assert_eq!(dyadic(&["bounded", "--family", "alpha"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(dyadic(&[]).status.code(), Some(64));
    assert_eq!(dyadic(&["verify", "--check", "bogus", "--max-n", "3"]).status.code(), Some(64));
    assert_eq!(dyadic(&["blowup", "--family", "beta", "--scales", "9..4"]).status.code(), Some(64));
    assert_eq!(dyadic(&["blowup", "--family", "gamma"]).status.code(), Some(64));
    assert_eq!(dyadic(&["--help"]).status.code(), Some(0));
}
