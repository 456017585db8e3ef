use std::fs::File;

use dyadic_core::field::{read_coeffs_csv, read_grid_csv, write_coeffs_csv, write_grid_csv};
use dyadic_core::hardy::{assemble_martingale, CounterexampleSpec};
use dyadic_core::kernels::{fejer, verify_9a};
use dyadic_core::maxop::IndexFamily;
use dyadic_core::rational::ratio;

#[test]
fn grid_and_coefficient_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let k = fejer(13, 5).unwrap();
    let path = dir.path().join("k13.csv");
    write_grid_csv(&k, File::create(&path).unwrap()).unwrap();
    assert_eq!(read_grid_csv(File::open(&path).unwrap()).unwrap(), k);

    let coeffs = k.fwht();
    // multiplier (13 - j) / 13 for j < 13
    assert_eq!(coeffs.coeffs()[0], ratio(1, 1));
    assert_eq!(coeffs.coeffs()[12], ratio(1, 13));
    let path = dir.path().join("k13_coeffs.csv");
    write_coeffs_csv(&coeffs, File::create(&path).unwrap()).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("index,numerator,denominator\n0,1,1\n"));
    assert_eq!(read_coeffs_csv(File::open(&path).unwrap()).unwrap(), coeffs);
}

#[test]
fn malformed_grid_file_is_rejected() {
    let bad = "coset_index,numerator,denominator\n0,1,1\n1,2,0\n";
    assert!(read_grid_csv(bad.as_bytes()).is_err());
    let short = "coset_index,numerator,denominator\n0,1,1\n1,1,1\n2,1,1\n";
    assert!(read_grid_csv(short.as_bytes()).is_err());
}

#[test]
fn counterexample_spec_json_and_martingale_dump() {
    let spec = CounterexampleSpec::select(4, |s| IndexFamily::Beta.block_set(s)).unwrap();
    assert_eq!(spec.scales, vec![1, 2, 3, 4]);
    let json = spec.to_json().unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["lambdas"][0], serde_json::json!({"num": 1, "den": 2}));
    assert_eq!(CounterexampleSpec::from_json(&json).unwrap(), spec);

    let dir = tempfile::tempdir().unwrap();
    let martingale = assemble_martingale(&spec, 6).unwrap();
    let files = martingale.write_csv_dir(dir.path()).unwrap();
    assert_eq!(files.len(), 7);
    let top = read_grid_csv(File::open(&files[6]).unwrap()).unwrap();
    assert_eq!(&top, martingale.top());
}

#[test]
fn report_json_names_the_witness() {
    let report = verify_9a(11).unwrap();
    let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(value["check"], "9a");
    assert_eq!(value["range"], serde_json::json!([11, 11]));
    assert_eq!(value["witness"]["n"], 11);
    assert_eq!(value["pass"], true);
}
