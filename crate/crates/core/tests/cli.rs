use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use slitwave::output::OutputRecord;
use slitwave::scenarios::count_peaks;
use slitwave::series::{Axis, Series};

fn slitwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slitwave")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn number(o: &Output) -> f64 {
    stdout(o).split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn shutter_csv_has_two_columns_and_quarter_at_arrival() {
    let o = slitwave(&["scenario", "fig1_shutter", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("# tool: slitwave "));
    let rec = OutputRecord::from_csv(&text).unwrap();
    assert_eq!(rec.columns.len(), 2);
    assert_eq!(rec.columns[0].header, "t/T[1]");
    assert_eq!(rec.columns[1].header, "ratio[1]");
    let k = rec.columns[0].values.iter().position(|&x| (x - 1.0).abs() < 1e-12).unwrap();
    assert!((rec.columns[1].values[k] - 0.25).abs() < 1e-9);
    assert!(text.contains("# constant: hbar = 0.6582119569 eV*fs"));
}

#[test]
fn lindner_spectrum_has_seven_peaks() {
    let o = slitwave(&["scenario", "lindner_energy_spectrum"]);
    assert!(o.status.success());
    let rec = OutputRecord::from_csv(&stdout(&o)).unwrap();
    let s = Series::new(
        Axis::new("E", "eV"),
        Axis::new("rho", "1"),
        rec.columns[0].values.clone(),
        rec.columns[1].values.clone(),
    );
    assert_eq!(count_peaks(&s, 0.5).unwrap().count, 7);
}

#[test]
fn unknown_scenario_and_bad_overrides_exit_two() {
    let o = slitwave(&["scenario", "nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonexistent"));
    assert_eq!(slitwave(&["scenario", "fig1_shutter", "--set", "points=many"]).status.code(), Some(2));
    assert_eq!(slitwave(&["scenario", "fig1_shutter", "--set", "name=other"]).status.code(), Some(2));
    assert_eq!(slitwave(&["eval", "peak-spacing", "--tau", "96"]).status.code(), Some(2));
    assert_eq!(slitwave(&["eval", "displacement", "--energy", "0.3eV"]).status.code(), Some(2));
    assert_eq!(slitwave(&[]).status.code(), Some(2));
}

#[test]
fn eval_examples() {
    let o = slitwave(&["eval", "peak-spacing", "--tau", "96fs"]);
    assert!(stdout(&o).trim_end().ends_with("meV"));
    assert!((number(&o) / 43.1 - 1.0).abs() < 0.02);
    assert_eq!(number(&slitwave(&["eval", "visibility", "--alpha", "0.5"])), 1.0);
    let z = number(&slitwave(&["eval", "displacement", "--energy", "0.3eV", "--t", "900fs"]));
    assert!((z / 293.0 - 1.0).abs() < 0.01);
    let xi = number(&slitwave(&["eval", "period", "--energy", "0.3eV", "--tau", "120fs", "--z", "1626nm", "--t", "5000fs"]));
    assert!((xi - 287.0).abs() < 1.0);
    let r = number(&slitwave(&["eval", "shutter-ratio", "--energy", "0.3eV", "--z", "1626nm", "--t", "5005.347303269402fs"]));
    assert!((r - 0.25).abs() < 1e-9);
    let e1 = number(&slitwave(&["eval", "peak-energy", "--energy", "20eV", "--tau", "2fs", "--order", "-1"]));
    assert!(e1 < 20.0 && e1 > 17.0);
}

#[test]
fn output_regenerates_from_embedded_spec() {
    let out = tmp("tonomura.csv");
    let events = tmp("tonomura_events.csv");
    let o = slitwave(&[
        "scenario",
        "tonomura_space_slit",
        "--out",
        out.to_str().unwrap(),
        "--events-out",
        events.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let spec_line = text.lines().find_map(|l| l.strip_prefix("# spec: ")).unwrap();
    let spec = tmp("tonomura_spec.json");
    std::fs::write(&spec, spec_line).unwrap();
    let again = slitwave(&["scenario", "--spec", spec.to_str().unwrap()]);
    assert_eq!(stdout(&again), text);
    let hist = std::fs::read_to_string(&events).unwrap();
    let total: u64 = hist
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("lower"))
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 100_000);
}

#[test]
fn json_output_has_meta_and_series() {
    let o = slitwave(&["scenario", "complementarity_sweep", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["scenario"], "complementarity_sweep");
    let series = v["series"].as_object().unwrap();
    assert_eq!(series["visibility[1]"].as_array().unwrap().len(), 101);
    assert!(series.contains_key("alpha[1]"));
}

#[test]
fn overrides_change_the_run() {
    let o = slitwave(&["scenario", "wollenhaupt_energy_spectrum", "--set", "delay=48fs", "--set", "points=101"]);
    let rec = OutputRecord::from_csv(&stdout(&o)).unwrap();
    assert_eq!(rec.columns[0].values.len(), 101);
    let spacing = rec.quantity("peak_spacing_mev").unwrap();
    assert!((spacing / 86.16 - 1.0).abs() < 1e-3, "{spacing}");
}

#[test]
fn list_and_validate() {
    let o = slitwave(&["list"]);
    assert!(stdout(&o).contains("fig2_time_slit"));
    let specs: Value = serde_json::from_str(&stdout(&slitwave(&["list", "--json"]))).unwrap();
    assert_eq!(specs.as_array().unwrap().len(), 7);
    let coarse = slitwave(&["validate", "--coarse"]);
    assert_eq!(coarse.status.code(), Some(1));
    assert!(stdout(&coarse).contains("FAIL"));
}

#[test]
fn full_validation_passes() {
    let o = slitwave(&["validate", "--json"]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for c in report["checks"].as_array().unwrap() {
        assert_eq!(c["passed"], true, "{c}");
    }
    assert_eq!(o.status.code(), Some(0));
}
