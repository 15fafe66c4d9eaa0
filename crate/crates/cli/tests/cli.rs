use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use clap::Parser;
use pseudospin_cli::RunConfig;
use serde_json::Value;

fn pseudospin(args: &[&str], out: &Path, threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pseudospin"));
    cmd.args(args).arg("--out").arg(out);
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn ok(args: &[&str], out: &Path) -> Value {
    let o = pseudospin(args, out, None);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap()
}

fn rows(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path).unwrap().records().map(Result::unwrap).collect()
}

fn num(r: &csv::StringRecord, i: usize) -> f64 {
    r[i].parse().unwrap()
}

#[test]
fn bands_writes_one_row_per_wavenumber() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["bands", "--v", "3,1.5,0", "--m", "1", "--kmax", "5", "--nk", "400"];
    let manifest = ok(&args, dir.path());
    let t = rows(&dir.path().join("bands.csv"));
    assert_eq!(t.len(), 400);
    let panel = manifest["report"]["panel"].as_str().unwrap();
    assert!(t.iter().all(|r| &r[4] == panel));
    assert!(t.iter().all(|r| num(r, 1) <= num(r, 2) && num(r, 2) <= num(r, 3)));

    // The manifest records the parsed config exactly.
    let out = dir.path().to_str().unwrap();
    let parsed = RunConfig::try_parse_from(["pseudospin"].iter().chain(&args).chain(&["--out", out])).unwrap();
    let recorded: RunConfig = serde_json::from_value(manifest["config"].clone()).unwrap();
    assert_eq!(recorded, parsed);
    assert_eq!(manifest["library_version"], pseudospin_core::VERSION);
    assert!(manifest["timings"]["total_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn equal_strengths_shift_the_free_bands() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["bands", "--v", "2,2,2", "--nk", "21"], dir.path());
    for r in rows(&dir.path().join("bands.csv")) {
        let k = num(&r, 0);
        let free = (k * k + 1.0).sqrt();
        assert!((num(&r, 1) - (2.0 - free)).abs() < 1e-10);
        assert!((num(&r, 2) - 2.0).abs() < 1e-10);
        assert!((num(&r, 3) - (2.0 + free)).abs() < 1e-10);
    }
}

#[test]
fn flat_reports_the_b_plane() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = ok(&["flat", "--v11", "-0.5", "--v33", "1.5", "--m", "1"], dir.path());
    assert_eq!(manifest["report"]["flat"]["on_b"], true);
    assert_eq!(manifest["report"]["flat"]["on_a"], false);
}

#[test]
fn fig3_preset_has_one_state_of_each_parity() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["boundstates", "--preset", "fig3"], dir.path());
    let t = rows(&dir.path().join("boundstates.csv"));
    assert_eq!(t.len(), 2);
    let mut parities: Vec<&str> = t.iter().map(|r| r.get(1).unwrap()).collect();
    parities.sort();
    assert_eq!(parities, ["+", "-"]);
    assert!(t.iter().all(|r| num(r, 2).abs() < 1.0 && num(r, 3) > 0.0));
    assert_eq!(rows(&dir.path().join("wavefunctions.csv")).len(), 2 * 401);
}

#[test]
fn mass_rescales_inputs_but_not_exports() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    ok(&["boundstates", "--v", "3,3,3", "--l", "0.5", "--samples", "0"], a.path());
    ok(&["boundstates", "--v", "6,6,6", "--l", "0.25", "--m", "2", "--samples", "0"], b.path());
    let (ra, rb) = (rows(&a.path().join("boundstates.csv")), rows(&b.path().join("boundstates.csv")));
    assert_eq!(ra.len(), rb.len());
    for (x, y) in ra.iter().zip(&rb) {
        assert!((num(x, 2) - num(y, 2)).abs() < 1e-10);
    }
}

#[test]
fn sweep_output_is_deterministic_across_worker_counts() {
    let one = tempfile::tempdir().unwrap();
    let many = tempfile::tempdir().unwrap();
    for (dir, threads) in [(&one, "1"), (&many, "4")] {
        let o = pseudospin(&["sweep", "--preset", "fig6"], dir.path(), Some(threads));
        assert_eq!(o.status.code(), Some(0));
    }
    let a = fs::read(one.path().join("sweep.csv")).unwrap();
    let b = fs::read(many.path().join("sweep.csv")).unwrap();
    assert!(a == b, "sweep CSV differs between 1 and 4 workers");
    let manifest: Value = serde_json::from_slice(&fs::read(one.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["report"]["type"], "H1");
    assert_eq!(manifest["report"]["pencil"]["vertex"], "P2");
    assert_eq!(manifest["report"]["pencil"]["alpha"], serde_json::json!([1.0, 1.0, -1.0]));
    assert_eq!(manifest["report"]["pencil"]["l"], 2.0);
}

#[test]
fn type_two_inverse_square_levels() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["pointlimit", "--family", "l2", "--set", "H2", "--g", "2", "--n", "0..3"], dir.path());
    let t = rows(&dir.path().join("levels.csv"));
    assert_eq!(t.len(), 4);
    assert!((num(&t[0], 2) - 0.5f64.sqrt()).abs() < 1e-11);
    assert!(t.windows(2).all(|w| num(&w[1], 2) < num(&w[0], 2)));
}

#[test]
fn table_preset_writes_every_row() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["pointlimit", "--preset", "table1"], dir.path());
    let doc: Value = serde_json::from_slice(&fs::read(dir.path().join("table1_entries.json")).unwrap()).unwrap();
    let entries = doc.as_array().unwrap();
    assert_eq!(entries.len(), rows(&dir.path().join("table1.csv")).len());
    for e in entries {
        let l = &e["lambda"];
        let det = l[0][0].as_f64().unwrap() * l[1][1].as_f64().unwrap() - l[0][1].as_f64().unwrap() * l[1][0].as_f64().unwrap();
        assert!((det - 1.0).abs() < 1e-12, "{e}");
    }
}

#[test]
fn json_format_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["pointlimit", "--preset", "fig10", "--format", "json"], dir.path());
    let levels: Value = serde_json::from_slice(&fs::read(dir.path().join("levels.json")).unwrap()).unwrap();
    assert_eq!(levels.as_array().unwrap().len(), 2);
    assert!(dir.path().join("eigenfunctions.json").exists());
}

#[test]
fn verify_passes_on_the_reference_seed() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = ok(&["verify", "--seed", "42", "--cases", "20"], dir.path());
    assert_eq!(manifest["passed"], true);
    assert!(rows(&dir.path().join("verify.csv")).iter().all(|r| &r[1] == "true"));
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| pseudospin(args, dir.path(), None).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["bands"]), Some(1));
    assert_eq!(code(&["sweep", "--preset", "fig99"]), Some(1));
    assert_eq!(code(&["boundstates", "--v", "1,2,3"]), Some(1));
    assert_eq!(code(&["pointlimit", "--family", "delta", "--set", "H1", "--g", "2"]), Some(2));
    assert_eq!(code(&["pointlimit", "--family", "l-2/3", "--set", "H1", "--g", "50", "--n", "1"]), Some(2));
}
