use std::path::Path;
use std::process::{Command, Output};

use dkoszul_core::exact::SparseMap;
use dkoszul_core::koszul::{differential, DiffKind, Spot};
use dkoszul_core::superspace::{Kind, PowerBasis, SerialBasis, SuperSpace};
use serde_json::Value;

fn dkoszul(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dkoszul"))
        .args(args)
        .env("DKOSZUL_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path();
    let ok = dkoszul(c, &["verify", "--checks", "identities", "--max-k", "1", "--max-l", "1", "--max-p", "1", "--max-r", "1"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let finding = dkoszul(c, &["verify", "--checks", "spectra", "--max-i", "1", "--max-a", "1", "--max-k", "1"]);
    assert_eq!(finding.status.code(), Some(1));
    assert!(stdout(&finding).contains("failing claims: DELPQD-SPECTRUM"));
    assert_eq!(dkoszul(c, &["verify", "--checks", "nothing"]).status.code(), Some(2));
    assert_eq!(dkoszul(c, &["verify", "--max-k", "0"]).status.code(), Some(2));
    assert_eq!(dkoszul(c, &["verify", "--m", "0", "--n", "0"]).status.code(), Some(2));
    assert_eq!(dkoszul(c, &["construct", "Nope", "1"]).status.code(), Some(2));
    assert_eq!(dkoszul(c, &["export", "matrix", "d:1"]).status.code(), Some(2));
    assert_eq!(dkoszul(c, &["export", "report", "0123456789abcdef"]).status.code(), Some(2));
}

#[test]
fn report_json_validates_and_re_exports() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path();
    let out = c.join("report.json");
    let args = ["verify", "--checks", "identities,exactness,constructions", "--max-k", "1", "--max-l", "1", "--max-p", "1", "--max-r", "1"];
    let o = dkoszul(c, &[&args[..], &["--json", out.to_str().unwrap()]].concat());
    // Z1 disagrees with its stated weight
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");

    let digest = report["plan_digest"].as_str().unwrap();
    let exported = dkoszul(c, &["export", "report", digest]);
    assert_eq!(exported.status.code(), Some(0));
    let mut stable = report.clone();
    stable.as_object_mut().unwrap().remove("timings");
    let back: Value = serde_json::from_str(&stdout(&exported)).unwrap();
    assert_eq!(back, stable);

    // same plan, same bytes outside the timing field
    let again = c.join("again.json");
    dkoszul(c, &[&args[..], &["--json", again.to_str().unwrap()]].concat());
    let mut second: Value = serde_json::from_str(&std::fs::read_to_string(&again).unwrap()).unwrap();
    second.as_object_mut().unwrap().remove("timings");
    assert_eq!(second, stable);
}

#[test]
fn matrix_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path();
    let file = c.join("d11.json");
    let o = dkoszul(c, &["export", "matrix", "d:1,1", "--m", "3", "--n", "1", "--out", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&file).unwrap();
    let m = SparseMap::from_json(&text).unwrap();
    let v = SuperSpace::standard();
    assert_eq!(m, *differential(v, DiffKind::D, Spot::K { k: 1, l: 1 }).unwrap());
    assert_eq!(m.to_json().unwrap(), text);
    // a second export, now served from the cache, is byte-identical
    let o = dkoszul(c, &["export", "matrix", "d:1,1"]);
    assert_eq!(stdout(&o).trim_end(), text);
    let p = dkoszul(c, &["export", "matrix", "P:2,1", "--m", "2", "--n", "1"]);
    let m = SparseMap::from_json(stdout(&p).trim_end()).unwrap();
    assert_eq!(m, *differential(SuperSpace::new(2, 1).unwrap(), DiffKind::P, Spot::L { p: 2, r: 1 }).unwrap());
}

#[test]
fn basis_export_lists_exterior_square() {
    let dir = tempfile::tempdir().unwrap();
    let o = dkoszul(dir.path(), &["export", "basis", "ext:2"]);
    assert_eq!(o.status.code(), Some(0));
    let b: SerialBasis = serde_json::from_str(stdout(&o).trim_end()).unwrap();
    assert_eq!(b.labels.len(), 7);
    assert_eq!(b.coordinates.len(), 7);
    assert_eq!(b.labels.iter().filter(|l| l.as_str() == "x4∧x4").count(), 1);
    let resolved = b.resolve().unwrap();
    assert_eq!(resolved.kind, Kind::Exterior);
    assert_eq!(resolved.dim(), PowerBasis::get(SuperSpace::standard(), Kind::Exterior, 2, false).dim());
}

#[test]
fn construct_reports_three_way_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let o = dkoszul(dir.path(), &["construct", "Ysummand", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["module"]["dim"], 15);
    assert_eq!(v["module"]["top_weight"], "(1,0,0|1)");
    let rec = &v["report"]["records"][0];
    assert_eq!(rec["claim"], "Y-CHAR");
    assert_eq!(rec["data"]["closed_formula"]["matched"], "trace");
    assert_eq!(rec["data"]["v_lambda_formula"]["matched"], "trace");

    let o = dkoszul(dir.path(), &["construct", "Mmp", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["records"][0]["data"]["stated_weight"], "(1,1,-1|0)");

    let o = dkoszul(dir.path(), &["construct", "H31"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["module"]["dim"], 1);
    assert_eq!(v["module"]["top_weight"], "(1,1,1|1)");

    let o = dkoszul(dir.path(), &["construct", "Z1", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spectrum_and_character_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = dkoszul(dir.path(), &["spectrum", "delpqd", "1", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let vals: Vec<&str> = v["eigenvalues"].as_array().unwrap().iter().map(|e| e["value"].as_str().unwrap()).collect();
    assert_eq!(vals, vec!["5/6", "4/3"]);
    assert_eq!(v["dim"], 36);

    let o = dkoszul(dir.path(), &["character", "irreducible", "(1,0,0|0)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["character"]["polynomial"], "1*y + 1*x3 + 1*x2 + 1*x1");
    let o = dkoszul(dir.path(), &["character", "typical", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dkoszul(dir.path(), &["character", "kac", "2,1,0,-1"]);
    assert_eq!(o.status.code(), Some(0));
}
