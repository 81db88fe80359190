use std::fs;

use dkoszul_core::koszul::{fresh_differential, DiffKind, Spot};
use dkoszul_core::superspace::SuperSpace;
use dkoszul_harness::cache::matrix_key;
use dkoszul_harness::{run_with_cache, Cache, Check, VerificationPlan};

#[test]
fn put_get_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    assert_eq!(cache.get("misc/a"), None);
    cache.put("misc/a", "{\"x\":1}").unwrap();
    assert_eq!(cache.get("misc/a").as_deref(), Some("{\"x\":1}"));
    cache.put("misc/a", "2").unwrap();
    assert_eq!(cache.get("misc/a").as_deref(), Some("2"));
    assert_eq!(cache.corrupted(), 0);
    // no temporary files remain after the rename
    let leftovers: Vec<_> = fs::read_dir(dir.path().join("misc")).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 1);
}

#[test]
fn corruption_is_detected_and_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let v = SuperSpace::standard();
    let sub = Spot::K { k: 1, l: 2 };
    let key = matrix_key(v, DiffKind::D, sub);
    let cache = Cache::open(dir.path()).unwrap();
    let first = cache.differential(v, DiffKind::D, sub).unwrap();
    let path = cache.path_of(&key);
    let text = fs::read_to_string(&path).unwrap();
    // flip one digit inside the payload without touching the checksum
    let pos = text.find("\\\"1\\\"").expect("a unit entry");
    let mut bytes = text.into_bytes();
    bytes[pos + 2] = b'7';
    fs::write(&path, bytes).unwrap();

    let reopened = Cache::open(dir.path()).unwrap();
    assert_eq!(reopened.get(&key), None);
    assert_eq!(reopened.corrupted(), 1);
    let again = reopened.differential(v, DiffKind::D, sub).unwrap();
    assert_eq!(again, first);
    assert!(reopened.get(&key).is_some());
}

#[test]
fn cached_matrices_equal_fresh_ones() {
    let dir = tempfile::tempdir().unwrap();
    let plan = VerificationPlan { max_k: 2, max_l: 2, max_p: 2, max_r: 2, ..VerificationPlan::only(&[Check::Identities]) };
    let cache = Cache::open(dir.path()).unwrap();
    let cold = run_with_cache(&plan, Some(&cache)).unwrap();
    let warm = run_with_cache(&plan, Some(&Cache::open(dir.path()).unwrap())).unwrap();
    assert_eq!(cold.stable_json(), warm.stable_json());
    let v = SuperSpace::standard();
    let reader = Cache::open(dir.path()).unwrap();
    let mut seen = 0;
    for k in 0..=2 {
        for l in 0..=2 {
            for kind in [DiffKind::D, DiffKind::Del] {
                let sub = Spot::K { k, l };
                let stored = reader.get(&matrix_key(v, kind, sub)).expect("warmed by the run");
                let m = dkoszul_core::exact::SparseMap::from_json(&stored).unwrap();
                assert_eq!(m, fresh_differential(v, kind, sub).unwrap(), "{kind} {sub}");
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 18);
    assert_eq!(reader.corrupted(), 0);
}

#[test]
fn report_is_stored_under_its_digest() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let plan = VerificationPlan { max_k: 1, max_l: 1, max_p: 1, max_r: 1, ..VerificationPlan::only(&[Check::Identities]) };
    let report = run_with_cache(&plan, Some(&cache)).unwrap();
    let stored = cache.get(&dkoszul_harness::cache::report_key(&report.plan_digest)).unwrap();
    assert_eq!(stored, report.stable_json());
}
