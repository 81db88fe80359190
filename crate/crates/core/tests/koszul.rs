use dkoszul_core::exact::{q, Scalar, Subspace};
use dkoszul_core::koszul::*;
use dkoszul_core::superspace::SuperSpace;

fn v31() -> SuperSpace {
    SuperSpace::standard()
}

fn v21() -> SuperSpace {
    SuperSpace::new(2, 1).unwrap()
}

#[test]
fn closed_form_matches_raw_route() {
    for v in [v31(), v21()] {
        for (k, l) in [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (0, 2), (1, 2), (2, 1)] {
            let spot = Spot::K { k, l };
            if k + l + 2 <= 5 {
                assert_eq!(*differential(v, DiffKind::D, spot).unwrap(), raw_differential(v, DiffKind::D, spot).unwrap());
                assert_eq!(*differential(v, DiffKind::Del, spot).unwrap(), raw_differential(v, DiffKind::Del, spot).unwrap());
            }
        }
        for (p, r) in [(1, 0), (1, 1), (2, 0), (2, 1), (1, 2), (3, 1), (2, 2)] {
            let spot = Spot::L { p, r };
            assert_eq!(*differential(v, DiffKind::P, spot).unwrap(), raw_differential(v, DiffKind::P, spot).unwrap());
            assert_eq!(*differential(v, DiffKind::Q, spot).unwrap(), raw_differential(v, DiffKind::Q, spot).unwrap());
        }
    }
}

#[test]
fn identity_del_d_examples() {
    let c = identity_check(v31(), Identity::DelD, Spot::K { k: 1, l: 1 }).unwrap();
    assert_eq!(c.scalar, Scalar::from(2));
    assert!(c.holds());
    let c = identity_check(v31(), Identity::DelD, Spot::K { k: 0, l: 0 }).unwrap();
    assert_eq!(c.scalar, Scalar::from(2));
    assert_eq!(c.dropped, vec!["d∂"]);
    assert!(c.holds());
    let c = identity_check(v31(), Identity::PQ, Spot::L { p: 1, r: 1 }).unwrap();
    assert_eq!(c.scalar, Scalar::from(2));
    assert!(c.holds());
    assert!(identity_check(v31(), Identity::PQ, Spot::K { k: 1, l: 1 }).is_err());
}

#[test]
fn identities_on_small_grid() {
    for v in [v31(), v21()] {
        for k in 0..=3 {
            for l in 0..=3 {
                assert!(identity_check(v, Identity::DelD, Spot::K { k, l }).unwrap().holds(), "{v} ({k},{l})");
            }
        }
        for p in 0..=4 {
            for r in 0..=(4 - p) {
                assert!(identity_check(v, Identity::PQ, Spot::L { p, r }).unwrap().holds(), "{v} ({p},{r})");
            }
        }
    }
}

#[test]
fn calibration_is_unit() {
    let v = v31();
    for k in 0..=3 {
        for l in 0..=3 {
            let c = calibrate_d(v, k, l).unwrap();
            assert_eq!(c.version, CALIBRATION);
            match (k, l) {
                (2, 0) => assert_eq!(c.constant, None),
                _ => assert_eq!(c.constant, Some(Scalar::one()), "({k},{l})"),
            }
        }
    }
}

#[test]
fn consecutive_differentials_vanish() {
    for v in [v31(), v21()] {
        for k in 0..=3 {
            for l in 0..=3 {
                assert!(square_zero(v, DiffKind::D, Spot::K { k, l }).unwrap());
            }
        }
        for p in 2..=5 {
            for r in 0..=2 {
                assert!(square_zero(v, DiffKind::P, Spot::L { p, r }).unwrap());
            }
        }
    }
}

#[test]
fn word_reproduces_identity_combination() {
    let v = v31();
    let (dd, _) = composed_operator(v, &[DiffKind::D, DiffKind::Del], Spot::K { k: 0, l: 0 }).unwrap();
    assert_eq!(dd, dkoszul_core::exact::SparseMap::scalar(1, &q(1, 1)).scale(&Scalar::from(2)));
}

#[test]
fn squares_commute() {
    let v = v31();
    for (i, k, l) in [(1, 1, 2), (2, 1, 3), (1, 0, 1), (2, 2, 1)] {
        assert!(commute_check(v, Square::PD, i, k, l).unwrap().holds());
        assert!(commute_check(v, Square::DelQ, i, k, l).unwrap().holds());
    }
    assert!(commute_check(v, Square::PD, 0, 1, 1).unwrap().vacuous());
}

#[test]
fn homology_examples() {
    let v = v31();
    let h = homology(v, Complex::K(2), 3).unwrap();
    assert_eq!(h.spot, Spot::K { k: 3, l: 1 });
    assert_eq!(h.homology_dim, 1);
    assert_eq!(h.representative.dim(), 1);
    assert_eq!(homology(v, Complex::K(0), 1).unwrap().homology_dim, 0);
    assert_eq!(homology(v, Complex::L(0), 0).unwrap().homology_dim, 1);
    let d01 = differential(v, DiffKind::D, Spot::K { k: 0, l: 1 }).unwrap();
    assert_eq!(d01.kernel().dim(), 0);
    let v = v21();
    assert_eq!(homology(v, Complex::K(1), 2).unwrap().homology_dim, 1);
}

#[test]
fn kerp_matches_incoming_image() {
    let v = v31();
    assert_eq!(kerp_subspace(v, 1, 1, 0).unwrap().dim(), 9);
    assert_eq!(kerp_subspace(v, 0, 2, 1).unwrap(), Subspace::full(28));
    for i in 1..=3 {
        for k in 0..=3 {
            assert_eq!(kerp_subspace(v, i, k, 1).unwrap(), incoming_p_image(v, i, k, 1).unwrap(), "({i},{k})");
        }
    }
}

#[test]
fn d_restricts_to_kerp_but_del_does_not() {
    let v = v31();
    for (i, k, l) in [(1, 1, 1), (1, 0, 2), (2, 1, 1)] {
        assert!(preserves_kerp(v, DiffKind::D, Spot::Triple { i, k, l }).unwrap());
    }
    let fails = [(1, 1, 1), (1, 2, 2), (2, 1, 1)]
        .iter()
        .any(|&(i, k, l)| !preserves_kerp(v, DiffKind::Del, Spot::Triple { i, k, l }).unwrap());
    assert!(fails);
}

#[test]
fn first_operator_spectra() {
    let v = v31();
    for a in 1..=3 {
        let r = spectrum_report(v, SpectralOperator::DelPQd { i: 0, a }).unwrap();
        assert_eq!(r.spectrum.values(), vec![q(a + 2, a + 1)]);
        assert!(r.matches("printed") && r.matches("recursion"));
    }
    let (op, _) = composed_operator(
        v,
        &[DiffKind::D, DiffKind::Q, DiffKind::P, DiffKind::Del],
        Spot::Triple { i: 0, k: 0, l: 1 },
    )
    .unwrap();
    assert_eq!(op, dkoszul_core::exact::SparseMap::scalar(4, &q(3, 2)));
    let r = spectrum_report(v, SpectralOperator::DelPQd { i: 1, a: 1 }).unwrap();
    assert_eq!(r.spectrum.values(), vec![q(5, 6), q(4, 3)]);
    assert!(r.matches("recursion"));
    assert!(r.spectrum.diagonalizable && r.invertible());
}

#[test]
fn second_operator_spectra() {
    let v = v31();
    let r = spectrum_report(v, SpectralOperator::PDelDQ { i: 0, k: 1, a: 1 }).unwrap();
    assert_eq!(r.spectrum.values(), vec![q(5, 16), q(1, 2)]);
    assert!(r.matches("head-and-tail"));
    assert!(r.spectrum.diagonalizable && r.invertible());
    let r = spectrum_report(v, SpectralOperator::PDelDQ { i: 1, k: 1, a: 1 }).unwrap();
    assert!(r.matches("head-and-tail"), "{:?}", r.spectrum.values());
}

#[test]
fn splittings() {
    let v = v31();
    let s = splitting(v, SplittingKind::ImageSplit { k: 2, l: 3 }).unwrap();
    assert_eq!(s.whole.dim(), 112);
    assert!(s.is_direct());
    assert_eq!(s.rank_identity, Some(true));
    let s = splitting(v, SplittingKind::ImageSplit { k: 3, l: 4 }).unwrap();
    assert!(s.is_direct());
    let s = splitting(v, SplittingKind::QdSplit { i: 0, a: 1 }).unwrap();
    assert!(s.is_direct());
    assert_eq!((s.a.dim(), s.b.dim()), (4, 32));
    let s = splitting(v, SplittingKind::DqSplit { i: 0, k: 2, l: 2 }).unwrap();
    assert!(s.is_direct());
    assert_eq!(s.a.dim(), 8 * 9);
}

#[test]
fn image_split_fails_on_the_excluded_diagonal() {
    let s = splitting(v31(), SplittingKind::ImageSplit { k: 3, l: 1 }).unwrap();
    assert!(!s.is_direct() || s.rank_identity == Some(false));
}

#[test]
fn preloading_checks_shape_and_keeps_memo() {
    let v = v21();
    let sub = Spot::K { k: 1, l: 3 };
    let fresh = fresh_differential(v, DiffKind::D, sub).unwrap();
    assert!(preload_differential(v, DiffKind::D, sub, dkoszul_core::exact::SparseMap::zero(3, 3)).is_err());
    let memo = differential(v, DiffKind::D, sub).unwrap();
    assert_eq!(*memo, fresh);
    assert!(!preload_differential(v, DiffKind::D, sub, fresh.clone()).unwrap());
    // an alphabet no other test in this binary touches, so the memo is empty here
    let w = SuperSpace::new(1, 2).unwrap();
    let other = Spot::K { k: 2, l: 1 };
    let m = fresh_differential(w, DiffKind::Del, other).unwrap();
    assert!(preload_differential(w, DiffKind::Del, other, m.clone()).unwrap());
    assert_eq!(*differential(w, DiffKind::Del, other).unwrap(), m);
}
