use dkoszul_core::exact::{Scalar, SparseMap, SparseVec, Subspace};
use dkoszul_core::glrep::*;
use dkoszul_core::koszul::{differential, DiffKind, Spot};
use dkoszul_core::superspace::{raw_ambient, Kind, PowerBasis, SuperSpace, TensorAmbient, WeightTuple};

fn v31() -> SuperSpace {
    SuperSpace::standard()
}

fn w(even: &[i64], odd: &[i64]) -> WeightTuple {
    WeightTuple::new(even, odd)
}

fn module_of(space: SuperSpace, spot: Spot) -> GLModule {
    GLModule::from_ambient(spot.to_string(), &spot.ambient(space)).unwrap()
}

#[test]
fn matrix_units_on_v() {
    let v = v31();
    let amb = TensorAmbient::new(vec![PowerBasis::line(v, false)]).unwrap();
    let e12 = generator_matrix(&amb, Generator::e(1, 2));
    assert_eq!(e12, SparseMap::from_triplets(4, 4, [(0, 1, Scalar::one())]));
    let e14 = generator_matrix(&amb, Generator::e(1, 4));
    let e41 = generator_matrix(&amb, Generator::e(4, 1));
    let anti = e14.compose(&e41).unwrap().add(&e41.compose(&e14).unwrap()).unwrap();
    let rhs = generator_matrix(&amb, Generator::e(1, 1)).add(&generator_matrix(&amb, Generator::e(4, 4))).unwrap();
    assert_eq!(anti, rhs);
    assert_eq!(Generator::e(1, 4).parity(v), 1);
    assert_eq!(Generator::e(2, 3).parity(v), 0);
    assert_eq!(Generator::e(1, 4).to_string(), "E14");
}

#[test]
fn dual_symmetric_cartan() {
    let v = v31();
    let pb = PowerBasis::get(v, Kind::Symmetric, 2, true);
    let amb = TensorAmbient::new(vec![pb.clone()]).unwrap();
    let e44 = generator_matrix(&amb, Generator::e(4, 4));
    for j in 0..pb.dim() {
        let count = pb.elem(j).iter().filter(|&&x| x == 3).count() as i64;
        assert_eq!(e44.get(j, j), Scalar::from(-count));
        assert_eq!(e44.column(j).nnz(), usize::from(count > 0));
    }
}

/// The power-basis action agrees with the letter-by-letter action on the raw tensor power.
#[test]
fn factor_action_matches_raw_tensor_action() {
    for v in [v31(), SuperSpace::new(2, 1).unwrap()] {
        for kind in [Kind::Symmetric, Kind::Exterior] {
            for dual in [false, true] {
                for degree in 1..=3 {
                    let pb = PowerBasis::get(v, kind, degree, dual);
                    let inc = pb.realization().inclusion();
                    let raw = raw_ambient(v, &vec![dual; degree]);
                    let amb = TensorAmbient::new(vec![pb.clone()]).unwrap();
                    for g in Generator::all(v) {
                        let lhs = generator_matrix(&raw, g).compose(&inc).unwrap();
                        let rhs = inc.compose(&generator_matrix(&amb, g)).unwrap();
                        assert_eq!(lhs, rhs, "{v} {kind:?} dual={dual} {degree} {g}");
                    }
                }
            }
        }
    }
}

#[test]
fn super_commutators_hold() {
    let v = v31();
    let ambients = [
        Spot::K { k: 1, l: 0 },
        Spot::K { k: 0, l: 1 },
        Spot::K { k: 2, l: 1 },
        Spot::L { p: 2, r: 1 },
        Spot::Triple { i: 1, k: 1, l: 1 },
    ];
    for spot in ambients {
        let m = module_of(v, spot);
        assert_eq!(m.commutator_violation(), None, "{spot}");
        assert!(m.cartan_consistent(), "{spot}");
    }
    let small = SuperSpace::new(2, 1).unwrap();
    assert_eq!(module_of(small, Spot::Triple { i: 1, k: 2, l: 1 }).commutator_violation(), None);
}

#[test]
fn differentials_are_equivariant() {
    let v = v31();
    let cases = [
        (DiffKind::D, Spot::K { k: 1, l: 1 }),
        (DiffKind::D, Spot::K { k: 0, l: 2 }),
        (DiffKind::Del, Spot::K { k: 1, l: 1 }),
        (DiffKind::Del, Spot::K { k: 2, l: 0 }),
        (DiffKind::P, Spot::L { p: 2, r: 1 }),
        (DiffKind::Q, Spot::L { p: 2, r: 1 }),
        (DiffKind::D, Spot::Triple { i: 1, k: 1, l: 1 }),
        (DiffKind::P, Spot::Triple { i: 1, k: 1, l: 1 }),
    ];
    for (kind, sub) in cases {
        let (src, tgt) = dkoszul_core::koszul::endpoints(kind, sub).unwrap();
        let f = differential(v, kind, sub).unwrap();
        let bad = equivariance_check(&f, &module_of(v, src), &module_of(v, tgt)).unwrap();
        assert!(bad.is_empty(), "{kind} {sub}: {bad:?}");
    }
}

#[test]
fn corrupted_differential_is_caught() {
    let v = v31();
    let sub = Spot::K { k: 1, l: 1 };
    let f = differential(v, DiffKind::D, sub).unwrap();
    let (r, c, x) = f.triplets().into_iter().find(|(_, _, x)| !x.is_zero()).unwrap();
    let flip = SparseMap::from_triplets(f.cod(), f.dom(), [(r, c, x * Scalar::from(-2))]);
    let bad_f = f.add(&flip).unwrap();
    let bad = equivariance_check(&bad_f, &module_of(v, Spot::K { k: 1, l: 1 }), &module_of(v, Spot::K { k: 2, l: 2 })).unwrap();
    assert!(!bad.is_empty());
    assert!(bad.iter().any(|(g, _)| g.parity(v) == 1));
}

#[test]
fn singular_vectors_of_small_modules() {
    let v = v31();
    let vm = module_of(v, Spot::K { k: 1, l: 0 });
    let r = vm.highest_weight_report().unwrap();
    assert_eq!(r.singular_line_count(), 1);
    assert_eq!(r.top_weight, Some(w(&[1, 0, 0], &[0])));
    assert!(r.generates_all);

    let l3 = module_of(v, Spot::K { k: 3, l: 0 });
    let r = l3.highest_weight_report().unwrap();
    assert!(r.singular_lines.iter().any(|s| s.weight == w(&[1, 1, 1], &[0])));

    let dual = vm.dual();
    let r = dual.highest_weight_report().unwrap();
    assert_eq!(r.top_weight, Some(w(&[0, 0, 0], &[1])));
}

#[test]
fn closure_examples() {
    let v = v31();
    let vm = module_of(v, Spot::K { k: 1, l: 0 });
    assert_eq!(vm.closure(&[SparseVec::unit(0)]).dim(), 4);
    // x4 alone: E_i4 reaches the even letters
    assert_eq!(vm.closure(&[SparseVec::unit(3)]).dim(), 4);

    let m = module_of(v, Spot::K { k: 2, l: 2 });
    let im = differential(v, DiffKind::D, Spot::K { k: 1, l: 1 }).unwrap().image();
    let x = im.basis()[0].clone();
    assert!(im.contains_subspace(&m.closure(&[x])));
    let generic = SparseVec::from_pairs((0..m.dim()).map(|i| (i, Scalar::from(i as i64 + 1))));
    assert_eq!(m.closure(&[generic]).dim(), m.dim());
}

#[test]
fn homology_line_is_the_berezinian() {
    let v = v31();
    let h = construct(v, ConstructionName::H31).unwrap();
    assert_eq!(h.module.dim(), 1);
    assert_eq!(h.report.top_weight, Some(w(&[1, 1, 1], &[1])));
    let ber = GLModule::berezinian(v, 1);
    assert_eq!(h.module.weight_table(), ber.weight_table());
    for g in Generator::all(v) {
        assert_eq!(h.module.action(g), ber.action(g), "{g}");
    }
    assert!(h.module.irreducibility_check(3000).unwrap().pass());
}

#[test]
fn twist_shifts_weights() {
    let v = v31();
    let vm = module_of(v, Spot::K { k: 1, l: 0 });
    let t = vm.berezinian_twist(2).unwrap();
    assert_eq!(t.commutator_violation(), None);
    let r = t.highest_weight_report().unwrap();
    assert_eq!(r.top_weight, Some(w(&[3, 2, 2], &[2])));
    let back = t.berezinian_twist(-2).unwrap();
    assert_eq!(back.weight_table(), vm.weight_table());
}

#[test]
fn quotient_and_tensor() {
    let v = v31();
    let m = module_of(v, Spot::K { k: 1, l: 1 });
    let im = differential(v, DiffKind::D, Spot::K { k: 0, l: 0 }).unwrap().image();
    let q = m.subquotient("q", &Subspace::full(m.dim()), &im).unwrap();
    assert_eq!(q.dim(), 15);
    assert_eq!(q.commutator_violation(), None);
    assert!(q.irreducibility_check(3000).unwrap().pass());
    let not_stable = Subspace::span(m.dim(), [SparseVec::unit(0)]);
    assert!(m.submodule("x", &not_stable).is_err());

    let vm = module_of(v, Spot::K { k: 1, l: 0 });
    let vv = vm.tensor(&vm.dual()).unwrap();
    assert_eq!(vv.commutator_violation(), None);
    assert_eq!(vv.weight_table(), m.weight_table());
}

#[test]
fn double_dual_keeps_highest_weights() {
    let v = v31();
    for spot in [Spot::K { k: 1, l: 0 }, Spot::K { k: 2, l: 1 }, Spot::L { p: 1, r: 2 }] {
        let m = module_of(v, spot);
        assert_eq!(m.dual().dual().highest_weight_report().unwrap(), m.highest_weight_report().unwrap(), "{spot}");
    }
}

#[test]
fn irreducibility_verdicts() {
    let v = v31();
    let imd = construct(v, ConstructionName::ImD { k: 1, l: 1 }).unwrap();
    let verdict = imd.module.irreducibility_check(3000).unwrap();
    assert!(verdict.pass(), "{verdict:?}");
    let split = module_of(v, Spot::K { k: 1, l: 1 }).irreducibility_check(3000).unwrap();
    assert!(!split.pass());
    assert_eq!(split.report.singular_line_count(), 2);
    assert!(matches!(imd.module.irreducibility_check(10), Err(dkoszul_core::CoreError::TooLarge { .. })));
}

#[test]
fn construction_highest_weights() {
    let v = v31();
    let y = construct(v, ConstructionName::Ysummand { n: 1, p: 1 }).unwrap();
    assert_eq!(y.module.dim(), 15);
    assert_eq!(construct(v, ConstructionName::Ysummand { n: 1, p: 2 }).unwrap().module.dim(), 32);
    assert_eq!(y.report.top_weight, Some(w(&[1, 0, 0], &[1])));
    assert!(y.report.generates_all);

    let mmp = construct(v, ConstructionName::Mmp { m: 1, p: 1 }).unwrap();
    assert_eq!(mmp.report.top_weight, Some(w(&[1, 1, -1], &[0])));

    // the module found is (2,1,-m|1)
    let z1 = construct(v, ConstructionName::Z1 { m: 1 }).unwrap();
    assert_eq!(z1.report.top_weight, Some(w(&[2, 1, -1], &[1])));

    let zk = construct(v, ConstructionName::Zk { k: 1, l: 2, m: 2 }).unwrap();
    assert_eq!(zk.module.dim(), 120);
    assert_eq!(zk.report.top_weight, Some(w(&[2, 1, -1], &[1])));

    let mf = construct(v, ConstructionName::Mfinal { m: 1, t: 1, p: 1 }).unwrap();
    assert_eq!(mf.report.top_weight, Some(w(&[2, 1, 0], &[1])));
}

#[test]
fn hook_realizations_agree_with_tensor_closure() {
    let v = v31();
    for shape in [[2, 0, 0, 0], [1, 1, 0, 0], [2, 1, 0, 0], [1, 1, 1, 1], [3, 1, 0, 0]] {
        let name = ConstructionName::Ilambda { shape };
        let hook = construct(v, name).unwrap();
        let closure = simple_in_tensor_power(v, shape, "closure").unwrap();
        assert_eq!(hook.module.weight_table(), closure.weight_table(), "{shape:?}");
        assert_eq!(hook.report.singular_line_count(), 1, "{shape:?}");
    }
    let s2 = construct(v, ConstructionName::Ilambda { shape: [2, 0, 0, 0] }).unwrap();
    assert_eq!(s2.module.dim(), 9);
    let non_hook = construct(v, ConstructionName::Ilambda { shape: [2, 2, 0, 0] }).unwrap();
    assert_eq!(non_hook.report.top_weight, Some(w(&[2, 2, 0], &[0])));
    assert!(non_hook.module.irreducibility_check(3000).unwrap().pass());
}

#[test]
fn construction_names_round_trip() {
    for s in ["H31", "Mmp(1,2)", "Zk(1,2,3)", "Ilambda(2,1,0,0)"] {
        let n: ConstructionName = s.parse().unwrap();
        assert_eq!(n.to_string(), s);
    }
    assert_eq!("Ysummand 2 1".parse::<ConstructionName>().unwrap(), ConstructionName::Ysummand { n: 2, p: 1 });
    assert!("Ysummand(0,1)".parse::<ConstructionName>().is_err());
    assert!("Nope".parse::<ConstructionName>().is_err());
}
