use dkoszul_exact::{q, DenseMatrix, Poly, Scalar, SparseMap, SparseVec, Subspace};
use proptest::prelude::*;

fn small_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => Just(Scalar::zero()),
        2 => (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d)),
    ]
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = SparseMap> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(small_scalar(), r * c).prop_map(move |vals| {
            SparseMap::from_triplets(
                r,
                c,
                vals.into_iter().enumerate().map(move |(k, v)| (k / c, k % c, v)),
            )
        })
    })
}

fn square(max: usize) -> impl Strategy<Value = SparseMap> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(small_scalar(), n * n).prop_map(move |vals| {
            SparseMap::from_triplets(n, n, vals.into_iter().enumerate().map(move |(k, v)| (k / n, k % n, v)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_nullity(m in matrix(8, 8)) {
        let r = m.rank();
        prop_assert_eq!(r, m.rank_echelon());
        prop_assert_eq!(r, m.to_dense().rank());
        let k = m.kernel();
        prop_assert_eq!(r + k.dim(), m.dom());
        prop_assert!(k.is_reduced());
        for b in k.basis() {
            prop_assert!(m.apply(b).is_zero());
        }
        prop_assert_eq!(m.image().dim(), r);
        prop_assert_eq!(m.transpose().rank(), r);
    }

    #[test]
    fn char_poly_routes_and_cayley_hamilton(m in square(7)) {
        let a = m.char_poly().unwrap();
        let d = m.to_dense();
        prop_assert_eq!(&a, &d.char_poly().unwrap());
        prop_assert_eq!(&a, &d.char_poly_faddeev().unwrap());
        prop_assert!(d.eval_poly(&a).is_zero());
    }

    #[test]
    fn spectrum_of_conjugated_triangular(
        diag in proptest::collection::vec((-3i64..=3, 1i64..=4), 1..6),
        upper in proptest::collection::vec(-2i64..=2, 15),
        lower in proptest::collection::vec(-2i64..=2, 15),
    ) {
        let n = diag.len();
        let mut t = DenseMatrix::zeros(n, n);
        let mut l = DenseMatrix::identity(n);
        let mut k = 0;
        for (i, &(num, den)) in diag.iter().enumerate() {
            t.set(i, i, q(num, den));
            for j in (i + 1)..n {
                t.set(i, j, Scalar::from(upper[k]));
                l.set(j, i, Scalar::from(lower[k]));
                k += 1;
            }
        }
        let linv = l.inverse().unwrap();
        let m = SparseMap::from_dense(&l.mul(&t).mul(&linv));
        let s = m.rational_spectrum().unwrap();
        prop_assert_eq!(s.algebraic_total(), n);
        let mut vals: Vec<Scalar> = diag.iter().map(|&(a, b)| q(a, b)).collect();
        vals.sort();
        vals.dedup();
        prop_assert_eq!(s.values(), vals.clone());
        for e in &s.eigenvalues {
            prop_assert!(e.geometric >= 1 && e.geometric <= e.algebraic);
        }
        prop_assert_eq!(s.diagonalizable, m.annihilated_by(&vals).unwrap());
    }

    #[test]
    fn subspace_lattice(a in matrix(6, 4), b in matrix(6, 4)) {
        prop_assume!(a.cod() == b.cod());
        let u = a.image();
        let w = b.image();
        let s = u.sum(&w).unwrap();
        let i1 = u.intersect(&w).unwrap();
        let i2 = u.intersect_by_kernel(&w).unwrap();
        prop_assert_eq!(&i1, &i2);
        prop_assert_eq!(s.dim() + i1.dim(), u.dim() + w.dim());
        let c = u.complement_in(&s).unwrap();
        prop_assert_eq!(c.dim() + u.dim(), s.dim());
        prop_assert_eq!(u.sum(&c).unwrap(), s);
        prop_assert!(u.intersect(&c).unwrap().is_zero());
    }

    #[test]
    fn restrict_coordinates(m in square(6)) {
        let k = m.kernel();
        let zero_on_k = m.restrict(&k, &Subspace::zero(m.cod()));
        prop_assert!(zero_on_k.is_ok());
        let img = m.image();
        let full = Subspace::full(m.dom());
        let r = m.restrict(&full, &img).unwrap();
        prop_assert_eq!(r.rank(), img.dim());
        prop_assert_eq!(img.inclusion().compose(&r).unwrap(), m);
    }

    #[test]
    fn serial_roundtrip(m in matrix(5, 5)) {
        let back = SparseMap::from_json(&m.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn kron_rank_multiplies(a in matrix(3, 3), b in matrix(3, 3)) {
        prop_assert_eq!(a.kron(&b).rank(), a.rank() * b.rank());
    }
}

#[test]
fn cayley_hamilton_dim_60() {
    // banded integer matrix with a dense corner
    let n = 60;
    let mut trip = Vec::new();
    for i in 0..n {
        trip.push((i, i, Scalar::from((i % 5) as i64 - 2)));
        if i + 1 < n {
            trip.push((i, i + 1, Scalar::from(1)));
            trip.push((i + 1, i, q((i % 3) as i64, 2)));
        }
    }
    trip.push((0, n - 1, Scalar::from(3)));
    let m = SparseMap::from_triplets(n, n, trip);
    let d = m.to_dense();
    let p = d.char_poly().unwrap();
    assert_eq!(p.degree(), Some(n));
    assert!(d.eval_poly(&p).is_zero());
}

#[test]
fn rational_roots_with_large_denominators() {
    let roots = [q(7, 40), q(3, 10), q(3, 8), q(-121, 97), q(1001, 1)];
    let p = Poly::from_roots(&roots);
    let mut want = roots.to_vec();
    want.sort();
    assert_eq!(p.rational_roots(), want);
}

#[test]
fn sparse_vec_unit() {
    assert_eq!(SparseVec::unit(3).get(3), Scalar::one());
}
