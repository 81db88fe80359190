use crate::echelon::{Echelon, PivotSide};
use crate::vector::Accumulator;
use crate::{ExactError, Scalar, SparseMap, SparseVec};

/// Subspace of Q^ambient with a reduced echelon basis: each basis vector
/// starts with a unit entry at its pivot and vanishes at every other pivot.
/// Basis vectors are ordered by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    pivots: Vec<usize>,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, pivots: vec![], basis: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, pivots: (0..ambient).collect(), basis: (0..ambient).map(SparseVec::unit).collect() }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new(ambient, PivotSide::First);
        for v in vectors {
            e.insert(&v);
        }
        Self::from_echelon(e)
    }

    pub fn from_echelon(e: Echelon) -> Self {
        assert_eq!(e.side(), PivotSide::First, "subspaces use first-nonzero pivots");
        let ambient = e.dim();
        let (pivots, basis) = e.into_basis().into_iter().unzip();
        Subspace { ambient, pivots, basis }
    }

    /// Caller guarantees the vectors are already reduced echelon.
    pub fn from_reduced_basis(ambient: usize, mut basis: Vec<SparseVec>) -> Self {
        basis.sort_by_key(|v| v.first().map(|(i, _)| i));
        let pivots = basis.iter().map(|v| v.first().expect("nonzero basis vector").0).collect();
        let s = Subspace { ambient, pivots, basis };
        debug_assert!(s.is_reduced());
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.basis.iter().zip(&self.pivots).all(|(v, &p)| {
            v.first() == Some((p, &Scalar::one()))
                && v.iter().all(|(i, _)| i == p || self.pivots.binary_search(&i).is_err())
        }) && self.pivots.windows(2).all(|w| w[0] < w[1])
    }

    /// Coordinates in the basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut coords = Vec::new();
        let mut acc = Accumulator::new();
        for (i, x) in v.iter() {
            if let Ok(k) = self.pivots.binary_search(&i) {
                coords.push((k, x.clone()));
                acc.add_scaled(x, &self.basis[k]);
            }
        }
        if acc.finish() == *v {
            Some(SparseVec::from_sorted(coords))
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in v.iter() {
            if let Ok(k) = self.pivots.binary_search(&i) {
                acc.add_scaled(&-x, &self.basis[k]);
            }
            acc.add(i, x.clone());
        }
        acc.finish()
    }

    fn check_ambient(&self, other: &Subspace, context: &'static str) -> Result<(), ExactError> {
        if self.ambient != other.ambient {
            return Err(ExactError::DimensionMismatch { context, left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check_ambient(other, "sum")?;
        Ok(Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned()))
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check_ambient(other, "intersect")?;
        let n = self.ambient;
        let mut e = Echelon::new(2 * n, PivotSide::First);
        for b in &self.basis {
            e.insert(&b.concat(n, b));
        }
        for b in &other.basis {
            e.insert(&b.concat(n, &SparseVec::new()));
        }
        let vecs = e
            .into_basis()
            .into_iter()
            .filter(|(p, _)| *p >= n)
            .map(|(_, v)| v.remap(|i| i.checked_sub(n)))
            .collect::<Vec<_>>();
        Ok(Subspace::span(n, vecs))
    }

    /// Intersection via the kernel of `[self | -other]`; an independent route to [`Subspace::intersect`].
    pub fn intersect_by_kernel(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check_ambient(other, "intersect")?;
        let d = self.dim();
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(SparseVec::neg));
        let m = SparseMap::from_columns(self.ambient, cols);
        let k = m.kernel();
        let vecs = k.basis.iter().map(|c| {
            let mut acc = Accumulator::new();
            for (j, x) in c.iter() {
                if j < d {
                    acc.add_scaled(x, &self.basis[j]);
                }
            }
            acc.finish()
        });
        Ok(Subspace::span(self.ambient, vecs.collect::<Vec<_>>()))
    }

    /// Complement of `self` inside `outer`: spanned by basis vectors of `outer` reduced modulo `self`.
    pub fn complement_in(&self, outer: &Subspace) -> Result<Subspace, ExactError> {
        self.check_ambient(outer, "complement")?;
        if !outer.contains_subspace(self) {
            return Err(ExactError::NotContained);
        }
        let mut e = Echelon::new(self.ambient, PivotSide::First);
        for b in &self.basis {
            e.insert(b);
        }
        let base = e.rank();
        let mut picked = Vec::new();
        for b in &outer.basis {
            if e.insert(b).is_some() {
                picked.push(self.reduce(b));
            }
        }
        debug_assert_eq!(base + picked.len(), outer.dim());
        Ok(Subspace::span(self.ambient, picked))
    }

    /// Matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> SparseMap {
        SparseMap::from_columns(self.ambient, self.basis.clone())
    }

    /// Preimage under `map` intersected with `self`: `{v in self : map(v) = 0}`.
    pub fn kernel_within(&self, map: &SparseMap) -> Result<Subspace, ExactError> {
        let inc = self.inclusion();
        let restricted = map.compose(&inc)?;
        let k = restricted.kernel();
        let vecs: Vec<SparseVec> = k.basis.iter().map(|c| inc.apply(c)).collect();
        Ok(Subspace::span(self.ambient, vecs))
    }

    /// Image of `self` under `map`.
    pub fn image_under(&self, map: &SparseMap) -> Result<Subspace, ExactError> {
        if map.dom() != self.ambient {
            return Err(ExactError::DimensionMismatch { context: "image", left: map.dom(), right: self.ambient });
        }
        Ok(Subspace::span(map.cod(), self.basis.iter().map(|b| map.apply(b)).collect::<Vec<_>>()))
    }

    /// `U ⊗ W` inside the tensor product of ambients.
    pub fn kron(&self, other: &Subspace) -> Subspace {
        let n = other.ambient;
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.basis {
            for b in &other.basis {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        entries.push((i * n + k, x * y));
                    }
                }
                basis.push(SparseVec::from_sorted(entries));
            }
        }
        Subspace::span(self.ambient * n, basis)
    }

    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().map(|b| b.shift(self.ambient)));
        Subspace::span(self.ambient + other.ambient, basis)
    }
}
