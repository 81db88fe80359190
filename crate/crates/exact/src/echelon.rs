use std::collections::{BTreeMap, HashMap, HashSet};

use crate::vector::Accumulator;
use crate::{Scalar, SparseVec};

/// Which nonzero of a vector serves as its pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotSide {
    First,
    Last,
}

/// Incrementally maintained reduced echelon basis.
///
/// Every stored vector has a unit entry at its pivot and is zero at every
/// other pivot, so reduction is a single pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    side: PivotSide,
    basis: BTreeMap<usize, SparseVec>,
    // coordinate -> pivots of stored vectors with a nonzero there (own pivot excluded)
    occ: HashMap<usize, HashSet<usize>>,
}

impl Echelon {
    pub fn new(dim: usize, side: PivotSide) -> Self {
        Echelon { dim, side, basis: BTreeMap::new(), occ: HashMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn side(&self) -> PivotSide {
        self.side
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.keys().copied()
    }

    pub fn vector(&self, pivot: usize) -> Option<&SparseVec> {
        self.basis.get(&pivot)
    }

    pub fn into_basis(self) -> BTreeMap<usize, SparseVec> {
        self.basis
    }

    /// `v` minus its projection onto the span along the pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut hit = false;
        for (i, _) in v.iter() {
            if self.basis.contains_key(&i) {
                hit = true;
                break;
            }
        }
        if !hit {
            return v.clone();
        }
        let mut acc = Accumulator::new();
        for (i, x) in v.iter() {
            if let Some(b) = self.basis.get(&i) {
                acc.add_scaled(&-x, b);
            }
            acc.add(i, x.clone());
        }
        acc.finish()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns the new pivot if `v` was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        debug_assert!(v.support_bound() <= self.dim);
        let w = self.reduce(v);
        let (pivot, lead) = match self.side {
            PivotSide::First => w.first()?,
            PivotSide::Last => w.last()?,
        };
        let w = w.scale(&lead.recip());
        if let Some(holders) = self.occ.remove(&pivot) {
            for p in holders {
                let old = self.basis.remove(&p).expect("indexed vector present");
                let c = old.get(pivot);
                let new = old.axpy(&-c, &w);
                self.unindex(p, &old);
                self.index(p, &new);
                self.basis.insert(p, new);
            }
        }
        self.index(pivot, &w);
        self.basis.insert(pivot, w);
        Some(pivot)
    }

    fn index(&mut self, pivot: usize, v: &SparseVec) {
        for (i, _) in v.iter() {
            if i != pivot {
                self.occ.entry(i).or_default().insert(pivot);
            }
        }
    }

    fn unindex(&mut self, pivot: usize, v: &SparseVec) {
        for (i, _) in v.iter() {
            if i != pivot {
                if let Some(set) = self.occ.get_mut(&i) {
                    set.remove(&pivot);
                    if set.is_empty() {
                        self.occ.remove(&i);
                    }
                }
            }
        }
    }
}

#[allow(dead_code)]
pub(crate) fn is_reduced(e: &Echelon) -> bool {
    let pivots: HashSet<usize> = e.basis.keys().copied().collect();
    e.basis.iter().all(|(p, v)| {
        v.get(*p) == Scalar::one()
            && v.iter().all(|(i, _)| i == *p || !pivots.contains(&i))
            && match e.side {
                PivotSide::First => v.first().map(|(i, _)| i) == Some(*p),
                PivotSide::Last => v.last().map(|(i, _)| i) == Some(*p),
            }
    })
}
