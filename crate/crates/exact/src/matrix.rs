use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::echelon::{Echelon, PivotSide};
use crate::vector::Accumulator;
use crate::{ExactError, Scalar, SparseVec, Subspace};

/// Sparse linear map stored by columns; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMap {
    cod: usize,
    columns: Vec<SparseVec>,
}

impl SparseMap {
    pub fn zero(cod: usize, dom: usize) -> Self {
        SparseMap { cod, columns: vec![SparseVec::new(); dom] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMap { cod: n, columns: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        SparseMap {
            cod: n,
            columns: (0..n).map(|i| SparseVec::from_sorted(vec![(i, c.clone())])).collect(),
        }
    }

    pub fn from_columns(cod: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.support_bound() <= cod));
        SparseMap { cod, columns }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(cod: usize, dom: usize, triplets: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut cols: Vec<Accumulator> = (0..dom).map(|_| Accumulator::new()).collect();
        for (r, c, v) in triplets {
            assert!(r < cod && c < dom, "triplet ({r},{c}) outside {cod}x{dom}");
            cols[c].add(r, v);
        }
        SparseMap { cod, columns: cols.into_iter().map(Accumulator::finish).collect() }
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        Self::from_triplets(
            m.rows(),
            m.cols(),
            (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| (i, j, m.get(i, j).clone())),
        )
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.cod, self.dom());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.iter() {
                d.set(i, j, v.clone());
            }
        }
        d
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn dom(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.columns[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.cod == self.dom()
    }

    /// Entries in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out: Vec<(usize, usize, Scalar)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (i, j, v.clone())))
            .collect();
        out.sort_by_key(|(i, j, _)| (*i, *j));
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, x) in v.iter() {
            acc.add_scaled(x, &self.columns[j]);
        }
        acc.finish()
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &SparseMap) -> Result<SparseMap, ExactError> {
        if self.dom() != rhs.cod {
            return Err(ExactError::DimensionMismatch { context: "compose", left: self.dom(), right: rhs.cod });
        }
        Ok(SparseMap { cod: self.cod, columns: rhs.columns.iter().map(|c| self.apply(c)).collect() })
    }

    fn same_shape(&self, other: &SparseMap, context: &'static str) -> Result<(), ExactError> {
        if self.cod != other.cod {
            return Err(ExactError::DimensionMismatch { context, left: self.cod, right: other.cod });
        }
        if self.dom() != other.dom() {
            return Err(ExactError::DimensionMismatch { context, left: self.dom(), right: other.dom() });
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseMap) -> Result<SparseMap, ExactError> {
        self.same_shape(other, "add")?;
        Ok(SparseMap {
            cod: self.cod,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a.axpy(c, b)).collect(),
        })
    }

    pub fn add(&self, other: &SparseMap) -> Result<SparseMap, ExactError> {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseMap) -> Result<SparseMap, ExactError> {
        self.axpy(&-Scalar::one(), other)
    }

    pub fn scale(&self, c: &Scalar) -> SparseMap {
        SparseMap { cod: self.cod, columns: self.columns.iter().map(|col| col.scale(c)).collect() }
    }

    pub fn transpose(&self) -> SparseMap {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cod];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.iter() {
                rows[i].push((j, v.clone()));
            }
        }
        SparseMap { cod: self.dom(), columns: rows.into_iter().map(SparseVec::from_sorted).collect() }
    }

    /// Kronecker product; basis `(a, b)` maps to index `a * dim_b + b`.
    pub fn kron(&self, other: &SparseMap) -> SparseMap {
        let mut columns = Vec::with_capacity(self.dom() * other.dom());
        for a in &self.columns {
            for b in &other.columns {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        entries.push((i * other.cod + k, x * y));
                    }
                }
                columns.push(SparseVec::from_sorted(entries));
            }
        }
        SparseMap { cod: self.cod * other.cod, columns }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &SparseMap) -> SparseMap {
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().map(|c| c.shift(self.cod)));
        SparseMap { cod: self.cod + other.cod, columns }
    }

    pub fn select_columns(&self, cols: &[usize]) -> SparseMap {
        SparseMap { cod: self.cod, columns: cols.iter().map(|&j| self.columns[j].clone()).collect() }
    }

    /// Submatrix on the given rows and columns, re-indexed in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMap {
        let mut pos = vec![usize::MAX; self.cod];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        SparseMap {
            cod: rows.len(),
            columns: cols
                .iter()
                .map(|&j| {
                    SparseVec::from_pairs(
                        self.columns[j].iter().filter(|(i, _)| pos[*i] != usize::MAX).map(|(i, v)| (pos[i], v.clone())),
                    )
                })
                .collect(),
        }
    }

    /// Connected components of the bipartite row/column graph, as `(rows, cols)`.
    /// Zero columns appear as components with no rows; zero rows are omitted.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.cod + self.dom();
        let mut uf = UnionFind::new(n);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, _) in col.iter() {
                uf.union(i, self.cod + j);
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for j in 0..self.dom() {
            groups.entry(uf.find(self.cod + j)).or_default().1.push(j);
        }
        for i in 0..self.cod {
            if let Some(g) = groups.get_mut(&uf.find(i)) {
                g.0.push(i);
            }
        }
        groups.into_values().collect()
    }

    /// Connected components of a square matrix viewed as a graph on indices.
    pub fn square_blocks(&self) -> Result<Vec<Vec<usize>>, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare { rows: self.cod, cols: self.dom() });
        }
        let mut uf = UnionFind::new(self.cod);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, _) in col.iter() {
                uf.union(i, j);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.cod {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        Ok(groups.into_values().collect())
    }

    /// Rank by fraction-free elimination on each connected component.
    pub fn rank(&self) -> usize {
        self.components()
            .into_iter()
            .filter(|(rows, _)| !rows.is_empty())
            .map(|(rows, cols)| {
                if rows.len() == 1 || cols.len() == 1 {
                    1
                } else {
                    self.submatrix(&rows, &cols).to_dense().rank()
                }
            })
            .sum()
    }

    /// Rank by sparse rational echelon; an independent route to [`SparseMap::rank`].
    pub fn rank_echelon(&self) -> usize {
        self.column_echelon().rank()
    }

    pub fn column_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cod, PivotSide::First);
        for c in &self.columns {
            e.insert(c);
        }
        e
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_echelon(self.column_echelon())
    }

    /// Kernel with a reduced basis (unit entry at each free column, zero at other free columns).
    pub fn kernel(&self) -> Subspace {
        let rows = self.transpose();
        let mut e = Echelon::new(self.dom(), PivotSide::Last);
        for r in rows.columns() {
            e.insert(r);
        }
        let pivots: std::collections::HashSet<usize> = e.pivots().collect();
        let mut vecs: BTreeMap<usize, Vec<(usize, Scalar)>> =
            (0..self.dom()).filter(|j| !pivots.contains(j)).map(|j| (j, vec![(j, Scalar::one())])).collect();
        for (q, row) in e.into_basis() {
            for (f, v) in row.iter() {
                if f != q {
                    vecs.get_mut(&f).expect("free column").push((q, -v));
                }
            }
        }
        let basis = vecs
            .into_values()
            .map(|mut entries| {
                entries.sort_by_key(|(i, _)| *i);
                SparseVec::from_sorted(entries)
            })
            .collect();
        Subspace::from_reduced_basis(self.dom(), basis)
    }

    /// Matrix of `self` from `dom` into `cod`, in their bases.
    pub fn restrict(&self, dom: &Subspace, cod: &Subspace) -> Result<SparseMap, ExactError> {
        if dom.ambient() != self.dom() || cod.ambient() != self.cod {
            return Err(ExactError::DimensionMismatch { context: "restrict", left: self.dom(), right: dom.ambient() });
        }
        let mut columns = Vec::with_capacity(dom.dim());
        for (k, b) in dom.basis().iter().enumerate() {
            let w = self.apply(b);
            match cod.coordinates(&w) {
                Some(c) => columns.push(c),
                None => return Err(ExactError::ImageEscapes { index: k, witness: w }),
            }
        }
        Ok(SparseMap { cod: cod.dim(), columns })
    }

    /// Inverse of a square matrix, computed block by block.
    pub fn inverse(&self) -> Result<SparseMap, ExactError> {
        let blocks = self.square_blocks()?;
        let mut triplets = Vec::new();
        for idx in blocks {
            let inv = self.submatrix(&idx, &idx).to_dense().inverse()?;
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    let v = inv.get(a, b);
                    if !v.is_zero() {
                        triplets.push((i, j, v.clone()));
                    }
                }
            }
        }
        Ok(SparseMap::from_triplets(self.cod, self.dom(), triplets))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.columns.iter().enumerate().all(|(j, c)| c.entries() == [(j, Scalar::one())])
    }

    pub fn to_serial(&self) -> SerialMatrix {
        SerialMatrix {
            cod_dim: self.cod,
            dom_dim: self.dom(),
            entries: self
                .triplets()
                .into_iter()
                .map(|(r, c, v)| (r, c, v.numer().to_string(), v.denom().to_string()))
                .collect(),
        }
    }

    pub fn from_serial(s: &SerialMatrix) -> Result<SparseMap, ExactError> {
        let mut triplets = Vec::with_capacity(s.entries.len());
        for (r, c, n, d) in &s.entries {
            if *r >= s.cod_dim || *c >= s.dom_dim {
                return Err(ExactError::Parse(format!("entry ({r},{c}) outside {}x{}", s.cod_dim, s.dom_dim)));
            }
            triplets.push((*r, *c, format!("{n}/{d}").parse::<Scalar>()?));
        }
        Ok(SparseMap::from_triplets(s.cod_dim, s.dom_dim, triplets))
    }

    pub fn to_json(&self) -> Result<String, ExactError> {
        Ok(serde_json::to_string(&self.to_serial())?)
    }

    pub fn from_json(s: &str) -> Result<SparseMap, ExactError> {
        Self::from_serial(&serde_json::from_str(s)?)
    }
}

/// On-disk form: dimensions plus `(row, col, numerator, denominator)` with decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialMatrix {
    pub cod_dim: usize,
    pub dom_dim: usize,
    pub entries: Vec<(usize, usize, String, String)>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
