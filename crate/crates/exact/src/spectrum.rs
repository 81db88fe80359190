use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::{ExactError, Poly, Scalar, SparseMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: Scalar,
    pub algebraic: usize,
    pub geometric: usize,
}

/// Rational spectrum of a square matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub dim: usize,
    /// Sorted by value.
    pub eigenvalues: Vec<Eigenvalue>,
    pub diagonalizable: bool,
}

impl Spectrum {
    pub fn values(&self) -> Vec<Scalar> {
        self.eigenvalues.iter().map(|e| e.value.clone()).collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.eigenvalues.iter().all(|e| !e.value.is_zero())
    }

    pub fn algebraic_total(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.algebraic).sum()
    }
}

impl SparseMap {
    /// Characteristic polynomial as the product over connected blocks.
    pub fn char_poly(&self) -> Result<Poly, ExactError> {
        let blocks = self.square_blocks()?;
        let mut p = Poly::one();
        for idx in blocks {
            p = p.mul(&self.submatrix(&idx, &idx).to_dense().char_poly()?);
        }
        Ok(p)
    }

    /// Exact rational spectrum; fails if some eigenvalue is irrational.
    pub fn rational_spectrum(&self) -> Result<Spectrum, ExactError> {
        let blocks = self.square_blocks()?;
        let mut roots_cache: HashMap<Poly, Vec<(Scalar, usize)>> = HashMap::new();
        let mut acc: BTreeMap<Scalar, (usize, usize)> = BTreeMap::new();
        let mut diagonalizable = true;
        for idx in blocks {
            let block = self.submatrix(&idx, &idx).to_dense();
            let n = idx.len();
            let cp = block.char_poly()?;
            let roots = match roots_cache.get(&cp) {
                Some(r) => r.clone(),
                None => {
                    let r: Vec<(Scalar, usize)> =
                        cp.rational_roots().into_iter().map(|x| { let m = cp.multiplicity(&x); (x, m) }).collect();
                    let total: usize = r.iter().map(|(_, m)| m).sum();
                    if total != n {
                        let residual = r
                            .iter()
                            .fold(cp.clone(), |p, (x, m)| (0..*m).fold(p, |p, _| p.div_rem(&Poly::linear(-x.clone())).0));
                        return Err(ExactError::NonSplitSpectrum { degree: n - total, residual });
                    }
                    roots_cache.insert(cp.clone(), r.clone());
                    r
                }
            };
            let mut min_poly_test = DenseMatrix::identity(n);
            for (x, m) in &roots {
                let shifted = block.shift(x);
                let geo = if *m == 1 { 1 } else { n - shifted.rank() };
                if geo < *m {
                    diagonalizable = false;
                }
                if diagonalizable {
                    min_poly_test = min_poly_test.mul(&shifted);
                }
                let e = acc.entry(x.clone()).or_insert((0, 0));
                e.0 += m;
                e.1 += geo;
            }
            debug_assert!(!diagonalizable || min_poly_test.is_zero());
        }
        Ok(Spectrum {
            dim: self.cod(),
            eigenvalues: acc
                .into_iter()
                .map(|(value, (algebraic, geometric))| Eigenvalue { value, algebraic, geometric })
                .collect(),
            diagonalizable,
        })
    }

    /// Whether the product of `(M - λ)` over the given distinct values vanishes.
    pub fn annihilated_by(&self, values: &[Scalar]) -> Result<bool, ExactError> {
        let blocks = self.square_blocks()?;
        for idx in blocks {
            let block = self.submatrix(&idx, &idx).to_dense();
            let mut p = DenseMatrix::identity(idx.len());
            for v in values {
                p = p.mul(&block.shift(v));
            }
            if !p.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
