use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{ExactError, Poly, Scalar};

/// Small dense rational matrix used inside connected blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "dense product shape");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &Scalar) -> DenseMatrix {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) - c;
            out.set(i, i, v);
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        let (m, n) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let pivot = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].bits());
            let Some(p) = pivot else { continue };
            a.swap(r, p);
            for i in (r + 1)..m {
                for j in (c + 1)..n {
                    let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Characteristic polynomial `det(tI - A)` via Hessenberg reduction.
    pub fn char_poly(&self) -> Result<Poly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut h = self.clone();
        for k in 0..n.saturating_sub(2) {
            let col = k;
            let pivot = ((k + 1)..n).find(|&i| !h.get(i, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != k + 1 {
                for j in 0..n {
                    h.data.swap(p * n + j, (k + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + k + 1);
                }
            }
            let piv = h.get(k + 1, col).clone();
            for i in (k + 2)..n {
                let f = h.get(i, col) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = h.get(i, j) - &(&f * h.get(k + 1, j));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = h.get(r, k + 1) + &(&f * h.get(r, i));
                    h.set(r, k + 1, v);
                }
            }
        }
        // p_k = (t - h_kk) p_{k-1} - sum_{i<k} h_ik * prod_{j=i+1..k} h_{j,j-1} * p_{i-1}
        let mut polys: Vec<Poly> = vec![Poly::one()];
        for k in 0..n {
            let mut pk = polys[k].mul(&Poly::linear(-h.get(k, k).clone()));
            let mut prod = Scalar::one();
            for i in (0..k).rev() {
                prod *= h.get(i + 1, i);
                if prod.is_zero() {
                    break;
                }
                let c = &prod * h.get(i, k);
                if !c.is_zero() {
                    pk = pk.sub(&polys[i].scale(&c));
                }
            }
            polys.push(pk);
        }
        Ok(polys.pop().unwrap())
    }

    /// Characteristic polynomial by the Faddeev-LeVerrier recursion.
    pub fn char_poly_faddeev(&self) -> Result<Poly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = DenseMatrix::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m).shift(&-coeffs[n - k + 1].clone());
            let am = self.mul(&m);
            coeffs[n - k] = -am.trace() / Scalar::from(k as i64);
        }
        Ok(Poly::new(coeffs))
    }

    pub fn inverse(&self) -> Result<DenseMatrix, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = DenseMatrix::identity(n);
        for c in 0..n {
            let p = (c..n)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by_key(|&i| a.get(i, c).bits())
                .ok_or(ExactError::Singular)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = a.get(c, c).recip();
            for j in 0..n {
                let v = a.get(c, j) * &piv;
                a.set(c, j, v);
                let w = inv.get(c, j) * &piv;
                inv.set(c, j, w);
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(i, j) - &(&f * a.get(c, j));
                    a.set(i, j, v);
                    let w = inv.get(i, j) - &(&f * inv.get(c, j));
                    inv.set(i, j, w);
                }
            }
        }
        Ok(inv)
    }

    /// Evaluates a polynomial at the matrix (Horner).
    pub fn eval_poly(&self, p: &Poly) -> DenseMatrix {
        let n = self.rows;
        let mut acc = DenseMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).shift(&-c.clone());
        }
        acc
    }

    pub fn max_abs_bits(&self) -> u64 {
        self.data.iter().map(|x| x.numer().abs().bits()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn bareiss_rank() {
        let m = DenseMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let z = DenseMatrix::from_i64(&[&[0, 0], &[0, 0]]);
        assert_eq!(z.rank(), 0);
        let s = DenseMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn char_poly_routes_agree() {
        let m = DenseMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(2, 1), q(-1, 3)],
            vec![q(4, 1), q(0, 1), q(1, 1)],
        ]);
        let a = m.char_poly().unwrap();
        let b = m.char_poly_faddeev().unwrap();
        assert_eq!(a, b);
        assert!(m.eval_poly(&a).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = DenseMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), DenseMatrix::identity(2));
        assert!(DenseMatrix::from_i64(&[&[1, 1], &[1, 1]]).inverse().is_err());
    }
}
