//! Graded bases of V and V*, super exterior/symmetric powers realized inside
//! tensor powers, and tensor ambients built from them.

mod raw;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use dkoszul_exact::{Scalar, Subspace};
use serde::{Deserialize, Serialize};

use crate::CoreError;

pub use raw::{
    coevaluation_insertion, contraction_map, permutation_matrix, permutation_matrix_bruteforce, projector,
    projector_bruteforce, raw_ambient, transposition_matrix,
};

/// Super vector space of dimension (m|n); letters `0..m` are even, `m..m+n` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SuperSpace {
    pub m: usize,
    pub n: usize,
}

impl SuperSpace {
    pub fn new(m: usize, n: usize) -> Result<Self, CoreError> {
        if m + n == 0 {
            return Err(CoreError::Config("super space needs m + n >= 1".into()));
        }
        if m + n > 255 {
            return Err(CoreError::Config("super space too large".into()));
        }
        Ok(SuperSpace { m, n })
    }

    /// The (3|1) alphabet.
    pub fn standard() -> Self {
        SuperSpace { m: 3, n: 1 }
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    pub fn parity(&self, letter: u8) -> u8 {
        u8::from(letter as usize >= self.m)
    }

    /// Weight of `x_c` (or of `ξ^c` when `dual`), as an ε-coordinate vector.
    pub fn letter_weight(&self, letter: u8, dual: bool) -> Vec<i64> {
        let mut w = vec![0; self.dim()];
        w[letter as usize] = if dual { -1 } else { 1 };
        w
    }

    pub fn label(&self, letter: u8, dual: bool) -> String {
        if dual {
            format!("ξ{}", letter + 1)
        } else {
            format!("x{}", letter + 1)
        }
    }

    /// Parity of a weight: sum of the odd-coordinate entries mod 2.
    pub fn weight_parity(&self, w: &[i64]) -> u8 {
        (w[self.m..].iter().sum::<i64>().rem_euclid(2)) as u8
    }

    /// `(w_1..w_m | -w_{m+1}..-w_{m+n})`, the highest-weight label convention.
    pub fn label_weight(&self, w: &[i64]) -> WeightTuple {
        WeightTuple {
            even: w[..self.m].to_vec(),
            odd: w[self.m..].iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for SuperSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.m, self.n)
    }
}

/// Weight written as `(λ1,…,λm | λ_{m+1},…)` with the odd entries sign-flipped from ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightTuple {
    pub even: Vec<i64>,
    pub odd: Vec<i64>,
}

impl WeightTuple {
    pub fn new(even: &[i64], odd: &[i64]) -> Self {
        WeightTuple { even: even.to_vec(), odd: odd.to_vec() }
    }

    pub fn to_epsilon(&self) -> Vec<i64> {
        self.even.iter().copied().chain(self.odd.iter().map(|x| -x)).collect()
    }
}

impl fmt::Display for WeightTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", j(&self.even), j(&self.odd))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Exterior,
    Symmetric,
}

impl Kind {
    fn alternating(self) -> bool {
        self == Kind::Exterior
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of multisets of size `k` from `a` letters.
pub fn multichoose(a: usize, k: usize) -> u128 {
    if a == 0 {
        return u128::from(k == 0);
    }
    binomial(a + k - 1, k)
}

/// Closed-form dimension of the degree-`k` super exterior power.
pub fn exterior_dim(space: SuperSpace, k: usize) -> u128 {
    (0..=k.min(space.m)).map(|j| binomial(space.m, j) * multichoose(space.n, k - j)).sum()
}

/// Closed-form dimension of the degree-`l` super symmetric power.
pub fn symmetric_dim(space: SuperSpace, l: usize) -> u128 {
    (0..=l.min(space.n)).map(|j| binomial(space.n, j) * multichoose(space.m, l - j)).sum()
}

/// Basis of a super exterior or symmetric power of V (or V*).
///
/// Element `S` (a sorted multiset of letters) stands for the projector-image
/// vector `e_S = Σ_t κ(t)·t` over the distinct words `t` of `S`, normalized to
/// coefficient 1 at the sorted word.
#[derive(Debug)]
pub struct PowerBasis {
    pub space: SuperSpace,
    pub kind: Kind,
    pub degree: usize,
    pub dual: bool,
    elems: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    weights: Vec<Vec<i64>>,
    parities: Vec<u8>,
}

type BasisKey = (SuperSpace, Kind, usize, bool);

fn basis_cache() -> &'static RwLock<HashMap<BasisKey, Arc<PowerBasis>>> {
    static CACHE: OnceLock<RwLock<HashMap<BasisKey, Arc<PowerBasis>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl PowerBasis {
    /// Memoized constructor.
    pub fn get(space: SuperSpace, kind: Kind, degree: usize, dual: bool) -> Arc<PowerBasis> {
        let key = (space, kind, degree, dual);
        if let Some(b) = basis_cache().read().expect("basis cache poisoned").get(&key) {
            return b.clone();
        }
        let b = Arc::new(Self::build(space, kind, degree, dual));
        basis_cache().write().expect("basis cache poisoned").entry(key).or_insert(b).clone()
    }

    /// A single copy of V or V*.
    pub fn line(space: SuperSpace, dual: bool) -> Arc<PowerBasis> {
        Self::get(space, Kind::Symmetric, 1, dual)
    }

    fn build(space: SuperSpace, kind: Kind, degree: usize, dual: bool) -> PowerBasis {
        let mut elems = Vec::new();
        let mut cur = Vec::with_capacity(degree);
        fn rec(space: SuperSpace, kind: Kind, degree: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == degree {
                out.push(cur.clone());
                return;
            }
            for c in start..space.dim() as u8 {
                if cur.last() == Some(&c) && killed_pair(space, kind, c) {
                    continue;
                }
                cur.push(c);
                rec(space, kind, degree, c, cur, out);
                cur.pop();
            }
        }
        rec(space, kind, degree, 0, &mut cur, &mut elems);
        let index = elems.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let weights = elems
            .iter()
            .map(|s| {
                let mut w = vec![0i64; space.dim()];
                for &c in s {
                    w[c as usize] += if dual { -1 } else { 1 };
                }
                w
            })
            .collect();
        let parities = elems.iter().map(|s| (s.iter().map(|&c| space.parity(c)).sum::<u8>()) % 2).collect();
        PowerBasis { space, kind, degree, dual, elems, index, weights, parities }
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, i: usize) -> &[u8] {
        &self.elems[i]
    }

    pub fn elems(&self) -> &[Vec<u8>] {
        &self.elems
    }

    pub fn index_of(&self, sorted: &[u8]) -> Option<usize> {
        self.index.get(sorted).copied()
    }

    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parities[i]
    }

    pub fn label(&self, i: usize) -> String {
        if self.degree == 0 {
            return "1".into();
        }
        let sep = match self.kind {
            Kind::Exterior => "∧",
            Kind::Symmetric => "·",
        };
        self.elems[i].iter().map(|&c| self.space.label(c, self.dual)).collect::<Vec<_>>().join(sep)
    }

    pub fn killed(&self, sorted: &[u8]) -> bool {
        sorted.windows(2).any(|w| w[0] == w[1] && killed_pair(self.space, self.kind, w[0]))
    }

    /// Sign κ(t): the coefficient of the word `t` in `e_{sort t}`.
    pub fn kappa(&self, word: &[u8]) -> i64 {
        kappa(self.space, self.kind, word)
    }

    /// Projection of `e_A ⊗ x_c` (tensor order A then c): `(index of A+c, coefficient)`.
    pub fn join_back(&self, a: &[u8], c: u8) -> Option<(usize, Scalar)> {
        let mut word = a.to_vec();
        word.push(c);
        self.join_word(&word, c)
    }

    /// Projection of `x_c ⊗ e_A`.
    pub fn join_front(&self, c: u8, a: &[u8]) -> Option<(usize, Scalar)> {
        let mut word = Vec::with_capacity(a.len() + 1);
        word.push(c);
        word.extend_from_slice(a);
        self.join_word(&word, c)
    }

    fn join_word(&self, word: &[u8], c: u8) -> Option<(usize, Scalar)> {
        debug_assert_eq!(word.len(), self.degree);
        let mut s = word.to_vec();
        s.sort_unstable();
        let idx = self.index_of(&s)?;
        let mult = s.iter().filter(|&&x| x == c).count();
        Some((idx, Scalar::new(mult as i64 * self.kappa(word), self.degree as i64)))
    }

    /// `e_S = Σ_c κ(t_{S-c}·c) e_{S-c} ⊗ x_c`, over distinct letters `c` of `S`.
    pub fn split_back(&self, s: &[u8]) -> Vec<(u8, Vec<u8>, i64)> {
        distinct(s)
            .map(|c| {
                let rest = remove_one(s, c);
                let mut word = rest.clone();
                word.push(c);
                let k = self.kappa(&word);
                (c, rest, k)
            })
            .collect()
    }

    /// `e_S = Σ_c κ(c·t_{S-c}) x_c ⊗ e_{S-c}`.
    pub fn split_front(&self, s: &[u8]) -> Vec<(u8, Vec<u8>, i64)> {
        distinct(s)
            .map(|c| {
                let rest = remove_one(s, c);
                let mut word = vec![c];
                word.extend_from_slice(&rest);
                let k = self.kappa(&word);
                (c, rest, k)
            })
            .collect()
    }

    /// Index of a word in the raw tensor power (first letter most significant).
    pub fn word_index(&self, word: &[u8]) -> usize {
        word.iter().fold(0, |acc, &c| acc * self.space.dim() + c as usize)
    }

    pub fn to_serial(&self) -> SerialBasis {
        let coordinates = self
            .realization()
            .basis()
            .iter()
            .map(|v| v.iter().map(|(i, x)| (i, x.numer().to_string(), x.denom().to_string())).collect())
            .collect();
        SerialBasis {
            m: self.space.m,
            n: self.space.n,
            kind: self.kind,
            degree: self.degree,
            dual: self.dual,
            labels: (0..self.dim()).map(|i| self.label(i)).collect(),
            weights: self.weights.clone(),
            parities: self.parities.clone(),
            coordinates,
        }
    }

    /// The vectors `e_S` inside the raw tensor power, as a reduced echelon subspace.
    pub fn realization(&self) -> Subspace {
        let d = self.space.dim();
        let ambient = d.pow(self.degree as u32);
        let basis = self
            .elems
            .iter()
            .map(|s| {
                dkoszul_exact::SparseVec::from_pairs(
                    distinct_words(s).into_iter().map(|w| (self.word_index(&w), Scalar::from(self.kappa(&w)))),
                )
            })
            .collect();
        Subspace::from_reduced_basis(ambient, basis)
    }
}

/// On-disk form of a [`PowerBasis`]: labels, weights, parities and the
/// coordinates of each `e_S` in the raw tensor power as
/// `(word index, numerator, denominator)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialBasis {
    pub m: usize,
    pub n: usize,
    pub kind: Kind,
    pub degree: usize,
    pub dual: bool,
    pub labels: Vec<String>,
    pub weights: Vec<Vec<i64>>,
    pub parities: Vec<u8>,
    pub coordinates: Vec<Vec<(usize, String, String)>>,
}

impl SerialBasis {
    /// The basis this record describes, if the record is faithful to it.
    pub fn resolve(&self) -> Result<Arc<PowerBasis>, CoreError> {
        let space = SuperSpace::new(self.m, self.n)?;
        let b = PowerBasis::get(space, self.kind, self.degree, self.dual);
        if b.to_serial() != *self {
            return Err(CoreError::Config(format!("serialized {:?}_{} does not match the computed basis", self.kind, self.degree)));
        }
        Ok(b)
    }
}

fn killed_pair(space: SuperSpace, kind: Kind, c: u8) -> bool {
    // repeated odd letter dies in S, repeated even letter dies in Λ
    (space.parity(c) == 1) != kind.alternating()
}

pub(crate) fn kappa(space: SuperSpace, kind: Kind, word: &[u8]) -> i64 {
    let mut w = word.to_vec();
    let mut s = 1;
    for i in 0..w.len() {
        for j in 0..w.len().saturating_sub(1 + i) {
            if w[j] > w[j + 1] {
                if space.parity(w[j]) == 1 && space.parity(w[j + 1]) == 1 {
                    s = -s;
                }
                if kind.alternating() {
                    s = -s;
                }
                w.swap(j, j + 1);
            }
        }
    }
    s
}

fn distinct(s: &[u8]) -> impl Iterator<Item = u8> + '_ {
    s.iter().enumerate().filter(move |(i, c)| *i == 0 || s[i - 1] != **c).map(|(_, c)| *c)
}

fn remove_one(s: &[u8], c: u8) -> Vec<u8> {
    let mut v = s.to_vec();
    let pos = v.iter().position(|&x| x == c).expect("letter present");
    v.remove(pos);
    v
}

/// All distinct rearrangements of a sorted multiset, in lexicographic order.
pub fn distinct_words(sorted: &[u8]) -> Vec<Vec<u8>> {
    let mut w = sorted.to_vec();
    let mut out = vec![w.clone()];
    loop {
        let n = w.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && w[i - 1] >= w[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while w[j] <= w[i - 1] {
            j -= 1;
        }
        w.swap(i - 1, j);
        w[i..].reverse();
        out.push(w.clone());
    }
}

/// Ordered tensor product of power-basis factors with the lexicographic product basis.
#[derive(Clone, Debug)]
pub struct TensorAmbient {
    factors: Vec<Arc<PowerBasis>>,
    strides: Vec<usize>,
    dim: usize,
}

impl TensorAmbient {
    pub fn new(factors: Vec<Arc<PowerBasis>>) -> Result<Self, CoreError> {
        if let Some(first) = factors.first() {
            if factors.iter().any(|f| f.space != first.space) {
                return Err(CoreError::Config("tensor factors over different super spaces".into()));
            }
        }
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].dim();
        }
        let dim = factors.iter().map(|f| f.dim()).product();
        Ok(TensorAmbient { factors, strides, dim })
    }

    pub fn factors(&self) -> &[Arc<PowerBasis>] {
        &self.factors
    }

    pub fn space(&self) -> Option<SuperSpace> {
        self.factors.first().map(|f| f.space)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.strides).map(|(p, s)| p * s).sum()
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let p = idx / s;
                idx %= s;
                p
            })
            .collect()
    }

    pub fn weight(&self, idx: usize) -> Vec<i64> {
        let parts = self.decode(idx);
        let n = self.space().map_or(0, |s| s.dim());
        let mut w = vec![0; n];
        for (f, p) in self.factors.iter().zip(parts) {
            for (a, b) in w.iter_mut().zip(f.weight(p)) {
                *a += b;
            }
        }
        w
    }

    pub fn parity(&self, idx: usize) -> u8 {
        let parts = self.decode(idx);
        self.factors.iter().zip(parts).map(|(f, p)| f.parity(p)).sum::<u8>() % 2
    }

    pub fn label(&self, idx: usize) -> String {
        let parts = self.decode(idx);
        self.factors.iter().zip(parts).map(|(f, p)| f.label(p)).collect::<Vec<_>>().join(" ⊗ ")
    }

    /// Weight and parity of every basis element, computed in one pass.
    pub fn grading(&self) -> (Vec<Vec<i64>>, Vec<u8>) {
        (0..self.dim).map(|i| (self.weight(i), self.parity(i))).unzip()
    }

    /// Dimensions per weight, split by parity.
    pub fn weight_table(&self, sub: &Subspace) -> Result<BTreeMap<Vec<i64>, (usize, usize)>, CoreError> {
        if sub.ambient() != self.dim {
            return Err(CoreError::Exact(dkoszul_exact::ExactError::DimensionMismatch {
                context: "weight table",
                left: sub.ambient(),
                right: self.dim,
            }));
        }
        let mut table: BTreeMap<Vec<i64>, (usize, usize)> = BTreeMap::new();
        let homogeneous = sub.basis().iter().all(|v| {
            let w0 = self.weight(v.first().expect("nonzero").0);
            v.iter().all(|(i, _)| self.weight(i) == w0)
        });
        if homogeneous {
            for v in sub.basis() {
                let p = v.first().expect("nonzero").0;
                let e = table.entry(self.weight(p)).or_default();
                if self.parity(p) == 0 {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
            return Ok(table);
        }
        // intersect with each coordinate weight space
        let mut by_weight: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim {
            by_weight.entry(self.weight(i)).or_default().push(i);
        }
        for (w, idx) in by_weight {
            let coord = Subspace::span(self.dim, idx.iter().map(|&i| dkoszul_exact::SparseVec::unit(i)));
            let d = sub.intersect(&coord)?.dim();
            if d > 0 {
                let parity = self.parity(idx[0]);
                table.insert(w, if parity == 0 { (d, 0) } else { (0, d) });
            }
        }
        Ok(table)
    }
}
