//! Literal tensor-power constructions: transpositions, permutation operators,
//! projectors and pairings on raw `V^{⊗N}`-type ambients.
//! These are the slow reference route for the closed-form power-basis formulas.

use std::sync::Arc;

use dkoszul_exact::{Scalar, SparseMap, SparseVec};

use super::{distinct_words, Kind, PowerBasis, SuperSpace, TensorAmbient};
use crate::CoreError;

/// Ambient `W_1 ⊗ … ⊗ W_N` with each `W_i` equal to V (`false`) or V* (`true`).
pub fn raw_ambient(space: SuperSpace, pattern: &[bool]) -> TensorAmbient {
    TensorAmbient::new(pattern.iter().map(|&d| PowerBasis::line(space, d)).collect()).expect("same space")
}

fn words(space: SuperSpace, n: usize) -> impl Iterator<Item = Vec<u8>> {
    let d = space.dim();
    (0..d.pow(n as u32)).map(move |mut idx| {
        let mut w = vec![0u8; n];
        for slot in w.iter_mut().rev() {
            *slot = (idx % d) as u8;
            idx /= d;
        }
        w
    })
}

fn word_index(space: SuperSpace, word: &[u8]) -> usize {
    word.iter().fold(0, |acc, &c| acc * space.dim() + c as usize)
}

/// Adjacent transposition `s_j` (1-based, swapping slots j and j+1) on `V^{⊗N}` with its Koszul sign.
pub fn transposition_matrix(space: SuperSpace, j: usize, n: usize) -> Result<SparseMap, CoreError> {
    if j == 0 || j >= n {
        return Err(CoreError::Config(format!("transposition s_{j} out of range for N = {n}")));
    }
    let dim = space.dim().pow(n as u32);
    let trip = words(space, n).map(|w| {
        let mut t = w.clone();
        t.swap(j - 1, j);
        let sign = if space.parity(w[j - 1]) == 1 && space.parity(w[j]) == 1 { -1 } else { 1 };
        (word_index(space, &t), word_index(space, &w), Scalar::from(sign))
    });
    Ok(SparseMap::from_triplets(dim, dim, trip.collect::<Vec<_>>()))
}

/// Reduced word of a permutation (one-line notation, `perm[i]` = destination of slot i) by bubble sort.
fn reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut out = Vec::new();
    // sort p ascending; each swap at (j, j+1) records s_{j+1}
    for i in 0..p.len() {
        for j in 0..p.len().saturating_sub(1 + i) {
            if p[j] > p[j + 1] {
                p.swap(j, j + 1);
                out.push(j + 1);
            }
        }
    }
    out
}

/// `T_w` assembled as a product of adjacent transposition matrices.
pub fn permutation_matrix_bruteforce(space: SuperSpace, perm: &[usize]) -> Result<SparseMap, CoreError> {
    let n = perm.len();
    let dim = space.dim().pow(n as u32);
    let mut acc = SparseMap::identity(dim);
    for j in reduced_word(perm) {
        acc = transposition_matrix(space, j, n)?.compose(&acc)?;
    }
    Ok(acc)
}

/// `T_w` by the direct inversion-sign formula: slot `i` moves to slot `perm[i]`.
pub fn permutation_matrix(space: SuperSpace, perm: &[usize]) -> SparseMap {
    let n = perm.len();
    let dim = space.dim().pow(n as u32);
    let trip = words(space, n).map(|w| {
        let mut t = vec![0u8; n];
        for (i, &c) in w.iter().enumerate() {
            t[perm[i]] = c;
        }
        let mut sign = 1;
        for a in 0..n {
            for b in (a + 1)..n {
                if perm[a] > perm[b] && space.parity(w[a]) == 1 && space.parity(w[b]) == 1 {
                    sign = -sign;
                }
            }
        }
        (word_index(space, &t), word_index(space, &w), Scalar::from(sign))
    });
    SparseMap::from_triplets(dim, dim, trip.collect::<Vec<_>>())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let sorted: Vec<u8> = (0..n as u8).collect();
    distinct_words(&sorted).into_iter().map(|w| w.into_iter().map(usize::from).collect()).collect()
}

fn perm_sign(perm: &[usize]) -> i64 {
    let inv = (0..perm.len())
        .flat_map(|a| ((a + 1)..perm.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| perm[a] > perm[b])
        .count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(1/N!) Σ_w (sign w)^ε T_w` summed literally over the symmetric group.
pub fn projector_bruteforce(space: SuperSpace, kind: Kind, n: usize) -> Result<SparseMap, CoreError> {
    let dim = space.dim().pow(n as u32);
    let perms = permutations(n);
    let mut acc = SparseMap::zero(dim, dim);
    for p in &perms {
        let c = match kind {
            Kind::Symmetric => Scalar::one(),
            Kind::Exterior => Scalar::from(perm_sign(p)),
        };
        acc = acc.axpy(&c, &permutation_matrix_bruteforce(space, p)?)?;
    }
    Ok(acc.scale(&Scalar::new(1, perms.len() as i64)))
}

/// Projector by the orbit formula: a word `t` maps to `κ(t)·(Π mult!/N!)·e_{sort t}`.
pub fn projector(space: SuperSpace, kind: Kind, n: usize) -> SparseMap {
    let pb = PowerBasis::get(space, kind, n, false);
    let dim = space.dim().pow(n as u32);
    let real = pb.realization();
    let fact = |k: usize| (1..=k as i64).map(Scalar::from).product::<Scalar>();
    let columns = words(space, n)
        .map(|w| {
            let mut s = w.clone();
            s.sort_unstable();
            match pb.index_of(&s) {
                None => SparseVec::new(),
                Some(idx) => {
                    let mut mult = Scalar::one();
                    let mut i = 0;
                    while i < s.len() {
                        let j = s[i..].iter().take_while(|&&c| c == s[i]).count();
                        mult = mult * fact(j);
                        i += j;
                    }
                    let c = Scalar::from(pb.kappa(&w)) * mult / fact(n);
                    real.basis()[idx].scale(&c)
                }
            }
        })
        .collect();
    SparseMap::from_columns(dim, columns)
}

/// Inserts `Σ_c x_c ⊗ ξ^c` between slot `position-1` and slot `position` of a raw ambient.
pub fn coevaluation_insertion(
    space: SuperSpace,
    source: &TensorAmbient,
    position: usize,
) -> Result<(SparseMap, TensorAmbient), CoreError> {
    if source.space().is_some_and(|s| s != space) {
        return Err(CoreError::Config("ambient over a different super space".into()));
    }
    if position > source.factors().len() || source.factors().iter().any(|f| f.degree != 1) {
        return Err(CoreError::Config("coevaluation needs a raw ambient and a valid slot".into()));
    }
    let mut factors: Vec<Arc<PowerBasis>> = source.factors().to_vec();
    factors.insert(position, PowerBasis::line(space, false));
    factors.insert(position + 1, PowerBasis::line(space, true));
    let target = TensorAmbient::new(factors)?;
    let mut trip = Vec::new();
    for idx in 0..source.dim() {
        let parts = source.decode(idx);
        for c in 0..space.dim() {
            let mut t = parts.clone();
            t.insert(position, c);
            t.insert(position + 1, c);
            trip.push((target.index(&t), idx, Scalar::one()));
        }
    }
    Ok((SparseMap::from_triplets(target.dim(), source.dim(), trip), target))
}

/// `(id ⊗ ev ⊗ id)∘(id ⊗ τ ⊗ id)` on the adjacent slots `position`, `position+1`.
///
/// A `V ⊗ V*` pair is braided first (`x_c ⊗ ξ^d ↦ (-1)^{p(c)p(d)} ξ^d ⊗ x_c`); a `V* ⊗ V` pair is evaluated directly.
pub fn contraction_map(position: usize, ambient: &TensorAmbient) -> Result<(SparseMap, TensorAmbient), CoreError> {
    let f = ambient.factors();
    if position + 1 >= f.len() || f[position].degree != 1 || f[position + 1].degree != 1 {
        return Err(CoreError::Config(format!("no contractible pair at slot {position}")));
    }
    let braid = match (f[position].dual, f[position + 1].dual) {
        (false, true) => true,
        (true, false) => false,
        _ => return Err(CoreError::Config(format!("slots {position},{} are not a V/V* pair", position + 1))),
    };
    let space = f[position].space;
    let mut factors = f.to_vec();
    factors.drain(position..position + 2);
    let target = TensorAmbient::new(factors)?;
    let mut trip = Vec::new();
    for idx in 0..ambient.dim() {
        let mut parts = ambient.decode(idx);
        let (a, b) = (parts[position], parts[position + 1]);
        if a != b {
            continue;
        }
        let sign = if braid && space.parity(a as u8) == 1 { -1 } else { 1 };
        parts.drain(position..position + 2);
        trip.push((target.index(&parts), idx, Scalar::from(sign)));
    }
    Ok((SparseMap::from_triplets(target.dim(), ambient.dim(), trip), target))
}
