//! The differentials d, ∂ (on `Λ_k ⊗ S*_l`) and P, Q (on `S_p ⊗ Λ_r`), the
//! triple products `S_i·Λ_k·S*_l`, and the checks built from them.

mod raw;
mod spectra;
mod splitting;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use dkoszul_exact::{Scalar, SparseMap, SparseVec, Subspace};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::superspace::{Kind, PowerBasis, SuperSpace, TensorAmbient};
use crate::{CoreError, Result};

pub use raw::raw_differential;
pub use spectra::{spectrum_report, Prediction, SpectralOperator, SpectrumReport};
pub use splitting::{splitting, Splitting, SplittingKind};

/// Version tag of the normalization used for d.
pub const CALIBRATION: &str = "unit-v1";

/// A term of the complexes.
///
/// `K { k, l }` is `Λ_k ⊗ S*_l`, `L { p, r }` is `S_p ⊗ Λ_r` and
/// `Triple { i, k, l }` is `S_i ⊗ Λ_k ⊗ S*_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Spot {
    K { k: usize, l: usize },
    L { p: usize, r: usize },
    Triple { i: usize, k: usize, l: usize },
}

impl fmt::Display for Spot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spot::K { k, l } => write!(f, "K({k},{l})"),
            Spot::L { p, r } => write!(f, "L({p},{r})"),
            Spot::Triple { i, k, l } => write!(f, "T({i},{k},{l})"),
        }
    }
}

impl Spot {
    pub fn ambient(&self, space: SuperSpace) -> TensorAmbient {
        let ext = |k| PowerBasis::get(space, Kind::Exterior, k, false);
        let sym = |k| PowerBasis::get(space, Kind::Symmetric, k, false);
        let dsym = |k| PowerBasis::get(space, Kind::Symmetric, k, true);
        let factors = match *self {
            Spot::K { k, l } => vec![ext(k), dsym(l)],
            Spot::L { p, r } => vec![sym(p), ext(r)],
            Spot::Triple { i, k, l } => vec![sym(i), ext(k), dsym(l)],
        };
        TensorAmbient::new(factors).expect("one space")
    }

    pub fn dim(&self, space: SuperSpace) -> usize {
        self.ambient(space).dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiffKind {
    D,
    Del,
    P,
    Q,
}

impl fmt::Display for DiffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiffKind::D => "d",
            DiffKind::Del => "del",
            DiffKind::P => "P",
            DiffKind::Q => "Q",
        })
    }
}

impl std::str::FromStr for DiffKind {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d" | "D" => Ok(DiffKind::D),
            "del" | "∂" => Ok(DiffKind::Del),
            "P" | "p" => Ok(DiffKind::P),
            "Q" | "q" => Ok(DiffKind::Q),
            _ => Err(CoreError::Config(format!("unknown differential {s:?}"))),
        }
    }
}

fn invalid(kind: DiffKind, spot: Spot) -> CoreError {
    CoreError::InvalidSpot(format!("{kind} has no component with subscript {spot}"))
}

/// Source and target of the component of `kind` with the given subscript.
///
/// Subscripts follow the usual convention: `d_{k,l}: K(k,l) → K(k+1,l+1)`,
/// `∂_{k,l}: K(k+1,l+1) → K(k,l)`, `P_{p,r}: L(p,r) → L(p-1,r+1)`,
/// `Q_{p,r}: L(p-1,r+1) → L(p,r)`. On triples d and ∂ act on the last two
/// factors and P, Q on the first two.
pub fn endpoints(kind: DiffKind, sub: Spot) -> Result<(Spot, Spot)> {
    use DiffKind::*;
    use Spot::*;
    Ok(match (kind, sub) {
        (D, K { k, l }) => (sub, K { k: k + 1, l: l + 1 }),
        (Del, K { k, l }) => (K { k: k + 1, l: l + 1 }, sub),
        (P, L { p, r }) if p >= 1 => (sub, L { p: p - 1, r: r + 1 }),
        (Q, L { p, r }) if p >= 1 => (L { p: p - 1, r: r + 1 }, sub),
        (D, Triple { i, k, l }) => (sub, Triple { i, k: k + 1, l: l + 1 }),
        (Del, Triple { i, k, l }) => (Triple { i, k: k + 1, l: l + 1 }, sub),
        (P, Triple { i, k, l }) if i >= 1 => (sub, Triple { i: i - 1, k: k + 1, l }),
        (Q, Triple { i, k, l }) if i >= 1 => (Triple { i: i - 1, k: k + 1, l }, sub),
        _ => return Err(invalid(kind, sub)),
    })
}

/// Subscript of the component of `kind` whose source is `source`.
pub fn subscript_from_source(kind: DiffKind, source: Spot) -> Result<Spot> {
    use DiffKind::*;
    use Spot::*;
    let bad = || CoreError::InvalidSpot(format!("{kind} does not act on {source}"));
    Ok(match (kind, source) {
        (D, K { .. }) | (D, Triple { .. }) => source,
        (P, L { p, .. }) if p >= 1 => source,
        (P, Triple { i, .. }) if i >= 1 => source,
        (Del, K { k, l }) if k >= 1 && l >= 1 => K { k: k - 1, l: l - 1 },
        (Del, Triple { i, k, l }) if k >= 1 && l >= 1 => Triple { i, k: k - 1, l: l - 1 },
        (Q, L { p, r }) if r >= 1 => L { p: p + 1, r: r - 1 },
        (Q, Triple { i, k, l }) if k >= 1 => Triple { i: i + 1, k: k - 1, l },
        _ => return Err(bad()),
    })
}

type DiffKey = (SuperSpace, DiffKind, Spot);

fn diff_cache() -> &'static RwLock<HashMap<DiffKey, Arc<SparseMap>>> {
    static CACHE: OnceLock<RwLock<HashMap<DiffKey, Arc<SparseMap>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Matrix of the component of `kind` with subscript `sub`, in power-basis coordinates.
pub fn differential(space: SuperSpace, kind: DiffKind, sub: Spot) -> Result<Arc<SparseMap>> {
    endpoints(kind, sub)?;
    let key = (space, kind, sub);
    if let Some(m) = diff_cache().read().expect("cache poisoned").get(&key) {
        return Ok(m.clone());
    }
    let m = Arc::new(build(space, kind, sub)?);
    Ok(diff_cache().write().expect("cache poisoned").entry(key).or_insert(m).clone())
}

/// Seeds the memo with a matrix obtained elsewhere (e.g. an on-disk cache).
///
/// Returns `false` if a matrix for this component was already present; the
/// memoized one is kept.
pub fn preload_differential(space: SuperSpace, kind: DiffKind, sub: Spot, map: SparseMap) -> Result<bool> {
    let (src, tgt) = endpoints(kind, sub)?;
    let (dom, cod) = (src.dim(space), tgt.dim(space));
    if map.dom() != dom || map.cod() != cod {
        return Err(CoreError::Config(format!(
            "{kind}_{sub} on {space} is {cod}x{dom}, preloaded matrix is {}x{}",
            map.cod(),
            map.dom()
        )));
    }
    let mut cache = diff_cache().write().expect("cache poisoned");
    if cache.contains_key(&(space, kind, sub)) {
        return Ok(false);
    }
    cache.insert((space, kind, sub), Arc::new(map));
    Ok(true)
}

/// Builds the matrix without consulting or filling the memo.
pub fn fresh_differential(space: SuperSpace, kind: DiffKind, sub: Spot) -> Result<SparseMap> {
    endpoints(kind, sub)?;
    build(space, kind, sub)
}

fn build(space: SuperSpace, kind: DiffKind, sub: Spot) -> Result<SparseMap> {
    let sym = |k| PowerBasis::get(space, Kind::Symmetric, k, false);
    let dsym = |k| PowerBasis::get(space, Kind::Symmetric, k, true);
    Ok(match sub {
        Spot::K { k, l } => match kind {
            DiffKind::D => d_map(space, k, l),
            DiffKind::Del => del_map(space, k, l),
            _ => return Err(invalid(kind, sub)),
        },
        Spot::L { p, r } => match kind {
            DiffKind::P => p_map(space, p, r),
            DiffKind::Q => q_map(space, p, r),
            _ => return Err(invalid(kind, sub)),
        },
        Spot::Triple { i, k, l } => match kind {
            DiffKind::D | DiffKind::Del => {
                let inner = differential(space, kind, Spot::K { k, l })?;
                SparseMap::identity(sym(i).dim()).kron(&inner)
            }
            DiffKind::P | DiffKind::Q => {
                let inner = differential(space, kind, Spot::L { p: i, r: k })?;
                inner.kron(&SparseMap::identity(dsym(l).dim()))
            }
        },
    })
}

/// Assembles a map column by column from a rule producing `(target parts, coefficient)` terms.
fn assemble<F>(source: &TensorAmbient, target: &TensorAmbient, rule: F) -> SparseMap
where
    F: Fn(&[usize]) -> Vec<(Vec<usize>, Scalar)> + Sync,
{
    let columns: Vec<SparseVec> = (0..source.dim())
        .into_par_iter()
        .map(|idx| {
            let parts = source.decode(idx);
            SparseVec::from_pairs(rule(&parts).into_iter().map(|(t, c)| (target.index(&t), c)))
        })
        .collect();
    SparseMap::from_columns(target.dim(), columns)
}

/// `d_{k,l}(e_A ⊗ e_B) = Σ_c (e_A ∧ x_c) ⊗ (ξ^c · e_B)`.
fn d_map(space: SuperSpace, k: usize, l: usize) -> SparseMap {
    let (src, tgt) = (Spot::K { k, l }.ambient(space), Spot::K { k: k + 1, l: l + 1 }.ambient(space));
    let (ea, sb) = (src.factors()[0].clone(), src.factors()[1].clone());
    let (ea1, sb1) = (tgt.factors()[0].clone(), tgt.factors()[1].clone());
    assemble(&src, &tgt, |parts| {
        let (a, b) = (ea.elem(parts[0]), sb.elem(parts[1]));
        (0..space.dim() as u8)
            .filter_map(|c| {
                let (ia, ca) = ea1.join_back(a, c)?;
                let (ib, cb) = sb1.join_front(c, b)?;
                Some((vec![ia, ib], ca * cb))
            })
            .collect()
    })
}

/// `∂_{k,l}`: contracts the last letter of the exterior factor with the first letter of the dual factor.
fn del_map(space: SuperSpace, k: usize, l: usize) -> SparseMap {
    let (src, tgt) = (Spot::K { k: k + 1, l: l + 1 }.ambient(space), Spot::K { k, l }.ambient(space));
    let (ea, sb) = (src.factors()[0].clone(), src.factors()[1].clone());
    let (ea0, sb0) = (tgt.factors()[0].clone(), tgt.factors()[1].clone());
    assemble(&src, &tgt, |parts| {
        let (a, b) = (ea.elem(parts[0]), sb.elem(parts[1]));
        let front = sb.split_front(b);
        ea.split_back(a)
            .into_iter()
            .filter_map(|(c, ar, ka)| {
                let (_, br, kb) = front.iter().find(|(d, _, _)| *d == c)?;
                let sign = if space.parity(c) == 1 { -1 } else { 1 };
                let ia = ea0.index_of(&ar).expect("sub-multiset is a basis element");
                let ib = sb0.index_of(br).expect("sub-multiset is a basis element");
                Some((vec![ia, ib], Scalar::from(sign * ka * kb)))
            })
            .collect()
    })
}

/// `P_{p,r}`: moves the last letter of the symmetric factor to the front of the exterior factor.
fn p_map(space: SuperSpace, p: usize, r: usize) -> SparseMap {
    let (src, tgt) = (Spot::L { p, r }.ambient(space), Spot::L { p: p - 1, r: r + 1 }.ambient(space));
    let (sp, ar) = (src.factors()[0].clone(), src.factors()[1].clone());
    let (sp0, ar1) = (tgt.factors()[0].clone(), tgt.factors()[1].clone());
    assemble(&src, &tgt, |parts| {
        let (s, a) = (sp.elem(parts[0]), ar.elem(parts[1]));
        sp.split_back(s)
            .into_iter()
            .filter_map(|(c, sr, ks)| {
                let (ia, ca) = ar1.join_front(c, a)?;
                let is = sp0.index_of(&sr).expect("sub-multiset is a basis element");
                Some((vec![is, ia], ca * Scalar::from(ks)))
            })
            .collect()
    })
}

/// `Q_{p,r}`: moves the first letter of the exterior factor to the back of the symmetric factor.
fn q_map(space: SuperSpace, p: usize, r: usize) -> SparseMap {
    let (src, tgt) = (Spot::L { p: p - 1, r: r + 1 }.ambient(space), Spot::L { p, r }.ambient(space));
    let (sp, ar) = (src.factors()[0].clone(), src.factors()[1].clone());
    let (sp1, ar0) = (tgt.factors()[0].clone(), tgt.factors()[1].clone());
    assemble(&src, &tgt, |parts| {
        let (s, a) = (sp.elem(parts[0]), ar.elem(parts[1]));
        ar.split_front(a)
            .into_iter()
            .filter_map(|(c, rest, ka)| {
                let (is, cs) = sp1.join_back(s, c)?;
                let ia = ar0.index_of(&rest).expect("sub-multiset is a basis element");
                Some((vec![is, ia], cs * Scalar::from(ka)))
            })
            .collect()
    })
}

/// Product of a word of differentials, each applied at the spot reached so far (first letter first).
pub fn composed_operator(space: SuperSpace, word: &[DiffKind], start: Spot) -> Result<(SparseMap, Spot)> {
    let mut acc = SparseMap::identity(start.dim(space));
    let mut at = start;
    for &kind in word {
        let sub = subscript_from_source(kind, at)?;
        let (_, target) = endpoints(kind, sub)?;
        acc = differential(space, kind, sub)?.compose(&acc)?;
        at = target;
    }
    Ok((acc, at))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    /// `lk·d∂ + (l+1)(k+1)·∂d = (l-k-n+m)·id` on `K(k,l)`.
    DelD,
    /// `r(p+1)·PQ + p(r+1)·QP = (p+r)·id` on `L(p,r)`.
    PQ,
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub spot: Spot,
    pub scalar: Scalar,
    /// Terms omitted because their prefactor vanishes.
    pub dropped: Vec<&'static str>,
    pub residual: SparseMap,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn identity_check(space: SuperSpace, identity: Identity, spot: Spot) -> Result<IdentityCheck> {
    let (m, n) = (space.m as i64, space.n as i64);
    let mut dropped = Vec::new();
    let (scalar, mut acc) = match (identity, spot) {
        (Identity::DelD, Spot::K { k, l }) => {
            let (ki, li) = (k as i64, l as i64);
            let s = Scalar::from(li - ki - n + m);
            let mut acc = SparseMap::scalar(spot.dim(space), &-s.clone());
            let dd = differential(space, DiffKind::Del, spot)?.compose(&*differential(space, DiffKind::D, spot)?)?;
            acc = acc.axpy(&Scalar::from((li + 1) * (ki + 1)), &dd)?;
            if k >= 1 && l >= 1 {
                let prev = Spot::K { k: k - 1, l: l - 1 };
                let dd = differential(space, DiffKind::D, prev)?.compose(&*differential(space, DiffKind::Del, prev)?)?;
                acc = acc.axpy(&Scalar::from(li * ki), &dd)?;
            } else {
                dropped.push("d∂");
            }
            (s, acc)
        }
        (Identity::PQ, Spot::L { p, r }) => {
            let (pi, ri) = (p as i64, r as i64);
            let s = Scalar::from(pi + ri);
            let mut acc = SparseMap::scalar(spot.dim(space), &-s.clone());
            if r >= 1 {
                let up = Spot::L { p: p + 1, r: r - 1 };
                let pq = differential(space, DiffKind::P, up)?.compose(&*differential(space, DiffKind::Q, up)?)?;
                acc = acc.axpy(&Scalar::from(ri * (pi + 1)), &pq)?;
            } else {
                dropped.push("PQ");
            }
            if p >= 1 {
                let qp = differential(space, DiffKind::Q, spot)?.compose(&*differential(space, DiffKind::P, spot)?)?;
                acc = acc.axpy(&Scalar::from(pi * (ri + 1)), &qp)?;
            } else {
                dropped.push("QP");
            }
            (s, acc)
        }
        _ => return Err(CoreError::InvalidSpot(format!("{identity:?} is not stated on {spot}"))),
    };
    acc = SparseMap::from_triplets(acc.cod(), acc.dom(), acc.triplets());
    Ok(IdentityCheck { identity, spot, scalar, dropped, residual: acc })
}

/// Normalization constant of `d_{k,l}` forced by the d∂/∂d identity, given unit constants below.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Calibration {
    pub spot: Spot,
    /// `None` when the identity does not involve `d_{k,l}` at this spot.
    pub constant: Option<Scalar>,
    pub version: String,
}

pub fn calibrate_d(space: SuperSpace, k: usize, l: usize) -> Result<Calibration> {
    let spot = Spot::K { k, l };
    let (ki, li) = (k as i64, l as i64);
    let dim = spot.dim(space);
    let mut rhs = SparseMap::scalar(dim, &Scalar::from(li - ki - space.n as i64 + space.m as i64));
    if k >= 1 && l >= 1 {
        let prev = Spot::K { k: k - 1, l: l - 1 };
        let dd = differential(space, DiffKind::D, prev)?.compose(&*differential(space, DiffKind::Del, prev)?)?;
        rhs = rhs.axpy(&Scalar::from(-li * ki), &dd)?;
    }
    let lhs = differential(space, DiffKind::Del, spot)?
        .compose(&*differential(space, DiffKind::D, spot)?)?
        .scale(&Scalar::from((li + 1) * (ki + 1)));
    let entry = lhs.triplets().into_iter().next();
    let constant = match entry {
        None if rhs.triplets().is_empty() => None,
        None => {
            return Err(CoreError::NotIsomorphism(format!("calibration at {spot}: ∂d vanishes but the identity does not")))
        }
        Some((r, c, v)) => {
            let gamma = rhs.get(r, c) / v;
            let residual = rhs.sub(&lhs.scale(&gamma))?;
            if !residual.triplets().is_empty() {
                return Err(CoreError::NotIsomorphism(format!(
                    "calibration at {spot}: no constant solves the identity ({} residual entries)",
                    residual.triplets().len()
                )));
            }
            Some(gamma)
        }
    };
    Ok(Calibration { spot, constant, version: CALIBRATION.into() })
}

/// Whether two consecutive components of `kind` compose to zero starting at `source`.
pub fn square_zero(space: SuperSpace, kind: DiffKind, source: Spot) -> Result<bool> {
    let (op, _) = composed_operator(space, &[kind, kind], source)?;
    Ok(op.triplets().is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Square {
    /// `P∘d = d∘P` from `T(i,k,l)` to `T(i-1,k+2,l+1)`.
    PD,
    /// `∂∘Q = Q∘∂` from `T(i-1,k+2,l+1)` to `T(i,k,l)`.
    DelQ,
}

#[derive(Clone, Debug)]
pub struct CommuteCheck {
    pub square: Square,
    pub spot: Spot,
    /// `None` for a vacuous square (i = 0).
    pub residual: Option<SparseMap>,
}

impl CommuteCheck {
    pub fn holds(&self) -> bool {
        self.residual.as_ref().is_none_or(|r| r.triplets().is_empty())
    }

    pub fn vacuous(&self) -> bool {
        self.residual.is_none()
    }
}

pub fn commute_check(space: SuperSpace, square: Square, i: usize, k: usize, l: usize) -> Result<CommuteCheck> {
    let spot = Spot::Triple { i, k, l };
    if i == 0 {
        return Ok(CommuteCheck { square, spot, residual: None });
    }
    let t = |i, k, l| Spot::Triple { i, k, l };
    let diff = |kind, s| differential(space, kind, s);
    let residual = match square {
        Square::PD => {
            let a = diff(DiffKind::P, t(i, k + 1, l + 1))?.compose(&*diff(DiffKind::D, spot)?)?;
            let b = diff(DiffKind::D, t(i - 1, k + 1, l))?.compose(&*diff(DiffKind::P, spot)?)?;
            a.sub(&b)?
        }
        Square::DelQ => {
            let a = diff(DiffKind::Del, spot)?.compose(&*diff(DiffKind::Q, t(i, k + 1, l + 1))?)?;
            let b = diff(DiffKind::Q, spot)?.compose(&*diff(DiffKind::Del, t(i - 1, k + 1, l))?)?;
            a.sub(&b)?
        }
    };
    let residual = SparseMap::from_triplets(residual.cod(), residual.dom(), residual.triplets());
    Ok(CommuteCheck { square, spot, residual: Some(residual) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Complex {
    /// Terms `Λ_k ⊗ S*_l` with `k - l = a`, differential d.
    K(i64),
    /// Terms `S_p ⊗ Λ_r` with `p + r = a`, differential P.
    L(usize),
}

#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub spot: Spot,
    pub dim_image: usize,
    pub dim_kernel: usize,
    pub homology_dim: usize,
    pub representative: Subspace,
}

/// Homology of `K_a` or `L_a` at a term, identified by the complex and its first index.
pub fn homology(space: SuperSpace, complex: Complex, index: usize) -> Result<HomologyReport> {
    let (spot, outgoing, incoming) = match complex {
        Complex::K(a) => {
            let l = index as i64 - a;
            if l < 0 {
                return Err(CoreError::InvalidSpot(format!("K_{a} has no term with k = {index}")));
            }
            let (k, l) = (index, l as usize);
            let spot = Spot::K { k, l };
            let inc = if k >= 1 && l >= 1 { Some((DiffKind::D, Spot::K { k: k - 1, l: l - 1 })) } else { None };
            (spot, Some((DiffKind::D, spot)), inc)
        }
        Complex::L(a) => {
            if index > a {
                return Err(CoreError::InvalidSpot(format!("L_{a} has no term with p = {index}")));
            }
            let (p, r) = (index, a - index);
            let spot = Spot::L { p, r };
            let out = if p >= 1 { Some((DiffKind::P, spot)) } else { None };
            let inc = if r >= 1 { Some((DiffKind::P, Spot::L { p: p + 1, r: r - 1 })) } else { None };
            (spot, out, inc)
        }
    };
    let dim = spot.dim(space);
    let kernel = match outgoing {
        Some((kind, s)) => differential(space, kind, s)?.kernel(),
        None => Subspace::full(dim),
    };
    let image = match incoming {
        Some((kind, s)) => differential(space, kind, s)?.image(),
        None => Subspace::zero(dim),
    };
    let representative = image.complement_in(&kernel)?;
    Ok(HomologyReport {
        spot,
        dim_image: image.dim(),
        dim_kernel: kernel.dim(),
        homology_dim: representative.dim(),
        representative,
    })
}

/// `Ker(P_{i,k} ⊗ id)` inside `T(i,k,tail)`; everything when `i = 0`.
pub fn kerp_subspace(space: SuperSpace, i: usize, k: usize, tail: usize) -> Result<Subspace> {
    let spot = Spot::Triple { i, k, l: tail };
    if i == 0 {
        return Ok(Subspace::full(spot.dim(space)));
    }
    Ok(differential(space, DiffKind::P, spot)?.kernel())
}

/// Image of the incoming `P_{i+1,k-1} ⊗ id` inside `T(i,k,tail)`.
pub fn incoming_p_image(space: SuperSpace, i: usize, k: usize, tail: usize) -> Result<Subspace> {
    let spot = Spot::Triple { i, k, l: tail };
    if k == 0 {
        return Ok(Subspace::zero(spot.dim(space)));
    }
    Ok(differential(space, DiffKind::P, Spot::Triple { i: i + 1, k: k - 1, l: tail })?.image())
}

/// Whether `kind ∈ {d, ∂}` maps `Ker(P ⊗ id)` at `source` into `Ker(P ⊗ id)` at its target.
pub fn preserves_kerp(space: SuperSpace, kind: DiffKind, source: Spot) -> Result<bool> {
    let Spot::Triple { i, .. } = source else {
        return Err(CoreError::InvalidSpot(format!("{source} is not a triple")));
    };
    if !matches!(kind, DiffKind::D | DiffKind::Del) {
        return Err(CoreError::Config("only d and ∂ act on the dual factor".into()));
    }
    let sub = subscript_from_source(kind, source)?;
    let (_, target) = endpoints(kind, sub)?;
    let (Spot::Triple { k: k0, l: l0, .. }, Spot::Triple { k: k1, l: l1, .. }) = (source, target) else {
        unreachable!("triples map to triples")
    };
    let dom = kerp_subspace(space, i, k0, l0)?;
    let cod = kerp_subspace(space, i, k1, l1)?;
    let map = differential(space, kind, sub)?;
    Ok(dom.basis().iter().all(|b| cod.contains(&map.apply(b))))
}
