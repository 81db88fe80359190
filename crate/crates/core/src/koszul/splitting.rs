use dkoszul_exact::{SparseVec, Subspace};
use serde::{Deserialize, Serialize};

use super::{composed_operator, differential, kerp_subspace, DiffKind, Spot};
use crate::superspace::SuperSpace;
use crate::{CoreError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplittingKind {
    /// `S_{i+1}·S*_{a+i+1} = Qd(S_i·S*_{a+i}) ⊕ Ker(∂P)`.
    QdSplit { i: usize, a: i64 },
    /// `S_{i+1}·Im d_{k,l} = dQ(Ker P_{i,k+1}·S*_l) ⊕ (Ker(P∂) ∩ S_{i+1}·Im d_{k,l})`.
    DqSplit { i: usize, k: usize, l: usize },
    /// `Λ_k·S*_l = Im d_{k-1,l-1} ⊕ Im ∂_{k,l}`.
    ImageSplit { k: usize, l: usize },
}

#[derive(Clone, Debug)]
pub struct Splitting {
    pub kind: SplittingKind,
    /// Spot whose coordinates the subspaces use.
    pub spot: Spot,
    pub whole: Subspace,
    pub a: Subspace,
    pub b: Subspace,
    /// A nonzero vector of `A ∩ B`, if any.
    pub witness: Option<SparseVec>,
    pub spans: bool,
    /// For the image split: `dim Λ_k·S*_l = rank d_{k-1,l-1} + rank d_{k,l}`.
    pub rank_identity: Option<bool>,
}

impl Splitting {
    pub fn is_direct(&self) -> bool {
        self.witness.is_none() && self.spans
    }
}

fn finish(kind: SplittingKind, spot: Spot, whole: Subspace, a: Subspace, b: Subspace) -> Result<Splitting> {
    let meet = a.intersect(&b)?;
    let witness = meet.basis().first().cloned();
    let spans = a.sum(&b)? == whole;
    Ok(Splitting { kind, spot, whole, a, b, witness, spans, rank_identity: None })
}

/// Splits `whole` by the projector `F ∘ (G F)^{-1} ∘ G`, where `F` starts on `dom` and `G` lands in it.
fn projector_split(
    space: SuperSpace,
    kind: SplittingKind,
    dom_spot: Spot,
    dom: &Subspace,
    f_word: &[DiffKind],
    g_word: &[DiffKind],
    whole: Subspace,
) -> Result<Splitting> {
    let (f, w_spot) = composed_operator(space, f_word, dom_spot)?;
    let (g, back) = composed_operator(space, g_word, w_spot)?;
    debug_assert_eq!(back, dom_spot);
    let fr = f.compose(&dom.inclusion())?;
    let t = g.compose(&f)?.restrict(dom, dom)?;
    if t.rank() != dom.dim() {
        return Err(CoreError::NotIsomorphism(format!("{kind:?}: composed operator has rank {} < {}", t.rank(), dom.dim())));
    }
    let tinv = t.inverse()?;
    let gr = g.restrict(&whole, dom)?;
    let half = tinv.compose(&gr)?;
    let pi = fr.compose(&half)?;
    let a = pi.image();
    let inc = whole.inclusion();
    let b = Subspace::span(whole.ambient(), half.kernel().basis().iter().map(|v| inc.apply(v)).collect::<Vec<_>>());
    let s = finish(kind, w_spot, whole, a, b)?;
    if s.a != fr.image() {
        return Err(CoreError::NotDirect(format!("{kind:?}: projector image differs from the embedded summand")));
    }
    Ok(s)
}

pub fn splitting(space: SuperSpace, kind: SplittingKind) -> Result<Splitting> {
    match kind {
        SplittingKind::QdSplit { i, a } => {
            let l = a + i as i64;
            if l < 0 {
                return Err(CoreError::InvalidSpot(format!("{kind:?}: negative dual degree")));
            }
            let dom_spot = Spot::Triple { i, k: 0, l: l as usize };
            let dom = Subspace::full(dom_spot.dim(space));
            let whole = Subspace::full(Spot::Triple { i: i + 1, k: 0, l: l as usize + 1 }.dim(space));
            projector_split(space, kind, dom_spot, &dom, &[DiffKind::D, DiffKind::Q], &[DiffKind::P, DiffKind::Del], whole)
        }
        SplittingKind::DqSplit { i, k, l } => {
            let dom_spot = Spot::Triple { i, k: k + 1, l };
            let dom = kerp_subspace(space, i, k + 1, l)?;
            let whole = differential(space, DiffKind::D, Spot::Triple { i: i + 1, k, l })?.image();
            projector_split(space, kind, dom_spot, &dom, &[DiffKind::Q, DiffKind::D], &[DiffKind::Del, DiffKind::P], whole)
        }
        SplittingKind::ImageSplit { k, l } => {
            let spot = Spot::K { k, l };
            let dim = spot.dim(space);
            let (a, rank_prev) = if k >= 1 && l >= 1 {
                let d = differential(space, DiffKind::D, Spot::K { k: k - 1, l: l - 1 })?;
                (d.image(), d.rank())
            } else {
                (Subspace::zero(dim), 0)
            };
            let b = differential(space, DiffKind::Del, spot)?.image();
            let rank_next = differential(space, DiffKind::D, spot)?.rank();
            let mut s = finish(kind, spot, Subspace::full(dim), a, b)?;
            s.rank_identity = Some(rank_prev + rank_next == dim);
            Ok(s)
        }
    }
}
