//! The differentials assembled literally on raw tensor powers:
//! embed, insert or contract, then project with the (anti)symmetrizers.

use dkoszul_exact::{SparseMap, Subspace};

use super::{endpoints, DiffKind, Spot};
use crate::superspace::{coevaluation_insertion, contraction_map, projector, raw_ambient, Kind, PowerBasis, SuperSpace};
use crate::{CoreError, Result};

struct Block {
    kind: Kind,
    degree: usize,
    dual: bool,
}

fn blocks(spot: Spot) -> Result<Vec<Block>> {
    let b = |kind, degree, dual| Block { kind, degree, dual };
    Ok(match spot {
        Spot::K { k, l } => vec![b(Kind::Exterior, k, false), b(Kind::Symmetric, l, true)],
        Spot::L { p, r } => vec![b(Kind::Symmetric, p, false), b(Kind::Exterior, r, false)],
        Spot::Triple { .. } => return Err(CoreError::InvalidSpot("raw route covers K and L spots only".into())),
    })
}

fn pattern(blocks: &[Block]) -> Vec<bool> {
    blocks.iter().flat_map(|b| std::iter::repeat_n(b.dual, b.degree)).collect()
}

/// Power-basis coordinates into the raw tensor power.
fn embedding(space: SuperSpace, blocks: &[Block]) -> SparseMap {
    blocks.iter().fold(SparseMap::identity(1), |acc, b| {
        let real = PowerBasis::get(space, b.kind, b.degree, b.dual).realization();
        acc.kron(&real.inclusion())
    })
}

fn projection(space: SuperSpace, blocks: &[Block]) -> SparseMap {
    blocks.iter().fold(SparseMap::identity(1), |acc, b| acc.kron(&projector(space, b.kind, b.degree)))
}

fn realization(space: SuperSpace, blocks: &[Block]) -> Subspace {
    blocks.iter().fold(Subspace::full(1), |acc, b| acc.kron(&PowerBasis::get(space, b.kind, b.degree, b.dual).realization()))
}

/// Same component as [`super::differential`], built on `V^{⊗N}` without any closed-form coefficients.
pub fn raw_differential(space: SuperSpace, kind: DiffKind, sub: Spot) -> Result<SparseMap> {
    let (source, target) = endpoints(kind, sub)?;
    let src = blocks(source)?;
    let tgt = blocks(target)?;
    let embed = embedding(space, &src);
    let middle = match (kind, source) {
        (DiffKind::D, Spot::K { k, .. }) => {
            let amb = raw_ambient(space, &pattern(&src));
            coevaluation_insertion(space, &amb, k)?.0
        }
        (DiffKind::Del, Spot::K { k, .. }) => {
            let amb = raw_ambient(space, &pattern(&src));
            contraction_map(k - 1, &amb)?.0
        }
        // P and Q only regroup the letters
        _ => SparseMap::identity(embed.cod()),
    };
    let projected = projection(space, &tgt).compose(&middle.compose(&embed)?)?;
    let coords = projected.restrict(&Subspace::full(projected.dom()), &realization(space, &tgt))?;
    Ok(coords)
}
