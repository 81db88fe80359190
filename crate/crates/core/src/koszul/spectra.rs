use dkoszul_exact::{Scalar, SparseMap, Spectrum, Subspace};
use serde::{Deserialize, Serialize};

use super::{composed_operator, kerp_subspace, DiffKind, Spot};
use crate::superspace::SuperSpace;
use crate::{CoreError, Result};

/// The two composed operators whose spectra are predicted in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectralOperator {
    /// `∂PQd` on `S_i·S*_{a+i}` (as `T(i,0,a+i)`).
    DelPQd { i: usize, a: i64 },
    /// `P∂dQ` on `Ker(P_{i,k+1} ⊗ id) ⊂ T(i,k+1,a+i+k+1)`.
    PDelDQ { i: usize, k: usize, a: i64 },
}

impl SpectralOperator {
    pub fn spot(&self) -> Result<Spot> {
        let (i, k, l) = match *self {
            SpectralOperator::DelPQd { i, a } => (i, 0, a + i as i64),
            SpectralOperator::PDelDQ { i, k, a } => (i, k + 1, a + (i + k + 1) as i64),
        };
        if l < 0 {
            return Err(CoreError::InvalidSpot(format!("{self:?}: negative dual degree")));
        }
        Ok(Spot::Triple { i, k, l: l as usize })
    }

    pub fn word(&self) -> &'static [DiffKind] {
        match self {
            SpectralOperator::DelPQd { .. } => &[DiffKind::D, DiffKind::Q, DiffKind::P, DiffKind::Del],
            SpectralOperator::PDelDQ { .. } => &[DiffKind::Q, DiffKind::D, DiffKind::Del, DiffKind::P],
        }
    }

    /// The subspace the operator is studied on.
    pub fn domain(&self, space: SuperSpace) -> Result<Subspace> {
        let spot = self.spot()?;
        match (self, spot) {
            (SpectralOperator::PDelDQ { .. }, Spot::Triple { i, k, l }) => kerp_subspace(space, i, k, l),
            _ => Ok(Subspace::full(spot.dim(space))),
        }
    }

    /// Matrix of the operator in the basis of [`Self::domain`].
    pub fn matrix(&self, space: SuperSpace) -> Result<SparseMap> {
        let spot = self.spot()?;
        let (op, end) = composed_operator(space, self.word(), spot)?;
        debug_assert_eq!(end, spot);
        let dom = self.domain(space)?;
        if dom.dim() == dom.ambient() {
            return Ok(op);
        }
        Ok(op.restrict(&dom, &dom)?)
    }

    /// Predicted eigenvalues under every reading of the closed form, as `(reading, [(j, value)])`.
    pub fn predictions(&self) -> Vec<Prediction> {
        match *self {
            SpectralOperator::DelPQd { i, a } => {
                let (i, a) = (i as i64, a);
                let den = (i + 1) * (a + i + 1);
                let printed = (1..=i + 1).map(|j| (j, Scalar::new((a + i + 3 - j) * j, den))).collect();
                let recursion =
                    (1..=i + 1).map(|j| (j, Scalar::new((i + 1) * (a + i + 2) - (j - 1) * (a + j), den))).collect();
                vec![Prediction::new("printed", printed), Prediction::new("recursion", recursion)]
            }
            SpectralOperator::PDelDQ { i, k, a } => {
                let (i, k) = (i as i64, k as i64);
                let den = (i + 1) * (k + 1) * (k + 1) * (a + i + k + 2);
                let val = |j: i64| (j, Scalar::new((a + k + 2 * i + 4 - j) * j, den));
                let head: Vec<_> = (1..=i + 1).map(val).collect();
                let mut head_tail = head.clone();
                head_tail.push(val(i + k + 1));
                let full = (1..=i + k + 1).map(val).collect();
                vec![
                    Prediction::new("head-and-tail", head_tail),
                    Prediction::new("full-range", full),
                    Prediction::new("head-only", head),
                ]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub reading: String,
    pub values: Vec<(i64, Scalar)>,
}

impl Prediction {
    fn new(reading: &str, values: Vec<(i64, Scalar)>) -> Self {
        Prediction { reading: reading.into(), values }
    }

    /// Distinct predicted values, sorted.
    pub fn value_set(&self) -> Vec<Scalar> {
        let mut v: Vec<Scalar> = self.values.iter().map(|(_, x)| x.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub operator: SpectralOperator,
    pub dim: usize,
    pub spectrum: Spectrum,
    /// Each reading with whether its value set equals the computed one.
    pub predictions: Vec<(Prediction, bool)>,
}

impl SpectrumReport {
    pub fn invertible(&self) -> bool {
        self.spectrum.is_invertible()
    }

    pub fn matches(&self, reading: &str) -> bool {
        self.predictions.iter().any(|(p, ok)| p.reading == reading && *ok)
    }
}

pub fn spectrum_report(space: SuperSpace, operator: SpectralOperator) -> Result<SpectrumReport> {
    let m = operator.matrix(space)?;
    let spectrum = m.rational_spectrum()?;
    let computed = spectrum.values();
    let predictions = operator
        .predictions()
        .into_iter()
        .map(|p| {
            let ok = p.value_set() == computed;
            (p, ok)
        })
        .collect();
    Ok(SpectrumReport { operator, dim: m.dom(), spectrum, predictions })
}
