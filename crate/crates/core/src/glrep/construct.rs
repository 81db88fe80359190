use std::fmt;
use std::str::FromStr;

use dkoszul_exact::{SparseVec, Subspace};
use serde::{Deserialize, Serialize};

use super::{GLModule, HighestWeightReport};
use crate::koszul::{differential, kerp_subspace, splitting, DiffKind, Spot, SplittingKind};
use crate::superspace::{PowerBasis, SuperSpace, TensorAmbient};
use crate::{CoreError, Result};

/// The named modules assembled from the Koszul splittings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum ConstructionName {
    /// `Ker d_{m,n} / Im d_{m-1,n-1}`.
    H31,
    /// `Im d_{m+2,m+p} ⊗ Ber^{m-1}`.
    Mmp { m: usize, p: usize },
    /// Complement of `Qd(S_{n-1}·S*_{p-1})` in `S_n·S*_p`.
    Ysummand { n: usize, p: usize },
    /// Complement of `Λ_3·S*_{m+1}` in `S_1·Im d_{2,m+1}`.
    Z1 { m: usize },
    /// Complement of `Ker P_{k-1,l+1}·S*_m` in `S_k·Im d_{l,m}`.
    Zk { k: usize, l: usize, m: usize },
    /// `Zk(t, m+1, m+p-1) ⊗ Ber^{m-1}`.
    Mfinal { m: usize, t: usize, p: usize },
    /// `Im d_{k,l} ⊂ Λ_{k+1}·S*_{l+1}`.
    ImD { k: usize, l: usize },
    /// The simple summand of shape `(λ1, λ2, λ3, 1^{λ4})` of a tensor power of `V`.
    Ilambda { shape: [usize; 4] },
}

impl ConstructionName {
    pub fn kind(&self) -> &'static str {
        match self {
            ConstructionName::H31 => "H31",
            ConstructionName::Mmp { .. } => "Mmp",
            ConstructionName::Ysummand { .. } => "Ysummand",
            ConstructionName::Z1 { .. } => "Z1",
            ConstructionName::Zk { .. } => "Zk",
            ConstructionName::Mfinal { .. } => "Mfinal",
            ConstructionName::ImD { .. } => "ImD",
            ConstructionName::Ilambda { .. } => "Ilambda",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            ConstructionName::H31 => vec![],
            ConstructionName::Mmp { m, p } => vec![m, p],
            ConstructionName::Ysummand { n, p } => vec![n, p],
            ConstructionName::Z1 { m } => vec![m],
            ConstructionName::Zk { k, l, m } => vec![k, l, m],
            ConstructionName::Mfinal { m, t, p } => vec![m, t, p],
            ConstructionName::ImD { k, l } => vec![k, l],
            ConstructionName::Ilambda { shape } => shape.to_vec(),
        }
    }

    pub fn from_parts(kind: &str, params: &[usize]) -> Result<Self> {
        let want = |n: usize| {
            if params.len() == n {
                Ok(())
            } else {
                Err(CoreError::Config(format!("{kind} takes {n} parameters, got {}", params.len())))
            }
        };
        let name = match kind {
            "H31" => {
                want(0)?;
                ConstructionName::H31
            }
            "Mmp" => {
                want(2)?;
                ConstructionName::Mmp { m: params[0], p: params[1] }
            }
            "Ysummand" => {
                want(2)?;
                ConstructionName::Ysummand { n: params[0], p: params[1] }
            }
            "Z1" => {
                want(1)?;
                ConstructionName::Z1 { m: params[0] }
            }
            "Zk" => {
                want(3)?;
                ConstructionName::Zk { k: params[0], l: params[1], m: params[2] }
            }
            "Mfinal" => {
                want(3)?;
                ConstructionName::Mfinal { m: params[0], t: params[1], p: params[2] }
            }
            "ImD" => {
                want(2)?;
                ConstructionName::ImD { k: params[0], l: params[1] }
            }
            "Ilambda" => {
                if params.is_empty() || params.len() > 4 {
                    return Err(CoreError::Config("Ilambda takes 1 to 4 parameters".into()));
                }
                let mut shape = [0; 4];
                shape[..params.len()].copy_from_slice(params);
                ConstructionName::Ilambda { shape }
            }
            other => return Err(CoreError::Config(format!("unknown construction {other:?}"))),
        };
        name.validate()?;
        Ok(name)
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            ConstructionName::H31 | ConstructionName::ImD { .. } => true,
            ConstructionName::Mmp { m, p } | ConstructionName::Ysummand { n: m, p } => m >= 1 && p >= 1,
            ConstructionName::Z1 { m } => m >= 1,
            ConstructionName::Zk { k, .. } => k >= 1,
            ConstructionName::Mfinal { m, t, p } => m >= 1 && t >= 1 && p >= 1,
            ConstructionName::Ilambda { shape } => {
                shape[0] >= 1 && shape[0] >= shape[1] && shape[1] >= shape[2] && (shape[3] == 0 || shape[2] >= 1)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(CoreError::Config(format!("{self}: parameters out of range")))
        }
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params();
        if p.is_empty() {
            return write!(f, "{}", self.kind());
        }
        let p: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        write!(f, "{}({})", self.kind(), p.join(","))
    }
}

impl FromStr for ConstructionName {
    type Err = CoreError;

    /// `Name`, `Name(a,b)` or `Name a b`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = match s.find(['(', ' ']) {
            Some(i) => (&s[..i], &s[i..]),
            None => (s, ""),
        };
        let params = rest
            .split(|c: char| c == '(' || c == ')' || c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| CoreError::Config(format!("bad parameter {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        ConstructionName::from_parts(kind, &params)
    }
}

/// A constructed module with its highest-weight data.
#[derive(Clone, Debug)]
pub struct Construction {
    pub name: ConstructionName,
    pub module: GLModule,
    /// Where the carrier lives (before any twist).
    pub spot: Option<Spot>,
    /// Power of the Berezinian applied.
    pub twist: i64,
    pub report: HighestWeightReport,
}

/// Builds a named module on `(3|1)`-type alphabets (any `(m|n)` for which the pieces exist).
pub fn construct(space: SuperSpace, name: ConstructionName) -> Result<Construction> {
    name.validate()?;
    let (module, spot, twist) = match name {
        ConstructionName::H31 => {
            let (m, n) = (space.m, space.n);
            let spot = Spot::K { k: m, l: n };
            let whole = GLModule::from_ambient("K", &spot.ambient(space))?;
            let ker = differential(space, DiffKind::D, spot)?.kernel();
            let im = if m >= 1 && n >= 1 {
                differential(space, DiffKind::D, Spot::K { k: m - 1, l: n - 1 })?.image()
            } else {
                Subspace::zero(whole.dim())
            };
            (whole.subquotient(name.to_string(), &ker, &im)?, Some(spot), 0)
        }
        ConstructionName::ImD { k, l } => (image_of_d(space, k, l, &name.to_string())?, Some(Spot::K { k: k + 1, l: l + 1 }), 0),
        ConstructionName::Mmp { m, p } => {
            let base = image_of_d(space, m + 2, m + p, &name.to_string())?;
            twisted(base, m as i64 - 1, Spot::K { k: m + 3, l: m + p + 1 })?
        }
        ConstructionName::Ysummand { n, p } => {
            let s = splitting(space, SplittingKind::QdSplit { i: n - 1, a: p as i64 - n as i64 })?;
            (summand(space, s.spot, &s.b, &name.to_string())?, Some(s.spot), 0)
        }
        ConstructionName::Z1 { m } => {
            let s = splitting(space, SplittingKind::DqSplit { i: 0, k: 2, l: m + 1 })?;
            (summand(space, s.spot, &s.b, &name.to_string())?, Some(s.spot), 0)
        }
        ConstructionName::Zk { k, l, m } => {
            let s = splitting(space, SplittingKind::DqSplit { i: k - 1, k: l, l: m })?;
            (summand(space, s.spot, &s.b, &name.to_string())?, Some(s.spot), 0)
        }
        ConstructionName::Mfinal { m, t, p } => {
            let s = splitting(space, SplittingKind::DqSplit { i: t - 1, k: m + 1, l: m + p - 1 })?;
            let base = summand(space, s.spot, &s.b, &name.to_string())?;
            twisted(base, m as i64 - 1, s.spot)?
        }
        ConstructionName::Ilambda { shape } => ilambda(space, shape, &name.to_string())?,
    };
    let report = module.highest_weight_report()?;
    Ok(Construction { name, module, spot, twist, report })
}

fn twisted(base: GLModule, t: i64, spot: Spot) -> Result<(GLModule, Option<Spot>, i64)> {
    let name = base.name.clone();
    let mut m = base.berezinian_twist(t)?;
    m.name = name;
    Ok((m, Some(spot), t))
}

fn summand(space: SuperSpace, spot: Spot, sub: &Subspace, name: &str) -> Result<GLModule> {
    GLModule::from_ambient(spot.to_string(), &spot.ambient(space))?.submodule(name, sub)
}

fn image_of_d(space: SuperSpace, k: usize, l: usize, name: &str) -> Result<GLModule> {
    let spot = Spot::K { k: k + 1, l: l + 1 };
    let im = differential(space, DiffKind::D, Spot::K { k, l })?.image();
    summand(space, spot, &im, name)
}

/// Largest tensor degree used for non-hook shapes (`4^5` raw coordinates on `(3|1)`).
const RAW_DEGREE_BOUND: usize = 5;

fn ilambda(space: SuperSpace, shape: [usize; 4], name: &str) -> Result<(GLModule, Option<Spot>, i64)> {
    let [a, b, c, d] = shape;
    // hooks (k, 1^l) are Ker P_{k-1,l+1} inside S_{k-1}·Λ_{l+1}
    if b <= 1 && c <= 1 && (d == 0 || c == 1) {
        let tail = b + c + d;
        let spot = Spot::Triple { i: a - 1, k: tail + 1, l: 0 };
        let sub = kerp_subspace(space, a - 1, tail + 1, 0)?;
        return Ok((summand(space, spot, &sub, name)?, Some(spot), 0));
    }
    Ok((simple_in_tensor_power(space, shape, name)?, None, 0))
}

/// The summand generated by a singular vector of the shape's weight in `V^{⊗N}`.
pub fn simple_in_tensor_power(space: SuperSpace, shape: [usize; 4], name: &str) -> Result<GLModule> {
    let degree = shape.iter().sum::<usize>();
    if degree > RAW_DEGREE_BOUND {
        return Err(CoreError::TooLarge { dim: space.dim().pow(degree as u32), bound: space.dim().pow(RAW_DEGREE_BOUND as u32) });
    }
    let line = PowerBasis::line(space, false);
    let amb = TensorAmbient::new(vec![line; degree])?;
    let whole = GLModule::from_ambient("V^N", &amb)?;
    let target: Vec<i64> = shape_weight(space, shape)?;
    let sing = whole.singular_space();
    let seed: Vec<SparseVec> = sing.basis().iter().filter(|v| v.first().is_some_and(|(i, _)| whole.weight(i) == target)).take(1).cloned().collect();
    if seed.is_empty() {
        return Err(CoreError::Shape(format!("no singular vector of shape {shape:?}")));
    }
    let sub = whole.closure(&seed);
    whole.submodule(name, &sub)
}

/// ε-weight of the shape `(λ1, λ2, λ3, 1^{λ4})` for `(3|1)`-type alphabets.
fn shape_weight(space: SuperSpace, shape: [usize; 4]) -> Result<Vec<i64>> {
    if space.m != 3 || space.n != 1 {
        return Err(CoreError::Config("shape modules are indexed for (3|1)".into()));
    }
    Ok(shape.iter().map(|&x| x as i64).collect())
}
