use std::fmt;

use dkoszul_exact::Scalar;
use serde::{Deserialize, Serialize};

use super::{CharFraction, LaurentPoly};
use crate::glrep::ConstructionName;
use crate::superspace::WeightTuple;
use crate::{CoreError, Result};

/// `(λ1, λ2, λ3 | λ4)` in the highest-weight label convention (`e^λ = x^λ·y^{-λ4}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightLabel(pub [i64; 4]);

/// Which of the three gl(3|1) atypicality conditions holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atypicality {
    /// `λ1 + 2 = λ4`
    First,
    /// `λ2 + 1 = λ4`
    Second,
    /// `λ3 = λ4`
    Third,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Typicality {
    Typical,
    Atypical(Atypicality),
    /// More than one condition holds (never for dominant weights).
    Multiple(Vec<Atypicality>),
}

impl WeightLabel {
    pub fn new(l1: i64, l2: i64, l3: i64, l4: i64) -> Self {
        WeightLabel([l1, l2, l3, l4])
    }

    pub fn dominant(&self) -> bool {
        self.0[0] >= self.0[1] && self.0[1] >= self.0[2]
    }

    /// Integer entries, so always integrable here.
    pub fn integrable(&self) -> bool {
        true
    }

    pub fn classify(&self) -> Typicality {
        let [l1, l2, l3, l4] = self.0;
        let hits: Vec<Atypicality> = [(l1 + 2 == l4, Atypicality::First), (l2 + 1 == l4, Atypicality::Second), (l3 == l4, Atypicality::Third)]
            .into_iter()
            .filter(|(h, _)| *h)
            .map(|(_, a)| a)
            .collect();
        match hits.len() {
            0 => Typicality::Typical,
            1 => Typicality::Atypical(hits[0]),
            _ => Typicality::Multiple(hits),
        }
    }

    pub fn is_typical(&self) -> bool {
        self.classify() == Typicality::Typical
    }

    /// ε-coordinates `(λ1, λ2, λ3, -λ4)`.
    pub fn epsilon(&self) -> [i64; 4] {
        [self.0[0], self.0[1], self.0[2], -self.0[3]]
    }

    pub fn from_tuple(w: &WeightTuple) -> Result<Self> {
        if w.even.len() != 3 || w.odd.len() != 1 {
            return Err(CoreError::Config(format!("weight {w} is not a (3|1) weight")));
        }
        Ok(WeightLabel([w.even[0], w.even[1], w.even[2], w.odd[0]]))
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c}|{d})")
    }
}

/// `R = (x1+y)(x2+y)(x3+y)`.
pub fn r() -> LaurentPoly {
    (1..=3).fold(LaurentPoly::one(), |acc, i| acc * (LaurentPoly::x(i) + LaurentPoly::y()))
}

/// `Π = (x1-x2)(x2-x3)(x1-x3)`.
pub fn pi() -> LaurentPoly {
    let x = LaurentPoly::x;
    (x(1) - x(2)) * (x(2) - x(3)) * (x(1) - x(3))
}

/// `det [x_i^{t+2}, x_i^{u+1}, x_i^v]_{i=1..3}`, expanded literally (any integer arguments).
pub fn a(t: i64, u: i64, v: i64) -> LaurentPoly {
    let cols = [t + 2, u + 1, v];
    let perms: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];
    let mut out = LaurentPoly::zero();
    for (p, s) in perms {
        // row i takes column p[i]
        let mut e = [0i64; 4];
        for (row, &col) in p.iter().enumerate() {
            e[row] = cols[col];
        }
        out = out + LaurentPoly::monomial(e, s);
    }
    out
}

/// `R`, `Π` and the determinant `a` bundled.
pub struct BaseExprs {
    pub r: LaurentPoly,
    pub pi: LaurentPoly,
    pub a: fn(i64, i64, i64) -> LaurentPoly,
}

pub fn base_exprs() -> BaseExprs {
    BaseExprs { r: r(), pi: pi(), a }
}

fn frac(num: LaurentPoly, den: LaurentPoly) -> CharFraction {
    CharFraction { num, den }
}

/// `R (x1x2x3)^{λ3-1} / (Π y^{λ4}) · a(λ1-λ3, λ2-λ3, 0)`.
pub fn ch_typical(l: WeightLabel) -> Result<CharFraction> {
    if !l.is_typical() {
        return Err(CoreError::NotTypical(l.to_string()));
    }
    Ok(typical_shape(l))
}

fn typical_shape(l: WeightLabel) -> CharFraction {
    let [l1, l2, l3, l4] = l.0;
    frac(r() * LaurentPoly::det_power(l3 - 1) * a(l1 - l3, l2 - l3, 0), pi() * LaurentPoly::y_power(l4))
}

/// `R · Σ_cyclic x_i^e (x_j^p x_k^q - x_j^q x_k^p) / (x_i + y)`, with the denominators cleared against `R`.
fn r_bracket(e: i64, p: i64, q: i64) -> LaurentPoly {
    let x = LaurentPoly::x;
    let mut out = LaurentPoly::zero();
    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let inner = LaurentPoly::monomial(exps(&[(j, p), (k, q)]), 1) - LaurentPoly::monomial(exps(&[(j, q), (k, p)]), 1);
        let others = (x(j) + LaurentPoly::y()) * (x(k) + LaurentPoly::y());
        out = out + LaurentPoly::monomial(exps(&[(i, e)]), 1) * inner * others;
    }
    out
}

fn exps(pairs: &[(usize, i64)]) -> [i64; 4] {
    let mut e = [0; 4];
    for &(i, k) in pairs {
        e[i - 1] += k;
    }
    e
}

/// The three-term bracket formula matching the atypicality type.
pub fn ch_atypical(l: WeightLabel) -> Result<CharFraction> {
    let [l1, l2, l3, l4] = l.0;
    let bracket = match l.classify() {
        Typicality::Atypical(Atypicality::First) => r_bracket(l1 + 2, l2, l3 - 1),
        Typicality::Atypical(Atypicality::Second) => r_bracket(l2 + 1, l3 - 1, l1 + 1),
        Typicality::Atypical(Atypicality::Third) => r_bracket(l3, l1 + 1, l2),
        Typicality::Typical => return Err(CoreError::NotAtypical(l.to_string())),
        Typicality::Multiple(v) => return Err(CoreError::Config(format!("{l}: several atypicality conditions {v:?}"))),
    };
    Ok(frac(bracket, pi() * LaurentPoly::y_power(l4)))
}

/// The V(λ) character: typical formula or the matching atypical one.
pub fn ch_irreducible(l: WeightLabel) -> Result<CharFraction> {
    if l.is_typical() {
        ch_typical(l)
    } else {
        ch_atypical(l)
    }
}

/// `ρ` in ε-coordinates, doubled: `(1/2, -1/2, -3/2 | 3/2)·2`.
const RHO_EPS_DOUBLED: [i64; 4] = [1, -1, -3, 3];

/// `L1/L0 · Σ_{w ∈ S3×S1} sign(w) e^{w(λ+ρ)}`, computed with doubled exponents and halved at the end.
pub fn kac_sum(l: WeightLabel) -> Result<CharFraction> {
    if !l.is_typical() {
        return Err(CoreError::NotTypical(l.to_string()));
    }
    let eps = l.epsilon();
    let shifted: [i64; 4] = std::array::from_fn(|k| 2 * eps[k] + RHO_EPS_DOUBLED[k]);
    let perms: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];
    let mut orbit = LaurentPoly::zero();
    for (p, s) in perms {
        let mut e = [0; 4];
        for i in 0..3 {
            e[p[i]] = shifted[i];
        }
        e[3] = shifted[3];
        orbit = orbit + LaurentPoly::monomial(e, s);
    }
    // e^{α/2} with α = ε_i - δ (odd) and ε_i - ε_j (even), in doubled exponents
    let mut l1 = LaurentPoly::one();
    for i in 0..3 {
        let mut e = [0; 4];
        e[i] = 1;
        e[3] = -1;
        l1 = l1 * (LaurentPoly::monomial(e, 1) + LaurentPoly::monomial(e.map(|x| -x), 1));
    }
    let mut l0 = LaurentPoly::one();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mut e = [0; 4];
        e[i] = 1;
        e[j] = -1;
        l0 = l0 * (LaurentPoly::monomial(e, 1) - LaurentPoly::monomial(e.map(|x| -x), 1));
    }
    let q = (l1 * orbit).div_exact(&l0).ok_or_else(|| CoreError::NonIntegral(format!("Kac sum at {l}: not divisible")))?;
    if q.terms().any(|(e, _)| e.iter().any(|x| x % 2 != 0)) {
        return Err(CoreError::NonIntegral(format!("Kac sum at {l}")));
    }
    Ok(CharFraction::poly(q.map_exponents(|e| e.map(|x| x / 2))))
}

/// Generating function used for the complete symmetric functions of the super alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JtGenerator {
    /// `∏ (1 - x_i t)^{-1} · (1 - y t)`.
    Corrected,
    /// `∏ (1 - x_i t)^{-1} · (1 + y t)^{-1}`.
    Printed,
}

fn h_even(r: i64) -> LaurentPoly {
    if r < 0 {
        return LaurentPoly::zero();
    }
    let mut out = LaurentPoly::zero();
    for a1 in 0..=r {
        for a2 in 0..=r - a1 {
            out = out + LaurentPoly::xy([a1, a2, r - a1 - a2], 0);
        }
    }
    out
}

/// Complete symmetric function `h_r` of the super alphabet, signed convention.
pub fn h_super(r: i64, generator: JtGenerator) -> LaurentPoly {
    match generator {
        JtGenerator::Corrected => h_even(r) - LaurentPoly::y() * h_even(r - 1),
        JtGenerator::Printed => (0..=r.max(0)).fold(LaurentPoly::zero(), |acc, s| {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            acc + LaurentPoly::monomial([0, 0, 0, s], sign) * h_even(r - s)
        }),
    }
}

fn det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    match m.len() {
        0 => LaurentPoly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut out = LaurentPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPoly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = &m[0][j] * &det(&minor);
                out = if j % 2 == 0 { out + term } else { out - term };
            }
            out
        }
    }
}

/// Jacobi–Trudi `det(h_{μ_i - i + j})` for `μ = (λ1, λ2, λ3, 1^{λ4})`: the signed character of `I_μ`.
pub fn ch_schur_super(shape: [usize; 4], generator: JtGenerator) -> Result<LaurentPoly> {
    let [a1, a2, a3, a4] = shape;
    if a1 < a2 || a2 < a3 || (a4 > 0 && a3 == 0) {
        return Err(CoreError::Shape(format!("{shape:?} is not a hook-bounded shape")));
    }
    let mut mu: Vec<i64> = [a1, a2, a3].iter().map(|&x| x as i64).filter(|&x| x > 0).collect();
    mu.extend(std::iter::repeat_n(1, a4));
    let n = mu.len();
    let m: Vec<Vec<LaurentPoly>> =
        (0..n).map(|i| (0..n).map(|j| h_super(mu[i] - i as i64 + j as i64, generator)).collect()).collect();
    Ok(det(&m))
}

/// Hook-shape character as printed: `R (x1x2x3)^{λ3-1} / (Π y^{λ4}) · a(λ1-λ3, λ2-λ3, 0)`.
pub fn ch_hook_printed(shape: [usize; 4]) -> CharFraction {
    let [l1, l2, l3, l4] = shape.map(|x| x as i64);
    frac(r() * LaurentPoly::det_power(l3 - 1) * a(l1 - l3, l2 - l3, 0), pi() * LaurentPoly::y_power(l4))
}

/// Hook-shape character with `y^{λ4}` in the numerator, i.e. the typical-shape formula at `(λ1,λ2,λ3|-λ4)`.
pub fn ch_hook_corrected(shape: [usize; 4]) -> CharFraction {
    let [l1, l2, l3, l4] = shape.map(|x| x as i64);
    typical_shape(WeightLabel::new(l1, l2, l3, -l4))
}

/// Dual of a hook shape: `R (x1x2x3)^{-λ1} / (Π y^{λ4+3}) · a(λ1-λ3, λ1-λ2, 0)`.
pub fn ch_hook_dual(shape: [usize; 4]) -> CharFraction {
    let [l1, l2, l3, l4] = shape.map(|x| x as i64);
    frac(r() * LaurentPoly::det_power(-l1) * a(l1 - l3, l1 - l2, 0), pi() * LaurentPoly::y_power(l4 + 3))
}

/// Two-row shapes `(λ1, λ2, 0, 0)`: `R/Π · Σ_cyclic (x_j^{λ1+1} x_k^{λ2} - x_j^{λ2} x_k^{λ1+1}) / (x_i + y)`.
pub fn ch_two_row(l1: i64, l2: i64) -> CharFraction {
    frac(r_bracket(0, l1 + 1, l2), pi())
}

/// Symmetric powers: `1/Π · Σ_cyclic x_j^{λ1+1}(x_j + y)(x_k - x_i)`.
pub fn ch_symmetric_power(l1: i64) -> CharFraction {
    let x = LaurentPoly::x;
    let mut num = LaurentPoly::zero();
    for (j, k, i) in [(2, 3, 1), (3, 1, 2), (1, 2, 3)] {
        num = num + LaurentPoly::monomial(exps(&[(j, l1 + 1)]), 1) * (x(j) + LaurentPoly::y()) * (x(k) - x(i));
    }
    frac(num, pi())
}

/// `Im d_{k,l}`: `R y^{k-3} / (Π (x1x2x3)^l) · a(l, l, 0)`.
pub fn ch_image_of_d(k: i64, l: i64) -> CharFraction {
    frac(r() * LaurentPoly::y_power(k - 3) * a(l, l, 0), pi() * LaurentPoly::det_power(l))
}

/// `Y` summand of `S_n·S*_p`: `(x1x2x3) R / (Π y) · Σ_cyclic (x_j^{-p-1} x_k^n - x_j^n x_k^{-p-1}) / (x_i + y)`.
pub fn ch_y_summand(n: i64, p: i64) -> CharFraction {
    frac(LaurentPoly::det_power(1) * r_bracket(0, -p - 1, n), pi() * LaurentPoly::y())
}

/// `Z_1`: `R / (Π y (x1x2x3)^{m+1}) · a(m+2, m+1, 0)`.
pub fn ch_z1(m: i64) -> CharFraction {
    frac(r() * a(m + 2, m + 1, 0), pi() * LaurentPoly::y() * LaurentPoly::det_power(m + 1))
}

/// Reading of the second argument of `a` in the `Z_k` formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZkReading {
    /// `a(k+m, m-1, 0)`
    Printed,
    /// `a(k+m, m, 0)`
    Corrected,
}

/// `Z_k`: `R (x1x2x3)^{-m} y^{l-3} / Π · a(k+m, m-1 or m, 0)`.
pub fn ch_zk(k: i64, l: i64, m: i64, reading: ZkReading) -> CharFraction {
    let second = match reading {
        ZkReading::Printed => m - 1,
        ZkReading::Corrected => m,
    };
    frac(r() * LaurentPoly::det_power(-m) * LaurentPoly::y_power(l - 3) * a(k + m, second, 0), pi())
}

/// `M^{m,p}`: `R / (Π (x1x2x3)^{p+1}) · a(m+p, m+p, 0)`.
pub fn ch_mmp(m: i64, p: i64) -> CharFraction {
    frac(r() * a(m + p, m + p, 0), pi() * LaurentPoly::det_power(p + 1))
}

/// Dual of `M^{m,p}`: `R (x1x2x3)^{-m} / (Π y^3) · a(m+p, 0, 0)`.
pub fn ch_mmp_dual(m: i64, p: i64) -> CharFraction {
    frac(r() * LaurentPoly::det_power(-m) * a(m + p, 0, 0), pi() * LaurentPoly::y_power(3))
}

/// Final family `M(m,t,p)`: `R (x1x2x3)^{-p} / (Π y) · a(m+p+t-1, m+p-1, 0)`.
pub fn ch_m_final(m: i64, t: i64, p: i64) -> CharFraction {
    frac(r() * LaurentPoly::det_power(-p) * a(m + p + t - 1, m + p - 1, 0), pi() * LaurentPoly::y())
}

/// The closed-form character asserted for a construction, if there is one.
pub fn closed_formula(name: &ConstructionName) -> Option<CharFraction> {
    let i = |x: usize| x as i64;
    Some(match *name {
        ConstructionName::H31 => CharFraction::poly(LaurentPoly::xy([1, 1, 1], -1)),
        ConstructionName::ImD { k, l } => ch_image_of_d(i(k), i(l)),
        ConstructionName::Mmp { m, p } => ch_mmp(i(m), i(p)),
        ConstructionName::Ysummand { n, p } => ch_y_summand(i(n), i(p)),
        ConstructionName::Z1 { m } => ch_z1(i(m)),
        ConstructionName::Zk { k, l, m } => ch_zk(i(k), i(l), i(m), ZkReading::Printed),
        ConstructionName::Mfinal { m, t, p } => ch_m_final(i(m), i(t), i(p)),
        ConstructionName::Ilambda { shape } if shape[2] >= 1 => ch_hook_printed(shape),
        ConstructionName::Ilambda { shape } if shape[1] == 0 => ch_symmetric_power(i(shape[0])),
        ConstructionName::Ilambda { shape } => ch_two_row(i(shape[0]), i(shape[1])),
    })
}

/// The highest weight asserted for a construction, if there is one.
pub fn claimed_weight(name: &ConstructionName) -> Option<WeightLabel> {
    let i = |x: usize| x as i64;
    Some(match *name {
        ConstructionName::H31 => WeightLabel::new(1, 1, 1, 1),
        ConstructionName::Mmp { m, p } => WeightLabel::new(i(m), i(m), -i(p), 0),
        ConstructionName::Ysummand { n, p } => WeightLabel::new(i(n), 0, 1 - i(p), 1),
        ConstructionName::Z1 { m } => WeightLabel::new(2, 1, 1 - i(m), 1),
        ConstructionName::Mfinal { m, t, p } => WeightLabel::new(i(m + t), i(m), 1 - i(p), 1),
        ConstructionName::Ilambda { shape } => {
            WeightLabel::new(i(shape[0]), i(shape[1]), i(shape[2]), -i(shape[3]))
        }
        ConstructionName::Zk { .. } | ConstructionName::ImD { .. } => return None,
    })
}

/// `(x1x2x3 / y)^t`, the character of `Ber^{⊗t}` in the trace convention.
pub fn berezinian_factor(t: i64) -> LaurentPoly {
    LaurentPoly::xy([t, t, t], -t)
}

/// Convenience for tests and reports: the scalar `c` as a constant polynomial.
pub fn constant(c: impl Into<Scalar>) -> LaurentPoly {
    LaurentPoly::monomial([0; 4], c)
}
