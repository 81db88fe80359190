//! The character ring `Z[x1^±, x2^±, x3^±, y^±]` of gl(3|1), closed-form
//! character formulas and weight-enumeration characters of modules.

mod formulas;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dkoszul_exact::Scalar;
use serde::{Deserialize, Serialize, Serializer};

use crate::glrep::GLModule;
use crate::{CoreError, Result};

pub use formulas::*;

/// Exponent vector over `x1, x2, x3, y`.
pub type Exponent = [i64; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial([0; 4], 1)
    }

    pub fn monomial(e: Exponent, c: impl Into<Scalar>) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn x(i: usize) -> Self {
        let mut e = [0; 4];
        e[i - 1] = 1;
        LaurentPoly::monomial(e, 1)
    }

    pub fn y() -> Self {
        LaurentPoly::monomial([0, 0, 0, 1], 1)
    }

    /// `x1^a1 x2^a2 x3^a3 y^b`.
    pub fn xy(a: [i64; 3], b: i64) -> Self {
        LaurentPoly::monomial([a[0], a[1], a[2], b], 1)
    }

    /// `(x1 x2 x3)^t`.
    pub fn det_power(t: i64) -> Self {
        LaurentPoly::xy([t, t, t], 0)
    }

    pub fn y_power(t: i64) -> Self {
        LaurentPoly::xy([0, 0, 0], t)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    /// Applies `f` to every exponent vector.
    pub fn map_exponents(&self, f: impl Fn(Exponent) -> Exponent) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    /// `x_i ↦ x_i^{-1}`, `y ↦ y^{-1}`: the character of the dual.
    pub fn invert(&self) -> Self {
        self.map_exponents(|e| e.map(|x| -x))
    }

    /// `y ↦ -y`: trace character to supercharacter and back.
    pub fn flip_y(&self) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, if e[3] % 2 == 0 { c.clone() } else { -c.clone() })))
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        self.map_exponents(|mut e| {
            e.swap(i, j);
            e
        })
    }

    fn min_exponents(&self) -> Exponent {
        let mut m = [i64::MAX; 4];
        for e in self.terms.keys() {
            for k in 0..4 {
                m[k] = m[k].min(e[k]);
            }
        }
        m
    }

    /// `self / d` if it is a Laurent polynomial.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // normalize both to polynomials with d free of monomial factors
        let dm = d.min_exponents();
        let nm = self.min_exponents();
        let dn = d.map_exponents(|e| sub(e, dm));
        let mut r = self.map_exponents(|e| sub(e, nm));
        let (lt_e, lt_c) = dn.terms.iter().next_back().map(|(e, c)| (*e, c.clone())).expect("nonzero");
        let mut q = LaurentPoly::zero();
        while let Some((e, c)) = r.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let s = sub(e, lt_e);
            if s.iter().any(|&x| x < 0) {
                return None;
            }
            let t = LaurentPoly::monomial(s, &c / &lt_c);
            r = &r - &(&t * &dn);
            q = &q + &t;
        }
        Some(q.map_exponents(|e| add(sub(e, dm), nm)))
    }
}

fn sub(a: Exponent, b: Exponent) -> Exponent {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn add(a: Exponent, b: Exponent) -> Exponent {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(add(*a, *b), x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&Scalar::from(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Terms in increasing exponent order, `c*x1^a*x2^b*x3^c*y^d`; `0` for the zero polynomial.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x1", "x2", "x3", "y"];
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let mut factors = vec![c.to_string()];
            for (name, &k) in names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            let term = factors.join("*");
            if n == 0 {
                write!(f, "{term}")?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `num / den`, compared by cross-multiplication.
#[derive(Clone, Debug, Serialize)]
pub struct CharFraction {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl CharFraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(CoreError::Shape("zero denominator".into()));
        }
        Ok(CharFraction { num, den })
    }

    pub fn poly(p: LaurentPoly) -> Self {
        CharFraction { num: p, den: LaurentPoly::one() }
    }

    /// The quotient, if the denominator divides exactly.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        CharFraction { num: f(&self.num), den: f(&self.den) }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        CharFraction { num: &self.num * p, den: self.den.clone() }
    }

    pub fn neg(&self) -> Self {
        CharFraction { num: -&self.num, den: self.den.clone() }
    }
}

/// Result of an exact character comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharComparison {
    pub equal: bool,
    /// `e1 = ±e2`.
    pub up_to_sign: bool,
}

impl CharComparison {
    /// Overall sign relating the two sides, when one does.
    pub fn sign(&self) -> Option<i8> {
        match (self.equal, self.up_to_sign) {
            (true, _) => Some(1),
            (false, true) => Some(-1),
            _ => None,
        }
    }
}

pub fn char_equal(e1: &CharFraction, e2: &CharFraction) -> CharComparison {
    let l = &e1.num * &e2.den;
    let r = &e2.num * &e1.den;
    let equal = l == r;
    CharComparison { equal, up_to_sign: equal || (&l + &r).is_zero() }
}

/// `Σ (even ± odd)·x^a y^d` over the weight table; `signed` counts odd spaces negatively.
pub fn supercharacter(module: &GLModule, signed: bool) -> Result<LaurentPoly> {
    if module.space.m != 3 || module.space.n != 1 {
        return Err(CoreError::Config(format!("characters are defined for (3|1), not {}", module.space)));
    }
    let mut out = LaurentPoly::zero();
    for (w, (even, odd)) in module.weight_table() {
        let odd = if signed { -(odd as i64) } else { odd as i64 };
        out.add_term([w[0], w[1], w[2], w[3]], Scalar::from(even as i64 + odd));
    }
    Ok(out)
}

/// Which character convention a closed formula agrees with for a given module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionMatch {
    pub trace: CharComparison,
    pub signed: CharComparison,
}

impl ConventionMatch {
    pub fn any(&self) -> bool {
        self.trace.equal || self.signed.equal
    }

    pub fn any_up_to_sign(&self) -> bool {
        self.trace.up_to_sign || self.signed.up_to_sign
    }

    pub fn matched(&self) -> Option<&'static str> {
        if self.trace.equal {
            Some("trace")
        } else if self.signed.equal {
            Some("signed")
        } else {
            None
        }
    }
}

pub fn compare_module(module: &GLModule, formula: &CharFraction) -> Result<ConventionMatch> {
    let trace = CharFraction::poly(supercharacter(module, false)?);
    let signed = CharFraction::poly(supercharacter(module, true)?);
    Ok(ConventionMatch { trace: char_equal(&trace, formula), signed: char_equal(&signed, formula) })
}
