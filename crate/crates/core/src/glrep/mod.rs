//! The gl(m|n) action on power bases, tensor ambients and derived modules,
//! with singular vectors, cyclic closures and the irreducibility battery.

mod construct;

use std::collections::BTreeMap;
use std::fmt;

use dkoszul_exact::{Echelon, PivotSide, Scalar, SparseMap, SparseVec, Subspace};
use serde::{Deserialize, Serialize};

use crate::superspace::{PowerBasis, SuperSpace, TensorAmbient, WeightTuple};
use crate::{CoreError, Result};

pub use construct::{construct, simple_in_tensor_power, Construction, ConstructionName};

/// Matrix unit `E_{row,col}` (0-based letters).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub row: u8,
    pub col: u8,
}

impl Generator {
    /// `E_ij` with 1-based indices.
    pub fn e(i: u8, j: u8) -> Self {
        Generator { row: i - 1, col: j - 1 }
    }

    pub fn parity(&self, space: SuperSpace) -> u8 {
        (space.parity(self.row) + space.parity(self.col)) % 2
    }

    pub fn all(space: SuperSpace) -> Vec<Generator> {
        let d = space.dim() as u8;
        (0..d).flat_map(|row| (0..d).map(move |col| Generator { row, col })).collect()
    }

    /// `E_{i,i+1}`: simple root vectors of the distinguished Borel.
    pub fn raising(space: SuperSpace) -> Vec<Generator> {
        (0..space.dim() as u8 - 1).map(|i| Generator { row: i, col: i + 1 }).collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}", self.row + 1, self.col + 1)
    }
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Action of `g` on one power-basis factor, as columns of `(row, coefficient)`.
pub fn factor_action(pb: &PowerBasis, g: Generator) -> SparseMap {
    let space = pb.space;
    let gp = g.parity(space) == 1;
    let (img, pre, c) = if pb.dual {
        (g.col, g.row, -sign(gp && space.parity(g.row) == 1))
    } else {
        (g.row, g.col, 1)
    };
    let columns = (0..pb.dim())
        .map(|idx| {
            let s = pb.elem(idx);
            if !s.contains(&pre) {
                return SparseVec::new();
            }
            let mut target = s.to_vec();
            let pos = target.iter().position(|&x| x == pre).expect("letter present");
            target[pos] = img;
            target.sort_unstable();
            let Some(t_idx) = pb.index_of(&target) else {
                return SparseVec::new();
            };
            // coefficient of the sorted word of the target in E·e_S
            let mut coef = 0i64;
            let mut prefix_odd = false;
            for (p, &letter) in target.iter().enumerate() {
                if letter == img {
                    let mut word = target.clone();
                    word[p] = pre;
                    let mut sorted = word.clone();
                    sorted.sort_unstable();
                    if sorted == s {
                        coef += pb.kappa(&word) * sign(gp && prefix_odd);
                    }
                }
                prefix_odd ^= space.parity(letter) == 1;
            }
            SparseVec::from_pairs([(t_idx, Scalar::from(c * coef))])
        })
        .collect();
    SparseMap::from_columns(pb.dim(), columns)
}

/// Matrix of `g` on a tensor ambient: the super derivation rule over the factors.
pub fn generator_matrix(ambient: &TensorAmbient, g: Generator) -> SparseMap {
    let Some(space) = ambient.space() else {
        return SparseMap::zero(1, 1);
    };
    let gp = g.parity(space) == 1;
    let factors = ambient.factors();
    let actions: Vec<SparseMap> = factors.iter().map(|f| factor_action(f, g)).collect();
    let columns = (0..ambient.dim())
        .map(|idx| {
            let parts = ambient.decode(idx);
            let mut out = Vec::new();
            let mut prefix_odd = false;
            for (f, action) in actions.iter().enumerate() {
                let s = Scalar::from(sign(gp && prefix_odd));
                for (row, x) in action.column(parts[f]).iter() {
                    let mut t = parts.clone();
                    t[f] = row;
                    out.push((ambient.index(&t), x * &s));
                }
                prefix_odd ^= factors[f].parity(parts[f]) == 1;
            }
            SparseVec::from_pairs(out)
        })
        .collect();
    SparseMap::from_columns(ambient.dim(), columns)
}

/// A finite-dimensional gl(m|n)-module given by weight vectors and generator matrices.
#[derive(Clone, Debug)]
pub struct GLModule {
    pub name: String,
    pub space: SuperSpace,
    weights: Vec<Vec<i64>>,
    parities: Vec<u8>,
    actions: BTreeMap<Generator, SparseMap>,
    /// Basis vectors in the coordinates of the ambient the module was cut from, when there is one.
    pub carrier: Option<Subspace>,
}

impl GLModule {
    /// Assembles a module; the weights must be those of the Cartan action.
    pub fn from_parts(
        name: impl Into<String>,
        space: SuperSpace,
        weights: Vec<Vec<i64>>,
        parities: Vec<u8>,
        actions: BTreeMap<Generator, SparseMap>,
    ) -> Self {
        GLModule { name: name.into(), space, weights, parities, actions, carrier: None }
    }

    pub fn from_ambient(name: impl Into<String>, ambient: &TensorAmbient) -> Result<Self> {
        let space = ambient.space().ok_or_else(|| CoreError::Config("empty ambient".into()))?;
        let (weights, parities) = ambient.grading();
        let actions = Generator::all(space).into_iter().map(|g| (g, generator_matrix(ambient, g))).collect();
        Ok(GLModule { name: name.into(), space, weights, parities, actions, carrier: Some(Subspace::full(ambient.dim())) })
    }

    /// The trivial one-dimensional module.
    pub fn trivial(space: SuperSpace) -> Self {
        let actions = Generator::all(space).into_iter().map(|g| (g, SparseMap::zero(1, 1))).collect();
        GLModule::from_parts("trivial", space, vec![vec![0; space.dim()]], vec![0], actions)
    }

    /// The line of weight `t·(1,…,1 | -1,…,-1)` (in ε-coordinates), parity `n·t`.
    pub fn berezinian(space: SuperSpace, t: i64) -> Self {
        let w: Vec<i64> = (0..space.dim()).map(|c| if c < space.m { t } else { -t }).collect();
        let actions = Generator::all(space)
            .into_iter()
            .map(|g| {
                let m = if g.row == g.col { SparseMap::scalar(1, &Scalar::from(w[g.row as usize])) } else { SparseMap::zero(1, 1) };
                (g, m)
            })
            .collect();
        let parity = ((space.n as i64 * t).rem_euclid(2)) as u8;
        GLModule::from_parts(format!("Ber^{t}"), space, vec![w], vec![parity], actions)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, idx: usize) -> &[i64] {
        &self.weights[idx]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn parity(&self, idx: usize) -> u8 {
        self.parities[idx]
    }

    pub fn action(&self, g: Generator) -> &SparseMap {
        &self.actions[&g]
    }

    pub fn actions(&self) -> &BTreeMap<Generator, SparseMap> {
        &self.actions
    }

    /// Dimensions per ε-weight, split by parity.
    pub fn weight_table(&self) -> BTreeMap<Vec<i64>, (usize, usize)> {
        let mut t: BTreeMap<Vec<i64>, (usize, usize)> = BTreeMap::new();
        for (w, &p) in self.weights.iter().zip(&self.parities) {
            let e = t.entry(w.clone()).or_default();
            if p == 0 {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        t
    }

    /// Restriction to a stable subspace (in module coordinates) with a weight-homogeneous reduced basis.
    pub fn submodule(&self, name: impl Into<String>, sub: &Subspace) -> Result<GLModule> {
        let mut actions = BTreeMap::new();
        for (g, m) in &self.actions {
            let r = m.restrict(sub, sub).map_err(|e| not_stable(*g, e))?;
            actions.insert(*g, r);
        }
        let (weights, parities) = self.grading_of(sub.basis())?;
        let carrier = self.lift(sub);
        Ok(GLModule { name: name.into(), space: self.space, weights, parities, actions, carrier: Some(carrier) })
    }

    /// `W / U` for stable `U ⊂ W` (both in module coordinates).
    pub fn subquotient(&self, name: impl Into<String>, w: &Subspace, u: &Subspace) -> Result<GLModule> {
        let c = u.complement_in(w)?;
        let mut actions = BTreeMap::new();
        for (g, m) in &self.actions {
            for b in u.basis() {
                if !u.contains(&m.apply(b)) {
                    return Err(CoreError::NotStable { generator: g.to_string(), context: "submodule of the quotient".into() });
                }
            }
            let mut cols = Vec::with_capacity(c.dim());
            for b in c.basis() {
                let x = m.apply(b);
                if !w.contains(&x) {
                    return Err(CoreError::NotStable { generator: g.to_string(), context: "numerator".into() });
                }
                cols.push(c.coordinates(&u.reduce(&x)).expect("W = U ⊕ C"));
            }
            actions.insert(*g, SparseMap::from_columns(c.dim(), cols));
        }
        let (weights, parities) = self.grading_of(c.basis())?;
        Ok(GLModule { name: name.into(), space: self.space, weights, parities, actions, carrier: Some(self.lift(&c)) })
    }

    fn lift(&self, sub: &Subspace) -> Subspace {
        match &self.carrier {
            Some(car) if car.dim() < car.ambient() => {
                let inc = car.inclusion();
                Subspace::span(car.ambient(), sub.basis().iter().map(|b| inc.apply(b)).collect::<Vec<_>>())
            }
            Some(car) => Subspace::from_reduced_basis(car.ambient(), sub.basis().to_vec()),
            None => sub.clone(),
        }
    }

    fn grading_of(&self, basis: &[SparseVec]) -> Result<(Vec<Vec<i64>>, Vec<u8>)> {
        let mut weights = Vec::with_capacity(basis.len());
        let mut parities = Vec::with_capacity(basis.len());
        for v in basis {
            let (i0, _) = v.first().ok_or_else(|| CoreError::Shape("zero basis vector".into()))?;
            let w = &self.weights[i0];
            if v.iter().any(|(i, _)| &self.weights[i] != w || self.parities[i] != self.parities[i0]) {
                return Err(CoreError::Shape("basis vector is not a weight vector".into()));
            }
            weights.push(w.clone());
            parities.push(self.parities[i0]);
        }
        Ok((weights, parities))
    }

    /// `ρ*(E)[g,f] = -(-1)^{|E||f|} ρ(E)[f,g]` on the dual basis.
    pub fn dual(&self) -> GLModule {
        let actions = self
            .actions
            .iter()
            .map(|(g, m)| {
                let gp = g.parity(self.space) == 1;
                let trip = m
                    .triplets()
                    .into_iter()
                    .map(|(f, c, x)| (c, f, x * Scalar::from(-sign(gp && self.parities[f] == 1))));
                (*g, SparseMap::from_triplets(self.dim(), self.dim(), trip.collect::<Vec<_>>()))
            })
            .collect();
        GLModule {
            name: format!("({})*", self.name),
            space: self.space,
            weights: self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
            parities: self.parities.clone(),
            actions,
            carrier: None,
        }
    }

    /// `M ⊗ N` with basis `(a, b) ↦ a·dim N + b`.
    pub fn tensor(&self, other: &GLModule) -> Result<GLModule> {
        if self.space != other.space {
            return Err(CoreError::Config("tensor of modules over different spaces".into()));
        }
        let mut actions = BTreeMap::new();
        for (g, m) in &self.actions {
            let gp = g.parity(self.space) == 1;
            let s = SparseMap::from_triplets(
                self.dim(),
                self.dim(),
                (0..self.dim()).map(|i| (i, i, Scalar::from(sign(gp && self.parities[i] == 1)))).collect::<Vec<_>>(),
            );
            let a = m.kron(&SparseMap::identity(other.dim())).add(&s.kron(other.action(*g)))?;
            actions.insert(*g, a);
        }
        let mut weights = Vec::with_capacity(self.dim() * other.dim());
        let mut parities = Vec::with_capacity(self.dim() * other.dim());
        for (wa, pa) in self.weights.iter().zip(&self.parities) {
            for (wb, pb) in other.weights.iter().zip(&other.parities) {
                weights.push(wa.iter().zip(wb).map(|(x, y)| x + y).collect());
                parities.push((pa + pb) % 2);
            }
        }
        Ok(GLModule {
            name: format!("{} ⊗ {}", self.name, other.name),
            space: self.space,
            weights,
            parities,
            actions,
            carrier: None,
        })
    }

    /// `M ⊗ Ber^{⊗t}`.
    pub fn berezinian_twist(&self, t: i64) -> Result<GLModule> {
        if t == 0 {
            return Ok(self.clone());
        }
        let mut out = self.tensor(&GLModule::berezinian(self.space, t))?;
        out.name = format!("{} ⊗ Ber^{t}", self.name);
        out.carrier = self.carrier.clone();
        Ok(out)
    }

    /// First generator pair violating `[E_ij, E_kl] = δ_jk E_il - (-1)^{|E_ij||E_kl|} δ_li E_kj`.
    pub fn commutator_violation(&self) -> Option<(Generator, Generator)> {
        let gens = Generator::all(self.space);
        for &a in &gens {
            for &b in &gens {
                let (ma, mb) = (self.action(a), self.action(b));
                let sgn = Scalar::from(sign(a.parity(self.space) == 1 && b.parity(self.space) == 1));
                let lhs = ma.compose(mb).expect("square").sub(&mb.compose(ma).expect("square").scale(&sgn)).expect("shape");
                let mut rhs = SparseMap::zero(self.dim(), self.dim());
                if a.col == b.row {
                    rhs = rhs.add(self.action(Generator { row: a.row, col: b.col })).expect("shape");
                }
                if b.col == a.row {
                    rhs = rhs.sub(&self.action(Generator { row: b.row, col: a.col }).scale(&sgn)).expect("shape");
                }
                if !lhs.sub(&rhs).expect("shape").triplets().is_empty() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Whether each `E_ii` acts diagonally by the recorded weights.
    pub fn cartan_consistent(&self) -> bool {
        (0..self.space.dim() as u8).all(|i| {
            let h = self.action(Generator { row: i, col: i });
            (0..self.dim()).all(|j| h.column(j).entries() == diag_entry(j, self.weights[j][i as usize]).as_slice())
        })
    }

    /// Smallest stable subspace containing `seeds`.
    pub fn closure(&self, seeds: &[SparseVec]) -> Subspace {
        let mut e = Echelon::new(self.dim(), PivotSide::First);
        let mut queue: Vec<SparseVec> = Vec::new();
        for s in seeds {
            if e.insert(s).is_some() {
                queue.push(s.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for m in self.actions.values() {
                let w = m.apply(&v);
                if !w.is_zero() && e.insert(&w).is_some() {
                    queue.push(w);
                }
            }
        }
        Subspace::from_echelon(e)
    }

    /// Common kernel of the raising generators.
    pub fn singular_space(&self) -> Subspace {
        let raising = Generator::raising(self.space);
        let n = self.dim();
        let columns = (0..n)
            .map(|j| {
                raising.iter().enumerate().fold(SparseVec::new(), |acc, (r, g)| {
                    acc.add(&self.action(*g).column(j).shift(r * n))
                })
            })
            .collect();
        SparseMap::from_columns(n * raising.len(), columns).kernel()
    }

    pub fn highest_weight_report(&self) -> Result<HighestWeightReport> {
        let sing = self.singular_space();
        let mut lines: BTreeMap<Vec<i64>, (u8, usize)> = BTreeMap::new();
        let (weights, parities) = self.grading_of(sing.basis())?;
        for (w, p) in weights.iter().zip(&parities) {
            lines.entry(w.clone()).or_insert((*p, 0)).1 += 1;
        }
        let tops: Vec<Vec<i64>> =
            lines.keys().filter(|w| !lines.keys().any(|v| v != *w && dominates(v, w))).cloned().collect();
        let top = if tops.len() == 1 { Some(tops[0].clone()) } else { None };
        let generates_all = match &top {
            Some(t) => {
                let seeds: Vec<SparseVec> =
                    sing.basis().iter().zip(&weights).filter(|(_, w)| *w == t).map(|(v, _)| v.clone()).collect();
                self.closure(&seeds).dim() == self.dim()
            }
            None => false,
        };
        Ok(HighestWeightReport {
            singular_lines: lines
                .into_iter()
                .map(|(w, (p, mult))| SingularLine { weight: self.space.label_weight(&w), epsilon: w, parity: p, multiplicity: mult })
                .collect(),
            top_weight: top.map(|t| self.space.label_weight(&t)),
            generates_all,
        })
    }

    /// Unique singular line, cyclic from it, dual with a unique singular line.
    pub fn irreducibility_check(&self, bound: usize) -> Result<Irreducibility> {
        if self.dim() > bound {
            return Err(CoreError::TooLarge { dim: self.dim(), bound });
        }
        let rep = self.highest_weight_report()?;
        let unique_singular = rep.singular_line_count() == 1;
        let dual_unique_singular = self.dual().highest_weight_report()?.singular_line_count() == 1;
        Ok(Irreducibility {
            unique_singular,
            cyclic: unique_singular && rep.generates_all,
            dual_unique_singular,
            report: rep,
        })
    }
}

fn diag_entry(j: usize, w: i64) -> Vec<(usize, Scalar)> {
    if w == 0 {
        vec![]
    } else {
        vec![(j, Scalar::from(w))]
    }
}

fn not_stable(g: Generator, e: dkoszul_exact::ExactError) -> CoreError {
    CoreError::NotStable { generator: g.to_string(), context: e.to_string() }
}

/// `μ ≤ λ` in ε-coordinates: partial sums of `λ - μ` nonnegative, total zero.
pub fn dominates(lambda: &[i64], mu: &[i64]) -> bool {
    let mut s = 0;
    for (i, (a, b)) in lambda.iter().zip(mu).enumerate() {
        s += a - b;
        if i + 1 < lambda.len() && s < 0 {
            return false;
        }
    }
    s == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLine {
    pub weight: WeightTuple,
    pub epsilon: Vec<i64>,
    pub parity: u8,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestWeightReport {
    pub singular_lines: Vec<SingularLine>,
    /// The unique maximal singular weight, if there is one.
    pub top_weight: Option<WeightTuple>,
    pub generates_all: bool,
}

impl HighestWeightReport {
    pub fn singular_line_count(&self) -> usize {
        self.singular_lines.iter().map(|l| l.multiplicity).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducibility {
    pub unique_singular: bool,
    pub cyclic: bool,
    pub dual_unique_singular: bool,
    pub report: HighestWeightReport,
}

impl Irreducibility {
    pub fn pass(&self) -> bool {
        self.unique_singular && self.cyclic && self.dual_unique_singular
    }
}

/// `ρ_cod(E)∘f - f∘ρ_dom(E)` for every generator; returns the generators with nonzero residual.
pub fn equivariance_check(f: &SparseMap, dom: &GLModule, cod: &GLModule) -> Result<Vec<(Generator, usize)>> {
    let mut bad = Vec::new();
    for g in Generator::all(dom.space) {
        let r = cod.action(g).compose(f)?.sub(&f.compose(dom.action(g))?)?;
        let nnz = r.triplets().len();
        if nnz > 0 {
            bad.push((g, nnz));
        }
    }
    Ok(bad)
}
