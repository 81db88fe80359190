use dkoszul_core::characters::*;
use dkoszul_core::exact::SparseMap;
use dkoszul_core::glrep::{construct, equivariance_check, ConstructionName, GLModule};
use dkoszul_core::koszul::*;
use dkoszul_core::superspace::SuperSpace;
use dkoszul_core::CoreError;
use serde_json::{json, Value};

use crate::claims::{self, Claim};
use crate::plan::{Check, VerificationPlan};

/// One independent unit of verification.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    DelD(Spot),
    Pq(Spot),
    KHomology { k: usize, l: usize },
    LHomology { p: usize, r: usize },
    Square { square: Square, i: usize, k: usize, l: usize },
    Equivariance { kind: DiffKind, sub: Spot },
    DelPQd { i: usize, a: i64 },
    PDelDQ { i: usize, k: usize, a: i64 },
    ImageSplit { k: usize, l: usize },
    QdSplit { i: usize, a: i64 },
    Construction(ConstructionName),
    Kac(WeightLabel),
    Hook([usize; 4]),
    Schur([usize; 4]),
}

/// Result of evaluating a cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Done { pass: bool, dims: Vec<usize>, data: Value, witness: Option<Value> },
    Skipped { dims: Vec<usize>, reason: String },
}

const HOOKS: [[usize; 4]; 5] = [[1, 1, 1, 0], [2, 1, 1, 0], [1, 1, 1, 1], [2, 1, 1, 1], [1, 1, 1, 2]];
const SHAPES: [[usize; 4]; 8] =
    [[1, 0, 0, 0], [2, 0, 0, 0], [1, 1, 0, 0], [2, 1, 0, 0], [1, 1, 1, 0], [1, 1, 1, 1], [2, 1, 1, 1], [2, 2, 0, 0]];

/// The cells of a plan, in report order.
pub fn plan_cells(plan: &VerificationPlan) -> Vec<Cell> {
    let (m, n) = (plan.m as i64, plan.n as i64);
    let mut cells = Vec::new();
    let kl = || (0..=plan.max_k).flat_map(move |k| (0..=plan.max_l).map(move |l| (k, l)));
    let pr = || (0..=plan.max_p).flat_map(move |p| (0..=plan.max_r).map(move |r| (p, r)));
    for check in &plan.checks {
        match check {
            Check::Identities => {
                cells.extend(kl().map(|(k, l)| Cell::DelD(Spot::K { k, l })));
                cells.extend(pr().map(|(p, r)| Cell::Pq(Spot::L { p, r })));
            }
            Check::Exactness => {
                cells.extend(kl().map(|(k, l)| Cell::KHomology { k, l }));
                cells.extend(pr().map(|(p, r)| Cell::LHomology { p, r }));
            }
            Check::Commutativity => {
                for i in 1..=plan.max_i {
                    for (k, l) in kl() {
                        for square in [Square::PD, Square::DelQ] {
                            cells.push(Cell::Square { square, i, k, l });
                        }
                    }
                }
            }
            Check::Equivariance => {
                for (k, l) in kl() {
                    for kind in [DiffKind::D, DiffKind::Del] {
                        cells.push(Cell::Equivariance { kind, sub: Spot::K { k, l } });
                    }
                }
                for (p, r) in pr().filter(|&(p, _)| p >= 1) {
                    for kind in [DiffKind::P, DiffKind::Q] {
                        cells.push(Cell::Equivariance { kind, sub: Spot::L { p, r } });
                    }
                }
            }
            Check::Spectra => {
                for i in 0..=plan.max_i {
                    for a in 0..=plan.max_a as i64 {
                        cells.push(Cell::DelPQd { i, a });
                    }
                }
                for i in 0..=plan.max_i {
                    for k in 0..=plan.max_k.min(plan.max_i) {
                        for a in 0..=plan.max_a as i64 {
                            cells.push(Cell::PDelDQ { i, k, a });
                        }
                    }
                }
            }
            Check::Splittings => {
                cells.extend(kl().filter(|&(k, l)| k as i64 - l as i64 != m - n).map(|(k, l)| Cell::ImageSplit { k, l }));
                for i in 0..=plan.max_i {
                    for a in 0..=plan.max_a as i64 {
                        cells.push(Cell::QdSplit { i, a });
                    }
                }
            }
            Check::Constructions => {
                cells.push(Cell::Construction(ConstructionName::H31));
                for (k, l) in kl().filter(|&(k, l)| k >= 1 && l >= 1 && k as i64 - l as i64 != 2) {
                    cells.push(Cell::Construction(ConstructionName::ImD { k: k + 1, l: l + 1 }));
                }
                for a in 1..=2 {
                    for b in 1..=2 {
                        cells.push(Cell::Construction(ConstructionName::Ysummand { n: a, p: b }));
                    }
                }
                for m in 1..=2 {
                    cells.push(Cell::Construction(ConstructionName::Z1 { m }));
                }
                for a in 1..=2 {
                    for b in 1..=2 {
                        cells.push(Cell::Construction(ConstructionName::Mmp { m: a, p: b }));
                    }
                }
                for a in 1..=2 {
                    for b in 1..=2 {
                        for c in 1..=2 {
                            cells.push(Cell::Construction(ConstructionName::Mfinal { m: a, t: b, p: c }));
                        }
                    }
                }
            }
            Check::Characters => {
                for l1 in -2..=2 {
                    for l2 in -2..=l1 {
                        for l3 in -2..=l2 {
                            for l4 in -2..=2 {
                                let w = WeightLabel::new(l1, l2, l3, l4);
                                if w.dominant() && w.integrable() && w.is_typical() {
                                    cells.push(Cell::Kac(w));
                                }
                            }
                        }
                    }
                }
                cells.extend(HOOKS.iter().map(|&s| Cell::Hook(s)));
                cells.extend(SHAPES.iter().map(|&s| Cell::Schur(s)));
            }
        }
    }
    cells
}

fn construction_claim(name: &ConstructionName) -> Claim {
    match name {
        ConstructionName::H31 => claims::H31_LINE,
        ConstructionName::ImD { .. } => claims::IMD_SIMPLE,
        ConstructionName::Ysummand { .. } => claims::Y_CHAR,
        ConstructionName::Z1 { .. } => claims::Z1_CHAR,
        ConstructionName::Mmp { .. } => claims::MMP_CHAR,
        ConstructionName::Mfinal { .. } | ConstructionName::Zk { .. } => claims::MFINAL_CHAR,
        ConstructionName::Ilambda { .. } => claims::HOOK_CHAR,
    }
}

fn first_entry(m: &SparseMap) -> Value {
    match m.triplets().into_iter().next() {
        Some((r, c, x)) => json!({ "row": r, "col": c, "value": x.to_string() }),
        None => Value::Null,
    }
}

fn values(s: &dkoszul_core::exact::Spectrum) -> Value {
    s.eigenvalues
        .iter()
        .map(|e| json!({ "value": e.value.to_string(), "algebraic": e.algebraic, "geometric": e.geometric }))
        .collect()
}

impl Cell {
    pub fn check(&self) -> Check {
        match self {
            Cell::DelD(_) | Cell::Pq(_) => Check::Identities,
            Cell::KHomology { .. } | Cell::LHomology { .. } => Check::Exactness,
            Cell::Square { .. } => Check::Commutativity,
            Cell::Equivariance { .. } => Check::Equivariance,
            Cell::DelPQd { .. } | Cell::PDelDQ { .. } => Check::Spectra,
            Cell::ImageSplit { .. } | Cell::QdSplit { .. } => Check::Splittings,
            Cell::Construction(_) => Check::Constructions,
            Cell::Kac(_) | Cell::Hook(_) | Cell::Schur(_) => Check::Characters,
        }
    }

    pub fn claim(&self) -> Claim {
        match self {
            Cell::DelD(_) => claims::DELD_IDENTITY,
            Cell::Pq(_) => claims::PQ_IDENTITY,
            Cell::KHomology { .. } => claims::K_EXACTNESS,
            Cell::LHomology { .. } => claims::L_EXACTNESS,
            Cell::Square { .. } => claims::SQUARES_COMMUTE,
            Cell::Equivariance { .. } => claims::EQUIVARIANCE,
            Cell::DelPQd { .. } => claims::DELPQD_SPECTRUM,
            Cell::PDelDQ { .. } => claims::PDELDQ_ISO,
            Cell::ImageSplit { .. } => claims::IMD_SPLITTING,
            Cell::QdSplit { .. } => claims::QD_SPLITTING,
            Cell::Construction(name) => construction_claim(name),
            Cell::Kac(_) => claims::KAC_TYPICAL,
            Cell::Hook(_) => claims::HOOK_CHAR,
            Cell::Schur(_) => claims::JT_SCHUR,
        }
    }

    pub fn params(&self) -> Value {
        match self {
            Cell::DelD(s) | Cell::Pq(s) => json!({ "spot": s.to_string() }),
            Cell::KHomology { k, l } => json!({ "a": *k as i64 - *l as i64, "k": k, "l": l }),
            Cell::LHomology { p, r } => json!({ "a": p + r, "p": p, "r": r }),
            Cell::Square { square, i, k, l } => json!({ "square": format!("{square:?}"), "i": i, "k": k, "l": l }),
            Cell::Equivariance { kind, sub } => json!({ "differential": kind.to_string(), "subscript": sub.to_string() }),
            Cell::DelPQd { i, a } => json!({ "i": i, "a": a }),
            Cell::PDelDQ { i, k, a } => json!({ "i": i, "k": k, "a": a }),
            Cell::ImageSplit { k, l } => json!({ "k": k, "l": l }),
            Cell::QdSplit { i, a } => json!({ "i": i, "a": a }),
            Cell::Construction(name) => json!({ "construction": name.to_string() }),
            Cell::Kac(w) => json!({ "lambda": w.to_string() }),
            Cell::Hook(s) | Cell::Schur(s) => json!({ "shape": s }),
        }
    }

    /// Differentials the cell reads, for cache warming.
    pub fn components(&self, space: SuperSpace) -> Vec<(DiffKind, Spot)> {
        let k_spot = |k, l| Spot::K { k, l };
        match *self {
            Cell::DelD(Spot::K { k, l }) => {
                let mut v = vec![(DiffKind::D, k_spot(k, l)), (DiffKind::Del, k_spot(k, l))];
                if k >= 1 && l >= 1 {
                    v.push((DiffKind::D, k_spot(k - 1, l - 1)));
                    v.push((DiffKind::Del, k_spot(k - 1, l - 1)));
                }
                v
            }
            Cell::Pq(Spot::L { p, r }) => {
                let mut v = Vec::new();
                if r >= 1 {
                    v.push((DiffKind::P, Spot::L { p: p + 1, r: r - 1 }));
                    v.push((DiffKind::Q, Spot::L { p: p + 1, r: r - 1 }));
                }
                if p >= 1 {
                    v.push((DiffKind::P, Spot::L { p, r }));
                    v.push((DiffKind::Q, Spot::L { p, r }));
                }
                v
            }
            Cell::KHomology { k, l } => {
                let mut v = vec![(DiffKind::D, k_spot(k, l))];
                if k >= 1 && l >= 1 {
                    v.push((DiffKind::D, k_spot(k - 1, l - 1)));
                }
                v
            }
            Cell::LHomology { p, r } => {
                let mut v = Vec::new();
                if p >= 1 {
                    v.push((DiffKind::P, Spot::L { p, r }));
                }
                if r >= 1 {
                    v.push((DiffKind::P, Spot::L { p: p + 1, r: r - 1 }));
                }
                v
            }
            Cell::Equivariance { kind, sub } => vec![(kind, sub)],
            _ => {
                let _ = space;
                Vec::new()
            }
        }
    }

    /// Dimensions of the spaces the cell works in, known before computing.
    pub fn dims(&self, space: SuperSpace) -> Vec<usize> {
        match *self {
            Cell::DelD(s) | Cell::Pq(s) => vec![s.dim(space)],
            Cell::KHomology { k, l } => vec![Spot::K { k, l }.dim(space), Spot::K { k: k + 1, l: l + 1 }.dim(space)],
            Cell::LHomology { p, r } => vec![Spot::L { p, r }.dim(space)],
            Cell::Square { i, k, l, .. } => {
                vec![Spot::Triple { i, k, l }.dim(space), Spot::Triple { i: i - 1, k: k + 2, l: l + 1 }.dim(space)]
            }
            Cell::Equivariance { kind, sub } => match endpoints(kind, sub) {
                Ok((s, t)) => vec![s.dim(space), t.dim(space)],
                Err(_) => vec![],
            },
            Cell::DelPQd { i, a } => SpectralOperator::DelPQd { i, a }.spot().map(|s| vec![s.dim(space)]).unwrap_or_default(),
            Cell::PDelDQ { i, k, a } => {
                SpectralOperator::PDelDQ { i, k, a }.spot().map(|s| vec![s.dim(space)]).unwrap_or_default()
            }
            Cell::ImageSplit { k, l } => vec![Spot::K { k, l }.dim(space)],
            Cell::QdSplit { i, a } => {
                let l = (a + i as i64 + 1).max(0) as usize;
                vec![Spot::Triple { i: i + 1, k: 0, l }.dim(space)]
            }
            _ => vec![],
        }
    }

    fn needs_standard(&self) -> bool {
        matches!(
            self,
            Cell::DelPQd { .. }
                | Cell::PDelDQ { .. }
                | Cell::Construction(_)
                | Cell::Kac(_)
                | Cell::Hook(_)
                | Cell::Schur(_)
        )
    }

    pub fn evaluate(&self, space: SuperSpace, max_dim: usize) -> Result<Outcome, CoreError> {
        let dims = self.dims(space);
        if self.needs_standard() && space != SuperSpace::standard() {
            return Ok(Outcome::Skipped { dims, reason: format!("closed forms are stated for (3|1), not {space}") });
        }
        if let Some(&d) = dims.iter().max().filter(|&&d| d > max_dim) {
            return Ok(Outcome::Skipped { dims, reason: format!("dimension {d} exceeds max-dim {max_dim}") });
        }
        let done = |pass: bool, data: Value, witness: Value| Outcome::Done {
            pass,
            dims: dims.clone(),
            data,
            witness: (!pass).then_some(witness),
        };
        Ok(match *self {
            Cell::DelD(spot) | Cell::Pq(spot) => {
                let id = if matches!(self, Cell::DelD(_)) { Identity::DelD } else { Identity::PQ };
                let c = identity_check(space, id, spot)?;
                let data = json!({ "scalar": c.scalar.to_string(), "dropped": c.dropped });
                let witness = json!({ "residual_nnz": c.residual.nnz(), "entry": first_entry(&c.residual) });
                done(c.holds(), data, witness)
            }
            Cell::KHomology { k, l } => {
                let a = k as i64 - l as i64;
                let h = homology(space, Complex::K(a), k)?;
                let expected = usize::from((k, l) == (space.m, space.n));
                let data = json!({
                    "kernel": h.dim_kernel, "image": h.dim_image, "homology": h.homology_dim, "expected": expected
                });
                done(h.homology_dim == expected, data.clone(), data)
            }
            Cell::LHomology { p, r } => {
                let h = homology(space, Complex::L(p + r), p)?;
                let expected = usize::from(p + r == 0);
                let data = json!({
                    "kernel": h.dim_kernel, "image": h.dim_image, "homology": h.homology_dim, "expected": expected
                });
                done(h.homology_dim == expected, data.clone(), data)
            }
            Cell::Square { square, i, k, l } => {
                let c = commute_check(space, square, i, k, l)?;
                let r = c.residual.as_ref().expect("i >= 1");
                done(c.holds(), json!({ "vacuous": c.vacuous() }), json!({ "residual_nnz": r.nnz(), "entry": first_entry(r) }))
            }
            Cell::Equivariance { kind, sub } => {
                let (src, tgt) = endpoints(kind, sub)?;
                let f = differential(space, kind, sub)?;
                let dom = GLModule::from_ambient(src.to_string(), &src.ambient(space))?;
                let cod = GLModule::from_ambient(tgt.to_string(), &tgt.ambient(space))?;
                let bad = equivariance_check(&f, &dom, &cod)?;
                let generators = dom.actions().len();
                let witness: Value = bad.iter().map(|(g, nnz)| json!({ "generator": g.to_string(), "residual_nnz": nnz })).collect();
                done(bad.is_empty(), json!({ "generators": generators }), witness)
            }
            Cell::DelPQd { i, a } => {
                let r = spectrum_report(space, SpectralOperator::DelPQd { i, a })?;
                let ok = r.matches("printed") && r.spectrum.diagonalizable && r.invertible();
                let data = json!({
                    "spectrum": values(&r.spectrum),
                    "diagonalizable": r.spectrum.diagonalizable,
                    "readings": readings(&r),
                });
                done(ok, data.clone(), data)
            }
            Cell::PDelDQ { i, k, a } => {
                let r = spectrum_report(space, SpectralOperator::PDelDQ { i, k, a })?;
                let ok = r.spectrum.diagonalizable && r.invertible();
                let data = json!({
                    "spectrum": values(&r.spectrum),
                    "diagonalizable": r.spectrum.diagonalizable,
                    "invertible": r.invertible(),
                    "readings": readings(&r),
                });
                done(ok, data.clone(), data)
            }
            Cell::ImageSplit { k, l } => {
                let s = splitting(space, SplittingKind::ImageSplit { k, l })?;
                let ok = s.is_direct() && s.rank_identity == Some(true);
                let data = json!({
                    "dim_a": s.a.dim(), "dim_b": s.b.dim(), "spans": s.spans, "rank_identity": s.rank_identity
                });
                let witness = json!({ "meet_vector": s.witness, "spans": s.spans, "rank_identity": s.rank_identity });
                done(ok, data, witness)
            }
            Cell::QdSplit { i, a } => {
                let s = splitting(space, SplittingKind::QdSplit { i, a })?;
                let data = json!({ "dim_a": s.a.dim(), "dim_b": s.b.dim(), "spans": s.spans });
                let witness = json!({ "meet_vector": s.witness, "spans": s.spans });
                done(s.is_direct(), data, witness)
            }
            Cell::Construction(name) => return evaluate_construction(space, name, max_dim),
            Cell::Kac(w) => {
                let k = kac_sum(w)?;
                let t = ch_typical(w)?;
                let c = char_equal(&k, &t);
                let witness = json!({
                    "kac": [k.num.to_string(), k.den.to_string()],
                    "typical": [t.num.to_string(), t.den.to_string()],
                });
                done(c.equal, json!({ "up_to_sign": c.up_to_sign }), witness)
            }
            Cell::Hook(shape) => {
                let m = construct(space, ConstructionName::Ilambda { shape })?.module;
                let ch = CharFraction::poly(supercharacter(&m, false)?);
                let corrected = char_equal(&ch, &ch_hook_corrected(shape)).equal;
                let printed = char_equal(&ch, &ch_hook_printed(shape)).equal;
                let data = json!({ "dim": m.dim(), "corrected_reading": corrected, "printed_reading": printed });
                done(corrected, data.clone(), json!({ "character": ch.num.to_string(), "readings": data }))
            }
            Cell::Schur(shape) => {
                let m = construct(space, ConstructionName::Ilambda { shape })?.module;
                let signed = supercharacter(&m, true)?;
                let jt = ch_schur_super(shape, JtGenerator::Corrected)?;
                let printed = ch_schur_super(shape, JtGenerator::Printed)? == signed;
                let data = json!({ "dim": m.dim(), "printed_generator_agrees": printed });
                done(jt == signed, data, json!({ "signed": signed.to_string(), "jacobi_trudi": jt.to_string() }))
            }
        })
    }
}

fn readings(r: &SpectrumReport) -> Value {
    r.predictions.iter().map(|(p, ok)| json!({ "reading": p.reading, "matches": ok })).collect()
}

fn describe(c: &ConventionMatch) -> Value {
    json!({
        "trace": c.trace.equal,
        "signed": c.signed.equal,
        "matched": c.matched(),
        "up_to_sign_only": !c.any() && c.any_up_to_sign(),
    })
}

fn evaluate_construction(space: SuperSpace, name: ConstructionName, max_dim: usize) -> Result<Outcome, CoreError> {
    let c = construct(space, name)?;
    let dims = vec![c.module.dim()];
    if c.module.dim() > max_dim {
        return Ok(Outcome::Skipped { dims, reason: format!("dimension {} exceeds max-dim {max_dim}", c.module.dim()) });
    }
    let closed = closed_formula(&name).ok_or_else(|| CoreError::Config(format!("{name} has no closed formula")))?;
    let by_closed = compare_module(&c.module, &closed)?;
    let top = c.report.top_weight.as_ref().map(WeightLabel::from_tuple).transpose()?;
    let mut data = json!({
        "top_weight": top.map(|w| w.to_string()),
        "singular_lines": c.report.singular_line_count(),
        "twist": c.twist,
        "closed_formula": describe(&by_closed),
    });
    let mut pass = by_closed.any();
    match claimed_weight(&name) {
        Some(stated) => {
            let by_v = compare_module(&c.module, &ch_irreducible(stated)?)?;
            pass &= top == Some(stated) && by_v.any();
            data["stated_weight"] = json!(stated.to_string());
            data["v_lambda_formula"] = describe(&by_v);
        }
        None => {
            let irr = c.module.irreducibility_check(max_dim)?;
            pass &= irr.pass();
            data["irreducibility"] = json!({
                "unique_singular": irr.unique_singular,
                "cyclic": irr.cyclic,
                "dual_unique_singular": irr.dual_unique_singular,
            });
        }
    }
    Ok(Outcome::Done { pass, dims, witness: (!pass).then(|| data.clone()), data })
}
