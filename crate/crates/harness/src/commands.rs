use dkoszul_core::characters::*;
use dkoszul_core::glrep::{construct, ConstructionName};
use dkoszul_core::koszul::{spectrum_report, DiffKind, SpectralOperator, Spot};
use dkoszul_core::superspace::{Kind, PowerBasis, SuperSpace};
use serde_json::{json, Value};

use crate::cache::{report_key, Cache};
use crate::checks::Cell;
use crate::plan::{Check, VerificationPlan};
use crate::report::{Report, Timings};
use crate::HarnessError;

fn fraction(f: &CharFraction) -> Value {
    json!({
        "numerator": f.num.to_string(),
        "denominator": f.den.to_string(),
        "polynomial": f.to_poly().map(|p| p.to_string()),
    })
}

/// Builds a named module and compares its weight-enumeration character with
/// the closed formula and the V(λ) formula.
pub fn construct_cmd(space: SuperSpace, name: ConstructionName, max_dim: usize) -> Result<(Report, Value), HarnessError> {
    let c = construct(space, name)?;
    let table: Vec<Value> = c
        .module
        .weight_table()
        .into_iter()
        .map(|(w, (even, odd))| json!({ "weight": space.label_weight(&w).to_string(), "even": even, "odd": odd }))
        .collect();
    let mut module = json!({
        "name": name.to_string(),
        "space": space.to_string(),
        "dim": c.module.dim(),
        "spot": c.spot.map(|s| s.to_string()),
        "twist": c.twist,
        "top_weight": c.report.top_weight.as_ref().map(|w| w.to_string()),
        "singular_lines": c.report.singular_lines.iter().map(|l| json!({
            "weight": l.weight.to_string(), "parity": l.parity, "multiplicity": l.multiplicity
        })).collect::<Vec<_>>(),
        "generates_all": c.report.generates_all,
        "weights": table,
    });
    if space == SuperSpace::standard() {
        let trace = CharFraction::poly(supercharacter(&c.module, false)?);
        let signed = CharFraction::poly(supercharacter(&c.module, true)?);
        let mut cmp = json!({ "weight_enumeration": { "trace": fraction(&trace), "signed": fraction(&signed) } });
        if let Some(closed) = closed_formula(&name) {
            cmp["closed_formula"] = fraction(&closed);
        }
        if let Some(l) = claimed_weight(&name) {
            cmp["stated_weight"] = json!(l.to_string());
            cmp["v_lambda_formula"] = fraction(&ch_irreducible(l)?);
        }
        module["characters"] = cmp;
    }
    let plan = VerificationPlan { m: space.m, n: space.n, max_dim, ..VerificationPlan::only(&[Check::Constructions]) };
    let cell = Cell::Construction(name);
    let out = cell.evaluate(space, max_dim).map_err(|e| e.to_string());
    let record = crate::runner_record(&cell, space, out);
    Ok((Report::new(plan, vec![record], Timings::default()), module))
}

pub fn parse_spectral(prop: &str, params: &[i64]) -> Result<SpectralOperator, HarnessError> {
    let nonneg = |x: i64| usize::try_from(x).map_err(|_| HarnessError::Config(format!("index {x} must be non-negative")));
    match (prop.to_ascii_lowercase().as_str(), params) {
        ("delpqd" | "first", &[i, a]) => Ok(SpectralOperator::DelPQd { i: nonneg(i)?, a }),
        ("pdeldq" | "second", &[i, k, a]) => Ok(SpectralOperator::PDelDQ { i: nonneg(i)?, k: nonneg(k)?, a }),
        _ => Err(HarnessError::Config(format!(
            "expected `delpqd <i> <a>` or `pdeldq <i> <k> <a>`, got {prop} with {} parameters",
            params.len()
        ))),
    }
}

pub fn spectrum_cmd(space: SuperSpace, op: SpectralOperator) -> Result<Value, HarnessError> {
    let r = spectrum_report(space, op)?;
    Ok(json!({
        "operator": op,
        "dim": r.dim,
        "eigenvalues": r.spectrum.eigenvalues.iter().map(|e| json!({
            "value": e.value.to_string(), "algebraic": e.algebraic, "geometric": e.geometric
        })).collect::<Vec<_>>(),
        "diagonalizable": r.spectrum.diagonalizable,
        "invertible": r.invertible(),
        "predictions": r.predictions.iter().map(|(p, ok)| json!({
            "reading": p.reading,
            "values": p.values.iter().map(|(j, v)| json!({ "j": j, "value": v.to_string() })).collect::<Vec<_>>(),
            "matches": ok,
        })).collect::<Vec<_>>(),
    }))
}

/// `(a,b,c|d)`, `a,b,c,d` or `a b c d`.
pub fn parse_lambda(s: &str) -> Result<[i64; 4], HarnessError> {
    let parts: Vec<i64> = s
        .split(|c: char| c == ',' || c == '|' || c == '(' || c == ')' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| HarnessError::Config(format!("bad entry {t:?} in {s:?}"))))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|v: Vec<i64>| HarnessError::Config(format!("expected 4 entries, got {}", v.len())))
}

fn shape_of(l: [i64; 4]) -> Result<[usize; 4], HarnessError> {
    let mut out = [0usize; 4];
    for (o, x) in out.iter_mut().zip(l) {
        *o = usize::try_from(x).map_err(|_| HarnessError::Config(format!("shape entry {x} is negative")))?;
    }
    Ok(out)
}

pub const FORMULAS: &[&str] =
    &["typical", "atypical", "irreducible", "kac", "hook", "hook-printed", "hook-dual", "schur", "schur-printed"];

pub fn character_cmd(formula: &str, lambda: [i64; 4]) -> Result<Value, HarnessError> {
    let w = WeightLabel(lambda);
    let f = match formula {
        "typical" => ch_typical(w)?,
        "atypical" => ch_atypical(w)?,
        "irreducible" => ch_irreducible(w)?,
        "kac" => kac_sum(w)?,
        "hook" => ch_hook_corrected(shape_of(lambda)?),
        "hook-printed" => ch_hook_printed(shape_of(lambda)?),
        "hook-dual" => ch_hook_dual(shape_of(lambda)?),
        "schur" => CharFraction::poly(ch_schur_super(shape_of(lambda)?, JtGenerator::Corrected)?),
        "schur-printed" => CharFraction::poly(ch_schur_super(shape_of(lambda)?, JtGenerator::Printed)?),
        _ => return Err(HarnessError::Config(format!("unknown formula {formula:?}; expected one of {}", FORMULAS.join(", ")))),
    };
    Ok(json!({
        "formula": formula,
        "lambda": w.to_string(),
        "classification": format!("{:?}", w.classify()),
        "character": fraction(&f),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportKind {
    Matrix,
    Basis,
    Report,
}

impl std::str::FromStr for ExportKind {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "matrix" => Ok(ExportKind::Matrix),
            "basis" => Ok(ExportKind::Basis),
            "report" => Ok(ExportKind::Report),
            _ => Err(HarnessError::Config(format!("unknown export kind {s:?}"))),
        }
    }
}

/// `d:1,1`, `del:0,2`, `P:2,1` or `d:1,1,2` (triple).
pub fn parse_matrix_key(key: &str) -> Result<(DiffKind, Spot), HarnessError> {
    let bad = || HarnessError::UnknownKey(format!("matrix key {key:?}; expected <d|del|P|Q>:<i>,<j>[,<k>]"));
    let (kind, idx) = key.split_once(':').ok_or_else(bad)?;
    let kind: DiffKind = kind.parse().map_err(|_| bad())?;
    let idx: Vec<usize> = idx.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    let spot = match (kind, idx.as_slice()) {
        (DiffKind::D | DiffKind::Del, &[k, l]) => Spot::K { k, l },
        (DiffKind::P | DiffKind::Q, &[p, r]) => Spot::L { p, r },
        (_, &[i, k, l]) => Spot::Triple { i, k, l },
        _ => return Err(bad()),
    };
    Ok((kind, spot))
}

/// `ext:2`, `sym:3`, `dext:1` or `dsym:2`.
pub fn parse_basis_key(key: &str) -> Result<(Kind, usize, bool), HarnessError> {
    let bad = || HarnessError::UnknownKey(format!("basis key {key:?}; expected <ext|sym|dext|dsym>:<degree>"));
    let (kind, deg) = key.split_once(':').ok_or_else(bad)?;
    let deg: usize = deg.trim().parse().map_err(|_| bad())?;
    let (kind, dual) = match kind {
        "ext" => (Kind::Exterior, false),
        "sym" => (Kind::Symmetric, false),
        "dext" => (Kind::Exterior, true),
        "dsym" => (Kind::Symmetric, true),
        _ => return Err(bad()),
    };
    Ok((kind, deg, dual))
}

/// Canonical serialization of a cached or computable object.
pub fn export(what: ExportKind, key: &str, space: SuperSpace, cache: &Cache) -> Result<String, HarnessError> {
    match what {
        ExportKind::Matrix => {
            let (kind, spot) = parse_matrix_key(key)?;
            let m = cache.differential(space, kind, spot).map_err(|e| match e {
                HarnessError::Core(c) => HarnessError::UnknownKey(format!("{key}: {c}")),
                other => other,
            })?;
            Ok(m.to_json()?)
        }
        ExportKind::Basis => {
            let (kind, deg, dual) = parse_basis_key(key)?;
            Ok(serde_json::to_string(&PowerBasis::get(space, kind, deg, dual).to_serial())?)
        }
        ExportKind::Report => {
            cache.get(&report_key(key)).ok_or_else(|| HarnessError::UnknownKey(format!("no cached report with digest {key}")))
        }
    }
}
