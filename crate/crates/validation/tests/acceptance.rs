//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use dkoszul_core::characters::*;
use dkoszul_core::glrep::{construct, equivariance_check, ConstructionName, GLModule};
use dkoszul_core::koszul::*;
use dkoszul_core::superspace::SuperSpace;
use dkoszul_validation::*;

struct Verdict {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Verdict { pass, summary: summary.into(), details: Vec::new() }
    }

    fn with(mut self, details: Vec<String>) -> Self {
        self.details = details;
        self
    }
}

type Outcome = Result<Verdict, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn v31() -> SuperSpace {
    SuperSpace::standard()
}

fn module_of(v: SuperSpace, spot: Spot) -> GLModule {
    GLModule::from_ambient(spot.to_string(), &spot.ambient(v)).expect("ambient module")
}

fn del_d_identity() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for v in identity_spaces() {
        for spot in del_d_window() {
            n += 1;
            let c = identity_check(v, Identity::DelD, spot).map_err(|e| e.to_string())?;
            if !c.holds() {
                bad.push(format!("{v} {spot}: {} residual entries", c.residual.triplets().len()));
            }
        }
    }
    Ok(Verdict::new(bad.is_empty(), format!("{} of {n} spots with zero residual", n - bad.len())).with(bad))
}

fn pq_identity() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for v in identity_spaces() {
        for spot in pq_window() {
            n += 1;
            let c = identity_check(v, Identity::PQ, spot).map_err(|e| e.to_string())?;
            if !c.holds() {
                bad.push(format!("{v} {spot}: {} residual entries", c.residual.triplets().len()));
            }
        }
    }
    Ok(Verdict::new(bad.is_empty(), format!("{} of {n} spots with zero residual", n - bad.len())).with(bad))
}

fn exactness() -> Outcome {
    let v = v31();
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    let window = exactness_window();
    for &(a, k) in &window {
        let h = homology(v, Complex::K(a), k).map_err(|e| e.to_string())?;
        let expected = usize::from((a, k) == (2, 3));
        if h.homology_dim != expected {
            bad.push(format!("K_{a} at {}: homology {} (expected {expected})", h.spot, h.homology_dim));
        } else if expected == 1 {
            lines.push(format!("K_{a} at {}: one-dimensional homology", h.spot));
        }
    }
    let pass = bad.is_empty() && lines.len() == 1;
    lines.extend(bad);
    Ok(Verdict::new(pass, format!("{} terms checked", window.len())).with(lines))
}

fn commutativity() -> Outcome {
    let v = v31();
    let mut bad = Vec::new();
    let mut live = 0;
    for (i, k, l) in square_window() {
        for sq in [Square::PD, Square::DelQ] {
            let c = commute_check(v, sq, i, k, l).map_err(|e| e.to_string())?;
            if !c.vacuous() {
                live += 1;
            }
            if !c.holds() {
                bad.push(format!("{sq:?} at T({i},{k},{l})"));
            }
        }
    }
    Ok(Verdict::new(bad.is_empty(), format!("{live} non-vacuous squares, {} failing", bad.len())).with(bad))
}

fn values(r: &SpectrumReport) -> String {
    let v: Vec<String> = r.spectrum.values().iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn first_spectra() -> Outcome {
    let v = v31();
    let mut details = Vec::new();
    let mut ok = 0;
    let window = first_spectral_window();
    for &(i, a) in &window {
        let r = spectrum_report(v, SpectralOperator::DelPQd { i, a }).map_err(|e| e.to_string())?;
        let good = r.matches("printed") && r.spectrum.diagonalizable && r.invertible();
        if good {
            ok += 1;
        } else {
            details.push(format!(
                "(i,a)=({i},{a}) dim {}: computed {} diagonalizable={} invertible={} printed={} recursion={}",
                r.dim,
                values(&r),
                r.spectrum.diagonalizable,
                r.invertible(),
                r.matches("printed"),
                r.matches("recursion")
            ));
        }
    }
    Ok(Verdict::new(ok == window.len(), format!("{ok} of {} spectra equal the printed closed form", window.len())).with(details))
}

fn second_spectra() -> Outcome {
    let v = v31();
    let mut details = Vec::new();
    let mut gate = true;
    let window = second_spectral_window();
    let readings = ["head-and-tail", "full-range", "head-only"];
    let mut hits = [0usize; 3];
    for &(i, k, a) in &window {
        let r = spectrum_report(v, SpectralOperator::PDelDQ { i, k, a }).map_err(|e| e.to_string())?;
        let good = r.spectrum.diagonalizable && r.invertible();
        gate &= good;
        for (h, name) in hits.iter_mut().zip(readings) {
            *h += usize::from(r.matches(name));
        }
        if !good || !r.matches(readings[0]) {
            details.push(format!(
                "(i,k,a)=({i},{k},{a}) dim {}: computed {} diagonalizable={} invertible={}",
                r.dim,
                values(&r),
                r.spectrum.diagonalizable,
                r.invertible()
            ));
        }
    }
    let tally: Vec<String> = readings.iter().zip(hits).map(|(r, h)| format!("{r} {h}/{}", window.len())).collect();
    details.insert(0, format!("index readings matched: {}", tally.join(", ")));
    Ok(Verdict::new(gate, format!("{} operators diagonalizable and invertible: {gate}", window.len())).with(details))
}

fn splittings() -> Outcome {
    let v = v31();
    let mut bad = Vec::new();
    let window = splitting_window();
    for &(k, l) in &window {
        let s = splitting(v, SplittingKind::ImageSplit { k, l }).map_err(|e| e.to_string())?;
        if !s.is_direct() || s.rank_identity != Some(true) {
            bad.push(format!("({k},{l}): direct={} rank identity={:?}", s.is_direct(), s.rank_identity));
        }
    }
    Ok(Verdict::new(bad.is_empty(), format!("{} of {} splittings direct", window.len() - bad.len(), window.len())).with(bad))
}

fn equivariance() -> Outcome {
    let v = v31();
    let mut bad = Vec::new();
    let grid = equivariance_grid();
    for &(kind, sub) in &grid {
        let (src, tgt) = endpoints(kind, sub).map_err(|e| e.to_string())?;
        let f = differential(v, kind, sub).map_err(|e| e.to_string())?;
        let viol = equivariance_check(&f, &module_of(v, src), &module_of(v, tgt)).map_err(|e| e.to_string())?;
        if !viol.is_empty() {
            bad.push(format!("{kind}_{sub}: {viol:?}"));
        }
    }
    Ok(Verdict::new(bad.is_empty(), format!("{} components x 16 generators, {} failing", grid.len(), bad.len())).with(bad))
}

fn simplicity() -> Outcome {
    let v = v31();
    let mut bad = Vec::new();
    let window = simplicity_window();
    for &(k, l) in &window {
        let name = ConstructionName::ImD { k: k + 1, l: l + 1 };
        let c = construct(v, name).map_err(|e| e.to_string())?;
        let irr = c.module.irreducibility_check(SIMPLICITY_DIM_BOUND).map_err(|e| e.to_string())?;
        let ch = compare_module(&c.module, &ch_image_of_d(k as i64 + 1, l as i64 + 1)).map_err(|e| e.to_string())?;
        if !irr.pass() || !ch.any() {
            bad.push(format!(
                "{name} dim {}: unique={} cyclic={} dual={} character={:?}",
                c.module.dim(),
                irr.unique_singular,
                irr.cyclic,
                irr.dual_unique_singular,
                ch.matched()
            ));
        }
    }
    Ok(Verdict::new(bad.is_empty(), format!("{} of {} images simple with the closed character", window.len() - bad.len(), window.len()))
        .with(bad))
}

fn constructions() -> Outcome {
    let v = v31();
    let mut details = Vec::new();
    let mut ok = 0;
    let window = construction_window();
    for name in &window {
        let c = construct(v, *name).map_err(|e| e.to_string())?;
        let stated = claimed_weight(name).ok_or(format!("{name}: no stated weight"))?;
        let closed = closed_formula(name).ok_or(format!("{name}: no closed formula"))?;
        let top = c.report.top_weight.as_ref().map(WeightLabel::from_tuple).transpose().map_err(|e| e.to_string())?;
        let hw_ok = top == Some(stated);
        let by_closed = compare_module(&c.module, &closed).map_err(|e| e.to_string())?;
        let by_v = compare_module(&c.module, &ch_irreducible(stated).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let good = hw_ok && by_closed.any() && by_v.any();
        ok += usize::from(good);
        let top_text = top.map_or("none".to_string(), |w| w.to_string());
        details.push(format!(
            "{} {name} dim {}: top {top_text} stated {stated}; closed {}; V(stated) {}",
            if good { "ok  " } else { "FAIL" },
            c.module.dim(),
            describe(&by_closed),
            describe(&by_v)
        ));
    }
    Ok(Verdict::new(ok == window.len(), format!("{ok} of {} constructions agree", window.len())).with(details))
}

fn describe(c: &ConventionMatch) -> String {
    match c.matched() {
        Some(conv) => format!("equal ({conv})"),
        None if c.any_up_to_sign() => "equal up to sign only".into(),
        None => "differs".into(),
    }
}

fn kac_consistency() -> Outcome {
    let mut bad = Vec::new();
    let sample = typical_sample();
    for &l in &sample {
        let k = kac_sum(l).map_err(|e| e.to_string())?;
        let t = ch_typical(l).map_err(|e| e.to_string())?;
        if !char_equal(&k, &t).equal {
            bad.push(format!("{l}"));
        }
    }
    let labels: Vec<String> = sample.iter().map(|l| l.to_string()).collect();
    let mut details = vec![format!("labels {}", labels.join(" "))];
    details.extend(bad.iter().map(|l| format!("mismatch at {l}")));
    Ok(Verdict::new(bad.is_empty() && sample.len() == 10, format!("{} of {} labels agree", sample.len() - bad.len(), sample.len()))
        .with(details))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("del-d identity", del_d_identity),
        ("P-Q identity", pq_identity),
        ("exactness of K_a", exactness),
        ("commuting squares", commutativity),
        ("spectra of del-P-Q-d", first_spectra),
        ("spectra of P-del-d-Q on Ker P", second_spectra),
        ("Im d splitting", splittings),
        ("equivariance", equivariance),
        ("simplicity of Im d", simplicity),
        ("constructions and characters", constructions),
        ("Kac sum vs typical formula", kac_consistency),
    ];
    let mut failed = Vec::new();
    for (idx, (title, run)) in criteria.iter().enumerate() {
        let n = idx + 1;
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(v) => {
                println!("{} criterion {n:>2} {title}: {} [{secs:.2}s]", if v.pass { "PASS" } else { "FAIL" }, v.summary);
                for d in &v.details {
                    println!("      {d}");
                }
                if !v.pass {
                    failed.push(n);
                }
            }
            Err(e) => {
                println!("FAIL criterion {n:>2} {title}: error: {e} [{secs:.2}s]");
                failed.push(n);
            }
        }
    }
    println!("acceptance: {} passed, {} failed {failed:?}", criteria.len() - failed.len(), failed.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
