//! Parameter windows of the acceptance criteria.
//!
//! The acceptance target lives in this package so that it runs after every
//! other test binary of the workspace.

use dkoszul_core::glrep::ConstructionName;
use dkoszul_core::koszul::{DiffKind, Spot};
use dkoszul_core::superspace::SuperSpace;

pub fn identity_spaces() -> [SuperSpace; 2] {
    [SuperSpace::standard(), SuperSpace::new(2, 1).expect("valid")]
}

/// `K(k,l)` with `k, l ≤ 4`.
pub fn del_d_window() -> Vec<Spot> {
    (0..=4).flat_map(|k| (0..=4).map(move |l| Spot::K { k, l })).collect()
}

/// `L(p,r)` with `p + r ≤ 6`.
pub fn pq_window() -> Vec<Spot> {
    (0..=6).flat_map(|p| (0..=6 - p).map(move |r| Spot::L { p, r })).collect()
}

/// `(a, k)` for every term `K(k, k-a)` with `k, l ≤ 5`.
pub fn exactness_window() -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    for k in 0..=5usize {
        for l in 0..=5usize {
            out.push((k as i64 - l as i64, k));
        }
    }
    out
}

/// `(i, k, l)` for the commuting squares.
pub fn square_window() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=3 {
        for k in 0..=3 {
            for l in 0..=3 {
                out.push((i, k, l));
            }
        }
    }
    out
}

pub fn first_spectral_window() -> Vec<(usize, i64)> {
    (0..=3).flat_map(|i| (0..=3).map(move |a| (i, a))).collect()
}

pub fn second_spectral_window() -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    for i in 0..=2 {
        for k in 0..=2 {
            for a in 0..=2 {
                out.push((i, k, a));
            }
        }
    }
    out
}

/// `(k, l)` with `k, l ≤ 4` and `k - l ≠ 2`.
pub fn splitting_window() -> Vec<(usize, usize)> {
    (0..=4usize).flat_map(|k| (0..=4usize).map(move |l| (k, l))).filter(|&(k, l)| k as i64 - l as i64 != 2).collect()
}

/// Components `(kind, subscript)` whose equivariance is checked.
pub fn equivariance_grid() -> Vec<(DiffKind, Spot)> {
    let mut out = Vec::new();
    for k in 0..=3 {
        for l in 0..=3 {
            out.push((DiffKind::D, Spot::K { k, l }));
            out.push((DiffKind::Del, Spot::K { k, l }));
        }
    }
    for p in 1..=5 {
        for r in 0..=5 - p {
            out.push((DiffKind::P, Spot::L { p, r }));
            out.push((DiffKind::Q, Spot::L { p, r }));
        }
    }
    for i in 0..=2 {
        for k in 0..=2 {
            for l in 0..=2 {
                let t = Spot::Triple { i, k, l };
                out.push((DiffKind::D, t));
                out.push((DiffKind::Del, t));
                if i >= 1 {
                    out.push((DiffKind::P, t));
                    out.push((DiffKind::Q, t));
                }
            }
        }
    }
    out
}

/// `(k, l)` such that `Im d_{k+1,l+1}` is tested for simplicity.
pub fn simplicity_window() -> Vec<(usize, usize)> {
    (1..=4usize).flat_map(|k| (1..=4usize).map(move |l| (k, l))).filter(|&(k, l)| k as i64 - l as i64 != 2).collect()
}

pub const SIMPLICITY_DIM_BOUND: usize = 3000;

/// Every construction with parameters in `{1, 2}`.
pub fn construction_window() -> Vec<ConstructionName> {
    let mut out = Vec::new();
    for a in 1..=2 {
        for b in 1..=2 {
            out.push(ConstructionName::Ysummand { n: a, p: b });
        }
    }
    for m in 1..=2 {
        out.push(ConstructionName::Z1 { m });
    }
    for m in 1..=2 {
        for p in 1..=2 {
            out.push(ConstructionName::Mmp { m, p });
        }
    }
    for m in 1..=2 {
        for t in 1..=2 {
            for p in 1..=2 {
                out.push(ConstructionName::Mfinal { m, t, p });
            }
        }
    }
    out
}

/// Ten typical dominant integrable labels with entries in `[-3, 3]`,
/// spread evenly over the lexicographic enumeration.
pub fn typical_sample() -> Vec<dkoszul_core::characters::WeightLabel> {
    use dkoszul_core::characters::WeightLabel;
    let mut all = Vec::new();
    for l1 in -3..=3 {
        for l2 in -3..=l1 {
            for l3 in -3..=l2 {
                for l4 in -3..=3 {
                    let w = WeightLabel::new(l1, l2, l3, l4);
                    if w.dominant() && w.integrable() && w.is_typical() {
                        all.push(w);
                    }
                }
            }
        }
    }
    let n = all.len();
    (0..10).map(|j| all[j * (n - 1) / 9]).collect()
}
