use serde::Serialize;

/// A tested statement: stable id plus the formula it asserts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub anchor: &'static str,
}

macro_rules! claims {
    ($($name:ident = $id:literal : $anchor:literal;)*) => {
        $(pub const $name: Claim = Claim { id: $id, anchor: $anchor };)*
        pub const ALL: &[Claim] = &[$($name),*];
    };
}

claims! {
    DELD_IDENTITY = "DELD-IDENTITY": "lk·d∂ + (l+1)(k+1)·∂d = (l−k−n+m)·id on Λ_k⊗S*_l";
    PQ_IDENTITY = "PQ-IDENTITY": "r(p+1)·PQ + p(r+1)·QP = (p+r)·id on S_p⊗Λ_r";
    K_EXACTNESS = "K-EXACTNESS": "K_a is exact except at Λ_m⊗S*_n in K_{m−n}, where the homology is one-dimensional";
    L_EXACTNESS = "L-EXACTNESS": "L_a is exact except for a = 0";
    SQUARES_COMMUTE = "SQUARES-COMMUTE": "P∘d = d∘P and ∂∘Q = Q∘∂ on S_i⊗Λ_k⊗S*_l";
    EQUIVARIANCE = "EQUIVARIANCE": "d, ∂, P, Q commute with every E_ij of gl(m|n)";
    DELPQD_SPECTRUM = "DELPQD-SPECTRUM": "spectrum of ∂PQd on S_i⊗S*_{a+i} is {(a+i+3−j)j/((i+1)(a+i+1)) : 1 ≤ j ≤ i+1}, diagonalizable";
    PDELDQ_ISO = "PDELDQ-ISO": "P∂dQ on Ker P⊗S* is diagonalizable and invertible";
    IMD_SPLITTING = "IMD-SPLITTING": "Λ_k⊗S*_l = Im d_{k−1,l−1} ⊕ Im ∂_{k,l} with Im ∂_{k,l} ≅ Im d_{k,l}, for k−l ≠ m−n";
    QD_SPLITTING = "QD-SPLITTING": "S_{i+1}⊗S*_{a+i+1} = Qd(S_i⊗S*_{a+i}) ⊕ Ker(∂P)";
    IMD_SIMPLE = "IMD-SIMPLE": "Im d_{k+1,l+1} is simple for k,l ≥ 1, k−l ≠ 2, with the closed Im d character";
    H31_LINE = "H31-LINE": "the homology of K_{m−n} is the Berezinian line of weight (1,1,1|1)";
    Y_CHAR = "Y-CHAR": "Y(n,p) has highest weight (n,0,1−p|1) and the closed Y character";
    Z1_CHAR = "Z1-CHAR": "Z_1(m) ≅ V(2,1,1−m|1) with the closed Z_1 character";
    MMP_CHAR = "MMP-CHAR": "M^{m,p} ≅ V(m,m,−p|0) with the closed M^{m,p} character";
    MFINAL_CHAR = "MFINAL-CHAR": "M(m,t,p) ≅ V(m+t,m,1−p|1) with the closed M(m,t,p) character";
    KAC_TYPICAL = "KAC-TYPICAL": "Σ_w sign(w) e^{w(λ+ρ)} over the even Weyl group equals the typical character formula";
    HOOK_CHAR = "HOOK-CHAR": "ch I_{λ1,λ2,λ3,1^{λ4}} = ch V(λ1,λ2,λ3|−λ4)";
    JT_SCHUR = "JT-SCHUR": "signed character of I_λ = det(h_{λ_i−i+j}) with Σ h_r t^r = (1−yt)∏(1−x_i t)^{−1}";
}

pub fn by_id(id: &str) -> Option<Claim> {
    ALL.iter().copied().find(|c| c.id == id)
}
