//! Orthogonal irreducible decomposition of a 2D Eshelby tensor:
//!
//! ```text
//! M_ijkl = λ δ_ij δ_kl + 2μ δ_i(k δ_j l) + v (δ_i(k ε_j l) + δ_j(k ε_i l))
//!        + δ_ij D¹_kl + δ_kl D²_ij + D_ijkl
//! ```
//!
//! where `(k … l)` is the average over the swap `k ↔ l`, `λ, μ, v` are
//! scalars, `D¹, D² ∈ ℍ²` and `D ∈ ℍ⁴`. The map is a linear bijection
//! between the 9-dimensional space of minor-symmetric tensors and
//! `ℝ³ × ℍ² × ℍ² × ℍ⁴`.
//!
//! `v` is a pseudo-scalar: it changes sign under reflections.

use crate::algebra::{kron, levi, EshelbyTensor};
use crate::harmonic::{h2_project, h4_project, ComplexRep, Dev2, Harm4};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Decomposition {
    pub lambda: f64,
    pub mu: f64,
    pub v: f64,
    pub d1: Dev2,
    pub d2: Dev2,
    pub d: Harm4,
}

/// Components of the first five parts (everything except `D`).
fn lower_parts(lambda: f64, mu: f64, v: f64, d1: &Dev2, d2: &Dev2) -> EshelbyTensor {
    EshelbyTensor::from_fn(|i, j, k, l| {
        let iso = lambda * kron(i, j) * kron(k, l)
            + mu * (kron(i, k) * kron(j, l) + kron(i, l) * kron(j, k));
        let skew = 0.5
            * v
            * (kron(i, k) * levi(j, l)
                + kron(i, l) * levi(j, k)
                + kron(j, k) * levi(i, l)
                + kron(j, l) * levi(i, k));
        iso + skew + kron(i, j) * d1.get(k, l) + kron(k, l) * d2.get(i, j)
    })
}

pub fn decompose(m: &EshelbyTensor) -> Decomposition {
    let mut iikk = 0.0;
    let mut ikik = 0.0;
    let mut skew = 0.0;
    for i in 0..2 {
        for k in 0..2 {
            iikk += m.get(i, i, k, k);
            ikik += m.get(i, k, i, k);
            for j in 0..2 {
                skew += levi(i, j) * m.get(i, k, j, k);
            }
        }
    }
    let lambda = 0.375 * iikk - 0.25 * ikik;
    let mu = 0.25 * ikik - 0.125 * iikk;
    let v = 0.25 * skew;

    // D¹_ij = ½ M_kkij − ¼ M_kkll δ_ij; only the deviatoric entries survive
    let tr_first = |i: usize, j: usize| m.get(0, 0, i, j) + m.get(1, 1, i, j);
    let tr_second = |i: usize, j: usize| m.get(i, j, 0, 0) + m.get(i, j, 1, 1);
    let d1 = Dev2::from_entries(
        0.25 * (tr_first(0, 0) - tr_first(1, 1)),
        0.5 * tr_first(0, 1),
    );
    let d2 = Dev2::from_entries(
        0.25 * (tr_second(0, 0) - tr_second(1, 1)),
        0.5 * tr_second(0, 1),
    );

    let rest = *m - lower_parts(lambda, mu, v, &d1, &d2);
    let d = Harm4::project_components(rest.components());

    Decomposition {
        lambda,
        mu,
        v,
        d1,
        d2,
        d,
    }
}

pub fn reconstruct(dec: &Decomposition) -> EshelbyTensor {
    let lower = lower_parts(dec.lambda, dec.mu, dec.v, &dec.d1, &dec.d2);
    lower + EshelbyTensor::from_fn(|i, j, k, l| dec.d.get(i, j, k, l))
}

pub fn complex_rep(dec: &Decomposition) -> ComplexRep {
    ComplexRep::new(h2_project(&dec.d1), h2_project(&dec.d2), h4_project(&dec.d))
}
