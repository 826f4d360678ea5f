//! 2D elasticity tensors: Eshelby tensors that also carry the major
//! symmetry `C_ijkl = C_klij`.
//!
//! The decomposition is the Eshelby one with two parts forced: `v = 0` and
//! `D¹ = D²`. What remains is two scalars (realized as `λ, μ`), one
//! `E² := D¹ ∈ ℍ²` and one `E⁴ := D ∈ ℍ⁴`, six degrees of freedom in all.
//! The invariants are `λ, μ`, `I₁ = E²:E²`, `I₂ = E⁴::E⁴` and
//! `I₃ = √2 · E²:E⁴:E² = Re(z₁² z̄₂)` (the same normalization as `J₄`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{indices, offset, EshelbyTensor, Tensor4Raw};
use crate::decomp::{decompose, Decomposition};
use crate::error::{Error, Result};
use crate::invariants::{sandwich, CUBIC_SCALE};

/// Tolerance (relative to `max(1, ‖C‖)`) for the forced parts `v` and
/// `D¹ − D²`.
pub const FORCED_PART_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticityTensor(EshelbyTensor);

/// The 8 index permutations generated by `i↔j`, `k↔l` and `(ij)↔(kl)`.
fn images(i: usize, j: usize, k: usize, l: usize) -> [[usize; 4]; 8] {
    [
        [i, j, k, l],
        [j, i, k, l],
        [i, j, l, k],
        [j, i, l, k],
        [k, l, i, j],
        [l, k, i, j],
        [k, l, j, i],
        [l, k, j, i],
    ]
}

/// Independent components as 0-based `(i, j, k, l)`.
const INDEPENDENT: [[usize; 4]; 6] = [
    [0, 0, 0, 0],
    [0, 0, 1, 1],
    [0, 0, 0, 1],
    [1, 1, 1, 1],
    [1, 1, 0, 1],
    [0, 1, 0, 1],
];

impl ElasticityTensor {
    pub fn as_eshelby(&self) -> &EshelbyTensor {
        &self.0
    }

    pub fn components(&self) -> &[f64; 16] {
        self.0.components()
    }

    pub fn from_independent(values: [f64; 6]) -> Result<Self> {
        let mut c = [0.0; 16];
        for (&[i, j, k, l], v) in INDEPENDENT.iter().zip(values) {
            for [a, b, p, q] in images(i, j, k, l) {
                c[offset(a, b, p, q)] = v;
            }
        }
        to_elasticity(&Tensor4Raw::new(c)?, 0.0)
    }
}

/// Validates minor and major symmetry within `tol` and averages over the
/// full 8-element index symmetry group.
pub fn to_elasticity(raw: &Tensor4Raw, tol: f64) -> Result<ElasticityTensor> {
    assert!(tol >= 0.0, "tolerance must be nonnegative");
    let c = raw.components();
    let mut max_deviation: f64 = 0.0;
    let mut sym = [0.0; 16];
    for (n, out) in sym.iter_mut().enumerate() {
        let [i, j, k, l] = indices(n);
        let mut acc = 0.0;
        for [a, b, p, q] in images(i, j, k, l) {
            let x = c[offset(a, b, p, q)];
            max_deviation = max_deviation.max((x - c[n]).abs());
            acc += x;
        }
        *out = acc / 8.0;
    }
    if max_deviation > tol {
        return Err(Error::SymmetryViolation { max_deviation, tol });
    }
    Ok(ElasticityTensor(EshelbyTensor::from_fn(|i, j, k, l| sym[offset(i, j, k, l)])))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElasticityInvariants {
    pub lambda: f64,
    pub mu: f64,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
}

impl ElasticityInvariants {
    pub fn to_array(&self) -> [f64; 5] {
        [self.lambda, self.mu, self.i1, self.i2, self.i3]
    }
}

/// Decomposition of `c`, checked for `v = 0` and `D¹ = D²`.
pub fn elasticity_decompose(c: &ElasticityTensor) -> Result<Decomposition> {
    let dec = decompose(&c.0);
    let dev_gap = {
        let (a, b) = (dec.d1.matrix(), dec.d2.matrix());
        (a[0][0] - b[0][0]).abs().max((a[0][1] - b[0][1]).abs())
    };
    let limit = FORCED_PART_TOL * c.0.norm().max(1.0);
    if dec.v.abs() > limit || dev_gap > limit {
        return Err(Error::InternalSymmetryBreach { v: dec.v, dev_gap });
    }
    Ok(dec)
}

pub fn elasticity_invariants(c: &ElasticityTensor) -> Result<ElasticityInvariants> {
    let dec = elasticity_decompose(c)?;
    let e2 = dec.d1;
    let e4 = dec.d;
    Ok(ElasticityInvariants {
        lambda: dec.lambda,
        mu: dec.mu,
        i1: e2.dot(&e2),
        i2: e4.dot(&e4),
        i3: CUBIC_SCALE * sandwich(&e2, &e4, &e2),
    })
}

/// Deterministic random elasticity tensor with six i.i.d. uniform `[−1, 1]`
/// independent components.
pub fn random_elasticity(seed: u64) -> ElasticityTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: [f64; 6] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
    ElasticityTensor::from_independent(values).expect("finite by construction")
}
