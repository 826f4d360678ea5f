//! The ten-invariant basis `J₁..J₁₀`, the derived invariants `J₁₁..J₁₆`,
//! their syzygies and the irreducibility witnesses.
//!
//! With `z₁, z₂, z₃` the complex coordinates of `D¹, D², D`:
//!
//! | invariant | complex form      | contraction                  | degree |
//! |-----------|-------------------|------------------------------|--------|
//! | `J₁`      | `|z₁|²`           | `D¹_ij D¹_ij`                | 2      |
//! | `J₂`      | `|z₂|²`           | `D²_ij D²_ij`                | 2      |
//! | `J₃`      | `|z₃|²`           | `D_ijkl D_ijkl`              | 2      |
//! | `J₄`      | `Re(z₁² z̄₃)`      | `√2 · D¹_ij D_ijkl D¹_kl`    | 3      |
//! | `J₅`      | `Re(z₂² z̄₃)`      | `√2 · D²_ij D_ijkl D²_kl`    | 3      |
//! | `J₆`      | `Re(z₁ z̄₂)`       | `D¹_ij D²_ij`                | 2      |
//! | `J₇`      | `Re(z₁ z₂ z̄₃)`    | `√2 · D¹_ij D_ijkl D²_kl`    | 3      |
//! | `J₈..J₁₀` | `λ, μ, v`         |                              | 1      |
//!
//! The factor `√2` on the cubic contractions is forced by the normalization
//! of `E₁, E₂, 𝔼₁, 𝔼₂`: the bare contraction `D¹:D:D¹` equals
//! `(√2/2) Re(z₁² z̄₃)`. With the factor, the contraction and complex forms
//! agree and the trigonometric forms `J₄ = H²K cos(2θ₁ − θ₃)` etc. hold.
//!
//! `J₁₀ = v` is rotation invariant but changes sign under reflections.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::harmonic::{h2_embed, h4_embed, ComplexRep, ComplexScalar, Dev2, Harm4};

/// Polynomial degree of each `J_i` in the components of `M`.
pub const DEGREES: [u32; 10] = [2, 2, 2, 3, 3, 2, 3, 1, 1, 1];

/// Scale applied to the cubic contractions `J₄, J₅, J₇`.
pub const CUBIC_SCALE: f64 = SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct InvariantVector {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub j4: f64,
    pub j5: f64,
    pub j6: f64,
    pub j7: f64,
    pub j8: f64,
    pub j9: f64,
    pub j10: f64,
}

impl InvariantVector {
    pub fn from_array(a: [f64; 10]) -> Self {
        Self {
            j1: a[0],
            j2: a[1],
            j3: a[2],
            j4: a[3],
            j5: a[4],
            j6: a[5],
            j7: a[6],
            j8: a[7],
            j9: a[8],
            j10: a[9],
        }
    }

    pub fn to_array(&self) -> [f64; 10] {
        [
            self.j1, self.j2, self.j3, self.j4, self.j5, self.j6, self.j7, self.j8, self.j9,
            self.j10,
        ]
    }

    /// `J_i` for `i` in `1..=10`.
    pub fn get(&self, i: usize) -> f64 {
        self.to_array()[i - 1]
    }

    pub fn degree(i: usize) -> u32 {
        DEGREES[i - 1]
    }

    /// `J_i / scale^{deg_i}`; returns `self` unchanged when `scale` is zero.
    pub fn normalized_by(&self, scale: f64) -> Self {
        if scale == 0.0 {
            return *self;
        }
        let mut a = self.to_array();
        for (v, d) in a.iter_mut().zip(DEGREES) {
            *v /= scale.powi(d as i32);
        }
        Self::from_array(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DerivedInvariants {
    pub j11: f64,
    pub j12: f64,
    pub j13: f64,
    pub j14: f64,
    pub j15: f64,
    pub j16: f64,
}

impl DerivedInvariants {
    pub fn to_array(&self) -> [f64; 6] {
        [self.j11, self.j12, self.j13, self.j14, self.j15, self.j16]
    }
}

/// `A_ij D_ijkl B_kl`
pub fn sandwich(a: &Dev2, d: &Harm4, b: &Dev2) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    s += a.get(i, j) * d.get(i, j, k, l) * b.get(k, l);
                }
            }
        }
    }
    s
}

/// `A_ij D_ijkl D_klpq B_pq`
pub fn double_sandwich(a: &Dev2, d: &Harm4, b: &Dev2) -> f64 {
    // (D:B)_kl first, then A:D:(D:B)
    let mut db = [[0.0; 2]; 2];
    for (k, row) in db.iter_mut().enumerate() {
        for (l, v) in row.iter_mut().enumerate() {
            for p in 0..2 {
                for q in 0..2 {
                    *v += d.get(k, l, p, q) * b.get(p, q);
                }
            }
        }
    }
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    s += a.get(i, j) * d.get(i, j, k, l) * db[k][l];
                }
            }
        }
    }
    s
}

/// The ten basis invariants by real index contraction.
pub fn invariant_basis(dec: &Decomposition) -> InvariantVector {
    InvariantVector {
        j1: dec.d1.dot(&dec.d1),
        j2: dec.d2.dot(&dec.d2),
        j3: dec.d.dot(&dec.d),
        j4: CUBIC_SCALE * sandwich(&dec.d1, &dec.d, &dec.d1),
        j5: CUBIC_SCALE * sandwich(&dec.d2, &dec.d, &dec.d2),
        j6: dec.d1.dot(&dec.d2),
        j7: CUBIC_SCALE * sandwich(&dec.d1, &dec.d, &dec.d2),
        j8: dec.lambda,
        j9: dec.mu,
        j10: dec.v,
    }
}

/// The ten basis invariants from the complex coordinates.
pub fn invariant_basis_complex(rep: &ComplexRep, lambda: f64, mu: f64, v: f64) -> InvariantVector {
    let (z1, z2, z3) = (rep.z1, rep.z2, rep.z3);
    InvariantVector {
        j1: z1.norm_sqr(),
        j2: z2.norm_sqr(),
        j3: z3.norm_sqr(),
        j4: (z1 * z1 * z3.conj()).re,
        j5: (z2 * z2 * z3.conj()).re,
        j6: (z1 * z2.conj()).re,
        j7: (z1 * z2 * z3.conj()).re,
        j8: lambda,
        j9: mu,
        j10: v,
    }
}

pub fn derived_invariants(iv: &InvariantVector) -> DerivedInvariants {
    let InvariantVector {
        j1,
        j2,
        j3,
        j4,
        j5,
        j6,
        j7,
        ..
    } = *iv;
    DerivedInvariants {
        j11: j6 * j6 * j3 - j7 * j7,
        j12: j1 * j7 - j4 * j6,
        j13: j1 * j3 * j6 - j4 * j7,
        j14: j5 * j6 - j2 * j7,
        j15: j2 * j3 * j6 - j5 * j7,
        j16: 0.5 * (j1 * j5 - j2 * j4),
    }
}

/// Polar coordinates of the deviatoric sector: `H = |D¹|`, `L = |D²|`,
/// `K = |D|` and the angles `θ₁, θ₂, θ₃` of `D¹, D², D` against `E₁, E₁, 𝔼₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarConfig {
    pub h: f64,
    pub l: f64,
    pub k: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

impl PolarConfig {
    pub fn new(h: f64, l: f64, k: f64, theta1: f64, theta2: f64, theta3: f64) -> Result<Self> {
        for m in [h, l, k] {
            if !(m >= 0.0) || !m.is_finite() {
                return Err(Error::NegativeMagnitude(m));
            }
        }
        Ok(Self {
            h,
            l,
            k,
            theta1,
            theta2,
            theta3,
        })
    }

    pub fn complex_rep(&self) -> ComplexRep {
        ComplexRep::new(
            ComplexScalar::from_polar(self.h, self.theta1),
            ComplexScalar::from_polar(self.l, self.theta2),
            ComplexScalar::from_polar(self.k, self.theta3),
        )
    }

    /// Decomposition with these deviatoric parts and `λ = μ = v = 0`.
    pub fn to_decomposition(&self) -> Decomposition {
        let r = self.complex_rep();
        Decomposition {
            d1: h2_embed(r.z1),
            d2: h2_embed(r.z2),
            d: h4_embed(r.z3),
            ..Default::default()
        }
    }

    /// `J₁..J₇` in trigonometric form.
    pub fn trig_invariants(&self) -> [f64; 7] {
        let &Self {
            h,
            l,
            k,
            theta1: t1,
            theta2: t2,
            theta3: t3,
        } = self;
        [
            h * h,
            l * l,
            k * k,
            h * h * k * (2.0 * t1 - t3).cos(),
            l * l * k * (2.0 * t2 - t3).cos(),
            h * l * (t1 - t2).cos(),
            h * k * l * (t1 + t2 - t3).cos(),
        ]
    }

    /// `J₁₁..J₁₆` as sine products.
    pub fn trig_derived(&self) -> DerivedInvariants {
        let &Self {
            h,
            l,
            k,
            theta1: t1,
            theta2: t2,
            theta3: t3,
        } = self;
        let b1 = (2.0 * t1 - t3).sin();
        let b2 = (2.0 * t2 - t3).sin();
        let b12 = (t1 - t2).sin();
        let b4 = (t1 + t2 - t3).sin();
        DerivedInvariants {
            j11: h * h * l * l * k * k * b1 * b2,
            j12: h.powi(3) * l * k * b1 * b12,
            j13: h.powi(3) * l * k * k * b1 * b4,
            j14: h * l.powi(3) * k * b2 * b12,
            j15: h * l.powi(3) * k * k * b2 * b4,
            j16: h * h * l * l * k * b12 * b4,
        }
    }
}

/// Polynomial form of `J₁₁..J₁₆` (from contracted `J₁..J₇`) minus the
/// sine-product form.
pub fn syzygy_residuals(cfg: &PolarConfig) -> [f64; 6] {
    let iv = invariant_basis(&cfg.to_decomposition());
    let poly = derived_invariants(&iv).to_array();
    let trig = cfg.trig_derived().to_array();
    std::array::from_fn(|n| poly[n] - trig[n])
}

/// Coefficient in the three degree-four contraction identities below. A
/// fourth-order harmonic `D` acts on ℍ² so that `D∘D = ½|D|² Id`.
pub const DOUBLE_CONTRACTION_COEFF: f64 = 0.5;

/// Residuals of
/// `D¹:D:D:D¹ = ½ J₁J₃`, `D²:D:D:D² = ½ J₂J₃`, `D¹:D:D:D² = ½ J₃J₆`.
pub fn example1_residuals(m: &crate::algebra::EshelbyTensor) -> [f64; 3] {
    let dec = crate::decomp::decompose(m);
    let iv = invariant_basis(&dec);
    let c = DOUBLE_CONTRACTION_COEFF;
    [
        double_sandwich(&dec.d1, &dec.d, &dec.d1) - c * iv.j1 * iv.j3,
        double_sandwich(&dec.d2, &dec.d, &dec.d2) - c * iv.j2 * iv.j3,
        double_sandwich(&dec.d1, &dec.d, &dec.d2) - c * iv.j3 * iv.j6,
    ]
}

/// A pair of configurations on which `J_s` changes while the other six
/// deviatoric invariants stay fixed (`s` in `1..=7`).
pub fn irreducibility_witness(s: u32) -> Result<(PolarConfig, PolarConfig)> {
    let p = |h, l, k, t1, t2, t3| PolarConfig {
        h,
        l,
        k,
        theta1: t1,
        theta2: t2,
        theta3: t3,
    };
    let pair = match s {
        1 => (p(1.0, 0.0, 0.0, 0.0, 0.0, 0.0), p(2.0, 0.0, 0.0, 0.0, 0.0, 0.0)),
        2 => (p(0.0, 1.0, 0.0, 0.0, 0.0, 0.0), p(0.0, 2.0, 0.0, 0.0, 0.0, 0.0)),
        3 => (p(0.0, 0.0, 1.0, 0.0, 0.0, 0.0), p(0.0, 0.0, 2.0, 0.0, 0.0, 0.0)),
        // 2θ₁ − θ₃ = 0 vs π/2
        4 => (p(1.0, 0.0, 1.0, 0.0, 0.0, 0.0), p(1.0, 0.0, 1.0, FRAC_PI_4, 0.0, 0.0)),
        // 2θ₂ − θ₃ = 0 vs π/2
        5 => (p(0.0, 1.0, 1.0, 0.0, 0.0, 0.0), p(0.0, 1.0, 1.0, 0.0, FRAC_PI_4, 0.0)),
        // θ₁ − θ₂ = 0 vs π/2
        6 => (p(1.0, 1.0, 0.0, 0.0, 0.0, 0.0), p(1.0, 1.0, 0.0, FRAC_PI_2, 0.0, 0.0)),
        7 => (
            p(1.0, 1.0, 1.0, FRAC_PI_2, 0.0, 3.0 * FRAC_PI_4),
            p(1.0, 1.0, 1.0, 1.5 * PI, 0.0, 11.0 * FRAC_PI_4),
        ),
        _ => return Err(Error::WitnessCaseOutOfRange(s)),
    };
    Ok(pair)
}
