//! The two-dimensional irreducible spaces ℍ² and ℍ⁴ and their complex
//! coordinates.
//!
//! ℍ² is spanned by the orthonormal pair
//! `E₁ = (√2/2)(e₁⊗e₁ − e₂⊗e₂)`, `E₂ = (√2/2)(e₁⊗e₂ + e₂⊗e₁)`, and ℍ⁴ by
//! `𝔼₁`, `𝔼₂` (totally symmetric, traceless, unit Frobenius norm). A tensor
//! `S` is identified with `S·E₁ + i S·E₂`. Under `Q(θ)` the ℍ² coordinate
//! picks up `e^{2iθ}` and the ℍ⁴ coordinate `e^{4iθ}`; `Q̃` conjugates both.
//!
//! [`Dev2`] and [`Harm4`] store these coordinates directly, so the invariants
//! of their types hold exactly and project/embed are exact inverses.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::algebra::{apply_matrix, indices, offset, GroupElement};
use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// `√8 / 8`, the entry magnitude of `𝔼₁` and `𝔼₂`.
const H4_ENTRY: f64 = 0.5 * FRAC_1_SQRT_2;

/// Tolerance factor for membership in span{𝔼₁, 𝔼₂}.
pub const HARM4_TOL: f64 = 1e-10;

/// Symmetric traceless 2×2 tensor, an element of ℍ².
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dev2 {
    coords: Complex64,
}

impl Dev2 {
    pub const ZERO: Self = Self {
        coords: Complex64::new(0.0, 0.0),
    };
    pub const E1: Self = Self {
        coords: Complex64::new(1.0, 0.0),
    };
    pub const E2: Self = Self {
        coords: Complex64::new(0.0, 1.0),
    };

    /// `[[a, b], [b, −a]]`.
    pub fn from_entries(a: f64, b: f64) -> Self {
        Self {
            coords: Complex64::new(a / FRAC_1_SQRT_2, b / FRAC_1_SQRT_2),
        }
    }

    /// Accepts a matrix that is symmetric and traceless within `tol`.
    pub fn from_matrix(m: [[f64; 2]; 2], tol: f64) -> Result<Self> {
        let deviation = (m[0][1] - m[1][0]).abs().max((m[0][0] + m[1][1]).abs());
        if !(deviation <= tol) {
            return Err(Error::NotDeviatoric { deviation });
        }
        Ok(Self::from_entries(
            0.5 * (m[0][0] - m[1][1]),
            0.5 * (m[0][1] + m[1][0]),
        ))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => self.coords.re * FRAC_1_SQRT_2,
            (1, 1) => -self.coords.re * FRAC_1_SQRT_2,
            _ => self.coords.im * FRAC_1_SQRT_2,
        }
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.get(0, 0), self.get(0, 1)], [self.get(1, 0), self.get(1, 1)]]
    }

    /// Full contraction `S_ij T_ij`.
    pub fn dot(&self, other: &Self) -> f64 {
        let (a, b) = (self.matrix(), other.matrix());
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * b[i][j])
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

/// Element of ℍ⁴, a totally symmetric traceless fourth-order 2D tensor.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Harm4 {
    coords: Complex64,
}

fn basis_entry(second: bool, n: usize) -> f64 {
    let twos: usize = indices(n).iter().sum();
    if second {
        match twos {
            1 => H4_ENTRY,
            3 => -H4_ENTRY,
            _ => 0.0,
        }
    } else {
        match twos {
            0 | 4 => H4_ENTRY,
            2 => -H4_ENTRY,
            _ => 0.0,
        }
    }
}

impl Harm4 {
    pub const ZERO: Self = Self {
        coords: Complex64::new(0.0, 0.0),
    };
    pub const E1: Self = Self {
        coords: Complex64::new(1.0, 0.0),
    };
    pub const E2: Self = Self {
        coords: Complex64::new(0.0, 1.0),
    };

    /// Accepts 16 components lying in span{𝔼₁, 𝔼₂}: the residual after
    /// projection must be at most `HARM4_TOL · max(1, ‖T‖)`.
    pub fn from_components(c: &[f64; 16]) -> Result<Self> {
        let h = Self::project_components(c);
        let recon = h.components();
        let residual = c
            .iter()
            .zip(recon.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if residual > HARM4_TOL * norm.max(1.0) {
            return Err(Error::NotHarmonic { residual });
        }
        Ok(h)
    }

    /// Orthogonal projection onto span{𝔼₁, 𝔼₂}, no membership check.
    pub(crate) fn project_components(c: &[f64; 16]) -> Self {
        let (mut re, mut im) = (0.0, 0.0);
        for (n, &v) in c.iter().enumerate() {
            re += v * basis_entry(false, n);
            im += v * basis_entry(true, n);
        }
        Self {
            coords: Complex64::new(re, im),
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = offset(i, j, k, l);
        self.coords.re * basis_entry(false, n) + self.coords.im * basis_entry(true, n)
    }

    pub fn components(&self) -> [f64; 16] {
        std::array::from_fn(|n| {
            let [i, j, k, l] = indices(n);
            self.get(i, j, k, l)
        })
    }

    pub fn dot(&self, other: &Self) -> f64 {
        let (a, b) = (self.components(), other.components());
        a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }
}

pub fn h2_project(s: &Dev2) -> ComplexScalar {
    s.coords
}

pub fn h2_embed(z: ComplexScalar) -> Dev2 {
    Dev2 { coords: z }
}

pub fn h4_project(t: &Harm4) -> ComplexScalar {
    t.coords
}

pub fn h4_embed(z: ComplexScalar) -> Harm4 {
    Harm4 { coords: z }
}

/// Complex coordinates `(z₁, z₂, z₃)` of the deviatoric parts `D¹, D², D`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexRep {
    pub z1: ComplexScalar,
    pub z2: ComplexScalar,
    pub z3: ComplexScalar,
}

impl ComplexRep {
    pub fn new(z1: ComplexScalar, z2: ComplexScalar, z3: ComplexScalar) -> Self {
        Self { z1, z2, z3 }
    }

    /// `|D¹|`
    pub fn h(&self) -> f64 {
        self.z1.norm()
    }
    /// `|D²|`
    pub fn l(&self) -> f64 {
        self.z2.norm()
    }
    /// `|D|`
    pub fn k(&self) -> f64 {
        self.z3.norm()
    }
    /// Angles are in (−π, π].
    pub fn theta1(&self) -> f64 {
        self.z1.arg()
    }
    pub fn theta2(&self) -> f64 {
        self.z2.arg()
    }
    pub fn theta3(&self) -> f64 {
        self.z3.arg()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.z1.conj(), self.z2.conj(), self.z3.conj())
    }
}

/// The group action carried to `ℂ³`: reflection conjugates, then rotation by
/// `θ` multiplies by `(e^{2iθ}, e^{2iθ}, e^{4iθ})`.
pub fn complex_action(g: &GroupElement, r: &ComplexRep) -> ComplexRep {
    let base = if g.reflect() { r.conj() } else { *r };
    let p2 = Complex64::from_polar(1.0, 2.0 * g.angle());
    let p4 = Complex64::from_polar(1.0, 4.0 * g.angle());
    ComplexRep::new(base.z1 * p2, base.z2 * p2, base.z3 * p4)
}

/// `Q S Qᵀ`, computed on components.
pub fn apply_dev2(g: &GroupElement, s: &Dev2) -> Dev2 {
    let q = g.matrix();
    let m = s.matrix();
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            for a in 0..2 {
                for b in 0..2 {
                    *v += q[i][a] * q[j][b] * m[a][b];
                }
            }
        }
    }
    Dev2::from_entries(0.5 * (out[0][0] - out[1][1]), 0.5 * (out[0][1] + out[1][0]))
}

/// Fourth-order action on an ℍ⁴ element, computed on components.
pub fn apply_harm4(g: &GroupElement, t: &Harm4) -> Harm4 {
    Harm4::project_components(&apply_matrix(&g.matrix(), &t.components()))
}
