//! Fixed-size 2D fourth-order tensors and the orthogonal group O(2).
//!
//! Components are stored flat. The paper-convention component `M_{ijkl}`
//! with `i, j, k, l ∈ {1, 2}` lives at offset
//! `8(i−1) + 4(j−1) + 2(k−1) + (l−1)`. Accessors in this crate take the
//! 0-based indices `(i−1, j−1, k−1, l−1)`.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Flat offset of the 0-based index tuple `(i, j, k, l)`.
#[inline]
pub const fn offset(i: usize, j: usize, k: usize, l: usize) -> usize {
    8 * i + 4 * j + 2 * k + l
}

/// Inverse of [`offset`].
#[inline]
pub const fn indices(n: usize) -> [usize; 4] {
    [(n >> 3) & 1, (n >> 2) & 1, (n >> 1) & 1, n & 1]
}

/// 2D Kronecker delta.
#[inline]
pub fn kron(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// 2D Levi-Civita symbol, `ε_12 = 1`.
#[inline]
pub fn levi(i: usize, j: usize) -> f64 {
    match (i, j) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// Unconstrained fourth-order tensor as read from input data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor4Raw([f64; 16]);

impl Tensor4Raw {
    pub fn new(components: [f64; 16]) -> Result<Self> {
        if let Some(index) = components.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(components))
    }

    pub fn from_fn(f: impl Fn(usize, usize, usize, usize) -> f64) -> Result<Self> {
        Self::new(std::array::from_fn(|n| {
            let [i, j, k, l] = indices(n);
            f(i, j, k, l)
        }))
    }

    pub fn components(&self) -> &[f64; 16] {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.0[offset(i, j, k, l)]
    }

    /// Largest violation of `T_ijkl = T_jikl` and `T_ijkl = T_ijlk`.
    pub fn minor_asymmetry(&self) -> f64 {
        (0..16)
            .map(|n| {
                let [i, j, k, l] = indices(n);
                let a = (self.0[n] - self.get(j, i, k, l)).abs();
                let b = (self.0[n] - self.get(i, j, l, k)).abs();
                a.max(b)
            })
            .fold(0.0, f64::max)
    }
}

/// Average over the four minor-symmetry images.
pub(crate) fn minor_symmetrize(c: &[f64; 16]) -> [f64; 16] {
    std::array::from_fn(|n| {
        let [i, j, k, l] = indices(n);
        0.25 * (c[offset(i, j, k, l)]
            + c[offset(j, i, k, l)]
            + c[offset(i, j, l, k)]
            + c[offset(j, i, l, k)])
    })
}

/// A 2D fourth-order tensor with both minor symmetries,
/// `M_ijkl = M_jikl = M_ijlk`. Nine independent components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EshelbyTensor([f64; 16]);

/// The nine independent components of an [`EshelbyTensor`], as 0-based
/// `(i, j, k, l)` with `i ≤ j` and `k ≤ l`.
pub const INDEPENDENT: [[usize; 4]; 9] = [
    [0, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 1],
    [0, 1, 0, 0],
    [0, 1, 0, 1],
    [0, 1, 1, 1],
    [1, 1, 0, 0],
    [1, 1, 0, 1],
    [1, 1, 1, 1],
];

impl EshelbyTensor {
    pub const ZERO: Self = Self([0.0; 16]);

    /// Build from components already known to be minor-symmetric; the
    /// minor images are averaged so the stored tensor is exactly symmetric.
    pub(crate) fn from_components_symmetrized(c: [f64; 16]) -> Self {
        Self(minor_symmetrize(&c))
    }

    /// Build from the nine independent components in [`INDEPENDENT`] order.
    pub fn from_independent(values: [f64; 9]) -> Result<Self> {
        if let Some(index) = values.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut c = [0.0; 16];
        for (&[i, j, k, l], v) in INDEPENDENT.iter().zip(values) {
            c[offset(i, j, k, l)] = v;
            c[offset(j, i, k, l)] = v;
            c[offset(i, j, l, k)] = v;
            c[offset(j, i, l, k)] = v;
        }
        Ok(Self(c))
    }

    pub fn independent(&self) -> [f64; 9] {
        INDEPENDENT.map(|[i, j, k, l]| self.get(i, j, k, l))
    }

    pub fn from_fn(f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        Self::from_components_symmetrized(std::array::from_fn(|n| {
            let [i, j, k, l] = indices(n);
            f(i, j, k, l)
        }))
    }

    pub fn components(&self) -> &[f64; 16] {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.0[offset(i, j, k, l)]
    }

    pub fn to_raw(self) -> Tensor4Raw {
        Tensor4Raw(self.0)
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Frobenius distance.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Add for EshelbyTensor {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|n| self.0[n] + rhs.0[n]))
    }
}

impl Sub for EshelbyTensor {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|n| self.0[n] - rhs.0[n]))
    }
}

impl Mul<EshelbyTensor> for f64 {
    type Output = EshelbyTensor;
    fn mul(self, rhs: EshelbyTensor) -> EshelbyTensor {
        EshelbyTensor(rhs.0.map(|c| self * c))
    }
}

/// Check both minor symmetries within `tol` and return the canonical
/// symmetrization. Asymmetric data beyond `tol` is rejected, not repaired.
pub fn validate_minor_symmetry(raw: &Tensor4Raw, tol: f64) -> Result<EshelbyTensor> {
    assert!(tol >= 0.0, "tolerance must be nonnegative");
    let max_deviation = raw.minor_asymmetry();
    if max_deviation > tol {
        return Err(Error::SymmetryViolation { max_deviation, tol });
    }
    Ok(EshelbyTensor::from_components_symmetrized(raw.0))
}

/// An element of O(2) in normal form: `Q(angle)` when `reflect` is false,
/// `Q(angle)·Q̃` when true, with `Q̃ = diag(1, −1)` and `angle ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupElement {
    angle: f64,
    reflect: bool,
}

impl GroupElement {
    pub const IDENTITY: Self = Self {
        angle: 0.0,
        reflect: false,
    };

    /// The reflection `Q̃` fixing `e₁` and negating `e₂`.
    pub const REFLECTION: Self = Self {
        angle: 0.0,
        reflect: true,
    };

    pub fn new(angle: f64, reflect: bool) -> Self {
        Self {
            angle: reduce_angle(angle),
            reflect,
        }
    }

    pub fn rotation(angle: f64) -> Self {
        Self::new(angle, false)
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn reflect(&self) -> bool {
        self.reflect
    }

    pub fn determinant(&self) -> f64 {
        if self.reflect {
            -1.0
        } else {
            1.0
        }
    }

    /// Matrix `Q` such that `(Q x)_i = Q_ij x_j`.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.angle.sin_cos();
        if self.reflect {
            [[c, s], [s, -c]]
        } else {
            [[c, -s], [s, c]]
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        // Q̃ Q(b) = Q(−b) Q̃
        if self.reflect {
            Self::new(self.angle - other.angle, !other.reflect)
        } else {
            Self::new(self.angle + other.angle, other.reflect)
        }
    }

    pub fn inverse(&self) -> Self {
        if self.reflect {
            *self
        } else {
            Self::new(-self.angle, false)
        }
    }
}

fn reduce_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `(g * T)_ijkl = Q_ia Q_jb Q_kc Q_ld T_abcd`.
pub(crate) fn apply_matrix(q: &[[f64; 2]; 2], t: &[f64; 16]) -> [f64; 16] {
    // contract one slot at a time
    let mut cur = *t;
    for slot in 0..4 {
        let mut next = [0.0; 16];
        for n in 0..16 {
            let idx = indices(n);
            let mut acc = 0.0;
            for a in 0..2 {
                let mut src = idx;
                src[slot] = a;
                acc += q[idx[slot]][a] * cur[offset(src[0], src[1], src[2], src[3])];
            }
            next[n] = acc;
        }
        cur = next;
    }
    cur
}

/// The O(2) action on fourth-order tensors.
pub fn group_apply(g: &GroupElement, m: &EshelbyTensor) -> EshelbyTensor {
    EshelbyTensor::from_components_symmetrized(apply_matrix(&g.matrix(), &m.0))
}

/// Deterministic random Eshelby tensor: the nine independent components are
/// i.i.d. uniform on `[−1, 1]`.
pub fn random_eshelby(seed: u64) -> EshelbyTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: [f64; 9] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
    EshelbyTensor::from_independent(values).expect("finite by construction")
}

/// Deterministic random group element, uniform angle, fair coin reflection.
pub fn random_group_element(rng: &mut impl Rng) -> GroupElement {
    GroupElement::new(rng.random_range(0.0..TAU), rng.random_bool(0.5))
}
