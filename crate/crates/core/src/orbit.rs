//! Orbit equivalence under SO(2) and O(2).
//!
//! Two tensors are equivalent when an explicit group element carries one
//! onto the other. The basis invariants serve as a necessary-condition
//! filter in front of the alignment search; they are never the final word.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{group_apply, EshelbyTensor, GroupElement};
use crate::decomp::{complex_rep, decompose, Decomposition};
use crate::harmonic::{ComplexRep, ComplexScalar};
use crate::invariants::{invariant_basis, InvariantVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    SO2,
    O2,
}

impl Group {
    fn branches(self) -> &'static [bool] {
        match self {
            Group::SO2 => &[false],
            Group::O2 => &[false, true],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlignmentResult {
    pub found: bool,
    /// The witness. [`align`] sets it only when `found`; [`brute_force_align`]
    /// always reports its minimizer.
    pub element: Option<GroupElement>,
    /// Frobenius distance `‖g * M1 − M2‖` for `element`.
    pub residual: f64,
}

impl AlignmentResult {
    pub fn witness(&self) -> Option<GroupElement> {
        if self.found {
            self.element
        } else {
            None
        }
    }
}

fn residual(g: &GroupElement, m1: &EshelbyTensor, m2: &EshelbyTensor) -> f64 {
    group_apply(g, m1).distance(m2)
}

/// Candidate rotation angles carrying `src` onto `dst` slot by slot, in the
/// order z₃ (weight 4), z₁, z₂ (weight 2). Empty when every slot vanishes.
fn candidate_angles(src: &ComplexRep, dst: &ComplexRep) -> Vec<f64> {
    let slots: [(ComplexScalar, ComplexScalar, u32); 3] = [
        (src.z3, dst.z3, 4),
        (src.z1, dst.z1, 2),
        (src.z2, dst.z2, 2),
    ];
    let mut out = Vec::new();
    for (s, t, weight) in slots {
        if s.norm() == 0.0 || t.norm() == 0.0 {
            continue;
        }
        let base = (t / s).arg();
        for n in 0..weight {
            out.push((base + TAU * n as f64) / weight as f64);
        }
    }
    out
}

fn scalars_match(a: &Decomposition, b: &Decomposition, reflect: bool, tol: f64) -> bool {
    let v = if reflect { -a.v } else { a.v };
    (a.lambda - b.lambda).abs() <= tol && (a.mu - b.mu).abs() <= tol && (v - b.v).abs() <= tol
}

/// Decides whether some `g` in `group` has `‖g * m1 − m2‖ ≤ tol`.
///
/// Rotation angles are recovered in closed form from the complex
/// coordinates (`z ↦ z e^{2iθ}` or `e^{4iθ}`) and then verified on the full
/// tensor. The reflected branch conjugates `m1`'s coordinates first and
/// expects `v` to change sign. Angles are only meaningful modulo π, since
/// `Q(π)` acts trivially.
pub fn align(m1: &EshelbyTensor, m2: &EshelbyTensor, group: Group, tol: f64) -> AlignmentResult {
    assert!(tol > 0.0, "alignment tolerance must be positive");
    let (d1, d2) = (decompose(m1), decompose(m2));
    let (r1, r2) = (complex_rep(&d1), complex_rep(&d2));

    let mut best: Option<(GroupElement, f64)> = None;
    for &reflect in group.branches() {
        let src = if reflect { r1.conj() } else { r1 };
        let mut angles = candidate_angles(&src, &r2);
        if angles.is_empty() {
            angles.push(0.0);
        }
        let eligible = scalars_match(&d1, &d2, reflect, tol);
        let mut branch_best: Option<(GroupElement, f64)> = None;
        for theta in angles {
            let g = GroupElement::new(theta, reflect);
            let r = residual(&g, m1, m2);
            if branch_best.is_none_or(|(_, b)| r < b) {
                branch_best = Some((g, r));
            }
        }
        let (g, r) = branch_best.expect("at least one candidate");
        if eligible && r <= tol {
            return AlignmentResult {
                found: true,
                element: Some(g),
                residual: r,
            };
        }
        if best.is_none_or(|(_, b)| r < b) {
            best = Some((g, r));
        }
    }
    let (_, r) = best.expect("at least one branch");
    AlignmentResult {
        found: false,
        element: None,
        residual: r,
    }
}

/// Tolerances for [`equivalence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub atol: f64,
    pub rtol: f64,
    /// Frobenius residual accepted by the alignment step.
    pub align_tol: f64,
    /// Compare `J_i / ‖M‖^{deg_i}` instead of raw invariants.
    pub normalize_degree: bool,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            atol: 1e-10,
            rtol: 1e-8,
            align_tol: 1e-8,
            normalize_degree: false,
        }
    }
}

fn close(a: f64, b: f64, tol: &Tolerances) -> bool {
    (a - b).abs() <= tol.atol + tol.rtol * a.abs().max(b.abs())
}

/// Necessary condition for equivalence. `J₁₀` is compared exactly under
/// SO(2) and up to sign under O(2).
pub fn invariants_compatible(a: &InvariantVector, b: &InvariantVector, group: Group, tol: &Tolerances) -> bool {
    let (a, b) = (a.to_array(), b.to_array());
    let first_nine = (0..9).all(|n| close(a[n], b[n], tol));
    let v = match group {
        Group::SO2 => close(a[9], b[9], tol),
        Group::O2 => close(a[9].abs(), b[9].abs(), tol),
    };
    first_nine && v
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub group: Group,
    pub filter_passed: bool,
    /// Present when the filter passed.
    pub alignment: Option<AlignmentResult>,
}

pub fn equivalence(m1: &EshelbyTensor, m2: &EshelbyTensor, group: Group, tol: &Tolerances) -> EquivalenceReport {
    let mut i1 = invariant_basis(&decompose(m1));
    let mut i2 = invariant_basis(&decompose(m2));
    if tol.normalize_degree {
        i1 = i1.normalized_by(m1.norm());
        i2 = i2.normalized_by(m2.norm());
    }
    if !invariants_compatible(&i1, &i2, group, tol) {
        return EquivalenceReport {
            equivalent: false,
            group,
            filter_passed: false,
            alignment: None,
        };
    }
    let alignment = align(m1, m2, group, tol.align_tol);
    EquivalenceReport {
        equivalent: alignment.found,
        group,
        filter_passed: true,
        alignment: Some(alignment),
    }
}

pub fn equivalent(m1: &EshelbyTensor, m2: &EshelbyTensor, group: Group, tol: &Tolerances) -> bool {
    equivalence(m1, m2, group, tol).equivalent
}

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-15 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Grid search over `Q(2πt/grid_size)` (and their reflected versions under
/// O(2)) followed by golden-section refinement around the best grid point
/// of each branch. Ties go to the smaller angle, then to the rotation.
pub fn brute_force_align(
    m1: &EshelbyTensor,
    m2: &EshelbyTensor,
    group: Group,
    grid_size: usize,
    tol: f64,
) -> AlignmentResult {
    assert!(grid_size >= 8, "grid must have at least 8 points");
    let step = TAU / grid_size as f64;
    let mut best: Option<(GroupElement, f64)> = None;
    for &reflect in group.branches() {
        let f = |theta: f64| residual(&GroupElement::new(theta, reflect), m1, m2);
        let (t_best, r_grid) = (0..grid_size)
            .map(|t| (t, f(step * t as f64)))
            .fold((0, f64::INFINITY), |acc, (t, r)| if r < acc.1 { (t, r) } else { acc });
        let center = step * t_best as f64;
        let (theta, r_ref) = golden_section(f, center - step, center + step);
        let (theta, r) = if r_ref < r_grid { (theta, r_ref) } else { (center, r_grid) };
        if best.is_none_or(|(_, b)| r < b) {
            best = Some((GroupElement::new(theta, reflect), r));
        }
    }
    let (g, r) = best.expect("at least one branch");
    AlignmentResult {
        found: r <= tol,
        element: Some(g),
        residual: r,
    }
}

/// Behaviour of an invariant under `Q̃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReflectionClass {
    Invariant,
    SignFlip,
    Neither,
}

/// Classification threshold for the audit.
pub const AUDIT_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditEntry {
    /// 1-based invariant index.
    pub index: usize,
    /// `max |J(Q(θ)M) − J(M)| / (1 + |J(M)|)` over the sampled angles.
    pub max_rotation_deviation: f64,
    pub rotation_invariant: bool,
    pub reflection: ReflectionClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub samples: usize,
    pub seed: u64,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn entry(&self, index: usize) -> &AuditEntry {
        &self.entries[index - 1]
    }
}

/// Measures how each of `J₁..J₁₀` transforms under sampled rotations and
/// under `Q̃`.
pub fn audit_action(m: &EshelbyTensor, samples: usize, seed: u64) -> AuditReport {
    assert!(samples >= 1, "audit needs at least one sample");
    let base = invariant_basis(&decompose(m)).to_array();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dev = [0.0f64; 10];
    for _ in 0..samples {
        let g = GroupElement::rotation(rng.random_range(0.0..TAU));
        let rotated = invariant_basis(&decompose(&group_apply(&g, m))).to_array();
        for n in 0..10 {
            dev[n] = dev[n].max((rotated[n] - base[n]).abs() / (1.0 + base[n].abs()));
        }
    }
    let reflected = invariant_basis(&decompose(&group_apply(&GroupElement::REFLECTION, m))).to_array();
    let entries = (0..10)
        .map(|n| {
            let scale = 1.0 + base[n].abs();
            let reflection = if (reflected[n] - base[n]).abs() <= AUDIT_THRESHOLD * scale {
                ReflectionClass::Invariant
            } else if (reflected[n] + base[n]).abs() <= AUDIT_THRESHOLD * scale {
                ReflectionClass::SignFlip
            } else {
                ReflectionClass::Neither
            };
            AuditEntry {
                index: n + 1,
                max_rotation_deviation: dev[n],
                rotation_invariant: dev[n] <= AUDIT_THRESHOLD,
                reflection,
            }
        })
        .collect();
    AuditReport { samples, seed, entries }
}

/// Angle difference modulo the stabilizer `{0, π}`, in `[0, π/2]`.
pub fn angle_distance_mod_pi(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}
