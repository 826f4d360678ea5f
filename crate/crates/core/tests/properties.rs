use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;

use eshelby2d::algebra::{group_apply, EshelbyTensor, GroupElement};
use eshelby2d::decomp::{complex_rep, decompose, reconstruct};
use eshelby2d::diophantine::{reduce_solution, DiophantineSolution, IRREDUCIBLE};
use eshelby2d::elasticity::{elasticity_invariants, ElasticityTensor};
use eshelby2d::harmonic::{
    apply_dev2, apply_harm4, complex_action, h2_embed, h2_project, h4_embed, h4_project, Dev2, Harm4,
};
use eshelby2d::invariants::{invariant_basis, invariant_basis_complex};

fn eshelby() -> impl Strategy<Value = EshelbyTensor> {
    prop::array::uniform9(-1.0f64..1.0).prop_map(|v| EshelbyTensor::from_independent(v).unwrap())
}

fn element() -> impl Strategy<Value = GroupElement> {
    (0.0..TAU, any::<bool>()).prop_map(|(a, r)| GroupElement::new(a, r))
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn close_arrays(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn action_respects_composition(g in element(), h in element(), m in eshelby()) {
        let lhs = group_apply(&g.compose(&h), &m);
        let rhs = group_apply(&g, &group_apply(&h, &m));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-13);
        let back = group_apply(&g.inverse(), &group_apply(&g, &m));
        prop_assert!(back.max_abs_diff(&m) < 1e-13);
    }

    #[test]
    fn action_preserves_norm(g in element(), m in eshelby()) {
        prop_assert!((group_apply(&g, &m).norm() - m.norm()).abs() < 1e-13);
    }

    #[test]
    fn h2_projection_is_equivariant(g in element(), z in complex()) {
        let s = h2_embed(z);
        let direct = h2_project(&apply_dev2(&g, &s));
        let via = complex_action(&g, &eshelby2d::harmonic::ComplexRep::new(z, z, Complex64::new(0.0, 0.0))).z1;
        prop_assert!((direct - via).norm() < 1e-14);
    }

    #[test]
    fn h4_projection_is_equivariant(g in element(), z in complex()) {
        let t = h4_embed(z);
        let direct = h4_project(&apply_harm4(&g, &t));
        let via = complex_action(&g, &eshelby2d::harmonic::ComplexRep::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), z)).z3;
        prop_assert!((direct - via).norm() < 1e-14);
    }

    #[test]
    fn h4_round_trip(z in complex()) {
        prop_assert!((h4_project(&h4_embed(z)) - z).norm() <= 1e-15);
        let t = h4_embed(z);
        let again = Harm4::from_components(&t.components()).unwrap();
        prop_assert!((h4_project(&again) - z).norm() <= 1e-15);
    }

    #[test]
    fn h2_round_trip(z in complex()) {
        prop_assert!((h2_project(&h2_embed(z)) - z).norm() <= 1e-15);
        let s: Dev2 = h2_embed(z);
        prop_assert!((s.norm() - z.norm()).abs() <= 1e-15);
    }

    #[test]
    fn decomposition_round_trip(m in eshelby()) {
        let back = reconstruct(&decompose(&m));
        prop_assert!(back.max_abs_diff(&m) <= 1e-13 * m.max_abs().max(1.0));
    }

    #[test]
    fn decomposition_is_equivariant(g in element(), m in eshelby()) {
        let moved = complex_rep(&decompose(&group_apply(&g, &m)));
        let expect = complex_action(&g, &complex_rep(&decompose(&m)));
        prop_assert!((moved.z1 - expect.z1).norm() < 1e-13);
        prop_assert!((moved.z2 - expect.z2).norm() < 1e-13);
        prop_assert!((moved.z3 - expect.z3).norm() < 1e-13);
    }

    #[test]
    fn contraction_and_complex_paths_agree(m in eshelby()) {
        let dec = decompose(&m);
        let a = invariant_basis(&dec).to_array();
        let b = invariant_basis_complex(&complex_rep(&dec), dec.lambda, dec.mu, dec.v).to_array();
        prop_assert!(close_arrays(&a, &b, 1e-12), "{a:?} vs {b:?}");
    }

    #[test]
    fn invariants_are_rotation_invariant(theta in 0.0..TAU, m in eshelby()) {
        let a = invariant_basis(&decompose(&m)).to_array();
        let b = invariant_basis(&decompose(&group_apply(&GroupElement::rotation(theta), &m))).to_array();
        prop_assert!(close_arrays(&a, &b, 1e-10));
    }

    #[test]
    fn half_turn_stabilizes(theta in 0.0..TAU, reflect in any::<bool>(), m in eshelby()) {
        let a = group_apply(&GroupElement::new(theta, reflect), &m);
        let b = group_apply(&GroupElement::new(theta + PI, reflect), &m);
        prop_assert!(a.max_abs_diff(&b) < 1e-13);
    }

    #[test]
    fn elasticity_identities(v in prop::array::uniform6(-1.0f64..1.0)) {
        let c = ElasticityTensor::from_independent(v).unwrap();
        let e = elasticity_invariants(&c).unwrap();
        let j = invariant_basis(&decompose(c.as_eshelby()));
        let tol = 1e-12;
        for x in [j.j1, j.j2, j.j6] {
            prop_assert!((e.i1 - x).abs() < tol);
        }
        prop_assert!((e.i2 - j.j3).abs() < tol);
        for x in [j.j4, j.j5, j.j7] {
            prop_assert!((e.i3 - x).abs() < tol);
        }
        prop_assert!(j.j10.abs() < tol);
    }
}

/// Feasible exponent vectors: `d, e, f, g` free (parity fixed through `g`),
/// then `j − k` forced and `min(j, k)` free.
fn feasible() -> impl Strategy<Value = [u32; 6]> {
    (prop::array::uniform4(0u32..=9), 0u32..=3).prop_map(|([d, e, f, mut g], m)| {
        if (d + e + f + g) % 2 == 1 {
            g += 1;
        }
        let t = (d as i64 - e as i64 + f as i64 - g as i64) / 2;
        let (j, k) = if t >= 0 { (m, m + t as u32) } else { (m + (-t) as u32, m) };
        [d, e, f, g, j, k]
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn reduction_is_exact(w in feasible()) {
        prop_assert!(w.iter().sum::<u32>() <= 50);
        let parts = reduce_solution(&DiophantineSolution::new(w).unwrap()).unwrap();
        let mut total = [0u32; 6];
        for p in &parts {
            prop_assert!(IRREDUCIBLE.contains(&p.as_array()));
            for n in 0..6 {
                total[n] += p.as_array()[n];
            }
        }
        prop_assert_eq!(total, w);
    }
}

#[test]
fn contraction_and_complex_paths_agree_on_a_thousand_seeds() {
    for seed in 0..1000 {
        let dec = decompose(&eshelby2d::algebra::random_eshelby(seed));
        let a = invariant_basis(&dec).to_array();
        let b = invariant_basis_complex(&complex_rep(&dec), dec.lambda, dec.mu, dec.v).to_array();
        assert!(close_arrays(&a, &b, 1e-12), "seed {seed}");
    }
}
