//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eshelby2d::algebra::{group_apply, random_eshelby, random_group_element, EshelbyTensor, GroupElement};
use eshelby2d::decomp::{decompose, reconstruct};
use eshelby2d::diophantine::{
    elasticity_irreducible, enumerate_irreducible, reduce_solution, DiophantineSolution, IRREDUCIBLE,
};
use eshelby2d::elasticity::{elasticity_decompose, elasticity_invariants, random_elasticity, to_elasticity};
use eshelby2d::harmonic::{Dev2, Harm4};
use eshelby2d::invariants::{
    example1_residuals, invariant_basis, irreducibility_witness, syzygy_residuals, PolarConfig,
    DOUBLE_CONTRACTION_COEFF,
};
use eshelby2d::orbit::{align, audit_action, brute_force_align, equivalence, Group, ReflectionClass, Tolerances};

type Outcome = Result<String, String>;

fn invariants_of(m: &EshelbyTensor) -> [f64; 10] {
    invariant_basis(&decompose(m)).to_array()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn round_trip() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..1000 {
        let m = random_eshelby(seed);
        let err = reconstruct(&decompose(&m)).max_abs_diff(&m) / m.max_abs().max(1.0);
        worst = worst.max(err);
        ensure(err <= 1e-13, || format!("seed {seed}: relative error {err:e}"))?;
    }
    Ok(format!("1000 tensors, worst relative error {worst:.1e}"))
}

fn rotation_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for n in 0..100 {
        let m = random_eshelby(10_000 + n);
        let g = GroupElement::rotation(rng.random_range(0.0..TAU));
        let (a, b) = (invariants_of(&m), invariants_of(&group_apply(&g, &m)));
        for t in 0..10 {
            let d = (a[t] - b[t]).abs() / (1.0 + a[t].abs());
            worst = worst.max(d);
            ensure(d <= 1e-10, || format!("sample {n}: J{} moved by {d:e}", t + 1))?;
        }
    }
    Ok(format!("100 samples, worst scaled deviation {worst:.1e}"))
}

fn reflection_audit() -> Outcome {
    for n in 0..100 {
        let m = random_eshelby(20_000 + n);
        let (a, b) = (invariants_of(&m), invariants_of(&group_apply(&GroupElement::REFLECTION, &m)));
        for t in 0..9 {
            let d = (a[t] - b[t]).abs();
            ensure(d <= 1e-10 * (1.0 + a[t].abs()), || format!("sample {n}: J{} changed by {d:e}", t + 1))?;
        }
        let flip = (b[9] + a[9]).abs();
        ensure(flip <= 1e-10, || format!("sample {n}: J10 sign flip residual {flip:e}"))?;
        let report = audit_action(&m, 8, n);
        for t in 1..=9 {
            ensure(report.entry(t).reflection == ReflectionClass::Invariant, || {
                format!("sample {n}: audit classifies J{t} as {:?}", report.entry(t).reflection)
            })?;
        }
        ensure(report.entry(10).reflection == ReflectionClass::SignFlip, || {
            format!("sample {n}: audit classifies J10 as {:?}", report.entry(10).reflection)
        })?;
    }
    Ok("100 samples: J1..J9 invariant, J10 classified sign-flip".into())
}

fn diophantine() -> Outcome {
    let got: BTreeSet<[u32; 6]> = enumerate_irreducible(6).iter().map(|w| w.as_array()).collect();
    let want: BTreeSet<[u32; 6]> = IRREDUCIBLE.into_iter().collect();
    ensure(got == want && enumerate_irreducible(6).len() == 11, || {
        format!("enumeration returned {got:?}")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    while checked < 500 {
        let head: [u32; 5] = std::array::from_fn(|_| rng.random_range(0..=16));
        let [d, e, f, g, j] = head.map(i64::from);
        let twice_k = d - e + f - g + 2 * j;
        if twice_k < 0 || twice_k % 2 != 0 {
            continue;
        }
        let w = [head[0], head[1], head[2], head[3], head[4], (twice_k / 2) as u32];
        if w.iter().sum::<u32>() > 50 {
            continue;
        }
        let sol = DiophantineSolution::new(w).map_err(|e| e.to_string())?;
        let parts = reduce_solution(&sol).map_err(|e| format!("{w:?}: {e}"))?;
        let mut total = [0u32; 6];
        for p in &parts {
            ensure(p.basis_index().is_some(), || format!("{w:?}: part {p:?} not irreducible"))?;
            for n in 0..6 {
                total[n] += p.as_array()[n];
            }
        }
        ensure(total == w, || format!("{w:?}: parts sum to {total:?}"))?;
        checked += 1;
    }
    Ok("exactly w1..w11 at bound 6; 500 random reductions exact".into())
}

fn syzygies() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for n in 0..1000 {
        let mag = |r: &mut ChaCha8Rng| r.random_range(0.0..2.0);
        let ang = |r: &mut ChaCha8Rng| r.random_range(0.0..TAU);
        let (h, l, k) = (mag(&mut rng), mag(&mut rng), mag(&mut rng));
        let cfg = PolarConfig::new(h, l, k, ang(&mut rng), ang(&mut rng), ang(&mut rng)).map_err(|e| e.to_string())?;
        let scale = 1.0 + h * h * l * l * k * k;
        for (t, r) in syzygy_residuals(&cfg).iter().enumerate() {
            worst = worst.max(r.abs() / scale);
            ensure(r.abs() <= 1e-10 * scale, || format!("config {n}: J{} residual {r:e}", t + 11))?;
        }
    }
    Ok(format!("1000 configurations, worst scaled residual {worst:.1e}"))
}

/// `A_ij D_ijkl D_klmn B_mn` by explicit summation.
fn brute_double_contraction(a: &Dev2, d: &Harm4, b: &Dev2) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    for p in 0..2 {
                        for q in 0..2 {
                            s += a.get(i, j) * d.get(i, j, k, l) * d.get(k, l, p, q) * b.get(p, q);
                        }
                    }
                }
            }
        }
    }
    s
}

fn example1() -> Outcome {
    // pin the coefficient from independent summation before checking
    let dec = decompose(&random_eshelby(77));
    let iv = invariant_basis(&dec);
    let pinned = [
        brute_double_contraction(&dec.d1, &dec.d, &dec.d1) / (iv.j1 * iv.j3),
        brute_double_contraction(&dec.d2, &dec.d, &dec.d2) / (iv.j2 * iv.j3),
        brute_double_contraction(&dec.d1, &dec.d, &dec.d2) / (iv.j3 * iv.j6),
    ];
    for c in pinned {
        ensure((c - DOUBLE_CONTRACTION_COEFF).abs() < 1e-12, || format!("brute-force coefficient {c}"))?;
    }
    let mut worst: f64 = 0.0;
    for seed in 0..1000 {
        let m = random_eshelby(30_000 + seed);
        let scale = 1.0 + m.norm().powi(4);
        for (t, r) in example1_residuals(&m).iter().enumerate() {
            worst = worst.max(r.abs() / scale);
            ensure(r.abs() <= 1e-10 * scale, || format!("seed {seed}: identity {} residual {r:e}", t + 1))?;
        }
    }
    Ok(format!("coefficients pinned at 1/2; 1000 tensors, worst scaled residual {worst:.1e}"))
}

fn witnesses() -> Outcome {
    for s in 1..=7u32 {
        let (a, b) = irreducibility_witness(s).map_err(|e| e.to_string())?;
        let ia = invariant_basis(&a.to_decomposition()).to_array();
        let ib = invariant_basis(&b.to_decomposition()).to_array();
        for t in 0..10 {
            let d = (ia[t] - ib[t]).abs();
            if t + 1 == s as usize {
                ensure(d >= 0.5, || format!("case {s}: J{s} differs by only {d}"))?;
            } else {
                ensure(d <= 1e-12, || format!("case {s}: J{} differs by {d:e}", t + 1))?;
            }
        }
    }
    let (a, b) = irreducibility_witness(7).map_err(|e| e.to_string())?;
    let r = std::f64::consts::SQRT_2 / 2.0;
    let (h, l, k) = (1.0, 1.0, 1.0);
    for (cfg, sign) in [(a, 1.0), (b, -1.0)] {
        let iv = invariant_basis(&cfg.to_decomposition());
        let want = [(iv.j4, r * h * h * k), (iv.j5, -r * l * l * k), (iv.j6, 0.0), (iv.j7, sign * r * h * k * l)];
        for (n, (g, w)) in want.iter().enumerate() {
            ensure((g - w).abs() <= 1e-12, || format!("case 7: J{} = {g}, expected {w}", n + 4))?;
        }
    }
    Ok("cases 1..7 separate J_s; case 7 values reproduced".into())
}

fn orbit_separation() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for n in 0..200 {
        let m1 = random_eshelby(40_000 + n);
        let g = random_group_element(&mut rng);
        let m2 = group_apply(&g, &m1);
        let report = equivalence(&m1, &m2, Group::O2, &tol);
        let residual = report.alignment.map_or(f64::INFINITY, |a| a.residual);
        worst = worst.max(residual);
        ensure(report.equivalent && residual <= 1e-8, || {
            format!("constructed pair {n}: equivalent={} residual {residual:e}", report.equivalent)
        })?;
        let fast = align(&m1, &m2, Group::O2, tol.align_tol).found;
        let slow = brute_force_align(&m1, &m2, Group::O2, 720, tol.align_tol).found;
        ensure(fast && slow, || format!("constructed pair {n}: align {fast}, brute force {slow}"))?;
    }
    for n in 0..200 {
        let (m1, m2) = (random_eshelby(50_000 + 2 * n), random_eshelby(50_001 + 2 * n));
        let report = equivalence(&m1, &m2, Group::O2, &tol);
        ensure(!report.equivalent, || format!("independent pair {n} reported equivalent"))?;
        let (a, b) = (invariants_of(&m1), invariants_of(&m2));
        let gap = (0..9)
            .map(|t| (a[t] - b[t]).abs())
            .fold((a[9].abs() - b[9].abs()).abs(), f64::max);
        ensure(gap > 1e-6, || format!("independent pair {n}: largest invariant gap {gap:e}"))?;
        let fast = align(&m1, &m2, Group::O2, tol.align_tol).found;
        let slow = brute_force_align(&m1, &m2, Group::O2, 720, tol.align_tol).found;
        ensure(!fast && !slow, || format!("independent pair {n}: align {fast}, brute force {slow}"))?;
    }
    Ok(format!("400 pairs separated; worst witness residual {worst:.1e}; align and brute force agree"))
}

fn elasticity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 0..500 {
        let c = random_elasticity(60_000 + n);
        let dec = decompose(c.as_eshelby());
        let gap = (dec.d1.matrix()[0][0] - dec.d2.matrix()[0][0])
            .abs()
            .max((dec.d1.matrix()[0][1] - dec.d2.matrix()[0][1]).abs());
        ensure(dec.v.abs() <= 1e-12 && gap <= 1e-12, || format!("sample {n}: v = {:e}, |D1 - D2| = {gap:e}", dec.v))?;
        elasticity_decompose(&c).map_err(|e| format!("sample {n}: {e}"))?;
        let g = random_group_element(&mut rng);
        let moved = to_elasticity(&group_apply(&g, c.as_eshelby()).to_raw(), 1e-12).map_err(|e| e.to_string())?;
        let a = elasticity_invariants(&c).map_err(|e| e.to_string())?.to_array();
        let b = elasticity_invariants(&moved).map_err(|e| e.to_string())?.to_array();
        for t in 0..5 {
            let d = (a[t] - b[t]).abs();
            ensure(d <= 1e-10, || format!("sample {n}: invariant {t} moved by {d:e}"))?;
        }
    }
    let got: BTreeSet<[u32; 4]> = elasticity_irreducible().iter().map(|w| w.0).collect();
    let want = BTreeSet::from([[1, 1, 0, 0], [0, 0, 1, 1], [2, 0, 0, 1], [0, 2, 1, 0]]);
    ensure(got == want && elasticity_irreducible().len() == 4, || format!("enumeration returned {got:?}"))?;
    Ok("500 tensors: forced parts vanish, five invariants O(2)-invariant; four solutions".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("round trip", round_trip),
        ("rotation invariance", rotation_invariance),
        ("reflection audit", reflection_audit),
        ("irreducible exponent solutions", diophantine),
        ("syzygies", syzygies),
        ("degree-four contraction identities", example1),
        ("irreducibility witnesses", witnesses),
        ("orbit separation", orbit_separation),
        ("elasticity specialization", elasticity),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", n + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {} ({name}): {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
