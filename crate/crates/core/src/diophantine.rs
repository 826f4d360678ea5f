//! Nonnegative integer solutions of the exponent equations behind the
//! invariant basis.
//!
//! A monomial `z₁^d z̄₁^e z₂^f z̄₂^g z₃^j z̄₃^k` is rotation invariant iff
//! `(d − e) + (f − g) + 2(j − k) = 0`. Every nonnegative solution is a sum of
//! the eleven irreducible solutions in [`IRREDUCIBLE`]; irreducibility here is
//! checked by exhaustive search over dominated solutions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of `(d − e) + (f − g) + 2(j − k) = 0`.
pub const ESHELBY_COEFFS: [i64; 6] = [1, -1, 1, -1, 2, -2];
/// Coefficients of `c − d + 2(e − f) = 0`.
pub const ELASTICITY_COEFFS: [i64; 4] = [1, -1, 2, -2];

/// `w₁..w₁₁`, in order.
pub const IRREDUCIBLE: [[u32; 6]; 11] = [
    [1, 1, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 1, 1],
    [2, 0, 0, 0, 0, 1],
    [0, 0, 2, 0, 0, 1],
    [1, 0, 0, 1, 0, 0],
    [1, 0, 1, 0, 0, 1],
    [0, 1, 1, 0, 0, 0],
    [0, 1, 0, 1, 1, 0],
    [0, 2, 0, 0, 1, 0],
    [0, 0, 0, 2, 1, 0],
];

fn satisfies(coeffs: &[i64], w: &[u32]) -> bool {
    coeffs.iter().zip(w).map(|(c, &x)| c * x as i64).sum::<i64>() == 0
}

/// Exponents `(d, e, f, g, j, k)` of `z₁, z̄₁, z₂, z̄₂, z₃, z̄₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u32; 6]", into = "[u32; 6]")]
pub struct DiophantineSolution([u32; 6]);

impl DiophantineSolution {
    pub fn new(w: [u32; 6]) -> Result<Self> {
        if satisfies(&ESHELBY_COEFFS, &w) {
            Ok(Self(w))
        } else {
            Err(Error::InfeasibleSolution(w))
        }
    }

    /// `w_index` for `index` in `1..=11`.
    pub fn basis(index: usize) -> Self {
        Self(IRREDUCIBLE[index - 1])
    }

    /// Position of `self` in `w₁..w₁₁`, 1-based.
    pub fn basis_index(&self) -> Option<usize> {
        IRREDUCIBLE.iter().position(|w| *w == self.0).map(|p| p + 1)
    }

    pub fn as_array(&self) -> [u32; 6] {
        self.0
    }

    /// Component sum `d + e + f + g + j + k`.
    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The exponents of the complex-conjugate monomial.
    pub fn conjugate(&self) -> Self {
        let [d, e, f, g, j, k] = self.0;
        Self([e, d, g, f, k, j])
    }

    fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = [0; 6];
        for n in 0..6 {
            out[n] = self.0[n].checked_sub(other.0[n])?;
        }
        Some(Self(out))
    }
}

impl TryFrom<[u32; 6]> for DiophantineSolution {
    type Error = Error;
    fn try_from(w: [u32; 6]) -> Result<Self> {
        Self::new(w)
    }
}

impl From<DiophantineSolution> for [u32; 6] {
    fn from(w: DiophantineSolution) -> Self {
        w.0
    }
}

/// Exponents `(c, d, e, f)` of `z₁, z̄₁, z₂, z̄₂` for the elasticity tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElasticitySolution(pub [u32; 4]);

/// Calls `visit` on every nonnegative `n`-tuple with component sum exactly `s`.
fn for_each_with_sum(n: usize, s: u32, visit: &mut impl FnMut(&[u32])) {
    fn go(buf: &mut Vec<u32>, n: usize, left: u32, visit: &mut impl FnMut(&[u32])) {
        if buf.len() + 1 == n {
            buf.push(left);
            visit(buf);
            buf.pop();
            return;
        }
        for x in (0..=left).rev() {
            buf.push(x);
            go(buf, n, left - x, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(n);
    go(&mut buf, n, s, visit);
}

/// True if some nontrivial solution `u ≤ w` with `u ≠ w` exists; then
/// `w − u` is a nontrivial solution as well.
fn is_decomposable(coeffs: &[i64], w: &[u32]) -> bool {
    let n = w.len();
    let mut u = vec![0u32; n];
    // odometer over the box 0 ≤ u ≤ w
    loop {
        let mut pos = 0;
        while pos < n {
            if u[pos] < w[pos] {
                u[pos] += 1;
                break;
            }
            u[pos] = 0;
            pos += 1;
        }
        if pos == n {
            return false;
        }
        if u.as_slice() != w && satisfies(coeffs, &u) {
            return true;
        }
    }
}

/// All irreducible nonnegative solutions with component sum at most `bound`,
/// ordered by component sum and then lexicographically descending.
pub fn irreducible_solutions(coeffs: &[i64], bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for s in 1..=bound {
        for_each_with_sum(coeffs.len(), s, &mut |w| {
            if satisfies(coeffs, w) && !is_decomposable(coeffs, w) {
                out.push(w.to_vec());
            }
        });
    }
    out
}

pub fn enumerate_irreducible(bound: u32) -> Vec<DiophantineSolution> {
    irreducible_solutions(&ESHELBY_COEFFS, bound)
        .into_iter()
        .map(|w| DiophantineSolution(w.try_into().expect("six components")))
        .collect()
}

/// Irreducible solutions of `c − d + 2(e − f) = 0`, searched to bound 6.
pub fn elasticity_irreducible() -> Vec<ElasticitySolution> {
    irreducible_solutions(&ELASTICITY_COEFFS, 6)
        .into_iter()
        .map(|w| ElasticitySolution(w.try_into().expect("four components")))
        .collect()
}

/// Writes `w` as a sum of `w₁..w₁₁`. Parts are returned in the order they
/// were split off.
pub fn reduce_solution(w: &DiophantineSolution) -> Result<Vec<DiophantineSolution>> {
    let w = DiophantineSolution::new(w.0)?;
    let [.., j, k] = w.0;
    if j < k {
        let parts = reduce_upper(w.conjugate());
        return Ok(parts.into_iter().map(|p| p.conjugate()).collect());
    }
    Ok(reduce_upper(w))
}

/// Reduction for `j ≥ k`; this stays true for every remainder.
fn reduce_upper(mut w: DiophantineSolution) -> Vec<DiophantineSolution> {
    let b = DiophantineSolution::basis;
    let mut parts = Vec::new();
    while w.sum() > 0 {
        let [d, e, _, _, j, k] = w.0;
        let part = if j == k {
            if d == e {
                // then f == g
                if j > 0 {
                    b(3)
                } else if d > 0 {
                    b(1)
                } else {
                    b(2)
                }
            } else if d > e {
                // d − e = g − f > 0
                b(6)
            } else {
                b(8)
            }
        } else {
            // j > k forces e + g ≥ 2; first subtractable of w₉, w₁₀, w₁₁
            [b(9), b(10), b(11)]
                .into_iter()
                .find(|p| w.checked_sub(p).is_some())
                .expect("e + g >= 2 when j > k")
        };
        w = w.checked_sub(&part).expect("part is dominated by remainder");
        debug_assert!(satisfies(&ESHELBY_COEFFS, &w.0));
        parts.push(part);
    }
    parts
}
