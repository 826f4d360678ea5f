//! Irreducible decomposition and isotropic invariants of two-dimensional
//! fourth-order Eshelby tensors.
//!
//! A 2D Eshelby tensor `M` (minor symmetries only, 9 components) splits into
//! three scalars `λ, μ, v`, two symmetric traceless second-order tensors
//! `D¹, D²` and one fourth-order harmonic tensor `D` ([`decomp`]). Each
//! deviatoric part is a complex number under the O(2) action ([`harmonic`]),
//! and the ten invariants `J₁..J₁₀` ([`invariants`]) are built from those.
//! [`orbit`] decides orbit equivalence by explicit alignment, [`diophantine`]
//! enumerates the exponent solutions behind the basis and [`elasticity`]
//! specializes everything to major-symmetric tensors.

pub mod algebra;
pub mod cli;
pub mod decomp;
pub mod diophantine;
pub mod elasticity;
pub mod error;
pub mod harmonic;
pub mod invariants;
pub mod orbit;

pub use algebra::{group_apply, random_eshelby, validate_minor_symmetry, EshelbyTensor, GroupElement, Tensor4Raw};
pub use decomp::{complex_rep, decompose, reconstruct, Decomposition};
pub use error::{Error, Result};
pub use invariants::{invariant_basis, InvariantVector};
pub use orbit::Group;
