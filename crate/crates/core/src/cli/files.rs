//! JSON file formats: tensor files in, reports out.
//!
//! Floats are written in scientific notation with 17 significant digits so
//! that every `f64` survives a write/read cycle bit for bit, and output for
//! identical inputs is byte-identical.

use std::io;

use serde::ser::Serialize;
use serde::Deserialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::algebra::{validate_minor_symmetry, EshelbyTensor, GroupElement, Tensor4Raw};
use crate::decomp::Decomposition;
use crate::elasticity::{to_elasticity, ElasticityTensor};
use crate::error::Error;
use crate::harmonic::{Dev2, Harm4};

/// Symmetry tolerance on load, relative to `max(1, max |component|)`.
pub const LOAD_TOL: f64 = 1e-12;

/// Pretty-printing formatter with fixed 17-significant-digit floats.
struct SigDigits<'a>(PrettyFormatter<'a>);

impl Formatter for SigDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes `value` as pretty JSON with 17-significant-digit floats and a
/// trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Eshelby,
    Elasticity,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub order: u32,
    pub symmetry: Symmetry,
    pub components: Vec<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Symmetry(Error),
}

/// A validated tensor from a [`TensorFile`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoadedTensor {
    Eshelby(EshelbyTensor),
    Elasticity(ElasticityTensor),
}

impl LoadedTensor {
    pub fn symmetry(&self) -> Symmetry {
        match self {
            LoadedTensor::Eshelby(_) => Symmetry::Eshelby,
            LoadedTensor::Elasticity(_) => Symmetry::Elasticity,
        }
    }

    pub fn eshelby(&self) -> &EshelbyTensor {
        match self {
            LoadedTensor::Eshelby(m) => m,
            LoadedTensor::Elasticity(c) => c.as_eshelby(),
        }
    }
}

impl TensorFile {
    pub fn from_eshelby(m: &EshelbyTensor) -> Self {
        Self {
            order: 4,
            symmetry: Symmetry::Eshelby,
            components: m.components().to_vec(),
        }
    }

    pub fn from_elasticity(c: &ElasticityTensor) -> Self {
        Self {
            order: 4,
            symmetry: Symmetry::Elasticity,
            components: c.components().to_vec(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let file: Self = serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
        if file.order != 4 {
            return Err(LoadError::Parse(format!("order must be 4, got {}", file.order)));
        }
        if file.components.len() != 16 {
            return Err(LoadError::Parse(format!(
                "expected 16 components, got {}",
                file.components.len()
            )));
        }
        Ok(file)
    }

    pub fn validate(&self) -> Result<LoadedTensor, LoadError> {
        let comps: [f64; 16] = self
            .components
            .as_slice()
            .try_into()
            .map_err(|_| LoadError::Parse("expected 16 components".into()))?;
        let raw = Tensor4Raw::new(comps).map_err(|e| LoadError::Parse(e.to_string()))?;
        let scale = comps.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        let tol = LOAD_TOL * scale;
        match self.symmetry {
            Symmetry::Eshelby => validate_minor_symmetry(&raw, tol)
                .map(LoadedTensor::Eshelby)
                .map_err(LoadError::Symmetry),
            Symmetry::Elasticity => to_elasticity(&raw, tol)
                .map(LoadedTensor::Elasticity)
                .map_err(LoadError::Symmetry),
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionReport {
    pub lambda: f64,
    pub mu: f64,
    pub v: f64,
    /// Row-major 2×2.
    pub d1: [f64; 4],
    pub d2: [f64; 4],
    /// Flat 16 components, same offsets as tensor files.
    pub d: Vec<f64>,
}

fn flat2(s: &Dev2) -> [f64; 4] {
    let m = s.matrix();
    [m[0][0], m[0][1], m[1][0], m[1][1]]
}

impl DecompositionReport {
    pub fn from_decomposition(dec: &Decomposition) -> Self {
        Self {
            lambda: dec.lambda,
            mu: dec.mu,
            v: dec.v,
            d1: flat2(&dec.d1),
            d2: flat2(&dec.d2),
            d: dec.d.components().to_vec(),
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition, LoadError> {
        let dev = |a: [f64; 4]| {
            let scale = a.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            Dev2::from_matrix([[a[0], a[1]], [a[2], a[3]]], LOAD_TOL * scale).map_err(LoadError::Symmetry)
        };
        let d: [f64; 16] = self
            .d
            .as_slice()
            .try_into()
            .map_err(|_| LoadError::Parse(format!("expected 16 components in d, got {}", self.d.len())))?;
        Ok(Decomposition {
            lambda: self.lambda,
            mu: self.mu,
            v: self.v,
            d1: dev(self.d1)?,
            d2: dev(self.d2)?,
            d: Harm4::from_components(&d).map_err(LoadError::Symmetry)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Witness {
    pub angle: f64,
    pub reflect: bool,
}

impl From<GroupElement> for Witness {
    fn from(g: GroupElement) -> Self {
        Self {
            angle: g.angle(),
            reflect: g.reflect(),
        }
    }
}
