//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or parse error, 2 symmetry validation
//! failure, 3 tensors not equivalent. Data goes to stdout or `--output`,
//! diagnostics to stderr.

pub mod files;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{group_apply, random_eshelby, GroupElement};
use crate::decomp::{decompose, reconstruct};
use crate::diophantine::{elasticity_irreducible, enumerate_irreducible, reduce_solution, DiophantineSolution};
use crate::elasticity::{elasticity_invariants, random_elasticity, ElasticityInvariants};
use crate::invariants::{derived_invariants, invariant_basis, DerivedInvariants, InvariantVector};
use crate::orbit::{align, audit_action, brute_force_align, equivalence, Group, Tolerances};

use files::{to_json, DecompositionReport, LoadError, LoadedTensor, Symmetry, TensorFile, Witness};

/// Environment variable supplying the default seed.
pub const SEED_ENV: &str = "ESHELBY2D_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_SYMMETRY: i32 = 2;
pub const EXIT_NOT_EQUIVALENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "eshelby2d", version, about = "Decomposition and invariants of 2D Eshelby tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GroupArg {
    So2,
    O2,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::So2 => Group::SO2,
            GroupArg::O2 => Group::O2,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split a tensor into λ, μ, v, D¹, D², D.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rebuild a tensor file from a decomposition report.
    Reconstruct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print J1..J10 (and optionally J11..J16).
    Invariants {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        derived: bool,
        /// Divide each invariant by ‖M‖ raised to its degree.
        #[arg(long)]
        normalize_degree: bool,
    },
    /// Decide orbit equivalence; exits 3 when not equivalent.
    Equivalent {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value = "o2")]
        group: GroupArg,
        #[arg(long, default_value_t = 1e-8)]
        rtol: f64,
        #[arg(long, default_value_t = 1e-10)]
        atol: f64,
        /// Residual accepted by the alignment step.
        #[arg(long, default_value_t = 1e-8)]
        align_tol: f64,
        #[arg(long)]
        normalize_degree: bool,
    },
    /// Find g with g * A = B.
    Align {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value = "o2")]
        group: GroupArg,
        #[arg(long)]
        brute_force: bool,
        #[arg(long, default_value_t = 720)]
        grid: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Apply a group element to a tensor.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        angle: f64,
        #[arg(long)]
        reflect: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check how each invariant behaves under rotations and the reflection.
    Audit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exponent equations behind the invariant basis.
    Diophantine {
        #[command(subcommand)]
        action: DiophantineCommand,
    },
    /// Write a deterministic random tensor.
    Random {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "eshelby")]
        symmetry: Symmetry,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum DiophantineCommand {
    /// Irreducible solutions with component sum at most `bound`.
    Enumerate {
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Write a solution d,e,f,g,j,k as a sum of w1..w11.
    Reduce {
        #[arg(long, value_delimiter = ',', required = true)]
        solution: Vec<u32>,
    },
    /// Irreducible solutions of the elasticity equation.
    Elasticity,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(m) => Failure::io(m),
            LoadError::Symmetry(e) => Failure {
                code: EXIT_SYMMETRY,
                message: e.to_string(),
            },
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn load_tensor(path: &Path) -> Result<LoadedTensor, Failure> {
    let file = TensorFile::parse(&read(path)?).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    Ok(file.validate()?)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn default_seed() -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::io(format!("{SEED_ENV} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}

#[derive(Serialize)]
struct InvariantsOutput {
    #[serde(flatten)]
    basis: InvariantVector,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    derived: Option<DerivedInvariants>,
    normalized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elasticity: Option<ElasticityInvariants>,
}

#[derive(Serialize)]
struct EquivalentOutput {
    equivalent: bool,
    group: Group,
    filter_passed: bool,
    witness: Option<Witness>,
    residual: Option<f64>,
}

#[derive(Serialize)]
struct AlignOutput {
    found: bool,
    group: Group,
    method: &'static str,
    witness: Option<Witness>,
    residual: f64,
}

#[derive(Serialize)]
struct ReduceOutput {
    solution: [u32; 6],
    parts: Vec<[u32; 6]>,
    indices: Vec<usize>,
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Decompose { input, output } => {
            let m = load_tensor(&input)?;
            let report = DecompositionReport::from_decomposition(&decompose(m.eshelby()));
            emit(&to_json(&report), output.as_deref())?;
        }
        Command::Reconstruct { input, output } => {
            let report: DecompositionReport =
                serde_json::from_str(&read(&input)?).map_err(|e| Failure::io(format!("{}: {e}", input.display())))?;
            let m = reconstruct(&report.to_decomposition()?);
            emit(&to_json(&TensorFile::from_eshelby(&m)), output.as_deref())?;
        }
        Command::Invariants {
            input,
            derived,
            normalize_degree,
        } => {
            let t = load_tensor(&input)?;
            let m = t.eshelby();
            let mut basis = invariant_basis(&decompose(m));
            if normalize_degree {
                basis = basis.normalized_by(m.norm());
            }
            let elasticity = match &t {
                LoadedTensor::Elasticity(c) => Some(elasticity_invariants(c).map_err(|e| Failure {
                    code: EXIT_SYMMETRY,
                    message: e.to_string(),
                })?),
                LoadedTensor::Eshelby(_) => None,
            };
            let out = InvariantsOutput {
                basis,
                derived: derived.then(|| derived_invariants(&basis)),
                normalized: normalize_degree,
                elasticity,
            };
            emit(&to_json(&out), None)?;
        }
        Command::Equivalent {
            a,
            b,
            group,
            rtol,
            atol,
            align_tol,
            normalize_degree,
        } => {
            let (ma, mb) = (load_tensor(&a)?, load_tensor(&b)?);
            let tol = Tolerances {
                atol,
                rtol,
                align_tol,
                normalize_degree,
            };
            let report = equivalence(ma.eshelby(), mb.eshelby(), group.into(), &tol);
            let out = EquivalentOutput {
                equivalent: report.equivalent,
                group: report.group,
                filter_passed: report.filter_passed,
                witness: report.alignment.and_then(|r| r.witness()).map(Witness::from),
                residual: report.alignment.map(|r| r.residual),
            };
            emit(&to_json(&out), None)?;
            if !report.equivalent {
                return Ok(EXIT_NOT_EQUIVALENT);
            }
        }
        Command::Align {
            a,
            b,
            group,
            brute_force,
            grid,
            tol,
        } => {
            let (ma, mb) = (load_tensor(&a)?, load_tensor(&b)?);
            if brute_force && grid < 8 {
                return Err(Failure::io("--grid must be at least 8"));
            }
            let group: Group = group.into();
            let (r, method) = if brute_force {
                (brute_force_align(ma.eshelby(), mb.eshelby(), group, grid, tol), "brute-force")
            } else {
                (align(ma.eshelby(), mb.eshelby(), group, tol), "closed-form")
            };
            let out = AlignOutput {
                found: r.found,
                group,
                method,
                witness: r.element.map(Witness::from),
                residual: r.residual,
            };
            emit(&to_json(&out), None)?;
        }
        Command::Transform {
            input,
            angle,
            reflect,
            output,
        } => {
            let t = load_tensor(&input)?;
            let g = GroupElement::new(angle, reflect);
            let m = group_apply(&g, t.eshelby());
            let file = match t.symmetry() {
                Symmetry::Eshelby => TensorFile::from_eshelby(&m),
                Symmetry::Elasticity => TensorFile {
                    symmetry: Symmetry::Elasticity,
                    ..TensorFile::from_eshelby(&m)
                },
            };
            emit(&to_json(&file), output.as_deref())?;
        }
        Command::Audit { input, samples, seed } => {
            if samples == 0 {
                return Err(Failure::io("--samples must be positive"));
            }
            let seed = match seed {
                Some(s) => s,
                None => default_seed()?,
            };
            let m = load_tensor(&input)?;
            emit(&to_json(&audit_action(m.eshelby(), samples, seed)), None)?;
        }
        Command::Diophantine { action } => match action {
            DiophantineCommand::Enumerate { bound } => {
                let ws: Vec<[u32; 6]> = enumerate_irreducible(bound).iter().map(|w| w.as_array()).collect();
                emit(&to_json(&ws), None)?;
            }
            DiophantineCommand::Reduce { solution } => {
                let arr: [u32; 6] = solution
                    .as_slice()
                    .try_into()
                    .map_err(|_| Failure::io("--solution needs exactly six components"))?;
                let w = DiophantineSolution::new(arr).map_err(|e| Failure::io(e.to_string()))?;
                let parts = reduce_solution(&w).map_err(|e| Failure::io(e.to_string()))?;
                let out = ReduceOutput {
                    solution: arr,
                    parts: parts.iter().map(|p| p.as_array()).collect(),
                    indices: parts.iter().map(|p| p.basis_index().expect("parts are basis elements")).collect(),
                };
                emit(&to_json(&out), None)?;
            }
            DiophantineCommand::Elasticity => {
                let ws: Vec<[u32; 4]> = elasticity_irreducible().iter().map(|w| w.0).collect();
                emit(&to_json(&ws), None)?;
            }
        },
        Command::Random { seed, symmetry, output } => {
            let seed = match seed {
                Some(s) => s,
                None => default_seed()?,
            };
            let file = match symmetry {
                Symmetry::Eshelby => TensorFile::from_eshelby(&random_eshelby(seed)),
                Symmetry::Elasticity => TensorFile::from_elasticity(&random_elasticity(seed)),
            };
            emit(&to_json(&file), output.as_deref())?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
