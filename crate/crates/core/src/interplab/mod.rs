//! Resolution proofs from the logging solver, symmetric interpolants,
//! per-bit interpolation synthesis and bounded-width refutation search.

mod experiment;
mod interpolant;
mod proof;
mod slivovsky;
mod width;

use thiserror::Error;

use crate::formula::{Assignment, FormulaError, Var};
use crate::oracle::OracleError;

pub use experiment::{interp_size_experiment, rows_to_csv, ExperimentConfig, ExperimentRow};
pub use interpolant::{
    extract_interpolant, refute_instance, InterpolationInstance, INTERPOLANT_GATES_PER_STEP,
};
pub use proof::{
    check_proof, parse_proof, solve_with_proof, BadStep, Origin, ProofOutcome, ProofStep,
    ResolutionProof,
};
pub use slivovsky::{slivovsky_synth, SlivovskyResult};
pub use width::{bounded_width_refute, WidthConfig, WidthOutcome, MAX_WIDTH_VARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterpError {
    #[error("interpolation inapplicable at bit {bit}: both sides are satisfiable together")]
    Inapplicable { bit: usize, witness: Assignment },
    #[error("axiom at step {step} does not belong to its declared side")]
    MislabeledAxiom { step: usize },
    #[error("pivot {var} at step {step} is outside the declared partition")]
    PivotOutsidePartition { step: usize, var: Var },
    #[error("variable {0} is in more than one partition block, or a side mentions the other side's variables")]
    BadPartition(Var),
    #[error("proof does not end with the empty clause")]
    NotARefutation,
    #[error("invalid proof at step {}: {}", .0.index, .0.reason)]
    InvalidProof(BadStep),
    #[error("saturation exceeded the budget of {clauses} clauses")]
    MemoryBudget { clauses: usize },
    #[error("{vars} variables exceed the saturation limit of {limit}")]
    TooManyVariables { vars: u32, limit: u32 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
