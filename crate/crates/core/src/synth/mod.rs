//! Skolem function synthesis: lexicographic-first, covering-set, and the
//! unique-bit majority learner, plus a dispatcher.

mod auto;
mod circuits;
mod cover;
mod lex;
mod majority;
mod pool;
mod unique;

use thiserror::Error;

use crate::formula::FormulaError;
use crate::oracle::OracleError;
use crate::verify::VerifyError;

pub use auto::{synth_auto, AutoConfig, AutoReport, BitStrategy};
pub use circuits::{encode_bounded_circuits, CircuitEncoding, CircuitSpace, GateChoice, GateOp};
pub use cover::{build_cover_circuit, synth_cover, CoverConfig, CoverSet, CoverStats};
pub use lex::{lex_size_bound, synth_lex, LexConfig, LEX_SIZE_CONSTANT};
pub use majority::majority_hypothesis;
pub use pool::{consistent_circuits, sample_candidate_pool, CandidatePool, PoolConfig, EXACT_SPACE_LIMIT};
pub use unique::{round_budget, synth_unique_bit, LearnedBit, LearnerConfig, LearnerRound};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error("{m} outputs exceed the limit of {limit} for lexicographic synthesis")]
    TooManyOutputs { m: usize, limit: usize },
    #[error("covering set still incomplete after the largest image-size guess ({k})")]
    CoverBudgetExhausted { k: u64 },
    #[error("learner did not converge for output {bit} up to circuit size {max_size}")]
    LearnerBudgetExhausted { bit: usize, max_size: usize },
    #[error("no circuit of size {size} is consistent with the counterexamples for output {bit}")]
    InconsistentCounterexamples { bit: usize, size: usize },
    #[error("synthesized vector failed verification")]
    VerificationFailed,
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl From<VerifyError> for SynthError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Formula(f) => SynthError::Formula(f),
            VerifyError::Oracle(o) => SynthError::Oracle(o),
        }
    }
}
