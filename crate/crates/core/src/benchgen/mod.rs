//! Instance generators: binary pigeonhole, the sequential trap, factoring,
//! planted covers and planted functions, random specifications.

mod bphp;
mod factor;
mod planted;
mod random;
mod trap;

use thiserror::Error;

use crate::formula::FormulaError;

pub use bphp::{
    bphp_interpolation_pair, bphp_lexfirst_size_bound, bphp_lexfirst_skolem, gen_bphp, Bphp, BphpParams, BphpRegime,
};
pub use factor::{gen_factor, FactorVars};
pub use planted::{gen_planted_cover, gen_planted_function, PlantedCover};
pub use random::{gen_random_cnf, gen_random_spec};
pub use trap::{gen_trap, simulate_sequential, Trap, TrapParams, TrapStats, TRAP_VOTERS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BenchError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}
