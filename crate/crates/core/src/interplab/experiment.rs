use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::interpolant::{extract_interpolant, refute_instance};
use super::proof::ProofOutcome;
use crate::benchgen::{bphp_interpolation_pair, bphp_lexfirst_skolem, BphpParams, BphpRegime};
use crate::oracle::solver::Limits;

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub ms: Vec<usize>,
    /// Pigeons for a given `m`; the default is `2^m + 1`.
    pub k_of_m: fn(usize) -> usize,
    /// Per-cell solver budget.
    pub time_limit: Option<Duration>,
    pub conflict_limit: Option<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            ms: vec![1, 2, 3],
            k_of_m: |m| (1 << m) + 1,
            time_limit: Some(Duration::from_secs(600)),
            conflict_limit: None,
        }
    }
}

/// One cell; sizes are absent when the cell ran out of budget or the pair
/// was satisfiable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentRow {
    pub m: usize,
    pub k: usize,
    pub proof_length: Option<usize>,
    pub interpolant_size: Option<usize>,
    pub lex_first_size: usize,
}

/// For each `m`: refute the first-output pigeonhole pair, extract its
/// interpolant, and compare with the lexicographic-first Skolem circuits.
/// Cells run in parallel; rows come back in the order of `cfg.ms`.
pub fn interp_size_experiment(cfg: &ExperimentConfig) -> Vec<ExperimentRow> {
    cfg.ms.par_iter().map(|&m| run_cell(cfg, m)).collect()
}

fn run_cell(cfg: &ExperimentConfig, m: usize) -> ExperimentRow {
    let k = (cfg.k_of_m)(m);
    let p = BphpParams::new(k, m, BphpRegime::Any).expect("experiment parameters are valid");
    let lex_first_size = bphp_lexfirst_skolem(p).size();
    let limits = Limits {
        conflicts: cfg.conflict_limit,
        deadline: cfg.time_limit.map(|d| Instant::now() + d),
    };
    let inst = bphp_interpolation_pair(p);
    let (proof_length, interpolant_size) = match refute_instance(&inst, &limits) {
        Ok(ProofOutcome::Unsat(proof)) => match extract_interpolant(&inst, &proof) {
            Ok(i) => (Some(proof.len()), Some(i.size())),
            Err(_) => (Some(proof.len()), None),
        },
        _ => (None, None),
    };
    ExperimentRow {
        m,
        k,
        proof_length,
        interpolant_size,
        lex_first_size,
    }
}

/// CSV with header `m,k,proofLength,interpolantSize,lexFirstSize`; absent
/// cells are empty.
pub fn rows_to_csv(rows: &[ExperimentRow]) -> String {
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut s = String::from("m,k,proofLength,interpolantSize,lexFirstSize\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.m,
            r.k,
            opt(r.proof_length),
            opt(r.interpolant_size),
            r.lex_first_size
        );
    }
    s
}
