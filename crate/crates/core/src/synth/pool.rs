use rand::Rng;

use super::circuits::CircuitEncoding;
use crate::formula::{Circuit, Var};
use crate::oracle::{approx_count_session, sample_session_retry, stream, CountConfig, Oracle, OracleError};

/// Canonical spaces up to this size are sampled exactly: enumerate,
/// filter by the counterexamples, draw uniformly.
pub const EXACT_SPACE_LIMIT: u128 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoolConfig {
    pub count: CountConfig,
    /// Aim for hash cells of about this many consistent circuits.
    pub cell: u64,
    pub exact_limit: u128,
}

impl Default for PoolConfig {
    fn default() -> Self {
        PoolConfig {
            count: CountConfig {
                trials: 5,
                threshold: 73,
            },
            cell: 16,
            exact_limit: EXACT_SPACE_LIMIT,
        }
    }
}

/// Circuits drawn (close to) uniformly from those consistent with every
/// counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePool {
    /// Descriptor indices per circuit, see [`super::CircuitSpace`].
    pub descriptors: Vec<Vec<u32>>,
    pub circuits: Vec<Circuit>,
    /// Whether the draw came from exact enumeration.
    pub exact: bool,
    /// Number of consistent circuits: exact when `exact`, else estimated.
    pub consistent: u128,
}

/// Draws `count` consistent circuits over `inputs` (node `t` reads
/// `inputs[t]`). `None` when no circuit of this size is consistent.
pub fn sample_candidate_pool(
    enc: &CircuitEncoding,
    count: usize,
    inputs: &[Var],
    oracle: &Oracle,
    cfg: &PoolConfig,
    seed: u64,
) -> Result<Option<CandidatePool>, OracleError> {
    let space = enc.space();
    if space.space_size() <= cfg.exact_limit {
        let consistent = consistent_circuits(enc);
        if consistent.is_empty() {
            return Ok(None);
        }
        let mut rng = stream(seed, "pool-exact", 0);
        let picks = (0..count)
            .map(|_| consistent[rng.random_range(0..consistent.len())].clone())
            .collect();
        return Ok(Some(finish(enc, picks, inputs, true, consistent.len() as u128)));
    }
    let proj = enc.structure_vars();
    let mut session = oracle.session(enc.cnf());
    let est = approx_count_session(&mut session, &proj, &[], &cfg.count, seed)?;
    if est.estimate == 0 {
        return Ok(None);
    }
    let bits = if est.estimate <= cfg.cell {
        0
    } else {
        64 - (est.estimate.div_ceil(cfg.cell) - 1).leading_zeros()
    };
    let mut picks = Vec::with_capacity(count);
    for t in 0..count {
        let draw_seed: u64 = stream(seed, "pool-draw", t as u64).random();
        let model = sample_session_retry(&mut session, &proj, &[], bits, draw_seed, enc.cnf().num_vars())?
            .expect("a satisfiable encoding always yields a sample");
        picks.push(enc.decode(|v| model.get(v).unwrap_or(false)));
    }
    Ok(Some(finish(enc, picks, inputs, false, est.estimate as u128)))
}

fn finish(
    enc: &CircuitEncoding,
    descriptors: Vec<Vec<u32>>,
    inputs: &[Var],
    exact: bool,
    consistent: u128,
) -> CandidatePool {
    let circuits = descriptors
        .iter()
        .map(|d| enc.space().to_circuit(d, inputs))
        .collect();
    CandidatePool {
        descriptors,
        circuits,
        exact,
        consistent,
    }
}

/// Every canonical circuit agreeing with all recorded counterexamples,
/// by enumeration.
pub fn consistent_circuits(enc: &CircuitEncoding) -> Vec<Vec<u32>> {
    let space = enc.space();
    let mut out = Vec::new();
    space.for_each(|seq| {
        if enc
            .counterexamples()
            .iter()
            .all(|(z, bit)| space.eval(seq, z) == *bit)
        {
            out.push(seq.to_vec());
        }
        true
    });
    out
}
