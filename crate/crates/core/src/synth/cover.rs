use serde::Serialize;

use super::lex::select_first;
use super::SynthError;
use crate::formula::{assert_value, encode_gates, Cnf, Encoded, SkolemVector, Specification, Var};
use crate::oracle::{
    approx_count_session, sample_session_retry, ClauseSink, CountConfig, Oracle, Session,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverConfig {
    /// Initial guess for the image size `k`; doubled when a guess's
    /// iteration budget `2k(n+2)` runs out.
    pub k0: u64,
    /// Largest guess tried before giving up.
    pub max_k: u64,
    pub count: CountConfig,
    pub seed: u64,
}

impl Default for CoverConfig {
    fn default() -> Self {
        CoverConfig {
            k0: 1,
            max_k: 1 << 20,
            count: CountConfig::default(),
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverStats {
    pub iterations: u64,
    pub oracle_calls: u64,
    /// Estimated number of uncovered inputs at the start of each iteration.
    pub uncovered_estimates: Vec<u64>,
    /// Image-size guess in force when the cover was completed.
    pub final_k: u64,
}

/// Output vectors that together cover every satisfiable input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverSet {
    pub elements: Vec<Vec<bool>>,
    pub stats: CoverStats,
    /// Set once `F ∧ ⋀_{y ∈ S'} ¬F(X, y)` was found unsatisfiable.
    pub certified: bool,
}

/// Greedy covering-set synthesis. Each iteration estimates the number `U` of
/// uncovered inputs, hashes X down to cells of about `2k` uncovered inputs
/// (`max(0, ⌈log2(U / 2k)⌉)` bits) and adds the output part of a model
/// sampled from a cell. The loop ends with an unsatisfiable uncovered-set
/// query, which certifies the cover.
pub fn synth_cover(
    spec: &Specification,
    oracle: &Oracle,
    cfg: &CoverConfig,
) -> Result<(SkolemVector, CoverSet), SynthError> {
    let calls_before = oracle.stats().calls;
    let mut session = oracle.session(spec.cnf());
    let mut cover = CoverSet::default();
    let mut k = cfg.k0.max(1);
    let n = spec.n() as u64;
    let mut budget = 2 * k * (n + 2);
    let mut used = 0u64;
    loop {
        if !session.solve(&[])? {
            cover.certified = true;
            break;
        }
        if used >= budget {
            if k >= cfg.max_k {
                return Err(SynthError::CoverBudgetExhausted { k });
            }
            k *= 2;
            budget = 2 * k * (n + 2);
            used = 0;
        }
        let iter = cover.stats.iterations;
        let est = approx_count_session(&mut session, spec.inputs(), &[], &cfg.count, cfg.seed)?;
        cover.stats.uncovered_estimates.push(est.estimate);
        let bits = hash_bits(est.estimate, k);
        let sample = sample_session_retry(
            &mut session,
            spec.inputs(),
            &[],
            bits,
            derive(cfg.seed, iter),
            spec.num_vars(),
        )?;
        let Some(model) = sample else {
            // The uncovered set was non-empty a moment ago; an empty answer
            // here can only mean the engine changed its mind.
            continue;
        };
        let y = model.bits(spec.outputs());
        debug_assert!(!cover.elements.contains(&y));
        exclude_output(&mut session, spec, &y);
        cover.elements.push(y);
        cover.stats.iterations += 1;
        used += 1;
    }
    cover.stats.final_k = k;
    cover.stats.oracle_calls = oracle.stats().calls - calls_before;
    let v = build_cover_circuit(spec, &cover);
    Ok((v, cover))
}

/// `max(0, ⌈log2(u / 2k)⌉)`.
fn hash_bits(u: u64, k: u64) -> u32 {
    let cell = 2 * k;
    if u <= cell {
        return 0;
    }
    let ratio = u.div_ceil(cell);
    64 - (ratio - 1).leading_zeros()
}

fn derive(seed: u64, iter: u64) -> u64 {
    use rand::Rng;
    crate::oracle::stream(seed, "cover", iter).random()
}

/// Adds `¬F(X, y)` to the session.
fn exclude_output(session: &mut Session, spec: &Specification, y: &[bool]) {
    let restricted = spec.restrict_outputs(y);
    let mut tmp = Cnf::new(session.num_vars());
    let gates = encode_gates(&mut tmp, &restricted, |v| Encoded::Lit(v.positive()));
    assert_value(&mut tmp, gates[restricted.output().index()], false);
    session.declare(Var::new(tmp.num_vars().max(1)));
    for c in tmp.clauses() {
        session.add(c.lits());
    }
}

/// For each input, the lexicographically first element of the cover that
/// satisfies F.
pub fn build_cover_circuit(spec: &Specification, cover: &CoverSet) -> SkolemVector {
    let mut elements = cover.elements.clone();
    elements.sort();
    elements.dedup();
    select_first(spec, &elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_bit_formula() {
        assert_eq!(hash_bits(0, 1), 0);
        assert_eq!(hash_bits(2, 1), 0);
        assert_eq!(hash_bits(3, 1), 1);
        assert_eq!(hash_bits(4, 1), 1);
        assert_eq!(hash_bits(5, 1), 2);
        assert_eq!(hash_bits(1 << 14, 4), 11);
    }
}
