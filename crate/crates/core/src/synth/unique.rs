use rand::Rng;

use super::circuits::encode_bounded_circuits;
use super::majority::majority_hypothesis;
use super::pool::{sample_candidate_pool, PoolConfig};
use super::SynthError;
use crate::formula::{assert_value, encode_outputs, xor_gate, Circuit, Encoded, Specification, Var};
use crate::oracle::{stream, Oracle, OracleResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LearnerConfig {
    /// Pool multiplicity: `d · s` circuits per round.
    pub d: usize,
    /// Initial size bound; `None` means `max(n + i, 4)` for 1-based `i`.
    pub s0: Option<usize>,
    /// Doubling stops past this many gates.
    pub max_size: usize,
    /// Rounds per size bound: `round_factor · s · ⌈log2(s + 2)⌉`.
    pub round_factor: usize,
    pub pool: PoolConfig,
    pub seed: u64,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig {
            d: 4,
            s0: None,
            max_size: 1 << 10,
            round_factor: 64,
            pool: PoolConfig::default(),
            seed: 0,
        }
    }
}

/// One sample–vote–check round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnerRound {
    pub size: usize,
    pub pool: Vec<Vec<u32>>,
    /// Consistent circuits of this size before the round (exact when the
    /// pool was enumerated).
    pub consistent: u128,
    pub exact: bool,
    pub hypothesis_size: usize,
    /// `(z, bit)` with `z` over `X ∪ Y_{<i}`; `None` ends the learner.
    pub counterexample: Option<(Vec<bool>, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnedBit {
    /// 0-based output index.
    pub bit: usize,
    pub circuit: Circuit,
    /// Size bound in force when the learner succeeded.
    pub size_bound: usize,
    pub rounds: Vec<LearnerRound>,
    pub counterexamples: Vec<(Vec<bool>, bool)>,
}

/// Round budget for size bound `s`.
pub fn round_budget(cfg: &LearnerConfig, s: usize) -> usize {
    let log = (usize::BITS - (s + 1).leading_zeros()) as usize; // ⌈log2(s+2)⌉
    cfg.round_factor * s * log
}

/// Learns a circuit for output `i` (0-based) over `X ∪ Y_{<i}` by majority
/// votes of sampled consistent circuits, refined by counterexamples from
/// `F(X, Y) ∧ (Y_i ≠ h)`. Assumes `Y_i` is uniquely defined by those
/// variables; otherwise the loop is not guaranteed to end before the budget.
pub fn synth_unique_bit(
    spec: &Specification,
    i: usize,
    oracle: &Oracle,
    cfg: &LearnerConfig,
) -> Result<LearnedBit, SynthError> {
    assert!(i < spec.m(), "output index out of range");
    let z: Vec<Var> = spec
        .inputs()
        .iter()
        .chain(&spec.outputs()[..i])
        .copied()
        .collect();
    let mut s = cfg.s0.unwrap_or((spec.n() + i + 1).max(4)).max(1);
    let mut counterexamples: Vec<(Vec<bool>, bool)> = Vec::new();
    let mut rounds = Vec::new();
    let mut round_no = 0u64;
    while s <= cfg.max_size {
        let mut enc = encode_bounded_circuits(z.len(), s, &counterexamples);
        for _ in 0..round_budget(cfg, s) {
            let seed: u64 = stream(cfg.seed, "learner", round_no).random();
            round_no += 1;
            let Some(pool) =
                sample_candidate_pool(&enc, cfg.d * s, &z, oracle, &cfg.pool, seed)?
            else {
                // No circuit of this size fits the counterexamples.
                break;
            };
            let h = majority_hypothesis(&pool);
            let cex = find_counterexample(spec, i, &z, &h, oracle)?;
            rounds.push(LearnerRound {
                size: s,
                pool: pool.descriptors,
                consistent: pool.consistent,
                exact: pool.exact,
                hypothesis_size: h.size(),
                counterexample: cex.clone(),
            });
            match cex {
                None => {
                    return Ok(LearnedBit {
                        bit: i,
                        circuit: h,
                        size_bound: s,
                        rounds,
                        counterexamples,
                    })
                }
                Some((zb, bit)) => {
                    enc.add_counterexample(&zb, bit);
                    counterexamples.push((zb, bit));
                }
            }
        }
        s *= 2;
    }
    Err(SynthError::LearnerBudgetExhausted {
        bit: i,
        max_size: cfg.max_size,
    })
}

/// A model of `F(X, Y) ∧ (Y_i ≠ h(Z))`, as `(z, y_i)`.
fn find_counterexample(
    spec: &Specification,
    i: usize,
    z: &[Var],
    h: &Circuit,
    oracle: &Oracle,
) -> Result<Option<(Vec<bool>, bool)>, SynthError> {
    let yi = spec.outputs()[i];
    let mut cnf = spec.cnf().clone();
    let hv = encode_outputs(&mut cnf, h, |v| Encoded::Lit(v.positive()))[0];
    let differ = xor_gate(&mut cnf, Encoded::Lit(yi.positive()), hv);
    assert_value(&mut cnf, differ, true);
    Ok(match oracle.solve(&cnf, &Default::default())? {
        OracleResult::Unsat => None,
        OracleResult::Sat(m) => Some((
            m.bits(z),
            m.get(yi).expect("outputs are always reported"),
        )),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::CircuitBuilder;

    #[test]
    fn learns_and() {
        let (x1, x2, y) = (Var::new(1), Var::new(2), Var::new(3));
        let mut b = CircuitBuilder::new();
        let (a, c, o) = (b.input(x1), b.input(x2), b.input(y));
        let g = b.and(a, c);
        let f = b.xnor(o, g);
        let spec = Specification::from_circuit(vec![x1, x2], vec![y], b.finish1(f)).unwrap();
        let o = Oracle::internal();
        let cfg = LearnerConfig {
            s0: Some(1),
            ..LearnerConfig::default()
        };
        let learned = synth_unique_bit(&spec, 0, &o, &cfg).unwrap();
        for bits in 0..4u32 {
            let (p, q) = (bits & 1 == 1, bits & 2 == 2);
            let got = learned.circuit.eval1(|v| if v == x1 { p } else { q });
            assert_eq!(got, p && q);
        }
    }
}
