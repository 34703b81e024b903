use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use super::cover::{synth_cover, CoverConfig, CoverSet};
use super::lex::{synth_lex, LexConfig};
use super::unique::{synth_unique_bit, LearnedBit, LearnerConfig};
use super::SynthError;
use crate::formula::{CircuitBuilder, GateRef, SkolemVector, Specification, Var};
use crate::oracle::{stream, Oracle};
use crate::verify::{check_unique, verify_skolem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutoConfig {
    /// Specifications with at most this many outputs go straight to the
    /// lexicographic construction.
    pub lex_limit: usize,
    pub learner: LearnerConfig,
    pub cover: CoverConfig,
    pub seed: u64,
}

impl Default for AutoConfig {
    fn default() -> Self {
        AutoConfig {
            lex_limit: 4,
            learner: LearnerConfig::default(),
            cover: CoverConfig::default(),
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BitStrategy {
    Lex,
    Unique,
    Cover,
}

#[derive(Clone, Debug)]
pub struct AutoReport {
    pub vector: SkolemVector,
    /// How each output was synthesized.
    pub strategies: Vec<BitStrategy>,
    pub learned: Vec<LearnedBit>,
    pub cover: Option<CoverSet>,
}

/// Lexicographic construction for few outputs; otherwise outputs uniquely
/// defined by `X ∪ Y_{<i}` are learned, and the rest are covered on the
/// specification with the learned functions substituted. The result is
/// verified before it is returned.
pub fn synth_auto(
    spec: &Specification,
    oracle: &Oracle,
    cfg: &AutoConfig,
) -> Result<AutoReport, SynthError> {
    let m = spec.m();
    let report = if m <= cfg.lex_limit {
        AutoReport {
            vector: synth_lex(spec, &LexConfig::default())?,
            strategies: vec![BitStrategy::Lex; m],
            learned: Vec::new(),
            cover: None,
        }
    } else {
        mixed(spec, oracle, cfg)?
    };
    if !verify_skolem(spec, &report.vector, oracle)?.is_valid() {
        return Err(SynthError::VerificationFailed);
    }
    Ok(report)
}

fn mixed(spec: &Specification, oracle: &Oracle, cfg: &AutoConfig) -> Result<AutoReport, SynthError> {
    let m = spec.m();
    let outputs = spec.outputs();
    let mut strategies = Vec::with_capacity(m);
    let mut learned: Vec<LearnedBit> = Vec::new();
    for i in 0..m {
        let z: Vec<Var> = spec.inputs().iter().chain(&outputs[..i]).copied().collect();
        if check_unique(spec, i, &z, oracle)? {
            let lc = LearnerConfig {
                seed: stream(cfg.seed, "auto-learner", i as u64).random(),
                ..cfg.learner
            };
            learned.push(synth_unique_bit(spec, i, oracle, &lc)?);
            strategies.push(BitStrategy::Unique);
        } else {
            strategies.push(BitStrategy::Cover);
        }
    }
    let rest: Vec<Var> = (0..m)
        .filter(|&i| strategies[i] == BitStrategy::Cover)
        .map(|i| outputs[i])
        .collect();
    let by_bit: HashMap<usize, &LearnedBit> = learned.iter().map(|l| (l.bit, l)).collect();

    let (rest_psis, cover) = if rest.is_empty() {
        (HashMap::new(), None)
    } else {
        // Residual: F with each learned output replaced by its circuit,
        // evaluated in output order.
        let mut b = CircuitBuilder::new();
        let mut y_gates: HashMap<Var, GateRef> = HashMap::new();
        for i in 0..m {
            let g = match by_bit.get(&i) {
                Some(l) => b.import1(&l.circuit, |b, v| match y_gates.get(&v) {
                    Some(&g) => g,
                    None => b.input(v),
                }),
                None => b.input(outputs[i]),
            };
            y_gates.insert(outputs[i], g);
        }
        let out = b.import1(spec.matrix(), |b, v| match y_gates.get(&v) {
            Some(&g) => g,
            None => b.input(v),
        });
        let residual = Specification::from_circuit(spec.inputs().to_vec(), rest.clone(), b.finish1(out))?;
        let cc = CoverConfig {
            seed: stream(cfg.seed, "auto-cover", 0).random(),
            ..cfg.cover
        };
        let (v, set) = synth_cover(&residual, oracle, &cc)?;
        let psis: HashMap<Var, _> = rest.iter().copied().zip(v.psis().iter().cloned()).collect();
        (psis, Some(set))
    };

    let psis = (0..m)
        .map(|i| match by_bit.get(&i) {
            Some(l) => l.circuit.clone(),
            None => rest_psis[&outputs[i]].clone(),
        })
        .collect();
    let vector = SkolemVector::new(spec.inputs().to_vec(), outputs.to_vec(), psis)?;
    Ok(AutoReport {
        vector,
        strategies,
        learned,
        cover,
    })
}
