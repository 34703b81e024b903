use std::collections::HashMap;

use serde::Serialize;

use super::{stream, ClauseSink, Oracle, OracleError, Session, XorConstraint};
use crate::formula::{Cnf, Lit, Var};

/// Knobs for [`approx_count_projected`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountConfig {
    /// Odd number of independent hash trials; the estimate is their median.
    pub trials: u32,
    /// A cell is "small" once it holds fewer than this many projected models.
    pub threshold: usize,
}

impl Default for CountConfig {
    fn default() -> Self {
        // threshold = 1 + 9.84 (1 + ε/(1+ε)) (1 + 1/ε)², ε = 0.8
        CountConfig {
            trials: 9,
            threshold: 73,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CountEstimate {
    pub estimate: u64,
    pub hash_bits: u32,
    pub trials: u32,
    pub seed: u64,
}

/// Counts projected models of the session under `assumptions`, stopping at
/// `cap`. Blocking clauses are guarded by a fresh literal that is retired
/// afterwards, so the session is left logically unchanged.
pub fn bounded_count(
    s: &mut Session,
    proj: &[Var],
    assumptions: &[Lit],
    cap: usize,
) -> Result<usize, OracleError> {
    let act = s.fresh_var().positive();
    let mut assume = assumptions.to_vec();
    assume.push(act);
    let mut count = 0;
    while count < cap && s.solve(&assume)? {
        count += 1;
        let mut block: Vec<Lit> = proj.iter().map(|&v| v.lit(!s.value(v))).collect();
        block.push(!act);
        s.add(&block);
    }
    s.add(&[!act]);
    Ok(count)
}

/// Projected model count of `cnf` on `proj`, ApproxMC style: per trial, the
/// smallest number of nested XOR constraints leaving a small cell is found;
/// the median of those levels is the hash width, and the estimate is the
/// median cell size at that width scaled by `2^width`.
pub fn approx_count_projected(
    oracle: &Oracle,
    cnf: &Cnf,
    proj: &[Var],
    cfg: &CountConfig,
    seed: u64,
) -> Result<CountEstimate, OracleError> {
    let mut s = oracle.session(cnf);
    approx_count_session(&mut s, proj, &[], cfg, seed)
}

/// As [`approx_count_projected`], on an existing session and under
/// `assumptions`.
pub fn approx_count_session(
    s: &mut Session,
    proj: &[Var],
    assumptions: &[Lit],
    cfg: &CountConfig,
    seed: u64,
) -> Result<CountEstimate, OracleError> {
    let thresh = cfg.threshold;
    let trials = cfg.trials.max(1) | 1;
    let base = bounded_count(s, proj, assumptions, thresh)?;
    if base < thresh {
        return Ok(CountEstimate {
            estimate: base as u64,
            hash_bits: 0,
            trials,
            seed,
        });
    }
    let n = proj.len();
    let mut per_trial: Vec<(Vec<Lit>, HashMap<usize, usize>)> = Vec::new();
    let mut levels = Vec::new();
    let mut prev: Option<usize> = None;
    for t in 0..trials {
        let mut rng = stream(seed, "count", t as u64);
        let acts: Vec<Lit> = (0..n)
            .map(|_| {
                let x = XorConstraint::random(proj, &mut rng);
                let a = s.fresh_var().positive();
                x.encode(s, Some(a));
                a
            })
            .collect();
        let mut memo: HashMap<usize, usize> = HashMap::new();
        memo.insert(0, base);
        let count_at = |s: &mut Session, level: usize, memo: &mut HashMap<usize, usize>| {
            if let Some(&c) = memo.get(&level) {
                return Ok::<usize, OracleError>(c);
            }
            let mut assume = assumptions.to_vec();
            assume.extend_from_slice(&acts[..level]);
            let c = bounded_count(s, proj, &assume, thresh)?;
            memo.insert(level, c);
            Ok(c)
        };
        // Try the previous trial's level first; fall back to bisection.
        let mut level = None;
        if let Some(p) = prev {
            if count_at(s, p, &mut memo)? < thresh && count_at(s, p - 1, &mut memo)? >= thresh {
                level = Some(p);
            }
        }
        let level = match level {
            Some(l) => l,
            None => {
                let (mut lo, mut hi) = (0, n);
                if count_at(s, hi, &mut memo)? >= thresh {
                    lo = n;
                }
                while hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    if count_at(s, mid, &mut memo)? < thresh {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                hi.max(1)
            }
        };
        prev = Some(level);
        levels.push(level);
        per_trial.push((acts, memo));
    }
    let mut sorted = levels.clone();
    sorted.sort_unstable();
    let bits = sorted[sorted.len() / 2];
    let mut survivors = Vec::with_capacity(per_trial.len());
    for (acts, memo) in &per_trial {
        let c = match memo.get(&bits) {
            Some(&c) if c < thresh => c,
            _ => {
                let mut assume = assumptions.to_vec();
                assume.extend_from_slice(&acts[..bits]);
                bounded_count(s, proj, &assume, 8 * thresh)?
            }
        };
        survivors.push(c as u64);
    }
    survivors.sort_unstable();
    let median = survivors[survivors.len() / 2];
    let estimate = if bits >= 64 {
        u64::MAX
    } else {
        median.saturating_mul(1u64 << bits)
    };
    Ok(CountEstimate {
        estimate,
        hash_bits: bits as u32,
        trials,
        seed,
    })
}
