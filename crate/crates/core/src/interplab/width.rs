use std::collections::HashMap;

use super::proof::{Origin, ProofStep, ResolutionProof};
use super::InterpError;
use crate::formula::{Cnf, Lit, Var};

/// Saturation packs clauses into 128-bit masks.
pub const MAX_WIDTH_VARS: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WidthConfig {
    /// Give up once this many distinct clauses are held.
    pub max_clauses: usize,
}

impl Default for WidthConfig {
    fn default() -> Self {
        WidthConfig {
            max_clauses: 4_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WidthOutcome {
    Refuted(ResolutionProof),
    /// Closed under width-bounded resolution without the empty clause.
    Saturated { clauses: usize },
}

impl WidthOutcome {
    pub fn is_refuted(&self) -> bool {
        matches!(self, WidthOutcome::Refuted(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Mask {
    pos: u128,
    neg: u128,
}

impl Mask {
    fn width(self) -> u32 {
        (self.pos | self.neg).count_ones()
    }

    fn lits(self) -> Vec<Lit> {
        let mut out = Vec::new();
        for k in 0..128 {
            let bit = 1u128 << k;
            let v = Var::new(k + 1);
            if self.pos & bit != 0 {
                out.push(v.positive());
            }
            if self.neg & bit != 0 {
                out.push(v.negative());
            }
        }
        out.sort_unstable();
        out
    }
}

/// Closes `cnf` under resolution, keeping derived clauses of width at most
/// `w` (axioms of any width take part). Refutes iff a width-`w` refutation
/// exists.
pub fn bounded_width_refute(cnf: &Cnf, w: usize, cfg: &WidthConfig) -> Result<WidthOutcome, InterpError> {
    if cnf.num_vars() > MAX_WIDTH_VARS {
        return Err(InterpError::TooManyVariables {
            vars: cnf.num_vars(),
            limit: MAX_WIDTH_VARS,
        });
    }
    let mut clauses: Vec<Mask> = Vec::new();
    let mut parents: Vec<Option<(usize, usize, u32)>> = Vec::new();
    let mut index: HashMap<Mask, usize> = HashMap::new();
    for c in cnf.clauses() {
        let mut m = Mask { pos: 0, neg: 0 };
        for l in c.lits() {
            let bit = 1u128 << (l.var().id() - 1);
            if l.is_positive() {
                m.pos |= bit;
            } else {
                m.neg |= bit;
            }
        }
        if index.contains_key(&m) {
            continue;
        }
        index.insert(m, clauses.len());
        clauses.push(m);
        parents.push(None);
        if m.width() == 0 {
            return Ok(WidthOutcome::Refuted(build_proof(&clauses, &parents, clauses.len() - 1)));
        }
    }
    let mut i = 0;
    while i < clauses.len() {
        let ci = clauses[i];
        for j in 0..i {
            let cj = clauses[j];
            let clash = (ci.pos & cj.neg) | (ci.neg & cj.pos);
            if clash.count_ones() != 1 {
                continue;
            }
            let r = Mask {
                pos: (ci.pos | cj.pos) & !clash,
                neg: (ci.neg | cj.neg) & !clash,
            };
            if r.width() as usize > w || index.contains_key(&r) {
                continue;
            }
            if clauses.len() >= cfg.max_clauses {
                return Err(InterpError::MemoryBudget {
                    clauses: cfg.max_clauses,
                });
            }
            index.insert(r, clauses.len());
            clauses.push(r);
            parents.push(Some((i, j, clash.trailing_zeros() + 1)));
            if r.width() == 0 {
                return Ok(WidthOutcome::Refuted(build_proof(&clauses, &parents, clauses.len() - 1)));
            }
        }
        i += 1;
    }
    Ok(WidthOutcome::Saturated {
        clauses: clauses.len(),
    })
}

fn build_proof(clauses: &[Mask], parents: &[Option<(usize, usize, u32)>], root: usize) -> ResolutionProof {
    let mut needed = vec![false; root + 1];
    needed[root] = true;
    for k in (0..=root).rev() {
        if needed[k] {
            if let Some((a, b, _)) = parents[k] {
                needed[a] = true;
                needed[b] = true;
            }
        }
    }
    let mut map = vec![usize::MAX; root + 1];
    let mut steps = Vec::new();
    for k in 0..=root {
        if !needed[k] {
            continue;
        }
        let clause = clauses[k].lits();
        steps.push(match parents[k] {
            None => ProofStep::Axiom {
                clause,
                origin: Origin::Shared,
            },
            Some((a, b, v)) => {
                let bit = 1u128 << (v - 1);
                let (left, right) = if clauses[a].pos & bit != 0 { (a, b) } else { (b, a) };
                ProofStep::Resolve {
                    left: map[left],
                    right: map[right],
                    pivot: Var::new(v),
                    clause,
                }
            }
        });
        map[k] = steps.len() - 1;
    }
    ResolutionProof::new(steps)
}
