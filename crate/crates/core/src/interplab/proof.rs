use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use super::InterpError;
use crate::formula::{Assignment, Clause, Cnf, Lit, Var};
use crate::oracle::solver::{Limits, LogStep, ProofLog, Solver};

/// Which formula of an interpolation pair an axiom came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Phi0,
    Phi1,
    Shared,
}

impl Origin {
    fn name(self) -> &'static str {
        match self {
            Origin::Phi0 => "phi0",
            Origin::Phi1 => "phi1",
            Origin::Shared => "shared",
        }
    }

    pub(crate) fn tag(self) -> u32 {
        match self {
            Origin::Shared => 0,
            Origin::Phi0 => 1,
            Origin::Phi1 => 2,
        }
    }

    pub(crate) fn from_tag(tag: u32) -> Origin {
        match tag {
            1 => Origin::Phi0,
            2 => Origin::Phi1,
            _ => Origin::Shared,
        }
    }
}

/// A proof line. Clauses are sorted literal lists. In a resolve step the
/// left premise holds the pivot positively, the right one negatively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofStep {
    Axiom {
        clause: Vec<Lit>,
        origin: Origin,
    },
    Resolve {
        left: usize,
        right: usize,
        pivot: Var,
        clause: Vec<Lit>,
    },
}

impl ProofStep {
    pub fn clause(&self) -> &[Lit] {
        match self {
            ProofStep::Axiom { clause, .. } | ProofStep::Resolve { clause, .. } => clause,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResolutionProof {
    steps: Vec<ProofStep>,
}

/// First failing step found by [`check_proof`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadStep {
    pub index: usize,
    pub reason: String,
}

pub enum ProofOutcome {
    Sat(Assignment),
    Unsat(ResolutionProof),
}

/// `(left ∖ {pivot}) ∪ (right ∖ {¬pivot})`, or `None` if the premises do not
/// clash on `pivot` as required or the result is a tautology.
pub(crate) fn resolve(left: &[Lit], right: &[Lit], pivot: Var) -> Option<Vec<Lit>> {
    if !left.contains(&pivot.positive()) || !right.contains(&pivot.negative()) {
        return None;
    }
    let lits: Vec<Lit> = left
        .iter()
        .chain(right)
        .copied()
        .filter(|l| l.var() != pivot)
        .collect();
    Clause::new(lits).map(|c| c.lits().to_vec())
}

impl ResolutionProof {
    pub fn new(steps: Vec<ProofStep>) -> ResolutionProof {
        ResolutionProof { steps }
    }

    pub fn steps(&self) -> &[ProofStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of resolution steps.
    pub fn resolutions(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ProofStep::Resolve { .. }))
            .count()
    }

    /// Largest clause in the proof.
    pub fn width(&self) -> usize {
        self.steps.iter().map(|s| s.clause().len()).max().unwrap_or(0)
    }

    /// Whether the last step is the empty clause.
    pub fn is_refutation(&self) -> bool {
        self.steps.last().is_some_and(|s| s.clause().is_empty())
    }

    /// Expands the solver's chains into binary resolution steps and keeps
    /// only what the empty clause depends on.
    pub fn from_log(log: &ProofLog) -> Option<ResolutionProof> {
        let empty = log.empty? as usize;
        let mut needed = vec![false; empty + 1];
        needed[empty] = true;
        for id in (0..=empty).rev() {
            if !needed[id] {
                continue;
            }
            if let LogStep::Chain { start, steps, .. } = &log.steps[id] {
                needed[*start as usize] = true;
                for &(p, _) in steps {
                    needed[p as usize] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; empty + 1];
        let mut out: Vec<ProofStep> = Vec::new();
        for id in 0..=empty {
            if !needed[id] {
                continue;
            }
            match &log.steps[id] {
                LogStep::Axiom { lits, tag } => {
                    out.push(ProofStep::Axiom {
                        clause: lits.clone(),
                        origin: Origin::from_tag(*tag),
                    });
                }
                LogStep::Chain { start, steps, .. } => {
                    let mut cur = map[*start as usize];
                    for &(p, pivot) in steps {
                        let prem = map[p as usize];
                        let (a, b) = (out[cur].clause(), out[prem].clause());
                        let (left, right) = if a.contains(&pivot.positive()) && b.contains(&pivot.negative()) {
                            (cur, prem)
                        } else if a.contains(&pivot.negative()) && b.contains(&pivot.positive()) {
                            (prem, cur)
                        } else {
                            // Already resolved away earlier in the chain.
                            continue;
                        };
                        let clause = resolve(out[left].clause(), out[right].clause(), pivot)
                            .expect("solver chains resolve cleanly");
                        out.push(ProofStep::Resolve {
                            left,
                            right,
                            pivot,
                            clause,
                        });
                        cur = out.len() - 1;
                    }
                    if cur == map[*start as usize] {
                        // A chain with no effective step is just its start.
                        map[id] = cur;
                        continue;
                    }
                }
            }
            map[id] = out.len() - 1;
        }
        let mut proof = ResolutionProof { steps: out };
        let last = map[empty];
        proof.trim(last);
        Some(proof)
    }

    /// Drops steps that `root` does not depend on and makes `root` the last step.
    pub fn trim(&mut self, root: usize) {
        let mut needed = vec![false; root + 1];
        needed[root] = true;
        for i in (0..=root).rev() {
            if needed[i] {
                if let ProofStep::Resolve { left, right, .. } = self.steps[i] {
                    needed[left] = true;
                    needed[right] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; root + 1];
        let mut out = Vec::new();
        for (i, s) in self.steps.iter().take(root + 1).enumerate() {
            if !needed[i] {
                continue;
            }
            let mut s = s.clone();
            if let ProofStep::Resolve { left, right, .. } = &mut s {
                *left = map[*left];
                *right = map[*right];
            }
            map[i] = out.len();
            out.push(s);
        }
        self.steps = out;
    }

    /// Text form: `a <id> <lits> 0 <origin>` and
    /// `r <id> <lits> 0 <left> <right> <pivot>`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let lits: String = step.clause().iter().map(|l| format!("{l} ")).collect();
            match step {
                ProofStep::Axiom { origin, .. } => {
                    let _ = writeln!(s, "a {i} {lits}0 {}", origin.name());
                }
                ProofStep::Resolve {
                    left, right, pivot, ..
                } => {
                    let _ = writeln!(s, "r {i} {lits}0 {left} {right} {pivot}");
                }
            }
        }
        s
    }
}

/// Parses the text form written by [`ResolutionProof::to_text`]. Structure
/// only; use [`check_proof`] for soundness.
pub fn parse_proof(text: &str) -> Result<ResolutionProof, InterpError> {
    let mut steps = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: &str| InterpError::Parse {
            line,
            message: message.to_string(),
        };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            continue;
        }
        let kind = toks[0];
        let id: usize = toks
            .get(1)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err("missing step id"))?;
        if id != steps.len() {
            return Err(err("step ids must be consecutive from 0"));
        }
        let zero = toks[2..]
            .iter()
            .position(|&t| t == "0")
            .ok_or_else(|| err("clause is not terminated by 0"))?
            + 2;
        let mut lits = Vec::new();
        for t in &toks[2..zero] {
            let v: i64 = t.parse().map_err(|_| err("bad literal"))?;
            lits.push(Lit::from_dimacs(v));
        }
        let clause = Clause::new(lits)
            .ok_or_else(|| err("tautological clause"))?
            .lits()
            .to_vec();
        let rest = &toks[zero + 1..];
        match kind {
            "a" => {
                let origin = match rest {
                    ["phi0"] => Origin::Phi0,
                    ["phi1"] => Origin::Phi1,
                    ["shared"] => Origin::Shared,
                    _ => return Err(err("expected origin phi0, phi1 or shared")),
                };
                steps.push(ProofStep::Axiom { clause, origin });
            }
            "r" => {
                let nums: Vec<u64> = rest
                    .iter()
                    .map(|t| t.parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| err("bad premise or pivot"))?;
                let [left, right, pivot] = nums[..] else {
                    return Err(err("expected <left> <right> <pivot>"));
                };
                if left as usize >= id || right as usize >= id || pivot == 0 {
                    return Err(err("premises must precede the step; pivot must be a variable"));
                }
                steps.push(ProofStep::Resolve {
                    left: left as usize,
                    right: right as usize,
                    pivot: Var::new(pivot as u32),
                    clause,
                });
            }
            _ => return Err(err("expected 'a' or 'r'")),
        }
    }
    Ok(ResolutionProof { steps })
}

/// Every axiom is a clause of `cnf`, every resolvent is exact, and the last
/// step is the empty clause.
pub fn check_proof(cnf: &Cnf, proof: &ResolutionProof) -> Result<(), BadStep> {
    let axioms: HashSet<&[Lit]> = cnf.clauses().iter().map(|c| c.lits()).collect();
    for (i, step) in proof.steps.iter().enumerate() {
        let bad = |reason: &str| BadStep {
            index: i,
            reason: reason.to_string(),
        };
        match step {
            ProofStep::Axiom { clause, .. } => {
                if !axioms.contains(clause.as_slice()) {
                    return Err(bad("axiom is not a clause of the formula"));
                }
            }
            ProofStep::Resolve {
                left,
                right,
                pivot,
                clause,
            } => {
                if *left >= i || *right >= i {
                    return Err(bad("premise does not precede the step"));
                }
                let want = resolve(proof.steps[*left].clause(), proof.steps[*right].clause(), *pivot);
                if want.as_deref() != Some(clause.as_slice()) {
                    return Err(bad("resolvent does not match its premises and pivot"));
                }
            }
        }
    }
    if !proof.is_refutation() {
        return Err(BadStep {
            index: proof.steps.len(),
            reason: "no empty clause at the end".into(),
        });
    }
    Ok(())
}

/// Solves with the proof-logging engine; all axioms are `Shared`.
pub fn solve_with_proof(cnf: &Cnf, limits: &Limits) -> Result<ProofOutcome, InterpError> {
    solve_tagged(cnf.num_vars(), cnf.clauses().iter().map(|c| (c.lits(), Origin::Shared)), limits)
}

pub(crate) fn solve_tagged<'a>(
    num_vars: u32,
    clauses: impl IntoIterator<Item = (&'a [Lit], Origin)>,
    limits: &Limits,
) -> Result<ProofOutcome, InterpError> {
    let mut s = Solver::with_proof();
    s.ensure_vars(num_vars as usize);
    for (lits, origin) in clauses {
        s.add_clause_tagged(lits, origin.tag());
    }
    if s.solve_limited(&[], limits)? {
        let model = s.model().to_vec();
        return Ok(ProofOutcome::Sat(Assignment::from_model(&model)));
    }
    let log = s.take_proof().expect("proof logging was on");
    let proof = ResolutionProof::from_log(&log).expect("unsat with logging yields a refutation");
    Ok(ProofOutcome::Unsat(proof))
}
