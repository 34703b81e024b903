use std::collections::HashSet;

use super::proof::{solve_tagged, Origin, ProofOutcome, ProofStep, ResolutionProof};
use super::InterpError;
use crate::formula::{Circuit, CircuitBuilder, Cnf, GateRef, Lit, Var};
use crate::oracle::solver::Limits;

/// Gates added per proof step at most (a multiplexer with its NOT).
pub const INTERPOLANT_GATES_PER_STEP: usize = 4;

/// `φ0(A, C)` and `φ1(B, C)` with the variable partition.
#[derive(Clone, Debug)]
pub struct InterpolationInstance {
    phi0: Cnf,
    phi1: Cnf,
    a: Vec<Var>,
    b: Vec<Var>,
    c: Vec<Var>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
    C,
}

impl InterpolationInstance {
    /// Checks that `A`, `B`, `C` are disjoint, that `φ0` only mentions
    /// `A ∪ C` and `φ1` only `B ∪ C`.
    pub fn new(phi0: Cnf, phi1: Cnf, a: Vec<Var>, b: Vec<Var>, c: Vec<Var>) -> Result<Self, InterpError> {
        let mut seen = HashSet::new();
        for &v in a.iter().chain(&b).chain(&c) {
            if !seen.insert(v) {
                return Err(InterpError::BadPartition(v));
            }
        }
        let inst = InterpolationInstance { phi0, phi1, a, b, c };
        for (cnf, other) in [(&inst.phi0, Side::B), (&inst.phi1, Side::A)] {
            for cl in cnf.clauses() {
                for l in cl.lits() {
                    match inst.side(l.var()) {
                        Some(s) if s != other => {}
                        _ => return Err(InterpError::BadPartition(l.var())),
                    }
                }
            }
        }
        Ok(inst)
    }

    pub fn phi0(&self) -> &Cnf {
        &self.phi0
    }

    pub fn phi1(&self) -> &Cnf {
        &self.phi1
    }

    pub fn a(&self) -> &[Var] {
        &self.a
    }

    pub fn b(&self) -> &[Var] {
        &self.b
    }

    pub fn c(&self) -> &[Var] {
        &self.c
    }

    pub fn num_vars(&self) -> u32 {
        self.phi0.num_vars().max(self.phi1.num_vars())
    }

    /// `φ0 ∧ φ1` as one CNF.
    pub fn combined(&self) -> Cnf {
        let mut cnf = self.phi0.clone();
        cnf.extend(&self.phi1);
        cnf
    }

    fn side(&self, v: Var) -> Option<Side> {
        if self.c.contains(&v) {
            Some(Side::C)
        } else if self.a.contains(&v) {
            Some(Side::A)
        } else if self.b.contains(&v) {
            Some(Side::B)
        } else {
            None
        }
    }
}

/// Refutes `φ0 ∧ φ1` with axioms labeled by side; a model is returned when
/// the pair is satisfiable.
pub fn refute_instance(inst: &InterpolationInstance, limits: &Limits) -> Result<ProofOutcome, InterpError> {
    let clauses = inst
        .phi0
        .clauses()
        .iter()
        .map(|c| (c.lits(), Origin::Phi0))
        .chain(inst.phi1.clauses().iter().map(|c| (c.lits(), Origin::Phi1)));
    solve_tagged(inst.num_vars(), clauses, limits)
}

/// Symmetric interpolant over `C`: `φ0` axioms give 0, `φ1` axioms give 1,
/// resolving on an `A` variable ORs the premises, on a `B` variable ANDs
/// them, and on a `C` variable `p` selects `p ? right : left`.
pub fn extract_interpolant(inst: &InterpolationInstance, proof: &ResolutionProof) -> Result<Circuit, InterpError> {
    if !proof.is_refutation() {
        return Err(InterpError::NotARefutation);
    }
    let set = |cnf: &Cnf| -> HashSet<Vec<Lit>> { cnf.clauses().iter().map(|c| c.lits().to_vec()).collect() };
    let (in0, in1) = (set(&inst.phi0), set(&inst.phi1));
    let mut b = CircuitBuilder::new();
    let mut img: Vec<GateRef> = Vec::with_capacity(proof.len());
    for (i, step) in proof.steps().iter().enumerate() {
        let g = match step {
            ProofStep::Axiom { clause, origin } => {
                let value = match origin {
                    Origin::Phi0 if in0.contains(clause) => false,
                    Origin::Phi1 if in1.contains(clause) => true,
                    Origin::Shared if in0.contains(clause) => false,
                    Origin::Shared if in1.contains(clause) => true,
                    _ => return Err(InterpError::MislabeledAxiom { step: i }),
                };
                b.constant(value)
            }
            ProofStep::Resolve {
                left, right, pivot, ..
            } => {
                let (l, r) = (img[*left], img[*right]);
                match inst.side(*pivot) {
                    Some(Side::A) => b.or(l, r),
                    Some(Side::B) => b.and(l, r),
                    Some(Side::C) => {
                        let p = b.input(*pivot);
                        b.mux(p, r, l)
                    }
                    None => return Err(InterpError::PivotOutsidePartition { step: i, var: *pivot }),
                }
            }
        };
        img.push(g);
    }
    Ok(b.finish1(*img.last().expect("refutations are nonempty")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: i64) -> Lit {
        Lit::from_dimacs(v)
    }

    #[test]
    fn small_pair_gives_c() {
        // φ0 = (a), (¬a ∨ c); φ1 = (¬c). a = 1, c = 2.
        let mut p0 = Cnf::new(2);
        p0.add_clause([l(1)]);
        p0.add_clause([l(-1), l(2)]);
        let mut p1 = Cnf::new(2);
        p1.add_clause([l(-2)]);
        let inst = InterpolationInstance::new(p0, p1, vec![Var::new(1)], vec![], vec![Var::new(2)]).unwrap();
        let ProofOutcome::Unsat(proof) = refute_instance(&inst, &Limits::none()).unwrap() else {
            panic!("expected unsat");
        };
        let i = extract_interpolant(&inst, &proof).unwrap();
        assert!(!i.eval1(|_| false));
        assert!(i.eval1(|_| true));
    }

    #[test]
    fn partition_violations() {
        let mut p0 = Cnf::new(2);
        p0.add_clause([l(2)]);
        let p1 = Cnf::new(2);
        let e = InterpolationInstance::new(p0, p1, vec![Var::new(1)], vec![Var::new(2)], vec![]).unwrap_err();
        assert_eq!(e, InterpError::BadPartition(Var::new(2)));
    }
}
