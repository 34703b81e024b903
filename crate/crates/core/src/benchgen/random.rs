use rand::Rng;

use super::BenchError;
use crate::formula::{CircuitBuilder, Cnf, GateRef, Lit, Specification, Var};
use crate::oracle::stream;

/// A conjunction of `clauses` random 3-literal clauses over `X ∪ Y`, each
/// with at least one output literal.
pub fn gen_random_spec(n: usize, m: usize, clauses: usize, seed: u64) -> Result<Specification, BenchError> {
    if m == 0 || n + m < 3 {
        return Err(BenchError::InvalidParams(format!(
            "need m >= 1 and n + m >= 3, got n={n}, m={m}"
        )));
    }
    let mut rng = stream(seed, "random-spec", 0);
    let xs: Vec<Var> = (1..=n as u32).map(Var::new).collect();
    let ys: Vec<Var> = (n as u32 + 1..=(n + m) as u32).map(Var::new).collect();
    let mut b = CircuitBuilder::new();
    let mut terms: Vec<GateRef> = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let mut vars = vec![ys[rng.random_range(0..m)]];
        while vars.len() < 3 {
            let v = Var::new(rng.random_range(1..=(n + m) as u32));
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let lits: Vec<GateRef> = vars.iter().map(|&v| b.literal(v, rng.random())).collect();
        terms.push(b.or_all(lits));
    }
    let f = b.and_all(terms);
    Ok(Specification::from_circuit(xs, ys, b.finish1(f))?)
}

/// A uniformly random 3-CNF.
pub fn gen_random_cnf(vars: u32, clauses: usize, seed: u64) -> Cnf {
    assert!(vars >= 3);
    let mut rng = stream(seed, "random-cnf", 0);
    let mut cnf = Cnf::new(vars);
    for _ in 0..clauses {
        let mut picked: Vec<Var> = Vec::with_capacity(3);
        while picked.len() < 3 {
            let v = Var::new(rng.random_range(1..=vars));
            if !picked.contains(&v) {
                picked.push(v);
            }
        }
        cnf.add_clause(picked.into_iter().map(|v| Lit::new(v, rng.random())));
    }
    cnf
}
