//! Checking candidate Skolem vectors with the error formula, and deciding
//! whether an output is uniquely defined by a set of variables.

use serde::Serialize;
use thiserror::Error;

use crate::formula::{
    assert_equiv, assert_value, encode_gates, encode_outputs, Assignment, Cnf, Encoded,
    FormulaError, SkolemVector, Specification, Var,
};
use crate::oracle::{Oracle, OracleError, OracleResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Outcome of [`verify_skolem`]. A counterexample `(x, y)` has
/// `F(x, y) = 1` and `F(x, Ψ(x)) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Counterexample(Assignment),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictStatus {
    Valid,
    Counterexample,
}

impl From<&Verdict> for VerdictStatus {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Valid => VerdictStatus::Valid,
            Verdict::Counterexample(_) => VerdictStatus::Counterexample,
        }
    }
}

/// `E(X, Y, Y') = F(X, Y) ∧ ¬F(X, Y') ∧ (Y' ↔ Ψ(X))` with the copies `Y'`.
#[derive(Clone, Debug)]
pub struct ErrorFormula {
    pub cnf: Cnf,
    pub y_prime: Vec<Var>,
}

/// Builds the error formula. `¬F` is the Tseitin encoding of the matrix
/// circuit with its output asserted false.
pub fn build_error_formula(
    spec: &Specification,
    candidate: &SkolemVector,
) -> Result<ErrorFormula, FormulaError> {
    spec.check_vector(candidate)?;
    let mut cnf = spec.cnf().clone();
    let y_prime: Vec<Var> = spec.outputs().iter().map(|_| cnf.new_var()).collect();
    let composed = candidate.composed();
    let psi = encode_outputs(&mut cnf, &composed, |v| Encoded::Lit(v.positive()));
    for (&yp, e) in y_prime.iter().zip(psi) {
        assert_equiv(&mut cnf, yp.positive(), e);
    }
    let rename = |v: Var| match spec.outputs().iter().position(|&y| y == v) {
        Some(i) => Encoded::Lit(y_prime[i].positive()),
        None => Encoded::Lit(v.positive()),
    };
    let gates = encode_gates(&mut cnf, spec.matrix(), rename);
    assert_value(&mut cnf, gates[spec.matrix().output().index()], false);
    Ok(ErrorFormula { cnf, y_prime })
}

/// Valid iff the error formula is unsatisfiable; otherwise returns the
/// model projected to `X ∪ Y`.
pub fn verify_skolem(
    spec: &Specification,
    candidate: &SkolemVector,
    oracle: &Oracle,
) -> Result<Verdict, VerifyError> {
    let e = build_error_formula(spec, candidate)?;
    Ok(match oracle.solve(&e.cnf, &Assignment::new())? {
        OracleResult::Unsat => Verdict::Valid,
        OracleResult::Sat(m) => Verdict::Counterexample(m.project(&spec.io_vars())),
    })
}

/// Whether output `i` (0-based) is uniquely defined in terms of `z`:
/// `F(X,Y) ∧ F(X̂,Ŷ) ∧ (Z = Ẑ) ∧ (Y_i ≠ Ŷ_i)` is unsatisfiable.
pub fn check_unique(
    spec: &Specification,
    i: usize,
    z: &[Var],
    oracle: &Oracle,
) -> Result<bool, VerifyError> {
    Ok(uniqueness_witness(spec, i, z, oracle)?.is_none())
}

/// Two models over `X ∪ Y` agreeing on `z` but differing on output `i`, if any.
pub fn uniqueness_witness(
    spec: &Specification,
    i: usize,
    z: &[Var],
    oracle: &Oracle,
) -> Result<Option<(Assignment, Assignment)>, VerifyError> {
    let yi = *spec.outputs().get(i).ok_or_else(|| {
        FormulaError::Malformed(format!("output index {i} out of range"))
    })?;
    let io = spec.io_vars();
    for &v in z {
        if v == yi || !io.contains(&v) {
            return Err(FormulaError::Malformed(format!(
                "variable {v} is not an input or another output"
            ))
            .into());
        }
    }
    let n = spec.num_vars();
    let shift = |v: Var| Var::new(v.id() + n);
    let mut cnf = spec.cnf().clone();
    cnf.extend(&spec.cnf().rename(2 * n, shift));
    cnf.declare(Var::new(2 * n));
    for &v in z {
        cnf.add_clause([v.positive(), shift(v).negative()]);
        cnf.add_clause([v.negative(), shift(v).positive()]);
    }
    cnf.add_clause([yi.positive(), shift(yi).positive()]);
    cnf.add_clause([yi.negative(), shift(yi).negative()]);
    Ok(match oracle.solve(&cnf, &Assignment::new())? {
        OracleResult::Unsat => None,
        OracleResult::Sat(m) => {
            let first = m.project(&io);
            let second = Assignment::from_pairs(io.iter().map(|&v| (v, m.get(shift(v)).unwrap())));
            Some((first, second))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{Circuit, CircuitBuilder};

    fn v(i: u32) -> Var {
        Var::new(i)
    }

    fn copy_spec() -> Specification {
        let mut b = CircuitBuilder::new();
        let (x, y) = (b.input(v(1)), b.input(v(2)));
        let f = b.xnor(x, y);
        Specification::from_circuit(vec![v(1)], vec![v(2)], b.finish1(f)).unwrap()
    }

    #[test]
    fn identity_is_valid_negation_is_not() {
        let spec = copy_spec();
        let o = Oracle::internal();
        let id = SkolemVector::new(vec![v(1)], vec![v(2)], vec![Circuit::input(v(1))]).unwrap();
        assert_eq!(verify_skolem(&spec, &id, &o).unwrap(), Verdict::Valid);
        let mut b = CircuitBuilder::new();
        let nx = b.literal(v(1), false);
        let neg = SkolemVector::new(vec![v(1)], vec![v(2)], vec![b.finish1(nx)]).unwrap();
        let Verdict::Counterexample(w) = verify_skolem(&spec, &neg, &o).unwrap() else {
            panic!("expected a counterexample");
        };
        assert_eq!(w.get(v(1)), w.get(v(2)));
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn unique_definedness() {
        let spec = copy_spec();
        let o = Oracle::internal();
        assert!(check_unique(&spec, 0, &[v(1)], &o).unwrap());
        assert!(!check_unique(&spec, 0, &[], &o).unwrap());
        // F = Y1 ∨ Y2: Y1 is not determined by {X, Y2}.
        let mut b = CircuitBuilder::new();
        let (y1, y2) = (b.input(v(2)), b.input(v(3)));
        let f = b.or(y1, y2);
        let spec = Specification::from_circuit(vec![v(1)], vec![v(2), v(3)], b.finish1(f)).unwrap();
        assert!(!check_unique(&spec, 0, &[v(1), v(3)], &o).unwrap());
        assert!(check_unique(&spec, 0, &[v(1), v(2)], &o).is_err());
    }
}
