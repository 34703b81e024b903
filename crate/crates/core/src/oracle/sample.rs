use rand::Rng;

use super::{stream, ClauseSink, Oracle, OracleError, OracleResult, Session, XorConstraint};
use crate::formula::{Assignment, Cnf, Lit, Var};

/// Projected models enumerated per hash cell before drawing one.
pub const SAMPLE_CELL_CAP: usize = 64;
/// Retries, one hash bit fewer each, after an empty cell.
pub const SAMPLE_RETRIES: u32 = 8;

/// Conjoins `hash_bits` random XOR constraints over `proj` and returns a
/// uniformly chosen model from the resulting cell (enumerated up to
/// [`SAMPLE_CELL_CAP`] projected points). An empty cell yields `Unsat`.
pub fn sample_projected(
    oracle: &Oracle,
    cnf: &Cnf,
    proj: &[Var],
    hash_bits: u32,
    seed: u64,
) -> Result<OracleResult, OracleError> {
    let mut s = oracle.session(cnf);
    Ok(
        match sample_session(&mut s, proj, &[], hash_bits, seed, 0, cnf.num_vars())? {
            Some(a) => OracleResult::Sat(a),
            None => OracleResult::Unsat,
        },
    )
}

/// [`sample_projected`] with up to [`SAMPLE_RETRIES`] retries on an empty
/// cell, each with one hash bit fewer. `Unsat` is final only once a
/// hash-free query failed.
pub fn sample_with_retry(
    oracle: &Oracle,
    cnf: &Cnf,
    proj: &[Var],
    hash_bits: u32,
    seed: u64,
) -> Result<OracleResult, OracleError> {
    let mut s = oracle.session(cnf);
    Ok(
        match sample_session_retry(&mut s, proj, &[], hash_bits, seed, cnf.num_vars())? {
            Some(a) => OracleResult::Sat(a),
            None => OracleResult::Unsat,
        },
    )
}

pub(crate) fn sample_session_retry(
    s: &mut Session,
    proj: &[Var],
    assumptions: &[Lit],
    hash_bits: u32,
    seed: u64,
    report_vars: u32,
) -> Result<Option<Assignment>, OracleError> {
    let mut bits = hash_bits;
    for attempt in 0..=SAMPLE_RETRIES {
        if let Some(a) = sample_session(s, proj, assumptions, bits, seed, attempt as u64, report_vars)? {
            return Ok(Some(a));
        }
        if bits == 0 {
            return Ok(None);
        }
        bits -= 1;
    }
    if bits > 0 {
        // Retries exhausted with hashing still on: a last plain attempt decides.
        return sample_session(s, proj, assumptions, 0, seed, SAMPLE_RETRIES as u64 + 1, report_vars);
    }
    Ok(None)
}

/// One sampling attempt in `s`. The returned model covers variables
/// `1..=report_vars`.
pub(crate) fn sample_session(
    s: &mut Session,
    proj: &[Var],
    assumptions: &[Lit],
    hash_bits: u32,
    seed: u64,
    attempt: u64,
    report_vars: u32,
) -> Result<Option<Assignment>, OracleError> {
    let mut rng = stream(seed, "sample", attempt);
    let act = s.fresh_var().positive();
    for _ in 0..hash_bits {
        XorConstraint::random(proj, &mut rng).encode(s, Some(act));
    }
    let mut assume = assumptions.to_vec();
    assume.push(act);
    let mut cell: Vec<Assignment> = Vec::new();
    while cell.len() < SAMPLE_CELL_CAP && s.solve(&assume)? {
        cell.push(Assignment::from_pairs(
            (1..=report_vars).map(|v| (Var::new(v), s.value(Var::new(v)))),
        ));
        let mut block: Vec<Lit> = proj.iter().map(|&v| v.lit(!s.value(v))).collect();
        block.push(!act);
        s.add(&block);
    }
    s.add(&[!act]);
    if cell.is_empty() {
        return Ok(None);
    }
    let pick = rng.random_range(0..cell.len());
    Ok(Some(cell.swap_remove(pick)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_bits_is_a_plain_solve() {
        let o = Oracle::internal();
        let mut cnf = Cnf::new(2);
        cnf.add_clause([Var::new(1).positive()]);
        let r = sample_projected(&o, &cnf, &[Var::new(1), Var::new(2)], 0, 5).unwrap();
        let a = r.model().unwrap();
        assert!(cnf.is_satisfied_by(a));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn unsat_stays_unsat_after_retries() {
        let o = Oracle::internal();
        let mut cnf = Cnf::new(1);
        cnf.add_clause([Var::new(1).positive()]);
        cnf.add_clause([Var::new(1).negative()]);
        assert_eq!(sample_with_retry(&o, &cnf, &[Var::new(1)], 4, 0).unwrap(), OracleResult::Unsat);
    }
}
