use super::pool::CandidatePool;
use crate::formula::{Circuit, CircuitBuilder, GateRef};

/// Pointwise majority of the pool. An even pool is padded with a copy of
/// its first circuit so that ties cannot occur.
pub fn majority_hypothesis(pool: &CandidatePool) -> Circuit {
    majority_of(&pool.circuits)
}

pub(crate) fn majority_of(circuits: &[Circuit]) -> Circuit {
    assert!(!circuits.is_empty(), "majority of an empty pool");
    let mut b = CircuitBuilder::new();
    let mut votes: Vec<GateRef> = circuits
        .iter()
        .map(|c| b.import1(c, |b, v| b.input(v)))
        .collect();
    if votes.len() % 2 == 0 {
        votes.push(votes[0]);
    }
    let need = votes.len() / 2 + 1;
    // at_least[t]: at least t of the votes seen so far are 1.
    let one = b.constant(true);
    let zero = b.constant(false);
    let mut at_least = vec![zero; need + 1];
    at_least[0] = one;
    for g in votes {
        for t in (1..=need).rev() {
            let step = b.and(g, at_least[t - 1]);
            at_least[t] = b.or(at_least[t], step);
        }
    }
    b.finish1(at_least[need])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Var;

    #[test]
    fn small_majorities() {
        let x = Var::new(1);
        let pos = Circuit::input(x);
        let mut b = CircuitBuilder::new();
        let g = b.input(x);
        let ng = b.not(g);
        let neg = b.finish1(ng);
        let m = majority_of(&[pos.clone(), neg.clone(), pos.clone()]);
        for v in [false, true] {
            assert_eq!(m.eval1(|_| v), v);
        }
        // Even pool: padding with the first circuit breaks the tie.
        let m = majority_of(&[neg, pos]);
        for v in [false, true] {
            assert_eq!(m.eval1(|_| v), !v);
        }
    }
}
