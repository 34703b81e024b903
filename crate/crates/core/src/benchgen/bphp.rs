use serde::Serialize;

use super::BenchError;
use crate::formula::{bits_msb_first, CircuitBuilder, Cnf, GateRef, Lit, SkolemVector, Specification, Var};
use crate::interplab::InterpolationInstance;

/// Parameter regime of a pigeonhole instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BphpRegime {
    /// `n = k·m` with `m = ⌈log2 n⌉ − 1`.
    LogTight,
    /// `k = 2^m + 1`, so the pigeons cannot all be placed apart.
    Interpolation,
    /// No constraint beyond `k ≥ 2`, `m ≥ 1`.
    Any,
}

/// `k` pigeons, each given an `m`-bit hole address.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BphpParams {
    pub k: usize,
    pub m: usize,
    pub regime: BphpRegime,
}

impl BphpParams {
    pub fn new(k: usize, m: usize, regime: BphpRegime) -> Result<BphpParams, BenchError> {
        if k < 2 || m < 1 || m > 16 {
            return Err(BenchError::InvalidParams(format!("need k >= 2 and 1 <= m <= 16, got k={k}, m={m}")));
        }
        match regime {
            BphpRegime::LogTight => {
                let n = k * m;
                let log = usize::BITS - (n - 1).leading_zeros(); // ⌈log2 n⌉
                if m + 1 != log as usize {
                    return Err(BenchError::InvalidParams(format!(
                        "log-tight regime needs m = ceil(log2(k*m)) - 1, got k={k}, m={m}"
                    )));
                }
            }
            BphpRegime::Interpolation => {
                if k != (1 << m) + 1 {
                    return Err(BenchError::InvalidParams(format!(
                        "interpolation regime needs k = 2^m + 1, got k={k}, m={m}"
                    )));
                }
            }
            BphpRegime::Any => {}
        }
        Ok(BphpParams { k, m, regime })
    }

    /// Pigeon `i` (0-based), address bit `j` (0-based, most significant first).
    pub fn x(&self, i: usize, j: usize) -> Var {
        Var::new((i * self.m + j + 1) as u32)
    }

    /// Output bit `j` (0-based).
    pub fn y(&self, j: usize) -> Var {
        Var::new((self.k * self.m + j + 1) as u32)
    }

    pub fn inputs(&self) -> Vec<Var> {
        (0..self.k).flat_map(|i| (0..self.m).map(move |j| self.x(i, j))).collect()
    }

    pub fn outputs(&self) -> Vec<Var> {
        (0..self.m).map(|j| self.y(j)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Bphp {
    pub params: BphpParams,
    pub spec: Specification,
    /// `¬F` as `2^m · k(k−1)/2` clauses of width `3m`: for every hole `b`
    /// and pair of pigeons, not both in `b` with `Y = b`.
    pub negation: Cnf,
}

/// `F(X, Y)`: `Y` names a hole that holds at least two pigeons.
pub fn gen_bphp(p: BphpParams) -> Bphp {
    let mut b = CircuitBuilder::new();
    let ys: Vec<GateRef> = p.outputs().into_iter().map(|v| b.input(v)).collect();
    // at[i]: pigeon i sits in hole Y.
    let at: Vec<GateRef> = (0..p.k)
        .map(|i| {
            let eqs: Vec<GateRef> = (0..p.m)
                .map(|j| {
                    let x = b.input(p.x(i, j));
                    b.xnor(x, ys[j])
                })
                .collect();
            b.and_all(eqs)
        })
        .collect();
    let mut pairs = Vec::new();
    for i1 in 0..p.k {
        for i2 in i1 + 1..p.k {
            pairs.push(b.and(at[i1], at[i2]));
        }
    }
    let f = b.or_all(pairs);
    let spec = Specification::from_circuit(p.inputs(), p.outputs(), b.finish1(f)).expect("variables are declared");

    let mut negation = Cnf::new((p.k * p.m + p.m) as u32);
    for hole in 0..1u64 << p.m {
        let bits = bits_msb_first(hole, p.m);
        for i1 in 0..p.k {
            for i2 in i1 + 1..p.k {
                let clause: Vec<Lit> = (0..p.m)
                    .flat_map(|j| {
                        let off = |v: Var| v.lit(!bits[j]);
                        [off(p.x(i1, j)), off(p.x(i2, j)), off(p.y(j))]
                    })
                    .collect();
                negation.add_clause(clause);
            }
        }
    }
    Bphp {
        params: p,
        spec,
        negation,
    }
}

/// Skolem functions picking the smallest hole (`Y_1` most significant)
/// holding two pigeons; all zeros when there is no collision.
pub fn bphp_lexfirst_skolem(p: BphpParams) -> SkolemVector {
    let mut b = CircuitBuilder::new();
    let mut seen = b.constant(false);
    let mut ones: Vec<Vec<GateRef>> = vec![Vec::new(); p.m];
    for hole in 0..1u64 << p.m {
        let bits = bits_msb_first(hole, p.m);
        let at: Vec<GateRef> = (0..p.k)
            .map(|i| {
                let lits: Vec<GateRef> = (0..p.m).map(|j| b.literal(p.x(i, j), bits[j])).collect();
                b.and_all(lits)
            })
            .collect();
        let mut pairs = Vec::new();
        for i1 in 0..p.k {
            for i2 in i1 + 1..p.k {
                pairs.push(b.and(at[i1], at[i2]));
            }
        }
        let collision = b.or_all(pairs);
        let fresh = b.not(seen);
        let first = b.and(collision, fresh);
        seen = b.or(seen, collision);
        for j in 0..p.m {
            if bits[j] {
                ones[j].push(first);
            }
        }
    }
    let outs = ones.into_iter().map(|g| b.or_all(g)).collect();
    let all = b.finish(outs);
    let psis = (0..p.m).map(|j| all.cone(j)).collect();
    SkolemVector::new(p.inputs(), p.outputs(), psis).expect("functions read inputs only")
}

/// Size bound for [`bphp_lexfirst_skolem`]: `2^m · (2km + k(k−1) + m + 3)`.
pub fn bphp_lexfirst_size_bound(p: BphpParams) -> usize {
    (1 << p.m) * (2 * p.k * p.m + p.k * (p.k - 1) + p.m + 3)
}

/// The pair for the first output with the later outputs expanded away:
/// `φ0` says no hole with first address bit 0 holds two pigeons, `φ1` the
/// same for first bit 1. Both sides share all of X; A and B are empty.
/// Unsatisfiable exactly when `k > 2^m`.
pub fn bphp_interpolation_pair(p: BphpParams) -> InterpolationInstance {
    let nv = (p.k * p.m) as u32;
    let mut sides = [Cnf::new(nv), Cnf::new(nv)];
    for hole in 0..1u64 << p.m {
        let bits = bits_msb_first(hole, p.m);
        for i1 in 0..p.k {
            for i2 in i1 + 1..p.k {
                let clause: Vec<Lit> = (0..p.m)
                    .flat_map(|j| [p.x(i1, j).lit(!bits[j]), p.x(i2, j).lit(!bits[j])])
                    .collect();
                sides[bits[0] as usize].add_clause(clause);
            }
        }
    }
    let [phi0, phi1] = sides;
    InterpolationInstance::new(phi0, phi1, vec![], vec![], p.inputs()).expect("sides only mention X")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes() {
        assert!(BphpParams::new(3, 1, BphpRegime::Interpolation).is_ok());
        assert!(BphpParams::new(4, 1, BphpRegime::Interpolation).is_err());
        assert!(BphpParams::new(3, 1, BphpRegime::LogTight).is_ok());
        assert!(BphpParams::new(4, 2, BphpRegime::LogTight).is_ok());
        assert!(BphpParams::new(5, 2, BphpRegime::LogTight).is_err());
    }

    #[test]
    fn negation_shape() {
        let p = BphpParams::new(3, 2, BphpRegime::Any).unwrap();
        let g = gen_bphp(p);
        assert_eq!(g.negation.len(), 12);
        assert!(g.negation.clauses().iter().all(|c| c.len() == 6));
    }
}
