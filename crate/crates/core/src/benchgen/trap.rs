use rand::Rng;
use serde::Serialize;

use super::BenchError;
use crate::formula::{Circuit, CircuitBuilder, GateRef, SkolemVector, Specification, Var};
use crate::oracle::stream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrapParams {
    pub n: usize,
    /// Output bits, even and at least 4; split into two blocks of `m/2`.
    pub m: usize,
    /// How many leading X bits the table `h` reads.
    pub window_bits: usize,
    pub seed: u64,
}

impl TrapParams {
    pub fn new(n: usize, m: usize, window_bits: usize, seed: u64) -> Result<TrapParams, BenchError> {
        if m < 4 || m % 2 != 0 || m > 16 {
            return Err(BenchError::InvalidParams(format!("m must be even, 4..=16, got {m}")));
        }
        if n == 0 || window_bits > 12 || window_bits > n {
            return Err(BenchError::InvalidParams(format!(
                "need n >= 1 and window <= min(n, 12), got n={n}, window={window_bits}"
            )));
        }
        Ok(TrapParams {
            n,
            m,
            window_bits,
            seed,
        })
    }

    pub fn half(&self) -> usize {
        self.m / 2
    }

    pub fn inputs(&self) -> Vec<Var> {
        (1..=self.n as u32).map(Var::new).collect()
    }

    pub fn first_block(&self) -> Vec<Var> {
        (0..self.half()).map(|j| Var::new((self.n + j + 1) as u32)).collect()
    }

    pub fn second_block(&self) -> Vec<Var> {
        (0..self.half())
            .map(|j| Var::new((self.n + self.half() + j + 1) as u32))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Trap {
    pub params: TrapParams,
    pub spec: Specification,
    /// The distinguished first block.
    pub s: Vec<bool>,
    /// `h` as a table: row `window · 2^(m/2) + y1` (both read most
    /// significant bit first) holds `m/2` bits.
    pub table: Vec<Vec<bool>>,
    /// `s` followed by `c(X)`.
    pub small_vector: SkolemVector,
}

impl Trap {
    /// `c(x)`: bit `j` is the parity of the inputs at positions `≡ j mod m/2`.
    pub fn c(&self, x: &[bool]) -> Vec<bool> {
        let h = self.params.half();
        (0..h)
            .map(|j| x.iter().enumerate().filter(|(t, _)| t % h == j).fold(false, |a, (_, &b)| a ^ b))
            .collect()
    }

    pub fn h(&self, x: &[bool], y1: &[bool]) -> Vec<bool> {
        let mut row = 0usize;
        for &b in x[..self.params.window_bits].iter().chain(y1) {
            row = (row << 1) | b as usize;
        }
        self.table[row].clone()
    }
}

/// `F(x, (y1, y2)) = [y1 = s ∧ y2 = c(x)] ∨ [y1 ≠ s ∧ y2 = h(window(x), y1)]`.
pub fn gen_trap(p: TrapParams) -> Trap {
    let half = p.half();
    let mut rng = stream(p.seed, "trap", 0);
    let s: Vec<bool> = (0..half).map(|_| rng.random()).collect();
    let rows = 1usize << (p.window_bits + half);
    let table: Vec<Vec<bool>> = (0..rows).map(|_| (0..half).map(|_| rng.random()).collect()).collect();

    let xs = p.inputs();
    let (y1v, y2v) = (p.first_block(), p.second_block());
    let mut b = CircuitBuilder::new();
    let x: Vec<GateRef> = xs.iter().map(|&v| b.input(v)).collect();
    let y1: Vec<GateRef> = y1v.iter().map(|&v| b.input(v)).collect();
    let y2: Vec<GateRef> = y2v.iter().map(|&v| b.input(v)).collect();

    let c = parity_blocks(&mut b, &x, half);
    let s_bits: Vec<GateRef> = s.iter().map(|&bit| b.constant(bit)).collect();
    let is_s = equal(&mut b, &y1, &s_bits);
    let y2_is_c = equal(&mut b, &y2, &c);
    let left = b.and(is_s, y2_is_c);

    let selectors: Vec<GateRef> = x[..p.window_bits].iter().chain(&y1).copied().collect();
    let hv: Vec<GateRef> = (0..half)
        .map(|j| {
            let leaves: Vec<bool> = table.iter().map(|row| row[j]).collect();
            mux_tree(&mut b, &selectors, &leaves)
        })
        .collect();
    let y2_is_h = equal(&mut b, &y2, &hv);
    let not_s = b.not(is_s);
    let right = b.and(not_s, y2_is_h);
    let f = b.or(left, right);
    let outputs: Vec<Var> = y1v.iter().chain(&y2v).copied().collect();
    let spec = Specification::from_circuit(xs.clone(), outputs.clone(), b.finish1(f)).expect("declared");

    let mut psis: Vec<Circuit> = s.iter().map(|&bit| Circuit::constant(bit)).collect();
    let mut cb = CircuitBuilder::new();
    let cx: Vec<GateRef> = xs.iter().map(|&v| cb.input(v)).collect();
    let cg = parity_blocks(&mut cb, &cx, half);
    let all = cb.finish(cg);
    psis.extend((0..half).map(|j| all.cone(j)));
    let small_vector = SkolemVector::new(xs, outputs, psis).expect("reads inputs only");
    Trap {
        params: p,
        spec,
        s,
        table,
        small_vector,
    }
}

fn parity_blocks(b: &mut CircuitBuilder, x: &[GateRef], half: usize) -> Vec<GateRef> {
    (0..half)
        .map(|j| {
            let mut acc = b.constant(false);
            for t in (j..x.len()).step_by(half) {
                acc = b.xor(acc, x[t]);
            }
            acc
        })
        .collect()
}

fn equal(b: &mut CircuitBuilder, u: &[GateRef], v: &[GateRef]) -> GateRef {
    let eqs: Vec<GateRef> = u.iter().zip(v).map(|(&p, &q)| b.xnor(p, q)).collect();
    b.and_all(eqs)
}

/// Table lookup; `sel[0]` is the most significant index bit.
fn mux_tree(b: &mut CircuitBuilder, sel: &[GateRef], leaves: &[bool]) -> GateRef {
    match sel.split_first() {
        None => b.constant(leaves[0]),
        Some((&top, rest)) => {
            let half = leaves.len() / 2;
            let lo = mux_tree(b, rest, &leaves[..half]);
            let hi = mux_tree(b, rest, &leaves[half..]);
            b.mux(top, hi, lo)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrapStats {
    pub trials: usize,
    pub chose_s: usize,
    pub fraction_chose_s: f64,
    /// In every trial, the completions forced on the second block were
    /// exactly `h(·, t)` (or `c` when `t = s`) on every window row.
    pub second_block_matches_h: bool,
}

/// Candidate first-block functions sampled per trial.
pub const TRAP_VOTERS: usize = 5;

/// Simulates choosing the first block by a majority vote over uniformly
/// sampled consistent candidates. Every first-block value is consistent
/// with every input, so the candidates' values are uniform bits. For each
/// chosen `t`, checks row by row that the forced second block is `h(·, t)`.
pub fn simulate_sequential(trap: &Trap, trials: usize, seed: u64) -> TrapStats {
    let p = trap.params;
    let half = p.half();
    let mut chose_s = 0;
    let mut matches = true;
    for trial in 0..trials {
        let mut rng = stream(seed, "trap-trial", trial as u64);
        let t: Vec<bool> = (0..half)
            .map(|_| {
                let ones = (0..TRAP_VOTERS).filter(|_| rng.random::<bool>()).count();
                2 * ones > TRAP_VOTERS
            })
            .collect();
        if t == trap.s {
            chose_s += 1;
        }
        for row in 0..1usize << p.window_bits {
            let mut x: Vec<bool> = (0..p.n).map(|_| rng.random()).collect();
            for (j, xj) in x.iter_mut().take(p.window_bits).enumerate() {
                *xj = (row >> (p.window_bits - 1 - j)) & 1 == 1;
            }
            let forced: Vec<Vec<bool>> = (0..1u64 << half)
                .map(|v| crate::formula::bits_msb_first(v, half))
                .filter(|y2| {
                    let y: Vec<bool> = t.iter().chain(y2).copied().collect();
                    trap.spec.eval(&x, &y)
                })
                .collect();
            let want = if t == trap.s { trap.c(&x) } else { trap.h(&x, &t) };
            if forced != [want] {
                matches = false;
            }
        }
    }
    TrapStats {
        trials,
        chose_s,
        fraction_chose_s: chose_s as f64 / trials.max(1) as f64,
        second_block_matches_h: matches,
    }
}
