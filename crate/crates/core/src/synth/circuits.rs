//! The learner's hypothesis space: straight-line circuits of exactly `s`
//! gates over `N` inputs, the last gate being the output.
//!
//! Every gate is drawn from one global, ordered list of descriptors:
//! the two constants, then for each node `t` (inputs first, then gates) the
//! descriptors whose largest operand is `t`: `NOT(t)`, `AND(a,t)`,
//! `OR(a,t)`, `XOR(a,t)` for `a < t`. Gate `j` may use nodes below `N + j`,
//! so its choices are a prefix of that list. Canonical form: when gate
//! `j + 1` does not read gate `j`, its descriptor index must be larger.

use serde::Serialize;

use crate::formula::{Circuit, CircuitBuilder, Cnf, GateRef, Lit, Var};
use crate::oracle::ClauseSink;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GateOp {
    Const0,
    Const1,
    Not,
    And,
    Or,
    Xor,
}

/// A gate descriptor; operands are node indices (`0..N` are inputs, `N + j`
/// is gate `j`). Unused operands are 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GateChoice {
    pub op: GateOp,
    pub a: u32,
    pub b: u32,
}

impl GateChoice {
    pub fn uses(&self, node: u32) -> bool {
        match self.op {
            GateOp::Const0 | GateOp::Const1 => false,
            GateOp::Not => self.a == node,
            _ => self.a == node || self.b == node,
        }
    }

    pub fn eval(&self, vals: &[bool]) -> bool {
        let (a, b) = (self.a as usize, self.b as usize);
        match self.op {
            GateOp::Const0 => false,
            GateOp::Const1 => true,
            GateOp::Not => !vals[a],
            GateOp::And => vals[a] && vals[b],
            GateOp::Or => vals[a] || vals[b],
            GateOp::Xor => vals[a] ^ vals[b],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSpace {
    num_inputs: usize,
    size: usize,
    choices: Vec<GateChoice>,
}

impl CircuitSpace {
    pub fn new(num_inputs: usize, size: usize) -> CircuitSpace {
        assert!(size >= 1, "circuits have at least one gate");
        let mut choices = vec![
            GateChoice { op: GateOp::Const0, a: 0, b: 0 },
            GateChoice { op: GateOp::Const1, a: 0, b: 0 },
        ];
        for t in 0..(num_inputs + size - 1) as u32 {
            choices.push(GateChoice { op: GateOp::Not, a: t, b: 0 });
            for op in [GateOp::And, GateOp::Or, GateOp::Xor] {
                for a in 0..t {
                    choices.push(GateChoice { op, a, b: t });
                }
            }
        }
        CircuitSpace {
            num_inputs,
            size,
            choices,
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of descriptors available to gate `j`.
    pub fn choice_count(&self, j: usize) -> usize {
        let p = self.num_inputs + j;
        2 + p + 3 * p * p.saturating_sub(1) / 2
    }

    pub fn choice(&self, index: u32) -> GateChoice {
        self.choices[index as usize]
    }

    /// Whether a sequence of descriptor indices is a canonical member.
    pub fn is_canonical(&self, seq: &[u32]) -> bool {
        seq.len() == self.size
            && seq
                .iter()
                .enumerate()
                .all(|(j, &c)| (c as usize) < self.choice_count(j))
            && (1..seq.len()).all(|j| {
                (seq[j] as usize) >= self.choice_count(j - 1) || seq[j - 1] < seq[j]
            })
    }

    /// Number of canonical circuits, saturating.
    pub fn space_size(&self) -> u128 {
        // suffix[c] = canonical completions after gate j chose c.
        let mut next: Vec<u128> = vec![1; self.choice_count(self.size - 1)];
        for j in (0..self.size - 1).rev() {
            let cj = self.choice_count(j);
            // Gate j+1 may follow choice p with any c > p (c < C_{j+1}).
            let mut suffix = vec![0u128; next.len() + 1];
            for c in (0..next.len()).rev() {
                suffix[c] = suffix[c + 1].saturating_add(next[c]);
            }
            next = (0..cj).map(|p| suffix[p + 1]).collect();
        }
        next.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }

    /// Calls `f` on every canonical sequence in order; stops early when `f`
    /// returns false.
    pub fn for_each(&self, mut f: impl FnMut(&[u32]) -> bool) {
        let mut seq = Vec::with_capacity(self.size);
        self.walk(&mut seq, &mut f);
    }

    fn walk(&self, seq: &mut Vec<u32>, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
        let j = seq.len();
        if j == self.size {
            return f(seq);
        }
        let start = match seq.last() {
            Some(&p) => p + 1,
            None => 0,
        };
        for c in start..self.choice_count(j) as u32 {
            seq.push(c);
            let go = self.walk(seq, f);
            seq.pop();
            if !go {
                return false;
            }
        }
        true
    }

    /// Value of the output gate on input bits `z`.
    pub fn eval(&self, seq: &[u32], z: &[bool]) -> bool {
        let mut vals = z.to_vec();
        for &c in seq {
            let v = self.choice(c).eval(&vals);
            vals.push(v);
        }
        vals[vals.len() - 1]
    }

    /// The circuit of a sequence, reading `inputs[t]` for node `t`.
    pub fn to_circuit(&self, seq: &[u32], inputs: &[Var]) -> Circuit {
        let mut b = CircuitBuilder::raw();
        let out = self.build_into(&mut b, seq, inputs);
        b.finish1(out)
    }

    pub(crate) fn build_into(&self, b: &mut CircuitBuilder, seq: &[u32], inputs: &[Var]) -> GateRef {
        let mut nodes: Vec<GateRef> = inputs.iter().map(|&v| b.input(v)).collect();
        for &c in seq {
            let g = self.choice(c);
            let (a, c2) = (g.a as usize, g.b as usize);
            let r = match g.op {
                GateOp::Const0 => b.constant(false),
                GateOp::Const1 => b.constant(true),
                GateOp::Not => b.not(nodes[a]),
                GateOp::And => b.and(nodes[a], nodes[c2]),
                GateOp::Or => b.or(nodes[a], nodes[c2]),
                GateOp::Xor => b.xor(nodes[a], nodes[c2]),
            };
            nodes.push(r);
        }
        *nodes.last().unwrap()
    }
}

/// CNF whose models, projected to the index bits, are exactly the canonical
/// circuits consistent with the recorded counterexamples.
#[derive(Clone, Debug)]
pub struct CircuitEncoding {
    space: CircuitSpace,
    index_bits: Vec<Vec<Var>>,
    selectors: Vec<Vec<Var>>,
    cnf: Cnf,
    counterexamples: Vec<(Vec<bool>, bool)>,
}

/// Encodes the canonical circuits of `s` gates over `num_inputs` inputs
/// whose output equals `bit` on every counterexample `(z, bit)`.
pub fn encode_bounded_circuits(
    num_inputs: usize,
    s: usize,
    counterexamples: &[(Vec<bool>, bool)],
) -> CircuitEncoding {
    let space = CircuitSpace::new(num_inputs, s);
    let mut cnf = Cnf::new(0);
    let index_bits: Vec<Vec<Var>> = (0..s)
        .map(|j| {
            let w = usize::BITS - (space.choice_count(j) - 1).leading_zeros();
            (0..w.max(1)).map(|_| cnf.new_var()).collect()
        })
        .collect();

    // Range and canonical-order constraints as one circuit over the bits.
    let mut b = CircuitBuilder::new();
    let idx: Vec<Vec<GateRef>> = index_bits
        .iter()
        .map(|bits| bits.iter().map(|&v| b.input(v)).collect())
        .collect();
    let mut constraints = Vec::new();
    for j in 0..s {
        let c = space.choice_count(j) as u64;
        if c < 1 << idx[j].len() {
            constraints.push(lt_const(&mut b, &idx[j], c));
        }
        if j > 0 {
            let uses_prev = lt_const(&mut b, &idx[j], space.choice_count(j - 1) as u64);
            let uses_prev = b.not(uses_prev);
            let ordered = lt(&mut b, &idx[j - 1], &idx[j]);
            constraints.push(b.or(uses_prev, ordered));
        }
    }
    let all = b.and_all(constraints);
    let structure = b.finish1(all);
    let gates = crate::formula::encode_gates(&mut cnf, &structure, |v| {
        crate::formula::Encoded::Lit(v.positive())
    });
    crate::formula::assert_value(&mut cnf, gates[structure.output().index()], true);

    // Selectors: sel[j][c] <-> idx_j == c.
    let mut selectors = Vec::with_capacity(s);
    for j in 0..s {
        let bits = &index_bits[j];
        let mut sels = Vec::with_capacity(space.choice_count(j));
        for c in 0..space.choice_count(j) {
            let sel = cnf.new_var();
            let pattern: Vec<Lit> = bits
                .iter()
                .enumerate()
                .map(|(k, &v)| v.lit((c >> k) & 1 == 1))
                .collect();
            for &p in &pattern {
                cnf.add_clause([sel.negative(), p]);
            }
            cnf.add_clause(pattern.iter().map(|&p| !p).chain([sel.positive()]));
            sels.push(sel);
        }
        selectors.push(sels);
    }
    let mut enc = CircuitEncoding {
        space,
        index_bits,
        selectors,
        cnf,
        counterexamples: Vec::new(),
    };
    for (z, bit) in counterexamples {
        enc.add_counterexample(z, *bit);
    }
    enc
}

/// `bits < c` for little-endian `bits`.
fn lt_const(b: &mut CircuitBuilder, bits: &[GateRef], c: u64) -> GateRef {
    let cs: Vec<GateRef> = (0..bits.len()).map(|k| b.constant((c >> k) & 1 == 1)).collect();
    lt(b, bits, &cs)
}

/// `x < y` for little-endian vectors, zero-extended to equal width.
fn lt(b: &mut CircuitBuilder, x: &[GateRef], y: &[GateRef]) -> GateRef {
    let zero = b.constant(false);
    let w = x.len().max(y.len());
    let mut less = zero;
    for k in 0..w {
        let xk = x.get(k).copied().unwrap_or(zero);
        let yk = y.get(k).copied().unwrap_or(zero);
        let nx = b.not(xk);
        let here = b.and(nx, yk);
        let same = b.xnor(xk, yk);
        let keep = b.and(same, less);
        less = b.or(here, keep);
    }
    less
}

/// A node value inside one counterexample: fixed bit or solver literal.
#[derive(Clone, Copy)]
enum Val {
    Const(bool),
    Lit(Lit),
}

impl CircuitEncoding {
    pub fn space(&self) -> &CircuitSpace {
        &self.space
    }

    pub fn cnf(&self) -> &Cnf {
        &self.cnf
    }

    pub fn counterexamples(&self) -> &[(Vec<bool>, bool)] {
        &self.counterexamples
    }

    /// The projection set: all descriptor-index bits.
    pub fn structure_vars(&self) -> Vec<Var> {
        self.index_bits.iter().flatten().copied().collect()
    }

    /// Requires the output to equal `bit` on input `z`.
    pub fn add_counterexample(&mut self, z: &[bool], bit: bool) {
        assert_eq!(z.len(), self.space.num_inputs());
        let mut cnf = std::mem::take(&mut self.cnf);
        self.encode_counterexample(&mut cnf, z, bit);
        self.cnf = cnf;
        self.counterexamples.push((z.to_vec(), bit));
    }

    fn encode_counterexample(&self, sink: &mut impl ClauseSink, z: &[bool], bit: bool) {
        let mut vals: Vec<Val> = z.iter().map(|&b| Val::Const(b)).collect();
        for j in 0..self.space.size() {
            let v = sink.fresh_var().positive();
            for (c, &sel) in self.selectors[j].iter().enumerate() {
                let g = self.space.choice(c as u32);
                let guard = sel.negative();
                let (a, b) = (vals[g.a as usize], vals[g.b as usize]);
                match g.op {
                    GateOp::Const0 => equiv(sink, guard, v, Val::Const(false)),
                    GateOp::Const1 => equiv(sink, guard, v, Val::Const(true)),
                    GateOp::Not => equiv(sink, guard, v, negate(a)),
                    GateOp::And => and(sink, guard, v, a, b),
                    GateOp::Or => {
                        // v = a ∨ b  <=>  ¬v = ¬a ∧ ¬b
                        and(sink, guard, !v, negate(a), negate(b))
                    }
                    GateOp::Xor => xor(sink, guard, v, a, b),
                }
            }
            vals.push(Val::Lit(v));
        }
        match vals[vals.len() - 1] {
            Val::Lit(out) => sink.add(&[if bit { out } else { !out }]),
            Val::Const(_) => unreachable!("gates are always variables"),
        }
    }

    /// Descriptor indices of the circuit in a model.
    pub fn decode(&self, value: impl Fn(Var) -> bool) -> Vec<u32> {
        self.index_bits
            .iter()
            .map(|bits| {
                bits.iter()
                    .enumerate()
                    .map(|(k, &v)| (value(v) as u32) << k)
                    .sum()
            })
            .collect()
    }
}

fn negate(v: Val) -> Val {
    match v {
        Val::Const(b) => Val::Const(!b),
        Val::Lit(l) => Val::Lit(!l),
    }
}

/// `guard ∨ (v <-> e)`.
fn equiv(sink: &mut impl ClauseSink, guard: Lit, v: Lit, e: Val) {
    match e {
        Val::Const(b) => sink.add(&[guard, if b { v } else { !v }]),
        Val::Lit(l) => {
            sink.add(&[guard, !v, l]);
            sink.add(&[guard, v, !l]);
        }
    }
}

/// `guard ∨ (v <-> a ∧ b)`.
fn and(sink: &mut impl ClauseSink, guard: Lit, v: Lit, a: Val, b: Val) {
    match (a, b) {
        (Val::Const(false), _) | (_, Val::Const(false)) => equiv(sink, guard, v, Val::Const(false)),
        (Val::Const(true), x) | (x, Val::Const(true)) => equiv(sink, guard, v, x),
        (Val::Lit(x), Val::Lit(y)) => {
            sink.add(&[guard, !v, x]);
            sink.add(&[guard, !v, y]);
            sink.add(&[guard, v, !x, !y]);
        }
    }
}

/// `guard ∨ (v <-> a ⊕ b)`.
fn xor(sink: &mut impl ClauseSink, guard: Lit, v: Lit, a: Val, b: Val) {
    match (a, b) {
        (Val::Const(x), Val::Const(y)) => equiv(sink, guard, v, Val::Const(x ^ y)),
        (Val::Const(c), l) | (l, Val::Const(c)) => {
            equiv(sink, guard, v, if c { negate(l) } else { l })
        }
        (Val::Lit(x), Val::Lit(y)) => {
            sink.add(&[guard, !v, x, y]);
            sink.add(&[guard, !v, !x, !y]);
            sink.add(&[guard, v, !x, y]);
            sink.add(&[guard, v, x, !y]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choice_lists_are_prefixes() {
        let sp = CircuitSpace::new(2, 3);
        assert_eq!(sp.choice_count(0), 7);
        assert_eq!(sp.choice_count(1), 2 + 3 + 9);
        assert!(sp.choices.len() >= sp.choice_count(2));
        for j in 0..3 {
            let p = (2 + j) as u32;
            assert!((0..sp.choice_count(j) as u32).all(|c| {
                let g = sp.choice(c);
                g.a < p && g.b < p
            }));
        }
    }

    #[test]
    fn space_size_matches_walk() {
        for (n, s) in [(1, 1), (2, 1), (2, 2), (2, 3), (3, 2)] {
            let sp = CircuitSpace::new(n, s);
            let mut count = 0u128;
            sp.for_each(|seq| {
                assert!(sp.is_canonical(seq));
                count += 1;
                true
            });
            assert_eq!(count, sp.space_size(), "n={n} s={s}");
        }
    }

    #[test]
    fn contradictory_counterexamples_have_no_model() {
        let enc = encode_bounded_circuits(2, 1, &[(vec![true, true], true), (vec![true, true], false)]);
        let o = crate::oracle::Oracle::internal();
        let r = o.solve(enc.cnf(), &crate::formula::Assignment::new()).unwrap();
        assert!(!r.is_sat());
    }
}
