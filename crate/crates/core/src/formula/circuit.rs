use std::collections::{BTreeSet, HashMap};

use super::{Assignment, FormulaError, Var};

/// Index of a gate inside a circuit or builder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GateRef(u32);

impl GateRef {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Input(Var),
    Const(bool),
    Not(GateRef),
    And(GateRef, GateRef),
    Or(GateRef, GateRef),
    Xor(GateRef, GateRef),
}

impl Gate {
    fn operands(&self) -> impl Iterator<Item = GateRef> {
        let (a, b) = match *self {
            Gate::Input(_) | Gate::Const(_) => (None, None),
            Gate::Not(a) => (Some(a), None),
            Gate::And(a, b) | Gate::Or(a, b) | Gate::Xor(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }

    fn remap(&self, f: impl Fn(GateRef) -> GateRef) -> Gate {
        match *self {
            g @ (Gate::Input(_) | Gate::Const(_)) => g,
            Gate::Not(a) => Gate::Not(f(a)),
            Gate::And(a, b) => Gate::And(f(a), f(b)),
            Gate::Or(a, b) => Gate::Or(f(a), f(b)),
            Gate::Xor(a, b) => Gate::Xor(f(a), f(b)),
        }
    }
}

/// A fan-in-2 gate DAG over the basis {CONST, NOT, AND, OR, XOR}.
///
/// Gates are stored in topological order: every operand precedes its use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    gates: Vec<Gate>,
    outputs: Vec<GateRef>,
}

impl Circuit {
    /// Checks that operands precede their uses and outputs exist.
    pub fn new(gates: Vec<Gate>, outputs: Vec<GateRef>) -> Result<Circuit, FormulaError> {
        for (i, g) in gates.iter().enumerate() {
            if g.operands().any(|op| op.index() >= i) {
                return Err(FormulaError::Malformed(format!(
                    "gate {i} references a gate that does not precede it"
                )));
            }
        }
        if outputs.iter().any(|o| o.index() >= gates.len()) {
            return Err(FormulaError::Malformed("output references a missing gate".into()));
        }
        Ok(Circuit { gates, outputs })
    }

    pub fn constant(value: bool) -> Circuit {
        Circuit {
            gates: vec![Gate::Const(value)],
            outputs: vec![GateRef(0)],
        }
    }

    pub fn input(var: Var) -> Circuit {
        Circuit {
            gates: vec![Gate::Input(var)],
            outputs: vec![GateRef(0)],
        }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, r: GateRef) -> Gate {
        self.gates[r.index()]
    }

    pub fn outputs(&self) -> &[GateRef] {
        &self.outputs
    }

    pub fn output(&self) -> GateRef {
        self.outputs[0]
    }

    /// Number of non-input gates.
    pub fn size(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| !matches!(g, Gate::Input(_)))
            .count()
    }

    /// Variables named by INPUT gates, ascending.
    pub fn inputs(&self) -> BTreeSet<Var> {
        self.gates
            .iter()
            .filter_map(|g| match g {
                Gate::Input(v) => Some(*v),
                _ => None,
            })
            .collect()
    }

    /// Output value if the circuit's single output is a constant gate.
    pub fn as_constant(&self) -> Option<bool> {
        match self.gate(self.output()) {
            Gate::Const(b) => Some(b),
            _ => None,
        }
    }

    pub fn eval(&self, a: &Assignment) -> Result<Vec<bool>, FormulaError> {
        if let Some(v) = self.inputs().into_iter().find(|&v| !a.is_assigned(v)) {
            return Err(FormulaError::MissingAssignment(v));
        }
        Ok(self.eval_with(|v| a.get(v).unwrap()))
    }

    pub fn eval_with(&self, mut input: impl FnMut(Var) -> bool) -> Vec<bool> {
        let mut val: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::Input(x) => input(x),
                Gate::Const(b) => b,
                Gate::Not(a) => !val[a.index()],
                Gate::And(a, b) => val[a.index()] && val[b.index()],
                Gate::Or(a, b) => val[a.index()] || val[b.index()],
                Gate::Xor(a, b) => val[a.index()] ^ val[b.index()],
            };
            val.push(v);
        }
        self.outputs.iter().map(|o| val[o.index()]).collect()
    }

    /// Evaluates the first output.
    pub fn eval1(&self, input: impl FnMut(Var) -> bool) -> bool {
        self.eval_with(input)[0]
    }

    /// Bit-parallel simulation: each input variable carries 64 samples.
    pub fn simulate(&self, mut input: impl FnMut(Var) -> u64) -> Vec<u64> {
        let mut val: Vec<u64> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::Input(x) => input(x),
                Gate::Const(b) => {
                    if b {
                        !0
                    } else {
                        0
                    }
                }
                Gate::Not(a) => !val[a.index()],
                Gate::And(a, b) => val[a.index()] & val[b.index()],
                Gate::Or(a, b) => val[a.index()] | val[b.index()],
                Gate::Xor(a, b) => val[a.index()] ^ val[b.index()],
            };
            val.push(v);
        }
        self.outputs.iter().map(|o| val[o.index()]).collect()
    }

    /// The sub-circuit computing output `i` alone.
    pub fn cone(&self, i: usize) -> Circuit {
        self.restrict(&[self.outputs[i]])
    }

    /// Keeps only gates reachable from `outputs`, preserving order.
    fn restrict(&self, outputs: &[GateRef]) -> Circuit {
        let mut live = vec![false; self.gates.len()];
        for o in outputs {
            live[o.index()] = true;
        }
        for i in (0..self.gates.len()).rev() {
            if live[i] {
                for op in self.gates[i].operands() {
                    live[op.index()] = true;
                }
            }
        }
        let mut remap = vec![GateRef(u32::MAX); self.gates.len()];
        let mut gates = Vec::new();
        for (i, g) in self.gates.iter().enumerate() {
            if live[i] {
                remap[i] = GateRef(gates.len() as u32);
                gates.push(g.remap(|r| remap[r.index()]));
            }
        }
        Circuit {
            gates,
            outputs: outputs.iter().map(|o| remap[o.index()]).collect(),
        }
    }
}

/// Incremental circuit construction.
///
/// The default builder folds constants, applies local simplifications and
/// hashes structurally identical gates. A raw builder keeps every gate as
/// requested and only shares INPUT and CONST gates.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
    table: HashMap<Gate, GateRef>,
    simplify: bool,
}

impl Default for CircuitBuilder {
    fn default() -> Self {
        CircuitBuilder::new()
    }
}

impl CircuitBuilder {
    pub fn new() -> CircuitBuilder {
        CircuitBuilder {
            gates: Vec::new(),
            table: HashMap::new(),
            simplify: true,
        }
    }

    pub fn raw() -> CircuitBuilder {
        CircuitBuilder {
            simplify: false,
            ..CircuitBuilder::new()
        }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate(&self, r: GateRef) -> Gate {
        self.gates[r.index()]
    }

    fn push(&mut self, g: Gate) -> GateRef {
        let shared = self.simplify || matches!(g, Gate::Input(_) | Gate::Const(_));
        if shared {
            if let Some(&r) = self.table.get(&g) {
                return r;
            }
        }
        let r = GateRef(self.gates.len() as u32);
        self.gates.push(g);
        if shared {
            self.table.insert(g, r);
        }
        r
    }

    pub fn input(&mut self, v: Var) -> GateRef {
        self.push(Gate::Input(v))
    }

    pub fn constant(&mut self, b: bool) -> GateRef {
        self.push(Gate::Const(b))
    }

    fn const_of(&self, r: GateRef) -> Option<bool> {
        match self.gates[r.index()] {
            Gate::Const(b) if self.simplify => Some(b),
            _ => None,
        }
    }

    fn negation_of(&self, r: GateRef) -> Option<GateRef> {
        match self.gates[r.index()] {
            Gate::Not(a) if self.simplify => Some(a),
            _ => None,
        }
    }

    fn complementary(&self, a: GateRef, b: GateRef) -> bool {
        self.negation_of(a) == Some(b) || self.negation_of(b) == Some(a)
    }

    pub fn not(&mut self, a: GateRef) -> GateRef {
        if let Some(c) = self.const_of(a) {
            return self.constant(!c);
        }
        if let Some(inner) = self.negation_of(a) {
            return inner;
        }
        self.push(Gate::Not(a))
    }

    pub fn and(&mut self, a: GateRef, b: GateRef) -> GateRef {
        if self.simplify {
            match (self.const_of(a), self.const_of(b)) {
                (Some(false), _) | (_, Some(false)) => return self.constant(false),
                (Some(true), _) => return b,
                (_, Some(true)) => return a,
                _ => {}
            }
            if a == b {
                return a;
            }
            if self.complementary(a, b) {
                return self.constant(false);
            }
        }
        let (a, b) = self.order(a, b);
        self.push(Gate::And(a, b))
    }

    pub fn or(&mut self, a: GateRef, b: GateRef) -> GateRef {
        if self.simplify {
            match (self.const_of(a), self.const_of(b)) {
                (Some(true), _) | (_, Some(true)) => return self.constant(true),
                (Some(false), _) => return b,
                (_, Some(false)) => return a,
                _ => {}
            }
            if a == b {
                return a;
            }
            if self.complementary(a, b) {
                return self.constant(true);
            }
        }
        let (a, b) = self.order(a, b);
        self.push(Gate::Or(a, b))
    }

    pub fn xor(&mut self, a: GateRef, b: GateRef) -> GateRef {
        if self.simplify {
            match (self.const_of(a), self.const_of(b)) {
                (Some(x), Some(y)) => return self.constant(x ^ y),
                (Some(false), _) => return b,
                (_, Some(false)) => return a,
                (Some(true), _) => return self.not(b),
                (_, Some(true)) => return self.not(a),
                _ => {}
            }
            if a == b {
                return self.constant(false);
            }
            if self.complementary(a, b) {
                return self.constant(true);
            }
        }
        let (a, b) = self.order(a, b);
        self.push(Gate::Xor(a, b))
    }

    fn order(&self, a: GateRef, b: GateRef) -> (GateRef, GateRef) {
        if self.simplify && b < a {
            (b, a)
        } else {
            (a, b)
        }
    }

    pub fn xnor(&mut self, a: GateRef, b: GateRef) -> GateRef {
        let x = self.xor(a, b);
        self.not(x)
    }

    /// `if sel then hi else lo`.
    pub fn mux(&mut self, sel: GateRef, hi: GateRef, lo: GateRef) -> GateRef {
        if hi == lo {
            return hi;
        }
        match self.const_of(sel) {
            Some(true) => return hi,
            Some(false) => return lo,
            None => {}
        }
        let ns = self.not(sel);
        let t = self.and(sel, hi);
        let e = self.and(ns, lo);
        self.or(t, e)
    }

    /// Conjunction of all operands; `1` when empty.
    pub fn and_all(&mut self, ops: impl IntoIterator<Item = GateRef>) -> GateRef {
        let ops: Vec<GateRef> = ops.into_iter().collect();
        self.balanced(ops, true)
    }

    /// Disjunction of all operands; `0` when empty.
    pub fn or_all(&mut self, ops: impl IntoIterator<Item = GateRef>) -> GateRef {
        let ops: Vec<GateRef> = ops.into_iter().collect();
        self.balanced(ops, false)
    }

    fn balanced(&mut self, mut ops: Vec<GateRef>, conj: bool) -> GateRef {
        if ops.is_empty() {
            return self.constant(conj);
        }
        while ops.len() > 1 {
            let mut next = Vec::with_capacity(ops.len().div_ceil(2));
            for pair in ops.chunks(2) {
                next.push(match pair {
                    [a, b] if conj => self.and(*a, *b),
                    [a, b] => self.or(*a, *b),
                    [a] => *a,
                    _ => unreachable!(),
                });
            }
            ops = next;
        }
        ops[0]
    }

    /// Literal of `v` with the given polarity.
    pub fn literal(&mut self, v: Var, positive: bool) -> GateRef {
        let g = self.input(v);
        if positive {
            g
        } else {
            self.not(g)
        }
    }

    /// `vars == bits`.
    pub fn equals_const(&mut self, vars: &[Var], bits: &[bool]) -> GateRef {
        let lits: Vec<GateRef> = vars
            .iter()
            .zip(bits)
            .map(|(&v, &b)| self.literal(v, b))
            .collect();
        self.and_all(lits)
    }

    /// Copies `circuit` into this builder, rebinding each INPUT through `map`.
    /// Returns the images of the circuit's outputs.
    pub fn import(
        &mut self,
        circuit: &Circuit,
        mut map: impl FnMut(&mut Self, Var) -> GateRef,
    ) -> Vec<GateRef> {
        let mut img: Vec<GateRef> = Vec::with_capacity(circuit.gates.len());
        for g in &circuit.gates {
            let r = match *g {
                Gate::Input(v) => map(self, v),
                Gate::Const(b) => self.constant(b),
                Gate::Not(a) => self.not(img[a.index()]),
                Gate::And(a, b) => self.and(img[a.index()], img[b.index()]),
                Gate::Or(a, b) => self.or(img[a.index()], img[b.index()]),
                Gate::Xor(a, b) => self.xor(img[a.index()], img[b.index()]),
            };
            img.push(r);
        }
        circuit.outputs.iter().map(|o| img[o.index()]).collect()
    }

    /// Single-output convenience over [`CircuitBuilder::import`].
    pub fn import1(
        &mut self,
        circuit: &Circuit,
        map: impl FnMut(&mut Self, Var) -> GateRef,
    ) -> GateRef {
        self.import(circuit, map)[0]
    }

    /// Finishes the circuit, dropping gates unreachable from `outputs`.
    pub fn finish(self, outputs: Vec<GateRef>) -> Circuit {
        Circuit {
            gates: self.gates,
            outputs: Vec::new(),
        }
        .restrict(&outputs)
    }

    pub fn finish1(self, output: GateRef) -> Circuit {
        self.finish(vec![output])
    }
}
