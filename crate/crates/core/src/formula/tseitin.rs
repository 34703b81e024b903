use super::{Circuit, Cnf, Gate, Lit, Var};

/// How a gate is represented after encoding: either folded to a constant or
/// carried by a literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoded {
    Const(bool),
    Lit(Lit),
}

impl Encoded {
    pub fn negate(self) -> Encoded {
        match self {
            Encoded::Const(b) => Encoded::Const(!b),
            Encoded::Lit(l) => Encoded::Lit(!l),
        }
    }
}

/// Result of [`tseitin`]: the clauses plus the encoding of every gate.
#[derive(Clone, Debug)]
pub struct TseitinCnf {
    pub cnf: Cnf,
    pub gate_map: Vec<Encoded>,
}

/// Tseitin-encodes `circuit` with its (first) output asserted true.
///
/// INPUT gates keep their own variable; every AND/OR/XOR gate gets a fresh
/// auxiliary above the largest input id. NOT costs no clauses, AND/OR cost 3
/// and XOR costs 4.
pub fn tseitin(circuit: &Circuit) -> TseitinCnf {
    let max_input = circuit.inputs().into_iter().map(Var::id).max().unwrap_or(0);
    let mut cnf = Cnf::new(max_input);
    let gate_map = encode_gates(&mut cnf, circuit, |v| Encoded::Lit(v.positive()));
    match gate_map[circuit.output().index()] {
        Encoded::Lit(l) => {
            cnf.add_clause([l]);
        }
        Encoded::Const(true) => {
            let t = cnf.new_var();
            cnf.add_clause([t.positive()]);
        }
        Encoded::Const(false) => cnf.push(super::Clause::empty()),
    }
    TseitinCnf { cnf, gate_map }
}

/// Appends the definitional clauses of every gate of `circuit` to `cnf`,
/// mapping INPUT gates through `input`. Returns the encoding of each gate.
pub fn encode_gates(
    cnf: &mut Cnf,
    circuit: &Circuit,
    mut input: impl FnMut(Var) -> Encoded,
) -> Vec<Encoded> {
    let mut enc: Vec<Encoded> = Vec::with_capacity(circuit.gates().len());
    for g in circuit.gates() {
        let e = match *g {
            Gate::Input(v) => input(v),
            Gate::Const(b) => Encoded::Const(b),
            Gate::Not(a) => enc[a.index()].negate(),
            Gate::And(a, b) => and_gate(cnf, enc[a.index()], enc[b.index()]),
            Gate::Or(a, b) => {
                and_gate(cnf, enc[a.index()].negate(), enc[b.index()].negate()).negate()
            }
            Gate::Xor(a, b) => xor_gate(cnf, enc[a.index()], enc[b.index()]),
        };
        enc.push(e);
    }
    enc
}

/// Encodes the outputs of `circuit` and returns their encodings.
pub fn encode_outputs(
    cnf: &mut Cnf,
    circuit: &Circuit,
    input: impl FnMut(Var) -> Encoded,
) -> Vec<Encoded> {
    let enc = encode_gates(cnf, circuit, input);
    circuit.outputs().iter().map(|o| enc[o.index()]).collect()
}

/// Constrains `e` to take `value`.
pub fn assert_value(cnf: &mut Cnf, e: Encoded, value: bool) {
    match e {
        Encoded::Const(b) if b == value => {}
        Encoded::Const(_) => cnf.push(super::Clause::empty()),
        Encoded::Lit(l) => {
            cnf.add_clause([if value { l } else { !l }]);
        }
    }
}

/// Constrains `lit <-> e`.
pub fn assert_equiv(cnf: &mut Cnf, lit: Lit, e: Encoded) {
    match e {
        Encoded::Const(b) => {
            cnf.add_clause([if b { lit } else { !lit }]);
        }
        Encoded::Lit(l) => {
            cnf.add_clause([!lit, l]);
            cnf.add_clause([lit, !l]);
        }
    }
}

pub(crate) fn and_gate(cnf: &mut Cnf, a: Encoded, b: Encoded) -> Encoded {
    match (a, b) {
        (Encoded::Const(false), _) | (_, Encoded::Const(false)) => Encoded::Const(false),
        (Encoded::Const(true), x) | (x, Encoded::Const(true)) => x,
        (Encoded::Lit(x), Encoded::Lit(y)) if x == y => Encoded::Lit(x),
        (Encoded::Lit(x), Encoded::Lit(y)) if x == !y => Encoded::Const(false),
        (Encoded::Lit(x), Encoded::Lit(y)) => {
            let g = cnf.new_var().positive();
            cnf.add_clause([!g, x]);
            cnf.add_clause([!g, y]);
            cnf.add_clause([g, !x, !y]);
            Encoded::Lit(g)
        }
    }
}

pub(crate) fn xor_gate(cnf: &mut Cnf, a: Encoded, b: Encoded) -> Encoded {
    match (a, b) {
        (Encoded::Const(x), Encoded::Const(y)) => Encoded::Const(x ^ y),
        (Encoded::Const(c), Encoded::Lit(l)) | (Encoded::Lit(l), Encoded::Const(c)) => {
            Encoded::Lit(if c { !l } else { l })
        }
        (Encoded::Lit(x), Encoded::Lit(y)) if x == y => Encoded::Const(false),
        (Encoded::Lit(x), Encoded::Lit(y)) if x == !y => Encoded::Const(true),
        (Encoded::Lit(x), Encoded::Lit(y)) => {
            let g = cnf.new_var().positive();
            xor_clauses(cnf, g, x, y);
            Encoded::Lit(g)
        }
    }
}

/// Clauses of `g <-> (x xor y)`.
pub(crate) fn xor_clauses(cnf: &mut Cnf, g: Lit, x: Lit, y: Lit) {
    cnf.add_clause([!g, x, y]);
    cnf.add_clause([!g, !x, !y]);
    cnf.add_clause([g, !x, y]);
    cnf.add_clause([g, x, !y]);
}
