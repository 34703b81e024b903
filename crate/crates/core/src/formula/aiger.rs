//! AIGER ASCII (`aag`) export of a composed Skolem vector: the inputs are
//! the X variables only, later outputs have earlier ones inlined, and
//! OR/XOR are lowered to AND with complemented edges.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{CircuitBuilder, FormulaError, Gate, GateRef, SkolemVector, Var};

pub fn emit_aiger_ascii(v: &SkolemVector) -> String {
    let c = v.composed();
    let n = v.inputs().len() as u32;
    let xpos: HashMap<Var, u32> = v.inputs().iter().enumerate().map(|(i, &x)| (x, i as u32 + 1)).collect();
    let mut ands: Vec<(u32, u32, u32)> = Vec::new();
    let mut and = |a: u32, b: u32| -> u32 {
        match (a, b) {
            (0, _) | (_, 0) => 0,
            (1, x) | (x, 1) => x,
            _ if a == b => a,
            _ if a == b ^ 1 => 0,
            _ => {
                let lhs = 2 * (n + 1 + ands.len() as u32);
                ands.push((lhs, a.max(b), a.min(b)));
                lhs
            }
        }
    };
    let mut lit: Vec<u32> = Vec::with_capacity(c.gates().len());
    for g in c.gates() {
        let l = match *g {
            Gate::Input(x) => 2 * xpos[&x],
            Gate::Const(b) => b as u32,
            Gate::Not(a) => lit[a.index()] ^ 1,
            Gate::And(a, b) => and(lit[a.index()], lit[b.index()]),
            Gate::Or(a, b) => and(lit[a.index()] ^ 1, lit[b.index()] ^ 1) ^ 1,
            Gate::Xor(a, b) => {
                let (a, b) = (lit[a.index()], lit[b.index()]);
                let p = and(a, b ^ 1);
                let q = and(a ^ 1, b);
                and(p ^ 1, q ^ 1) ^ 1
            }
        };
        lit.push(l);
    }
    let mut s = String::new();
    let _ = writeln!(s, "aag {} {} 0 {} {}", n + ands.len() as u32, n, c.outputs().len(), ands.len());
    for i in 1..=n {
        let _ = writeln!(s, "{}", 2 * i);
    }
    for o in c.outputs() {
        let _ = writeln!(s, "{}", lit[o.index()]);
    }
    for (l, a, b) in &ands {
        let _ = writeln!(s, "{l} {a} {b}");
    }
    for i in 0..n {
        let _ = writeln!(s, "i{i} x{}", i + 1);
    }
    for i in 0..c.outputs().len() {
        let _ = writeln!(s, "o{i} y{}", i + 1);
    }
    s
}

/// Reads a combinational `aag` file; its inputs bind to `inputs` in order.
pub fn parse_aiger_ascii(
    text: &str,
    inputs: &[Var],
    outputs: &[Var],
) -> Result<SkolemVector, FormulaError> {
    let err = |line: usize, message: &str| FormulaError::Parse {
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, head) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let nums = |line: usize, s: &str| -> Result<Vec<u32>, FormulaError> {
        s.split_whitespace()
            .map(|t| t.parse().map_err(|_| err(line, "expected unsigned integers")))
            .collect()
    };
    let head: Vec<&str> = head.split_whitespace().collect();
    if head.len() != 6 || head[0] != "aag" {
        return Err(err(1, "expected header 'aag M I L O A'"));
    }
    let h = nums(1, &head[1..].join(" "))?;
    let (i_count, l_count, o_count, a_count) = (h[1] as usize, h[2], h[3] as usize, h[4] as usize);
    if l_count != 0 {
        return Err(err(1, "latches are not supported"));
    }
    if i_count != inputs.len() || o_count != outputs.len() {
        return Err(err(1, "input/output counts do not match"));
    }
    let mut take = |count: usize, arity: usize| -> Result<Vec<(usize, Vec<u32>)>, FormulaError> {
        (0..count)
            .map(|_| {
                let (ln, l) = lines.next().ok_or_else(|| err(0, "unexpected end of file"))?;
                let v = nums(ln, l)?;
                if v.len() != arity {
                    return Err(err(ln, "wrong number of fields"));
                }
                Ok((ln, v))
            })
            .collect()
    };
    let in_lits = take(i_count, 1)?;
    let out_lits = take(o_count, 1)?;
    let and_defs = take(a_count, 3)?;

    let mut b = CircuitBuilder::new();
    let mut node: HashMap<u32, GateRef> = HashMap::new();
    let f = b.constant(false);
    node.insert(0, f);
    for ((ln, l), &x) in in_lits.iter().zip(inputs) {
        if l[0] % 2 == 1 || l[0] == 0 {
            return Err(err(*ln, "bad input literal"));
        }
        let g = b.input(x);
        node.insert(l[0] / 2, g);
    }
    let defs: HashMap<u32, (usize, u32, u32)> =
        and_defs.iter().map(|(ln, d)| (d[0] / 2, (*ln, d[1], d[2]))).collect();

    fn resolve(
        b: &mut CircuitBuilder,
        node: &mut HashMap<u32, GateRef>,
        defs: &HashMap<u32, (usize, u32, u32)>,
        lit: u32,
        depth: usize,
    ) -> Result<GateRef, FormulaError> {
        let var = lit / 2;
        let g = match node.get(&var) {
            Some(&g) => g,
            None => {
                let &(ln, l, r) = defs.get(&var).ok_or(FormulaError::Malformed(format!(
                    "undefined AIG literal {lit}"
                )))?;
                if depth > defs.len() {
                    return Err(FormulaError::Parse {
                        line: ln,
                        message: "cyclic AND definition".into(),
                    });
                }
                let a = resolve(b, node, defs, l, depth + 1)?;
                let c = resolve(b, node, defs, r, depth + 1)?;
                let g = b.and(a, c);
                node.insert(var, g);
                g
            }
        };
        Ok(if lit % 2 == 1 { b.not(g) } else { g })
    }

    let mut outs = Vec::with_capacity(o_count);
    for (_, l) in &out_lits {
        outs.push(resolve(&mut b, &mut node, &defs, l[0], 0)?);
    }
    let all = b.finish(outs);
    let psis = (0..o_count).map(|i| all.cone(i)).collect();
    SkolemVector::new(inputs.to_vec(), outputs.to_vec(), psis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Circuit;

    #[test]
    fn xor_is_lowered_and_reevaluates() {
        let x = [Var::new(1), Var::new(2)];
        let y = [Var::new(3), Var::new(4)];
        let mut b = CircuitBuilder::new();
        let (a, c) = (b.input(x[0]), b.input(x[1]));
        let g = b.xor(a, c);
        let p1 = b.finish1(g);
        let mut b = CircuitBuilder::new();
        let (y1, a) = (b.input(y[0]), b.input(x[0]));
        let g = b.or(y1, a);
        let p2 = b.finish1(g);
        let s = SkolemVector::new(x.to_vec(), y.to_vec(), vec![p1, p2]).unwrap();
        let text = emit_aiger_ascii(&s);
        assert!(text.starts_with("aag "));
        assert!(text.contains("i0 x1"));
        let back = parse_aiger_ascii(&text, &x, &y).unwrap();
        for m in 0..4u32 {
            let bits = [m & 1 == 1, m & 2 == 2];
            assert_eq!(back.eval(&bits), s.eval(&bits));
        }
    }

    #[test]
    fn constant_outputs() {
        let s = SkolemVector::new(vec![Var::new(1)], vec![Var::new(2)], vec![Circuit::constant(true)]).unwrap();
        let text = emit_aiger_ascii(&s);
        assert_eq!(text, "aag 1 1 0 1 0\n2\n1\ni0 x1\no0 y1\n");
    }
}
