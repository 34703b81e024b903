//! Plain-text gate lists:
//!
//! ```text
//! skolem <m> <n>
//! g1 = AND(x1,y1)
//! y2 := g1
//! ```
//!
//! Gate ids are global across outputs; arguments are `x<i>`, `y<j>` (an
//! earlier output), `g<k>` (an earlier gate), `0` or `1`.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Circuit, CircuitBuilder, FormulaError, Gate, GateRef, SkolemVector, Var};

pub fn emit_gatelist(v: &SkolemVector) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "skolem {} {}", v.outputs().len(), v.inputs().len());
    let xpos: HashMap<Var, usize> = v.inputs().iter().enumerate().map(|(i, &x)| (x, i + 1)).collect();
    let ypos: HashMap<Var, usize> = v.outputs().iter().enumerate().map(|(i, &y)| (y, i + 1)).collect();
    let mut next = 1usize;
    for (i, psi) in v.psis().iter().enumerate() {
        let psi = psi.cone(0);
        let mut names: Vec<String> = Vec::with_capacity(psi.gates().len());
        for g in psi.gates() {
            let name = match *g {
                Gate::Input(x) => match (xpos.get(&x), ypos.get(&x)) {
                    (Some(k), _) => format!("x{k}"),
                    (None, Some(k)) => format!("y{k}"),
                    (None, None) => unreachable!("vector was validated at construction"),
                },
                Gate::Const(b) => (b as u8).to_string(),
                _ => {
                    let id = format!("g{next}");
                    next += 1;
                    let (op, args) = match *g {
                        Gate::Not(a) => ("NOT", vec![a]),
                        Gate::And(a, b) => ("AND", vec![a, b]),
                        Gate::Or(a, b) => ("OR", vec![a, b]),
                        Gate::Xor(a, b) => ("XOR", vec![a, b]),
                        _ => unreachable!(),
                    };
                    let args: Vec<&str> = args.iter().map(|a| names[a.index()].as_str()).collect();
                    let _ = writeln!(s, "{id} = {op}({})", args.join(","));
                    id
                }
            };
            names.push(name);
        }
        let out = psi.output();
        let name = match psi.gate(out) {
            Gate::Const(b) => {
                let id = format!("g{next}");
                next += 1;
                let _ = writeln!(s, "{id} = CONST({})", b as u8);
                id
            }
            Gate::Input(_) => {
                let id = format!("g{next}");
                next += 1;
                let _ = writeln!(s, "{id} = OR({},0)", names[out.index()]);
                id
            }
            _ => names[out.index()].clone(),
        };
        let _ = writeln!(s, "y{} := {name}", i + 1);
    }
    s
}

pub fn parse_gatelist(
    text: &str,
    inputs: &[Var],
    outputs: &[Var],
) -> Result<SkolemVector, FormulaError> {
    let err = |line: usize, message: String| FormulaError::Parse { line, message };
    let mut b = CircuitBuilder::raw();
    let mut gates: HashMap<String, GateRef> = HashMap::new();
    let mut outs: Vec<GateRef> = Vec::new();
    let mut header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let (m, n) = match parts.as_slice() {
                ["skolem", m, n] => (
                    m.parse::<usize>().map_err(|_| err(line_no, "bad output count".into()))?,
                    n.parse::<usize>().map_err(|_| err(line_no, "bad input count".into()))?,
                ),
                _ => return Err(err(line_no, "expected header 'skolem <m> <n>'".into())),
            };
            if m != outputs.len() || n != inputs.len() {
                return Err(err(
                    line_no,
                    format!(
                        "header declares {m} outputs and {n} inputs, expected {} and {}",
                        outputs.len(),
                        inputs.len()
                    ),
                ));
            }
            header = true;
            continue;
        }
        if let Some((lhs, rhs)) = line.split_once(":=") {
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            let expected = format!("y{}", outs.len() + 1);
            if lhs != expected {
                return Err(err(line_no, format!("expected '{expected} := …', found '{lhs}'")));
            }
            let g = *gates
                .get(rhs)
                .ok_or_else(|| err(line_no, format!("unknown gate '{rhs}'")))?;
            outs.push(g);
            continue;
        }
        let Some((lhs, rhs)) = line.split_once('=') else {
            return Err(err(line_no, format!("unrecognized line '{line}'")));
        };
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        if !lhs.starts_with('g') || lhs[1..].parse::<u64>().is_err() {
            return Err(err(line_no, format!("bad gate name '{lhs}'")));
        }
        if gates.contains_key(lhs) {
            return Err(err(line_no, format!("gate '{lhs}' defined twice")));
        }
        let (op, args) = rhs
            .strip_suffix(')')
            .and_then(|r| r.split_once('('))
            .ok_or_else(|| err(line_no, format!("bad gate expression '{rhs}'")))?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        let current = outs.len() + 1;
        let arg = |b: &mut CircuitBuilder, a: &str| -> Result<GateRef, FormulaError> {
            if a == "0" || a == "1" {
                return Ok(b.constant(a == "1"));
            }
            if let Some(&g) = gates.get(a) {
                return Ok(g);
            }
            let index = |s: &str| s.parse::<usize>().ok().filter(|&k| k >= 1);
            if let Some(k) = a.strip_prefix('x').and_then(index) {
                if k <= inputs.len() {
                    return Ok(b.input(inputs[k - 1]));
                }
            }
            if let Some(k) = a.strip_prefix('y').and_then(index) {
                if k < current && k <= outputs.len() {
                    return Ok(b.input(outputs[k - 1]));
                }
                if k <= outputs.len() {
                    return Err(err(line_no, format!("'{a}' is not an earlier output of y{current}")));
                }
            }
            Err(err(line_no, format!("unknown argument '{a}'")))
        };
        let g = match (op.trim(), args.as_slice()) {
            ("CONST", [a]) if *a == "0" || *a == "1" => b.constant(*a == "1"),
            ("NOT", [a]) => {
                let a = arg(&mut b, a)?;
                b.not(a)
            }
            ("AND" | "OR" | "XOR", [l, r]) => {
                let (l, r) = (arg(&mut b, l)?, arg(&mut b, r)?);
                match op.trim() {
                    "AND" => b.and(l, r),
                    "OR" => b.or(l, r),
                    _ => b.xor(l, r),
                }
            }
            _ => return Err(err(line_no, format!("bad gate expression '{rhs}'"))),
        };
        gates.insert(lhs.to_string(), g);
    }
    if !header {
        return Err(err(1, "missing header".into()));
    }
    if outs.len() != outputs.len() {
        return Err(err(
            text.lines().count(),
            format!("{} outputs defined, expected {}", outs.len(), outputs.len()),
        ));
    }
    let all = b.finish(outs);
    let psis: Vec<Circuit> = (0..outputs.len()).map(|i| all.cone(i)).collect();
    SkolemVector::new(inputs.to_vec(), outputs.to_vec(), psis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Var {
        Var::new(i)
    }

    #[test]
    fn single_constant_is_one_gate() {
        let s = SkolemVector::constants(vec![v(1)], vec![v(2)], &[true]);
        let text = emit_gatelist(&s);
        assert_eq!(text, "skolem 1 1\ng1 = CONST(1)\ny1 := g1\n");
        let back = parse_gatelist(&text, &[v(1)], &[v(2)]).unwrap();
        assert_eq!(back.eval(&[false]), vec![true]);
    }

    #[test]
    fn later_output_may_not_read_itself() {
        let text = "skolem 1 1\ng1 = AND(x1,y1)\ny1 := g1\n";
        let e = parse_gatelist(text, &[v(1)], &[v(2)]).unwrap_err();
        assert!(matches!(e, FormulaError::Parse { line: 2, .. }));
    }

    #[test]
    fn text_is_a_fixed_point() {
        let text = "skolem 2 2\ng1 = XOR(x1,x2)\ng2 = NOT(g1)\ny1 := g2\ng3 = AND(y1,x2)\ny2 := g3\n";
        let s = parse_gatelist(text, &[v(1), v(2)], &[v(3), v(4)]).unwrap();
        assert_eq!(emit_gatelist(&s), text);
        assert_eq!(s.eval(&[true, true]), vec![true, true]);
    }
}
