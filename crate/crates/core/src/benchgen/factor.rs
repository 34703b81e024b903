use super::BenchError;
use crate::formula::{CircuitBuilder, GateRef, Specification, Var};

/// Variables of a factoring instance; every number is most significant bit first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorVars {
    pub x: Vec<Var>,
    pub a: Vec<Var>,
    pub b: Vec<Var>,
}

impl FactorVars {
    pub fn new(bits: usize) -> FactorVars {
        let v = |k: usize| Var::new(k as u32);
        FactorVars {
            x: (1..=bits).map(v).collect(),
            a: (bits + 1..=2 * bits).map(v).collect(),
            b: (2 * bits + 1..=3 * bits).map(v).collect(),
        }
    }
}

/// `F = (X = A·B) ∧ (A ≠ 1) ∧ (B ≠ 1)` over `bits`-wide X, A, B; the
/// product is `2·bits` wide and compared against X zero-extended, so there
/// is no wraparound. Outputs are A then B. `x = 0` has models `(0, b)` and
/// `(a, 0)` for `a, b ≠ 1`.
pub fn gen_factor(bits: usize) -> Result<Specification, BenchError> {
    if bits == 0 || bits > 16 {
        return Err(BenchError::InvalidParams(format!("factor width must be 1..=16, got {bits}")));
    }
    let vars = FactorVars::new(bits);
    let mut c = CircuitBuilder::new();
    // Least significant first internally.
    let lsb = |c: &mut CircuitBuilder, vs: &[Var]| -> Vec<GateRef> { vs.iter().rev().map(|&v| c.input(v)).collect() };
    let x = lsb(&mut c, &vars.x);
    let a = lsb(&mut c, &vars.a);
    let b = lsb(&mut c, &vars.b);
    let product = multiply(&mut c, &a, &b);
    let zero = c.constant(false);
    let eqs: Vec<GateRef> = (0..2 * bits)
        .map(|k| {
            let xk = x.get(k).copied().unwrap_or(zero);
            c.xnor(xk, product[k])
        })
        .collect();
    let equal = c.and_all(eqs);
    let a_one = is_one(&mut c, &a);
    let b_one = is_one(&mut c, &b);
    let na = c.not(a_one);
    let nb = c.not(b_one);
    let f = c.and_all([equal, na, nb]);
    let outputs = vars.a.iter().chain(&vars.b).copied().collect();
    Ok(Specification::from_circuit(vars.x, outputs, c.finish1(f))?)
}

fn is_one(c: &mut CircuitBuilder, v: &[GateRef]) -> GateRef {
    let mut lits = vec![v[0]];
    for &g in &v[1..] {
        lits.push(c.not(g));
    }
    c.and_all(lits)
}

/// Carry-save array multiplier: partial products are reduced column by
/// column with full adders (carries move one column up) until every column
/// holds at most two bits, then one ripple-carry adder finishes.
/// Inputs and result are least significant bit first; the result has
/// `a.len() + b.len()` bits.
pub(crate) fn multiply(c: &mut CircuitBuilder, a: &[GateRef], b: &[GateRef]) -> Vec<GateRef> {
    let width = a.len() + b.len();
    let mut cols: Vec<Vec<GateRef>> = vec![Vec::new(); width + 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            let pp = c.and(ai, bj);
            cols[i + j].push(pp);
        }
    }
    for k in 0..width {
        while cols[k].len() > 2 {
            let z = cols[k].pop().unwrap();
            let y = cols[k].pop().unwrap();
            let x = cols[k].pop().unwrap();
            let (s, carry) = full_adder(c, x, y, z);
            cols[k].insert(0, s);
            cols[k + 1].push(carry);
        }
    }
    let zero = c.constant(false);
    let mut carry = zero;
    let mut out = Vec::with_capacity(width);
    for col in cols.iter().take(width) {
        let x = col.first().copied().unwrap_or(zero);
        let y = col.get(1).copied().unwrap_or(zero);
        let (s, co) = full_adder(c, x, y, carry);
        out.push(s);
        carry = co;
    }
    out
}

fn full_adder(c: &mut CircuitBuilder, x: GateRef, y: GateRef, z: GateRef) -> (GateRef, GateRef) {
    let xy = c.xor(x, y);
    let s = c.xor(xy, z);
    let g = c.and(x, y);
    let p = c.and(xy, z);
    (s, c.or(g, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::bits_msb_first;

    #[test]
    fn factor_models_match_arithmetic() {
        let spec = gen_factor(3).unwrap();
        for x in 0..8u64 {
            for a in 0..8u64 {
                for b in 0..8u64 {
                    let y: Vec<bool> = bits_msb_first(a, 3).into_iter().chain(bits_msb_first(b, 3)).collect();
                    let want = a * b == x && a != 1 && b != 1;
                    assert_eq!(spec.eval(&bits_msb_first(x, 3), &y), want, "x={x} a={a} b={b}");
                }
            }
        }
    }
}
