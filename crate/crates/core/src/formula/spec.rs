use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use super::cnf::write_clauses;
use super::{
    tseitin, Assignment, Circuit, CircuitBuilder, Clause, Cnf, FormulaError, GateRef, Lit, Role,
    SkolemVector, Var, Variable,
};

/// Where a specification came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceFormat {
    Qdimacs,
    AnnotatedDimacs,
    Generated,
}

/// A relational specification `F(X, Y)`, held both as a circuit over
/// `X ∪ Y` and as a CNF that may use auxiliary (Tseitin) variables.
#[derive(Clone, Debug)]
pub struct Specification {
    inputs: Vec<Var>,
    outputs: Vec<Var>,
    matrix: Circuit,
    cnf: Cnf,
    source: SourceFormat,
}

impl Specification {
    /// Builds a specification from a circuit; the CNF is its Tseitin encoding.
    pub fn from_circuit(
        inputs: Vec<Var>,
        outputs: Vec<Var>,
        matrix: Circuit,
    ) -> Result<Specification, FormulaError> {
        check_roles(&inputs, &outputs)?;
        let declared: HashSet<Var> = inputs.iter().chain(&outputs).copied().collect();
        if let Some(v) = matrix.inputs().into_iter().find(|v| !declared.contains(v)) {
            return Err(FormulaError::UndeclaredVariable { var: v, line: None });
        }
        let mut cnf = tseitin(&matrix).cnf;
        // Auxiliaries start right above the largest variable the matrix
        // reads; lift them above every declared variable.
        let top = declared.iter().map(|v| v.id()).max().unwrap_or(0);
        let base = matrix.inputs().into_iter().map(Var::id).max().unwrap_or(0);
        if base < top {
            let lift = top - base;
            let aux = cnf.num_vars().saturating_sub(base);
            cnf = cnf.rename(top + aux, |v| if v.id() > base { Var::new(v.id() + lift) } else { v });
        }
        Ok(Specification {
            inputs,
            outputs,
            matrix,
            cnf,
            source: SourceFormat::Generated,
        })
    }

    /// Builds a specification from a CNF. Variables outside `X ∪ Y` are
    /// auxiliaries and must be recognizable Tseitin gate definitions.
    pub fn from_cnf(
        inputs: Vec<Var>,
        outputs: Vec<Var>,
        cnf: Cnf,
        source: SourceFormat,
    ) -> Result<Specification, FormulaError> {
        check_roles(&inputs, &outputs)?;
        let declared: HashSet<Var> = inputs.iter().chain(&outputs).copied().collect();
        let matrix = reconstruct_circuit(&cnf, &declared)?;
        let mut cnf = cnf;
        for v in inputs.iter().chain(&outputs) {
            cnf.declare(*v);
        }
        Ok(Specification {
            inputs,
            outputs,
            matrix,
            cnf,
            source,
        })
    }

    /// The X variables, in order.
    pub fn inputs(&self) -> &[Var] {
        &self.inputs
    }

    /// The Y variables, in order.
    pub fn outputs(&self) -> &[Var] {
        &self.outputs
    }

    pub fn n(&self) -> usize {
        self.inputs.len()
    }

    pub fn m(&self) -> usize {
        self.outputs.len()
    }

    pub fn matrix(&self) -> &Circuit {
        &self.matrix
    }

    pub fn cnf(&self) -> &Cnf {
        &self.cnf
    }

    pub fn source(&self) -> SourceFormat {
        self.source
    }

    /// Total variable count including auxiliaries.
    pub fn num_vars(&self) -> u32 {
        self.cnf.num_vars()
    }

    /// `X ∪ Y`, inputs first.
    pub fn io_vars(&self) -> Vec<Var> {
        self.inputs.iter().chain(&self.outputs).copied().collect()
    }

    pub fn variable(&self, var: Var) -> Variable {
        if let Some(i) = self.inputs.iter().position(|&v| v == var) {
            return Variable {
                var,
                role: Role::Input,
                role_index: i + 1,
            };
        }
        if let Some(i) = self.outputs.iter().position(|&v| v == var) {
            return Variable {
                var,
                role: Role::Output,
                role_index: i + 1,
            };
        }
        let aux_index = (1..=var.id())
            .map(Var::new)
            .filter(|v| !self.inputs.contains(v) && !self.outputs.contains(v))
            .count();
        Variable {
            var,
            role: Role::Auxiliary,
            role_index: aux_index,
        }
    }

    /// Evaluates `F(x, y)` on bit vectors in declaration order.
    pub fn eval(&self, x: &[bool], y: &[bool]) -> bool {
        let mut map: HashMap<Var, bool> = HashMap::with_capacity(x.len() + y.len());
        map.extend(self.inputs.iter().copied().zip(x.iter().copied()));
        map.extend(self.outputs.iter().copied().zip(y.iter().copied()));
        self.matrix.eval1(|v| map[&v])
    }

    /// Evaluates `F` on an assignment covering `X ∪ Y`.
    pub fn eval_assignment(&self, a: &Assignment) -> Result<bool, FormulaError> {
        Ok(self.matrix.eval(a)?[0])
    }

    /// `F(X, y)` for a fixed output vector, as a circuit over X.
    pub fn restrict_outputs(&self, y: &[bool]) -> Circuit {
        let mut b = CircuitBuilder::new();
        let out = self.restrict_outputs_into(&mut b, y);
        b.finish1(out)
    }

    pub(crate) fn restrict_outputs_into(&self, b: &mut CircuitBuilder, y: &[bool]) -> GateRef {
        let fixed: HashMap<Var, bool> = self.outputs.iter().copied().zip(y.iter().copied()).collect();
        b.import1(&self.matrix, |b, v| match fixed.get(&v) {
            Some(&bit) => b.constant(bit),
            None => b.input(v),
        })
    }

    /// Substitutes each `Y_i` by a constant or by a Skolem function and returns
    /// the resulting circuit over X only.
    pub fn substitute(&self, binding: &Binding) -> Result<Circuit, FormulaError> {
        let mut b = CircuitBuilder::new();
        let y_gates = self.bind_outputs(&mut b, binding)?;
        let map: HashMap<Var, GateRef> = self.outputs.iter().copied().zip(y_gates).collect();
        let out = b.import1(&self.matrix, |b, v| match map.get(&v) {
            Some(&g) => g,
            None => b.input(v),
        });
        Ok(b.finish1(out))
    }

    /// Gates computing each output under `binding`, built inside `b`.
    pub(crate) fn bind_outputs(
        &self,
        b: &mut CircuitBuilder,
        binding: &Binding,
    ) -> Result<Vec<GateRef>, FormulaError> {
        match binding {
            Binding::Constants(bits) => {
                if bits.len() != self.m() {
                    return Err(FormulaError::Malformed(format!(
                        "binding has {} bits, expected {}",
                        bits.len(),
                        self.m()
                    )));
                }
                Ok(bits.iter().map(|&bit| b.constant(bit)).collect())
            }
            Binding::Skolem(v) => {
                self.check_vector(v)?;
                Ok(v.build_into(b, |b, x| b.input(x)))
            }
        }
    }

    pub(crate) fn check_vector(&self, v: &SkolemVector) -> Result<(), FormulaError> {
        if v.inputs() != self.inputs.as_slice() || v.outputs() != self.outputs.as_slice() {
            return Err(FormulaError::Malformed(
                "Skolem vector variables do not match the specification".into(),
            ));
        }
        Ok(())
    }

    /// QDIMACS text: one universal block (X), one existential block (Y).
    /// Auxiliaries stay unquantified.
    pub fn to_qdimacs(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p cnf {} {}", self.cnf.num_vars(), self.cnf.len());
        for (tag, vars) in [("a", &self.inputs), ("e", &self.outputs)] {
            if vars.is_empty() {
                continue;
            }
            s.push_str(tag);
            for v in vars.iter() {
                let _ = write!(s, " {v}");
            }
            s.push_str(" 0\n");
        }
        write_clauses(&mut s, &self.cnf);
        s
    }

    /// DIMACS with `c inputs` / `c outputs` header comments.
    pub fn to_annotated_dimacs(&self) -> String {
        let mut s = String::new();
        for (tag, vars) in [("inputs", &self.inputs), ("outputs", &self.outputs)] {
            let _ = write!(s, "c {tag}");
            for v in vars.iter() {
                let _ = write!(s, " {v}");
            }
            s.push('\n');
        }
        s.push_str(&self.cnf.to_dimacs());
        s
    }
}

/// What to plug in for the outputs in [`Specification::substitute`].
#[derive(Clone, Copy, Debug)]
pub enum Binding<'a> {
    Constants(&'a [bool]),
    Skolem(&'a SkolemVector),
}

fn check_roles(inputs: &[Var], outputs: &[Var]) -> Result<(), FormulaError> {
    let mut seen = HashSet::new();
    for v in inputs.iter().chain(outputs) {
        if !seen.insert(*v) {
            return Err(FormulaError::OverlappingBlocks { var: *v, line: None });
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
enum Definition {
    Const(bool),
    /// `lit <-> AND(operands)`
    And(Lit, Vec<Lit>),
    /// `var <-> a xor b xor parity`
    Xor(Lit, Lit, bool),
}

/// Recovers a circuit for `∃aux. cnf` by recognizing Tseitin definitions of
/// the auxiliary variables (AND/OR/buffer, XOR, and forced constants).
fn reconstruct_circuit(cnf: &Cnf, declared: &HashSet<Var>) -> Result<Circuit, FormulaError> {
    let clauses = cnf.clauses();
    let mut occurs: HashMap<Lit, Vec<usize>> = HashMap::new();
    let mut binary: HashSet<(Lit, Lit)> = HashSet::new();
    let mut binary_index: HashMap<(Lit, Lit), usize> = HashMap::new();
    for (i, c) in clauses.iter().enumerate() {
        for &l in c.lits() {
            occurs.entry(l).or_default().push(i);
        }
        if let [a, b] = c.lits() {
            binary.insert((*a, *b));
            binary_index.entry((*a, *b)).or_insert(i);
        }
    }
    let aux: Vec<Var> = {
        let mut s: Vec<Var> = clauses
            .iter()
            .flat_map(|c| c.lits().iter().map(|l| l.var()))
            .filter(|v| !declared.contains(v))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        s.sort();
        s
    };
    let mut used = vec![false; clauses.len()];
    let mut defs: BTreeMap<Var, Definition> = BTreeMap::new();
    let key = |a: Lit, b: Lit| if a < b { (a, b) } else { (b, a) };

    for &g in &aux {
        // AND pattern, either polarity: (p ∨ ¬l1 ∨ … ∨ ¬lk) with (¬p ∨ li) for all i.
        let mut found = false;
        for p in [g.positive(), g.negative()] {
            let Some(cands) = occurs.get(&p) else { continue };
            for &ci in cands {
                if used[ci] || clauses[ci].len() < 2 {
                    continue;
                }
                let operands: Vec<Lit> = clauses[ci]
                    .lits()
                    .iter()
                    .filter(|&&l| l != p)
                    .map(|&l| !l)
                    .collect();
                let bins: Option<Vec<usize>> = operands
                    .iter()
                    .map(|&l| {
                        binary_index
                            .get(&key(!p, l))
                            .copied()
                            .filter(|&bi| !used[bi] && bi != ci)
                    })
                    .collect();
                if let Some(bins) = bins {
                    used[ci] = true;
                    for bi in bins {
                        used[bi] = true;
                    }
                    defs.insert(g, Definition::And(p, operands));
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
        if found {
            continue;
        }
        // XOR pattern: four ternary clauses over {g, a, b}.
        if let Some(cands) = occurs.get(&g.positive()) {
            for &ci in cands {
                if used[ci] || clauses[ci].len() != 3 {
                    continue;
                }
                let others: Vec<Var> = clauses[ci]
                    .lits()
                    .iter()
                    .map(|l| l.var())
                    .filter(|&v| v != g)
                    .collect();
                let (a, b) = (others[0], others[1]);
                if let Some((idx, parity)) = find_xor(clauses, &occurs, &used, g, a, b) {
                    for i in idx {
                        used[i] = true;
                    }
                    defs.insert(g, Definition::Xor(a.positive(), b.positive(), parity));
                    found = true;
                    break;
                }
            }
        }
        if found {
            continue;
        }
        // Forced constant: a unit clause on an otherwise undefined auxiliary.
        for p in [g.positive(), g.negative()] {
            if let Some(&ci) = occurs
                .get(&p)
                .and_then(|c| c.iter().find(|&&ci| !used[ci] && clauses[ci].len() == 1))
            {
                used[ci] = true;
                defs.insert(g, Definition::Const(p.is_positive()));
                break;
            }
        }
    }

    let mut b = CircuitBuilder::new();
    let mut built: HashMap<Var, GateRef> = HashMap::new();
    let mut visiting: HashSet<Var> = HashSet::new();
    let mut constraints = Vec::new();
    for (i, c) in clauses.iter().enumerate() {
        if used[i] {
            continue;
        }
        let mut lits = Vec::with_capacity(c.len());
        for &l in c.lits() {
            let g = lit_gate(&mut b, l, declared, &defs, &mut built, &mut visiting)?;
            lits.push(g);
        }
        constraints.push(b.or_all(lits));
    }
    let _ = binary;
    let out = b.and_all(constraints);
    Ok(b.finish1(out))
}

fn find_xor(
    clauses: &[Clause],
    occurs: &HashMap<Lit, Vec<usize>>,
    used: &[bool],
    g: Var,
    a: Var,
    b: Var,
) -> Option<(Vec<usize>, bool)> {
    // Each ternary clause over {g, a, b} forbids exactly one assignment.
    let mut forbidden: HashMap<u8, usize> = HashMap::new();
    for p in [g.positive(), g.negative()] {
        for &ci in occurs.get(&p).into_iter().flatten() {
            let c = &clauses[ci];
            if used[ci] || c.len() != 3 {
                continue;
            }
            let mut mask = 0u8;
            let mut ok = true;
            for l in c.lits() {
                let bit = if l.var() == g {
                    0
                } else if l.var() == a {
                    1
                } else if l.var() == b {
                    2
                } else {
                    ok = false;
                    break;
                };
                if !l.is_positive() {
                    mask |= 1 << bit;
                }
            }
            if ok {
                forbidden.entry(mask).or_insert(ci);
            }
        }
    }
    for parity in [false, true] {
        // g = a ^ b ^ parity is violated exactly by masks with odd parity mismatch.
        let bad: Vec<u8> = (0u8..8)
            .filter(|m| {
                let (vg, va, vb) = (m & 1 != 0, m & 2 != 0, m & 4 != 0);
                vg != (va ^ vb ^ parity)
            })
            .collect();
        if bad.iter().all(|m| forbidden.contains_key(m)) {
            return Some((bad.iter().map(|m| forbidden[m]).collect(), parity));
        }
    }
    None
}

fn lit_gate(
    b: &mut CircuitBuilder,
    l: Lit,
    declared: &HashSet<Var>,
    defs: &BTreeMap<Var, Definition>,
    built: &mut HashMap<Var, GateRef>,
    visiting: &mut HashSet<Var>,
) -> Result<GateRef, FormulaError> {
    let g = var_gate(b, l.var(), declared, defs, built, visiting)?;
    Ok(if l.is_positive() { g } else { b.not(g) })
}

fn var_gate(
    b: &mut CircuitBuilder,
    v: Var,
    declared: &HashSet<Var>,
    defs: &BTreeMap<Var, Definition>,
    built: &mut HashMap<Var, GateRef>,
    visiting: &mut HashSet<Var>,
) -> Result<GateRef, FormulaError> {
    if declared.contains(&v) {
        return Ok(b.input(v));
    }
    if let Some(&g) = built.get(&v) {
        return Ok(g);
    }
    if !visiting.insert(v) {
        return Err(FormulaError::Malformed(format!(
            "auxiliary variable {v} has a cyclic definition"
        )));
    }
    let g = match defs.get(&v) {
        None => {
            return Err(FormulaError::Malformed(format!(
                "auxiliary variable {v} has no recognizable gate definition"
            )))
        }
        Some(Definition::Const(c)) => b.constant(*c),
        Some(Definition::And(p, ops)) => {
            let mut gs = Vec::with_capacity(ops.len());
            for &o in ops {
                gs.push(lit_gate(b, o, declared, defs, built, visiting)?);
            }
            let a = b.and_all(gs);
            if p.is_positive() {
                a
            } else {
                b.not(a)
            }
        }
        Some(Definition::Xor(x, y, parity)) => {
            let gx = lit_gate(b, *x, declared, defs, built, visiting)?;
            let gy = lit_gate(b, *y, declared, defs, built, visiting)?;
            let r = b.xor(gx, gy);
            if *parity {
                b.not(r)
            } else {
                r
            }
        }
    };
    visiting.remove(&v);
    built.insert(v, g);
    Ok(g)
}

/// Parses QDIMACS (2QBF: `a` block then `e` block) or DIMACS annotated with
/// `c inputs …` / `c outputs …` comment lines.
pub fn parse_spec(text: &str) -> Result<Specification, FormulaError> {
    let mut header: Option<(u32, usize)> = None;
    let mut inputs: Vec<Var> = Vec::new();
    let mut outputs: Vec<Var> = Vec::new();
    let mut annotated = false;
    let mut quantified = false;
    let mut block_order: Vec<char> = Vec::new();
    let mut seen: HashMap<Var, usize> = HashMap::new();
    let mut cnf = Cnf::new(0);
    let mut pending: Vec<Lit> = Vec::new();
    let mut pending_line = 0;

    let err = |line: usize, msg: &str| FormulaError::Parse {
        line,
        message: msg.to_string(),
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let first = toks.next().unwrap();
        match first {
            "c" => {
                let rest: Vec<&str> = toks.collect();
                if let Some((&kind, vars)) = rest.split_first() {
                    let target = match kind {
                        "inputs" => &mut inputs,
                        "outputs" => &mut outputs,
                        _ => continue,
                    };
                    annotated = true;
                    for t in vars {
                        let id: u32 = t
                            .parse()
                            .map_err(|_| err(line_no, &format!("bad variable '{t}'")))?;
                        if id == 0 {
                            return Err(err(line_no, "variable 0 in annotation"));
                        }
                        let v = Var::new(id);
                        if seen.insert(v, line_no).is_some() {
                            return Err(FormulaError::OverlappingBlocks {
                                var: v,
                                line: Some(line_no),
                            });
                        }
                        target.push(v);
                    }
                }
            }
            "p" => {
                if header.is_some() {
                    return Err(err(line_no, "duplicate header"));
                }
                let parts: Vec<&str> = toks.collect();
                if parts.len() != 3 || parts[0] != "cnf" {
                    return Err(err(line_no, "malformed header, expected 'p cnf V C'"));
                }
                let nv = parts[1]
                    .parse()
                    .map_err(|_| err(line_no, "malformed variable count"))?;
                let nc = parts[2]
                    .parse()
                    .map_err(|_| err(line_no, "malformed clause count"))?;
                header = Some((nv, nc));
                cnf = Cnf::new(nv);
            }
            "a" | "e" => {
                let Some((nv, _)) = header else {
                    return Err(err(line_no, "quantifier block before header"));
                };
                if !cnf.is_empty() || !pending.is_empty() {
                    return Err(err(line_no, "quantifier block after clauses"));
                }
                let tag = first.chars().next().unwrap();
                block_order.push(tag);
                quantified = true;
                let target = if tag == 'a' { &mut inputs } else { &mut outputs };
                let mut terminated = false;
                for t in toks {
                    let id: i64 = t
                        .parse()
                        .map_err(|_| err(line_no, &format!("bad variable '{t}'")))?;
                    if id == 0 {
                        terminated = true;
                        break;
                    }
                    if id < 0 || id as u32 > nv {
                        return Err(FormulaError::UndeclaredVariable {
                            var: Var::new(id.unsigned_abs() as u32),
                            line: Some(line_no),
                        });
                    }
                    let v = Var::new(id as u32);
                    if seen.insert(v, line_no).is_some() {
                        return Err(FormulaError::OverlappingBlocks {
                            var: v,
                            line: Some(line_no),
                        });
                    }
                    target.push(v);
                }
                if !terminated {
                    return Err(err(line_no, "quantifier block not terminated by 0"));
                }
            }
            _ => {
                let Some((nv, _)) = header else {
                    return Err(err(line_no, "clause before header"));
                };
                if pending.is_empty() {
                    pending_line = line_no;
                }
                for t in std::iter::once(first).chain(toks) {
                    let lit: i64 = t
                        .parse()
                        .map_err(|_| err(line_no, &format!("bad literal '{t}'")))?;
                    if lit == 0 {
                        cnf.add_clause(pending.drain(..));
                        if pending.is_empty() && cnf.num_vars() > nv {
                            unreachable!();
                        }
                        continue;
                    }
                    if lit.unsigned_abs() > nv as u64 {
                        return Err(FormulaError::UndeclaredVariable {
                            var: Var::new(lit.unsigned_abs() as u32),
                            line: Some(line_no),
                        });
                    }
                    pending.push(Lit::from_dimacs(lit));
                }
            }
        }
    }
    let Some((nv, nc)) = header else {
        return Err(err(text.lines().count().max(1), "missing 'p cnf' header"));
    };
    if !pending.is_empty() {
        return Err(err(pending_line, "clause not terminated by 0"));
    }
    let _ = nc;
    if quantified && annotated {
        return Err(err(1, "both quantifier blocks and input/output annotations present"));
    }
    if quantified && (block_order.len() > 2 || block_order.first() != Some(&'a') && block_order.len() == 2) {
        return Err(err(1, "expected a 2QBF prefix: one universal block then one existential block"));
    }
    if annotated {
        if let Some((&v, &line)) = seen.iter().find(|(v, _)| v.id() > nv) {
            return Err(FormulaError::UndeclaredVariable {
                var: v,
                line: Some(line),
            });
        }
    }
    let source = if quantified {
        SourceFormat::Qdimacs
    } else {
        SourceFormat::AnnotatedDimacs
    };
    Specification::from_cnf(inputs, outputs, cnf, source)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Var {
        Var::new(i)
    }

    #[test]
    fn unread_output_is_not_an_auxiliary() {
        let mut b = CircuitBuilder::new();
        let (x, y) = (b.input(v(1)), b.input(v(2)));
        let f = b.and(x, y);
        let s = Specification::from_circuit(vec![v(1)], vec![v(2), v(3)], b.finish1(f)).unwrap();
        assert!(s
            .cnf()
            .clauses()
            .iter()
            .all(|c| c.lits().iter().all(|l| l.var() != v(3))));
        assert!(s.num_vars() >= 4);
    }

    #[test]
    fn smallest_qdimacs() {
        let s = parse_spec("p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n").unwrap();
        assert_eq!(s.inputs(), &[v(1)]);
        assert_eq!(s.outputs(), &[v(2)]);
        assert_eq!(s.cnf().len(), 1);
        assert_eq!(s.source(), SourceFormat::Qdimacs);
        assert!(s.eval(&[false], &[true]));
        assert!(!s.eval(&[false], &[false]));
        assert_eq!(s.variable(v(2)).role, Role::Output);
        assert_eq!(s.variable(v(2)).role_index, 1);
    }

    #[test]
    fn annotated_dimacs_matches_qdimacs() {
        let q = parse_spec("p cnf 3 2\na 1 2 0\ne 3 0\n1 3 0\n-2 -3 0\n").unwrap();
        let d = parse_spec("c inputs 1 2\nc outputs 3\np cnf 3 2\n1 3 0\n-2 -3 0\n").unwrap();
        assert_eq!(q.inputs(), d.inputs());
        assert_eq!(q.outputs(), d.outputs());
        assert_eq!(q.cnf(), d.cnf());
        assert_eq!(d.source(), SourceFormat::AnnotatedDimacs);
    }

    #[test]
    fn undeclared_variable_reports_line() {
        let e = parse_spec("p cnf 4 2\na 1 0\ne 2 0\n1 2 0\n1 5 0\n").unwrap_err();
        assert!(matches!(e, FormulaError::UndeclaredVariable { var, line: Some(5) } if var == v(5)));
    }

    #[test]
    fn malformed_header_and_overlap() {
        let e = parse_spec("p dnf 2 1\n1 0\n").unwrap_err();
        assert!(matches!(e, FormulaError::Parse { line: 1, .. }));
        let e = parse_spec("p cnf 2 1\na 1 0\ne 1 2 0\n1 2 0\n").unwrap_err();
        assert!(matches!(e, FormulaError::OverlappingBlocks { line: Some(3), .. }));
        let e = parse_spec("p cnf 2 1\n1 2\n").unwrap_err();
        assert!(matches!(e, FormulaError::Parse { line: 2, .. }));
    }

    #[test]
    fn tseitin_auxiliaries_are_recovered() {
        // y <-> (x1 and x2) with aux 4 <-> x1 ∧ x2, 5 <-> 4 xor y negated.
        let mut b = CircuitBuilder::new();
        let (x1, x2, y) = (b.input(v(1)), b.input(v(2)), b.input(v(3)));
        let a = b.and(x1, x2);
        let o = b.or(a, x1);
        let f = b.xnor(o, y);
        let spec = Specification::from_circuit(vec![v(1), v(2)], vec![v(3)], b.finish1(f)).unwrap();
        let back = parse_spec(&spec.to_qdimacs()).unwrap();
        for mask in 0..8u32 {
            let bits = [(mask & 1) == 1, (mask & 2) == 2, (mask & 4) == 4];
            assert_eq!(
                spec.eval(&bits[..2], &bits[2..]),
                back.eval(&bits[..2], &bits[2..])
            );
        }
        assert_eq!(back.cnf(), spec.cnf());
    }

    #[test]
    fn undefined_auxiliary_is_rejected() {
        let e = parse_spec("p cnf 3 2\na 1 0\ne 2 0\n1 3 0\n2 -3 0\n").unwrap_err();
        assert!(matches!(e, FormulaError::Malformed(_)));
    }

    #[test]
    fn substitution_identity_and_negation() {
        let mut b = CircuitBuilder::new();
        let (x, y) = (b.input(v(1)), b.input(v(2)));
        let f = b.xnor(x, y);
        let spec = Specification::from_circuit(vec![v(1)], vec![v(2)], b.finish1(f)).unwrap();
        let id = SkolemVector::new(vec![v(1)], vec![v(2)], vec![Circuit::input(v(1))]).unwrap();
        assert_eq!(spec.substitute(&Binding::Skolem(&id)).unwrap().as_constant(), Some(true));
        let mut nb = CircuitBuilder::new();
        let nx = nb.literal(v(1), false);
        let neg = SkolemVector::new(vec![v(1)], vec![v(2)], vec![nb.finish1(nx)]).unwrap();
        assert_eq!(spec.substitute(&Binding::Skolem(&neg)).unwrap().as_constant(), Some(false));
        let c = spec.substitute(&Binding::Constants(&[true])).unwrap();
        assert!(c.eval1(|_| true));
        assert!(!c.eval1(|_| false));
    }
}
