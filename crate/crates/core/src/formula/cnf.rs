use std::fmt::Write as _;

use super::{Assignment, FormulaError, Lit, Var};

/// A clause: a sorted set of literals without complementary pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(Vec<Lit>);

impl Clause {
    /// Normalizes `lits` (sort, dedup). Returns `None` for tautologies.
    pub fn new(mut lits: Vec<Lit>) -> Option<Clause> {
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
            return None;
        }
        Some(Clause(lits))
    }

    pub fn empty() -> Clause {
        Clause(Vec::new())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.0.binary_search(&lit).is_ok()
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.0
            .iter()
            .any(|&l| a.get(l.var()).is_some_and(|v| l.apply(v)))
    }
}

/// A CNF formula together with the size of its variable table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(num_vars: u32) -> Cnf {
        Cnf {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Allocates a fresh variable.
    pub fn new_var(&mut self) -> Var {
        self.num_vars += 1;
        Var::new(self.num_vars)
    }

    /// Grows the variable table so that `var` is declared.
    pub fn declare(&mut self, var: Var) {
        self.num_vars = self.num_vars.max(var.id());
    }

    /// Adds a clause; tautologies are dropped. Returns whether a clause was added.
    pub fn add_clause(&mut self, lits: impl IntoIterator<Item = Lit>) -> bool {
        let lits: Vec<Lit> = lits.into_iter().collect();
        for l in &lits {
            self.declare(l.var());
        }
        match Clause::new(lits) {
            Some(c) => {
                self.clauses.push(c);
                true
            }
            None => false,
        }
    }

    pub fn push(&mut self, clause: Clause) {
        if let Some(l) = clause.lits().iter().max_by_key(|l| l.var()) {
            self.declare(l.var());
        }
        self.clauses.push(clause);
    }

    pub fn extend(&mut self, other: &Cnf) {
        self.num_vars = self.num_vars.max(other.num_vars);
        self.clauses.extend(other.clauses.iter().cloned());
    }

    /// Maximum clause length.
    pub fn width(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(a))
    }

    /// Returns a copy with every variable renamed through `map`.
    pub fn rename(&self, num_vars: u32, map: impl Fn(Var) -> Var) -> Cnf {
        let mut out = Cnf::new(num_vars);
        for c in &self.clauses {
            out.add_clause(c.lits().iter().map(|l| map(l.var()).lit(l.is_positive())));
        }
        out
    }

    /// Plain DIMACS text.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p cnf {} {}", self.num_vars, self.clauses.len());
        write_clauses(&mut s, self);
        s
    }

    /// Parses plain DIMACS. Comment lines are skipped; the header is
    /// required and its variable count honored, the clause count is not.
    pub fn parse_dimacs(text: &str) -> Result<Cnf, FormulaError> {
        let err = |line: usize, message: String| FormulaError::Parse { line, message };
        let mut cnf: Option<Cnf> = None;
        let mut pending: Vec<Lit> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if cnf.is_some() || parts.len() != 3 || parts[0] != "cnf" {
                    return Err(err(idx + 1, "malformed header, expected 'p cnf V C'".into()));
                }
                let nv = parts[1].parse().map_err(|_| err(idx + 1, "malformed variable count".into()))?;
                cnf = Some(Cnf::new(nv));
                continue;
            }
            let Some(c) = cnf.as_mut() else {
                return Err(err(idx + 1, "clause before 'p cnf' header".into()));
            };
            for t in line.split_whitespace() {
                let x: i64 = t.parse().map_err(|_| err(idx + 1, format!("bad literal '{t}'")))?;
                if x == 0 {
                    c.add_clause(pending.drain(..));
                } else if x.unsigned_abs() > c.num_vars as u64 {
                    return Err(err(idx + 1, format!("literal {x} exceeds the declared variable count")));
                } else {
                    pending.push(Lit::from_dimacs(x));
                }
            }
        }
        let mut cnf = cnf.ok_or_else(|| err(text.lines().count().max(1), "missing 'p cnf' header".into()))?;
        if !pending.is_empty() {
            cnf.add_clause(pending);
        }
        Ok(cnf)
    }
}

pub(crate) fn write_clauses(s: &mut String, cnf: &Cnf) {
    for c in cnf.clauses() {
        for l in c.lits() {
            let _ = write!(s, "{} ", l);
        }
        s.push_str("0\n");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: i64) -> Lit {
        Lit::from_dimacs(v)
    }

    #[test]
    fn tautologies_are_dropped() {
        let mut cnf = Cnf::new(0);
        assert!(!cnf.add_clause([l(1), l(-1), l(2)]));
        assert!(cnf.add_clause([l(2), l(1), l(2)]));
        assert_eq!(cnf.clauses()[0].lits(), &[l(1), l(2)]);
        assert_eq!(cnf.num_vars(), 2);
    }

    #[test]
    fn width_is_max_clause_length() {
        let mut cnf = Cnf::new(4);
        cnf.add_clause([l(1)]);
        cnf.add_clause([l(1), l(-3), l(4)]);
        assert_eq!(cnf.width(), 3);
        assert_eq!(Cnf::new(3).width(), 0);
    }

    #[test]
    fn dimacs_text() {
        let mut cnf = Cnf::new(2);
        cnf.add_clause([l(1), l(-2)]);
        assert_eq!(cnf.to_dimacs(), "p cnf 2 1\n1 -2 0\n");
    }
}
