use rand::Rng;

use crate::formula::{Assignment, Cnf, Lit, Var};

/// Anything clauses can be streamed into.
pub trait ClauseSink {
    fn fresh_var(&mut self) -> Var;
    fn add(&mut self, lits: &[Lit]);
}

impl ClauseSink for Cnf {
    fn fresh_var(&mut self) -> Var {
        self.new_var()
    }

    fn add(&mut self, lits: &[Lit]) {
        self.add_clause(lits.iter().copied());
    }
}

/// `⊕ vars = parity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XorConstraint {
    pub vars: Vec<Var>,
    pub parity: bool,
}

impl XorConstraint {
    /// Each variable of `proj` is included with probability 1/2; the parity
    /// bit is uniform. The resulting family is pairwise independent.
    pub fn random(proj: &[Var], rng: &mut impl Rng) -> XorConstraint {
        XorConstraint {
            vars: proj.iter().copied().filter(|_| rng.random()).collect(),
            parity: rng.random(),
        }
    }

    pub fn holds(&self, a: &Assignment) -> bool {
        self.vars
            .iter()
            .fold(false, |acc, &v| acc ^ a.get(v).expect("assigned"))
            == self.parity
    }

    /// Chains the XOR through fresh auxiliaries (at most 4 clauses per
    /// variable). When `activation` is given, only the final parity clause is
    /// guarded by it, so the constraint is in force exactly when it holds.
    pub fn encode(&self, sink: &mut impl ClauseSink, activation: Option<Lit>) {
        let guard = |mut c: Vec<Lit>| {
            if let Some(a) = activation {
                c.push(!a);
            }
            c
        };
        let Some((&first, rest)) = self.vars.split_first() else {
            if self.parity {
                sink.add(&guard(Vec::new()));
            }
            return;
        };
        let mut acc = first.positive();
        for &v in rest {
            let t = sink.fresh_var().positive();
            let x = v.positive();
            sink.add(&[!t, acc, x]);
            sink.add(&[!t, !acc, !x]);
            sink.add(&[t, !acc, x]);
            sink.add(&[t, acc, !x]);
            acc = t;
        }
        sink.add(&guard(vec![if self.parity { acc } else { !acc }]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::stream;

    #[test]
    fn encoding_preserves_projected_models() {
        // Over an empty base CNF on 6 variables, the encoded constraint must
        // admit exactly the assignments with the right parity, each with
        // exactly one auxiliary completion.
        for seed in 0..20 {
            let proj: Vec<Var> = (1..=6).map(Var::new).collect();
            let x = XorConstraint::random(&proj, &mut stream(seed, "xor-test", 0));
            let mut cnf = Cnf::new(6);
            x.encode(&mut cnf, None);
            assert!(cnf.len() <= 4 * x.vars.len().max(1));
            let aux: Vec<Var> = (7..=cnf.num_vars()).map(Var::new).collect();
            for m in 0..64u32 {
                let mut a = Assignment::from_pairs(proj.iter().map(|&v| (v, (m >> (v.id() - 1)) & 1 == 1)));
                let completions = (0..1u32 << aux.len())
                    .filter(|am| {
                        for (i, &v) in aux.iter().enumerate() {
                            a.set(v, (am >> i) & 1 == 1);
                        }
                        cnf.is_satisfied_by(&a)
                    })
                    .count();
                assert_eq!(completions, x.holds(&a) as usize);
            }
        }
    }

    #[test]
    fn inactive_constraint_is_vacuous() {
        let mut cnf = Cnf::new(3);
        let act = Var::new(3).positive();
        XorConstraint {
            vars: vec![],
            parity: true,
        }
        .encode(&mut cnf, Some(act));
        assert_eq!(cnf.clauses()[0].lits(), &[!act]);
    }
}
