//! Standalone DIMACS solver on the internal engine, printing SAT-competition
//! output. Exit status 10 for satisfiable, 20 for unsatisfiable, 1 on error.

use std::process::ExitCode;

use skolem::formula::{Cnf, Var};
use skolem::oracle::Solver;

fn main() -> ExitCode {
    let Some(path) = std::env::args().nth(1) else {
        eprintln!("usage: dimacs-solve FILE.cnf");
        return ExitCode::from(1);
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {path}: {e}");
            return ExitCode::from(1);
        }
    };
    let cnf = match Cnf::parse_dimacs(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{path}: {e}");
            return ExitCode::from(1);
        }
    };
    let mut solver = Solver::new();
    solver.ensure_vars(cnf.num_vars() as usize);
    for c in cnf.clauses() {
        solver.add_clause(c.lits());
    }
    if solver.solve(&[]) {
        println!("s SATISFIABLE");
        let mut line = String::from("v");
        for v in 1..=cnf.num_vars() {
            let lit = i64::from(v);
            line.push_str(&format!(" {}", if solver.model_value(Var::new(v)) { lit } else { -lit }));
        }
        println!("{line} 0");
        ExitCode::from(10)
    } else {
        println!("s UNSATISFIABLE");
        ExitCode::from(20)
    }
}
