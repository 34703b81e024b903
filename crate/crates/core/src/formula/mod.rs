//! Specifications, circuits, CNF and their text formats.

mod aiger;
mod assignment;
mod circuit;
mod cnf;
mod gatelist;
mod skolem;
mod spec;
mod tseitin;
mod var;

use thiserror::Error;

pub use aiger::{emit_aiger_ascii, parse_aiger_ascii};
pub use assignment::{bits_msb_first, value_msb_first, Assignment};
pub use circuit::{Circuit, CircuitBuilder, Gate, GateRef};
pub use cnf::{Clause, Cnf};
pub use gatelist::{emit_gatelist, parse_gatelist};
pub use skolem::{emit_skolem, parse_skolem, SkolemFormat, SkolemVector};
pub use spec::{parse_spec, Binding, SourceFormat, Specification};
pub use tseitin::{assert_equiv, assert_value, encode_gates, encode_outputs, tseitin, Encoded, TseitinCnf};
pub(crate) use tseitin::xor_gate;
pub use var::{Lit, Role, Var, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}undeclared variable {var}", line_prefix(*.line))]
    UndeclaredVariable { var: Var, line: Option<usize> },
    #[error("{}variable {var} appears in more than one block", line_prefix(*.line))]
    OverlappingBlocks { var: Var, line: Option<usize> },
    #[error("function for output {output} depends on variable {var}, which is not an input or an earlier output")]
    CyclicDependency { output: usize, var: Var },
    #[error("no value for variable {0}")]
    MissingAssignment(Var),
    #[error("{0}")]
    Malformed(String),
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}
