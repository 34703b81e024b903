//! Adapter for external solvers speaking DIMACS in and SAT-competition
//! output (`s …` / `v …` lines) out.

use std::io::Read;
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::Duration;

use wait_timeout::ChildExt;

use super::{OracleError, OracleResult};
use crate::formula::{Assignment, Cnf, Var};

/// Environment variable naming the solver executable.
pub const SOLVER_ENV: &str = "SKOLEM_SOLVER";
/// Environment variable with a per-call time limit in milliseconds.
pub const TIMEOUT_ENV: &str = "SKOLEM_SOLVER_TIMEOUT_MS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalSolver {
    pub program: PathBuf,
    /// Extra arguments placed before the DIMACS file path.
    pub args: Vec<String>,
    pub timeout: Option<Duration>,
}

impl ExternalSolver {
    pub fn new(program: impl Into<PathBuf>) -> ExternalSolver {
        ExternalSolver {
            program: program.into(),
            args: Vec::new(),
            timeout: None,
        }
    }

    pub fn with_timeout(mut self, t: Duration) -> ExternalSolver {
        self.timeout = Some(t);
        self
    }

    /// Reads the solver path and optional timeout from the environment.
    pub fn from_env() -> Option<ExternalSolver> {
        let program = std::env::var_os(SOLVER_ENV)?;
        let mut s = ExternalSolver::new(program);
        if let Some(ms) = std::env::var(TIMEOUT_ENV).ok().and_then(|t| t.parse().ok()) {
            s.timeout = Some(Duration::from_millis(ms));
        }
        Some(s)
    }
}

/// Runs the external solver on `cnf`. A model is checked against the query
/// before it is returned.
pub fn solve_external(cnf: &Cnf, solver: &ExternalSolver) -> Result<OracleResult, OracleError> {
    let file = tempfile::Builder::new()
        .suffix(".cnf")
        .tempfile()
        .map_err(|e| OracleError::Process(format!("cannot create query file: {e}")))?;
    std::fs::write(file.path(), cnf.to_dimacs())
        .map_err(|e| OracleError::Process(format!("cannot write query file: {e}")))?;
    let mut child = Command::new(&solver.program)
        .args(&solver.args)
        .arg(file.path())
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| OracleError::Process(format!("cannot start {}: {e}", solver.program.display())))?;
    // Drain stdout on a thread so a chatty solver cannot block on a full pipe.
    let mut stdout = child.stdout.take().expect("piped");
    let reader = std::thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let status = match solver.timeout {
        Some(t) => match child.wait_timeout(t) {
            Ok(Some(status)) => status,
            Ok(None) => {
                let _ = child.kill();
                let _ = child.wait();
                return Err(OracleError::ResourceLimit(format!(
                    "external solver exceeded {} ms",
                    t.as_millis()
                )));
            }
            Err(e) => return Err(OracleError::Process(e.to_string())),
        },
        None => child.wait().map_err(|e| OracleError::Process(e.to_string()))?,
    };
    let out = reader
        .join()
        .map_err(|_| OracleError::Process("output reader panicked".into()))?;
    let result = parse_competition_output(&out, cnf.num_vars())?;
    if let Some(code) = status.code() {
        // 10/20 are the conventional codes; anything else besides 0 is a failure.
        if ![0, 10, 20].contains(&code) {
            return Err(OracleError::Process(format!("solver exited with status {code}")));
        }
    }
    if let OracleResult::Sat(a) = &result {
        if !cnf.is_satisfied_by(a) {
            return Err(OracleError::Parse("reported model does not satisfy the query".into()));
        }
    }
    Ok(result)
}

/// Parses `s SATISFIABLE` / `s UNSATISFIABLE` and `v` lines. Variables the
/// solver leaves out of the model are set to false.
pub(crate) fn parse_competition_output(out: &str, num_vars: u32) -> Result<OracleResult, OracleError> {
    let mut status = None;
    let mut values: Vec<i64> = Vec::new();
    for line in out.lines() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = Some(match s.trim() {
                "SATISFIABLE" => true,
                "UNSATISFIABLE" => false,
                other => return Err(OracleError::Parse(format!("unknown status '{other}'"))),
            });
        } else if let Some(v) = line.strip_prefix("v ").or(if line == "v" { Some("") } else { None }) {
            for t in v.split_whitespace() {
                values.push(
                    t.parse()
                        .map_err(|_| OracleError::Parse(format!("bad model literal '{t}'")))?,
                );
            }
        }
    }
    match status {
        None => Err(OracleError::Parse("no status line".into())),
        Some(false) => Ok(OracleResult::Unsat),
        Some(true) => {
            let mut a = Assignment::from_pairs((1..=num_vars).map(|v| (Var::new(v), false)));
            for &x in &values {
                if x == 0 {
                    continue;
                }
                if x.unsigned_abs() > num_vars as u64 {
                    return Err(OracleError::Parse(format!("model literal {x} out of range")));
                }
                a.set(Var::new(x.unsigned_abs() as u32), x > 0);
            }
            Ok(OracleResult::Sat(a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_competition_output() {
        let r = parse_competition_output("c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3).unwrap();
        let a = r.model().unwrap();
        assert_eq!(a.get(Var::new(2)), Some(false));
        assert_eq!(a.get(Var::new(3)), Some(true));
        assert_eq!(parse_competition_output("s UNSATISFIABLE\n", 3).unwrap(), OracleResult::Unsat);
        assert!(matches!(parse_competition_output("s MAYBE\n", 3), Err(OracleError::Parse(_))));
        assert!(matches!(parse_competition_output("garbage\n", 3), Err(OracleError::Parse(_))));
    }
}
