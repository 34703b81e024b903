//! The NP oracle: satisfiability queries through the internal CDCL engine or
//! an external DIMACS solver, plus XOR-hash projected counting and sampling.

mod count;
mod external;
mod rng;
mod sample;
pub mod solver;
mod xor;

use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Assignment, Cnf, Lit, Var};

pub use count::{approx_count_projected, approx_count_session, bounded_count, CountConfig, CountEstimate};
pub use external::{solve_external, ExternalSolver};
pub use rng::stream;
pub use sample::{sample_projected, sample_with_retry, SAMPLE_CELL_CAP, SAMPLE_RETRIES};
pub(crate) use sample::sample_session_retry;
pub use solver::{Limits, Solver};
pub use xor::{ClauseSink, XorConstraint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("external solver failed: {0}")]
    Process(String),
    #[error("cannot parse solver output: {0}")]
    Parse(String),
}

/// Answer to a satisfiability query. A model is total over the queried
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleResult {
    Sat(Assignment),
    Unsat,
}

impl OracleResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, OracleResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            OracleResult::Sat(a) => Some(a),
            OracleResult::Unsat => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleStats {
    pub calls: u64,
    pub max_query_clauses: usize,
    pub max_query_vars: usize,
    #[serde(serialize_with = "as_millis")]
    pub wall_time: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

#[derive(Clone, Debug)]
pub enum Engine {
    Internal,
    External(ExternalSolver),
}

/// Handle to a satisfiability engine. Clones share statistics.
#[derive(Clone, Debug)]
pub struct Oracle {
    engine: Engine,
    conflict_limit: Option<u64>,
    time_limit: Option<Duration>,
    stats: Arc<Mutex<OracleStats>>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::internal()
    }
}

impl Oracle {
    pub fn internal() -> Oracle {
        Oracle::new(Engine::Internal)
    }

    pub fn external(solver: ExternalSolver) -> Oracle {
        Oracle::new(Engine::External(solver))
    }

    pub fn new(engine: Engine) -> Oracle {
        Oracle {
            engine,
            conflict_limit: None,
            time_limit: None,
            stats: Arc::default(),
        }
    }

    /// Per-query conflict budget for the internal engine.
    pub fn with_conflict_limit(mut self, limit: u64) -> Oracle {
        self.conflict_limit = Some(limit);
        self
    }

    /// Per-query wall-clock budget.
    pub fn with_time_limit(mut self, limit: Duration) -> Oracle {
        self.time_limit = Some(limit);
        self
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn stats(&self) -> OracleStats {
        *self.stats.lock().unwrap()
    }

    /// A fresh oracle with the same engine and limits but its own statistics.
    pub fn detached(&self) -> Oracle {
        Oracle {
            stats: Arc::default(),
            ..self.clone()
        }
    }

    /// One-shot query. `assumptions` fixes some variables for this call only.
    pub fn solve(&self, cnf: &Cnf, assumptions: &Assignment) -> Result<OracleResult, OracleError> {
        let mut s = self.session(cnf);
        let lits: Vec<Lit> = assumptions.iter().map(|(v, b)| v.lit(b)).collect();
        if s.solve(&lits)? {
            Ok(OracleResult::Sat(s.model_assignment()))
        } else {
            Ok(OracleResult::Unsat)
        }
    }

    /// An incremental session seeded with `cnf`.
    pub fn session(&self, cnf: &Cnf) -> Session {
        let backend = match &self.engine {
            Engine::Internal => {
                let mut s = Solver::new();
                s.ensure_vars(cnf.num_vars() as usize);
                for c in cnf.clauses() {
                    s.add_clause(c.lits());
                }
                Backend::Internal(Box::new(s))
            }
            Engine::External(e) => Backend::External {
                solver: e.clone(),
                cnf: cnf.clone(),
                model: Vec::new(),
            },
        };
        Session {
            backend,
            num_vars: cnf.num_vars(),
            num_clauses: cnf.len(),
            oracle: self.clone(),
        }
    }

    fn record(&self, clauses: usize, vars: usize, elapsed: Duration) {
        let mut s = self.stats.lock().unwrap();
        s.calls += 1;
        s.max_query_clauses = s.max_query_clauses.max(clauses);
        s.max_query_vars = s.max_query_vars.max(vars);
        s.wall_time += elapsed;
    }
}

#[derive(Debug)]
enum Backend {
    Internal(Box<Solver>),
    External {
        solver: ExternalSolver,
        cnf: Cnf,
        model: Vec<bool>,
    },
}

/// Incremental query state: clauses may be added between calls and
/// assumptions hold for one call only.
#[derive(Debug)]
pub struct Session {
    backend: Backend,
    num_vars: u32,
    num_clauses: usize,
    oracle: Oracle,
}

impl Session {
    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn declare(&mut self, v: Var) {
        self.num_vars = self.num_vars.max(v.id());
        match &mut self.backend {
            Backend::Internal(s) => s.ensure_vars(v.index()),
            Backend::External { cnf, .. } => cnf.declare(v),
        }
    }

    pub fn solve(&mut self, assumptions: &[Lit]) -> Result<bool, OracleError> {
        for a in assumptions {
            self.declare(a.var());
        }
        let start = Instant::now();
        let r = match &mut self.backend {
            Backend::Internal(s) => {
                let limits = Limits {
                    conflicts: self.oracle.conflict_limit,
                    deadline: self.oracle.time_limit.map(|t| start + t),
                };
                s.solve_limited(assumptions, &limits)
            }
            Backend::External { solver, cnf, model } => {
                let mut q = cnf.clone();
                for &a in assumptions {
                    q.add_clause([a]);
                }
                let mut solver = solver.clone();
                if let Some(t) = self.oracle.time_limit {
                    solver.timeout = Some(solver.timeout.map_or(t, |u| u.min(t)));
                }
                match solve_external(&q, &solver)? {
                    OracleResult::Sat(a) => {
                        *model = (0..=q.num_vars())
                            .map(|v| v > 0 && a.get(Var::new(v)) == Some(true))
                            .collect();
                        Ok(true)
                    }
                    OracleResult::Unsat => Ok(false),
                }
            }
        };
        self.oracle.record(
            self.num_clauses + assumptions.len(),
            self.num_vars as usize,
            start.elapsed(),
        );
        r
    }

    /// Value of `v` in the last model.
    pub fn value(&self, v: Var) -> bool {
        match &self.backend {
            Backend::Internal(s) => s.model_value(v),
            Backend::External { model, .. } => model[v.index()],
        }
    }

    pub fn lit_value(&self, l: Lit) -> bool {
        l.apply(self.value(l.var()))
    }

    pub fn bits(&self, vars: &[Var]) -> Vec<bool> {
        vars.iter().map(|&v| self.value(v)).collect()
    }

    /// The last model over every variable of the session.
    pub fn model_assignment(&self) -> Assignment {
        Assignment::from_pairs((1..=self.num_vars).map(|v| {
            let v = Var::new(v);
            (v, self.value(v))
        }))
    }
}

impl ClauseSink for Session {
    fn fresh_var(&mut self) -> Var {
        let v = Var::new(self.num_vars + 1);
        self.declare(v);
        v
    }

    fn add(&mut self, lits: &[Lit]) {
        for l in lits {
            if l.var().id() > self.num_vars {
                self.declare(l.var());
            }
        }
        self.num_clauses += 1;
        match &mut self.backend {
            Backend::Internal(s) => s.add_clause(lits),
            Backend::External { cnf, .. } => {
                cnf.add_clause(lits.iter().copied());
            }
        }
    }
}
