//! Clause database, standard encodings, the built-in CDCL solver, DIMACS
//! emission, and the external-solver bridge.

mod dimacs;
mod encodings;
mod external;
mod solver;

pub use dimacs::{emit_dimacs, parse_dimacs, DimacsError};
pub use encodings::{at_most_one, cardinality_equals, exactly_one, AtMostOneMethod};
pub use external::{solve_external, ExternalSolverError};
pub use solver::Solver;

use std::path::PathBuf;
use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("cardinality bound {k} out of range for {n} literals")]
    KOutOfRange { k: u32, n: usize },
}

/// A propositional variable, numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

/// A signed literal; the sign is the polarity, DIMACS style.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn positive(v: Var) -> Lit {
        Lit(v.0 as i32)
    }

    pub fn negative(v: Var) -> Lit {
        Lit(-(v.0 as i32))
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn code(self) -> i32 {
        self.0
    }
}

impl From<i32> for Lit {
    fn from(code: i32) -> Self {
        assert!(code != 0, "literal code must be non-zero");
        Lit(code)
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

/// A clause database with flat storage. Clauses are non-empty by
/// construction; an unsatisfiable database is a solver verdict, not a build
/// state.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    lits: Vec<Lit>,
    bounds: Vec<u32>,
}

impl CnfFormula {
    pub fn new() -> Self {
        CnfFormula { num_vars: 0, lits: Vec::new(), bounds: vec![0] }
    }

    pub fn with_vars(num_vars: u32) -> Self {
        CnfFormula { num_vars, lits: Vec::new(), bounds: vec![0] }
    }

    pub fn new_var(&mut self) -> Var {
        self.num_vars += 1;
        Var(self.num_vars)
    }

    /// Allocates `n` fresh variables and returns them in order.
    pub fn new_vars(&mut self, n: u32) -> Vec<Var> {
        (0..n).map(|_| self.new_var()).collect()
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.bounds.len() - 1
    }

    /// Adds a clause, deduplicating repeated literals and dropping
    /// tautologies. Panics on an empty clause or out-of-range variables.
    pub fn add_clause(&mut self, clause: &[Lit]) {
        assert!(!clause.is_empty(), "empty clause is a verdict, not a build state");
        let start = self.lits.len();
        'lits: for &l in clause {
            assert!(l.var().0 >= 1 && l.var().0 <= self.num_vars, "literal out of range");
            for &kept in &self.lits[start..] {
                if kept == l {
                    continue 'lits;
                }
                if kept == !l {
                    self.lits.truncate(start);
                    return; // tautology carries no information
                }
            }
            self.lits.push(l);
        }
        self.bounds.push(self.lits.len() as u32);
    }

    pub fn clause(&self, idx: usize) -> &[Lit] {
        let start = self.bounds[idx] as usize;
        let end = self.bounds[idx + 1] as usize;
        &self.lits[start..end]
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[Lit]> + '_ {
        (0..self.num_clauses()).map(move |i| self.clause(i))
    }
}

/// A total assignment over the formula's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn new(values: Vec<bool>) -> Self {
        Model { values }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn value(&self, v: Var) -> bool {
        self.values[(v.0 - 1) as usize]
    }

    pub fn lit_is_true(&self, l: Lit) -> bool {
        self.value(l.var()) == l.is_positive()
    }

    pub fn satisfies(&self, f: &CnfFormula) -> bool {
        f.clauses().all(|c| c.iter().any(|&l| self.lit_is_true(l)))
    }
}

/// Why a solve stopped without a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetKind {
    Conflicts,
    WallClock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Sat(Model),
    Unsat,
    Unknown(BudgetKind),
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(_))
    }
}

/// Per-solve resource limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveBudget {
    pub max_conflicts: Option<u64>,
    pub wall: Option<Duration>,
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget::default()
    }

    pub fn conflicts(n: u64) -> Self {
        SolveBudget { max_conflicts: Some(n), wall: None }
    }
}

/// Which solver runs the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Builtin,
    External(PathBuf),
}

/// Environment variable naming an external DIMACS solver binary.
pub const SAT_BACKEND_ENV: &str = "POLYSHAPE_SAT";

impl Backend {
    /// The external solver named by `POLYSHAPE_SAT`, or the builtin solver.
    pub fn from_env() -> Backend {
        match std::env::var(SAT_BACKEND_ENV) {
            Ok(path) if !path.is_empty() => Backend::External(PathBuf::from(path)),
            _ => Backend::Builtin,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    External(#[from] ExternalSolverError),
}

/// One-shot solve through the chosen backend.
pub fn solve(
    f: &CnfFormula,
    assumptions: &[Lit],
    backend: &Backend,
    budget: &SolveBudget,
) -> Result<SolveOutcome, SolveError> {
    match backend {
        Backend::Builtin => {
            let mut solver = Solver::from_formula(f);
            Ok(solver.solve(assumptions, budget))
        }
        Backend::External(path) => Ok(solve_external(path, f, assumptions)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lit_basics() {
        let v = Var(3);
        let l = Lit::positive(v);
        assert_eq!(!l, Lit::negative(v));
        assert_eq!((!l).var(), v);
        assert!(l.is_positive() && !(!l).is_positive());
        assert_eq!(Lit::from(-7), Lit::negative(Var(7)));
    }

    #[test]
    fn formula_dedups_and_drops_tautologies() {
        let mut f = CnfFormula::with_vars(2);
        f.add_clause(&[Lit::from(1), Lit::from(1), Lit::from(-2)]);
        assert_eq!(f.clause(0), &[Lit::from(1), Lit::from(-2)]);
        f.add_clause(&[Lit::from(1), Lit::from(-1)]);
        assert_eq!(f.num_clauses(), 1);
    }

    #[test]
    #[should_panic(expected = "empty clause")]
    fn formula_rejects_empty_clause() {
        let mut f = CnfFormula::with_vars(1);
        f.add_clause(&[]);
    }
}
