//! Local search over clausal formulas: interval-based moves on real
//! variables, flips on Boolean variables, clause weighting to escape local
//! optima.

mod config;
mod domain;
mod engine;
mod instance;
mod partition;
mod paws;
mod select;
mod state;
mod stats;


pub use config::{Ablation, ConfigError, InitPolicy, OperatorMode, SearchConfig, TieBreak};
pub use domain::ClauseDomain;
pub use engine::{init_assignment, solve, Assignment, Mode, SolveOutcome, SolveResult, Solver, StepOutcome, VarCandidates};
pub use instance::{Atom, ClauseOccurrence, Instance, Lit};
pub use partition::{Endpoint, Interval, IntervalPartition, Side};
pub use paws::{paws_update, PawsBranch};
pub use select::{cmp_flip, cmp_real, select_flip, select_operation, select_real, FlipOp, Operation, Origin, RealOp};
pub use state::{SearchState, VarView, ViewAtom, ViewClause};
pub use stats::SearchStats;
