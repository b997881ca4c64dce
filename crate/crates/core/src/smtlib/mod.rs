//! SMT-LIB2 frontend for QF_LRA and multilinear QF_NRA.

mod cnf;
mod desugar;
mod model;
mod normalize;
mod script;
mod sexpr;
mod term;

pub use cnf::{cnf_transform, BoolVar, ClausalFormula, Clause, Literal};
pub use desugar::{desugar, is_desugared};
pub use model::{format_rational, parse_model, print_model, validate_model};
pub use normalize::{normalize_atom, to_polynomial, AtomLit, Normalized, VarIndex};
pub use script::{parse_script, parse_script_bytes, Command, Problem, Script, SUPPORTED_LOGICS};
pub use sexpr::{quote_symbol, read_all, Atom, Pos, SExpr};
pub use term::{EvalError, Model, Sort, Term, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrontendError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unsupported feature: {0}")]
    Unsupported(String),
    #[error("undeclared symbol `{name}` at {line}:{col}")]
    UndeclaredSymbol { name: String, line: usize, col: usize },
    #[error("`{0}` is declared twice")]
    Redeclared(String),
    #[error("sort error at {line}:{col}: {msg}")]
    Sort { msg: String, line: usize, col: usize },
    #[error("division by a non-constant term")]
    DivisionByNonConstant,
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-multilinear term: `{0}` occurs with exponent above 1")]
    NonMultilinear(String),
}

/// Parses, elaborates and clausifies an SMT-LIB2 script.
pub fn compile(text: &str) -> Result<ClausalFormula, FrontendError> {
    let problem = parse_script(text)?.elaborate()?;
    cnf_transform(&problem)
}
