//! Polarity-aware structural clausification.
//!
//! Assertions are first brought into negation normal form with constants
//! folded. Conjunctions of disjunctions of literals become clauses directly;
//! any other nested subformula is named by a fresh propositional variable
//! whose defining clauses are emitted only for the polarities in which it is
//! used. Structurally equal subformulas share one variable.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::normalize::{normalize_atom, AtomLit, Normalized, VarIndex};
use super::script::Problem;
use super::term::{Model, Sort, Term};
use super::{desugar, FrontendError};
use crate::arith::{Rational, VarId};

/// Index of a propositional variable (declared or auxiliary).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoolVar(pub u32);

impl BoolVar {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Literal {
    Bool { var: BoolVar, negated: bool },
    Atom(AtomLit),
}

impl Literal {
    pub fn negate(&self) -> Literal {
        match self {
            Literal::Bool { var, negated } => Literal::Bool { var: *var, negated: !negated },
            Literal::Atom(a) => Literal::Atom(a.negate()),
        }
    }

    pub fn holds(&self, reals: &[Rational], bools: &[bool]) -> bool {
        match self {
            Literal::Bool { var, negated } => bools[var.index()] != *negated,
            Literal::Atom(a) => a.holds(reals),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Bool { var, negated: false } => write!(f, "p{}", var.0),
            Literal::Bool { var, negated: true } => write!(f, "!p{}", var.0),
            Literal::Atom(a) => write!(f, "({a})"),
        }
    }
}

pub type Clause = Vec<Literal>;

/// A clause set over polynomial atoms and propositional variables.
#[derive(Clone, Debug)]
pub struct ClausalFormula {
    /// Names of real variables, indexed by [`VarId`].
    pub real_vars: Vec<String>,
    /// Names of propositional variables, indexed by [`BoolVar`]; declared
    /// ones first, auxiliaries after.
    pub bool_vars: Vec<String>,
    pub num_declared_bools: usize,
    /// Declarations in source order, for printing models.
    pub decls: Vec<(String, Sort)>,
    pub clauses: Vec<Clause>,
    /// An assertion folded to `false`; no clause set is produced for it.
    pub trivially_false: bool,
    /// Conjunction of the asserted terms as elaborated, before any rewriting.
    pub original: Term,
}

impl ClausalFormula {
    pub fn num_aux(&self) -> usize {
        self.bool_vars.len() - self.num_declared_bools
    }

    pub fn is_satisfied_by(&self, reals: &[Rational], bools: &[bool]) -> bool {
        !self.trivially_false
            && self.clauses.iter().all(|c| c.iter().any(|l| l.holds(reals, bools)))
    }

    /// Projects an assignment onto the declared constants.
    pub fn to_model(&self, reals: &[Rational], bools: &[bool]) -> Model {
        Model {
            reals: self.real_vars.iter().cloned().zip(reals.iter().cloned()).collect(),
            bools: self.bool_vars[..self.num_declared_bools]
                .iter()
                .cloned()
                .zip(bools.iter().copied())
                .collect(),
        }
    }
}

/// Negation-normal-form formula with constants folded away (except at the root).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Formula {
    Const(bool),
    Lit(Literal),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

fn negate(f: &Formula) -> Formula {
    match f {
        Formula::Const(b) => Formula::Const(!b),
        Formula::Lit(l) => Formula::Lit(l.negate()),
        Formula::And(xs) => Formula::Or(xs.iter().map(negate).collect()),
        Formula::Or(xs) => Formula::And(xs.iter().map(negate).collect()),
        Formula::Iff(a, b) => Formula::Iff(a.clone(), Box::new(negate(b))),
    }
}

fn push_unique(out: &mut Vec<Formula>, f: Formula) {
    if !out.contains(&f) {
        out.push(f);
    }
}

fn mk_junction(xs: Vec<Formula>, is_and: bool) -> Formula {
    let absorbing = Formula::Const(!is_and);
    let mut out = Vec::with_capacity(xs.len());
    for x in xs {
        match x {
            Formula::Const(b) if b == is_and => {}
            Formula::Const(_) => return absorbing,
            Formula::And(inner) if is_and => inner.into_iter().for_each(|f| push_unique(&mut out, f)),
            Formula::Or(inner) if !is_and => inner.into_iter().for_each(|f| push_unique(&mut out, f)),
            other => push_unique(&mut out, other),
        }
    }
    match out.len() {
        0 => Formula::Const(is_and),
        1 => out.pop().unwrap(),
        _ if is_and => Formula::And(out),
        _ => Formula::Or(out),
    }
}

fn mk_iff(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::Const(true), f) | (f, Formula::Const(true)) => f,
        (Formula::Const(false), f) | (f, Formula::Const(false)) => negate(&f),
        (a, b) if a == b => Formula::Const(true),
        (a, b) => Formula::Iff(Box::new(a), Box::new(b)),
    }
}

struct Builder<'a> {
    real_index: &'a VarIndex,
    bool_index: &'a HashMap<String, BoolVar>,
}

impl Builder<'_> {
    /// Converts a desugared term, pushing the negation when `positive` is false.
    fn formula(&self, t: &Term, positive: bool) -> Result<Formula, FrontendError> {
        Ok(match t {
            Term::Bool(b) => Formula::Const(*b == positive),
            Term::Var(name, Sort::Bool) => Formula::Lit(Literal::Bool {
                var: self.bool_index[name],
                negated: !positive,
            }),
            Term::Not(x) => self.formula(x, !positive)?,
            Term::And(xs) | Term::Or(xs) => {
                let children = xs.iter().map(|x| self.formula(x, positive)).collect::<Result<Vec<_>, _>>()?;
                let is_and = matches!(t, Term::And(_)) == positive;
                mk_junction(children, is_and)
            }
            Term::Xor(xs) | Term::Eq(xs) => {
                let [a, b] = xs.as_slice() else {
                    return Err(FrontendError::Unsupported("non-binary connective after desugaring".into()));
                };
                // xor(a, b) = iff(a, ¬b)
                let flip = matches!(t, Term::Xor(_)) == positive;
                mk_iff(self.formula(a, true)?, self.formula(b, !flip)?)
            }
            Term::Cmp(..) => match normalize_atom(t, self.real_index)? {
                Normalized::Const(b) => Formula::Const(b == positive),
                Normalized::Atom(a) => Formula::Lit(Literal::Atom(if positive { a } else { a.negate() })),
            },
            other => {
                return Err(FrontendError::Unsupported(format!("term outside the core fragment: {other:?}")))
            }
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Polarity {
    Pos,
    Neg,
    Both,
}

struct Clausifier {
    clauses: Vec<Clause>,
    aux_names: Vec<String>,
    first_aux: u32,
    taken: HashSet<String>,
    /// Defined subformula → (variable, positive clauses emitted, negative clauses emitted).
    defs: HashMap<Formula, (BoolVar, bool, bool)>,
    trivially_false: bool,
}

impl Clausifier {
    fn fresh(&mut self) -> BoolVar {
        let id = self.first_aux + self.aux_names.len() as u32;
        let mut name = format!("tseitin!{}", self.aux_names.len());
        while self.taken.contains(&name) {
            name.push('!');
        }
        self.taken.insert(name.clone());
        self.aux_names.push(name);
        BoolVar(id)
    }

    fn emit(&mut self, lits: Vec<Literal>) {
        let mut clause: Vec<Literal> = Vec::with_capacity(lits.len());
        for l in lits {
            if clause.contains(&l.negate()) && matches!(l, Literal::Bool { .. }) {
                return;
            }
            if !clause.contains(&l) {
                clause.push(l);
            }
        }
        self.clauses.push(clause);
    }

    fn assert_top(&mut self, f: Formula) {
        match f {
            Formula::Const(true) => {}
            Formula::Const(false) => self.trivially_false = true,
            Formula::And(xs) => xs.into_iter().for_each(|x| self.assert_top(x)),
            Formula::Or(xs) => {
                let lits = xs.iter().map(|x| self.literal(x, Polarity::Pos)).collect();
                self.emit(lits);
            }
            other => {
                let l = self.literal(&other, Polarity::Pos);
                self.emit(vec![l]);
            }
        }
    }

    /// A literal equivalent to `f` in the requested polarity.
    fn literal(&mut self, f: &Formula, pol: Polarity) -> Literal {
        match f {
            Formula::Lit(l) => l.clone(),
            Formula::Const(_) => unreachable!("constants are folded below the root"),
            _ => Literal::Bool { var: self.define(f, pol), negated: false },
        }
    }

    fn define(&mut self, f: &Formula, pol: Polarity) -> BoolVar {
        let (var, has_pos, has_neg) = match self.defs.get(f) {
            Some(&entry) => entry,
            None => (self.fresh(), false, false),
        };
        let want_pos = pol != Polarity::Neg && !has_pos;
        let want_neg = pol != Polarity::Pos && !has_neg;
        self.defs.insert(f.clone(), (var, has_pos || want_pos, has_neg || want_neg));
        let a = Literal::Bool { var, negated: false };
        let not_a = a.negate();
        match f {
            Formula::And(xs) => {
                if want_pos {
                    for x in xs {
                        let mut c = vec![not_a.clone()];
                        match x {
                            Formula::Or(ys) => {
                                for y in ys {
                                    c.push(self.literal(y, Polarity::Pos));
                                }
                            }
                            _ => c.push(self.literal(x, Polarity::Pos)),
                        }
                        self.emit(c);
                    }
                }
                if want_neg {
                    let mut c = vec![a.clone()];
                    for x in xs {
                        c.push(self.literal(x, Polarity::Neg).negate());
                    }
                    self.emit(c);
                }
            }
            Formula::Or(xs) => {
                if want_pos {
                    let mut c = vec![not_a.clone()];
                    for x in xs {
                        c.push(self.literal(x, Polarity::Pos));
                    }
                    self.emit(c);
                }
                if want_neg {
                    for x in xs {
                        let mut c = vec![a.clone()];
                        match x {
                            Formula::And(ys) => {
                                for y in ys {
                                    c.push(self.literal(y, Polarity::Neg).negate());
                                }
                            }
                            _ => c.push(self.literal(x, Polarity::Neg).negate()),
                        }
                        self.emit(c);
                    }
                }
            }
            Formula::Iff(x, y) => {
                let lx = self.literal(x, Polarity::Both);
                let ly = self.literal(y, Polarity::Both);
                if want_pos {
                    self.emit(vec![not_a.clone(), lx.negate(), ly.clone()]);
                    self.emit(vec![not_a.clone(), lx.clone(), ly.negate()]);
                }
                if want_neg {
                    self.emit(vec![a.clone(), lx.clone(), ly.clone()]);
                    self.emit(vec![a.clone(), lx.negate(), ly.negate()]);
                }
            }
            Formula::Lit(_) | Formula::Const(_) => unreachable!("literals are never defined"),
        }
        var
    }
}

/// Desugars, normalizes and clausifies every assertion of `problem`.
///
/// Every model of the clauses, restricted to the declared constants,
/// satisfies the original assertions, and every model of the assertions
/// extends to a model of the clauses.
pub fn cnf_transform(problem: &Problem) -> Result<ClausalFormula, FrontendError> {
    let mut real_vars = Vec::new();
    let mut bool_vars = Vec::new();
    let mut real_index = VarIndex::new();
    let mut bool_index = HashMap::new();
    for (name, sort) in &problem.decls {
        match sort {
            Sort::Real => {
                real_index.insert(name.clone(), VarId(real_vars.len() as u32));
                real_vars.push(name.clone());
            }
            Sort::Bool => {
                bool_index.insert(name.clone(), BoolVar(bool_vars.len() as u32));
                bool_vars.push(name.clone());
            }
        }
    }
    let builder = Builder { real_index: &real_index, bool_index: &bool_index };
    let mut cl = Clausifier {
        clauses: Vec::new(),
        aux_names: Vec::new(),
        first_aux: bool_vars.len() as u32,
        taken: problem.decls.iter().map(|(n, _)| n.clone()).collect(),
        defs: HashMap::new(),
        trivially_false: false,
    };
    for t in &problem.assertions {
        let core = desugar(t)?;
        let f = builder.formula(&core, true)?;
        cl.assert_top(f);
    }
    let num_declared_bools = bool_vars.len();
    bool_vars.extend(cl.aux_names);
    Ok(ClausalFormula {
        real_vars,
        bool_vars,
        num_declared_bools,
        decls: problem.decls.clone(),
        clauses: if cl.trivially_false { Vec::new() } else { cl.clauses },
        trivially_false: cl.trivially_false,
        original: problem.conjunction(),
    })
}
