//! Sorted terms and their exact evaluation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::arith::{Rational, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Bool,
    Real,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Bool => "Bool",
            Sort::Real => "Real",
        })
    }
}

/// Term tree after parsing and sort checking.
///
/// `Cmp` carries `<`, `<=`, `>`, `>=` chains before desugaring; afterwards it
/// is always binary and may also hold `=` or `distinct` over reals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Bool(bool),
    Num(Rational),
    /// A declared constant.
    Var(String, Sort),
    /// A `let`-bound name.
    Local(String, Sort),
    Not(Box<Term>),
    And(Vec<Term>),
    Or(Vec<Term>),
    Implies(Vec<Term>),
    Xor(Vec<Term>),
    Ite(Box<Term>, Box<Term>, Box<Term>),
    Eq(Vec<Term>),
    Distinct(Vec<Term>),
    Cmp(Relation, Vec<Term>),
    Add(Vec<Term>),
    Sub(Vec<Term>),
    Neg(Box<Term>),
    Mul(Vec<Term>),
    Div(Vec<Term>),
    Let(Vec<(String, Term)>, Box<Term>),
}

impl Term {
    pub fn sort(&self) -> Sort {
        match self {
            Term::Num(_) | Term::Add(_) | Term::Sub(_) | Term::Neg(_) | Term::Mul(_) | Term::Div(_) => {
                Sort::Real
            }
            Term::Var(_, s) | Term::Local(_, s) => *s,
            Term::Ite(_, t, _) => t.sort(),
            Term::Let(_, body) => body.sort(),
            _ => Sort::Bool,
        }
    }

    pub fn not(t: Term) -> Term {
        Term::Not(Box::new(t))
    }

    pub fn real(name: &str) -> Term {
        Term::Var(name.to_string(), Sort::Real)
    }

    pub fn boolean(name: &str) -> Term {
        Term::Var(name.to_string(), Sort::Bool)
    }

    pub fn cmp(rel: Relation, lhs: Term, rhs: Term) -> Term {
        Term::Cmp(rel, vec![lhs, rhs])
    }
}

/// A value of either sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    Real(Rational),
}

/// Values of the declared constants, keyed by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    pub reals: BTreeMap<String, Rational>,
    pub bools: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no value for `{0}`")]
    Unassigned(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("ill-sorted term")]
    IllSorted,
}

type Env = HashMap<String, Value>;

impl Model {
    /// Evaluates `t` exactly. `let` and `ite` are interpreted directly, so the
    /// result is independent of any rewriting applied for solving.
    pub fn eval(&self, t: &Term) -> Result<Value, EvalError> {
        self.eval_in(t, &Env::new())
    }

    pub fn eval_bool(&self, t: &Term) -> Result<bool, EvalError> {
        match self.eval(t)? {
            Value::Bool(b) => Ok(b),
            Value::Real(_) => Err(EvalError::IllSorted),
        }
    }

    fn eval_in(&self, t: &Term, env: &Env) -> Result<Value, EvalError> {
        let b = |t: &Term| -> Result<bool, EvalError> {
            match self.eval_in(t, env)? {
                Value::Bool(b) => Ok(b),
                Value::Real(_) => Err(EvalError::IllSorted),
            }
        };
        let r = |t: &Term| -> Result<Rational, EvalError> {
            match self.eval_in(t, env)? {
                Value::Real(r) => Ok(r),
                Value::Bool(_) => Err(EvalError::IllSorted),
            }
        };
        Ok(match t {
            Term::Bool(v) => Value::Bool(*v),
            Term::Num(v) => Value::Real(v.clone()),
            Term::Var(name, Sort::Real) => Value::Real(
                self.reals.get(name).cloned().ok_or_else(|| EvalError::Unassigned(name.clone()))?,
            ),
            Term::Var(name, Sort::Bool) => Value::Bool(
                *self.bools.get(name).ok_or_else(|| EvalError::Unassigned(name.clone()))?,
            ),
            Term::Local(name, _) => {
                env.get(name).cloned().ok_or_else(|| EvalError::Unassigned(name.clone()))?
            }
            Term::Not(x) => Value::Bool(!b(x)?),
            Term::And(xs) => {
                let mut acc = true;
                for x in xs {
                    acc &= b(x)?;
                }
                Value::Bool(acc)
            }
            Term::Or(xs) => {
                let mut acc = false;
                for x in xs {
                    acc |= b(x)?;
                }
                Value::Bool(acc)
            }
            Term::Implies(xs) => {
                // right associative
                let mut it = xs.iter().rev();
                let mut acc = b(it.next().ok_or(EvalError::IllSorted)?)?;
                for x in it {
                    acc = !b(x)? || acc;
                }
                Value::Bool(acc)
            }
            Term::Xor(xs) => {
                let mut acc = false;
                for x in xs {
                    acc ^= b(x)?;
                }
                Value::Bool(acc)
            }
            Term::Ite(c, x, y) => {
                if b(c)? {
                    self.eval_in(x, env)?
                } else {
                    self.eval_in(y, env)?
                }
            }
            Term::Eq(xs) => {
                let vals = xs.iter().map(|x| self.eval_in(x, env)).collect::<Result<Vec<_>, _>>()?;
                Value::Bool(vals.windows(2).all(|w| w[0] == w[1]))
            }
            Term::Distinct(xs) => {
                let vals = xs.iter().map(|x| self.eval_in(x, env)).collect::<Result<Vec<_>, _>>()?;
                let mut all = true;
                for i in 0..vals.len() {
                    for j in i + 1..vals.len() {
                        all &= vals[i] != vals[j];
                    }
                }
                Value::Bool(all)
            }
            Term::Cmp(rel, xs) => {
                let vals = xs.iter().map(r).collect::<Result<Vec<_>, _>>()?;
                Value::Bool(vals.windows(2).all(|w| rel.holds(&w[0], &w[1])))
            }
            Term::Add(xs) => {
                let mut acc = Rational::zero();
                for x in xs {
                    acc += &r(x)?;
                }
                Value::Real(acc)
            }
            Term::Sub(xs) => {
                let mut it = xs.iter();
                let first = r(it.next().ok_or(EvalError::IllSorted)?)?;
                if xs.len() == 1 {
                    Value::Real(-first)
                } else {
                    let mut acc = first;
                    for x in it {
                        acc -= &r(x)?;
                    }
                    Value::Real(acc)
                }
            }
            Term::Neg(x) => Value::Real(-r(x)?),
            Term::Mul(xs) => {
                let mut acc = Rational::one();
                for x in xs {
                    acc = acc * r(x)?;
                }
                Value::Real(acc)
            }
            Term::Div(xs) => {
                let mut it = xs.iter();
                let mut acc = r(it.next().ok_or(EvalError::IllSorted)?)?;
                for x in it {
                    let d = r(x)?;
                    if d.is_zero() {
                        return Err(EvalError::DivisionByZero);
                    }
                    acc = acc / d;
                }
                Value::Real(acc)
            }
            Term::Let(bindings, body) => {
                // parallel let: every binding sees the outer environment
                let mut inner = env.clone();
                for (name, bound) in bindings {
                    inner.insert(name.clone(), self.eval_in(bound, env)?);
                }
                self.eval_in(body, &inner)?
            }
        })
    }
}
