//! Rewrites elaborated terms into the core fragment: no `let`, no `ite`, no
//! `distinct`, no division, no chained comparisons, subtraction folded into
//! negated summands.

use std::collections::HashMap;

use super::term::{Model, Sort, Term};
use super::FrontendError;
use crate::arith::{Rational, Relation};

/// Desugars `t`. See the module documentation for the output fragment.
pub fn desugar(t: &Term) -> Result<Term, FrontendError> {
    Desugarer::default().run(t)
}

#[derive(Default)]
struct Desugarer {
    env: Vec<HashMap<String, Term>>,
}

fn pairwise(xs: Vec<Term>, mk: impl Fn(Term, Term) -> Term) -> Term {
    let mut out = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            out.push(mk(xs[i].clone(), xs[j].clone()));
        }
    }
    conj(out)
}

fn chain(xs: Vec<Term>, mk: impl Fn(Term, Term) -> Term) -> Term {
    conj(xs.windows(2).map(|w| mk(w[0].clone(), w[1].clone())).collect())
}

fn conj(mut xs: Vec<Term>) -> Term {
    if xs.len() == 1 {
        xs.pop().unwrap()
    } else {
        Term::And(xs)
    }
}

fn flatten(xs: Vec<Term>, is_same: impl Fn(&Term) -> Option<&Vec<Term>>) -> Vec<Term> {
    let mut out = Vec::with_capacity(xs.len());
    for x in xs {
        match is_same(&x) {
            Some(inner) => out.extend(inner.iter().cloned()),
            None => out.push(x),
        }
    }
    out
}

impl Desugarer {
    fn all(&mut self, xs: &[Term]) -> Result<Vec<Term>, FrontendError> {
        xs.iter().map(|x| self.run(x)).collect()
    }

    fn run(&mut self, t: &Term) -> Result<Term, FrontendError> {
        Ok(match t {
            Term::Bool(_) | Term::Num(_) | Term::Var(_, _) => t.clone(),
            Term::Local(name, _) => self
                .env
                .iter()
                .rev()
                .find_map(|scope| scope.get(name))
                .cloned()
                .expect("elaboration resolved every local name"),
            Term::Let(bindings, body) => {
                let mut scope = HashMap::new();
                for (name, bound) in bindings {
                    scope.insert(name.clone(), self.run(bound)?);
                }
                self.env.push(scope);
                let out = self.run(body);
                self.env.pop();
                out?
            }
            Term::Not(x) => Term::Not(Box::new(self.run(x)?)),
            Term::And(xs) => Term::And(flatten(self.all(xs)?, |t| match t {
                Term::And(v) => Some(v),
                _ => None,
            })),
            Term::Or(xs) => Term::Or(flatten(self.all(xs)?, |t| match t {
                Term::Or(v) => Some(v),
                _ => None,
            })),
            Term::Implies(xs) => {
                let mut xs = self.all(xs)?;
                let last = xs.pop().expect("=> has at least two arguments");
                let mut disj: Vec<Term> = xs.into_iter().map(Term::not).collect();
                disj.push(last);
                Term::Or(disj)
            }
            Term::Xor(xs) => {
                let mut it = self.all(xs)?.into_iter();
                let first = it.next().expect("xor has arguments");
                it.fold(first, |acc, x| Term::Xor(vec![acc, x]))
            }
            Term::Ite(c, a, b) => {
                if a.sort() == Sort::Real {
                    return Err(FrontendError::Unsupported("real-ite".to_string()));
                }
                let (c, a, b) = (self.run(c)?, self.run(a)?, self.run(b)?);
                Term::Or(vec![
                    Term::And(vec![c.clone(), a]),
                    Term::And(vec![Term::not(c), b]),
                ])
            }
            Term::Eq(xs) => {
                let sort = xs[0].sort();
                let xs = self.all(xs)?;
                match sort {
                    Sort::Bool => chain(xs, |a, b| Term::Eq(vec![a, b])),
                    Sort::Real => chain(xs, |a, b| Term::cmp(Relation::Eq, a, b)),
                }
            }
            Term::Distinct(xs) => {
                let sort = xs[0].sort();
                let xs = self.all(xs)?;
                match sort {
                    Sort::Bool => pairwise(xs, |a, b| Term::Xor(vec![a, b])),
                    Sort::Real => pairwise(xs, |a, b| Term::cmp(Relation::Neq, a, b)),
                }
            }
            Term::Cmp(rel, xs) => {
                let rel = *rel;
                chain(self.all(xs)?, |a, b| Term::cmp(rel, a, b))
            }
            Term::Add(xs) => Term::Add(flatten(self.all(xs)?, |t| match t {
                Term::Add(v) => Some(v),
                _ => None,
            })),
            Term::Mul(xs) => Term::Mul(flatten(self.all(xs)?, |t| match t {
                Term::Mul(v) => Some(v),
                _ => None,
            })),
            Term::Sub(xs) => {
                let mut it = self.all(xs)?.into_iter();
                let first = it.next().expect("- has arguments");
                let mut out = vec![first];
                out.extend(it.map(|x| Term::Neg(Box::new(x))));
                Term::Add(flatten(out, |t| match t {
                    Term::Add(v) => Some(v),
                    _ => None,
                }))
            }
            Term::Neg(x) => Term::Neg(Box::new(self.run(x)?)),
            Term::Div(xs) => {
                let mut it = self.all(xs)?.into_iter();
                let numer = it.next().expect("/ has arguments");
                let mut factor = Rational::one();
                for d in it {
                    let value = match Model::default().eval(&d) {
                        Ok(super::Value::Real(v)) => v,
                        _ => return Err(FrontendError::DivisionByNonConstant),
                    };
                    if value.is_zero() {
                        return Err(FrontendError::DivisionByZero);
                    }
                    factor = factor / value;
                }
                Term::Mul(flatten(vec![numer, Term::Num(factor)], |t| match t {
                    Term::Mul(v) => Some(v),
                    _ => None,
                }))
            }
        })
    }
}

/// Whether `t` lies in the desugared fragment.
pub fn is_desugared(t: &Term) -> bool {
    match t {
        Term::Bool(_) | Term::Num(_) | Term::Var(_, _) => true,
        Term::Not(x) | Term::Neg(x) => is_desugared(x),
        Term::And(xs) | Term::Or(xs) | Term::Add(xs) | Term::Mul(xs) => xs.iter().all(is_desugared),
        Term::Xor(xs) | Term::Eq(xs) | Term::Cmp(_, xs) => xs.len() == 2 && xs.iter().all(is_desugared),
        _ => false,
    }
}
