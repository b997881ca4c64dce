//! Normalization of comparisons into `Σ aᵢ·mᵢ ⋈ k`.

use std::collections::HashMap;
use std::fmt;

use super::term::{Sort, Term};
use super::FrontendError;
use crate::arith::{Polynomial, Rational, Relation, VarId};

/// A polynomial constraint with no constant monomial on the left.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomLit {
    pub poly: Polynomial,
    pub rel: Relation,
    pub k: Rational,
}

impl AtomLit {
    pub fn negate(&self) -> AtomLit {
        AtomLit { poly: self.poly.clone(), rel: self.rel.negate(), k: self.k.clone() }
    }

    pub fn holds(&self, vals: &[Rational]) -> bool {
        self.rel.holds(&self.poly.eval(vals), &self.k)
    }
}

impl fmt::Display for AtomLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.poly.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for v in m.vars() {
                write!(f, "*{v}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " {} {}", self.rel, self.k)
    }
}

/// Result of normalizing a comparison: either a proper atom or a constant
/// when the polynomial cancels out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Const(bool),
    Atom(AtomLit),
}

/// Maps declared real constants to their variable ids.
pub type VarIndex = HashMap<String, VarId>;

/// Converts a desugared real term into a polynomial.
pub fn to_polynomial(t: &Term, vars: &VarIndex) -> Result<Polynomial, FrontendError> {
    Ok(match t {
        Term::Num(c) => Polynomial::constant(c.clone()),
        Term::Var(name, Sort::Real) => Polynomial::var(
            *vars.get(name).ok_or_else(|| FrontendError::UndeclaredSymbol {
                name: name.clone(),
                line: 0,
                col: 0,
            })?,
        ),
        Term::Add(xs) => {
            let mut acc = Polynomial::zero();
            for x in xs {
                acc = acc.add(&to_polynomial(x, vars)?);
            }
            acc
        }
        Term::Neg(x) => to_polynomial(x, vars)?.scale(&-Rational::one()),
        Term::Mul(xs) => {
            let mut acc = Polynomial::constant(Rational::one());
            for x in xs {
                let factor = to_polynomial(x, vars)?;
                acc = acc.mul(&factor).map_err(|v| {
                    let name = vars
                        .iter()
                        .find_map(|(n, id)| (*id == v).then(|| n.clone()))
                        .unwrap_or_else(|| v.to_string());
                    FrontendError::NonMultilinear(name)
                })?;
            }
            acc
        }
        other => {
            return Err(FrontendError::Unsupported(format!("real term outside the core fragment: {other:?}")))
        }
    })
}

/// Moves every monomial to the left and the constant to the right.
pub fn normalize_atom(t: &Term, vars: &VarIndex) -> Result<Normalized, FrontendError> {
    let Term::Cmp(rel, args) = t else {
        return Err(FrontendError::Unsupported(format!("not a comparison: {t:?}")));
    };
    let [lhs, rhs] = args.as_slice() else {
        return Err(FrontendError::Unsupported("comparison chain after desugaring".into()));
    };
    let mut poly = to_polynomial(lhs, vars)?.sub(&to_polynomial(rhs, vars)?);
    let k = -poly.take_constant();
    if poly.is_zero() {
        return Ok(Normalized::Const(rel.holds(&Rational::zero(), &k)));
    }
    Ok(Normalized::Atom(AtomLit { poly, rel: *rel, k }))
}
