//! Satisfying domains of a single relation in one variable.
//!
//! Strict bounds stand for open half-lines; no infinitesimal is ever added
//! to a value.

use std::cmp::Ordering;

use super::{Rational, Relation};

/// End point of a half-line. `strict` excludes the point itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bound {
    pub value: Rational,
    pub strict: bool,
}

impl Bound {
    pub fn new(value: Rational, strict: bool) -> Self {
        Bound { value, strict }
    }

    pub fn closed(value: Rational) -> Self {
        Bound { value, strict: false }
    }

    pub fn open(value: Rational) -> Self {
        Bound { value, strict: true }
    }

    /// Whether `v` lies in the upper half-line `(-∞, value)` / `(-∞, value]`.
    pub fn admits_below(&self, v: &Rational) -> bool {
        match v.cmp(&self.value) {
            Ordering::Less => true,
            Ordering::Equal => !self.strict,
            Ordering::Greater => false,
        }
    }

    /// Whether `v` lies in the lower half-line `(value, ∞)` / `[value, ∞)`.
    pub fn admits_above(&self, v: &Rational) -> bool {
        match v.cmp(&self.value) {
            Ordering::Greater => true,
            Ordering::Equal => !self.strict,
            Ordering::Less => false,
        }
    }

    /// Orders upper bounds by the half-lines they describe: `(-∞, u)` sits
    /// just before `(-∞, u]`.
    pub fn cmp_as_upper(&self, other: &Bound) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| other.strict.cmp(&self.strict))
    }

    /// Orders lower bounds by the half-lines they describe, largest set first
    /// reversed: `[l, ∞)` is smaller than `(l, ∞)`.
    pub fn cmp_as_lower(&self, other: &Bound) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| self.strict.cmp(&other.strict))
    }
}

/// Solution set of `a·x + b ⋈ k` in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatDomain {
    Empty,
    Full,
    /// `(-∞, u)` or `(-∞, u]`.
    UpperHalfLine(Bound),
    /// `(l, ∞)` or `[l, ∞)`.
    LowerHalfLine(Bound),
    Point(Rational),
    /// Everything except one point.
    ComplementPoint(Rational),
}

impl SatDomain {
    pub fn contains(&self, v: &Rational) -> bool {
        match self {
            SatDomain::Empty => false,
            SatDomain::Full => true,
            SatDomain::UpperHalfLine(b) => b.admits_below(v),
            SatDomain::LowerHalfLine(b) => b.admits_above(v),
            SatDomain::Point(p) => v == p,
            SatDomain::ComplementPoint(p) => v != p,
        }
    }
}

/// Exact solution set of `a·x + b ⋈ k`.
pub fn solve_relation(a: &Rational, b: &Rational, rel: Relation, k: &Rational) -> SatDomain {
    if a.is_zero() {
        return if rel.holds(b, k) { SatDomain::Full } else { SatDomain::Empty };
    }
    let root = (k - b) / a;
    let rel = if a.is_negative() { rel.mirror() } else { rel };
    match rel {
        Relation::Le => SatDomain::UpperHalfLine(Bound::closed(root)),
        Relation::Lt => SatDomain::UpperHalfLine(Bound::open(root)),
        Relation::Ge => SatDomain::LowerHalfLine(Bound::closed(root)),
        Relation::Gt => SatDomain::LowerHalfLine(Bound::open(root)),
        Relation::Eq => SatDomain::Point(root),
        Relation::Neq => SatDomain::ComplementPoint(root),
    }
}
