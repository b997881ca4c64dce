use std::fmt;

use super::Rational;

/// Comparison between a polynomial and a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Neq,
    Le,
    Lt,
    Ge,
    Gt,
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::Eq,
        Relation::Neq,
        Relation::Le,
        Relation::Lt,
        Relation::Ge,
        Relation::Gt,
    ];

    /// Logical negation: `¬(p ≤ k)` is `p > k`, and so on.
    pub fn negate(self) -> Relation {
        match self {
            Relation::Eq => Relation::Neq,
            Relation::Neq => Relation::Eq,
            Relation::Le => Relation::Gt,
            Relation::Gt => Relation::Le,
            Relation::Lt => Relation::Ge,
            Relation::Ge => Relation::Lt,
        }
    }

    /// The relation obtained after multiplying both sides by a negative number.
    pub fn mirror(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Lt => Relation::Gt,
            Relation::Gt => Relation::Lt,
            r => r,
        }
    }

    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        let ord = lhs.cmp(rhs);
        match self {
            Relation::Eq => ord.is_eq(),
            Relation::Neq => ord.is_ne(),
            Relation::Le => ord.is_le(),
            Relation::Lt => ord.is_lt(),
            Relation::Ge => ord.is_ge(),
            Relation::Gt => ord.is_gt(),
        }
    }

    pub fn smtlib_symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Neq => "distinct",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Neq => "!=",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_is_an_involution_and_complements() {
        let vals: Vec<Rational> = (-2..=2).map(Rational::from_integer).collect();
        for rel in Relation::ALL {
            assert_eq!(rel.negate().negate(), rel);
            assert_eq!(rel.mirror().mirror(), rel);
            for a in &vals {
                for b in &vals {
                    assert_eq!(rel.negate().holds(a, b), !rel.holds(a, b));
                    assert_eq!(rel.mirror().holds(&-a, &-b), rel.holds(a, b));
                }
            }
        }
    }
}
