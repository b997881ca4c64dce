//! Satisfying set of a falsified clause as a function of one variable.

use crate::arith::{Bound, Rational, SatDomain};

/// Union of the atom domains of one clause, collapsed to its useful part:
/// the widest upper half-line, the widest lower half-line and the isolated
/// points. A clause holding a falsified disequality is satisfied everywhere
/// except at the current value and is marked co-finite instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseDomain {
    pub clause: u32,
    pub upper: Option<Bound>,
    pub lower: Option<Bound>,
    pub points: Vec<Rational>,
    pub cofinite: bool,
}

impl ClauseDomain {
    pub fn from_atoms(clause: u32, domains: impl IntoIterator<Item = SatDomain>) -> ClauseDomain {
        let mut d = ClauseDomain { clause, upper: None, lower: None, points: Vec::new(), cofinite: false };
        for dom in domains {
            match dom {
                SatDomain::Empty => {}
                SatDomain::Full => {
                    debug_assert!(false, "full domain in a falsified clause");
                    d.cofinite = true;
                }
                SatDomain::ComplementPoint(_) => d.cofinite = true,
                SatDomain::Point(p) => d.points.push(p),
                SatDomain::UpperHalfLine(b) => {
                    if d.upper.as_ref().is_none_or(|u| b.cmp_as_upper(u).is_gt()) {
                        d.upper = Some(b);
                    }
                }
                SatDomain::LowerHalfLine(b) => {
                    if d.lower.as_ref().is_none_or(|l| b.cmp_as_lower(l).is_lt()) {
                        d.lower = Some(b);
                    }
                }
            }
        }
        d.points.sort();
        d.points.dedup();
        if d.cofinite {
            d.upper = None;
            d.lower = None;
            d.points.clear();
        }
        d
    }

    /// Whether assigning `v` satisfies the clause. For a co-finite clause
    /// the excluded point is `current`.
    pub fn contains(&self, v: &Rational, current: &Rational) -> bool {
        if self.cofinite {
            return v != current;
        }
        self.upper.as_ref().is_some_and(|u| u.admits_below(v))
            || self.lower.as_ref().is_some_and(|l| l.admits_above(v))
            || self.points.binary_search(v).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn keeps_widest_bounds() {
        let d = ClauseDomain::from_atoms(
            3,
            [
                SatDomain::UpperHalfLine(Bound::open(q(1, 1))),
                SatDomain::UpperHalfLine(Bound::closed(q(1, 1))),
                SatDomain::UpperHalfLine(Bound::closed(q(0, 1))),
                SatDomain::LowerHalfLine(Bound::open(q(5, 1))),
                SatDomain::LowerHalfLine(Bound::closed(q(5, 1))),
                SatDomain::Point(q(3, 1)),
                SatDomain::Empty,
            ],
        );
        assert_eq!(d.upper, Some(Bound::closed(q(1, 1))));
        assert_eq!(d.lower, Some(Bound::closed(q(5, 1))));
        assert_eq!(d.points, vec![q(3, 1)]);
        let cur = q(2, 1);
        assert!(d.contains(&q(1, 1), &cur) && d.contains(&q(3, 1), &cur) && d.contains(&q(5, 1), &cur));
        assert!(!d.contains(&q(2, 1), &cur) && !d.contains(&q(9, 2), &cur));
    }

    #[test]
    fn disequality_makes_clause_cofinite() {
        let d = ClauseDomain::from_atoms(
            0,
            [SatDomain::ComplementPoint(q(1, 2)), SatDomain::UpperHalfLine(Bound::open(q(0, 1)))],
        );
        assert!(d.cofinite && d.upper.is_none());
        assert!(d.contains(&q(7, 1), &q(1, 2)) && !d.contains(&q(1, 2), &q(1, 2)));
    }
}
