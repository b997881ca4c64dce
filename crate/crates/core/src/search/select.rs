//! Operations and the rules choosing among them.

use std::cmp::Ordering;

use super::config::TieBreak;
use crate::arith::{Rational, VarId};

/// Where a real-variable candidate value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Interval,
    /// Solution point of a falsified equality.
    Point,
    /// Unit step used when a variable offers no interval candidate.
    Nudge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealOp {
    pub var: VarId,
    pub value: Rational,
    pub make: u32,
    pub score: i64,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipOp {
    pub var: u32,
    pub make: u32,
    pub score: i64,
    pub last_flip: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operation {
    Real(RealOp),
    Flip(FlipOp),
}

impl Operation {
    pub fn score(&self) -> i64 {
        match self {
            Operation::Real(op) => op.score,
            Operation::Flip(op) => op.score,
        }
    }
}

/// `Less` means `a` is preferred.
pub fn cmp_real(a: &RealOp, b: &RealOp, tie: TieBreak) -> Ordering {
    let rules = match tie {
        TieBreak::SelectionRules => a
            .value
            .cmp_denominator(&b.value)
            .then_with(|| a.value.cmp_abs(&b.value)),
        TieBreak::ScoreOnly => Ordering::Equal,
    };
    b.score
        .cmp(&a.score)
        .then(rules)
        .then_with(|| a.var.cmp(&b.var))
        .then_with(|| a.value.cmp(&b.value))
}

/// `Less` means `a` is preferred: higher score, then least recently flipped.
pub fn cmp_flip(a: &FlipOp, b: &FlipOp) -> Ordering {
    b.score
        .cmp(&a.score)
        .then_with(|| a.last_flip.cmp(&b.last_flip))
        .then_with(|| a.var.cmp(&b.var))
}

fn best_by<T>(ops: &[T], score: impl Fn(&T) -> i64, cmp: impl Fn(&T, &T) -> Ordering) -> (usize, usize) {
    assert!(!ops.is_empty(), "selection from an empty candidate list");
    let mut best = 0;
    for i in 1..ops.len() {
        if cmp(&ops[i], &ops[best]).is_lt() {
            best = i;
        }
    }
    let top = score(&ops[best]);
    let ties = ops.iter().filter(|o| score(o) == top).count();
    (best, ties)
}

/// Index of the chosen operation and the number of candidates sharing its score.
pub fn select_real(ops: &[RealOp], tie: TieBreak) -> (usize, usize) {
    best_by(ops, |o| o.score, |a, b| cmp_real(a, b, tie))
}

pub fn select_flip(ops: &[FlipOp]) -> (usize, usize) {
    best_by(ops, |o| o.score, cmp_flip)
}

/// Chooses among a mixed list; at equal score real operations come first.
pub fn select_operation(ops: &[Operation], tie: TieBreak) -> (usize, usize) {
    best_by(ops, Operation::score, |a, b| match (a, b) {
        (Operation::Real(x), Operation::Real(y)) => cmp_real(x, y, tie),
        (Operation::Flip(x), Operation::Flip(y)) => cmp_flip(x, y),
        (Operation::Real(x), Operation::Flip(y)) => y.score.cmp(&x.score).then(Ordering::Less),
        (Operation::Flip(x), Operation::Real(y)) => y.score.cmp(&x.score).then(Ordering::Greater),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(var: u32, n: i64, d: i64, score: i64) -> RealOp {
        RealOp { var: VarId(var), value: Rational::new(n, d), make: 1, score, origin: Origin::Interval }
    }

    #[test]
    fn smaller_denominator_wins() {
        let ops = [op(0, 5, 2, 2), op(0, 3, 1, 2)];
        assert_eq!(select_real(&ops, TieBreak::SelectionRules), (1, 2));
    }

    #[test]
    fn equal_magnitude_falls_to_value_order() {
        let ops = [op(0, 3, 1, 2), op(0, -3, 1, 2)];
        assert_eq!(select_real(&ops, TieBreak::SelectionRules).0, 1);
    }

    #[test]
    fn score_dominates() {
        let ops = [op(1, 0, 1, 2), op(0, 1, 1, 5)];
        assert_eq!(select_real(&ops, TieBreak::SelectionRules), (1, 1));
    }

    #[test]
    fn smaller_magnitude_wins_then_lower_var() {
        let ops = [op(2, 7, 1, 1), op(3, -2, 1, 1), op(1, 2, 1, 1)];
        assert_eq!(select_real(&ops, TieBreak::SelectionRules), (2, 3));
    }

    #[test]
    fn score_only_skips_the_rules() {
        let ops = [op(1, 3, 1, 2), op(0, 5, 2, 2)];
        assert_eq!(select_real(&ops, TieBreak::ScoreOnly).0, 1);
        assert_eq!(select_real(&ops, TieBreak::SelectionRules).0, 0);
    }

    #[test]
    fn least_recently_flipped_wins() {
        let ops = [
            FlipOp { var: 0, make: 1, score: 3, last_flip: 9 },
            FlipOp { var: 1, make: 1, score: 3, last_flip: 4 },
            FlipOp { var: 2, make: 0, score: 1, last_flip: 0 },
        ];
        assert_eq!(select_flip(&ops), (1, 2));
    }

    #[test]
    fn mixed_selection_is_order_independent() {
        let a = Operation::Real(op(0, 1, 1, 2));
        let b = Operation::Flip(FlipOp { var: 0, make: 1, score: 2, last_flip: 0 });
        let c = Operation::Flip(FlipOp { var: 1, make: 1, score: 1, last_flip: 0 });
        let (i, k) = select_operation(&[a.clone(), b.clone(), c.clone()], TieBreak::SelectionRules);
        let (j, _) = select_operation(&[c, b, a.clone()], TieBreak::SelectionRules);
        assert_eq!((i, k, j), (0, 2, 2));
    }
}
