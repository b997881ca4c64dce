//! Partition of a variable's value line by the bounds of falsified clauses,
//! and the candidate values drawn from each part.

use std::cmp::Ordering;

use super::config::OperatorMode;
use super::domain::ClauseDomain;
use super::select::Origin;
use crate::arith::{mediant, Bound, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub value: Rational,
    pub closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Below every falsified upper bound's complement: the interval ends at
    /// an upper bound threshold.
    Upper,
    /// The gap holding the current value.
    Middle,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Option<Endpoint>,
    pub hi: Option<Endpoint>,
    pub side: Side,
    /// Falsified clauses satisfied by every value of the interval.
    pub make: u32,
}

impl Interval {
    pub fn contains(&self, v: &Rational) -> bool {
        let above_lo = self.lo.as_ref().is_none_or(|e| match v.cmp(&e.value) {
            Ordering::Greater => true,
            Ordering::Equal => e.closed,
            Ordering::Less => false,
        });
        let below_hi = self.hi.as_ref().is_none_or(|e| match v.cmp(&e.value) {
            Ordering::Less => true,
            Ordering::Equal => e.closed,
            Ordering::Greater => false,
        });
        above_lo && below_hi
    }

    fn midpoint(&self) -> Option<Rational> {
        let two = Rational::from_integer(2);
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => Some((&l.value + &h.value) / two),
            _ => None,
        }
    }

    fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(l), Some(h)) if l.value == h.value)
    }

    /// Largest integer strictly below the upper end, or smallest strictly
    /// above the lower end, falling back to the mediant of both ends.
    fn simple_value(&self) -> Option<Rational> {
        let one = Rational::one();
        let v = match self.side {
            Side::Upper => &self.hi.as_ref()?.value.ceil() - &one,
            Side::Lower => &self.lo.as_ref()?.value.floor() + &one,
            Side::Middle => return None,
        };
        if self.contains(&v) {
            return Some(v);
        }
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) if l.value < h.value => Some(mediant(&l.value, &h.value)),
            _ => None,
        }
    }

    fn threshold(&self) -> Option<Rational> {
        let e = match self.side {
            Side::Upper => self.hi.as_ref()?,
            Side::Lower => self.lo.as_ref()?,
            Side::Middle => return None,
        };
        e.closed.then(|| e.value.clone())
    }

    fn median(&self) -> Option<Rational> {
        let one = Rational::one();
        match (&self.lo, &self.hi, self.side) {
            (Some(_), Some(_), _) => self.midpoint(),
            (None, Some(h), Side::Upper) => Some(&h.value - &one),
            (Some(l), None, Side::Lower) => Some(&l.value + &one),
            _ => None,
        }
    }

    /// Values tried for this interval, all inside it and distinct.
    pub fn candidates(&self, mode: OperatorMode) -> Vec<Rational> {
        if self.is_point() {
            return vec![self.lo.as_ref().unwrap().value.clone()];
        }
        let raw = match mode {
            OperatorMode::Interval => vec![self.threshold(), self.median(), self.simple_value()],
            OperatorMode::CriticalMove => vec![self.threshold().or_else(|| self.simple_value())],
        };
        let mut out: Vec<Rational> = Vec::with_capacity(3);
        for v in raw.into_iter().flatten() {
            if self.contains(&v) && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}

/// Upper bounds in ascending half-line order, lower bounds in descending
/// order, each with the number of falsified clauses contributing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPartition {
    pub current: Rational,
    pub uppers: Vec<(Bound, u32)>,
    pub lowers: Vec<(Bound, u32)>,
    pub cofinite: u32,
    /// Equality points of falsified clauses, sorted.
    pub points: Vec<Rational>,
    /// Ascending along the value line.
    pub intervals: Vec<Interval>,
}

fn group(mut bounds: Vec<Bound>, cmp: impl Fn(&Bound, &Bound) -> Ordering) -> Vec<(Bound, u32)> {
    bounds.sort_by(&cmp);
    let mut out: Vec<(Bound, u32)> = Vec::new();
    for b in bounds {
        match out.last_mut() {
            Some((last, n)) if *last == b => *n += 1,
            _ => out.push((b, 1)),
        }
    }
    out
}

impl IntervalPartition {
    pub fn build(domains: &[ClauseDomain], current: &Rational) -> IntervalPartition {
        let cofinite = domains.iter().filter(|d| d.cofinite).count() as u32;
        let uppers = group(domains.iter().filter_map(|d| d.upper.clone()).collect(), Bound::cmp_as_upper);
        let lowers = group(domains.iter().filter_map(|d| d.lower.clone()).collect(), |a, b| {
            b.cmp_as_lower(a)
        });
        debug_assert!(uppers.iter().all(|(u, _)| !u.admits_below(current)));
        debug_assert!(lowers.iter().all(|(l, _)| !l.admits_above(current)));
        let mut points: Vec<Rational> = domains.iter().flat_map(|d| d.points.iter().cloned()).collect();
        points.sort();
        points.dedup();

        let suffix = |bs: &[(Bound, u32)]| -> Vec<u32> {
            let mut acc = 0;
            let mut out: Vec<u32> = bs.iter().rev().map(|(_, n)| {
                acc += n;
                acc
            }).collect();
            out.reverse();
            out
        };
        let upper_make = suffix(&uppers);
        let lower_make = suffix(&lowers);

        let mut intervals = Vec::with_capacity(uppers.len() + lowers.len() + 1);
        for (i, (b, _)) in uppers.iter().enumerate() {
            let lo = (i > 0).then(|| {
                let prev = &uppers[i - 1].0;
                Endpoint { value: prev.value.clone(), closed: prev.strict }
            });
            let hi = Some(Endpoint { value: b.value.clone(), closed: !b.strict });
            intervals.push(Interval { lo, hi, side: Side::Upper, make: upper_make[i] + cofinite });
        }
        intervals.push(Interval {
            lo: uppers.last().map(|(b, _)| Endpoint { value: b.value.clone(), closed: b.strict }),
            hi: lowers.last().map(|(b, _)| Endpoint { value: b.value.clone(), closed: b.strict }),
            side: Side::Middle,
            make: cofinite,
        });
        for (j, (b, _)) in lowers.iter().enumerate().rev() {
            let lo = Some(Endpoint { value: b.value.clone(), closed: !b.strict });
            let hi = (j > 0).then(|| {
                let prev = &lowers[j - 1].0;
                Endpoint { value: prev.value.clone(), closed: prev.strict }
            });
            intervals.push(Interval { lo, hi, side: Side::Lower, make: lower_make[j] + cofinite });
        }
        IntervalPartition { current: current.clone(), uppers, lowers, cofinite, points, intervals }
    }

    /// Index of the interval holding `v`.
    pub fn locate(&self, v: &Rational) -> usize {
        self.intervals.iter().position(|iv| iv.contains(v)).expect("intervals cover the line")
    }

    /// Candidate values for the middle interval: one step from the current
    /// value on each side, or halfway to the nearest bound when that step
    /// would leave the interval.
    pub fn middle_candidates(&self) -> Vec<Rational> {
        let Some(mid) = self.intervals.iter().find(|iv| iv.side == Side::Middle) else {
            return Vec::new();
        };
        let one = Rational::one();
        let two = Rational::from_integer(2);
        let cur = &self.current;
        let mut out = Vec::new();
        let down = &(cur - &one);
        if mid.contains(down) {
            out.push(down.clone());
        } else if let Some(lo) = &mid.lo {
            out.push((&lo.value + cur) / &two);
        }
        let up = &(cur + &one);
        if mid.contains(up) {
            out.push(up.clone());
        } else if let Some(hi) = &mid.hi {
            out.push((&hi.value + cur) / &two);
        }
        out.retain(|v| v != cur && mid.contains(v));
        out.dedup();
        out
    }

    /// Candidate value groups of all positive-make intervals, then one group
    /// per equality point.
    pub fn candidate_groups(&self, mode: OperatorMode) -> Vec<(Origin, Vec<Rational>)> {
        let mut groups = Vec::new();
        for iv in &self.intervals {
            if iv.make == 0 {
                continue;
            }
            let vals = match iv.side {
                Side::Middle => self.middle_candidates(),
                _ => iv.candidates(mode),
            };
            if !vals.is_empty() {
                groups.push((Origin::Interval, vals));
            }
        }
        for p in &self.points {
            if *p != self.current {
                groups.push((Origin::Point, vec![p.clone()]));
            }
        }
        groups
    }
}
