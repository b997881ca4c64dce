//! Incrementally maintained assignment, clause counts and weights.

use super::domain::ClauseDomain;
use super::instance::{Instance, Lit};
use crate::arith::{solve_relation, Rational, SatDomain, VarId};

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct SearchState {
    pub reals: Vec<Rational>,
    pub bools: Vec<bool>,
    atom_true: Vec<bool>,
    sat_count: Vec<u32>,
    weights: Vec<u64>,
    falsified: Vec<u32>,
    falsified_pos: Vec<u32>,
    cost: u64,
    /// Step at which each Boolean variable was last flipped (0 = never).
    pub last_flip: Vec<u64>,
}

fn atom_holds(inst: &Instance, a: u32, reals: &[Rational]) -> bool {
    inst.atoms[a as usize].lit.holds(reals)
}

fn lit_holds(lit: Lit, atom_true: &[bool], bools: &[bool]) -> bool {
    match lit {
        Lit::Bool { var, negated } => bools[var as usize] != negated,
        Lit::Atom(a) => atom_true[a as usize],
    }
}

impl SearchState {
    pub fn new(inst: &Instance, reals: Vec<Rational>, bools: Vec<bool>) -> SearchState {
        assert_eq!(reals.len(), inst.num_reals);
        assert_eq!(bools.len(), inst.num_bools);
        let mut s = SearchState {
            reals,
            bools,
            atom_true: Vec::new(),
            sat_count: Vec::new(),
            weights: vec![1; inst.num_clauses()],
            falsified: Vec::new(),
            falsified_pos: Vec::new(),
            cost: 0,
            last_flip: vec![0; inst.num_bools],
        };
        s.recount(inst);
        s
    }

    /// Replaces the assignment, keeping weights and flip history.
    pub fn reset(&mut self, inst: &Instance, reals: Vec<Rational>, bools: Vec<bool>) {
        self.reals = reals;
        self.bools = bools;
        self.recount(inst);
    }

    fn recount(&mut self, inst: &Instance) {
        self.atom_true = (0..inst.atoms.len() as u32).map(|a| atom_holds(inst, a, &self.reals)).collect();
        self.sat_count = inst
            .clauses
            .iter()
            .map(|lits| lits.iter().filter(|&&l| lit_holds(l, &self.atom_true, &self.bools)).count() as u32)
            .collect();
        self.falsified.clear();
        self.falsified_pos = vec![ABSENT; inst.num_clauses()];
        self.cost = 0;
        for c in 0..inst.num_clauses() {
            if self.sat_count[c] == 0 {
                self.falsified_pos[c] = self.falsified.len() as u32;
                self.falsified.push(c as u32);
                self.cost += self.weights[c];
            }
        }
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }

    pub fn falsified(&self) -> &[u32] {
        &self.falsified
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn sat_count(&self, c: u32) -> u32 {
        self.sat_count[c as usize]
    }

    pub fn is_satisfied(&self, c: u32) -> bool {
        self.sat_count[c as usize] > 0
    }

    /// Unweighted number of falsified clauses.
    pub fn num_falsified(&self) -> usize {
        self.falsified.len()
    }

    fn bump(&mut self, c: u32, up: bool) {
        let ci = c as usize;
        if up {
            self.sat_count[ci] += 1;
            if self.sat_count[ci] == 1 {
                let pos = self.falsified_pos[ci] as usize;
                let last = *self.falsified.last().unwrap();
                self.falsified.swap_remove(pos);
                if last != c {
                    self.falsified_pos[last as usize] = pos as u32;
                }
                self.falsified_pos[ci] = ABSENT;
                self.cost -= self.weights[ci];
            }
        } else {
            self.sat_count[ci] -= 1;
            if self.sat_count[ci] == 0 {
                self.falsified_pos[ci] = self.falsified.len() as u32;
                self.falsified.push(c);
                self.cost += self.weights[ci];
            }
        }
    }

    pub fn set_real(&mut self, inst: &Instance, x: VarId, v: Rational) {
        self.reals[x.index()] = v;
        for &a in &inst.real_atoms[x.index()] {
            let now = atom_holds(inst, a, &self.reals);
            if now != self.atom_true[a as usize] {
                self.atom_true[a as usize] = now;
                for &c in &inst.atom_clauses[a as usize] {
                    self.bump(c, now);
                }
            }
        }
    }

    pub fn flip(&mut self, inst: &Instance, b: u32, step: u64) {
        let bi = b as usize;
        self.bools[bi] = !self.bools[bi];
        self.last_flip[bi] = step;
        for &(c, negated) in &inst.bool_clauses[bi] {
            self.bump(c, self.bools[bi] != negated);
        }
    }

    /// `(make, score)` of flipping `b`.
    pub fn flip_delta(&self, inst: &Instance, b: u32) -> (u32, i64) {
        let (mut make, mut score) = (0u32, 0i64);
        for &(c, negated) in &inst.bool_clauses[b as usize] {
            let was_true = self.bools[b as usize] != negated;
            let n = self.sat_count[c as usize];
            let w = self.weights[c as usize] as i64;
            if was_true && n == 1 {
                score -= w;
            } else if !was_true && n == 0 {
                make += 1;
                score += w;
            }
        }
        (make, score)
    }

    /// Captures everything needed to score assignments to `x` without
    /// touching the state.
    pub fn real_view(&self, inst: &Instance, x: VarId) -> VarView {
        let clauses = inst.real_occurrences[x.index()]
            .iter()
            .map(|occ| ViewClause {
                clause: occ.clause,
                sat_count: self.sat_count[occ.clause as usize],
                atoms: occ
                    .atoms
                    .iter()
                    .map(|&a| {
                        let lit = &inst.atoms[a as usize].lit;
                        let (coef, rest) = lit.poly.linearize(x, &self.reals);
                        ViewAtom {
                            domain: solve_relation(&coef, &rest, lit.rel, &lit.k),
                            truth: self.atom_true[a as usize],
                        }
                    })
                    .collect(),
            })
            .collect();
        VarView { var: x, current: self.reals[x.index()].clone(), clauses }
    }

    /// Raises the weight of every falsified clause by one.
    pub fn increase_falsified_weights(&mut self) {
        for &c in &self.falsified {
            self.weights[c as usize] += 1;
        }
        self.cost += self.falsified.len() as u64;
    }

    /// Lowers the weight of every satisfied clause above 1 by one.
    pub fn smooth_satisfied_weights(&mut self) {
        for (c, w) in self.weights.iter_mut().enumerate() {
            if self.sat_count[c] > 0 && *w > 1 {
                *w -= 1;
            }
        }
    }

    /// Checks every incremental structure against a from-scratch recount.
    pub fn audit(&self, inst: &Instance) -> Result<(), String> {
        let mut fresh = self.clone();
        fresh.recount(inst);
        if fresh.atom_true != self.atom_true {
            return Err("atom truth values out of sync".into());
        }
        if fresh.sat_count != self.sat_count {
            return Err("satisfied literal counts out of sync".into());
        }
        if fresh.cost != self.cost {
            return Err(format!("cost {} but recount gives {}", self.cost, fresh.cost));
        }
        let mut a = self.falsified.clone();
        a.sort();
        if a != fresh.falsified {
            return Err("falsified set out of sync".into());
        }
        for (i, &c) in self.falsified.iter().enumerate() {
            if self.falsified_pos[c as usize] as usize != i {
                return Err("falsified index out of sync".into());
            }
        }
        if self.weights.iter().any(|&w| w < 1) {
            return Err("clause weight below 1".into());
        }
        Ok(())
    }
}

/// An atom as a constraint on one variable, the others held fixed.
#[derive(Clone, Debug)]
pub struct ViewAtom {
    pub domain: SatDomain,
    pub truth: bool,
}

#[derive(Clone, Debug)]
pub struct ViewClause {
    pub clause: u32,
    pub sat_count: u32,
    pub atoms: Vec<ViewAtom>,
}

/// A variable's clauses with each of its atoms linearized at the current
/// assignment.
#[derive(Clone, Debug)]
pub struct VarView {
    pub var: VarId,
    pub current: Rational,
    pub clauses: Vec<ViewClause>,
}

impl VarView {
    /// `(make, score)` of assigning `v`: falsified clauses it satisfies, and
    /// weighted cost before minus after.
    pub fn evaluate(&self, v: &Rational, weights: &[u64]) -> (u32, i64) {
        let (mut make, mut score) = (0u32, 0i64);
        for vc in &self.clauses {
            let mut n = vc.sat_count as i64;
            for atom in &vc.atoms {
                let now = atom.domain.contains(v);
                if now != atom.truth {
                    n += if now { 1 } else { -1 };
                }
            }
            let w = weights[vc.clause as usize] as i64;
            if vc.sat_count == 0 && n > 0 {
                make += 1;
                score += w;
            } else if vc.sat_count > 0 && n == 0 {
                score -= w;
            }
        }
        (make, score)
    }

    /// Satisfying domains of the falsified clauses mentioning the variable.
    pub fn clause_domains(&self) -> Vec<ClauseDomain> {
        self.clauses
            .iter()
            .filter(|vc| vc.sat_count == 0)
            .map(|vc| {
                ClauseDomain::from_atoms(vc.clause, vc.atoms.iter().map(|at| at.domain.clone()))
            })
            .collect()
    }
}
