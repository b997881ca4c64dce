//! Indexed form of a clausal formula used by the search.

use crate::arith::VarId;
use crate::smtlib::{AtomLit, ClausalFormula, Literal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lit {
    Bool { var: u32, negated: bool },
    Atom(u32),
}

#[derive(Clone, Debug)]
pub struct Atom {
    pub lit: AtomLit,
    pub vars: Vec<VarId>,
}

/// Atoms of one clause that mention a given real variable.
#[derive(Clone, Debug)]
pub struct ClauseOccurrence {
    pub clause: u32,
    pub atoms: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub num_reals: usize,
    pub num_bools: usize,
    /// Distinct atoms; a literal and its negation are separate atoms.
    pub atoms: Vec<Atom>,
    pub clauses: Vec<Vec<Lit>>,
    pub atom_clauses: Vec<Vec<u32>>,
    pub real_atoms: Vec<Vec<u32>>,
    pub real_occurrences: Vec<Vec<ClauseOccurrence>>,
    /// `(clause, negated)` for every occurrence of a Boolean variable.
    pub bool_clauses: Vec<Vec<(u32, bool)>>,
    pub clause_real_vars: Vec<Vec<VarId>>,
    pub clause_bool_vars: Vec<Vec<u32>>,
    pub clause_atom_lits: Vec<u32>,
    pub clause_bool_lits: Vec<u32>,
}

impl Instance {
    pub fn new(f: &ClausalFormula) -> Instance {
        let num_reals = f.real_vars.len();
        let num_bools = f.bool_vars.len();
        let mut atom_ids = std::collections::HashMap::new();
        let mut atoms: Vec<Atom> = Vec::new();
        let mut clauses = Vec::with_capacity(f.clauses.len());
        for clause in &f.clauses {
            let mut lits = Vec::with_capacity(clause.len());
            for lit in clause {
                lits.push(match lit {
                    Literal::Bool { var, negated } => Lit::Bool { var: var.0, negated: *negated },
                    Literal::Atom(a) => {
                        let id = *atom_ids.entry(a.clone()).or_insert_with(|| {
                            atoms.push(Atom { lit: a.clone(), vars: a.poly.vars() });
                            (atoms.len() - 1) as u32
                        });
                        Lit::Atom(id)
                    }
                });
            }
            clauses.push(lits);
        }

        let mut atom_clauses = vec![Vec::new(); atoms.len()];
        let mut real_occurrences: Vec<Vec<ClauseOccurrence>> = vec![Vec::new(); num_reals];
        let mut real_atoms = vec![Vec::new(); num_reals];
        for (ai, atom) in atoms.iter().enumerate() {
            for x in &atom.vars {
                real_atoms[x.index()].push(ai as u32);
            }
        }
        let mut bool_clauses = vec![Vec::new(); num_bools];
        let mut clause_real_vars = Vec::with_capacity(clauses.len());
        let mut clause_bool_vars = Vec::with_capacity(clauses.len());
        let mut clause_atom_lits = Vec::with_capacity(clauses.len());
        let mut clause_bool_lits = Vec::with_capacity(clauses.len());
        for (ci, lits) in clauses.iter().enumerate() {
            let ci = ci as u32;
            let mut reals: Vec<VarId> = Vec::new();
            let mut bools: Vec<u32> = Vec::new();
            let mut signed: Vec<(u32, bool)> = Vec::new();
            let (mut n_atom, mut n_bool) = (0, 0);
            for lit in lits {
                match *lit {
                    Lit::Bool { var, negated } => {
                        bools.push(var);
                        signed.push((var, negated));
                        n_bool += 1;
                    }
                    Lit::Atom(a) => {
                        atom_clauses[a as usize].push(ci);
                        reals.extend_from_slice(&atoms[a as usize].vars);
                        n_atom += 1;
                    }
                }
            }
            reals.sort();
            reals.dedup();
            bools.sort();
            bools.dedup();
            for &x in &reals {
                let in_clause = lits
                    .iter()
                    .filter_map(|l| match *l {
                        Lit::Atom(a) if atoms[a as usize].vars.contains(&x) => Some(a),
                        _ => None,
                    })
                    .collect();
                real_occurrences[x.index()].push(ClauseOccurrence { clause: ci, atoms: in_clause });
            }
            for (b, negated) in signed {
                bool_clauses[b as usize].push((ci, negated));
            }
            clause_real_vars.push(reals);
            clause_bool_vars.push(bools);
            clause_atom_lits.push(n_atom);
            clause_bool_lits.push(n_bool);
        }
        for ids in &mut atom_clauses {
            ids.dedup();
        }

        Instance {
            num_reals,
            num_bools,
            atoms,
            clauses,
            atom_clauses,
            real_atoms,
            real_occurrences,
            bool_clauses,
            clause_real_vars,
            clause_bool_vars,
            clause_atom_lits,
            clause_bool_lits,
        }
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn has_real_literal(&self, c: u32) -> bool {
        !self.clause_real_vars[c as usize].is_empty()
    }

    pub fn has_bool_literal(&self, c: u32) -> bool {
        !self.clause_bool_vars[c as usize].is_empty()
    }
}
