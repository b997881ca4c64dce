#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lsra_core::arith::{Polynomial, Relation};
use lsra_core::harness::{generate_planted, random_formula, Kind, PlantedParams};
use lsra_core::search::{Instance, Interval, OperatorMode, SearchConfig, SearchState, Solver};
use lsra_core::smtlib::{
    compile, desugar, normalize_atom, parse_script, AtomLit, ClausalFormula, Literal, Normalized, Sort, Term, VarIndex,
};
use lsra_core::{Rational, VarId};

/// An atom up to negation: `poly rel k` with `rel` one of `=`, `<=`, `<`.
type AtomKey = (Polynomial, Rational, Relation);

fn atom_key(a: &AtomLit) -> (AtomKey, bool) {
    let (rel, positive) = match a.rel {
        Relation::Eq | Relation::Le | Relation::Lt => (a.rel, true),
        other => (other.negate(), false),
    };
    ((a.poly.clone(), a.k.clone(), rel), positive)
}

struct Abstraction {
    keys: HashMap<AtomKey, usize>,
    vars: VarIndex,
}

impl Abstraction {
    /// Arithmetic atoms desugar to a conjunction of binary comparisons.
    fn atoms(&mut self, t: &Term) -> Vec<Result<(usize, bool), bool>> {
        match desugar(t).expect("desugars") {
            Term::And(xs) => xs.iter().flat_map(|x| self.atoms(x)).collect(),
            d => match normalize_atom(&d, &self.vars).expect("normalizes") {
                Normalized::Const(b) => vec![Err(b)],
                Normalized::Atom(a) => vec![Ok(self.lit(&a))],
            },
        }
    }

    fn lit(&mut self, a: &AtomLit) -> (usize, bool) {
        let (key, positive) = atom_key(a);
        let n = self.keys.len();
        (*self.keys.entry(key).or_insert(n), positive)
    }

    fn collect(&mut self, t: &Term) {
        match t {
            Term::Cmp(..) => {
                self.atoms(t);
            }
            Term::Eq(xs) | Term::Distinct(xs) if xs[0].sort() == Sort::Real => {
                self.atoms(t);
            }
            Term::Let(..) => self.collect(&desugar(t).expect("desugars")),
            Term::Not(x) => self.collect(x),
            Term::And(xs) | Term::Or(xs) | Term::Implies(xs) | Term::Xor(xs) | Term::Eq(xs) | Term::Distinct(xs) => {
                xs.iter().for_each(|x| self.collect(x))
            }
            Term::Ite(c, a, b) => {
                self.collect(c);
                self.collect(a);
                self.collect(b);
            }
            _ => {}
        }
    }

    /// Evaluates `t` with every arithmetic atom read from `atoms`.
    fn eval(&mut self, t: &Term, atoms: &[bool], bools: &HashMap<String, bool>) -> bool {
        match t {
            Term::Bool(b) => *b,
            Term::Var(name, Sort::Bool) => bools[name],
            Term::Cmp(..) => self.read(t, atoms),
            Term::Eq(xs) | Term::Distinct(xs) if xs[0].sort() == Sort::Real => self.read(t, atoms),
            Term::Let(..) => self.eval(&desugar(t).expect("desugars"), atoms, bools),
            Term::Not(x) => !self.eval(x, atoms, bools),
            Term::And(xs) => xs.iter().all(|x| self.eval(x, atoms, bools)),
            Term::Or(xs) => xs.iter().any(|x| self.eval(x, atoms, bools)),
            Term::Implies(xs) => {
                let vals: Vec<bool> = xs.iter().map(|x| self.eval(x, atoms, bools)).collect();
                vals.iter().rev().skip(1).fold(*vals.last().unwrap(), |acc, &a| !a || acc)
            }
            Term::Xor(xs) => xs.iter().fold(false, |acc, x| acc ^ self.eval(x, atoms, bools)),
            Term::Eq(xs) => {
                let vals: Vec<bool> = xs.iter().map(|x| self.eval(x, atoms, bools)).collect();
                vals.windows(2).all(|w| w[0] == w[1])
            }
            Term::Distinct(xs) => {
                let vals: Vec<bool> = xs.iter().map(|x| self.eval(x, atoms, bools)).collect();
                (0..vals.len()).all(|i| (i + 1..vals.len()).all(|j| vals[i] != vals[j]))
            }
            Term::Ite(c, a, b) => {
                if self.eval(c, atoms, bools) {
                    self.eval(a, atoms, bools)
                } else {
                    self.eval(b, atoms, bools)
                }
            }
            other => panic!("unexpected term in random formula: {other:?}"),
        }
    }

    fn read(&mut self, t: &Term, atoms: &[bool]) -> bool {
        self.atoms(t).into_iter().all(|a| match a {
            Ok((i, positive)) => atoms[i] == positive,
            Err(b) => b,
        })
    }
}

/// Backtracking search for auxiliary values satisfying every clause.
fn extend_aux(clauses: &[Vec<(usize, bool)>], vals: &mut Vec<Option<bool>>, order: &[usize]) -> bool {
    for clause in clauses {
        if clause.iter().all(|&(v, want)| vals[v] == Some(!want)) {
            return false;
        }
    }
    let Some(&next) = order.iter().find(|&&v| vals[v].is_none()) else {
        return true;
    };
    for b in [true, false] {
        vals[next] = Some(b);
        if extend_aux(clauses, vals, order) {
            vals[next] = None;
            return true;
        }
    }
    vals[next] = None;
    false
}

/// Checks that the clause form of `text` agrees with the input on every
/// truth assignment to its atoms and declared Booleans: the input holds
/// exactly when some choice of auxiliaries satisfies all clauses.
/// Returns the number of assignments checked.
pub fn check_clausification(text: &str) -> Result<usize, String> {
    let problem = parse_script(text).map_err(|e| e.to_string())?.elaborate().map_err(|e| e.to_string())?;
    let f = compile(text).map_err(|e| e.to_string())?;
    let vars: VarIndex =
        f.real_vars.iter().enumerate().map(|(i, n)| (n.clone(), VarId(i as u32))).collect();
    let mut abs = Abstraction { keys: HashMap::new(), vars };
    let original = problem.conjunction();
    abs.collect(&original);

    // Propositional variables: atoms, then declared Booleans, then auxiliaries.
    let n_atoms_before = abs.keys.len();
    let mut clauses: Vec<Vec<(usize, bool)>> = Vec::new();
    let mut pending = Vec::new();
    for clause in &f.clauses {
        let mut lits = Vec::new();
        for lit in clause {
            match lit {
                Literal::Bool { var, negated } => pending.push((clauses.len(), var.index(), !negated)),
                Literal::Atom(a) => {
                    let (i, positive) = abs.lit(a);
                    lits.push((i, positive));
                }
            }
        }
        clauses.push(lits);
    }
    let n_atoms = abs.keys.len();
    if n_atoms != n_atoms_before {
        return Err(format!("clauses mention {} atoms absent from the input", n_atoms - n_atoms_before));
    }
    for (ci, b, positive) in pending {
        clauses[ci].push((n_atoms + b, positive));
    }
    let n_declared = f.num_declared_bools;
    let n_total = n_atoms + f.bool_vars.len();
    let aux: Vec<usize> = (n_atoms + n_declared..n_total).collect();
    let free = n_atoms + n_declared;
    if free > 16 {
        return Err(format!("too many free variables to enumerate: {free}"));
    }
    if f.trivially_false {
        for mask in 0u32..1 << free {
            let atoms: Vec<bool> = (0..n_atoms).map(|i| mask >> i & 1 == 1).collect();
            let bools: HashMap<String, bool> =
                (0..n_declared).map(|j| (f.bool_vars[j].clone(), mask >> (n_atoms + j) & 1 == 1)).collect();
            if abs.eval(&original, &atoms, &bools) {
                return Err("input satisfiable but reported trivially false".into());
            }
        }
        return Ok(1 << free);
    }
    for mask in 0u32..1 << free {
        let atoms: Vec<bool> = (0..n_atoms).map(|i| mask >> i & 1 == 1).collect();
        let bools: HashMap<String, bool> =
            (0..n_declared).map(|j| (f.bool_vars[j].clone(), mask >> (n_atoms + j) & 1 == 1)).collect();
        let mut vals: Vec<Option<bool>> = (0..n_total).map(|v| (v < free).then(|| mask >> v & 1 == 1)).collect();
        let clausal = extend_aux(&clauses, &mut vals, &aux);
        let input = abs.eval(&original, &atoms, &bools);
        if clausal != input {
            return Err(format!("assignment {mask:#b}: input {input}, clauses {clausal}"));
        }
    }
    Ok(1 << free)
}

/// Random satisfiable or arbitrary instance used by the randomized oracles.
pub fn random_instance(seed: u64) -> ClausalFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let text = if rng.gen_bool(0.3) {
        random_formula(seed, 8)
    } else {
        let kind = if rng.gen_bool(0.5) { Kind::Lra } else { Kind::Mra };
        let params = PlantedParams::new(kind, rng.gen_range(1..=5), rng.gen_range(1..=12), seed)
            .with_bools(rng.gen_range(0..=2));
        generate_planted(&params).text
    };
    compile(&text).unwrap()
}

pub fn solver_with_random_state(f: &ClausalFormula, seed: u64) -> (Solver<'_>, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0dd5);
    let cfg = SearchConfig { seed, cutoff: None, ..SearchConfig::default() };
    let mut solver = Solver::new(f, cfg);
    let reals = (0..solver.inst.num_reals).map(|_| Rational::new(rng.gen_range(-8..=8), rng.gen_range(1..=3))).collect();
    let bools = (0..solver.inst.num_bools).map(|_| rng.gen_bool(0.5)).collect();
    solver.state.reset(&solver.inst, reals, bools);
    for _ in 0..rng.gen_range(0..4) {
        solver.state.increase_falsified_weights();
    }
    (solver, rng)
}

/// `(make, score)` of a change, by applying it to a copy and recounting from scratch.
pub fn recount_delta(state: &SearchState, inst: &Instance, apply: impl FnOnce(&mut SearchState)) -> (u32, i64) {
    let mut after = state.clone();
    apply(&mut after);
    let fresh = SearchState::new(inst, after.reals.clone(), after.bools.clone());
    let make = state.falsified().iter().filter(|&&c| fresh.is_satisfied(c)).count() as u32;
    let fresh_cost: u64 =
        (0..inst.num_clauses() as u32).filter(|&c| !fresh.is_satisfied(c)).map(|c| after.weights()[c as usize]).sum();
    (make, state.cost() as i64 - fresh_cost as i64)
}

/// A point of `iv`, spread over its whole extent.
pub fn sample_in(iv: &Interval, rng: &mut ChaCha8Rng) -> Rational {
    let spread = |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(0..=40), rng.gen_range(1..=4));
    for _ in 0..64 {
        let v = match (&iv.lo, &iv.hi) {
            (Some(l), Some(h)) => {
                let d = rng.gen_range(1..=12);
                &l.value + (&h.value - &l.value) * Rational::new(rng.gen_range(0..=d), d)
            }
            (Some(l), None) => &l.value + spread(rng),
            (None, Some(h)) => &h.value - spread(rng),
            (None, None) => Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=4)),
        };
        if iv.contains(&v) {
            return v;
        }
    }
    iv.candidates(OperatorMode::Interval).into_iter().next().expect("an interval with a candidate")
}

/// Instance sizes used by the planted suites: 5 to 20 reals, 20 to 100 clauses.
pub fn planted_params(kind: Kind, seed: u64) -> PlantedParams {
    PlantedParams::new(kind, 5 + (seed as usize * 7) % 16, 20 + (seed as usize * 37) % 81, seed)
        .with_bools((seed % 4) as usize)
}
