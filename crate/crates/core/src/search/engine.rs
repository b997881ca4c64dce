//! The two-mode local search loop.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{InitPolicy, SearchConfig};
use super::instance::Instance;
use super::partition::IntervalPartition;
use super::paws::paws_update;
use super::select::{select_flip, select_real, FlipOp, Origin, RealOp};
use super::state::{SearchState, VarView};
use super::stats::SearchStats;
use crate::arith::{Rational, VarId};
use crate::smtlib::{validate_model, ClausalFormula};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub reals: Vec<Rational>,
    pub bools: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Assignment),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub result: SolveResult,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Real,
    Bool,
}

impl Mode {
    fn other(self) -> Mode {
        match self {
            Mode::Real => Mode::Bool,
            Mode::Bool => Mode::Real,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Moved,
    /// The mode has no variable in any falsified clause.
    NoCandidates,
}

pub fn init_assignment<R: Rng + ?Sized>(f: &ClausalFormula, policy: InitPolicy, rng: &mut R) -> Assignment {
    match policy {
        InitPolicy::Zero => Assignment {
            reals: vec![Rational::zero(); f.real_vars.len()],
            bools: vec![true; f.bool_vars.len()],
        },
        InitPolicy::Random => Assignment {
            reals: (0..f.real_vars.len()).map(|_| Rational::from_integer(rng.gen_range(-10..=10))).collect(),
            bools: (0..f.bool_vars.len()).map(|_| rng.gen_bool(0.5)).collect(),
        },
    }
}

/// Candidate values of one variable, grouped by interval or point.
#[derive(Clone, Debug)]
pub struct VarCandidates {
    pub view: VarView,
    pub groups: Vec<(Origin, Vec<Rational>)>,
}

pub struct Solver<'f> {
    formula: &'f ClausalFormula,
    pub inst: Instance,
    pub cfg: SearchConfig,
    pub state: SearchState,
    rng: ChaCha8Rng,
    pub stats: SearchStats,
}

impl<'f> Solver<'f> {
    pub fn new(formula: &'f ClausalFormula, cfg: SearchConfig) -> Solver<'f> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let init = init_assignment(formula, cfg.init, &mut rng);
        let inst = Instance::new(formula);
        let state = SearchState::new(&inst, init.reals, init.bools);
        Solver { formula, inst, cfg, state, rng, stats: SearchStats::default() }
    }

    fn falsified_vars<T: Ord + Copy>(&self, per_clause: &[Vec<T>]) -> Vec<T> {
        let mut vars: Vec<T> = self
            .state
            .falsified()
            .iter()
            .flat_map(|&c| per_clause[c as usize].iter().copied())
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn candidates_for(&self, x: VarId) -> VarCandidates {
        let view = self.state.real_view(&self.inst, x);
        let partition = IntervalPartition::build(&view.clause_domains(), &view.current);
        let groups = partition.candidate_groups(self.cfg.operator);
        VarCandidates { view, groups }
    }

    /// Candidates of every real variable in a falsified clause, sorted by
    /// variable, and the scored pool they induce.
    pub fn real_pool(&self) -> (Vec<VarCandidates>, Vec<RealOp>) {
        let weights = self.state.weights();
        let cands: Vec<VarCandidates> = self
            .falsified_vars(&self.inst.clause_real_vars)
            .into_iter()
            .map(|x| self.candidates_for(x))
            .collect();
        let mut pool = Vec::new();
        for vc in &cands {
            for (origin, values) in &vc.groups {
                for v in values {
                    let (make, score) = vc.view.evaluate(v, weights);
                    pool.push(RealOp { var: vc.view.var, value: v.clone(), make, score, origin: *origin });
                }
            }
        }
        (cands, pool)
    }

    /// Samples operations from random falsified clauses, scored under the
    /// current weights. A variable without candidates yields a unit step.
    pub fn sample_escape_ops(&mut self, cands: &[VarCandidates]) -> Vec<RealOp> {
        let clauses: Vec<u32> =
            self.state.falsified().iter().copied().filter(|&c| self.inst.has_real_literal(c)).collect();
        let mut out = Vec::with_capacity(self.cfg.escape_samples);
        if clauses.is_empty() {
            return out;
        }
        for _ in 0..self.cfg.escape_samples {
            let c = *clauses.choose(&mut self.rng).unwrap();
            let x = *self.inst.clause_real_vars[c as usize].choose(&mut self.rng).unwrap();
            let vc = &cands[cands.binary_search_by_key(&x, |vc| vc.view.var).expect("variable in pool")];
            let (origin, value) = match vc.groups.choose(&mut self.rng) {
                Some((origin, values)) => (*origin, values.choose(&mut self.rng).unwrap().clone()),
                None => {
                    let step = if self.rng.gen_bool(0.5) { Rational::one() } else { -Rational::one() };
                    (Origin::Nudge, &vc.view.current + &step)
                }
            };
            let (make, score) = vc.view.evaluate(&value, self.state.weights());
            out.push(RealOp { var: x, value, make, score, origin });
        }
        out
    }

    pub fn real_mode_step(&mut self) -> StepOutcome {
        let (cands, pool) = self.real_pool();
        if cands.is_empty() {
            return StepOutcome::NoCandidates;
        }
        let decreasing: Vec<RealOp> = pool.into_iter().filter(|op| op.score > 0).collect();
        let chosen = if decreasing.is_empty() {
            paws_update(&mut self.state, self.cfg.smooth_prob, &mut self.rng);
            self.stats.escapes += 1;
            let sample = self.sample_escape_ops(&cands);
            let (i, k) = select_real(&sample, self.cfg.tie_break);
            self.stats.record_ties(k);
            sample[i].clone()
        } else {
            let (i, k) = select_real(&decreasing, self.cfg.tie_break);
            self.stats.record_ties(k);
            decreasing[i].clone()
        };
        if chosen.origin == Origin::Nudge {
            self.stats.nudges += 1;
        }
        self.state.set_real(&self.inst, chosen.var, chosen.value);
        StepOutcome::Moved
    }

    fn flip_op(&self, b: u32) -> FlipOp {
        let (make, score) = self.state.flip_delta(&self.inst, b);
        FlipOp { var: b, make, score, last_flip: self.state.last_flip[b as usize] }
    }

    pub fn bool_mode_step(&mut self) -> StepOutcome {
        let vars = self.falsified_vars(&self.inst.clause_bool_vars);
        if vars.is_empty() {
            return StepOutcome::NoCandidates;
        }
        let decreasing: Vec<FlipOp> = vars.iter().map(|&b| self.flip_op(b)).filter(|op| op.score > 0).collect();
        let chosen = if decreasing.is_empty() {
            paws_update(&mut self.state, self.cfg.smooth_prob, &mut self.rng);
            self.stats.escapes += 1;
            let clauses: Vec<u32> =
                self.state.falsified().iter().copied().filter(|&c| self.inst.has_bool_literal(c)).collect();
            let c = *clauses.choose(&mut self.rng).unwrap();
            let ops: Vec<FlipOp> = self.inst.clause_bool_vars[c as usize].iter().map(|&b| self.flip_op(b)).collect();
            let (i, k) = select_flip(&ops);
            self.stats.record_ties(k);
            ops[i].var
        } else {
            let (i, k) = select_flip(&decreasing);
            self.stats.record_ties(k);
            decreasing[i].var
        };
        self.state.flip(&self.inst, chosen, self.stats.steps + 1);
        StepOutcome::Moved
    }

    /// Non-improving steps tolerated in `mode` before switching, from the
    /// share of that mode's literals among literals of falsified clauses.
    pub fn switch_threshold(&self, mode: Mode) -> u64 {
        let (mut real, mut boolean) = (0u64, 0u64);
        for &c in self.state.falsified() {
            real += self.inst.clause_atom_lits[c as usize] as u64;
            boolean += self.inst.clause_bool_lits[c as usize] as u64;
        }
        let total = real + boolean;
        if total == 0 {
            return 1;
        }
        let share = match mode {
            Mode::Real => real,
            Mode::Bool => boolean,
        };
        (self.cfg.switch_factor as u64 * share / total).max(1)
    }

    fn initial_mode(&self) -> Mode {
        if self.state.falsified().iter().any(|&c| self.inst.has_real_literal(c)) {
            Mode::Real
        } else {
            Mode::Bool
        }
    }

    fn finish_sat(self) -> SolveOutcome {
        let model = self.formula.to_model(&self.state.reals, &self.state.bools);
        let result = if validate_model(&self.formula.original, &model) {
            SolveResult::Sat(Assignment { reals: self.state.reals, bools: self.state.bools })
        } else {
            log::error!("assignment satisfying every clause failed validation against the input");
            SolveResult::Unknown
        };
        SolveOutcome { result, stats: self.stats }
    }

    fn unknown(self) -> SolveOutcome {
        SolveOutcome { result: SolveResult::Unknown, stats: self.stats }
    }

    fn restart(&mut self) {
        let init = init_assignment(self.formula, InitPolicy::Random, &mut self.rng);
        self.state.reset(&self.inst, init.reals, init.bools);
        self.stats.restarts += 1;
    }

    pub fn run(mut self) -> SolveOutcome {
        let start = Instant::now();
        if self.formula.trivially_false {
            return self.unknown();
        }
        let mut mode = self.initial_mode();
        let mut threshold = self.switch_threshold(mode);
        let mut best_in_mode = self.state.cost();
        let mut best = self.state.cost();
        let mut stalled = 0u64;
        let mut idle_switches = 0;
        self.stats.best_cost_trace.push((0, best));
        loop {
            if self.state.cost() == 0 {
                return self.finish_sat();
            }
            if self.cfg.max_steps.is_some_and(|m| self.stats.steps >= m)
                || self.cfg.cutoff.is_some_and(|c| start.elapsed() >= c)
            {
                return self.unknown();
            }
            let outcome = match mode {
                Mode::Real => self.real_mode_step(),
                Mode::Bool => self.bool_mode_step(),
            };
            let mut switch = false;
            match outcome {
                StepOutcome::NoCandidates => {
                    idle_switches += 1;
                    assert!(idle_switches <= 2, "falsified clause without variables");
                    switch = true;
                }
                StepOutcome::Moved => {
                    idle_switches = 0;
                    self.stats.steps += 1;
                    match mode {
                        Mode::Real => self.stats.real_steps += 1,
                        Mode::Bool => self.stats.bool_steps += 1,
                    }
                    let cost = self.state.cost();
                    if cost < best {
                        best = cost;
                        self.stats.best_cost_trace.push((self.stats.steps, cost));
                    }
                    if cost < best_in_mode {
                        best_in_mode = cost;
                        stalled = 0;
                    } else {
                        stalled += 1;
                        switch = stalled >= threshold;
                    }
                    let steps = self.stats.steps;
                    if let Some(n) = self.cfg.audit_interval.filter(|&n| n > 0 && steps.is_multiple_of(n)) {
                        if let Err(e) = self.state.audit(&self.inst) {
                            panic!("state audit failed after {steps} steps (interval {n}): {e}");
                        }
                    }
                    if self.cfg.restart_interval.is_some_and(|n| n > 0 && steps.is_multiple_of(n)) {
                        self.restart();
                        mode = self.initial_mode().other();
                        switch = true;
                    }
                }
            }
            if switch {
                mode = mode.other();
                self.stats.mode_switches += 1;
                threshold = self.switch_threshold(mode);
                best_in_mode = self.state.cost();
                stalled = 0;
            }
        }
    }
}

/// Runs the search on `f` under `cfg`.
pub fn solve(f: &ClausalFormula, cfg: &SearchConfig) -> SolveOutcome {
    Solver::new(f, cfg.clone()).run()
}
