use std::time::Duration;

/// How the initial assignment is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InitPolicy {
    /// Reals at 0, Booleans true.
    #[default]
    Zero,
    /// Reals uniform over the integers in [-10, 10], Booleans by fair coin.
    Random,
}

/// Which values real-variable operations may assign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OperatorMode {
    /// Threshold, median and integer/mediant values of every positive-make interval.
    #[default]
    Interval,
    /// Threshold values only (critical moves); strict bounds use the
    /// integer/mediant value instead of a threshold.
    CriticalMove,
}

/// How ties on score are broken between real-variable operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Smallest denominator, then smallest absolute value.
    #[default]
    SelectionRules,
    /// Score only; remaining ties fall to variable index and value order.
    ScoreOnly,
}

/// Named configurations used for ablation runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Ablation {
    #[default]
    None,
    /// Critical moves instead of interval-based operations.
    Cm,
    /// Score without tie-breaking rules.
    Score,
    /// Both of the above.
    Plain,
}

impl Ablation {
    pub fn operator(self) -> OperatorMode {
        match self {
            Ablation::Cm | Ablation::Plain => OperatorMode::CriticalMove,
            _ => OperatorMode::Interval,
        }
    }

    pub fn tie_break(self) -> TieBreak {
        match self {
            Ablation::Score | Ablation::Plain => TieBreak::ScoreOnly,
            _ => TieBreak::SelectionRules,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Mode-switch factor: a mode is left after `switch_factor × P`
    /// non-improving steps, `P` being the share of its literals among the
    /// literals of falsified clauses.
    pub switch_factor: u32,
    /// Operations sampled when escaping a local optimum.
    pub escape_samples: usize,
    /// Probability of the smoothing branch of the clause-weight update.
    pub smooth_prob: f64,
    pub cutoff: Option<Duration>,
    pub max_steps: Option<u64>,
    pub seed: u64,
    pub init: InitPolicy,
    pub operator: OperatorMode,
    pub tie_break: TieBreak,
    /// Re-initialize the assignment every this many steps. Off by default.
    pub restart_interval: Option<u64>,
    /// Cross-check every incremental structure against a full recount every
    /// this many steps.
    pub audit_interval: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            switch_factor: 20,
            escape_samples: 3,
            smooth_prob: 0.0003,
            cutoff: Some(Duration::from_secs(1200)),
            max_steps: None,
            seed: 0,
            init: InitPolicy::Zero,
            operator: OperatorMode::Interval,
            tie_break: TieBreak::SelectionRules,
            restart_interval: None,
            audit_interval: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("switch factor must be at least 1")]
    SwitchFactor,
    #[error("escape sample count must be at least 1")]
    EscapeSamples,
    #[error("smoothing probability must lie in [0, 1], got {0}")]
    SmoothProb(f64),
}

impl SearchConfig {
    pub fn with_ablation(mut self, ablation: Ablation) -> Self {
        self.operator = ablation.operator();
        self.tie_break = ablation.tie_break();
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.switch_factor < 1 {
            return Err(ConfigError::SwitchFactor);
        }
        if self.escape_samples < 1 {
            return Err(ConfigError::EscapeSamples);
        }
        if !(0.0..=1.0).contains(&self.smooth_prob) {
            return Err(ConfigError::SmoothProb(self.smooth_prob));
        }
        Ok(())
    }
}
