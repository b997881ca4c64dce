use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub steps: u64,
    pub real_steps: u64,
    pub bool_steps: u64,
    pub mode_switches: u64,
    /// Steps taken from a local optimum after a weight update.
    pub escapes: u64,
    pub nudges: u64,
    pub restarts: u64,
    /// Number of steps whose best score was shared by `k` candidates.
    pub tie_histogram: BTreeMap<usize, u64>,
    /// `(step, cost)` each time the weighted cost reaches a new minimum.
    pub best_cost_trace: Vec<(u64, u64)>,
}

impl SearchStats {
    pub fn record_ties(&mut self, k: usize) {
        *self.tie_histogram.entry(k).or_default() += 1;
    }

    pub fn tie_histogram_csv(&self) -> String {
        let mut out = String::from("k,step_count\n");
        for (k, n) in &self.tie_histogram {
            let _ = writeln!(out, "{k},{n}");
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "steps={} real_steps={} bool_steps={} mode_switches={} escapes={} nudges={} restarts={}",
            self.steps, self.real_steps, self.bool_steps, self.mode_switches, self.escapes, self.nudges, self.restarts
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_csv() {
        let mut s = SearchStats::default();
        s.record_ties(1);
        s.record_ties(3);
        s.record_ties(1);
        assert_eq!(s.tie_histogram_csv(), "k,step_count\n1,2\n3,1\n");
    }
}
