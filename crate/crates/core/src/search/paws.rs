//! Probabilistic clause weighting.

use rand::Rng;

use super::state::SearchState;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PawsBranch {
    /// Every falsified clause gained one unit of weight.
    Increase,
    /// Every satisfied clause heavier than 1 lost one unit.
    Smooth,
}

/// Flips one coin: with probability `smooth_prob` smooths satisfied weights,
/// otherwise increases falsified ones.
pub fn paws_update<R: Rng + ?Sized>(state: &mut SearchState, smooth_prob: f64, rng: &mut R) -> PawsBranch {
    if rng.gen_bool(smooth_prob) {
        state.smooth_satisfied_weights();
        PawsBranch::Smooth
    } else {
        state.increase_falsified_weights();
        PawsBranch::Increase
    }
}
