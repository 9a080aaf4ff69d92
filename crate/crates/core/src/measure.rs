//! Projective measurement of the position observable `Σ_i |i⟩⟨i| ⊗ Î_c`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{QwalkError, Result};
use crate::state::QuantumState;

/// Below this every outcome is treated as impossible.
pub const DEGENERATE_PROBABILITY: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PositionMeasurement {
    pub outcome: usize,
    /// Born probability of `outcome` before collapse.
    pub probability: f64,
    pub collapsed: QuantumState,
}

/// Samples a position with Born probabilities and collapses onto it.
///
/// The draw is a pure function of `state` and `seed`. A position eigenstate
/// always yields its position regardless of the seed.
pub fn measure_position(state: &QuantumState, seed: u64) -> Result<PositionMeasurement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    measure_position_with(state, &mut rng)
}

pub fn measure_position_with<R: Rng + ?Sized>(
    state: &QuantumState,
    rng: &mut R,
) -> Result<PositionMeasurement> {
    let probs = state.position_probabilities();
    if probs.iter().all(|&p| p < DEGENERATE_PROBABILITY) {
        return Err(QwalkError::DegenerateState);
    }
    let total: f64 = probs.iter().sum();
    let target = rng.random::<f64>() * total;

    let mut acc = 0.0;
    let mut outcome = None;
    for (i, &p) in probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        acc += p;
        outcome = Some(i);
        if target < acc {
            break;
        }
    }
    // Non-empty: at least one probability exceeds the degenerate cutoff.
    let outcome = outcome.ok_or(QwalkError::DegenerateState)?;

    let p = probs[outcome];
    let scale = 1.0 / p.sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); state.dim()];
    amps[2 * outcome] = state.amplitudes()[2 * outcome] * scale;
    amps[2 * outcome + 1] = state.amplitudes()[2 * outcome + 1] * scale;

    Ok(PositionMeasurement {
        outcome,
        probability: p / total,
        collapsed: QuantumState::from_parts_unchecked(state.n_positions(), amps),
    })
}

/// Most likely position and its probability, without sampling.
pub fn most_likely_position(state: &QuantumState) -> (usize, f64) {
    state.position_probabilities().into_iter().enumerate().fold(
        (0, f64::NEG_INFINITY),
        |best, (i, p)| {
            if p > best.1 {
                (i, p)
            } else {
                best
            }
        },
    )
}
