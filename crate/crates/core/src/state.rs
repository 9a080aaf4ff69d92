//! Dense amplitude vectors over the position ⊗ coin space of an N-cycle.
//!
//! Amplitudes are stored flat with index `2 * position + coin`, where coin 0
//! is `|R⟩` and coin 1 is `|L⟩`.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QwalkError, Result};

/// Tolerance on `Σ|a|² = 1` for a valid state.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Internal coin label. `R` shifts towards `i + 1`, `L` towards `i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoinLabel {
    R,
    L,
}

impl CoinLabel {
    pub const ALL: [CoinLabel; 2] = [CoinLabel::R, CoinLabel::L];

    /// Offset of this label inside a position's coin pair.
    pub fn index(self) -> usize {
        match self {
            CoinLabel::R => 0,
            CoinLabel::L => 1,
        }
    }

    pub fn from_index(c: usize) -> Option<Self> {
        match c {
            0 => Some(CoinLabel::R),
            1 => Some(CoinLabel::L),
            _ => None,
        }
    }
}

impl fmt::Display for CoinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoinLabel::R => f.write_str("R"),
            CoinLabel::L => f.write_str("L"),
        }
    }
}

#[inline]
pub(crate) fn flat_index(position: usize, coin: CoinLabel) -> usize {
    2 * position + coin.index()
}

/// Pure state of a walker on a cycle of `n_positions` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n_positions: usize,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// Builds a state and checks both its length and its normalization.
    pub fn new(n_positions: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::from_raw(n_positions, amplitudes)?;
        state.check_normalized()?;
        Ok(state)
    }

    /// Builds a state checking only the shape. Used by readers that validate
    /// the norm as a separate step, and by tests that need corrupted states.
    pub fn from_raw(n_positions: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_positions < 2 {
            return Err(QwalkError::TooFewPositions(n_positions));
        }
        if amplitudes.len() != 2 * n_positions {
            return Err(QwalkError::AmplitudeCount {
                expected: 2 * n_positions,
                actual: amplitudes.len(),
            });
        }
        Ok(Self {
            n_positions,
            amplitudes,
        })
    }

    /// The basis state `|position⟩|coin⟩`.
    pub fn basis(n_positions: usize, position: usize, coin: CoinLabel) -> Result<Self> {
        if n_positions < 2 {
            return Err(QwalkError::TooFewPositions(n_positions));
        }
        if position >= n_positions {
            return Err(QwalkError::PositionOutOfRange {
                position,
                n_positions,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 2 * n_positions];
        amplitudes[flat_index(position, coin)] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_positions,
            amplitudes,
        })
    }

    /// A Haar-ish random state: i.i.d. Gaussian components, normalized.
    pub fn random(n_positions: usize, seed: u64) -> Result<Self> {
        if n_positions < 2 {
            return Err(QwalkError::TooFewPositions(n_positions));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amplitudes: Vec<Complex64> = (0..2 * n_positions)
            .map(|_| Complex64::new(gaussian(&mut rng), gaussian(&mut rng)))
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self {
            n_positions,
            amplitudes,
        })
    }

    pub fn n_positions(&self) -> usize {
        self.n_positions
    }

    /// Length of the amplitude vector, `2N`.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn amplitude(&self, position: usize, coin: CoinLabel) -> Complex64 {
        self.amplitudes[flat_index(position, coin)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let n2 = self.norm_sqr();
        if (n2 - 1.0).abs() > NORM_TOLERANCE || !n2.is_finite() {
            return Err(QwalkError::NotNormalized(n2));
        }
        Ok(())
    }

    /// Born probabilities of the position observable, coin traced out.
    pub fn position_probabilities(&self) -> Vec<f64> {
        self.amplitudes
            .chunks_exact(2)
            .map(|pair| pair[0].norm_sqr() + pair[1].norm_sqr())
            .collect()
    }

    /// Number of amplitudes with modulus above `tol`.
    pub fn support_size(&self, tol: f64) -> usize {
        self.amplitudes.iter().filter(|a| a.norm() > tol).count()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Result<Complex64> {
        if self.n_positions != other.n_positions {
            return Err(QwalkError::DimensionMismatch {
                left: self.n_positions,
                right: other.n_positions,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &QuantumState) -> Result<f64> {
        if self.n_positions != other.n_positions {
            return Err(QwalkError::DimensionMismatch {
                left: self.n_positions,
                right: other.n_positions,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Multiplies every amplitude by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> QuantumState {
        let phase = Complex64::from_polar(1.0, phi);
        QuantumState {
            n_positions: self.n_positions,
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(n_positions: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 2 * n_positions);
        Self {
            n_positions,
            amplitudes,
        }
    }
}

/// `|⟨a|b⟩|²`, clamped to `[0, 1]`.
pub fn state_fidelity(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; u1 kept away from 0.
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}
