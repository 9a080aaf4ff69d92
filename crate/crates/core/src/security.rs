//! Eavesdropper's view of the scheme, computed by brute force at desk scale.
//!
//! The public key seen without the secret key is the ensemble average of
//! `Û_k^t|l⟩|s⟩` over all initial states. With `N = 2ⁿ` it is maximally
//! mixed for every `(k, t)`, so its von Neumann entropy is `n + 1` bits.
//! That entropy bounds what any measurement can reveal about the key, while
//! the key itself carries `log₂(d·|T|) + n + 1` bits.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QwalkError, Result};
use crate::measure::most_likely_position;
use crate::protocol::{SecretKey, WalkConfig, EIGENSTATE_THRESHOLD};
use crate::state::{CoinLabel, QuantumState};
use crate::walk::{apply_translation, walk_evolve, walk_evolve_inverse};

/// Dense `2N × 2N` storage stops here.
pub const MAX_DENSITY_POSITIONS: usize = 64;
pub const DENSITY_TOLERANCE: f64 = 1e-12;
/// Eigenvalues at or below this contribute nothing to the entropy.
pub const EIGENVALUE_CUTOFF: f64 = 1e-14;
/// Eigenvalues below this make the entropy undefined.
pub const NEGATIVE_EIGENVALUE_LIMIT: f64 = -1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Checks squareness, hermiticity and unit trace. Positivity needs an
    /// eigendecomposition and is checked by [`DensityMatrix::check_invariants`].
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(QwalkError::InvalidDensity(format!(
                "not square: {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let rho = Self { matrix };
        let h = rho.hermiticity_error();
        if h > DENSITY_TOLERANCE {
            return Err(QwalkError::InvalidDensity(format!("not Hermitian: {h:e}")));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > DENSITY_TOLERANCE {
            return Err(QwalkError::InvalidDensity(format!("trace {tr} != 1")));
        }
        Ok(rho)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &QuantumState) -> Result<Self> {
        state.check_normalized()?;
        let mut m = DMatrix::zeros(state.dim(), state.dim());
        accumulate_projector(&mut m, state.amplitudes(), 1.0);
        Self::new(m)
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let m = DMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.matrix[(r, c)] - self.matrix[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .matrix
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Hermitian, unit trace and positive semidefinite, all within 1e-12.
    pub fn check_invariants(&self) -> Result<()> {
        Self::new(self.matrix.clone())?;
        let min = self.eigenvalues().first().copied().unwrap_or(0.0);
        if min < -DENSITY_TOLERANCE {
            return Err(QwalkError::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance from `I / dim`.
    pub fn deviation_from_maximally_mixed(&self) -> f64 {
        self.max_abs_diff(&Self::maximally_mixed(self.dim()))
    }
}

fn accumulate_projector(m: &mut DMatrix<Complex64>, psi: &[Complex64], weight: f64) {
    for (c, b) in psi.iter().enumerate() {
        if *b == Complex64::new(0.0, 0.0) {
            continue;
        }
        let bw = b.conj() * weight;
        for (r, a) in psi.iter().enumerate() {
            m[(r, c)] += a * bw;
        }
    }
}

fn check_dense_limit(config: &WalkConfig) -> Result<()> {
    if config.n_positions() > MAX_DENSITY_POSITIONS {
        return Err(QwalkError::TooLarge {
            what: "density matrix",
            size: config.n_positions(),
            limit: MAX_DENSITY_POSITIONS,
        });
    }
    Ok(())
}

/// Uniform average of `|ψ⟩⟨ψ|` over every initial `|l⟩|s⟩`, with each
/// state passed through `map` first. Summation order is fixed.
fn initial_state_ensemble<F>(config: &WalkConfig, map: F) -> Result<DMatrix<Complex64>>
where
    F: Fn(QuantumState) -> QuantumState,
{
    let dim = 2 * config.n_positions();
    let weight = 1.0 / (2 * config.message_space()) as f64;
    let mut m = DMatrix::zeros(dim, dim);
    for l in 0..config.message_space() as usize {
        for s in CoinLabel::ALL {
            let psi = map(QuantumState::basis(config.n_positions(), l, s)?);
            accumulate_projector(&mut m, psi.amplitudes(), weight);
        }
    }
    Ok(m)
}

/// Public key as seen by someone who knows `k` and `t` but not `(l, s)`.
pub fn public_key_density(
    config: &WalkConfig,
    fixed_k: u64,
    fixed_t: usize,
) -> Result<DensityMatrix> {
    check_dense_limit(config)?;
    let coin = config.coin(fixed_k)?;
    let m = initial_state_ensemble(config, |psi| walk_evolve(&psi, &coin, fixed_t))?;
    DensityMatrix::new(m)
}

/// Public key averaged over the whole key space.
pub fn public_key_density_full(config: &WalkConfig) -> Result<DensityMatrix> {
    check_dense_limit(config)?;
    let dim = 2 * config.n_positions();
    let mut m = DMatrix::zeros(dim, dim);
    let weight = Complex64::new(1.0 / (config.d() as f64 * config.step_count() as f64), 0.0);
    for k in 1..=config.d() {
        for t in config.steps() {
            m += public_key_density(config, k, t)?.matrix * weight;
        }
    }
    DensityMatrix::new(m)
}

/// Cipher state for message `m` as seen without the secret key.
pub fn cipher_density(
    config: &WalkConfig,
    m: u64,
    fixed_k: u64,
    fixed_t: usize,
) -> Result<DensityMatrix> {
    check_dense_limit(config)?;
    let limit = config.message_space();
    if m >= limit {
        return Err(QwalkError::MessageOutOfRange { m, limit });
    }
    let coin = config.coin(fixed_k)?;
    let mat = initial_state_ensemble(config, |psi| {
        apply_translation(&walk_evolve(&psi, &coin, fixed_t), m as usize)
    })?;
    DensityMatrix::new(mat)
}

/// `−Σ λ log₂ λ` over the spectrum.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let mut s = 0.0;
    for lambda in rho.eigenvalues() {
        if lambda < NEGATIVE_EIGENVALUE_LIMIT {
            return Err(QwalkError::InvalidDensity(format!(
                "eigenvalue {lambda:e} is negative"
            )));
        }
        if lambda > EIGENVALUE_CUTOFF {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s)
}

/// Marginals of the key distribution. Keys are drawn uniformly and
/// independently, so each family is flat.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyDistribution {
    pub p_k: Vec<f64>,
    pub p_t: Vec<f64>,
    pub p_ls: Vec<f64>,
    /// Probability of any single key.
    pub p_sk: f64,
}

impl KeyDistribution {
    pub fn uniform(config: &WalkConfig) -> Self {
        let flat = |n: usize| vec![1.0 / n as f64; n];
        let p_k = flat(config.d() as usize);
        let p_t = flat(config.step_count());
        let p_ls = flat(2 * config.message_space() as usize);
        let p_sk = p_k[0] * p_t[0] * p_ls[0];
        Self {
            p_k,
            p_t,
            p_ls,
            p_sk,
        }
    }

    /// Entropy of the product distribution as the sum of its marginals.
    pub fn entropy_bits(&self) -> f64 {
        let h = |p: &[f64]| -> f64 { p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum() };
        h(&self.p_k) + h(&self.p_t) + h(&self.p_ls)
    }
}

/// `log₂(d·|T|) + n + 1`.
pub fn shannon_entropy_secret_key(config: &WalkConfig) -> f64 {
    (config.d() as f64 * config.step_count() as f64).log2() + (config.n() + 1) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecurityReport {
    pub von_neumann_entropy_bits: f64,
    pub shannon_entropy_bits: f64,
    /// Upper bound on `I(SK, E)`; equals the von Neumann entropy.
    pub holevo_bound_bits: f64,
    pub holevo_gap_bits: f64,
    /// `2^{gap} = d·|T|`: keys still consistent with maximal information.
    pub consistent_key_count: u64,
}

pub fn holevo_report(config: &WalkConfig, fixed_k: u64, fixed_t: usize) -> Result<SecurityReport> {
    let rho = public_key_density(config, fixed_k, fixed_t)?;
    let von_neumann = von_neumann_entropy(&rho)?;
    let shannon = shannon_entropy_secret_key(config);
    let key_choices = config.d() * config.step_count() as u64;
    if key_choices > 1 && von_neumann >= shannon {
        return Err(QwalkError::HolevoViolation {
            von_neumann,
            shannon,
        });
    }
    Ok(SecurityReport {
        von_neumann_entropy_bits: von_neumann,
        shannon_entropy_bits: shannon,
        holevo_bound_bits: von_neumann,
        holevo_gap_bits: shannon - von_neumann,
        consistent_key_count: key_choices,
    })
}

/// Which message a candidate key reads out of a cipher, if the readout is
/// deterministic.
pub fn decode_with_key(
    cipher: &QuantumState,
    sk: &SecretKey,
    config: &WalkConfig,
) -> Result<Option<u64>> {
    let coin = config.coin(sk.k)?;
    let pre = walk_evolve_inverse(cipher, &coin, sk.t);
    Ok(readout(&pre, sk.l, config.n_positions()))
}

fn readout(pre: &QuantumState, l: u64, n_positions: usize) -> Option<u64> {
    let (pos, p) = most_likely_position(pre);
    (p >= EIGENSTATE_THRESHOLD).then(|| {
        let n = n_positions as u64;
        (pos as u64 + n - l % n) % n
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EavesdropperTable {
    /// Decoded message → number of keys decoding to it.
    pub counts: BTreeMap<u64, u64>,
    /// Keys whose inverse walk does not end on a position eigenstate.
    pub ambiguous: u64,
    pub total_keys: u64,
}

impl EavesdropperTable {
    /// True when every message in `0..2ⁿ` is decoded by the same positive
    /// number of keys and no key decodes anything else.
    pub fn is_uniform(&self, config: &WalkConfig) -> bool {
        let space = config.message_space();
        let Some(&first) = self.counts.get(&0) else {
            return false;
        };
        first > 0
            && self.counts.len() as u64 == space
            && (0..space).all(|m| self.counts.get(&m) == Some(&first))
    }
}

/// Decodes `cipher` under every key of a tiny config and tallies results.
pub fn exhaustive_eavesdropper(
    cipher: &QuantumState,
    config: &WalkConfig,
) -> Result<EavesdropperTable> {
    if config.d() > 4 || config.step_count() > 4 || config.n() > 4 {
        return Err(QwalkError::EnumerationTooLarge(format!(
            "need d <= 4, |T| <= 4, n <= 4; got d = {}, |T| = {}, n = {}",
            config.d(),
            config.step_count(),
            config.n()
        )));
    }
    if cipher.n_positions() != config.n_positions() {
        return Err(QwalkError::DimensionMismatch {
            left: cipher.n_positions(),
            right: config.n_positions(),
        });
    }

    let mut table = EavesdropperTable {
        counts: BTreeMap::new(),
        ambiguous: 0,
        total_keys: 0,
    };
    // The inverse walk depends on (k, t) only; l and s enter at readout.
    for k in 1..=config.d() {
        let coin = config.coin(k)?;
        for t in config.steps() {
            let pre = walk_evolve_inverse(cipher, &coin, t);
            for l in 0..config.message_space() {
                for _s in CoinLabel::ALL {
                    table.total_keys += 1;
                    match readout(&pre, l, config.n_positions()) {
                        Some(m) => *table.counts.entry(m).or_insert(0) += 1,
                        None => table.ambiguous += 1,
                    }
                }
            }
        }
    }
    Ok(table)
}
