//! The walk-based public-key scheme.
//!
//! Alice samples a secret key `(k, t, l, s)`, prepares `|l⟩|s⟩` and runs walk
//! `Û_k` for `t` steps; the resulting state is the public key. Bob encrypts a
//! message `m` by translating that state by `m` positions. Alice undoes the
//! walk, measures the position `m′ = l + m mod N` and recovers
//! `m = m′ − l mod N`. Decryption works because every `Û_k^t` commutes with
//! every translation.
//!
//! Coin index `k = d` (and `k = d/2` for even `d`) gives the identity coin,
//! i.e. a pure shift walk. Those keys stay in the key space but are weak.

use std::ops::RangeInclusive;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coin::{family_coin, Unitary2};
use crate::error::{QwalkError, Result};
use crate::measure::measure_position;
use crate::state::{CoinLabel, QuantumState};
use crate::walk::{apply_translation, walk_evolve, walk_evolve_inverse};

/// Largest supported message bit-length.
pub const MAX_BITS: u32 = 26;
/// Largest supported cycle; keeps the dense state under ~2 GiB.
pub const MAX_POSITIONS: usize = 1 << 26;

/// Decryption is flagged when the best position carries less than this.
pub const EIGENSTATE_THRESHOLD: f64 = 1.0 - 1e-9;

/// Public parameters shared by every party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WalkConfig {
    n: u32,
    n_positions: usize,
    d: u64,
    t_min: usize,
    t_max: usize,
}

impl WalkConfig {
    pub fn new(n: u32, n_positions: usize, d: u64, t_min: usize, t_max: usize) -> Result<Self> {
        let bad = |msg: String| Err(QwalkError::InvalidConfig(msg));
        if n > MAX_BITS {
            return bad(format!("n = {n} exceeds {MAX_BITS}"));
        }
        let space = 1usize << n;
        if n_positions < space.max(2) {
            return bad(format!(
                "N = {n_positions} must be at least max(2, 2^n) = {}",
                space.max(2)
            ));
        }
        if n_positions > MAX_POSITIONS {
            return bad(format!("N = {n_positions} exceeds {MAX_POSITIONS}"));
        }
        if d == 0 {
            return bad("d must be at least 1".into());
        }
        if t_min == 0 || t_min > t_max {
            return bad(format!(
                "step set needs 1 <= t_min <= t_max, got {t_min}..={t_max}"
            ));
        }
        Ok(Self {
            n,
            n_positions,
            d,
            t_min,
            t_max,
        })
    }

    /// `N = 2ⁿ` (at least 2), `d = 2ⁿ`, and `T = {n, …, n²}`, with `t_min`
    /// raised to 1 for `n = 0`.
    pub fn with_defaults(n: u32) -> Result<Self> {
        if n > MAX_BITS {
            return Err(QwalkError::InvalidConfig(format!(
                "n = {n} exceeds {MAX_BITS}"
            )));
        }
        let t_min = (n as usize).max(1);
        let t_max = (n as usize * n as usize).max(t_min);
        Self::new(n, (1usize << n).max(2), 1u64 << n, t_min, t_max)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn n_positions(&self) -> usize {
        self.n_positions
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn t_min(&self) -> usize {
        self.t_min
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    /// `2ⁿ`, the number of messages and of initial positions.
    pub fn message_space(&self) -> u64 {
        1u64 << self.n
    }

    pub fn steps(&self) -> RangeInclusive<usize> {
        self.t_min..=self.t_max
    }

    /// `|T|`.
    pub fn step_count(&self) -> usize {
        self.t_max - self.t_min + 1
    }

    /// `d · |T| · 2^{n+1}`.
    pub fn key_space_size(&self) -> u128 {
        self.d as u128 * self.step_count() as u128 * 2 * self.message_space() as u128
    }

    pub fn coin(&self, k: u64) -> Result<Unitary2> {
        family_coin(k, self.d)
    }
}

/// Alice's private choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SecretKey {
    pub k: u64,
    pub t: usize,
    pub l: u64,
    pub s: CoinLabel,
}

impl SecretKey {
    pub fn new(k: u64, t: usize, l: u64, s: CoinLabel, config: &WalkConfig) -> Result<Self> {
        let sk = Self { k, t, l, s };
        sk.validate(config)?;
        Ok(sk)
    }

    pub fn validate(&self, config: &WalkConfig) -> Result<()> {
        if self.k == 0 || self.k > config.d {
            return Err(QwalkError::InvalidKey(format!(
                "k = {} outside 1..={}",
                self.k, config.d
            )));
        }
        if !config.steps().contains(&self.t) {
            return Err(QwalkError::InvalidKey(format!(
                "t = {} outside {}..={}",
                self.t, config.t_min, config.t_max
            )));
        }
        if self.l >= config.message_space() {
            return Err(QwalkError::InvalidKey(format!(
                "l = {} outside 0..{}",
                self.l,
                config.message_space()
            )));
        }
        Ok(())
    }

    /// Every key of `config`, in `(k, t, l, s)` lexicographic order.
    pub fn enumerate(config: &WalkConfig) -> impl Iterator<Item = SecretKey> + '_ {
        (1..=config.d).flat_map(move |k| {
            config.steps().flat_map(move |t| {
                (0..config.message_space()).flat_map(move |l| {
                    CoinLabel::ALL
                        .into_iter()
                        .map(move |s| SecretKey { k, t, l, s })
                })
            })
        })
    }
}

/// A message `m < 2ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Message(u64);

impl Message {
    pub fn new(m: u64, config: &WalkConfig) -> Result<Self> {
        let limit = config.message_space();
        if m >= limit {
            return Err(QwalkError::MessageOutOfRange { m, limit });
        }
        Ok(Self(m))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PublicKey {
    pub config: WalkConfig,
    pub state: QuantumState,
}

pub fn sample_secret_key(config: &WalkConfig, seed: u64) -> SecretKey {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_secret_key_with(config, &mut rng)
}

/// Draws `k`, `t`, `l` and `s` uniformly and independently, in that order.
pub fn sample_secret_key_with<R: Rng + ?Sized>(config: &WalkConfig, rng: &mut R) -> SecretKey {
    let k = rng.random_range(1..=config.d);
    let t = rng.random_range(config.steps());
    let l = rng.random_range(0..config.message_space());
    let s = if rng.random::<bool>() {
        CoinLabel::L
    } else {
        CoinLabel::R
    };
    SecretKey { k, t, l, s }
}

/// A uniformly random message, for demos and tests.
pub fn sample_message(config: &WalkConfig, seed: u64) -> Message {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Message(rng.random_range(0..config.message_space()))
}

/// `|ψ_PK⟩ = Û_k^t |l⟩|s⟩`.
pub fn generate_public_key(sk: &SecretKey, config: &WalkConfig) -> Result<PublicKey> {
    sk.validate(config)?;
    let coin = config.coin(sk.k)?;
    let start = QuantumState::basis(config.n_positions, sk.l as usize, sk.s)?;
    Ok(PublicKey {
        config: *config,
        state: walk_evolve(&start, &coin, sk.t),
    })
}

/// `|ψ(m)⟩ = (T̂_m ⊗ Î_c)|ψ_PK⟩`.
pub fn encrypt(pk: &PublicKey, msg: Message) -> Result<QuantumState> {
    let limit = pk.config.message_space();
    if msg.0 >= limit {
        return Err(QwalkError::MessageOutOfRange { m: msg.0, limit });
    }
    if pk.state.n_positions() != pk.config.n_positions {
        return Err(QwalkError::DimensionMismatch {
            left: pk.state.n_positions(),
            right: pk.config.n_positions,
        });
    }
    Ok(apply_translation(&pk.state, msg.0 as usize))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decryption {
    pub message: Message,
    /// Measured position `m′`.
    pub position: usize,
    /// Born probability of `m′` in the pre-measurement state.
    pub position_probability: f64,
    /// `Û_k^{−t}|ψ(m)⟩`.
    pub pre_measurement: QuantumState,
}

impl Decryption {
    /// False when the inverse walk did not land on a position eigenstate,
    /// i.e. the cipher was tampered with or does not belong to this key.
    pub fn is_consistent(&self) -> bool {
        self.position_probability >= EIGENSTATE_THRESHOLD
    }
}

/// Inverse walk, position measurement, then `m = m′ − l mod N`.
///
/// A non-eigenstate is not an error: the sampled outcome is still returned
/// and [`Decryption::is_consistent`] reports the problem.
pub fn decrypt(
    cipher: &QuantumState,
    sk: &SecretKey,
    config: &WalkConfig,
    seed: u64,
) -> Result<Decryption> {
    sk.validate(config)?;
    if cipher.n_positions() != config.n_positions {
        return Err(QwalkError::DimensionMismatch {
            left: cipher.n_positions(),
            right: config.n_positions,
        });
    }
    let coin = config.coin(sk.k)?;
    let pre_measurement = walk_evolve_inverse(cipher, &coin, sk.t);
    let measured = measure_position(&pre_measurement, seed)?;
    let n = config.n_positions as u64;
    let m = (measured.outcome as u64 + n - sk.l % n) % n;
    Ok(Decryption {
        message: Message(m),
        position: measured.outcome,
        position_probability: measured.probability,
        pre_measurement,
    })
}

/// Everything produced by one honest run.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub secret_key: SecretKey,
    pub public_key: PublicKey,
    pub message: Message,
    pub cipher: QuantumState,
    pub decryption: Decryption,
}

/// Key sampling, key generation, encryption and decryption from one seed.
pub fn roundtrip(config: &WalkConfig, msg: Message, seed: u64) -> Result<(Message, Transcript)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sk = sample_secret_key_with(config, &mut rng);
    let measure_seed = rng.next_u64();
    roundtrip_with_key(config, &sk, msg, measure_seed)
}

pub fn roundtrip_with_key(
    config: &WalkConfig,
    sk: &SecretKey,
    msg: Message,
    measure_seed: u64,
) -> Result<(Message, Transcript)> {
    let pk = generate_public_key(sk, config)?;
    let cipher = encrypt(&pk, msg)?;
    let decryption = decrypt(&cipher, sk, config, measure_seed)?;
    let recovered = decryption.message;
    Ok((
        recovered,
        Transcript {
            secret_key: *sk,
            public_key: pk,
            message: msg,
            cipher,
            decryption,
        },
    ))
}

/// Splits bytes into big-endian `n`-bit blocks, zero-padding the last one.
pub fn bytes_to_blocks(bytes: &[u8], n: u32) -> Vec<u64> {
    assert!(
        (1..=MAX_BITS).contains(&n),
        "block width must be in 1..={MAX_BITS}"
    );
    let total_bits = bytes.len() * 8;
    let bit = |i: usize| (bytes[i / 8] >> (7 - i % 8)) & 1;
    (0..total_bits.div_ceil(n as usize))
        .map(|b| {
            (0..n as usize).fold(0u64, |acc, j| {
                let i = b * n as usize + j;
                let v = if i < total_bits { bit(i) } else { 0 };
                (acc << 1) | v as u64
            })
        })
        .collect()
}

/// Inverse of [`bytes_to_blocks`]; `byte_len` drops the padding.
pub fn blocks_to_bytes(blocks: &[u64], n: u32, byte_len: usize) -> Vec<u8> {
    let mut out = vec![0u8; byte_len];
    for i in 0..byte_len * 8 {
        let (b, j) = (i / n as usize, i % n as usize);
        let v = blocks
            .get(b)
            .map_or(0, |blk| (blk >> (n as usize - 1 - j)) & 1);
        out[i / 8] |= (v as u8) << (7 - i % 8);
    }
    out
}
