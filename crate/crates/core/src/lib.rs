//! Discrete-time coined quantum walks on the N-cycle, a public-key scheme
//! whose public keys are walk states, and brute-force tools for checking
//! the scheme's entropy and Holevo-bound arguments on small instances.

pub mod coin;
pub mod error;
pub mod keyfile;
pub mod measure;
pub mod protocol;
pub mod qws;
pub mod security;
pub mod state;
pub mod walk;

pub use coin::{build_coin, family_coin, CoinParams, Unitary2};
pub use error::{QwalkError, Result};
pub use measure::{measure_position, PositionMeasurement};
pub use protocol::{
    decrypt, encrypt, generate_public_key, roundtrip, sample_secret_key, Decryption, Message,
    PublicKey, SecretKey, Transcript, WalkConfig,
};
pub use security::{
    cipher_density, exhaustive_eavesdropper, holevo_report, public_key_density,
    shannon_entropy_secret_key, von_neumann_entropy, DensityMatrix, EavesdropperTable,
    KeyDistribution, SecurityReport,
};
pub use state::{state_fidelity, CoinLabel, QuantumState};
pub use walk::{
    apply_coin, apply_shift, apply_translation, walk_evolve, walk_evolve_inverse, walk_step,
};
