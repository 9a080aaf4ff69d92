use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Quantum-walk public-key encryption on the N-cycle"
)]
pub struct Cli {
    /// Print progress details on standard error (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a secret key and write it with its public-key state.
    Keygen(KeygenArgs),
    /// Translate a public-key state by a message.
    Encrypt(EncryptArgs),
    /// Undo the walk, measure, and print the message.
    Decrypt(DecryptArgs),
    /// Entropy and Holevo-bound report for a configuration.
    Analyze(AnalyzeArgs),
    /// Run keygen, encrypt and decrypt end to end and print the transcript.
    Demo(DemoArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct CommonArgs {
    /// JSON file with any of {n, N, d, t_min, t_max}; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// RNG seed; runs are reproducible for a fixed seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Clone, Default)]
pub struct ParamArgs {
    /// Message bit-length.
    #[arg(long)]
    pub n: Option<u32>,

    /// Number of positions on the cycle (default 2^n).
    #[arg(long = "positions", visible_alias = "big-n")]
    pub n_positions: Option<usize>,

    /// Size of the coin family (default 2^n).
    #[arg(long)]
    pub d: Option<u64>,

    /// Smallest step count (default n).
    #[arg(long)]
    pub t_min: Option<usize>,

    /// Largest step count (default n²).
    #[arg(long)]
    pub t_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub params: ParamArgs,

    /// Output directory for secret_key.json, public_key.qws and its sidecar.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Public-key QWS1 file; its sidecar is `<path>.json`.
    #[arg(long)]
    pub public_key: PathBuf,

    #[arg(long)]
    pub message: u64,

    /// Cipher QWS1 output path; the sidecar goes to `<path>.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    #[arg(long)]
    pub cipher: PathBuf,

    #[arg(long)]
    pub secret_key: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub params: ParamArgs,

    /// Coin index assumed known to the eavesdropper (default 1).
    #[arg(long)]
    pub k: Option<u64>,

    /// Step count assumed known to the eavesdropper (default t_min).
    #[arg(long)]
    pub t: Option<usize>,

    /// Also enumerate every key against a cipher and tabulate decodings.
    #[arg(long)]
    pub brute_force: bool,

    /// Cipher to attack with --brute-force; an honest one is generated from
    /// the seed when absent.
    #[arg(long, requires = "brute_force")]
    pub cipher: Option<PathBuf>,

    /// Message for the generated cipher (default: drawn from the seed).
    #[arg(long)]
    pub message: Option<u64>,

    /// One JSON line per config: n' in 1..=n, d' in powers of two up to d.
    #[arg(long, conflicts_with = "brute_force")]
    pub grid: bool,

    /// Write the JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub params: ParamArgs,

    /// Message to send (default: drawn from the seed).
    #[arg(long, conflicts_with = "text")]
    pub message: Option<u64>,

    /// Text to send, split into n-bit blocks with one key per block.
    #[arg(long)]
    pub text: Option<String>,

    /// Write the transcript here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
