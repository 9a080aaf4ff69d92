use std::fs;
use std::io::Write;
use std::path::Path;

use qwalk_core::measure::most_likely_position;
use qwalk_core::protocol::{blocks_to_bytes, bytes_to_blocks, sample_message, MAX_BITS};
use qwalk_core::security::MAX_DENSITY_POSITIONS;
use qwalk_core::{
    decrypt, encrypt, exhaustive_eavesdropper, generate_public_key, holevo_report, roundtrip,
    sample_secret_key, Message, PublicKey, QuantumState, WalkConfig,
};
use serde_json::{json, Map, Value};

use crate::args::{
    AnalyzeArgs, CommonArgs, DecryptArgs, DemoArgs, EncryptArgs, KeygenArgs, ParamArgs,
};
use crate::error::{CliError, CliResult};
use crate::files;

/// Output sinks and verbosity shared by every command.
pub struct Io<'a> {
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
    pub verbose: u8,
}

impl Io<'_> {
    fn info(&mut self, msg: impl AsRef<str>) {
        if self.verbose > 0 {
            let _ = writeln!(self.stderr, "{}", msg.as_ref());
        }
    }

    fn warn(&mut self, msg: impl AsRef<str>) {
        let _ = writeln!(self.stderr, "warning: {}", msg.as_ref());
    }

    fn out(&mut self, text: &str) -> CliResult<()> {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
    }
}

/// Merges `--config` with explicit flags; flags win. Only `n` is required.
pub fn resolve_config(common: &CommonArgs, params: &ParamArgs) -> CliResult<WalkConfig> {
    let file = match &common.config {
        Some(path) => files::read_partial_config(path)?,
        None => Default::default(),
    };
    let n = params.n.or(file.n).ok_or_else(|| {
        CliError::Validation("message bit-length n is required (--n or config file)".into())
    })?;
    if n > MAX_BITS {
        return Err(CliError::Validation(format!("n = {n} exceeds {MAX_BITS}")));
    }
    let n_positions = params
        .n_positions
        .or(file.n_positions)
        .unwrap_or((1usize << n).max(2));
    let d = params.d.or(file.d).unwrap_or(1u64 << n);
    let t_min = params.t_min.or(file.t_min).unwrap_or((n as usize).max(1));
    let t_max = params
        .t_max
        .or(file.t_max)
        .unwrap_or((n as usize * n as usize).max(t_min));
    Ok(WalkConfig::new(n, n_positions, d, t_min, t_max)?)
}

pub fn cmd_keygen(args: &KeygenArgs, io: &mut Io) -> CliResult<()> {
    let config = resolve_config(&args.common, &args.params)?;
    let sk = sample_secret_key(&config, args.common.seed);
    let pk = generate_public_key(&sk, &config)?;

    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.display().to_string(),
        source,
    })?;
    let sk_path = args.out.join(files::SECRET_KEY_FILE);
    let pk_path = args.out.join(files::PUBLIC_KEY_FILE);
    files::write_secret_key(&sk_path, &config, &sk)?;
    files::write_state_with_sidecar(&pk_path, &pk.state, &config)?;
    io.info(format!(
        "wrote {} and {} (+ sidecar)",
        sk_path.display(),
        pk_path.display()
    ));
    if sk.k == config.d() || (config.d() % 2 == 0 && sk.k == config.d() / 2) {
        io.info("note: sampled coin is the identity (pure shift walk)");
    }
    Ok(())
}

pub fn cmd_encrypt(args: &EncryptArgs, io: &mut Io) -> CliResult<()> {
    let (state, config) = files::read_state_with_sidecar(&args.public_key)?;
    let msg = Message::new(args.message, &config)?;
    let cipher = encrypt(&PublicKey { config, state }, msg)?;
    files::write_state_with_sidecar(&args.out, &cipher, &config)?;
    io.info(format!("wrote {}", args.out.display()));
    Ok(())
}

pub fn cmd_decrypt(args: &DecryptArgs, io: &mut Io) -> CliResult<()> {
    let cipher = files::read_state(&args.cipher)?;
    let (config, sk) = files::read_secret_key(&args.secret_key)?;
    if cipher.n_positions() != config.n_positions() {
        return Err(CliError::Format(format!(
            "cipher has N = {} but the secret key's configuration has N = {}",
            cipher.n_positions(),
            config.n_positions()
        )));
    }
    let dec = decrypt(&cipher, &sk, &config, args.common.seed)?;
    if !dec.is_consistent() {
        io.warn(format!(
            "cipher did not decode to a position eigenstate (p = {:.6}); it may be tampered with or encrypted for another key",
            dec.position_probability
        ));
    }
    io.out(&format!("{}\n", dec.message.value()))
}

fn check_dense(config: &WalkConfig) -> CliResult<()> {
    if config.n_positions() > MAX_DENSITY_POSITIONS {
        return Err(CliError::Validation(format!(
            "analysis builds dense {0}x{0} density matrices and supports N <= {MAX_DENSITY_POSITIONS}; \
             got N = {1}. Use --n 6 or smaller (N = 2^n) or a smaller --positions",
            2 * MAX_DENSITY_POSITIONS,
            config.n_positions()
        )));
    }
    Ok(())
}

fn report_value(config: &WalkConfig, k: u64, t: usize) -> CliResult<Value> {
    let report = holevo_report(config, k, t)?;
    serde_json::to_value(report).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn cmd_analyze(args: &AnalyzeArgs, io: &mut Io) -> CliResult<()> {
    let config = resolve_config(&args.common, &args.params)?;
    check_dense(&config)?;
    let k = args.k.unwrap_or(1);
    let t = args.t.unwrap_or(config.t_min());
    config.coin(k)?;

    let text = if args.grid {
        grid_lines(&config, io)?
    } else {
        let mut value = report_value(&config, k, t)?;
        if args.brute_force {
            let table = brute_force(args, &config, io)?;
            value
                .as_object_mut()
                .expect("report is an object")
                .insert("eavesdropper".into(), table);
        }
        format!("{value}\n")
    };

    match &args.out {
        Some(path) => files::write(path, &text),
        None => io.out(&text),
    }
}

fn brute_force(args: &AnalyzeArgs, config: &WalkConfig, io: &mut Io) -> CliResult<Value> {
    let cipher = match &args.cipher {
        Some(path) => {
            let state = files::read_state(path)?;
            if state.n_positions() != config.n_positions() {
                return Err(CliError::Format(format!(
                    "{}: cipher has N = {} but the configuration has N = {}",
                    path.display(),
                    state.n_positions(),
                    config.n_positions()
                )));
            }
            state
        }
        None => {
            let sk = sample_secret_key(config, args.common.seed);
            let msg = match args.message {
                Some(m) => Message::new(m, config)?,
                None => sample_message(config, args.common.seed.wrapping_add(1)),
            };
            io.info(format!(
                "attacking an honest cipher of message {}",
                msg.value()
            ));
            encrypt(&generate_public_key(&sk, config)?, msg)?
        }
    };
    let table = exhaustive_eavesdropper(&cipher, config)?;
    let mut value = serde_json::to_value(&table).map_err(|e| CliError::Internal(e.to_string()))?;
    value
        .as_object_mut()
        .expect("table is an object")
        .insert("uniform".into(), Value::Bool(table.is_uniform(config)));
    Ok(value)
}

fn grid_lines(config: &WalkConfig, io: &mut Io) -> CliResult<String> {
    let mut out = String::new();
    for n in 1..=config.n() {
        let n_positions = 1usize << n;
        if n_positions > MAX_DENSITY_POSITIONS {
            io.info(format!(
                "grid stops at n = {}: N would exceed {MAX_DENSITY_POSITIONS}",
                n - 1
            ));
            break;
        }
        let mut d = 1u64;
        while d <= config.d() {
            let c = WalkConfig::new(n, n_positions, d, config.t_min(), config.t_max())?;
            let mut line = Map::new();
            line.insert("n".into(), json!(n));
            line.insert("N".into(), json!(n_positions));
            line.insert("d".into(), json!(d));
            line.insert("t_min".into(), json!(c.t_min()));
            line.insert("t_max".into(), json!(c.t_max()));
            line.insert("k".into(), json!(1));
            line.insert("t".into(), json!(c.t_min()));
            if let Value::Object(report) = report_value(&c, 1, c.t_min())? {
                line.extend(report);
            }
            out.push_str(&Value::Object(line).to_string());
            out.push('\n');
            d *= 2;
        }
    }
    Ok(out)
}

fn summarize(state: &QuantumState) -> String {
    let (peak, p) = most_likely_position(state);
    format!(
        "N={} norm={:.12} nonzero_amplitudes={} peak_position={} peak_probability={:.6}",
        state.n_positions(),
        state.norm(),
        state.support_size(1e-12),
        peak,
        p
    )
}

pub fn cmd_demo(args: &DemoArgs, io: &mut Io) -> CliResult<()> {
    let config = resolve_config(&args.common, &args.params)?;
    let seed = args.common.seed;
    let mut text = format!(
        "config: n={} N={} d={} T={}..={}\n",
        config.n(),
        config.n_positions(),
        config.d(),
        config.t_min(),
        config.t_max()
    );

    if let Some(plain) = &args.text {
        if config.n() == 0 {
            return Err(CliError::Validation("text mode needs n >= 1".into()));
        }
        let blocks = bytes_to_blocks(plain.as_bytes(), config.n());
        let mut recovered = Vec::with_capacity(blocks.len());
        for (i, &b) in blocks.iter().enumerate() {
            let msg = Message::new(b, &config)?;
            let (got, tr) = roundtrip(&config, msg, seed.wrapping_add(i as u64))?;
            text.push_str(&format!(
                "block {i}: m={b} key=(k={}, t={}, l={}, s={}) recovered={}\n",
                tr.secret_key.k,
                tr.secret_key.t,
                tr.secret_key.l,
                tr.secret_key.s,
                got.value()
            ));
            recovered.push(got.value());
        }
        let bytes = blocks_to_bytes(&recovered, config.n(), plain.len());
        text.push_str(&format!(
            "recovered text: {}\n",
            String::from_utf8_lossy(&bytes)
        ));
    } else {
        let msg = match args.message {
            Some(m) => Message::new(m, &config)?,
            None => sample_message(&config, seed.wrapping_add(1)),
        };
        let (got, tr) = roundtrip(&config, msg, seed)?;
        let sk = tr.secret_key;
        text.push_str(&format!(
            "secret key: k={} t={} l={} s={}\n",
            sk.k, sk.t, sk.l, sk.s
        ));
        text.push_str(&format!(
            "public key: {}\n",
            summarize(&tr.public_key.state)
        ));
        text.push_str(&format!("message: {}\n", msg.value()));
        text.push_str(&format!("cipher: {}\n", summarize(&tr.cipher)));
        text.push_str(&format!(
            "decryption: measured position {} (p={:.12}), recovered message {}\n",
            tr.decryption.position,
            tr.decryption.position_probability,
            got.value()
        ));
    }

    match &args.out {
        Some(path) => files::write(Path::new(path), &text),
        None => io.out(&text),
    }
}
