//! `QWS1` text format for [`QuantumState`].
//!
//! ```text
//! QWS1 N=<positions>
//! <re> <im>        (2N lines, flat-index order)
//! ```
//!
//! Every line ends in LF. Components are written with 17 significant
//! digits so a write/read cycle reproduces each `f64` exactly.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{QwalkError, Result};
use crate::state::QuantumState;

pub const MAGIC: &str = "QWS1";

pub fn format_qws(state: &QuantumState) -> String {
    // ~50 bytes per amplitude line.
    let mut out = String::with_capacity(16 + 50 * state.dim());
    writeln!(out, "{MAGIC} N={}", state.n_positions()).unwrap();
    for a in state.amplitudes() {
        writeln!(out, "{:.16e} {:.16e}", a.re, a.im).unwrap();
    }
    out
}

/// Parses a `QWS1` document. Shape is validated here; normalization is left
/// to [`QuantumState::check_normalized`].
pub fn parse_qws(text: &str) -> Result<QuantumState> {
    let err = |line: usize, msg: String| QwalkError::Format { line, msg };

    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| err(0, "missing final LF".into()))?;
    let mut lines = body.split('\n');

    let header = lines.next().unwrap_or_default();
    let n_text = header
        .strip_prefix(MAGIC)
        .and_then(|rest| rest.strip_prefix(" N="))
        .ok_or_else(|| {
            err(
                1,
                format!("expected `{MAGIC} N=<positions>`, got {header:?}"),
            )
        })?;
    let n_positions: usize = n_text
        .parse()
        .map_err(|e| err(1, format!("bad position count {n_text:?}: {e}")))?;
    if n_positions < 2 {
        return Err(err(1, format!("position count {n_positions} below 2")));
    }

    let expected = 2 * n_positions;
    let mut amplitudes = Vec::with_capacity(expected);
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        if amplitudes.len() == expected {
            return Err(err(lineno, "trailing content after last amplitude".into()));
        }
        let mut parts = line.split(' ');
        let (re, im) = match (parts.next(), parts.next(), parts.next()) {
            (Some(re), Some(im), None) => (re, im),
            _ => return Err(err(lineno, format!("expected `<re> <im>`, got {line:?}"))),
        };
        let re = parse_component(re).map_err(|m| err(lineno, m))?;
        let im = parse_component(im).map_err(|m| err(lineno, m))?;
        amplitudes.push(Complex64::new(re, im));
    }
    if amplitudes.len() != expected {
        return Err(err(
            amplitudes.len() + 2,
            format!("truncated: {} of {expected} amplitudes", amplitudes.len()),
        ));
    }
    QuantumState::from_raw(n_positions, amplitudes)
}

fn parse_component(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("bad number {s:?}: {e}"))?;
    if !v.is_finite() {
        return Err(format!("non-finite component {s:?}"));
    }
    Ok(v)
}
