//! Walk operators on the cycle: coin, conditional shift, the step
//! `Ŝ(Î ⊗ Û_c)`, its powers and inverse, and the translation `T̂_m`.
//!
//! Every operator here is O(N) per application on the dense vector. The
//! public functions take a state by reference and return a fresh one;
//! repeated stepping reuses one scratch buffer.

use num_complex::Complex64;

use crate::coin::Unitary2;
use crate::state::QuantumState;

/// `Î_p ⊗ Û_c`: the coin acts on every position's `(R, L)` pair.
pub fn apply_coin(state: &QuantumState, coin: &Unitary2) -> QuantumState {
    let mut amps = state.amplitudes().to_vec();
    coin_in_place(&mut amps, coin);
    QuantumState::from_parts_unchecked(state.n_positions(), amps)
}

/// `Ŝ`: `(i, R) → (i+1 mod N, R)` and `(i, L) → (i−1 mod N, L)`.
pub fn apply_shift(state: &QuantumState) -> QuantumState {
    let mut out = vec![Complex64::new(0.0, 0.0); state.dim()];
    shift_into(state.amplitudes(), &mut out, state.n_positions(), false);
    QuantumState::from_parts_unchecked(state.n_positions(), out)
}

/// `Ŝ†`: the shift run backwards.
pub fn apply_shift_inverse(state: &QuantumState) -> QuantumState {
    let mut out = vec![Complex64::new(0.0, 0.0); state.dim()];
    shift_into(state.amplitudes(), &mut out, state.n_positions(), true);
    QuantumState::from_parts_unchecked(state.n_positions(), out)
}

/// One walk step: coin first, then shift.
pub fn walk_step(state: &QuantumState, coin: &Unitary2) -> QuantumState {
    walk_evolve(state, coin, 1)
}

/// `t` successive walk steps.
pub fn walk_evolve(state: &QuantumState, coin: &Unitary2, t: usize) -> QuantumState {
    let n = state.n_positions();
    let mut amps = state.amplitudes().to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); amps.len()];
    for _ in 0..t {
        coin_in_place(&mut amps, coin);
        shift_into(&amps, &mut scratch, n, false);
        std::mem::swap(&mut amps, &mut scratch);
    }
    QuantumState::from_parts_unchecked(n, amps)
}

/// `t` applications of `(Î ⊗ Û_c†) Ŝ†`, undoing [`walk_evolve`].
pub fn walk_evolve_inverse(state: &QuantumState, coin: &Unitary2, t: usize) -> QuantumState {
    let n = state.n_positions();
    let coin_dag = coin.adjoint();
    let mut amps = state.amplitudes().to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); amps.len()];
    for _ in 0..t {
        shift_into(&amps, &mut scratch, n, true);
        std::mem::swap(&mut amps, &mut scratch);
        coin_in_place(&mut amps, &coin_dag);
    }
    QuantumState::from_parts_unchecked(n, amps)
}

/// `T̂_m ⊗ Î_c`: relabels every position `i` as `i + m mod N`.
///
/// `m` is taken modulo N. The cost does not depend on `m`: the flat vector
/// is copied once in two contiguous segments, a modular addition on the
/// position labels.
pub fn apply_translation(state: &QuantumState, m: usize) -> QuantumState {
    let n = state.n_positions();
    let src = state.amplitudes();
    let split = src.len() - 2 * (m % n);
    let mut amps = Vec::with_capacity(src.len());
    amps.extend_from_slice(&src[split..]);
    amps.extend_from_slice(&src[..split]);
    QuantumState::from_parts_unchecked(n, amps)
}

#[inline]
fn coin_in_place(amps: &mut [Complex64], coin: &Unitary2) {
    for pair in amps.chunks_exact_mut(2) {
        let (r, l) = coin.apply(pair[0], pair[1]);
        pair[0] = r;
        pair[1] = l;
    }
}

#[inline]
fn shift_into(src: &[Complex64], dst: &mut [Complex64], n: usize, inverse: bool) {
    // R moves +1 and L moves −1; the inverse swaps the directions.
    let (r_step, l_step) = if inverse { (n - 1, 1) } else { (1, n - 1) };
    for i in 0..n {
        dst[2 * ((i + r_step) % n)] = src[2 * i];
        dst[2 * ((i + l_step) % n) + 1] = src[2 * i + 1];
    }
}
