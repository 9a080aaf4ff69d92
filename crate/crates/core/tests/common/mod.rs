//! Test-only oracles that share no code with the walk implementation.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use qwalk_core::{QuantumState, Unitary2};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Explicit `Ŝ (Î_p ⊗ Û_c)` as a `2N × 2N` matrix, flat index `2i + c`.
pub fn dense_step_matrix(n: usize, coin: &Unitary2) -> DMatrix<Complex64> {
    let dim = 2 * n;
    let mut shift = DMatrix::from_element(dim, dim, zero());
    for i in 0..n {
        // |i+1⟩⟨i| ⊗ |R⟩⟨R|  +  |i−1⟩⟨i| ⊗ |L⟩⟨L|
        shift[(2 * ((i + 1) % n), 2 * i)] = Complex64::new(1.0, 0.0);
        shift[(2 * ((i + n - 1) % n) + 1, 2 * i + 1)] = Complex64::new(1.0, 0.0);
    }
    let mut coin_full = DMatrix::from_element(dim, dim, zero());
    for i in 0..n {
        for r in 0..2 {
            for c in 0..2 {
                coin_full[(2 * i + r, 2 * i + c)] = coin.entry(r, c);
            }
        }
    }
    shift * coin_full
}

/// `U^t` by repeated dense multiplication.
pub fn dense_power(u: &DMatrix<Complex64>, t: usize) -> DMatrix<Complex64> {
    let mut acc = DMatrix::identity(u.nrows(), u.ncols());
    for _ in 0..t {
        acc = u * &acc;
    }
    acc
}

pub fn dense_apply(m: &DMatrix<Complex64>, state: &QuantumState) -> Vec<Complex64> {
    (0..m.nrows())
        .map(|r| {
            state
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(c, a)| m[(r, c)] * a)
                .sum()
        })
        .collect()
}

pub fn max_amplitude_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations on the real
/// symmetric embedding `[[Re, −Im], [Im, Re]]`, whose spectrum is the
/// Hermitian spectrum with every eigenvalue doubled.
pub fn jacobi_hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Vec<f64> {
    let n = h.nrows();
    let m = 2 * n;
    let mut a = vec![vec![0.0f64; m]; m];
    for r in 0..n {
        for c in 0..n {
            let z = h[(r, c)];
            a[r][c] = z.re;
            a[r + n][c + n] = z.re;
            a[r][c + n] = -z.im;
            a[r + n][c] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|p| (0..m).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (row_p, row_q) = (a[p].clone(), a[q].clone());
                for (k, (&apk, &aqk)) in row_p.iter().zip(&row_q).enumerate() {
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    // Each eigenvalue appears twice; keep every other one.
    ev.into_iter().step_by(2).collect()
}

pub fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > 1e-14)
        .map(|&l| -l * l.log2())
        .sum()
}
