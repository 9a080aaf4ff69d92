//! The U(2) coin family `Û_c(θ, ξ, ζ)` acting on the `(|R⟩, |L⟩)` space.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{QwalkError, Result};

pub const UNITARITY_TOLERANCE: f64 = 1e-12;

/// Angles of the coin operator, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParams {
    pub theta: f64,
    pub xi: f64,
    pub zeta: f64,
}

impl CoinParams {
    pub fn new(theta: f64, xi: f64, zeta: f64) -> Self {
        Self { theta, xi, zeta }
    }

    /// Member `k` of the discrete family: all three angles equal `2πk/d`.
    pub fn from_index(k: u64, d: u64) -> Result<Self> {
        if d == 0 || k == 0 || k > d {
            return Err(QwalkError::CoinIndex { k, d });
        }
        let angle = std::f64::consts::TAU * k as f64 / d as f64;
        Ok(Self::new(angle, angle, angle))
    }
}

/// A 2×2 complex matrix, row-major, in the ordered basis `(|R⟩, |L⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(pub [[Complex64; 2]; 2]);

impl Unitary2 {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Unitary2([[one, zero], [zero, one]])
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Unitary2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    #[inline]
    pub fn apply(&self, r: Complex64, l: Complex64) -> (Complex64, Complex64) {
        let m = &self.0;
        (m[0][0] * r + m[0][1] * l, m[1][0] * r + m[1][1] * l)
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint() * *self;
        p.max_abs_diff(&Unitary2::identity())
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_error() <= UNITARITY_TOLERANCE
    }

    pub fn max_abs_diff(&self, other: &Unitary2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Unitary2(out)
    }
}

/// `[[e^{iξ}cosθ, e^{iζ}sinθ], [−e^{−iζ}sinθ, e^{−iξ}cosθ]]`
pub fn build_coin(params: CoinParams) -> Unitary2 {
    let (s, c) = params.theta.sin_cos();
    let e_xi = Complex64::from_polar(1.0, params.xi);
    let e_zeta = Complex64::from_polar(1.0, params.zeta);
    Unitary2([
        [e_xi * c, e_zeta * s],
        [-e_zeta.conj() * s, e_xi.conj() * c],
    ])
}

/// Coin `k` of the `d`-member family.
pub fn family_coin(k: u64, d: u64) -> Result<Unitary2> {
    Ok(build_coin(CoinParams::from_index(k, d)?))
}
