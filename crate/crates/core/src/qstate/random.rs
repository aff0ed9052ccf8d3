//! Random states built from a random spectrum and the eigenbasis of a random
//! Hermitian matrix.
//!
//! The spectrum comes from the multiplicative recurrence `q_1 = f(0,1)`,
//! `q_{k+1} = f(0,1) q_k`, normalised to `p_k = q_k / Σ q`, which is
//! non-increasing. The eigenbasis comes from
//! `R̃ = D + (Uᵀ + U) + i (L - Lᵀ)` where `D`, `U`, `L` are the diagonal,
//! strictly upper and strictly lower parts of a real matrix with entries in
//! `[-1, 1]`. The imaginary part is antisymmetric so `R̃` is Hermitian.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{DensityMatrix, Register};
use crate::linalg::{eig_hermitian, ComplexMatrix};
use crate::{Error, Result};

/// Redraws allowed when the probability draw has zero total mass.
pub const MAX_DRAW_RETRIES: usize = 16;

/// A source of uniform reals on the closed interval `[0, 1]`.
pub trait UnitSource {
    fn unit(&mut self) -> f64;

    /// Uniform on `[a, b]` via `a + (b - a) u`.
    fn uniform(&mut self, a: f64, b: f64) -> f64 {
        a + (b - a) * self.unit()
    }
}

/// Deterministic generator: ChaCha8 seeded with `seed_from_u64`.
///
/// `unit()` takes the top 53 bits of `next_u64` and divides by `2^53 - 1`,
/// so both endpoints of `[0, 1]` are reachable.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self { seed, inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Seed for sample `index` of an ensemble with master seed `master`: the
    /// first word of ChaCha8 stream `index` under key `seed_from_u64(master)`.
    pub fn child_seed(master: u64, index: u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(master);
        rng.set_stream(index);
        rng.next_u64()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

impl UnitSource for Rng {
    fn unit(&mut self) -> f64 {
        const DENOM: f64 = ((1u64 << 53) - 1) as f64;
        (self.inner.next_u64() >> 11) as f64 / DENOM
    }
}

/// `k` non-increasing probabilities from the multiplicative recurrence.
pub fn random_probabilities<R: UnitSource + ?Sized>(rng: &mut R, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::OutOfRange { name: "k", value: 0.0 });
    }
    for _ in 0..=MAX_DRAW_RETRIES {
        let mut q = Vec::with_capacity(k);
        let mut prev = rng.unit();
        q.push(prev);
        for _ in 1..k {
            prev *= rng.unit();
            q.push(prev);
        }
        let total: f64 = q.iter().sum();
        if total > 0.0 {
            return Ok(q.into_iter().map(|x| x / total).collect());
        }
    }
    Err(Error::DegenerateDraw { retries: MAX_DRAW_RETRIES })
}

/// Random Hermitian matrix from a real matrix with entries drawn row-major
/// from `[-1, 1]`.
pub fn random_hermitian<R: UnitSource + ?Sized>(rng: &mut R, dim: usize) -> Result<ComplexMatrix> {
    if dim < 2 {
        return Err(Error::OutOfRange { name: "dim", value: dim as f64 });
    }
    let real: Vec<f64> = (0..dim * dim).map(|_| rng.uniform(-1.0, 1.0)).collect();
    let r = |i: usize, j: usize| real[i * dim + j];
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| match i.cmp(&j) {
        core::cmp::Ordering::Equal => Complex64::new(r(i, i), 0.0),
        // U_ij on the real part, -L_ji on the imaginary part
        core::cmp::Ordering::Less => Complex64::new(r(i, j), -r(j, i)),
        // (Uᵀ)_ij = U_ji on the real part, L_ij on the imaginary part
        core::cmp::Ordering::Greater => Complex64::new(r(j, i), r(i, j)),
    }))
}

/// `ρ = Σ_k p_k |ψ_k><ψ_k|` with `p` from [`random_probabilities`] (drawn
/// first) and `|ψ_k>` the eigenvectors of [`random_hermitian`] in ascending
/// eigenvalue order.
pub fn random_state<R: UnitSource + ?Sized>(rng: &mut R, register: Register) -> Result<DensityMatrix> {
    let dim = register.total_dim();
    let p = random_probabilities(rng, dim)?;
    let h = random_hermitian(rng, dim)?;
    let eig = eig_hermitian(&h)?;
    let m = crate::linalg::eig_compose(&eig.eigenvectors, &p);
    Ok(DensityMatrix::new_unchecked(register, m))
}
