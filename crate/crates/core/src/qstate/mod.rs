//! Multipartite density matrices.
//!
//! Tensor factors compose left to right in register order, so basis index
//! `i = i_0 d_1 d_2 ... + i_1 d_2 ... + ...` with subsystem `0` the most
//! significant digit.

mod random;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{eig_hermitian, ComplexMatrix, HERMITIAN_TOL};
use crate::math::{cos, sin, sqrt};
use crate::{Error, Result};

pub use random::{random_hermitian, random_probabilities, random_state, Rng, UnitSource, MAX_DRAW_RETRIES};

/// Tolerance for the unit-trace check.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;

/// Subsystem dimensions. Position 0 is the measured party.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Register {
    dims: Vec<usize>,
}

impl Register {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidRegister("no subsystems".into()));
        }
        if let Some((i, &d)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::InvalidRegister(format!("subsystem {i} has dimension {d} (< 2)")));
        }
        Ok(Self { dims })
    }

    /// `count` qubits.
    pub fn qubits(count: usize) -> Self {
        Self { dims: vec![2; count.max(1)] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of subsystems (measured party plus memories).
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Number of memory subsystems.
    pub fn memories(&self) -> usize {
        self.dims.len() - 1
    }

    fn check_selection(&self, subsystems: &[usize]) -> Result<Vec<usize>> {
        let mut sel = subsystems.to_vec();
        sel.sort_unstable();
        if let Some(&bad) = sel.iter().find(|&&s| s >= self.dims.len()) {
            return Err(Error::InvalidSubsystem(format!(
                "index {bad} out of range for a {}-partite register",
                self.dims.len()
            )));
        }
        if sel.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubsystem(format!("duplicate index in {subsystems:?}")));
        }
        Ok(sel)
    }

    /// Row-major strides of each subsystem digit.
    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Flat offsets of every multi-index over `subsystems` (in the given order).
    fn offsets(&self, subsystems: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut offsets = vec![0usize];
        for &s in subsystems {
            let mut next = Vec::with_capacity(offsets.len() * self.dims[s]);
            for &o in &offsets {
                for digit in 0..self.dims[s] {
                    next.push(o + digit * strides[s]);
                }
            }
            offsets = next;
        }
        offsets
    }
}

/// A validated state on a [`Register`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    register: Register,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(register: Register, matrix: ComplexMatrix) -> Result<Self> {
        let dim = register.total_dim();
        matrix.require_square()?;
        if matrix.rows() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: matrix.rows() });
        }
        let deviation = matrix.hermitian_deviation()?;
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace()?.re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace { trace });
        }
        let min_eigenvalue = eig_hermitian(&matrix)?.eigenvalues[0];
        if min_eigenvalue < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { register, matrix })
    }

    /// Skips validation. Callers guarantee the invariants by construction.
    pub(crate) fn new_unchecked(register: Register, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), register.total_dim());
        Self { register, matrix }
    }

    /// `|ψ><ψ|` for a state vector, normalised first.
    pub fn from_pure(register: Register, amplitudes: &[Complex64]) -> Result<Self> {
        let dim = register.total_dim();
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: amplitudes.len() });
        }
        let norm = sqrt(amplitudes.iter().map(Complex64::norm_sqr).sum());
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::OutOfRange { name: "state norm", value: norm });
        }
        let psi: Vec<Complex64> = amplitudes.iter().map(|a| a / norm).collect();
        Ok(Self::new_unchecked(register, ComplexMatrix::projector(&psi)))
    }

    /// `𝕀/D`.
    pub fn maximally_mixed(register: Register) -> Self {
        let d = register.total_dim();
        let m = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
        Self::new_unchecked(register, m)
    }

    /// `|k><k|` in the computational basis.
    pub fn basis_state(register: Register, index: usize) -> Result<Self> {
        let dim = register.total_dim();
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index });
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(index, index)] = Complex64::new(1.0, 0.0);
        Ok(Self::new_unchecked(register, m))
    }

    /// `self ⊗ other` with the registers concatenated.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.register.dims.clone();
        dims.extend_from_slice(&other.register.dims);
        Self::new_unchecked(Register { dims }, self.matrix.kron(&other.matrix))
    }

    /// `λ self + (1 - λ) other`.
    pub fn mix(&self, lambda: f64, other: &Self) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange { name: "lambda", value: lambda });
        }
        if self.register != other.register {
            return Err(Error::DimensionMismatch {
                expected: self.register.total_dim(),
                found: other.register.total_dim(),
            });
        }
        let m = &self.matrix.scale_real(lambda) + &other.matrix.scale_real(1.0 - lambda);
        Ok(Self::new_unchecked(self.register.clone(), m))
    }

    /// Conjugation by a unitary acting on the full register.
    pub fn conjugate(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let d = self.dim();
        if unitary.rows() != d || unitary.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: unitary.rows() });
        }
        let m = &(unitary * &self.matrix) * &unitary.adjoint();
        Ok(Self::new_unchecked(self.register.clone(), m))
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self.matrix[(i, j)] * self.matrix[(j, i)]).re;
            }
        }
        s
    }

    /// Eigenvalues, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(eig_hermitian(&self.matrix)?.eigenvalues)
    }

    /// Reduced state on `keep`, ordered as in the register.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        partial_trace(self, keep)
    }
}

/// Traces out every subsystem not in `keep`.
///
/// The kept subsystems retain their relative register order; `keep` itself is
/// treated as a set.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::InvalidSubsystem("keep set is empty".into()));
    }
    let reg = &rho.register;
    let kept = reg.check_selection(keep)?;
    if kept.len() == reg.len() {
        return Ok(rho.clone());
    }
    let traced: Vec<usize> = (0..reg.len()).filter(|s| !kept.contains(s)).collect();
    let keep_off = reg.offsets(&kept);
    let trace_off = reg.offsets(&traced);
    let k = keep_off.len();
    let m = &rho.matrix;
    let out = ComplexMatrix::from_fn(k, k, |i, j| {
        let (ri, rj) = (keep_off[i], keep_off[j]);
        trace_off.iter().map(|&t| m[(ri + t, rj + t)]).sum()
    });
    let dims = kept.iter().map(|&s| reg.dims[s]).collect();
    Ok(DensityMatrix::new_unchecked(Register { dims }, out))
}

/// `p |σ><σ| + (1 - p) 𝕀/4` with `|σ> = cos α |00> + sin α |11>`.
pub fn family_mixed_two_qubit(p: f64, alpha: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange { name: "p", value: p });
    }
    if !alpha.is_finite() {
        return Err(Error::OutOfRange { name: "alpha", value: alpha });
    }
    let zero = Complex64::new(0.0, 0.0);
    let sigma = [Complex64::new(cos(alpha), 0.0), zero, zero, Complex64::new(sin(alpha), 0.0)];
    let pure = ComplexMatrix::projector(&sigma).scale_real(p);
    let noise = ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    Ok(DensityMatrix::new_unchecked(Register::qubits(2), &pure + &noise))
}

/// `|W> = sin α cos β |001> + sin α sin β |010> + cos α |100>`.
pub fn generalized_w(alpha: f64, beta: f64) -> Result<DensityMatrix> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::OutOfRange { name: "angle", value: if alpha.is_finite() { beta } else { alpha } });
    }
    let mut psi = [Complex64::new(0.0, 0.0); 8];
    psi[0b001] = Complex64::new(sin(alpha) * cos(beta), 0.0);
    psi[0b010] = Complex64::new(sin(alpha) * sin(beta), 0.0);
    psi[0b100] = Complex64::new(cos(alpha), 0.0);
    Ok(DensityMatrix::new_unchecked(Register::qubits(3), ComplexMatrix::projector(&psi)))
}

/// `(|0...0> + |1...1>)/√2` on `count` qubits. `count = 2` is `|Φ⁺>`.
pub fn ghz(count: usize) -> DensityMatrix {
    let reg = Register::qubits(count.max(2));
    let dim = reg.total_dim();
    let s = sqrt(0.5);
    let mut psi = vec![Complex64::new(0.0, 0.0); dim];
    psi[0] = Complex64::new(s, 0.0);
    psi[dim - 1] = Complex64::new(s, 0.0);
    DensityMatrix::new_unchecked(reg, ComplexMatrix::projector(&psi))
}

/// The Bell state `|Φ⁺>`.
pub fn bell() -> DensityMatrix {
    ghz(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn assert_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
        let d = a.max_abs_diff(b);
        assert!(d <= tol, "max diff {d:e} > {tol:e}");
    }

    #[test]
    fn register_rejects_small_dims() {
        assert!(Register::new(vec![2, 1]).is_err());
        assert!(Register::new(vec![]).is_err());
        assert_eq!(Register::new(vec![2, 3, 2]).unwrap().total_dim(), 12);
    }

    #[test]
    fn validator() {
        let reg = Register::qubits(1);
        assert!(DensityMatrix::new(reg.clone(), ComplexMatrix::identity(2)).is_err());
        assert!(matches!(
            DensityMatrix::new(reg.clone(), ComplexMatrix::from_diagonal(&[1.5, -0.5])),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(reg.clone(), ComplexMatrix::identity(4)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(DensityMatrix::new(reg, ComplexMatrix::identity(2).scale_real(0.5)).is_ok());
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let r = partial_trace(&bell(), &[1]).unwrap();
        assert_close(r.matrix(), &ComplexMatrix::identity(2).scale_real(0.5), 1e-15);
        assert_eq!(r.register().dims(), [2]);
    }

    #[test]
    fn product_marginals() {
        let a = DensityMatrix::new(
            Register::qubits(1),
            ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) => Complex64::new(0.7, 0.0),
                (1, 1) => Complex64::new(0.3, 0.0),
                (0, 1) => Complex64::new(0.1, 0.2),
                _ => Complex64::new(0.1, -0.2),
            }),
        )
        .unwrap();
        let b = DensityMatrix::maximally_mixed(Register::new(vec![3]).unwrap());
        let ab = a.tensor(&b);
        assert_close(partial_trace(&ab, &[0]).unwrap().matrix(), a.matrix(), 1e-15);
        assert_close(partial_trace(&ab, &[1]).unwrap().matrix(), b.matrix(), 1e-15);
        let scalar = partial_trace(&partial_trace(&ab, &[0]).unwrap(), &[0]).unwrap();
        assert!((scalar.matrix().trace().unwrap().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_register_order() {
        // |0><0| ⊗ |1><1| ⊗ 𝕀/2, keep {2, 0} -> state on (A, C)
        let reg = Register::qubits(3);
        let a0b1 = DensityMatrix::basis_state(Register::qubits(2), 0b01).unwrap();
        let rho = a0b1.tensor(&DensityMatrix::maximally_mixed(Register::qubits(1)));
        assert_eq!(rho.register(), &reg);
        let ac = partial_trace(&rho, &[2, 0]).unwrap();
        assert_close(ac.matrix(), &ComplexMatrix::from_diagonal(&[0.5, 0.5, 0.0, 0.0]), 1e-15);
        let bc = partial_trace(&rho, &[1, 2]).unwrap();
        assert_close(bc.matrix(), &ComplexMatrix::from_diagonal(&[0.0, 0.0, 0.5, 0.5]), 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        assert!(matches!(partial_trace(&bell(), &[]), Err(Error::InvalidSubsystem(_))));
        assert!(matches!(partial_trace(&bell(), &[2]), Err(Error::InvalidSubsystem(_))));
        assert!(matches!(partial_trace(&bell(), &[1, 1]), Err(Error::InvalidSubsystem(_))));
    }

    #[test]
    fn mixed_family() {
        let rho = family_mixed_two_qubit(0.0, 1.234).unwrap();
        assert_close(rho.matrix(), &ComplexMatrix::identity(4).scale_real(0.25), 1e-15);
        let rho = family_mixed_two_qubit(1.0, FRAC_PI_4).unwrap();
        assert_close(rho.matrix(), bell().matrix(), 1e-15);
        let rho = family_mixed_two_qubit(0.5, FRAC_PI_4).unwrap();
        let spec = rho.spectrum().unwrap();
        for (got, want) in spec.iter().zip([0.125, 0.125, 0.125, 0.625]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(DensityMatrix::new(rho.register().clone(), rho.matrix().clone()).is_ok());
        assert!(matches!(family_mixed_two_qubit(1.5, 0.0), Err(Error::OutOfRange { name: "p", .. })));
        assert!(family_mixed_two_qubit(-0.1, 0.0).is_err());
    }

    #[test]
    fn w_state() {
        let rho = generalized_w(FRAC_PI_2, 0.0).unwrap();
        assert_close(rho.matrix(), DensityMatrix::basis_state(Register::qubits(3), 0b001).unwrap().matrix(), 1e-15);

        let rho = generalized_w(2.0 * PI / 3.0, PI / 5.0).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!((rho.matrix().trace().unwrap().re - 1.0).abs() < 1e-12);
        // |<100|ψ>|² = cos²(2π/3) = 1/4 and the phase is carried by <100|ψ><ψ|001>
        assert!((rho.matrix()[(0b100, 0b100)].re - 0.25).abs() < 1e-12);
        let s = sin(2.0 * PI / 3.0) * cos(PI / 5.0);
        assert!((rho.matrix()[(0b100, 0b001)].re - (-0.5 * s)).abs() < 1e-12);
        assert_eq!(rho.spectrum().unwrap().iter().filter(|&&x| x > 1e-9).count(), 1);
    }

    #[test]
    fn mix_and_conjugate() {
        let rho = bell();
        let sigma = DensityMatrix::maximally_mixed(Register::qubits(2));
        assert!(rho.mix(1.2, &sigma).is_err());
        let m = rho.mix(0.25, &sigma).unwrap();
        assert!((m.matrix()[(0, 3)].re - 0.125).abs() < 1e-15);
        let x = crate::linalg::pauli::x();
        let xx = x.kron(&x);
        assert_close(rho.conjugate(&xx).unwrap().matrix(), rho.matrix(), 1e-15);
    }
}
