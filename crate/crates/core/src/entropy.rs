//! Shannon and von Neumann entropies and the correlation measures built on
//! them. Everything is in bits.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::eig_hermitian;
use crate::math::log2;
use crate::measure::{outcome_distribution, post_measurement_state, MeasurementBasis};
use crate::qstate::{partial_trace, DensityMatrix};
use crate::{Error, Result};

/// Probabilities (or eigenvalues) below this are treated as exact zeros.
pub const ZERO_CLAMP: f64 = 1e-12;
/// Most negative entry accepted in a probability vector.
pub const NEGATIVE_TOL: f64 = 1e-12;
/// Allowed deviation of a distribution's total mass from 1.
pub const MASS_TOL: f64 = 1e-9;

/// An entropy in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct EntropyValue(pub f64);

impl EntropyValue {
    #[inline]
    pub fn bits(self) -> f64 {
        self.0
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<EntropyValue> for f64 {
    fn from(v: EntropyValue) -> f64 {
        v.0
    }
}

/// `-Σ p_i log₂ p_i` on an already clamped, normalised vector.
fn entropy_of(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * log2(x)).sum::<f64>()
}

/// Zeros entries below [`ZERO_CLAMP`] and renormalises.
fn clamp_normalise(p: &[f64]) -> Vec<f64> {
    let clamped: Vec<f64> = p.iter().map(|&x| if x < ZERO_CLAMP { 0.0 } else { x }).collect();
    let total: f64 = clamped.iter().sum();
    clamped.into_iter().map(|x| x / total).collect()
}

/// Shannon entropy of a probability vector.
pub fn shannon(p: &[f64]) -> Result<EntropyValue> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution("empty".into()));
    }
    if let Some(&bad) = p.iter().find(|&&x| !x.is_finite() || x < -NEGATIVE_TOL) {
        return Err(Error::InvalidDistribution(format!("entry {bad} is negative or not finite")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > MASS_TOL {
        return Err(Error::InvalidDistribution(format!("total mass {total}")));
    }
    Ok(EntropyValue(entropy_of(&clamp_normalise(p))))
}

/// Entropy of a spectrum after the PSD clamp: eigenvalues below
/// [`ZERO_CLAMP`] become zero, then the rest is renormalised.
pub(crate) fn spectral_entropy(eigenvalues: &[f64]) -> f64 {
    entropy_of(&clamp_normalise(eigenvalues))
}

/// `S(ρ) = -Tr ρ log₂ ρ`.
pub fn von_neumann(rho: &DensityMatrix) -> Result<EntropyValue> {
    let eig = eig_hermitian(rho.matrix())?;
    Ok(EntropyValue(spectral_entropy(&eig.eigenvalues)))
}

/// Entropy of the reduced state on `subsystems`; zero for the empty set.
fn marginal_entropy(rho: &DensityMatrix, subsystems: &[usize]) -> Result<f64> {
    if subsystems.is_empty() {
        return Ok(0.0);
    }
    Ok(von_neumann(&partial_trace(rho, subsystems)?)?.0)
}

fn disjoint_union(a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    if let Some(s) = a.iter().find(|s| b.contains(s)) {
        return Err(Error::InvalidSubsystem(format!("subsystem {s} appears on both sides")));
    }
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    Ok(u)
}

/// `S(target|memory) = S(ρ^{target ∪ memory}) - S(ρ^{memory})`.
pub fn conditional(rho: &DensityMatrix, target: &[usize], memory: &[usize]) -> Result<EntropyValue> {
    let joint = disjoint_union(target, memory)?;
    if joint.is_empty() {
        return Err(Error::InvalidSubsystem("empty selection".into()));
    }
    Ok(EntropyValue(marginal_entropy(rho, &joint)? - marginal_entropy(rho, memory)?))
}

/// `𝓘(a:b) = S(ρ^a) + S(ρ^b) - S(ρ^{ab})`.
pub fn mutual_information(rho: &DensityMatrix, a: &[usize], b: &[usize]) -> Result<EntropyValue> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidSubsystem("mutual information needs two nonempty parties".into()));
    }
    let joint = disjoint_union(a, b)?;
    Ok(EntropyValue(marginal_entropy(rho, a)? + marginal_entropy(rho, b)? - marginal_entropy(rho, &joint)?))
}

/// Entropies of the classical-quantum state obtained by measuring subsystem
/// `0` of `ρ^{A,memory}` in `basis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasuredEntropies {
    /// `S(ρ^M)`, from the dephased marginal on the outcome register.
    pub outcome: f64,
    /// `S(ρ^B)`.
    pub memory: f64,
    /// `S(ρ^{MB})`.
    pub joint: f64,
}

impl MeasuredEntropies {
    pub fn compute(rho: &DensityMatrix, basis: &MeasurementBasis, memory: &[usize]) -> Result<Self> {
        if memory.is_empty() {
            return Err(Error::InvalidSubsystem("memory set is empty".into()));
        }
        if memory.contains(&0) {
            return Err(Error::InvalidSubsystem("memory must exclude the measured subsystem 0".into()));
        }
        let keep = disjoint_union(&[0], memory)?;
        let rho_ab = partial_trace(rho, &keep)?;
        let rho_mb = post_measurement_state(&rho_ab, basis, 0)?;
        let mem: Vec<usize> = (1..keep.len()).collect();
        Ok(Self {
            outcome: von_neumann(&partial_trace(&rho_mb, &[0])?)?.0,
            memory: von_neumann(&partial_trace(&rho_ab, &mem)?)?.0,
            joint: von_neumann(&rho_mb)?.0,
        })
    }

    /// `𝓘(M:B)`.
    pub fn holevo(&self) -> f64 {
        self.outcome + self.memory - self.joint
    }

    /// `S(M|B)`.
    pub fn conditional(&self) -> f64 {
        self.joint - self.memory
    }
}

/// Holevo quantity `𝓘(M:B) = S(ρ^M) + S(ρ^B) - S(ρ^{MB})` of measuring
/// subsystem `0` in `basis`.
pub fn holevo(rho: &DensityMatrix, basis: &MeasurementBasis, memory: &[usize]) -> Result<EntropyValue> {
    Ok(EntropyValue(MeasuredEntropies::compute(rho, basis, memory)?.holevo()))
}

/// `S(M|B) = S(ρ^{MB}) - S(ρ^B)` for the post-measurement state.
pub fn measured_conditional(rho: &DensityMatrix, basis: &MeasurementBasis, memory: &[usize]) -> Result<EntropyValue> {
    Ok(EntropyValue(MeasuredEntropies::compute(rho, basis, memory)?.conditional()))
}

/// `H(M)` from the outcome distribution of measuring subsystem `0`.
pub fn outcome_entropy(rho: &DensityMatrix, basis: &MeasurementBasis) -> Result<EntropyValue> {
    shannon(&outcome_distribution(rho, basis, 0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::qstate::{bell, family_mixed_two_qubit, random_state, Register, Rng};
    use core::f64::consts::FRAC_PI_4;

    const TOL: f64 = 1e-9;

    fn close(a: EntropyValue, b: f64, tol: f64) {
        assert!((a.0 - b).abs() <= tol, "{} vs {b}", a.0);
    }

    fn z() -> MeasurementBasis {
        MeasurementBasis::pauli_z()
    }

    #[test]
    fn shannon_examples() {
        close(shannon(&[0.5, 0.5]).unwrap(), 1.0, 1e-15);
        close(shannon(&[1.0, 0.0]).unwrap(), 0.0, 0.0);
        // log₂7 - 10/7
        close(shannon(&[4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0]).unwrap(), 1.378_783_493_486_176, 1e-12);
        close(shannon(&[4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0]).unwrap(), 1.3788, 1e-3);
        close(shannon(&[1.0 + 1e-13, -1e-13]).unwrap(), 0.0, 0.0);
    }

    #[test]
    fn shannon_rejects_bad_input() {
        assert!(shannon(&[]).is_err());
        assert!(shannon(&[0.6, 0.6]).is_err());
        assert!(shannon(&[1.1, -0.1]).is_err());
        assert!(shannon(&[f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        close(von_neumann(&DensityMatrix::maximally_mixed(Register::qubits(1))).unwrap(), 1.0, 1e-15);
        close(von_neumann(&bell()).unwrap(), 0.0, TOL);
        // shannon(5/8, 1/8, 1/8, 1/8) = 9/8 + (5/8) log₂(8/5)
        let want = 1.125 + 0.625 * (1.6f64).log2();
        let rho = family_mixed_two_qubit(0.5, FRAC_PI_4).unwrap();
        close(von_neumann(&rho).unwrap(), want, 1e-12);
        close(von_neumann(&rho).unwrap(), 1.5488, 1e-3);
    }

    #[test]
    fn conditional_examples() {
        close(conditional(&bell(), &[0], &[1]).unwrap(), -1.0, TOL);
        let mixed = DensityMatrix::maximally_mixed(Register::qubits(2));
        close(conditional(&mixed, &[0], &[1]).unwrap(), 1.0, TOL);
        let rho = family_mixed_two_qubit(0.5, FRAC_PI_4).unwrap();
        let want = 1.125 + 0.625 * (1.6f64).log2() - 1.0;
        close(conditional(&rho, &[0], &[1]).unwrap(), want, 1e-12);
        close(conditional(&rho, &[0], &[1]).unwrap(), 0.5488, 1e-3);
        assert!(conditional(&rho, &[0], &[0]).is_err());
        // empty memory gives the marginal entropy
        close(conditional(&rho, &[0], &[]).unwrap(), 1.0, TOL);
    }

    #[test]
    fn mutual_information_examples() {
        let a = DensityMatrix::new(Register::qubits(1), ComplexMatrix::from_diagonal(&[0.3, 0.7])).unwrap();
        let product = a.tensor(&DensityMatrix::maximally_mixed(Register::qubits(1)));
        close(mutual_information(&product, &[0], &[1]).unwrap(), 0.0, TOL);
        close(mutual_information(&bell(), &[0], &[1]).unwrap(), 2.0, TOL);
        close(mutual_information(&DensityMatrix::maximally_mixed(Register::qubits(2)), &[0], &[1]).unwrap(), 0.0, TOL);
        assert!(mutual_information(&bell(), &[0], &[]).is_err());
    }

    #[test]
    fn holevo_examples() {
        let a = DensityMatrix::new(Register::qubits(1), ComplexMatrix::from_diagonal(&[0.3, 0.7])).unwrap();
        let product = a.tensor(&DensityMatrix::maximally_mixed(Register::qubits(1)));
        for basis in [MeasurementBasis::pauli_x(), MeasurementBasis::pauli_y(), z()] {
            close(holevo(&product, &basis, &[1]).unwrap(), 0.0, TOL);
        }
        close(holevo(&bell(), &z(), &[1]).unwrap(), 1.0, TOL);
        assert!(holevo(&bell(), &z(), &[0]).is_err());
        assert!(holevo(&bell(), &z(), &[]).is_err());
    }

    #[test]
    fn measured_conditional_examples() {
        close(measured_conditional(&bell(), &z(), &[1]).unwrap(), 0.0, TOL);
        let mixed = DensityMatrix::maximally_mixed(Register::qubits(2));
        for basis in [MeasurementBasis::pauli_x(), MeasurementBasis::pauli_y(), z()] {
            close(measured_conditional(&mixed, &basis, &[1]).unwrap(), 1.0, TOL);
        }
        let zero = DensityMatrix::basis_state(Register::qubits(2), 0).unwrap();
        close(measured_conditional(&zero, &z(), &[1]).unwrap(), 0.0, TOL);
    }

    #[test]
    fn identities_on_random_states() {
        for seed in 0..50 {
            let rho = random_state(&mut Rng::new(seed), Register::qubits(3)).unwrap();
            let ia_bc = mutual_information(&rho, &[0], &[1, 2]).unwrap().0;
            for basis in [MeasurementBasis::pauli_x(), MeasurementBasis::pauli_y(), z()] {
                for memory in [&[1][..], &[2], &[1, 2]] {
                    let h = outcome_entropy(&rho, &basis).unwrap().0;
                    let hol = holevo(&rho, &basis, memory).unwrap().0;
                    let cond = measured_conditional(&rho, &basis, memory).unwrap().0;
                    assert!((cond - (h - hol)).abs() < TOL);
                    assert!(hol >= -TOL);
                    assert!((-TOL..=1.0 + TOL).contains(&cond));
                    let ia = mutual_information(&rho, &[0], memory).unwrap().0;
                    assert!(hol <= ia + TOL);
                    assert!(ia <= ia_bc + TOL);
                }
            }
        }
    }

    #[test]
    fn concavity_and_range() {
        for seed in 0..30 {
            let mut rng = Rng::new(seed);
            let rho = random_state(&mut rng, Register::qubits(2)).unwrap();
            let sigma = random_state(&mut rng, Register::qubits(2)).unwrap();
            let s_rho = von_neumann(&rho).unwrap().0;
            let s_sigma = von_neumann(&sigma).unwrap().0;
            assert!((-TOL..=2.0 + TOL).contains(&s_rho));
            for lambda in [0.1, 0.5, 0.9] {
                let mix = rho.mix(lambda, &sigma).unwrap();
                let s = von_neumann(&mix).unwrap().0;
                assert!(s >= lambda * s_rho + (1.0 - lambda) * s_sigma - TOL);
            }
        }
    }
}
