//! Rank-one projective measurements on the measured party.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::ComplexMatrix;
use crate::math::sqrt;
use crate::qstate::{partial_trace, DensityMatrix};
use crate::{Error, Result};

/// Orthonormality tolerance for basis vectors.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Largest measurement count for which [`BOrder::Minimized`] enumerates
/// every ordering.
pub const MAX_MINIMIZED_ORDER: usize = 5;

/// Orthonormal eigenbasis of an observable, stored as the columns of a
/// unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    label: String,
    vectors: ComplexMatrix,
}

impl MeasurementBasis {
    /// `vectors` holds one basis vector per column.
    pub fn new(label: impl Into<String>, vectors: ComplexMatrix) -> Result<Self> {
        vectors.require_square()?;
        let d = vectors.rows();
        if d < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: d });
        }
        let deviation = (&vectors.adjoint() * &vectors).max_abs_diff(&ComplexMatrix::identity(d));
        if deviation > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { label: label.into(), vectors })
    }

    fn builtin(label: &str, columns: [[Complex64; 2]; 2]) -> Self {
        let vectors = ComplexMatrix::from_fn(2, 2, |i, j| columns[j][i]);
        Self { label: label.to_owned(), vectors }
    }

    /// Eigenbasis of σ_x: `|+>`, `|->`.
    pub fn pauli_x() -> Self {
        let s = Complex64::new(sqrt(0.5), 0.0);
        Self::builtin("pauli-x", [[s, s], [s, -s]])
    }

    /// Eigenbasis of σ_y: `(|0> + i|1>)/√2`, `(|0> - i|1>)/√2`.
    pub fn pauli_y() -> Self {
        let s = sqrt(0.5);
        let r = Complex64::new(s, 0.0);
        let i = Complex64::new(0.0, s);
        Self::builtin("pauli-y", [[r, i], [r, -i]])
    }

    /// Eigenbasis of σ_z: `|0>`, `|1>`.
    pub fn pauli_z() -> Self {
        let mut b = Self::computational(2);
        b.label = "pauli-z".to_owned();
        b
    }

    pub fn computational(d: usize) -> Self {
        Self { label: "computational".to_owned(), vectors: ComplexMatrix::identity(d) }
    }

    /// Looks up `pauli-x`, `pauli-y`, `pauli-z` or `computational` (qubit).
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "pauli-x" => Some(Self::pauli_x()),
            "pauli-y" => Some(Self::pauli_y()),
            "pauli-z" => Some(Self::pauli_z()),
            "computational" => Some(Self::computational(2)),
            _ => None,
        }
    }

    /// Basis obtained by applying `unitary` to every vector of `self`.
    pub fn rotated(&self, label: impl Into<String>, unitary: &ComplexMatrix) -> Result<Self> {
        if unitary.rows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: unitary.rows() });
        }
        Self::new(label, unitary * &self.vectors)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.vectors.rows()
    }

    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// `|<ψ_k|φ_l>|²` for every pair, indexed `[k][l]`.
    pub fn overlaps(&self, other: &Self) -> Result<Vec<Vec<f64>>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let g = &self.vectors.adjoint() * &other.vectors;
        Ok((0..self.dim()).map(|k| (0..self.dim()).map(|l| g[(k, l)].norm_sqr()).collect()).collect())
    }
}

/// Ordered list of `m ≥ 2` bases of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    bases: Vec<MeasurementBasis>,
}

impl MeasurementSet {
    pub fn new(bases: Vec<MeasurementBasis>) -> Result<Self> {
        if bases.len() < 2 {
            return Err(Error::WrongArity { bound: "measurement set", expected: 2, found: bases.len() });
        }
        let d = bases[0].dim();
        if let Some(b) = bases.iter().find(|b| b.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: b.dim() });
        }
        Ok(Self { bases })
    }

    /// σ_x, σ_y, σ_z in that order.
    pub fn pauli_xyz() -> Self {
        Self { bases: vec![MeasurementBasis::pauli_x(), MeasurementBasis::pauli_y(), MeasurementBasis::pauli_z()] }
    }

    pub fn bases(&self) -> &[MeasurementBasis] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.bases[0].dim()
    }

    /// The same bases reordered by `order` (a permutation of `0..m`).
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() || order.iter().any(|&i| i >= self.len() || core::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidPartition(format!("{order:?} is not a permutation of 0..{}", self.len())));
        }
        Ok(Self { bases: order.iter().map(|&i| self.bases[i].clone()).collect() })
    }

    /// `c_ij` for every ordered pair, indexed `[i][j]`.
    pub fn overlap_matrix(&self) -> Vec<Vec<f64>> {
        let m = self.len();
        let mut c = vec![vec![1.0; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let v = max_overlap(&self.bases[i], &self.bases[j]);
                c[i][j] = v;
                c[j][i] = v;
            }
        }
        c
    }
}

fn max_overlap(a: &MeasurementBasis, b: &MeasurementBasis) -> f64 {
    let g = &a.vectors.adjoint() * &b.vectors;
    g.as_slice().iter().map(|z| z.norm_sqr()).fold(0.0, f64::max)
}

/// `c = max_{k,l} |<ψ_k|φ_l>|²`.
pub fn overlap_c(b1: &MeasurementBasis, b2: &MeasurementBasis) -> Result<f64> {
    if b1.dim() != b2.dim() {
        return Err(Error::DimensionMismatch { expected: b1.dim(), found: b2.dim() });
    }
    Ok(max_overlap(b1, b2))
}

/// Which ordering of the measurement list the channel constant uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BOrder {
    /// The order of the [`MeasurementSet`].
    #[default]
    Given,
    /// The minimum over all `m!` orderings (`m ≤ 5`).
    Minimized,
}

/// Chained overlap constant
/// `b = max_{k_m} Σ_{k_2..k_{m-1}} max_{k_1} |<ψ¹_{k_1}|ψ²_{k_2}>|² Π_{i=2}^{m-1} |<ψ^i_{k_i}|ψ^{i+1}_{k_{i+1}}>|²`
/// for the given order. For `m = 2` this is `c_12`.
pub fn channel_constant_b(ms: &MeasurementSet) -> Result<f64> {
    let m = ms.len();
    let bases = ms.bases();
    // weights[k] after step i holds the partial sum ending at outcome k of measurement i.
    let first = bases[0].overlaps(&bases[1])?;
    let d = ms.dim();
    let mut weights: Vec<f64> = (0..d).map(|k2| (0..d).map(|k1| first[k1][k2]).fold(0.0, f64::max)).collect();
    for i in 1..m - 1 {
        let o = bases[i].overlaps(&bases[i + 1])?;
        weights = (0..d).map(|next| (0..d).map(|k| weights[k] * o[k][next]).sum()).collect();
    }
    Ok(weights.into_iter().fold(0.0, f64::max))
}

/// The channel constant for the requested ordering, with the ordering used.
pub fn channel_constant_b_ordered(ms: &MeasurementSet, order: BOrder) -> Result<(f64, Vec<usize>)> {
    let identity: Vec<usize> = (0..ms.len()).collect();
    match order {
        BOrder::Given => Ok((channel_constant_b(ms)?, identity)),
        BOrder::Minimized => {
            if ms.len() > MAX_MINIMIZED_ORDER {
                return Err(Error::OutOfRange { name: "measurements for b minimisation", value: ms.len() as f64 });
            }
            let mut best = (channel_constant_b(ms)?, identity.clone());
            for perm in permutations(ms.len()) {
                let b = channel_constant_b(&ms.permuted(&perm)?)?;
                if b < best.0 - MINIMIZE_TOL {
                    best = (b, perm);
                }
            }
            Ok(best)
        }
    }
}

/// Improvement a reordering must bring before it replaces the current best.
const MINIMIZE_TOL: f64 = 1e-12;

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

fn lifted_projectors(rho: &DensityMatrix, basis: &MeasurementBasis, measured: usize) -> Result<Vec<ComplexMatrix>> {
    let dims = rho.register().dims();
    if measured >= dims.len() {
        return Err(Error::InvalidSubsystem(format!(
            "measured index {measured} out of range for a {}-partite register",
            dims.len()
        )));
    }
    if dims[measured] != basis.dim() {
        return Err(Error::DimensionMismatch { expected: dims[measured], found: basis.dim() });
    }
    let left: usize = dims[..measured].iter().product();
    let right: usize = dims[measured + 1..].iter().product();
    let id_left = ComplexMatrix::identity(left);
    let id_right = ComplexMatrix::identity(right);
    Ok((0..basis.dim())
        .map(|k| id_left.kron(&ComplexMatrix::projector(&basis.vector(k))).kron(&id_right))
        .collect())
}

/// `Σ_k (P_k ⊗ 𝕀) ρ (P_k ⊗ 𝕀)` with `P_k` acting on subsystem `measured`.
pub fn post_measurement_state(rho: &DensityMatrix, basis: &MeasurementBasis, measured: usize) -> Result<DensityMatrix> {
    let projectors = lifted_projectors(rho, basis, measured)?;
    let d = rho.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for p in &projectors {
        out = &out + &(&(p * rho.matrix()) * p);
    }
    Ok(DensityMatrix::new_unchecked(rho.register().clone(), out))
}

/// `p_k = <ψ_k| ρ_measured |ψ_k>`.
pub fn outcome_distribution(rho: &DensityMatrix, basis: &MeasurementBasis, measured: usize) -> Result<Vec<f64>> {
    let dims = rho.register().dims();
    if measured >= dims.len() {
        return Err(Error::InvalidSubsystem(format!("measured index {measured} out of range")));
    }
    if dims[measured] != basis.dim() {
        return Err(Error::DimensionMismatch { expected: dims[measured], found: basis.dim() });
    }
    let reduced = partial_trace(rho, &[measured])?;
    let m = reduced.matrix();
    Ok((0..basis.dim())
        .map(|k| {
            let v = basis.vector(k);
            let mv = m.apply(&v);
            let p: Complex64 = v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum();
            p.re.max(0.0)
        })
        .collect())
}
