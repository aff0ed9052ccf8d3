//! Lower bounds on the total conditional uncertainty
//! `Σ_t Σ_{M_i ∈ S_t} S(M_i|B_t)`.
//!
//! Notation used below, for `m` measurements and `n` memories:
//!
//! * `c_ij` is the maximal squared overlap between the eigenbases of `M_i`
//!   and `M_j`, and `L = -(1/(m-1)) log₂ Π_{i<j} c_ij`.
//! * `m_t = |S_t|` and `k_t = m_t (m_t - 1) / (2 (m - 1))`.
//! * `U_SCB = L + Σ_t k_t S(A|B_t)`.
//! * `δ_mn  = (m/2 - Σ_t k_t) S(A) + Σ_t k_t 𝓘(A:B_t) - Σ_i 𝓘(M_i:B_{t(i)})`,
//!   and the first multi-memory bound is `U_SCB + max{0, δ_mn}`.
//! * `δ'_mn = (1/(m-1)) log₂(Π_{i<j} c_ij / b^{m-1}) + (m - 1 - Σ_t k_t) S(A)
//!   + Σ_t k_t 𝓘(A:B_t) - Σ_i 𝓘(M_i:B_{t(i)})` with `b` the chained channel
//!   constant, and the second bound is `U_SCB + max{0, δ'_mn}`.
//! * For any memoryless relation `Σ_i H(M_i) ≥ U` the uniform construction
//!   gives `U_SCB + max{0, U - U_SCB - Σ_i 𝓘(M_i:B_{t(i)})}`.
//!
//! Each bound has a standalone function taking `(ρ, measurements, partition)`.
//! [`BoundReport`] evaluates all applicable ones from a single pass over the
//! entropic quantities.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::entropy::{
    conditional, mutual_information, outcome_entropy, von_neumann, EntropyValue, MeasuredEntropies,
};
use crate::math::{log2, sqrt};
use crate::measure::{channel_constant_b_ordered, overlap_c, BOrder, MeasurementSet};
use crate::qstate::{partial_trace, DensityMatrix, Register};
use crate::{Error, Result};

/// Absolute slack for `lhs ≥ bound` and for "tighter than" comparisons.
pub const VALIDITY_TOL: f64 = 1e-9;

/// Assignment of measurements to memories.
///
/// Measurement indices are 0-based; memory indices are 1-based and equal the
/// register position of the memory subsystem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    memories: usize,
}

impl Partition {
    /// `assignment[i]` is the memory guessing measurement `i`. Every memory
    /// `1..=n` must receive at least one measurement.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        if assignment.is_empty() {
            return Err(Error::InvalidPartition("no measurements".into()));
        }
        if assignment.contains(&0) {
            return Err(Error::InvalidPartition("memory indices start at 1 (0 is the measured party)".into()));
        }
        let n = *assignment.iter().max().expect("nonempty");
        if let Some(t) = (1..=n).find(|t| !assignment.contains(t)) {
            return Err(Error::InvalidPartition(format!("memory {t} has no measurement (S_{t} is empty)")));
        }
        Ok(Self { assignment, memories: n })
    }

    /// All `m` measurements guessed by memory 1.
    pub fn single_memory(m: usize) -> Self {
        Self { assignment: vec![1; m.max(1)], memories: 1 }
    }

    /// Measurement `i` guessed by memory `i + 1`.
    pub fn one_per_memory(m: usize) -> Self {
        Self { assignment: (1..=m.max(1)).collect(), memories: m.max(1) }
    }

    /// Parses `"1:1;2,3:2"`: groups of 1-based measurement indices followed by
    /// the memory index, separated by semicolons. Every measurement `1..=m`
    /// must appear exactly once.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for group in spec.split(';').map(str::trim).filter(|g| !g.is_empty()) {
            let (measurements, memory) = group
                .split_once(':')
                .ok_or_else(|| Error::InvalidPartition(format!("group {group:?} lacks ':memory'")))?;
            let memory: usize = memory
                .trim()
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("bad memory index {:?}", memory.trim())))?;
            for idx in measurements.split(',') {
                let i: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidPartition(format!("bad measurement index {:?}", idx.trim())))?;
                if i == 0 {
                    return Err(Error::InvalidPartition("measurement indices start at 1".into()));
                }
                pairs.push((i, memory));
            }
        }
        if pairs.is_empty() {
            return Err(Error::InvalidPartition(format!("empty partition spec {spec:?}")));
        }
        let m = pairs.iter().map(|p| p.0).max().expect("nonempty");
        let mut assignment = vec![0; m];
        for (i, t) in pairs {
            if assignment[i - 1] != 0 {
                return Err(Error::InvalidPartition(format!("measurement {i} assigned twice")));
            }
            assignment[i - 1] = t;
        }
        if let Some(i) = assignment.iter().position(|&t| t == 0) {
            return Err(Error::InvalidPartition(format!("measurement {} is not assigned", i + 1)));
        }
        Self::new(assignment)
    }

    /// Number of measurements `m`.
    pub fn measurements(&self) -> usize {
        self.assignment.len()
    }

    /// Number of memories `n`.
    pub fn memories(&self) -> usize {
        self.memories
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn memory_of(&self, measurement: usize) -> usize {
        self.assignment[measurement]
    }

    /// `S_t` as 0-based measurement indices.
    pub fn set(&self, memory: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i] == memory).collect()
    }

    /// `m_t` for `t = 1..=n`.
    pub fn cardinalities(&self) -> Vec<usize> {
        (1..=self.memories).map(|t| self.assignment.iter().filter(|&&x| x == t).count()).collect()
    }

    /// `k_t = m_t (m_t - 1) / (2 (m - 1))` for `t = 1..=n`.
    pub fn pair_weights(&self) -> Vec<f64> {
        let m = self.measurements() as f64;
        self.cardinalities().into_iter().map(|mt| (mt * (mt.max(1) - 1)) as f64 / (2.0 * (m - 1.0))).collect()
    }

    /// Coefficient of `S(A)` in `δ_mn`: `(m(m-1) - Σ_t m_t(m_t-1)) / (2(m-1))`.
    pub fn thm1_entropy_coefficient(&self) -> f64 {
        let m = self.measurements();
        let same: usize = self.cardinalities().iter().map(|&mt| mt * (mt.max(1) - 1)).sum();
        (m * (m - 1) - same) as f64 / (2.0 * (m as f64 - 1.0))
    }

    /// Checks the partition fits `ms` and `register`.
    pub fn check(&self, ms: &MeasurementSet, register: &Register) -> Result<()> {
        if self.measurements() != ms.len() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} measurements but {} were given",
                self.measurements(),
                ms.len()
            )));
        }
        if self.memories > register.memories() {
            return Err(Error::InvalidPartition(format!(
                "partition references memory {} but the state has {} memories",
                self.memories,
                register.memories()
            )));
        }
        if register.dims()[0] != ms.dim() {
            return Err(Error::DimensionMismatch { expected: register.dims()[0], found: ms.dim() });
        }
        Ok(())
    }
}

/// Which overlap product enters the multi-measurement Wu bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WuVariant {
    /// `Π_{i<j} c_ij`.
    #[default]
    Corrected,
    /// `Π_{i≠j} c_ij`, each unordered pair counted twice.
    Original,
}

/// Memoryless relation `Σ_i H(M_i) ≥ U` fed into the uniform construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShannonBound {
    /// Averaged pairwise relations: `U = L + (m/2) S(A)`.
    MuSum,
    /// Chained channel relation: `U = -log₂ b + (m - 1) S(A)`.
    LiuChannel,
    /// A caller-supplied value of `U`.
    Constant(f64),
}

impl ShannonBound {
    /// `"mu-sum"`, `"liu-channel"` or a decimal number.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "mu-sum" => Ok(Self::MuSum),
            "liu-channel" => Ok(Self::LiuChannel),
            other => other.parse::<f64>().map(Self::Constant).map_err(|_| Error::UnknownProvider(other.into())),
        }
    }
}

/// Options that change how bounds are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoundOptions {
    pub wu_variant: WuVariant,
    pub b_order: BOrder,
}

/// Every entropic quantity the multi-memory bounds depend on.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantities {
    pub partition: Partition,
    /// `Σ_{i<j} log₂ c_ij`.
    pub log_overlap_product: f64,
    /// Channel constant `b` for the chosen ordering.
    pub channel_b: f64,
    /// Ordering of the measurement list used for `b`.
    pub channel_order: Vec<usize>,
    /// `S(A)`.
    pub entropy_a: f64,
    /// `S(A|B_t)`, `t = 1..=n`.
    pub conditional_a: Vec<f64>,
    /// `𝓘(A:B_t)`, `t = 1..=n`.
    pub mutual_a: Vec<f64>,
    /// `H(M_i)`.
    pub outcome_entropy: Vec<f64>,
    /// `𝓘(M_i:B_{t(i)})`.
    pub holevo: Vec<f64>,
    /// `S(M_i|B_{t(i)})`.
    pub measured_conditional: Vec<f64>,
}

impl Quantities {
    pub fn compute(rho: &DensityMatrix, ms: &MeasurementSet, partition: &Partition, b_order: BOrder) -> Result<Self> {
        partition.check(ms, rho.register())?;
        let m = ms.len();
        let c = ms.overlap_matrix();
        let mut log_overlap_product = 0.0;
        for i in 0..m {
            for j in i + 1..m {
                log_overlap_product += log2(c[i][j]);
            }
        }
        let (channel_b, channel_order) = channel_constant_b_ordered(ms, b_order)?;

        let rho_a = partial_trace(rho, &[0])?;
        let entropy_a = von_neumann(&rho_a)?.bits();
        let mut conditional_a = Vec::with_capacity(partition.memories());
        let mut mutual_a = Vec::with_capacity(partition.memories());
        let mut pair_states = Vec::with_capacity(partition.memories());
        for t in 1..=partition.memories() {
            let rho_ab = partial_trace(rho, &[0, t])?;
            let s_ab = von_neumann(&rho_ab)?.bits();
            let s_b = von_neumann(&partial_trace(&rho_ab, &[1])?)?.bits();
            conditional_a.push(s_ab - s_b);
            mutual_a.push(entropy_a + s_b - s_ab);
            pair_states.push(rho_ab);
        }

        let mut outcome_entropy = Vec::with_capacity(m);
        let mut holevo = Vec::with_capacity(m);
        let mut measured_conditional = Vec::with_capacity(m);
        for (i, basis) in ms.bases().iter().enumerate() {
            let rho_ab = &pair_states[partition.memory_of(i) - 1];
            let e = MeasuredEntropies::compute(rho_ab, basis, &[1])?;
            outcome_entropy.push(outcome_entropy_of(&rho_a, basis)?);
            holevo.push(e.holevo());
            measured_conditional.push(e.conditional());
        }

        Ok(Self {
            partition: partition.clone(),
            log_overlap_product,
            channel_b,
            channel_order,
            entropy_a,
            conditional_a,
            mutual_a,
            outcome_entropy,
            holevo,
            measured_conditional,
        })
    }

    fn m(&self) -> f64 {
        self.partition.measurements() as f64
    }

    /// `L = -(1/(m-1)) log₂ Π_{i<j} c_ij`.
    pub fn complementarity(&self) -> f64 {
        -self.log_overlap_product / (self.m() - 1.0)
    }

    /// `Σ_t Σ_{M_i ∈ S_t} S(M_i|B_t)`.
    pub fn lhs(&self) -> f64 {
        self.measured_conditional.iter().sum()
    }

    pub fn holevo_sum(&self) -> f64 {
        self.holevo.iter().sum()
    }

    pub fn shannon_sum(&self) -> f64 {
        self.outcome_entropy.iter().sum()
    }

    fn weighted(&self, values: &[f64]) -> f64 {
        self.partition.pair_weights().iter().zip(values).map(|(k, v)| k * v).sum()
    }

    pub fn scb(&self) -> f64 {
        self.complementarity() + self.weighted(&self.conditional_a)
    }

    /// Raw `δ_mn`.
    pub fn delta_thm1(&self) -> f64 {
        self.partition.thm1_entropy_coefficient() * self.entropy_a + self.weighted(&self.mutual_a) - self.holevo_sum()
    }

    /// Raw `δ'_mn`.
    pub fn delta_thm2(&self) -> f64 {
        let m = self.m();
        let k_total: f64 = self.partition.pair_weights().iter().sum();
        (self.log_overlap_product - (m - 1.0) * log2(self.channel_b)) / (m - 1.0)
            + (m - 1.0) * self.entropy_a
            - k_total * self.entropy_a
            + self.weighted(&self.mutual_a)
            - self.holevo_sum()
    }

    pub fn thm1(&self) -> f64 {
        self.scb() + self.delta_thm1().max(0.0)
    }

    pub fn thm2(&self) -> f64 {
        self.scb() + self.delta_thm2().max(0.0)
    }

    /// Value of `U` for a memoryless provider.
    pub fn shannon_bound(&self, provider: ShannonBound) -> f64 {
        match provider {
            ShannonBound::MuSum => self.complementarity() + 0.5 * self.m() * self.entropy_a,
            ShannonBound::LiuChannel => -log2(self.channel_b) + (self.m() - 1.0) * self.entropy_a,
            ShannonBound::Constant(u) => u,
        }
    }

    /// Raw `U - U_SCB - Σ 𝓘(M_i:B_t)`.
    pub fn delta_thm3(&self, provider: ShannonBound) -> f64 {
        self.shannon_bound(provider) - self.scb() - self.holevo_sum()
    }

    pub fn thm3(&self, provider: ShannonBound) -> f64 {
        self.scb() + self.delta_thm3(provider).max(0.0)
    }

    /// Raw `δ_m1 = (m/2) 𝓘(A:B) - Σ 𝓘(M_i:B)`; single memory only.
    pub fn delta_xie(&self) -> Result<f64> {
        if self.partition.memories() != 1 {
            return Err(Error::InvalidPartition(format!(
                "single-memory bound needs n = 1, got n = {}",
                self.partition.memories()
            )));
        }
        Ok(0.5 * self.m() * self.mutual_a[0] - self.holevo_sum())
    }

    /// `L + (m/2) S(A|B) + max{0, δ_m1}`.
    pub fn xie(&self) -> Result<f64> {
        let delta = self.delta_xie()?;
        Ok(self.complementarity() + 0.5 * self.m() * self.conditional_a[0] + delta.max(0.0))
    }

    fn wu_first_term(&self, variant: WuVariant) -> Result<f64> {
        if self.partition.memories() != self.partition.measurements() {
            return Err(Error::InvalidPartition(format!(
                "multi-measurement Wu bound needs one measurement per memory (n = m), got n = {}, m = {}",
                self.partition.memories(),
                self.partition.measurements()
            )));
        }
        Ok(match variant {
            WuVariant::Corrected => self.complementarity(),
            WuVariant::Original => 2.0 * self.complementarity(),
        })
    }

    /// Raw `δ_m = first + m S(A) - Σ H(M_i) - Σ 𝓘(M_i:B_i)`.
    pub fn delta_wu(&self, variant: WuVariant) -> Result<f64> {
        let first = self.wu_first_term(variant)?;
        Ok(first + self.m() * self.entropy_a - self.shannon_sum() - self.holevo_sum())
    }

    pub fn wu(&self, variant: WuVariant) -> Result<f64> {
        Ok(self.wu_first_term(variant)? + self.delta_wu(variant)?.max(0.0))
    }
}

fn outcome_entropy_of(rho_a: &DensityMatrix, basis: &crate::measure::MeasurementBasis) -> Result<f64> {
    Ok(outcome_entropy(rho_a, basis)?.bits())
}

fn require_two(ms: &MeasurementSet, bound: &'static str) -> Result<f64> {
    if ms.len() != 2 {
        return Err(Error::WrongArity { bound, expected: 2, found: ms.len() });
    }
    overlap_c(&ms.bases()[0], &ms.bases()[1])
}

/// `2 log₂(2 / (1 + √c))`.
pub fn bound_deutsch(ms: &MeasurementSet) -> Result<f64> {
    let c = require_two(ms, "deutsch")?;
    Ok(2.0 * log2(2.0 / (1.0 + sqrt(c))))
}

/// `q_MU = -log₂ c`.
pub fn bound_maassen_uffink(ms: &MeasurementSet) -> Result<f64> {
    let c = require_two(ms, "maassen-uffink")?;
    Ok(-log2(c))
}

fn check_memory(rho: &DensityMatrix, memory: usize) -> Result<()> {
    if memory == 0 || memory >= rho.register().len() {
        return Err(Error::InvalidSubsystem(format!("memory index {memory} is not a memory of this register")));
    }
    Ok(())
}

fn measured(rho: &DensityMatrix, ms: &MeasurementSet, i: usize, memory: usize) -> Result<MeasuredEntropies> {
    MeasuredEntropies::compute(rho, &ms.bases()[i], &[memory])
}

/// `q_MU + S(A|B)`.
pub fn bound_berta(rho: &DensityMatrix, ms: &MeasurementSet, memory: usize) -> Result<f64> {
    let q = bound_maassen_uffink(ms)?;
    check_memory(rho, memory)?;
    Ok(q + conditional(rho, &[0], &[memory])?.bits())
}

/// Raw `δ = 𝓘(A:B) - 𝓘(M₁:B) - 𝓘(M₂:B)`.
pub fn delta_adabi(rho: &DensityMatrix, ms: &MeasurementSet, memory: usize) -> Result<f64> {
    require_two(ms, "adabi")?;
    check_memory(rho, memory)?;
    let i_ab = mutual_information(rho, &[0], &[memory])?.bits();
    Ok(i_ab - measured(rho, ms, 0, memory)?.holevo() - measured(rho, ms, 1, memory)?.holevo())
}

/// `q_MU + S(A|B) + max{0, δ}`.
pub fn bound_adabi(rho: &DensityMatrix, ms: &MeasurementSet, memory: usize) -> Result<f64> {
    Ok(bound_berta(rho, ms, memory)? + delta_adabi(rho, ms, memory)?.max(0.0))
}

fn check_two_memories(rho: &DensityMatrix, mem_b: usize, mem_c: usize) -> Result<()> {
    check_memory(rho, mem_b)?;
    check_memory(rho, mem_c)?;
    if mem_b == mem_c {
        return Err(Error::InvalidSubsystem(format!("memories B and C are both subsystem {mem_b}")));
    }
    Ok(())
}

/// `S(M₁|B) + S(M₂|C) ≥ q_MU`.
pub fn bound_tripartite_mu(rho: &DensityMatrix, ms: &MeasurementSet, mem_b: usize, mem_c: usize) -> Result<f64> {
    let q = bound_maassen_uffink(ms)?;
    check_two_memories(rho, mem_b, mem_c)?;
    Ok(q)
}

/// Raw `δ₁ = 2S(A) + q_MU - 𝓘(A:B) - 𝓘(A:C) + 𝓘(M₂:B) + 𝓘(M₁:C) - H(M₁) - H(M₂)`.
pub fn delta_ming(rho: &DensityMatrix, ms: &MeasurementSet, mem_b: usize, mem_c: usize) -> Result<f64> {
    let q = bound_maassen_uffink(ms)?;
    check_two_memories(rho, mem_b, mem_c)?;
    let s_a = von_neumann(&partial_trace(rho, &[0])?)?.bits();
    let i_ab = mutual_information(rho, &[0], &[mem_b])?.bits();
    let i_ac = mutual_information(rho, &[0], &[mem_c])?.bits();
    let i_m2b = measured(rho, ms, 1, mem_b)?.holevo();
    let i_m1c = measured(rho, ms, 0, mem_c)?.holevo();
    let h1 = outcome_entropy(rho, &ms.bases()[0])?.bits();
    let h2 = outcome_entropy(rho, &ms.bases()[1])?.bits();
    Ok(2.0 * s_a + q - i_ab - i_ac + i_m2b + i_m1c - h1 - h2)
}

/// `q_MU + max{0, δ₁}`.
pub fn bound_ming(rho: &DensityMatrix, ms: &MeasurementSet, mem_b: usize, mem_c: usize) -> Result<f64> {
    Ok(bound_maassen_uffink(ms)? + delta_ming(rho, ms, mem_b, mem_c)?.max(0.0))
}

/// Raw `δ₂ = 2S(A) + q_MU - 𝓘(M₁:B) - 𝓘(M₂:C) - H(M₁) - H(M₂)`.
pub fn delta_wu_tripartite(rho: &DensityMatrix, ms: &MeasurementSet, mem_b: usize, mem_c: usize) -> Result<f64> {
    let q = bound_maassen_uffink(ms)?;
    check_two_memories(rho, mem_b, mem_c)?;
    let s_a = von_neumann(&partial_trace(rho, &[0])?)?.bits();
    let i_m1b = measured(rho, ms, 0, mem_b)?.holevo();
    let i_m2c = measured(rho, ms, 1, mem_c)?.holevo();
    let h1 = outcome_entropy(rho, &ms.bases()[0])?.bits();
    let h2 = outcome_entropy(rho, &ms.bases()[1])?.bits();
    Ok(2.0 * s_a + q - i_m1b - i_m2c - h1 - h2)
}

/// `q_MU + max{0, δ₂}`.
pub fn bound_wu_tripartite(rho: &DensityMatrix, ms: &MeasurementSet, mem_b: usize, mem_c: usize) -> Result<f64> {
    Ok(bound_maassen_uffink(ms)? + delta_wu_tripartite(rho, ms, mem_b, mem_c)?.max(0.0))
}

fn quantities(rho: &DensityMatrix, ms: &MeasurementSet, partition: &Partition) -> Result<Quantities> {
    Quantities::compute(rho, ms, partition, BOrder::Given)
}

/// Multi-measurement Wu bound; needs one measurement per memory.
pub fn bound_wu_multi(rho: &DensityMatrix, ms: &MeasurementSet, partition: &Partition, variant: WuVariant) -> Result<f64> {
    quantities(rho, ms, partition)?.wu(variant)
}

/// `U_SCB`.
pub fn bound_scb(rho: &DensityMatrix, ms: &MeasurementSet, partition: &Partition) -> Result<f64> {
    Ok(quantities(rho, ms, partition)?.scb())
}

/// `U_SCB + max{0, δ_mn}`.
pub fn bound_thm1(rho: &DensityMatrix, ms: &MeasurementSet, partition: &Partition) -> Result<f64> {
    Ok(quantities(rho, ms, partition)?.thm1())
}

/// `U_SCB + max{0, δ'_mn}` with `b` for the given order.
pub fn bound_thm2(rho: &DensityMatrix, ms: &MeasurementSet, partition: &Partition) -> Result<f64> {
    Ok(quantities(rho, ms, partition)?.thm2())
}

/// Uniform construction from a memoryless relation.
pub fn bound_thm3(rho: &DensityMatrix, ms: &MeasurementSet, partition: &Partition, provider: ShannonBound) -> Result<f64> {
    Ok(quantities(rho, ms, partition)?.thm3(provider))
}

/// Single-memory bound `L + (m/2) S(A|B) + max{0, δ_m1}` with `B` = subsystem `memory`.
pub fn bound_xie(rho: &DensityMatrix, ms: &MeasurementSet, memory: usize) -> Result<f64> {
    check_memory(rho, memory)?;
    let rho = if memory == 1 { rho.clone() } else { partial_trace(rho, &[0, memory])? };
    quantities(&rho, ms, &Partition::single_memory(ms.len()))?.xie()
}

/// `Σ_t Σ_{M_i ∈ S_t} S(M_i|B_t)`.
pub fn lhs_uncertainty(rho: &DensityMatrix, ms: &MeasurementSet, partition: &Partition) -> Result<EntropyValue> {
    partition.check(ms, rho.register())?;
    let mut total = 0.0;
    for (i, basis) in ms.bases().iter().enumerate() {
        total += MeasuredEntropies::compute(rho, basis, &[partition.memory_of(i)])?.conditional();
    }
    Ok(EntropyValue(total))
}

/// LHS and every applicable bound for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lhs: EntropyValue,
    /// `Σ_i H(M_i)`, the quantity bounded by the memoryless relations.
    pub shannon_sum: f64,
    /// Lower bounds on `lhs`, after the `max{0, ·}` clamp.
    pub bounds: BTreeMap<&'static str, f64>,
    /// Raw `δ` values before the clamp.
    pub deltas: BTreeMap<&'static str, f64>,
    /// Lower bounds on `shannon_sum`.
    pub memoryless: BTreeMap<&'static str, f64>,
    pub channel_b: f64,
    pub channel_order: Vec<usize>,
}

impl BoundReport {
    /// Evaluates every bound that applies to the shape of `partition`.
    ///
    /// Always: `scb`, `thm1`, `thm2`, `thm3_mu_sum`, `thm3_liu_channel`.
    /// `n = 1`: `xie`; `n = m`: `wu`. With `m = 2` and `n = 1`: `berta`,
    /// `adabi`; with `m = 2` and `n = 2`: `tripartite_mu`, `ming`,
    /// `wu_tripartite`.
    pub fn compute(rho: &DensityMatrix, ms: &MeasurementSet, partition: &Partition, options: BoundOptions) -> Result<Self> {
        let q = Quantities::compute(rho, ms, partition, options.b_order)?;
        let mut bounds = BTreeMap::new();
        let mut deltas = BTreeMap::new();
        let mut memoryless = BTreeMap::new();

        bounds.insert("scb", q.scb());
        bounds.insert("thm1", q.thm1());
        deltas.insert("thm1", q.delta_thm1());
        bounds.insert("thm2", q.thm2());
        deltas.insert("thm2", q.delta_thm2());
        bounds.insert("thm3_mu_sum", q.thm3(ShannonBound::MuSum));
        bounds.insert("thm3_liu_channel", q.thm3(ShannonBound::LiuChannel));
        memoryless.insert("mu_sum", q.shannon_bound(ShannonBound::MuSum));
        memoryless.insert("liu_channel", q.shannon_bound(ShannonBound::LiuChannel));

        let m = partition.measurements();
        let n = partition.memories();
        if n == 1 {
            bounds.insert("xie", q.xie()?);
            deltas.insert("xie", q.delta_xie()?);
        }
        if n == m {
            bounds.insert("wu", q.wu(options.wu_variant)?);
            deltas.insert("wu", q.delta_wu(options.wu_variant)?);
        }
        if m == 2 {
            memoryless.insert("deutsch", bound_deutsch(ms)?);
            memoryless.insert("maassen_uffink", bound_maassen_uffink(ms)?);
            if n == 1 {
                bounds.insert("berta", bound_berta(rho, ms, 1)?);
                bounds.insert("adabi", bound_adabi(rho, ms, 1)?);
                deltas.insert("adabi", delta_adabi(rho, ms, 1)?);
            } else {
                let (b, c) = (partition.memory_of(0), partition.memory_of(1));
                bounds.insert("tripartite_mu", bound_tripartite_mu(rho, ms, b, c)?);
                bounds.insert("ming", bound_ming(rho, ms, b, c)?);
                deltas.insert("ming", delta_ming(rho, ms, b, c)?);
                bounds.insert("wu_tripartite", bound_wu_tripartite(rho, ms, b, c)?);
                deltas.insert("wu_tripartite", delta_wu_tripartite(rho, ms, b, c)?);
            }
        }

        Ok(Self {
            lhs: EntropyValue(q.lhs()),
            shannon_sum: q.shannon_sum(),
            bounds,
            deltas,
            memoryless,
            channel_b: q.channel_b,
            channel_order: q.channel_order,
        })
    }

    pub fn bound(&self, name: &str) -> Option<f64> {
        self.bounds.get(name).copied()
    }

    pub fn delta(&self, name: &str) -> Option<f64> {
        self.deltas.get(name).copied()
    }

    /// Bounds exceeding the quantity they bound by more than `tol`, as
    /// `(name, bound - value)`.
    pub fn violations(&self, tol: f64) -> Vec<(&'static str, f64)> {
        let lhs = self.lhs.bits();
        let mut out: Vec<(&'static str, f64)> =
            self.bounds.iter().filter(|(_, &b)| b > lhs + tol).map(|(&k, &b)| (k, b - lhs)).collect();
        out.extend(
            self.memoryless
                .iter()
                .filter(|(_, &b)| b > self.shannon_sum + tol)
                .map(|(&k, &b)| (k, b - self.shannon_sum)),
        );
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations(VALIDITY_TOL).is_empty()
    }

    /// Largest bound on `lhs`.
    pub fn best_bound(&self) -> (&'static str, f64) {
        self.bounds
            .iter()
            .map(|(&k, &v)| (k, v))
            .fold(("", f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    /// Human-readable multi-line summary with values to six decimals.
    pub fn summary(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "lhs {:.6}", Fixed6(self.lhs.bits()));
        for (k, v) in &self.bounds {
            let _ = writeln!(s, "{k} {:.6}", Fixed6(*v));
        }
        for (k, v) in &self.deltas {
            let _ = writeln!(s, "delta_raw_{k} {:.6}", Fixed6(*v));
        }
        let _ = writeln!(s, "shannon_sum {:.6}", Fixed6(self.shannon_sum));
        for (k, v) in &self.memoryless {
            let _ = writeln!(s, "memoryless_{k} {:.6}", Fixed6(*v));
        }
        let _ = write!(s, "channel_b {:.6}", Fixed6(self.channel_b));
        s
    }
}

/// Prints values that round to zero without a sign.
struct Fixed6(f64);

impl core::fmt::Display for Fixed6 {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let v = if self.0.abs() < 5e-7 { 0.0 } else { self.0 };
        core::fmt::Display::fmt(&v, f)
    }
}
