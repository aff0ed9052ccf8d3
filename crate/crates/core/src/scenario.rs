//! Parameter sweeps and random ensembles producing one [`BoundReport`] per
//! point.
//!
//! Three case studies are built in, all with the Pauli measurements
//! σ_x, σ_y, σ_z on a qubit `A`:
//!
//! * `one-memory`: `p |σ><σ| + (1-p) 𝕀/4`, all three guessed by `B`.
//! * `w-state`: the generalised W state, σ_x guessed by `B`, σ_y and σ_z by `C`.
//! * `random-ensemble`: random four-qubit states, σ_x, σ_y, σ_z guessed by
//!   `B`, `C`, `D` respectively.
//!
//! Rows are pure functions of their parameters; ensemble sample `i` uses the
//! seed [`Rng::child_seed`]`(master, i)` so rows can be computed in any order.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::bounds::{BoundOptions, BoundReport, Partition, VALIDITY_TOL};
use crate::measure::MeasurementSet;
use crate::qstate::{family_mixed_two_qubit, generalized_w, random_state, Register, Rng};
use crate::{Error, Result};

/// Points per swept axis unless told otherwise.
pub const DEFAULT_GRID_STEPS: usize = 200;
/// Ensemble size used by the acceptance checks.
pub const DEFAULT_SAMPLES: usize = 10_000;
/// Ensemble size of the full-scale run.
pub const FULL_SAMPLES: usize = 100_000;

/// Default sweep range of the mixing angle α (the states have period π).
pub const ALPHA_RANGE: (f64, f64) = (0.0, PI);
/// Default sweep range of the W-state angle β.
pub const BETA_RANGE: (f64, f64) = (0.0, 2.0 * PI);
/// Default sweep range of the mixing weight p.
pub const P_RANGE: (f64, f64) = (0.0, 1.0);

/// One scenario parameter: either held fixed or swept over an inclusive grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Grid { start: f64, end: f64, steps: usize },
}

impl Axis {
    pub fn grid(range: (f64, f64), steps: usize) -> Self {
        Self::Grid { start: range.0, end: range.1, steps }
    }

    /// Grid points, endpoints included. A one-step grid is just `start`.
    pub fn values(&self) -> Result<Vec<f64>> {
        match *self {
            Self::Fixed(v) => Ok(vec![v]),
            Self::Grid { steps: 0, .. } => Err(Error::OutOfRange { name: "steps", value: 0.0 }),
            Self::Grid { start, steps: 1, .. } => Ok(vec![start]),
            Self::Grid { start, end, steps } => {
                let h = (end - start) / (steps - 1) as f64;
                Ok((0..steps).map(|i| if i == steps - 1 { end } else { start + h * i as f64 }).collect())
            }
        }
    }

    pub fn is_swept(&self) -> bool {
        matches!(self, Self::Grid { .. })
    }
}

/// A CSV column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Param(&'static str),
    SampleIndex,
    SampleSeed,
    Lhs,
    Bound(&'static str),
    /// `bound(a) - bound(b)`.
    Difference(&'static str, &'static str),
    Delta(&'static str),
}

impl Column {
    pub fn name(&self) -> String {
        match self {
            Self::Param(p) => String::from(*p),
            Self::SampleIndex => "sample_index".into(),
            Self::SampleSeed => "sample_seed".into(),
            Self::Lhs => "lhs".into(),
            Self::Bound(b) => String::from(*b),
            Self::Difference(a, b) => format!("{a}_minus_{b}"),
            Self::Delta(d) => format!("delta_raw_{d}"),
        }
    }
}

/// A cell value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
}

/// Which ensemble sample a row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sample {
    pub index: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Values of the scenario parameters, in column order.
    pub params: Vec<f64>,
    pub sample: Option<Sample>,
    pub report: BoundReport,
}

impl SweepRow {
    pub fn cell(&self, column: &Column, param_names: &[&'static str]) -> Cell {
        let bound = |name: &str| self.report.bound(name).unwrap_or(f64::NAN);
        match *column {
            Column::Param(p) => {
                let i = param_names.iter().position(|&n| n == p).expect("declared parameter");
                Cell::Real(self.params[i])
            }
            Column::SampleIndex => Cell::Int(self.sample.map_or(0, |s| s.index)),
            Column::SampleSeed => Cell::Int(self.sample.map_or(0, |s| s.seed)),
            Column::Lhs => Cell::Real(self.report.lhs.bits()),
            Column::Bound(b) => Cell::Real(bound(b)),
            Column::Difference(a, b) => Cell::Real(bound(a) - bound(b)),
            Column::Delta(d) => Cell::Real(self.report.delta(d).unwrap_or(f64::NAN)),
        }
    }

    /// `lhs - max(bounds)`.
    pub fn gap(&self) -> f64 {
        self.report.lhs.bits() - self.report.best_bound().1
    }
}

/// Rows of one scenario plus the column layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub scenario: &'static str,
    pub param_names: Vec<&'static str>,
    pub columns: Vec<Column>,
    pub rows: Vec<SweepRow>,
}

impl Sweep {
    pub fn header(&self) -> Vec<String> {
        self.columns.iter().map(Column::name).collect()
    }

    pub fn cells(&self, row: &SweepRow) -> Vec<Cell> {
        self.columns.iter().map(|c| row.cell(c, &self.param_names)).collect()
    }

    /// Minimum and maximum of `lhs - best bound` over all rows.
    pub fn gap_range(&self) -> Option<(f64, f64)> {
        self.rows.iter().map(SweepRow::gap).fold(None, |acc, g| match acc {
            None => Some((g, g)),
            Some((lo, hi)) => Some((lo.min(g), hi.max(g))),
        })
    }

    /// Rows where some bound exceeds its bounded quantity.
    pub fn violation_count(&self) -> usize {
        self.rows.iter().filter(|r| !r.report.violations(VALIDITY_TOL).is_empty()).count()
    }

    /// Stable sort of the rows by one bound.
    pub fn sort_by_bound(&mut self, name: &str) {
        self.rows.sort_by(|a, b| {
            let va = a.report.bound(name).unwrap_or(f64::NAN);
            let vb = b.report.bound(name).unwrap_or(f64::NAN);
            va.total_cmp(&vb)
        });
    }
}

fn grid_columns(params: &[&'static str], extra: &[&'static str]) -> Vec<Column> {
    let mut cols: Vec<Column> = params.iter().map(|&p| Column::Param(p)).collect();
    cols.push(Column::Lhs);
    cols.extend(["scb", "thm1", "thm2"].into_iter().chain(extra.iter().copied()).map(Column::Bound));
    cols.extend(["thm1", "thm2"].map(Column::Delta));
    cols
}

fn two_axis_grid(
    first: Axis,
    second: Axis,
    mut row: impl FnMut(f64, f64) -> Result<BoundReport>,
) -> Result<Vec<SweepRow>> {
    let xs = first.values()?;
    let ys = second.values()?;
    let mut rows = Vec::with_capacity(xs.len() * ys.len());
    for &x in &xs {
        for &y in &ys {
            rows.push(SweepRow { params: vec![x, y], sample: None, report: row(x, y)? });
        }
    }
    Ok(rows)
}

/// Single memory, three Pauli measurements, state
/// `p |σ><σ| + (1-p) 𝕀/4` with `|σ> = cos α |00> + sin α |11>`.
pub fn run_one_memory_case(p: Axis, alpha: Axis, options: BoundOptions) -> Result<Sweep> {
    let ms = MeasurementSet::pauli_xyz();
    let partition = Partition::single_memory(3);
    let rows = two_axis_grid(p, alpha, |p, a| {
        BoundReport::compute(&family_mixed_two_qubit(p, a)?, &ms, &partition, options)
    })?;
    let params = vec!["p", "alpha"];
    Ok(Sweep { scenario: "one-memory", columns: grid_columns(&params, &["xie"]), param_names: params, rows })
}

/// Generalised W state with σ_x guessed by `B` and σ_y, σ_z by `C`.
pub fn run_two_memory_case(alpha: Axis, beta: Axis, options: BoundOptions) -> Result<Sweep> {
    let ms = MeasurementSet::pauli_xyz();
    let partition = Partition::parse("1:1;2,3:2")?;
    let rows = two_axis_grid(alpha, beta, |a, b| {
        BoundReport::compute(&generalized_w(a, b)?, &ms, &partition, options)
    })?;
    let params = vec!["alpha", "beta"];
    Ok(Sweep { scenario: "w-state", columns: grid_columns(&params, &[]), param_names: params, rows })
}

/// Random states on a fixed register with fixed measurements and partition.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub name: &'static str,
    pub register: Register,
    pub measurements: MeasurementSet,
    pub partition: Partition,
    pub options: BoundOptions,
    pub columns: Vec<Column>,
}

impl Ensemble {
    /// Random four-qubit states; σ_x, σ_y, σ_z guessed by `B`, `C`, `D`.
    pub fn three_memory(options: BoundOptions) -> Self {
        let mut columns = vec![Column::SampleIndex, Column::SampleSeed, Column::Lhs];
        columns.extend(["scb", "thm1", "thm2", "wu"].map(Column::Bound));
        columns.extend([Column::Difference("thm1", "wu"), Column::Difference("thm2", "wu")]);
        columns.extend(["thm1", "thm2", "wu"].map(Column::Delta));
        Self {
            name: "random-ensemble",
            register: Register::qubits(4),
            measurements: MeasurementSet::pauli_xyz(),
            partition: Partition::one_per_memory(3),
            options,
            columns,
        }
    }

    /// Random two-qubit states; all three Pauli measurements guessed by `B`.
    pub fn one_memory(options: BoundOptions) -> Self {
        let mut columns = vec![Column::SampleIndex, Column::SampleSeed, Column::Lhs];
        columns.extend(["scb", "thm1", "thm2", "xie"].map(Column::Bound));
        columns.extend(["thm1", "thm2"].map(Column::Delta));
        Self {
            name: "random-one-memory",
            register: Register::qubits(2),
            measurements: MeasurementSet::pauli_xyz(),
            partition: Partition::single_memory(3),
            options,
            columns,
        }
    }

    /// Row for sample `index` of the ensemble seeded by `master_seed`.
    pub fn row(&self, master_seed: u64, index: u64) -> Result<SweepRow> {
        let seed = Rng::child_seed(master_seed, index);
        let rho = random_state(&mut Rng::new(seed), self.register.clone())?;
        let report = BoundReport::compute(&rho, &self.measurements, &self.partition, self.options)?;
        Ok(SweepRow { params: Vec::new(), sample: Some(Sample { index, seed }), report })
    }

    /// Wraps already computed rows (in index order) into a [`Sweep`].
    pub fn sweep(&self, rows: Vec<SweepRow>) -> Sweep {
        Sweep { scenario: self.name, param_names: Vec::new(), columns: self.columns.clone(), rows }
    }

    /// Sequential evaluation of `samples` rows.
    pub fn run(&self, samples: usize, master_seed: u64) -> Result<Sweep> {
        if samples == 0 {
            return Err(Error::OutOfRange { name: "samples", value: 0.0 });
        }
        let rows = (0..samples as u64).map(|i| self.row(master_seed, i)).collect::<Result<Vec<_>>>()?;
        Ok(self.sweep(rows))
    }
}

/// Random four-qubit ensemble, sequential.
pub fn run_three_memory_ensemble(samples: usize, seed: u64, options: BoundOptions) -> Result<Sweep> {
    Ensemble::three_memory(options).run(samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_4;

    const TOL: f64 = 1e-9;

    #[test]
    fn axis_values() {
        assert_eq!(Axis::Fixed(0.3).values().unwrap(), [0.3]);
        assert_eq!(Axis::grid((0.0, 1.0), 5).values().unwrap(), [0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(Axis::grid((2.0, 3.0), 1).values().unwrap(), [2.0]);
        assert!(Axis::grid((0.0, 1.0), 0).values().is_err());
        assert_eq!(Axis::grid(ALPHA_RANGE, 200).values().unwrap().len(), 200);
    }

    #[test]
    fn one_memory_endpoints() {
        let opts = BoundOptions::default();
        let s = run_one_memory_case(Axis::Fixed(0.0), Axis::grid(ALPHA_RANGE, 7), opts).unwrap();
        for row in &s.rows {
            assert!((row.report.lhs.bits() - 3.0).abs() < TOL);
            assert!((row.report.bound("thm1").unwrap() - 3.0).abs() < TOL);
        }
        let s = run_one_memory_case(Axis::Fixed(1.0), Axis::Fixed(FRAC_PI_4), opts).unwrap();
        assert!(s.rows[0].report.lhs.bits().abs() < TOL);
        assert!(s.rows[0].report.bound("thm1").unwrap().abs() < TOL);
        assert!(matches!(
            run_one_memory_case(Axis::Fixed(1.5), Axis::Fixed(0.0), opts),
            Err(Error::OutOfRange { name: "p", .. })
        ));
    }

    #[test]
    fn one_memory_ordering_and_shape() {
        let s = run_one_memory_case(Axis::Fixed(0.5), Axis::grid(ALPHA_RANGE, 50), BoundOptions::default()).unwrap();
        assert_eq!(s.rows.len(), 50);
        assert_eq!(
            s.header(),
            ["p", "alpha", "lhs", "scb", "thm1", "thm2", "xie", "delta_raw_thm1", "delta_raw_thm2"]
        );
        for row in &s.rows {
            let r = &row.report;
            assert!(r.bound("thm1").unwrap() >= r.bound("thm2").unwrap() - TOL);
            assert!((r.bound("thm1").unwrap() - r.bound("xie").unwrap()).abs() < 1e-12);
            assert!(r.is_valid());
        }
        let (lo, _) = s.gap_range().unwrap();
        assert!(lo >= -TOL);
        assert_eq!(s.violation_count(), 0);
    }

    #[test]
    fn two_memory_case() {
        let s = run_two_memory_case(Axis::grid(ALPHA_RANGE, 40), Axis::Fixed(PI / 5.0), BoundOptions::default()).unwrap();
        assert_eq!(s.rows.len(), 40);
        assert_eq!(s.violation_count(), 0);
        for row in &s.rows {
            let r = &row.report;
            // mutually unbiased bases: δ' - δ = -1/2 + S(A)/2 ≤ 0 for every partition
            assert!(r.delta("thm2").unwrap() <= r.delta("thm1").unwrap() + TOL);
        }
        // α = 0 is |100>, a product of |1> on A with the memories
        let s = run_two_memory_case(Axis::Fixed(0.0), Axis::Fixed(PI / 5.0), BoundOptions::default()).unwrap();
        assert!((s.rows[0].report.lhs.bits() - 2.0).abs() < TOL);
    }

    #[test]
    fn ensemble_rows_are_reproducible() {
        let e = Ensemble::three_memory(BoundOptions::default());
        let a = e.run(5, 42).unwrap();
        let b = e.run(5, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(e.row(42, 3).unwrap(), a.rows[3]);
        assert_eq!(a.rows[3].sample.unwrap().seed, Rng::child_seed(42, 3));
        assert_eq!(a.violation_count(), 0);
        for row in &a.rows {
            let r = &row.report;
            assert!(r.bound("thm1").unwrap() - r.bound("wu").unwrap() >= -TOL);
        }
        assert_eq!(
            a.header(),
            [
                "sample_index", "sample_seed", "lhs", "scb", "thm1", "thm2", "wu", "thm1_minus_wu", "thm2_minus_wu",
                "delta_raw_thm1", "delta_raw_thm2", "delta_raw_wu"
            ]
        );
        assert!(e.run(0, 1).is_err());
    }

    #[test]
    fn sort_by_wu() {
        let mut s = run_three_memory_ensemble(20, 7, BoundOptions::default()).unwrap();
        s.sort_by_bound("wu");
        let wu: Vec<f64> = s.rows.iter().map(|r| r.report.bound("wu").unwrap()).collect();
        assert!(wu.windows(2).all(|w| w[0] <= w[1]));
    }
}
