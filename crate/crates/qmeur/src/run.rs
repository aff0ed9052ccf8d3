//! Parallel ensemble evaluation and run summaries.

use std::fmt;

use qmeur_core::bounds::VALIDITY_TOL;
use qmeur_core::scenario::{Ensemble, Sweep};
use qmeur_core::{BoundOptions, BoundReport, DensityMatrix, MeasurementSet, Partition};
use rayon::prelude::*;

use crate::{Error, Result};

/// Parses `partition_spec`, checks it against the state and measurements and
/// evaluates every applicable bound.
pub fn compute(
    rho: &DensityMatrix,
    ms: &MeasurementSet,
    partition_spec: &str,
    options: BoundOptions,
) -> Result<BoundReport> {
    let partition = Partition::parse(partition_spec)
        .and_then(|p| p.check(ms, rho.register()).map(|()| p))
        .map_err(|e| match e {
            qmeur_core::Error::DimensionMismatch { expected, found } => {
                Error::DimensionMismatch { field: "bases", expected, found }
            }
            other => Error::validation(partition_spec, "partition", other),
        })?;
    Ok(BoundReport::compute(rho, ms, &partition, options)?)
}

/// Evaluates `samples` rows on the rayon pool. Rows come back in index
/// order, so the result equals [`Ensemble::run`].
pub fn run_ensemble(ensemble: &Ensemble, samples: usize, seed: u64) -> Result<Sweep> {
    if samples == 0 {
        return Err(qmeur_core::Error::OutOfRange { name: "samples", value: 0.0 }.into());
    }
    let rows = (0..samples as u64)
        .into_par_iter()
        .map(|i| ensemble.row(seed, i))
        .collect::<qmeur_core::Result<Vec<_>>>()?;
    Ok(ensemble.sweep(rows))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSummary {
    pub scenario: &'static str,
    pub rows: usize,
    /// Range of `lhs - best bound`.
    pub gap: (f64, f64),
    pub violations: usize,
    /// Rows where thm2 falls below wu, when the sweep has both.
    pub thm2_below_wu: Option<usize>,
}

impl ScenarioSummary {
    pub fn of(sweep: &Sweep) -> Self {
        let has_wu = sweep.rows.first().is_some_and(|r| r.report.bound("wu").is_some());
        let thm2_below_wu = has_wu.then(|| {
            sweep
                .rows
                .iter()
                .filter(|r| {
                    let b = |n| r.report.bound(n).expect("present in every row");
                    b("thm2") < b("wu") - VALIDITY_TOL
                })
                .count()
        });
        Self {
            scenario: sweep.scenario,
            rows: sweep.rows.len(),
            gap: sweep.gap_range().unwrap_or((f64::NAN, f64::NAN)),
            violations: sweep.violation_count(),
            thm2_below_wu,
        }
    }
}

impl fmt::Display for ScenarioSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} rows, lhs - best bound in [{:.6e}, {:.6e}], {} violations",
            self.scenario, self.rows, self.gap.0, self.gap.1, self.violations
        )?;
        if let Some(n) = self.thm2_below_wu {
            write!(f, ", thm2 < wu in {n} rows")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmeur_core::BoundOptions;

    #[test]
    fn compute_checks_the_partition() {
        let rho = qmeur_core::qstate::bell();
        let ms = crate::parse_bases("pauli-x,pauli-z").unwrap();
        let r = compute(&rho, &ms, "1,2:1", BoundOptions::default()).unwrap();
        assert!(r.lhs.bits().abs() < 1e-9);
        assert!(matches!(
            compute(&rho, &ms, "1:1;2:3", BoundOptions::default()),
            Err(Error::Validation { field: "partition", .. })
        ));
        assert!(matches!(
            compute(&rho, &ms, "1,2,3:1", BoundOptions::default()),
            Err(Error::Validation { field: "partition", .. })
        ));
        let qutrit = qmeur_core::DensityMatrix::maximally_mixed(qmeur_core::Register::new(vec![3, 2]).unwrap());
        assert!(matches!(
            compute(&qutrit, &ms, "1,2:1", BoundOptions::default()),
            Err(Error::DimensionMismatch { field: "bases", expected: 3, found: 2 })
        ));
    }

    #[test]
    fn parallel_matches_sequential() {
        let e = Ensemble::three_memory(BoundOptions::default());
        assert_eq!(run_ensemble(&e, 64, 9).unwrap(), e.run(64, 9).unwrap());
        assert!(run_ensemble(&e, 0, 9).is_err());
    }

    #[test]
    fn summary_counts() {
        let e = Ensemble::three_memory(BoundOptions::default());
        let s = ScenarioSummary::of(&run_ensemble(&e, 50, 1).unwrap());
        assert_eq!(s.rows, 50);
        assert_eq!(s.violations, 0);
        assert!(s.gap.0 >= -VALIDITY_TOL && s.gap.0 <= s.gap.1);
        assert!(s.thm2_below_wu.is_some());
        assert!(s.to_string().starts_with("random-ensemble: 50 rows"));

        let one = ScenarioSummary::of(&run_ensemble(&Ensemble::one_memory(BoundOptions::default()), 5, 1).unwrap());
        assert_eq!(one.thm2_below_wu, None);
    }
}
