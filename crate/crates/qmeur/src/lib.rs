//! File formats, CSV output and parallel scenario execution on top of
//! [`qmeur_core`].

pub mod error;
pub mod formats;
pub mod output;
pub mod run;

pub use error::{Error, Result};
pub use formats::{load_basis, load_state, parse_bases, parse_basis, parse_state, save_state, state_to_json};
pub use output::{format_sig, report_csv, sweep_csv, write_atomic};
pub use run::{compute, run_ensemble, ScenarioSummary};
