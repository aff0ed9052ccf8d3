//! JSON files for states and measurement bases.
//!
//! State: `{"dims": [2, 2], "matrix": [[[re, im], ...], ...]}`, row-major,
//! subsystem 0 is the measured party.
//!
//! Basis: `{"label": "...", "vectors": [[[re, im], ...], ...]}` where
//! `vectors[k]` is the k-th basis vector.

use std::fs;
use std::path::Path;

use qmeur_core::{Complex64, ComplexMatrix, DensityMatrix, MeasurementBasis, MeasurementSet, Register};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

type Entry = [f64; 2];

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dims: Vec<usize>,
    matrix: Vec<Vec<Entry>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    label: String,
    vectors: Vec<Vec<Entry>>,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str, source_name: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        source_name: source_name.to_owned(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn complex(e: &Entry) -> Complex64 {
    Complex64::new(e[0], e[1])
}

fn check_square(rows: &[Vec<Entry>], n: usize, field: &'static str) -> Result<()> {
    if rows.len() != n {
        return Err(Error::DimensionMismatch { field, expected: n, found: rows.len() });
    }
    match rows.iter().find(|r| r.len() != n) {
        Some(r) => Err(Error::DimensionMismatch { field, expected: n, found: r.len() }),
        None => Ok(()),
    }
}

/// Parses and validates a state document. `source_name` labels diagnostics.
pub fn parse_state(text: &str, source_name: &str) -> Result<DensityMatrix> {
    let file: StateFile = from_json(text, source_name)?;
    let register = Register::new(file.dims).map_err(|e| Error::validation(source_name, "dims", e))?;
    let n = register.total_dim();
    check_square(&file.matrix, n, "matrix")?;
    let data = file.matrix.iter().flatten().map(complex).collect();
    let matrix = ComplexMatrix::from_vec(n, n, data)?;
    DensityMatrix::new(register, matrix).map_err(|e| Error::validation(source_name, "matrix", e))
}

pub fn load_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    let path = path.as_ref();
    parse_state(&read(path)?, &path.display().to_string())
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let file = StateFile {
        dims: rho.register().dims().to_vec(),
        matrix: (0..m.rows()).map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("state serialises")
}

pub fn save_state(rho: &DensityMatrix, path: impl AsRef<Path>) -> Result<()> {
    let json = state_to_json(rho);
    crate::write_atomic(path, |w| std::io::Write::write_all(w, json.as_bytes()))
}

/// Parses and validates a basis document.
pub fn parse_basis(text: &str, source_name: &str) -> Result<MeasurementBasis> {
    let file: BasisFile = from_json(text, source_name)?;
    let d = file.vectors.len();
    if d == 0 {
        return Err(Error::validation(source_name, "vectors", "no basis vectors"));
    }
    check_square(&file.vectors, d, "vectors")?;
    let columns: Vec<Vec<Complex64>> = file.vectors.iter().map(|v| v.iter().map(complex).collect()).collect();
    let vectors = ComplexMatrix::from_columns(&columns)?;
    MeasurementBasis::new(file.label, vectors).map_err(|e| Error::validation(source_name, "vectors", e))
}

pub fn load_basis(path: impl AsRef<Path>) -> Result<MeasurementBasis> {
    let path = path.as_ref();
    parse_basis(&read(path)?, &path.display().to_string())
}

/// Comma-separated list of built-in basis names and basis file paths.
pub fn parse_bases(spec: &str) -> Result<MeasurementSet> {
    let mut bases = Vec::new();
    for item in spec.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(Error::validation(spec, "bases", "empty basis name"));
        }
        let basis = match MeasurementBasis::by_name(item) {
            Some(b) => b,
            None if Path::new(item).is_file() => load_basis(item)?,
            None => {
                return Err(Error::validation(item, "bases", "neither a built-in basis nor a readable file"));
            }
        };
        bases.push(basis);
    }
    MeasurementSet::new(bases).map_err(|e| match e {
        qmeur_core::Error::DimensionMismatch { expected, found } => {
            Error::DimensionMismatch { field: "bases", expected, found }
        }
        other => Error::validation(spec, "bases", other),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BELL: &str = r#"{"dims": [2, 2], "matrix": [
        [[0.5, 0], [0, 0], [0, 0], [0.5, 0]],
        [[0, 0], [0, 0], [0, 0], [0, 0]],
        [[0, 0], [0, 0], [0, 0], [0, 0]],
        [[0.5, 0], [0, 0], [0, 0], [0.5, 0]]]}"#;

    #[test]
    fn bell_state_round_trip() {
        let rho = parse_state(BELL, "bell").unwrap();
        assert_eq!(rho.register().dims(), [2, 2]);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        let again = parse_state(&state_to_json(&rho), "again").unwrap();
        assert_eq!(again, rho);
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = parse_state("{\"dims\": [2,\n  2], \"matrix\": [", "broken").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(err_text(parse_state("{}", "x")).contains("line"));
        assert!(matches!(parse_state(r#"{"dims":[2],"matrix":[],"extra":1}"#, "x"), Err(Error::Parse { .. })));
    }

    fn err_text<T: std::fmt::Debug>(r: Result<T>) -> String {
        r.unwrap_err().to_string()
    }

    #[test]
    fn validation_names_the_field() {
        let text = r#"{"dims": [2], "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}"#;
        assert!(matches!(parse_state(text, "x"), Err(Error::Validation { field: "matrix", .. })));
        let text = r#"{"dims": [], "matrix": []}"#;
        assert!(matches!(parse_state(text, "x"), Err(Error::Validation { field: "dims", .. })));
        let text = r#"{"dims": [2, 2], "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}"#;
        assert!(matches!(
            parse_state(text, "x"),
            Err(Error::DimensionMismatch { field: "matrix", expected: 4, found: 2 })
        ));
        let text = r#"{"dims": [2], "matrix": [[[0.5, 0], [0.1, 0.2]], [[0.1, 0.2], [0.5, 0]]]}"#;
        let msg = err_text(parse_state(text, "x"));
        assert!(msg.contains("matrix") && msg.contains("Hermitian"), "{msg}");
    }

    #[test]
    fn basis_files() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let text = format!(r#"{{"label": "plus-minus", "vectors": [[[{h}, 0], [{h}, 0]], [[{h}, 0], [-{h}, 0]]]}}"#);
        let b = parse_basis(&text, "pm").unwrap();
        assert_eq!(b.label(), "plus-minus");
        assert!((b.vector(1)[1].re + h).abs() < 1e-15);
        let bad = r#"{"label": "bad", "vectors": [[[1, 0], [0, 0]], [[1, 0], [0, 0]]]}"#;
        assert!(matches!(parse_basis(bad, "bad"), Err(Error::Validation { field: "vectors", .. })));
    }

    #[test]
    fn bases_spec() {
        let ms = parse_bases("pauli-x, pauli-z").unwrap();
        assert_eq!(ms.len(), 2);
        assert!(matches!(parse_bases("pauli-x,nonsense"), Err(Error::Validation { field: "bases", .. })));
        assert!(parse_bases("pauli-x").is_err());

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q.json");
        std::fs::write(
            &path,
            r#"{"label": "c3", "vectors": [[[1,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[1,0]]]}"#,
        )
        .unwrap();
        let spec = format!("pauli-x,{}", path.display());
        assert!(matches!(parse_bases(&spec), Err(Error::DimensionMismatch { field: "bases", .. })));
    }
}
