//! CSV rendering and atomic file output.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use qmeur_core::scenario::{Cell, Sweep};
use qmeur_core::BoundReport;

use crate::{Error, Result};

/// Significant digits of every floating-point CSV cell.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] and prints the shortest form that
/// round-trips, with an exponent outside `1e-5 <= |v| < 1e12` (as `%.12g`).
pub fn format_sig(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.*e}", SIGNIFICANT_DIGITS - 1).parse().expect("float formatting round-trips");
    let magnitude = rounded.abs();
    if rounded == 0.0 {
        "0".to_owned()
    } else if !(1e-5..1e12).contains(&magnitude) {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

fn cell(c: Cell) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        Cell::Real(v) => format_sig(v),
    }
}

/// Header row plus one row per sweep point.
pub fn sweep_csv(sweep: &Sweep) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(sweep.header())?;
    for row in &sweep.rows {
        w.write_record(sweep.cells(row).into_iter().map(cell))?;
    }
    w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))
}

/// Two-column `quantity,value` table of a report.
pub fn report_csv(report: &BoundReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "value"])?;
    w.write_record(["lhs".to_owned(), format_sig(report.lhs.bits())])?;
    for (k, v) in &report.bounds {
        w.write_record([k.to_string(), format_sig(*v)])?;
    }
    for (k, v) in &report.deltas {
        w.write_record([format!("delta_raw_{k}"), format_sig(*v)])?;
    }
    w.write_record(["shannon_sum".to_owned(), format_sig(report.shannon_sum)])?;
    for (k, v) in &report.memoryless {
        w.write_record([format!("memoryless_{k}"), format_sig(*v)])?;
    }
    w.write_record(["channel_b".to_owned(), format_sig(report.channel_b)])?;
    w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file behind.
pub fn write_atomic(path: impl AsRef<Path>, fill: impl FnOnce(&mut fs::File) -> io::Result<()>) -> Result<()> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    fill(tmp.as_file_mut()).and_then(|()| tmp.as_file_mut().flush()).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmeur_core::scenario::{run_one_memory_case, Axis};
    use qmeur_core::BoundOptions;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(-1e-17), "-1e-17");
        assert_eq!(format_sig(-4.440892098500626e-16), "-4.4408920985e-16");
        assert_eq!(format_sig(0.0000141272102709), "0.0000141272102709");
        assert_eq!(format_sig(2.5e13), "2.5e13");
        assert_eq!(format_sig(3.0), "3");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_sig(-1234.56789012345), "-1234.56789012");
        assert_eq!(format_sig(2.9999999999999996), "3");
        assert_eq!(format_sig(f64::NAN), "NaN");
    }

    #[test]
    fn sweep_table() {
        let s = run_one_memory_case(Axis::Fixed(0.0), Axis::grid((0.0, 1.0), 3), BoundOptions::default()).unwrap();
        let text = String::from_utf8(sweep_csv(&s).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "p,alpha,lhs,scb,thm1,thm2,xie,delta_raw_thm1,delta_raw_thm2");
        assert!(lines[1].starts_with("0,0,3,3,3,"), "{}", lines[1]);
        assert!(lines[2].starts_with("0,0.5,3,"), "{}", lines[2]);
    }

    #[test]
    fn atomic_write_replaces_whole_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, |f| f.write_all(b"first")).unwrap();
        write_atomic(&path, |f| f.write_all(b"second")).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "second");

        let err = write_atomic(&path, |f| {
            f.write_all(b"partial")?;
            Err(io::Error::other("boom"))
        });
        assert!(err.is_err());
        assert_eq!(fs::read_to_string(&path).unwrap(), "second");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
