//! Report row formatting shared by the verification suites and the CLI.

use std::fmt;

/// Fixed CSV column layout of every emitted report.
pub const CSV_HEADER: &str = "experiment,parameter,value,expected,error,pass";

/// Deterministic 12-significant-digit formatting for report values.
pub fn fmt_sig12(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.11e}")
    }
}

#[derive(Debug, Clone)]
pub struct CsvRow {
    pub experiment: String,
    pub parameter: String,
    pub value: f64,
    pub expected: f64,
    pub error: f64,
    pub pass: bool,
}

impl fmt::Display for CsvRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.experiment,
            self.parameter,
            fmt_sig12(self.value),
            fmt_sig12(self.expected),
            fmt_sig12(self.error),
            self.pass
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_fixed_width_significand() {
        assert_eq!(fmt_sig12(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(fmt_sig12(-1.0 / 3.0), "-3.33333333333e-1");
        assert_eq!(fmt_sig12(f64::INFINITY), "inf");
    }

    #[test]
    fn row_renders_all_columns() {
        let row = CsvRow {
            experiment: "spectrum".into(),
            parameter: "k=1".into(),
            value: 1.0,
            expected: 2.0,
            error: 1.0,
            pass: false,
        };
        let line = row.to_string();
        assert_eq!(line.split(',').count(), 6);
        assert!(line.ends_with("false"));
    }
}
