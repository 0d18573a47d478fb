//! Experiment reports and their CSV / JSON renderings.

use serde::Serialize;

use crate::error::{Error, Result};

/// One report cell: a real number or exact text (e.g. a rational or a big integer).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Real(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Real(x) => Some(*x),
            Cell::Text(s) => match s.split_once('/') {
                Some((n, d)) => Some(n.parse::<f64>().ok()? / d.parse::<f64>().ok()?),
                None => s.parse().ok(),
            },
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Real(x) => format_real(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// `x` rounded to 12 significant digits, in shortest round-trip form.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded:?}")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub index: usize,
    pub quotient_size: usize,
    pub values: Vec<Cell>,
}

/// Limit the sequence is compared against, with its source: `"mahler"`,
/// `"lehmer-constant"` or `"none"`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReference {
    pub value: Option<f64>,
    pub source: String,
}

impl LimitReference {
    pub fn none() -> Self {
        LimitReference {
            value: None,
            source: "none".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    pub limit_reference: LimitReference,
}

impl ExperimentReport {
    pub fn new(
        experiment: &str,
        columns: &[&str],
        mut rows: Vec<ReportRow>,
        limit: LimitReference,
    ) -> Self {
        rows.sort_by_key(|r| r.index);
        ExperimentReport {
            experiment: experiment.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            limit_reference: limit,
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r.values[k]).collect())
    }

    /// Real values of a column (text cells are parsed).
    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        self.column(name)?.into_iter().map(Cell::as_f64).collect()
    }

    /// `experiment,index,quotient_size,<columns…>` followed by one line per row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![
            "experiment".to_string(),
            "index".into(),
            "quotient_size".into(),
        ];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for r in &self.rows {
            let mut rec = vec![
                self.experiment.clone(),
                r.index.to_string(),
                r.quotient_size.to_string(),
            ];
            rec.extend(r.values.iter().map(Cell::render));
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Invalid(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(2.0), "2.0");
        assert_eq!(format_real(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(format_real(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_real(-1e-20), "-1e-20");
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            ReportRow {
                index: 2,
                quotient_size: 4,
                values: vec![Cell::Real(0.5), Cell::Text("1/4".into())],
            },
            ReportRow {
                index: 1,
                quotient_size: 2,
                values: vec![Cell::Real(1.0), Cell::Text("1/2".into())],
            },
        ];
        let r = ExperimentReport::new("demo", &["a", "b"], rows, LimitReference::none());
        assert_eq!(
            r.to_csv().unwrap(),
            "experiment,index,quotient_size,a,b\ndemo,1,2,1.0,1/2\ndemo,2,4,0.5,1/4\n"
        );
        assert_eq!(r.column_f64("a").unwrap(), vec![1.0, 0.5]);
        assert!(r.to_json().contains("\"source\": \"none\""));
    }
}
