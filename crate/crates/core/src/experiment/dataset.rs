use std::fs::File;
use std::io::Read;
use std::path::Path;

use csv::{ReaderBuilder, Trim};

use crate::error::{Error, Result};
use crate::evaluation::RegressionProblem;

fn parse_cell(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses a CSV dataset: every column but the last is a feature, the last is
/// the target. A first row made entirely of non-numeric cells is a header.
pub fn parse_dataset_csv<R: Read>(reader: R) -> Result<RegressionProblem> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader);

    let mut width: Option<usize> = None;
    let mut rows = Vec::new();
    let mut targets = Vec::new();
    for (index, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Dataset(e.to_string()))?;
        let line = record.position().map_or(index as u64 + 1, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if index == 0 && record.iter().all(|c| parse_cell(c).is_none()) {
            if record.len() < 2 {
                return Err(Error::Dataset(format!(
                    "line {line}: need at least 2 columns"
                )));
            }
            width = Some(record.len());
            continue;
        }
        let w = *width.get_or_insert(record.len());
        if w < 2 {
            return Err(Error::Dataset(format!(
                "line {line}: need at least 2 columns"
            )));
        }
        if record.len() != w {
            return Err(Error::Dataset(format!(
                "line {line}: expected {w} columns, found {}",
                record.len()
            )));
        }
        let mut values = Vec::with_capacity(w);
        for (col, cell) in record.iter().enumerate() {
            values.push(parse_cell(cell).ok_or_else(|| {
                Error::Dataset(format!(
                    "line {line}, column {}: `{cell}` is not a finite number",
                    col + 1
                ))
            })?);
        }
        targets.push(values.pop().expect("at least two columns"));
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(Error::Dataset("no data rows".into()));
    }
    RegressionProblem::new(rows, targets)
}

pub fn load_dataset_csv(path: impl AsRef<Path>) -> Result<RegressionProblem> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_dataset_csv(file).map_err(|e| match e {
        Error::Dataset(msg) => Error::Dataset(format!("{}: {msg}", path.display())),
        other => other,
    })
}
