//! CSV and JSON forms of a Grundy sequence.
//!
//! CSV has the header `n,grundy` and one row per heap size. JSON is
//! `{"ruleset": "...", "values": [...]}` with `values[0] = G(1)`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::GrundyValue;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("row {row} has heap size {found}, expected {expected}")]
    OutOfOrder {
        row: usize,
        found: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub grundy: GrundyValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub ruleset: String,
    pub values: Vec<GrundyValue>,
}

/// Writes `(n, G(n))` for every row, in the order given.
pub fn write_rows_csv<W: Write>(
    rows: impl IntoIterator<Item = Row>,
    out: W,
) -> Result<(), ExportError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Writes `G(1..)` as CSV.
pub fn write_csv<W: Write>(values: &[GrundyValue], out: W) -> Result<(), ExportError> {
    let rows = values
        .iter()
        .enumerate()
        .map(|(i, &grundy)| Row { n: i + 1, grundy });
    write_rows_csv(rows, out)
}

/// Reads back a sequence written by [`write_csv`]; rows must be `1, 2, ...`.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<GrundyValue>, ExportError> {
    let mut values = Vec::new();
    for (i, row) in csv::Reader::from_reader(input)
        .deserialize::<Row>()
        .enumerate()
    {
        let row = row?;
        if row.n != i + 1 {
            return Err(ExportError::OutOfOrder {
                row: i + 1,
                found: row.n,
                expected: i + 1,
            });
        }
        values.push(row.grundy);
    }
    Ok(values)
}

pub fn to_json(ruleset: &str, values: &[GrundyValue]) -> String {
    let doc = SequenceJson {
        ruleset: ruleset.to_string(),
        values: values.to_vec(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<SequenceJson, ExportError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&[0, 1, 2], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,grundy\n1,0\n2,1\n3,2\n");
    }

    #[test]
    fn csv_rejects_gaps() {
        let err = read_csv("n,grundy\n1,0\n3,1\n".as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            ExportError::OutOfOrder {
                row: 2,
                found: 3,
                ..
            }
        ));
    }

    #[test]
    fn json_layout() {
        assert_eq!(
            to_json("1,2", &[0, 1]),
            r#"{"ruleset":"1,2","values":[0,1]}"#
        );
    }

    proptest! {
        #[test]
        fn round_trips(values in prop::collection::vec(0u32..100_000, 0..200)) {
            let mut buf = Vec::new();
            write_csv(&values, &mut buf).unwrap();
            prop_assert_eq!(read_csv(buf.as_slice()).unwrap(), values.clone());
            let doc = from_json(&to_json("1,4", &values)).unwrap();
            prop_assert_eq!(doc.values, values);
        }
    }
}
