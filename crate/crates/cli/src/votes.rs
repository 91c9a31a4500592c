//! Vote matrix ingestion.
//!
//! Votes arrive as CSV with a header row `item_id,<expert labels...>` and
//! one row per item; every cell after the id must be literally `0` or `1`.
//! There is no missing-vote convention: a row must carry all n opinions.

use std::path::Path;

use jury_core::OpinionVector;

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct VoteMatrix {
    pub experts: Vec<String>,
    pub item_ids: Vec<String>,
    pub rows: Vec<OpinionVector>,
}

pub fn read_votes(path: &Path, expected_n: usize) -> Result<VoteMatrix, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;

    let headers = reader
        .headers()
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?
        .clone();
    if headers.is_empty() || &headers[0] != "item_id" {
        return Err(CliError::Data(format!(
            "{}: first header column must be `item_id`",
            path.display()
        )));
    }
    let experts: Vec<String> = headers.iter().skip(1).map(str::to_owned).collect();
    if experts.len() != expected_n {
        return Err(CliError::Data(format!(
            "{}: found {} expert columns, config expects n = {expected_n}",
            path.display(),
            experts.len()
        )));
    }

    let mut item_ids = Vec::new();
    let mut rows = Vec::new();
    for (row_number, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let item_id = record[0].to_owned();
        let mut bits = Vec::with_capacity(expected_n);
        for (col, cell) in record.iter().skip(1).enumerate() {
            match cell {
                "0" => bits.push(false),
                "1" => bits.push(true),
                other => {
                    return Err(CliError::Data(format!(
                    "{}: row {} (item {item_id}), column {}: vote must be 0 or 1, got {other:?}",
                    path.display(),
                    row_number + 1,
                    experts[col],
                )))
                }
            }
        }
        rows.push(OpinionVector::new(bits).map_err(|e| {
            CliError::Data(format!("{}: row {}: {e}", path.display(), row_number + 1))
        })?);
        item_ids.push(item_id);
    }

    Ok(VoteMatrix {
        experts,
        item_ids,
        rows,
    })
}
