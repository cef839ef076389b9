//! CSV ingestion.
//!
//! The first record is the header naming the attributes; every further record
//! is one object. Cells are opaque UTF-8 tokens, comma separated, with the
//! usual double-quote escaping. When `id_column` is set the first column holds
//! object labels instead of an attribute.

use std::io::Read;

use crate::error::{Error, Result};
use crate::model::InformationSystem;

#[derive(Clone, Copy, Debug, Default)]
pub struct TableOptions {
    pub id_column: bool,
}

pub fn parse_table(text: &str, options: TableOptions) -> Result<InformationSystem> {
    load_table(text.as_bytes(), options)
}

pub fn load_table<R: Read>(reader: R, options: TableOptions) -> Result<InformationSystem> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = csv.records();

    let header = match records.next() {
        None => {
            return Err(Error::Table {
                row: 1,
                column: None,
                message: "table is empty".into(),
            })
        }
        Some(record) => record.map_err(csv_error)?,
    };
    let header_row = line_of(&header, 1);
    let skip = usize::from(options.id_column);
    let attributes: Vec<String> = header.iter().skip(skip).map(str::to_owned).collect();
    if attributes.is_empty() {
        return Err(Error::Table {
            row: header_row,
            column: None,
            message: "header names no attributes".into(),
        });
    }
    for (i, name) in attributes.iter().enumerate() {
        let column = Some(i + skip + 1);
        if name.is_empty() {
            return Err(Error::Table {
                row: header_row,
                column,
                message: "attribute name is empty".into(),
            });
        }
        if attributes[..i].contains(name) {
            return Err(Error::Table {
                row: header_row,
                column,
                message: format!("duplicate attribute name `{name}`"),
            });
        }
    }

    let width = header.len();
    let mut labels = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    for record in records {
        let record = record.map_err(csv_error)?;
        let row = line_of(&record, header_row + rows.len() + 1);
        if record.len() != width {
            return Err(Error::Table {
                row,
                column: None,
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        if options.id_column {
            let label = record[0].to_owned();
            if labels.contains(&label) {
                return Err(Error::Table {
                    row,
                    column: Some(1),
                    message: format!("duplicate object label `{label}`"),
                });
            }
            labels.push(label);
        }
        rows.push(record.iter().skip(skip).map(str::to_owned).collect());
    }
    if rows.is_empty() {
        return Err(Error::Table {
            row: header_row + 1,
            column: None,
            message: "table has a header but no objects".into(),
        });
    }

    let system = InformationSystem::from_rows(attributes, &rows)?;
    if options.id_column {
        system.with_object_labels(labels)
    } else {
        Ok(system)
    }
}

fn line_of(record: &csv::StringRecord, fallback: usize) -> usize {
    record
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback)
}

fn csv_error(err: csv::Error) -> Error {
    let row = err.position().map(|p| p.line() as usize).unwrap_or(0);
    let column = match err.kind() {
        csv::ErrorKind::Utf8 { err, .. } => Some(err.field() + 1),
        _ => None,
    };
    Error::Table {
        row,
        column,
        message: err.to_string(),
    }
}
