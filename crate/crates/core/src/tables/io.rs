//! Plain-text and JSON encodings of Cayley tables.
//!
//! Text: the order on the first line, then one line per row with the
//! products `a·0 .. a·(n-1)` separated by single spaces.
//! JSON: `{"n": 4, "cells": [[0,1,2,3], ...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{CayleyTable, TableError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl Serialize for CayleyTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableRepr {
            n: self.n,
            cells: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CayleyTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TableRepr::deserialize(d)?;
        if repr.cells.len() != repr.n {
            return Err(serde::de::Error::custom(format!(
                "declared n = {} but {} rows given",
                repr.n,
                repr.cells.len()
            )));
        }
        CayleyTable::from_rows(&repr.cells).map_err(serde::de::Error::custom)
    }
}

/// Which encoding a table file uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFile {
    Text,
    Json,
}

impl TableFile {
    /// JSON if the first non-blank character is `{`.
    pub fn detect(content: &str) -> TableFile {
        if content.trim_start().starts_with('{') {
            TableFile::Json
        } else {
            TableFile::Text
        }
    }

    pub fn parse(content: &str) -> Result<CayleyTable, FormatError> {
        match Self::detect(content) {
            TableFile::Json => CayleyTable::from_json(content),
            TableFile::Text => CayleyTable::from_text(content),
        }
    }
}

impl CayleyTable {
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(content: &str) -> Result<CayleyTable, FormatError> {
        let mut lines = content
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (first, header) = lines.next().ok_or(FormatError::Parse {
            line: 1,
            msg: "empty input".to_string(),
        })?;
        let n: usize = header.trim().parse().map_err(|_| FormatError::Parse {
            line: first + 1,
            msg: format!("expected the order, found {:?}", header.trim()),
        })?;
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| FormatError::Parse {
                        line: i + 1,
                        msg: format!("expected an element index, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(FormatError::Parse {
                    line: i + 1,
                    msg: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(FormatError::Parse {
                line: content.lines().count(),
                msg: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        Ok(CayleyTable::from_rows(&rows)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables always serialize")
    }

    pub fn from_json(content: &str) -> Result<CayleyTable, FormatError> {
        Ok(serde_json::from_str(content)?)
    }
}
