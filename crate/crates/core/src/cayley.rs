//! Multiplication tables over labelled elements, with CSV/JSON export.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::band::{band_mul, reference_symbols, BandElement, Wreath};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// A product table. A cell whose product is not among the row/column
/// elements keeps its label but has no index, and the table is not closed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CayleyTable {
    labels: Vec<String>,
    cells: Vec<Vec<String>>,
    #[serde(skip)]
    index: Vec<Vec<Option<usize>>>,
}

impl CayleyTable {
    pub fn build<T: Eq + Hash>(
        elems: &[T],
        label: impl Fn(&T) -> String,
        op: impl Fn(&T, &T) -> Result<T>,
    ) -> Result<Self> {
        let pos: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if pos.len() != elems.len() {
            return Err(Error::Domain("duplicate elements in table".into()));
        }
        let mut cells = Vec::with_capacity(elems.len());
        let mut index = Vec::with_capacity(elems.len());
        for x in elems {
            let mut row = Vec::with_capacity(elems.len());
            let mut irow = Vec::with_capacity(elems.len());
            for y in elems {
                let xy = op(x, y)?;
                irow.push(pos.get(&xy).copied());
                row.push(label(&xy));
            }
            cells.push(row);
            index.push(irow);
        }
        Ok(Self {
            labels: elems.iter().map(label).collect(),
            cells,
            index,
        })
    }

    /// The table of the band product on `elems`.
    pub fn of_band(elems: &[BandElement]) -> Result<Self> {
        Self::build(elems, |x| x.label(), band_mul)
    }

    /// The wreath band on the nine formal elements
    /// `e, p[t], p[u], q[t], q[u], r[t;u], r[u;t], r[t;w], r[v;w]`.
    pub fn symbolic_wreath() -> Self {
        let elems = reference_symbols();
        Self::build(&elems, |x| x.to_string(), |x, y| Ok(x.mul(y)))
            .expect("formal products cannot fail")
    }

    /// The table of every formal element over `symbols`, which is closed.
    pub fn symbolic_closure(symbols: &[char]) -> Self {
        let elems: Vec<Wreath<char>> = crate::band::symbolic_closure(symbols);
        Self::build(&elems, |x| x.to_string(), |x, y| Ok(x.mul(y)))
            .expect("formal products cannot fail")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn cell(&self, row: usize, col: usize) -> &str {
        &self.cells[row][col]
    }

    /// Cell by row and column label.
    pub fn lookup(&self, row: &str, col: &str) -> Option<&str> {
        let i = self.labels.iter().position(|l| l == row)?;
        let j = self.labels.iter().position(|l| l == col)?;
        Some(self.cell(i, j))
    }

    pub fn is_closed(&self) -> bool {
        self.index.iter().flatten().all(Option::is_some)
    }

    pub fn semigroup(&self) -> Result<FiniteSemigroup> {
        let n = self.size();
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in self.index.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                table.push(c.ok_or_else(|| {
                    Error::NotClosed(format!(
                        "{} * {} = {}",
                        self.labels[i], self.labels[j], self.cells[i][j]
                    ))
                })?);
            }
        }
        FiniteSemigroup::new(n, table)
    }

    /// Header row of column labels, then one row per element led by its label.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("*").chain(self.labels.iter().map(String::as_str));
        w.write_record(header).map_err(csv_err)?;
        for (label, row) in self.labels.iter().zip(&self.cells) {
            let rec = std::iter::once(label.as_str()).chain(row.iter().map(String::as_str));
            w.write_record(rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("labels are UTF-8"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "labels": self.labels,
            "cells": self.cells,
            "closed": self.is_closed(),
        })
    }

    pub fn to_text(&self) -> String {
        let width = self
            .labels
            .iter()
            .chain(self.cells.iter().flatten())
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1)
            .max(1);
        let pad = |s: &str| format!("{s:<width$}");
        let mut out = pad("*");
        for l in &self.labels {
            out.push_str(" | ");
            out.push_str(&pad(l));
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.cells) {
            out.push_str(&pad(l));
            for c in row {
                out.push_str(" | ");
                out.push_str(&pad(c));
            }
            out.push('\n');
        }
        out
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_element() {
        let t = CayleyTable::build(&['e'], |c| c.to_string(), |_, _| Ok('e')).unwrap();
        assert_eq!(t.cell(0, 0), "e");
        assert!(t.is_closed());
        assert!(t.semigroup().unwrap().is_associative());
    }

    #[test]
    fn symbolic_cells() {
        let t = CayleyTable::symbolic_wreath();
        assert_eq!(t.size(), 9);
        assert_eq!(t.lookup("q[t]", "r[t;u]"), Some("q[u]"));
        assert_eq!(t.lookup("r[v;w]", "q[t]"), Some("r[v;t]"));
        assert!(!t.is_closed());
        assert!(t.semigroup().is_err());
        let c = CayleyTable::symbolic_closure(&['t', 'u', 'v', 'w']);
        assert!(c.is_closed());
        assert!(c.semigroup().unwrap().is_associative());
    }

    #[test]
    fn csv_layout() {
        let t = CayleyTable::build(&[0u8, 1], |x| format!("x{x}"), |a, _| Ok(*a)).unwrap();
        assert_eq!(t.to_csv().unwrap(), "*,x0,x1\nx0,x0,x0\nx1,x1,x1\n");
        assert_eq!(t.to_json()["closed"], true);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(CayleyTable::build(&[1, 1], |x| x.to_string(), |a, _| Ok(*a)).is_err());
    }
}
