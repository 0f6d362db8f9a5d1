//! Keyed numeric tables written as CSV or JSON.

use serde_json::{Map, Value};

use crate::CliResult;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(Option<f64>),
    Text(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        assert_eq!(row.len(), self.headers.len(), "row width");
        self.rows.push(row.into_iter().map(Cell::Num).collect());
    }

    pub fn push_text(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.headers.len(), "row width");
        self.rows.push(row.into_iter().map(Cell::Text).collect());
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    /// Numeric column; missing cells are `None`.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.column_index(name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match &r[i] {
                    Cell::Num(v) => *v,
                    Cell::Text(t) => t.parse().ok(),
                })
                .collect(),
        )
    }

    /// Empty cells stand for formulas whose certificate is not positive.
    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).map_err(csv_err)?;
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(Some(v)) => v.to_string(),
                    Cell::Num(None) => String::new(),
                    Cell::Text(t) => t.clone(),
                })
                .collect();
            w.write_record(&cells).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| csv_err(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Array of row objects keyed by header; missing cells are `null`.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .headers
                    .iter()
                    .zip(row)
                    .map(|(h, c)| {
                        let v = match c {
                            Cell::Num(v) => v.map_or(Value::Null, Value::from),
                            Cell::Text(t) => Value::from(t.as_str()),
                        };
                        (h.clone(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("table serializes")
    }
}

fn csv_err(e: csv::Error) -> crate::CliError {
    crate::CliError::Io(std::io::Error::other(e))
}
