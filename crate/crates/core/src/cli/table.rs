//! Fixed-format emitters. Floats use the shortest round-trip decimal
//! representation, `-0.0` is written as `0.0`, and non-finite values are
//! refused rather than written.

use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub fn format_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    ryu::Buffer::new().format_finite(x).to_owned()
}

fn finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(if x == 0.0 { 0.0 } else { x })
    } else {
        Err(Error::NonFinite(name.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i8> for Cell {
    fn from(x: i8) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl Cell {
    fn csv(&self, column: &str) -> Result<String> {
        Ok(match self {
            Cell::Num(x) => format_f64(finite(column, *x)?),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        })
    }

    fn json(&self, column: &str) -> Result<Value> {
        Ok(match self {
            Cell::Num(x) => Value::from(finite(column, *x)?),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
        })
    }
}

/// An ordered record: one JSON object or one CSV row.
#[derive(Debug, Clone, Default)]
pub struct Record(Vec<(&'static str, Cell)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, cell: impl Into<Cell>) -> Self {
        self.0.push((key, cell.into()));
        self
    }

    pub fn push(&mut self, key: &'static str, cell: impl Into<Cell>) {
        self.0.push((key, cell.into()));
    }

    pub fn to_json(&self) -> Result<Value> {
        let mut map = Map::new();
        for (k, c) in &self.0 {
            map.insert((*k).to_owned(), c.json(k)?);
        }
        Ok(Value::Object(map))
    }

    /// JSON object with extra non-tabular members appended.
    pub fn to_json_with(&self, extra: Vec<(&str, Value)>) -> Result<Value> {
        let mut v = self.to_json()?;
        if let Value::Object(map) = &mut v {
            for (k, val) in extra {
                map.insert(k.to_owned(), val);
            }
        }
        Ok(v)
    }
}

/// Rows sharing one header.
#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn single(record: &Record) -> Self {
        Self {
            header: record.0.iter().map(|(k, _)| *k).collect(),
            rows: vec![record.0.iter().map(|(_, c)| c.clone()).collect()],
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells = row
                .iter()
                .zip(&self.header)
                .map(|(c, h)| c.csv(h))
                .collect::<Result<Vec<_>>>()?;
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<Value> {
        self.rows
            .iter()
            .map(|row| {
                let mut map = Map::new();
                for (c, h) in row.iter().zip(&self.header) {
                    map.insert((*h).to_owned(), c.json(h)?);
                }
                Ok(Value::Object(map))
            })
            .collect::<Result<Vec<_>>>()
            .map(Value::Array)
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are finite");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_f64(1.0), "1.0");
        assert_eq!(format_f64(-0.0), "0.0");
        assert_eq!(format_f64(0.1), "0.1");
        assert_eq!(format_f64(1e-9), "1e-9");
        assert_eq!(format_f64(0.6426990816987241), "0.6426990816987241");
    }

    #[test]
    fn csv_and_json_refuse_non_finite() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![Cell::Num(1.0), Cell::Num(f64::NAN)]);
        assert!(matches!(t.to_csv(), Err(Error::NonFinite(c)) if c == "b"));
        assert!(t.to_json().is_err());
        let r = Record::new().with("x", f64::INFINITY);
        assert!(r.to_json().is_err());
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["label", "x", "n"]);
        t.push(vec!["CE".into(), 0.5.into(), 3usize.into()]);
        assert_eq!(t.to_csv().unwrap(), "label,x,n\nCE,0.5,3\n");
        let json = t.to_json().unwrap();
        assert_eq!(json[0]["label"], "CE");
        assert_eq!(json[0]["x"], 0.5);
    }

    #[test]
    fn float_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, 6.02e23, -7.25] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
