use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::io::Write;

#[derive(Debug, Clone)]
pub enum Cell {
    Real(f64),
    Complex(Complex64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Complex64> for Cell {
    fn from(v: Complex64) -> Self {
        Cell::Complex(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Named columns; a complex column becomes `re, im` in CSV when it is the
/// only complex one, else `<name>_re, <name>_im`.
#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn json_real(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or_else(|| Value::String(v.to_string()))
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn complex_columns(&self) -> Vec<bool> {
        let first = self.rows.first();
        (0..self.columns.len())
            .map(|k| matches!(first.map(|r| &r[k]), Some(Cell::Complex(_))))
            .collect()
    }

    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let is_complex = self.complex_columns();
        let single = is_complex.iter().filter(|&&c| c).count() == 1;
        let mut header = Vec::new();
        for (name, &cplx) in self.columns.iter().zip(&is_complex) {
            match (cplx, single) {
                (true, true) => header.extend(["re".to_string(), "im".to_string()]),
                (true, false) => header.extend([format!("{name}_re"), format!("{name}_im")]),
                (false, _) => header.push(name.to_string()),
            }
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = Vec::with_capacity(header.len());
            for cell in row {
                match cell {
                    Cell::Real(v) => rec.push(fmt_real(*v)),
                    Cell::Complex(z) => rec.extend([fmt_real(z.re), fmt_real(z.im)]),
                    Cell::Text(s) => rec.push(s.clone()),
                }
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self, subcommand: &str, params: Value) -> Value {
        let data: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Real(v) => json_real(*v),
                        Cell::Complex(z) => json!({ "re": json_real(z.re), "im": json_real(z.im) }),
                        Cell::Text(s) => Value::String(s.clone()),
                    };
                    obj.insert(name.to_string(), v);
                }
                Value::Object(obj)
            })
            .collect();
        json!({ "meta": { "subcommand": subcommand, "params": params }, "data": data })
    }
}
