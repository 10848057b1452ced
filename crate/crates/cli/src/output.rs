//! Records and the two output formats.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned, human-readable columns.
    Table,
    /// One JSON object per line.
    Jsonl,
}

/// One line of machine output: what was asked, what came out, and the
/// tolerances in force.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub tolerances: Map<String, Value>,
}

impl OutputRecord {
    pub fn new(command: &'static str, tolerances: &Map<String, Value>) -> Self {
        Self {
            command,
            inputs: Map::new(),
            outputs: Map::new(),
            tolerances: tolerances.clone(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Writes the records. In table form a single record is shown as key/value
/// pairs and several records as one row each (outputs only, inputs in a
/// leading comment line).
pub fn emit(records: &[OutputRecord], format: Format, mut out: impl Write) -> io::Result<()> {
    match format {
        Format::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                writeln!(out)?;
            }
        }
        Format::Table if records.len() == 1 => {
            let r = &records[0];
            let pairs: Vec<(String, String)> = r
                .inputs
                .iter()
                .chain(&r.outputs)
                .chain(&r.tolerances)
                .map(|(k, v)| (k.clone(), cell(v)))
                .collect();
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in pairs {
                writeln!(out, "{k:<width$}  {v}")?;
            }
        }
        Format::Table => {
            let Some(first) = records.first() else {
                return Ok(());
            };
            let inputs: Vec<String> = first.inputs.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
            if !inputs.is_empty() {
                writeln!(out, "# {} {}", first.command, inputs.join(" "))?;
            }
            let headers: Vec<&String> = first.outputs.keys().collect();
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    headers
                        .iter()
                        .map(|h| r.outputs.get(*h).map(cell).unwrap_or_default())
                        .collect()
                })
                .collect();
            let widths: Vec<usize> = headers
                .iter()
                .enumerate()
                .map(|(i, h)| rows.iter().map(|row| row[i].len()).max().unwrap_or(0).max(h.len()))
                .collect();
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(headers.iter().map(|h| h.as_str()).collect()))?;
            for row in &rows {
                writeln!(out, "{}", line(row.iter().map(|c| c.as_str()).collect()))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_record_table_is_key_value() {
        let r = OutputRecord::new("eval", &Map::new())
            .input("z", 1.5)
            .output("value", 0.25);
        let mut buf = Vec::new();
        emit(&[r], Format::Table, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "z      1.5\nvalue  0.25\n");
    }

    #[test]
    fn jsonl_is_one_object_per_line() {
        let rs = vec![
            OutputRecord::new("zeros", &Map::new()).output("n", 1),
            OutputRecord::new("zeros", &Map::new()).output("n", 2),
        ];
        let mut buf = Vec::new();
        emit(&rs, Format::Jsonl, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["command"], "zeros");
        }
    }

    #[test]
    fn floats_survive_a_round_trip() {
        let x = 0.1f64 + 0.2;
        let r = OutputRecord::new("eval", &Map::new()).output("value", x);
        let mut buf = Vec::new();
        emit(std::slice::from_ref(&r), Format::Jsonl, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["outputs"]["value"].as_f64().unwrap(), x);
        let mut table = Vec::new();
        emit(&[r], Format::Table, &mut table).unwrap();
        let text = String::from_utf8(table).unwrap();
        assert_eq!(text.split_whitespace().last().unwrap().parse::<f64>().unwrap(), x);
    }
}
