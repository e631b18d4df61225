use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::Format;

/// One verified claim.
#[derive(Serialize, Debug, Clone)]
pub struct Record {
    pub fact: String,
    pub params: Vec<i64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Rows with a fixed column order; JSON lines use the column names as keys.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, rows: Vec::new() }
    }
}

pub fn records_table(records: &[Record]) -> Table {
    let mut t = Table::new(["fact", "params", "pass", "witness"].map(String::from).to_vec());
    for r in records {
        let params: Vec<String> = r.params.iter().map(|x| x.to_string()).collect();
        t.rows.push(vec![
            r.fact.clone().into(),
            params.join(" ").into(),
            r.pass.into(),
            r.witness.clone().map_or(Value::Null, Value::from),
        ]);
    }
    t
}

pub fn sink(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn emit(table: &Table, records: Option<&[Record]>, format: Format, w: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut c = csv::Writer::from_writer(w);
            c.write_record(&table.columns)?;
            for row in &table.rows {
                c.write_record(row.iter().map(cell))?;
            }
            c.flush()?;
        }
        Format::Json => {
            if let Some(records) = records {
                for r in records {
                    serde_json::to_writer(&mut *w, r)?;
                    writeln!(w)?;
                }
            } else {
                for row in &table.rows {
                    let obj: serde_json::Map<String, Value> =
                        table.columns.iter().cloned().zip(row.iter().cloned()).collect();
                    serde_json::to_writer(&mut *w, &obj)?;
                    writeln!(w)?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_csv_is_header_only() {
        let mut buf = Vec::new();
        emit(&records_table(&[]), Some(&[]), Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "fact,params,pass,witness\n");
        let mut buf = Vec::new();
        emit(&records_table(&[]), Some(&[]), Format::Json, &mut buf).unwrap();
        assert!(buf.is_empty());
    }

    #[test]
    fn failing_record_is_one_json_line() {
        let r = Record { fact: "gen_serre".into(), params: vec![1, 2, 1], pass: false, witness: Some("x".into()) };
        let mut buf = Vec::new();
        emit(&records_table(std::slice::from_ref(&r)), Some(std::slice::from_ref(&r)), Format::Json, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"fact\":\"gen_serre\",\"params\":[1,2,1],\"pass\":false,\"witness\":\"x\"}\n"
        );
    }
}
