//! `i,value` sample files: optional header, LF or CRLF.

use csv::{ReaderBuilder, Trim};

pub fn parse(text: &str) -> Result<Vec<f64>, String> {
    let mut reader = ReaderBuilder::new().has_headers(false).flexible(true).trim(Trim::All).from_reader(text.as_bytes());
    let mut values = Vec::new();
    for (pos, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format!("malformed CSV: {e}"))?;
        let row = record.position().map_or(pos as u64 + 1, |p| p.line());
        let first = record.get(0).unwrap_or("");
        if pos == 0 && first.parse::<i64>().is_err() && record.len() == 2 {
            continue;
        }
        if record.len() != 2 {
            return Err(format!("row {row}: expected 2 fields"));
        }
        let index: i64 = first.parse().map_err(|_| format!("row {row}: invalid index '{first}'"))?;
        if index != values.len() as i64 {
            return Err(format!("row {row}: expected index {}, found {index}", values.len()));
        }
        let raw = &record[1];
        let value: f64 = raw.parse().map_err(|_| format!("row {row}: invalid value '{raw}'"))?;
        if !value.is_finite() {
            return Err(format!("row {row}: value is not finite"));
        }
        values.push(value);
    }
    if values.len() < 2 {
        return Err(format!("need samples for i = 0..n with n ≥ 1, found {} rows", values.len()));
    }
    Ok(values)
}
