use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

/// Prints `value` as a JSON object tagged with the schema version.
pub fn print_json<T: Serialize>(kind: &str, value: &T) -> Result<(), crate::Failure> {
    let mut obj = match serde_json::to_value(value)? {
        Value::Object(map) => map,
        other => {
            let mut map = serde_json::Map::new();
            map.insert("value".into(), other);
            map
        }
    };
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("kind".into(), json!(kind));
    let text = serde_json::to_string_pretty(&Value::Object(obj))?;
    writeln!(io::stdout().lock(), "{text}")?;
    Ok(())
}

/// Writes rows under a header as CSV.
pub fn write_csv<W: Write, R: Serialize>(out: W, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<(), crate::Failure> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_series(path: &std::path::Path) -> Result<Vec<(f64, f64)>, crate::Failure> {
    let mut r = csv::Reader::from_path(path)?;
    let mut series = Vec::new();
    for rec in r.deserialize() {
        let (x, y): (f64, f64) = rec?;
        series.push((x, y));
    }
    Ok(series)
}
