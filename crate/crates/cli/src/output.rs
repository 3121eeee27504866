use std::io::Write;

use anyhow::Context;
use serde_json::Value;

use crate::args::{Common, Format};

/// A finished command: one rendering per format, plus the names of any
/// failed checks.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub csv: String,
    pub failures: Vec<String>,
}

pub fn emit(common: &Common, out: &Outcome) -> anyhow::Result<()> {
    let body = match common.format {
        Format::Text => out.text.clone(),
        Format::Csv => out.csv.clone(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json)?;
            s.push('\n');
            s
        }
    };
    match &common.output {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

/// CSV text from a header and rows, quoted where needed.
pub fn csv_table<I, R>(header: &[&str], rows: I) -> anyhow::Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
