//! Output plumbing shared by the subcommands: the run manifest, float
//! formatting and the three output formats.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Provenance embedded in every machine-readable result.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: String,
    pub config: Option<String>,
    pub parameters: Map<String, Value>,
    pub format: Format,
}

impl RunManifest {
    pub fn new(command: &str, config: Option<&std::path::Path>, format: Format) -> Self {
        RunManifest {
            command: command.to_string(),
            config: config.map(|p| p.display().to_string()),
            parameters: Map::new(),
            format,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "config": self.config,
            "parameters": self.parameters,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "format": self.format.name(),
        })
    }

    /// `# key: value` lines placed ahead of a CSV header.
    fn write_comment(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "# command: {}", self.command)?;
        if let Some(c) = &self.config {
            writeln!(out, "# config: {c}")?;
        }
        writeln!(
            out,
            "# parameters: {}",
            Value::Object(self.parameters.clone())
        )?;
        writeln!(out, "# tool_version: {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "# format: csv")
    }
}

/// Rounds to 15 significant digits and prints the shortest form, so that
/// `0.03125000000000002` reads as `0.03125`.
pub fn sig(x: f64) -> String {
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        "0".to_string()
    } else if !(1e-5..1e16).contains(&rounded.abs()) {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

/// Full precision for CSV: 17 significant digits.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number, or `null` for non-finite values. Negative zero prints as `0`.
pub fn num(x: f64) -> Value {
    let x = if x == 0.0 { 0.0 } else { x };
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Pretty JSON with object keys sorted and the manifest under `"manifest"`.
pub fn emit_json(manifest: &RunManifest, body: Value) -> io::Result<()> {
    let mut doc = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    doc.insert("manifest".into(), manifest.to_json());
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &Value::Object(doc))?;
    writeln!(out)
}

/// Manifest comment lines, then a quoted CSV table.
pub fn emit_csv(
    manifest: &RunManifest,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> io::Result<()> {
    let mut out = io::stdout().lock();
    manifest.write_comment(&mut out)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()
}

/// Whitespace-aligned columns for terminal output.
pub fn emit_table(header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = io::stdout().lock();
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
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_trims_roundoff() {
        assert_eq!(sig(0.03125000000000002), "0.03125");
        assert_eq!(sig(-0.0), "0");
        assert_eq!(sig(1.0 / 3.0), "0.333333333333333");
        assert_eq!(sig(2.5e-20), "2.5e-20");
        assert_eq!(sig(-1.5), "-1.5");
    }

    #[test]
    fn full_has_seventeen_digits() {
        assert_eq!(full(0.1), "1.0000000000000001e-1");
    }
}
