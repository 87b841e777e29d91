//! The report envelope shared by every verb, and its two renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const TOOL: &str = "terracini";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Aligned text: a header, scalar fields, then one row per record.
    Table,
    /// Pretty-printed JSON.
    Structured,
}

/// Digest over the argument vector and the bytes of every input file, in
/// the order they were read.
#[derive(Default)]
pub struct InputDigest {
    hasher: Sha256,
}

impl InputDigest {
    pub fn new(args: &[String]) -> Self {
        let mut d = InputDigest::default();
        for a in args {
            d.chunk(b"arg", a.as_bytes());
        }
        d
    }

    pub fn file(&mut self, path: &str, bytes: &[u8]) {
        self.chunk(b"path", path.as_bytes());
        self.chunk(b"file", bytes);
    }

    fn chunk(&mut self, tag: &[u8], bytes: &[u8]) {
        self.hasher.update(tag);
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn hex(&self) -> String {
        let out = self.hasher.clone().finalize();
        let mut s = String::from("sha256:");
        for b in out {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    CounterexampleFound,
}

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input_digest: String,
    pub status: Status,
    pub result: Value,
}

impl Envelope {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
                s.push('\n');
                s
            }
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let status = serde_json::to_value(self.status).expect("status serializes");
        let _ = writeln!(out, "# tool: {} {}", self.tool, self.version);
        let _ = writeln!(out, "# command: {}", self.command);
        let _ = writeln!(out, "# input: {}", self.input_digest);
        let _ = writeln!(out, "# status: {}", scalar(&status));
        match &self.result {
            Value::Object(map) => render_object(&mut out, map),
            Value::Array(items) => render_rows(&mut out, "result", items),
            other => {
                let _ = writeln!(out, "result: {}", scalar(other));
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Table cells hold scalars; nested values are summarized by size.
fn cell(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{} items]", items.len()),
        Value::Object(m) => format!("{{{} fields}}", m.len()),
        other => scalar(other),
    }
}

fn is_table(items: &[Value]) -> bool {
    !items.is_empty() && items.iter().all(Value::is_object)
}

fn render_object(out: &mut String, map: &Map<String, Value>) {
    let mut tables = Vec::new();
    for (k, v) in map {
        match v {
            Value::Array(items) if is_table(items) => tables.push((k, items)),
            _ => {
                let _ = writeln!(out, "{k}: {}", scalar(v));
            }
        }
    }
    for (k, items) in tables {
        render_rows(out, k, items);
    }
}

fn render_rows(out: &mut String, title: &str, items: &[Value]) {
    let mut cols: Vec<String> = Vec::new();
    for item in items {
        if let Value::Object(m) = item {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    let rows: Vec<Vec<String>> = items
        .iter()
        .map(|item| {
            cols.iter()
                .map(|c| item.get(c).map(cell).unwrap_or_else(|| "-".into()))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| rows.iter().map(|r| r[i].chars().count()).fold(c.len(), usize::max))
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "\n[{title}] {} rows", rows.len());
    let _ = writeln!(out, "{}", line(&cols));
    for r in &rows {
        let _ = writeln!(out, "{}", line(r));
    }
}
