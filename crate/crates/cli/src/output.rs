use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const TOOL: &str = "dpl";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

/// A rectangular result with named columns.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner().context("flushing csv")?)?)
    }

    fn to_text(&self) -> String {
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                self.rows
                    .iter()
                    .map(|r| r[i].len())
                    .chain([self.columns[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut s = line(&self.columns);
        for r in &self.rows {
            s.push_str(&line(r));
        }
        s
    }
}

/// Everything a subcommand produced, renderable in each supported format.
#[derive(Debug, Clone)]
pub struct Output {
    pub command: String,
    /// Canonical description of the flags that determine the result.
    pub inputs: Value,
    /// Raw bytes of input files, folded into the digest.
    pub input_bytes: Vec<u8>,
    pub data: Value,
    pub table: Option<Table>,
    pub text: Option<String>,
    pub dot: Option<String>,
    /// Format used when `--format` is not given.
    pub default_format: Format,
    /// Extra artifacts requested through per-command flags.
    pub files: Vec<(PathBuf, Format)>,
    /// Determines the exit status.
    pub ok: bool,
}

impl Output {
    pub fn new(command: &str, inputs: Value, data: Value) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            input_bytes: Vec::new(),
            data,
            table: None,
            text: None,
            dot: None,
            default_format: Format::Json,
            files: Vec::new(),
            ok: true,
        }
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.command.as_bytes());
        h.update([0]);
        h.update(serde_json::to_vec(&self.inputs).expect("inputs serialize"));
        h.update([0]);
        h.update(&self.input_bytes);
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn meta(&self) -> Value {
        json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "input_digest": self.digest(),
        })
    }

    fn header_lines(&self) -> Vec<String> {
        vec![
            format!("tool: {TOOL} {VERSION}"),
            format!("command: {}", self.command),
            format!("inputs: {}", self.inputs),
            format!("input-digest: sha256:{}", self.digest()),
        ]
    }

    pub fn render(&self, format: Format) -> Result<String> {
        let commented = |prefix: &str, body: &str| {
            let mut s = String::new();
            for l in self.header_lines() {
                let _ = writeln!(s, "{prefix} {l}");
            }
            s.push_str(body);
            s
        };
        match format {
            Format::Json => {
                let doc = json!({ "meta": self.meta(), "data": self.data });
                Ok(serde_json::to_string_pretty(&doc)? + "\n")
            }
            Format::Csv => match &self.table {
                Some(t) => Ok(commented("#", &t.to_csv()?)),
                None => bail!("`{}` has no tabular output; use --format json or text", self.command),
            },
            Format::Dot => match &self.dot {
                Some(d) => Ok(commented("//", d)),
                None => bail!("`{}` has no graph output; use --format json or text", self.command),
            },
            Format::Text => {
                let body = match (&self.text, &self.table) {
                    (Some(t), _) => t.clone(),
                    (None, Some(t)) => t.to_text(),
                    (None, None) => serde_json::to_string_pretty(&self.data)? + "\n",
                };
                Ok(commented("#", &body))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Output {
        let mut out = Output::new("demo", json!({"n": 1}), json!([1, 2]));
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["x,y".into(), "2".into()]);
        out.table = Some(t);
        out
    }

    #[test]
    fn digest_depends_on_inputs_and_file_bytes() {
        let a = sample();
        let mut b = sample();
        b.inputs = json!({"n": 2});
        let mut c = sample();
        c.input_bytes = b"file".to_vec();
        assert_ne!(a.digest(), b.digest());
        assert_ne!(a.digest(), c.digest());
        assert_eq!(a.digest(), sample().digest());
    }

    #[test]
    fn csv_quotes_and_carries_the_header() {
        let s = sample().render(Format::Csv).unwrap();
        assert!(s.starts_with("# tool: dpl "));
        assert!(s.contains("input-digest: sha256:"));
        assert!(s.ends_with("a,b\n\"x,y\",2\n"));
    }

    #[test]
    fn unsupported_formats_are_errors() {
        assert!(sample().render(Format::Dot).is_err());
        let v: Value = serde_json::from_str(&sample().render(Format::Json).unwrap()).unwrap();
        assert_eq!(v["meta"]["command"], "demo");
        assert_eq!(v["data"], json!([1, 2]));
    }
}
