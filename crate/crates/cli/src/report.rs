//! Output records and their two renderings.
//!
//! A report is a list of records, each an ordered list of `key=value`
//! fields. The structured format prints one record per line, quoting values
//! that contain whitespace; the human format prints a single record as
//! aligned `key  value` lines and a run of records as an aligned table.

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Human,
    Structured,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Record {
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }
}

/// Strings rendered as a JSON-style array without spaces.
pub fn list<S: AsRef<str>>(items: &[S], quoted: bool) -> String {
    let parts: Vec<String> = items
        .iter()
        .map(|s| {
            if quoted {
                format!("\"{}\"", s.as_ref())
            } else {
                s.as_ref().to_string()
            }
        })
        .collect();
    format!("[{}]", parts.join(","))
}

/// Records sharing one set of keys are rendered together as a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Single(Record),
    Table(Vec<Record>),
}

pub fn render(out: &mut dyn Write, format: OutputFormat, blocks: &[Block]) -> io::Result<()> {
    for (i, block) in blocks.iter().enumerate() {
        match format {
            OutputFormat::Structured => {
                let records = match block {
                    Block::Single(r) => std::slice::from_ref(r),
                    Block::Table(rs) => rs.as_slice(),
                };
                for r in records {
                    let line: Vec<String> = r
                        .fields
                        .iter()
                        .map(|(k, v)| {
                            if v.contains(char::is_whitespace) {
                                format!("{k}={v:?}")
                            } else {
                                format!("{k}={v}")
                            }
                        })
                        .collect();
                    writeln!(out, "{}", line.join(" "))?;
                }
            }
            OutputFormat::Human => {
                if i > 0 {
                    writeln!(out)?;
                }
                match block {
                    Block::Single(r) => {
                        let w = r.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                        for (k, v) in &r.fields {
                            writeln!(out, "{k:<w$}  {v}")?;
                        }
                    }
                    Block::Table(rs) => table(out, rs)?,
                }
            }
        }
    }
    Ok(())
}

fn table(out: &mut dyn Write, rows: &[Record]) -> io::Result<()> {
    let Some(first) = rows.first() else {
        return Ok(());
    };
    let mut widths: Vec<usize> = first.fields.iter().map(|(k, _)| k.len()).collect();
    for r in rows {
        for (w, (_, v)) in widths.iter_mut().zip(&r.fields) {
            *w = (*w).max(v.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ")
    };
    writeln!(
        out,
        "{}",
        line(first.fields.iter().map(|(k, _)| k.as_str()).collect())
    )?;
    for r in rows {
        writeln!(
            out,
            "{}",
            line(r.fields.iter().map(|(_, v)| v.as_str()).collect())
        )?;
    }
    Ok(())
}
