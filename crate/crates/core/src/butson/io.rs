//! Matrix file formats.
//!
//! Text: optional `#` comment lines, then a header `BH <n> <k>`, then `n`
//! lines of `n` space-separated residues in `[0, k)`.
//!
//! JSON: `{"n": …, "k": …, "rows": [[…], …]}`.

use serde::{Deserialize, Serialize};

use super::LogMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub k: u32,
    pub rows: Vec<Vec<u32>>,
}

impl From<&LogMatrix> for MatrixFile {
    fn from(m: &LogMatrix) -> Self {
        MatrixFile {
            n: m.order(),
            k: m.phase(),
            rows: m.rows().map(|r| r.to_vec()).collect(),
        }
    }
}

impl TryFrom<MatrixFile> for LogMatrix {
    type Error = Error;

    fn try_from(f: MatrixFile) -> Result<Self> {
        if f.rows.len() != f.n {
            return Err(Error::Dimension(format!(
                "header says n={} but {} rows given",
                f.n,
                f.rows.len()
            )));
        }
        LogMatrix::from_rows(f.k, &f.rows)
    }
}

impl LogMatrix {
    pub fn to_text(&self) -> String {
        let mut out = format!("BH {} {}\n", self.order(), self.phase());
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixFile::from(self)).expect("plain data serialises")
    }

    /// Parses either format, choosing JSON when the first non-blank
    /// character is `{`.
    pub fn parse(input: &str) -> Result<LogMatrix> {
        if input.trim_start().starts_with('{') {
            LogMatrix::parse_json(input)
        } else {
            LogMatrix::parse_text(input)
        }
    }

    pub fn parse_json(input: &str) -> Result<LogMatrix> {
        let file: MatrixFile = serde_json::from_str(input).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        LogMatrix::try_from(file)
    }

    pub fn parse_text(input: &str) -> Result<LogMatrix> {
        let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (header_line, header) = loop {
            match lines.next() {
                None => {
                    return Err(Error::Parse {
                        line: input.lines().count().max(1),
                        message: "missing `BH <n> <k>` header".into(),
                    })
                }
                Some((_, l)) if l.is_empty() || l.starts_with('#') => continue,
                Some(found) => break found,
            }
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        if fields.len() != 3 || fields[0] != "BH" {
            return Err(parse_err(
                header_line,
                format!("expected `BH <n> <k>`, found `{header}`"),
            ));
        }
        let n: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(header_line, format!("bad order `{}`", fields[1])))?;
        let k: u32 = fields[2]
            .parse()
            .map_err(|_| parse_err(header_line, format!("bad phase `{}`", fields[2])))?;
        if k == 0 {
            return Err(parse_err(header_line, "phase must be positive".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        let mut last_line = header_line;
        for row in 0..n {
            let (line_no, line) = lines.next().ok_or_else(|| {
                parse_err(last_line + 1, format!("expected {n} rows, found {row}"))
            })?;
            last_line = line_no;
            let values = line
                .split_whitespace()
                .map(|tok| {
                    let v: u32 = tok
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad entry `{tok}`")))?;
                    if v >= k {
                        return Err(parse_err(line_no, format!("entry {v} outside Z_{k}")));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            if values.len() != n {
                return Err(parse_err(
                    line_no,
                    format!("expected {n} entries, found {}", values.len()),
                ));
            }
            entries.extend(values);
        }
        if let Some((line_no, extra)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(parse_err(
                line_no,
                format!("unexpected trailing content `{extra}`"),
            ));
        }
        LogMatrix::new(n, k, entries)
    }
}
