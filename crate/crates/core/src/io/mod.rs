//! Text formats for codes and permutations.
//!
//! Every file starts with optional `#` comment lines, then a header:
//!
//! * `bin n k`, followed by `k` rows of `n` characters from `{0,1}`;
//! * `z4 n k`, followed by `k` rows of `n` digits from `{0,1,2,3}`;
//! * `qc t m`, followed by `t` tokens (binary strings or `0o` octal);
//! * `perm k`, followed by the `2^k` table values, 16 per line.
//!
//! Spaces inside `bin` and `z4` rows group columns into blocks. The grouping
//! of the first row is kept so that emitting a parsed file reproduces it.

use std::fmt::Write as _;
use std::path::Path;

use crate::boolean::BooleanPermutation;
use crate::code::LinearCode;
use crate::construct::{BitOrder, QcSpec};
use crate::gf2::{BitMatrix, BitVector};
use crate::z4::{Z4Code, Z4Matrix};
use crate::{Error, Result};

const PERM_VALUES_PER_LINE: usize = 16;

#[derive(Debug, Clone)]
pub enum CodeBody {
    Binary(LinearCode),
    Z4(Z4Code),
    Qc { spec: QcSpec, tokens: Vec<String> },
    Perm(BooleanPermutation),
}

#[derive(Debug, Clone)]
pub struct CodeFile {
    /// Leading comment lines, without the `#`.
    pub comments: Vec<String>,
    pub body: CodeBody,
    /// Block widths for `bin` and `z4` rows; one block when ungrouped.
    pub groups: Vec<usize>,
}

impl CodeFile {
    pub fn new(body: CodeBody) -> Self {
        let groups = match &body {
            CodeBody::Binary(c) => vec![c.n()],
            CodeBody::Z4(c) => vec![c.n()],
            _ => Vec::new(),
        };
        CodeFile {
            comments: Vec::new(),
            body,
            groups,
        }
    }

    pub fn with_groups(mut self, groups: Vec<usize>) -> Result<Self> {
        let n = match &self.body {
            CodeBody::Binary(c) => c.n(),
            CodeBody::Z4(c) => c.n(),
            _ => {
                return Err(Error::Precondition(
                    "only bin and z4 files have column groups".into(),
                ))
            }
        };
        if groups.iter().sum::<usize>() != n || groups.contains(&0) {
            return Err(Error::Dimension(format!(
                "groups {groups:?} do not cover {n} columns"
            )));
        }
        self.groups = groups;
        Ok(self)
    }

    pub fn binary(&self) -> Option<&LinearCode> {
        match &self.body {
            CodeBody::Binary(c) => Some(c),
            _ => None,
        }
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "#{c}");
        }
        match &self.body {
            CodeBody::Binary(c) => {
                let g = c.generator();
                let _ = writeln!(out, "bin {} {}", c.n(), c.k());
                for i in 0..g.nrows() {
                    let row: String = (0..g.ncols())
                        .map(|j| if g.get(i, j) { '1' } else { '0' })
                        .collect();
                    let _ = writeln!(out, "{}", grouped(&row, &self.groups));
                }
            }
            CodeBody::Z4(c) => {
                let g = c.generator();
                let _ = writeln!(out, "z4 {} {}", c.n(), c.k());
                for i in 0..g.nrows() {
                    let row: String = (0..g.ncols())
                        .map(|j| char::from(b'0' + g.get(i, j)))
                        .collect();
                    let _ = writeln!(out, "{}", grouped(&row, &self.groups));
                }
            }
            CodeBody::Qc { spec, tokens } => {
                let _ = writeln!(out, "qc {} {}", spec.t(), spec.m());
                let _ = writeln!(out, "{}", tokens.join(" "));
            }
            CodeBody::Perm(p) => {
                let _ = writeln!(out, "perm {}", p.k());
                for chunk in p.table().chunks(PERM_VALUES_PER_LINE) {
                    let line: Vec<String> = chunk.iter().map(u32::to_string).collect();
                    let _ = writeln!(out, "{}", line.join(" "));
                }
            }
        }
        out
    }
}

fn grouped(row: &str, groups: &[usize]) -> String {
    let mut out = String::with_capacity(row.len() + groups.len());
    let mut at = 0;
    for (i, &w) in groups.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&row[at..at + w]);
        at += w;
    }
    out
}

pub fn parse(text: &str) -> Result<CodeFile> {
    let mut comments = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .peekable();
    while let Some((_, l)) = lines.peek() {
        if let Some(c) = l.strip_prefix('#') {
            comments.push(c.to_string());
            lines.next();
        } else if l.trim().is_empty() {
            lines.next();
        } else {
            break;
        }
    }
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing header"))?;
    let body: Vec<(usize, &str)> = lines
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    let fields: Vec<&str> = header.split_whitespace().collect();
    let num = |i: usize| -> Result<usize> {
        fields
            .get(i)
            .ok_or_else(|| Error::parse(hline, "header is missing a number"))?
            .parse()
            .map_err(|_| Error::parse(hline, format!("bad number {:?}", fields[i])))
    };
    if fields.len()
        != if fields.first() == Some(&"perm") {
            2
        } else {
            3
        }
    {
        return Err(Error::parse(hline, format!("bad header {header:?}")));
    }

    let mut groups = Vec::new();
    let body = match fields[0] {
        "bin" => {
            let (n, k) = (num(1)?, num(2)?);
            let (rows, g) = matrix_rows(&body, n, k, b'1')?;
            groups = g;
            let bits: Vec<BitVector> = rows
                .iter()
                .map(|r| BitVector::from_bools(&r.iter().map(|&d| d == 1).collect::<Vec<_>>()))
                .collect();
            let m = BitMatrix::from_rows(&bits).map_err(|e| Error::parse(hline, e.to_string()))?;
            CodeBody::Binary(LinearCode::new(m).map_err(|e| Error::parse(hline, e.to_string()))?)
        }
        "z4" => {
            let (n, k) = (num(1)?, num(2)?);
            let (rows, g) = matrix_rows(&body, n, k, b'3')?;
            groups = g;
            let m = Z4Matrix::from_rows(&rows).map_err(|e| Error::parse(hline, e.to_string()))?;
            CodeBody::Z4(Z4Code::new(m))
        }
        "qc" => {
            let (t, m) = (num(1)?, num(2)?);
            let tokens: Vec<String> = body
                .iter()
                .flat_map(|(_, l)| l.split(|c: char| c.is_whitespace() || c == ','))
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            let first = body.first().map_or(hline, |b| b.0);
            if tokens.len() != t {
                return Err(Error::parse(
                    first,
                    format!("expected {t} tokens, found {}", tokens.len()),
                ));
            }
            let spec = QcSpec::parse_row(m, &tokens.join(" "), BitOrder::default())
                .map_err(|e| Error::parse(first, e.to_string()))?;
            CodeBody::Qc { spec, tokens }
        }
        "perm" => {
            let k = num(1)?;
            let mut table = Vec::new();
            for (ln, l) in &body {
                for tok in l.split_whitespace() {
                    table.push(
                        tok.parse::<u32>()
                            .map_err(|_| Error::parse(*ln, format!("bad value {tok:?}")))?,
                    );
                }
            }
            let p = BooleanPermutation::new(k, table)
                .map_err(|e| Error::parse(hline, e.to_string()))?;
            CodeBody::Perm(p)
        }
        other => return Err(Error::parse(hline, format!("unknown format {other:?}"))),
    };
    Ok(CodeFile {
        comments,
        body,
        groups,
    })
}

/// Rows of digits at most `max_digit`, with the grouping of the first row.
fn matrix_rows(
    body: &[(usize, &str)],
    n: usize,
    k: usize,
    max_digit: u8,
) -> Result<(Vec<Vec<u8>>, Vec<usize>)> {
    if body.len() != k {
        let line = body.last().map_or(1, |b| b.0);
        return Err(Error::parse(
            line,
            format!("expected {k} rows, found {}", body.len()),
        ));
    }
    let mut rows = Vec::with_capacity(k);
    let mut groups = Vec::new();
    for (idx, (ln, l)) in body.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for part in l.split_whitespace() {
            if idx == 0 {
                groups.push(part.len());
            }
            for b in part.bytes() {
                if !(b'0'..=max_digit).contains(&b) {
                    return Err(Error::parse(
                        *ln,
                        format!("unexpected character {:?}", b as char),
                    ));
                }
                row.push(b - b'0');
            }
        }
        if row.len() != n {
            return Err(Error::parse(
                *ln,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    Ok((rows, groups))
}

pub fn read_file(path: impl AsRef<Path>) -> Result<CodeFile> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn write_file(path: impl AsRef<Path>, file: &CodeFile) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, file.emit()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
