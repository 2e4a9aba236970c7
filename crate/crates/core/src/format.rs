//! Text formats for words.
//!
//! * plain: whitespace-separated tokens
//! * bfile: one `i value` line per letter
//! * columns: rows of `k` letters, right-aligned so that columns line up
//! * subscripted: plain format with `n_j` tokens

use std::fmt::{Display, Write};

use crate::error::{Error, Result};
use crate::word::{Letter, NatWord, SubLetter, SubWord};

pub fn render_plain<T: Display>(w: &[T]) -> String {
    let mut out = String::new();
    for (t, c) in w.iter().enumerate() {
        if t > 0 {
            out.push(' ');
        }
        write!(out, "{c}").unwrap();
    }
    out.push('\n');
    out
}

pub fn render_bfile<T: Display>(w: &[T]) -> String {
    render_bfile_from(w, 0)
}

/// b-file lines numbered from `offset`.
pub fn render_bfile_from<T: Display>(w: &[T], offset: usize) -> String {
    let mut out = String::new();
    for (t, c) in w.iter().enumerate() {
        writeln!(out, "{} {c}", t + offset).unwrap();
    }
    out
}

pub fn render_columns<T: Display>(w: &[T], k: usize) -> Result<String> {
    if k == 0 {
        return Err(Error::Parse("column width must be positive".into()));
    }
    let cells: Vec<String> = w.iter().map(|c| c.to_string()).collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells.chunks(k) {
        for (t, cell) in row.iter().enumerate() {
            if t > 0 {
                out.push(' ');
            }
            write!(out, "{cell:>width$}").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_plain(text: &str) -> Result<NatWord> {
    text.split_whitespace()
        .map(|tok| tok.parse::<Letter>().map_err(|e| Error::Parse(format!("{tok:?}: {e}"))))
        .collect()
}

/// Parses a b-file, requiring consecutive indices starting at 0.
pub fn parse_bfile(text: &str) -> Result<NatWord> {
    let mut w = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let mut parts = line.split_whitespace();
        let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("malformed b-file line {line:?}")));
        };
        let i: usize = i.parse().map_err(|e| Error::Parse(format!("{line:?}: {e}")))?;
        if i != w.len() {
            return Err(Error::Parse(format!("expected index {}, found {i}", w.len())));
        }
        w.push(v.parse().map_err(|e| Error::Parse(format!("{line:?}: {e}")))?);
    }
    Ok(w)
}

pub fn parse_subscripted(text: &str) -> Result<SubWord> {
    text.split_whitespace().map(str::parse::<SubLetter>).collect()
}
