//! Text formats.
//!
//! A cycle document is a block of `#`-prefixed header lines followed by the
//! cycle's symbols on one line, separated by single spaces:
//!
//! ```text
//! # ocycle cycle
//! # mode kperm
//! # n 3
//! # k 2
//! # s 1
//! # multiset -
//! # object_count 6
//! # string_length 6
//! 1 2 1 3 2 3
//! ```
//!
//! A list file holds one object per line, symbols separated by commas.
//! Readers also accept whitespace-separated symbols and, for alphabets up to
//! 9, runs of digits such as `12345`.

use crate::error::{Error, Result};
use crate::euler::OverlapCycle;
use crate::instance::{validate_params, InstanceParams, Mode, RawParams, Symbol, Word};

const MAGIC: &str = "# ocycle cycle";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDocument {
    pub params: InstanceParams,
    pub object_count: u64,
    pub symbols: Vec<Symbol>,
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

impl CycleDocument {
    pub fn from_cycle(c: &OverlapCycle) -> Self {
        CycleDocument {
            params: c.params.clone(),
            object_count: c.object_count,
            symbols: c.symbols.clone(),
        }
    }

    pub fn emit(&self) -> String {
        let p = &self.params;
        let multiset = match p.multiset_symbols() {
            Some(m) => join(m, ","),
            None => "-".to_string(),
        };
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        out.push_str(&format!("# mode {}\n", p.mode()));
        out.push_str(&format!("# n {}\n", p.n()));
        out.push_str(&format!("# k {}\n", p.k()));
        out.push_str(&format!("# s {}\n", p.s()));
        out.push_str(&format!("# multiset {multiset}\n"));
        out.push_str(&format!("# object_count {}\n", self.object_count));
        out.push_str(&format!("# string_length {}\n", self.symbols.len()));
        out.push_str(&join(&self.symbols, " "));
        out.push('\n');
        out
    }

    /// Header fields as unvalidated parameters.
    pub fn parse_header(text: &str) -> Result<RawParams> {
        Ok(Header::read(text)?.raw)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let header = Header::read(text)?;
        let params = validate_params(&header.raw)?;
        if header.mode != params.mode() {
            return Err(format_err("header mode disagrees with the multiset field"));
        }
        let mut symbols = Vec::new();
        for line in text
            .lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        {
            for tok in line.split_whitespace() {
                symbols.push(parse_symbol(tok)?);
            }
        }
        if symbols.len() as u64 != header.string_length {
            return Err(format_err(format!(
                "header says string_length {}, body has {} symbols",
                header.string_length,
                symbols.len()
            )));
        }
        if header.object_count * params.stride() as u64 != header.string_length {
            return Err(format_err(format!(
                "object_count {} does not match string_length {} at stride {}",
                header.object_count,
                header.string_length,
                params.stride()
            )));
        }
        Ok(CycleDocument {
            params,
            object_count: header.object_count,
            symbols,
        })
    }

    pub fn looks_like(text: &str) -> bool {
        text.starts_with(MAGIC)
    }
}

struct Header {
    raw: RawParams,
    mode: Mode,
    object_count: u64,
    string_length: u64,
}

impl Header {
    fn read(text: &str) -> Result<Self> {
        if !CycleDocument::looks_like(text) {
            return Err(format_err("missing '# ocycle cycle' header"));
        }
        let mut fields = std::collections::HashMap::new();
        for line in text.lines().skip(1).take_while(|l| l.starts_with('#')) {
            let mut parts = line[1..].split_whitespace();
            let (Some(key), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(format_err(format!("bad header line {line:?}")));
            };
            fields.insert(key.to_string(), value.to_string());
        }
        let get = |key: &str| {
            fields
                .get(key)
                .ok_or_else(|| format_err(format!("header lacks '{key}'")))
        };
        let num = |key: &str| -> Result<u64> {
            get(key)?
                .parse()
                .map_err(|_| format_err(format!("header '{key}' is not a number")))
        };
        let mode = match get("mode")?.as_str() {
            "kperm" => Mode::KPerm,
            "multiset" => Mode::Multiset,
            other => return Err(format_err(format!("unknown mode {other:?}"))),
        };
        let multiset = match get("multiset")?.as_str() {
            "-" => None,
            m => Some(
                m.split(',')
                    .map(|t| {
                        t.parse()
                            .map_err(|_| format_err(format!("bad multiset {m:?}")))
                    })
                    .collect::<Result<Vec<u64>>>()?,
            ),
        };
        Ok(Header {
            raw: RawParams {
                n: Some(num("n")?),
                k: Some(num("k")?),
                s: num("s")?,
                multiset,
            },
            mode,
            object_count: num("object_count")?,
            string_length: num("string_length")?,
        })
    }
}

fn join(symbols: &[Symbol], sep: &str) -> String {
    symbols
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn parse_symbol(tok: &str) -> Result<Symbol> {
    tok.trim()
        .parse::<Symbol>()
        .map_err(|_| format_err(format!("bad symbol {tok:?}")))
}

/// Symbols of one line: comma-separated, whitespace-separated, or a run of
/// single digits.
pub fn parse_symbols(line: &str) -> Result<Vec<Symbol>> {
    let line = line.trim();
    if line.contains(',') {
        line.split(',').map(parse_symbol).collect()
    } else if line.contains(char::is_whitespace) {
        line.split_whitespace().map(parse_symbol).collect()
    } else {
        line.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as Symbol)
                    .ok_or_else(|| format_err(format!("bad symbol {c:?} in {line:?}")))
            })
            .collect()
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// One object per non-empty, non-`#` line.
pub fn parse_list(text: &str) -> Result<Vec<Word>> {
    content_lines(text)
        .map(|l| parse_symbols(l).map(Word))
        .collect()
}

/// A bare cycle string, possibly spread over several lines.
pub fn parse_string(text: &str) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    for line in content_lines(text) {
        out.extend(parse_symbols(line)?);
    }
    Ok(out)
}

/// Number of content lines; used to tell lists from bare strings.
pub fn content_line_count(text: &str) -> usize {
    content_lines(text).count()
}

pub fn emit_list(words: &[Word]) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&join(&w.0, ","));
        out.push('\n');
    }
    out
}
