//! USO-TEXT v1 and JSON orientation files.
//!
//! USO-TEXT v1 is a header line `uso <n>` followed by `2^n` lines, the
//! `k`-th holding the outmap bitmask of vertex `k` in decimal.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use uso_core::{CoordSet, Orientation, UsoError, MAX_DIM};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid JSON orientation: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] UsoError),
}

fn parse_error(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationJson {
    pub n: usize,
    pub outmap: Vec<u32>,
}

impl From<&Orientation> for OrientationJson {
    fn from(o: &Orientation) -> Self {
        OrientationJson {
            n: o.dim(),
            outmap: o.table().iter().map(|s| s.bits()).collect(),
        }
    }
}

pub fn to_text(o: &Orientation) -> String {
    let mut out = String::with_capacity(8 + 6 * o.vertex_count());
    writeln!(out, "uso {}", o.dim()).unwrap();
    for s in o.table() {
        writeln!(out, "{}", s.bits()).unwrap();
    }
    out
}

pub fn to_json(o: &Orientation) -> String {
    serde_json::to_string(&OrientationJson::from(o)).expect("plain data serializes")
}

/// Maps a table rejection onto the line of the offending vertex.
fn locate(err: UsoError) -> IoError {
    match err {
        UsoError::EdgeInconsistent { vertex, .. } | UsoError::OutmapOutOfRange { vertex, .. } => {
            parse_error(vertex.index() + 2, err.to_string())
        }
        other => IoError::Invalid(other),
    }
}

pub fn parse_text(input: &str) -> Result<Orientation, IoError> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty input, expected `uso <n>`"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["uso", n] => n
            .parse::<usize>()
            .map_err(|_| parse_error(1, format!("bad dimension `{n}`")))?,
        _ => {
            return Err(parse_error(
                1,
                format!("malformed header `{header}`, expected `uso <n>`"),
            ))
        }
    };
    if n == 0 || n > MAX_DIM {
        return Err(parse_error(
            1,
            format!("dimension {n} outside 1..={MAX_DIM}"),
        ));
    }
    let expected = 1usize << n;
    let mut table = Vec::with_capacity(expected);
    let mut last = 1;
    for (line, text) in lines {
        if text.is_empty() {
            last = line;
            continue;
        }
        if table.len() == expected {
            return Err(parse_error(
                line,
                format!("unexpected data after {expected} outmap lines"),
            ));
        }
        if line != table.len() + 2 {
            return Err(parse_error(line - 1, "blank line inside the outmap table"));
        }
        let bits: u32 = text
            .parse()
            .map_err(|_| parse_error(line, format!("`{text}` is not a decimal outmap")))?;
        table.push(CoordSet::from_bits(bits));
        last = line;
    }
    if table.len() != expected {
        return Err(parse_error(
            last + 1,
            format!(
                "expected {expected} outmap lines for n = {n}, found {}",
                table.len()
            ),
        ));
    }
    Orientation::from_outmaps(n, table).map_err(locate)
}

pub fn parse_json(input: &str) -> Result<Orientation, IoError> {
    let j: OrientationJson = serde_json::from_str(input)?;
    if j.n == 0 || j.n > MAX_DIM {
        return Err(UsoError::DimensionOutOfRange {
            n: j.n,
            max: MAX_DIM,
        }
        .into());
    }
    let table = j.outmap.into_iter().map(CoordSet::from_bits).collect();
    Ok(Orientation::from_outmaps(j.n, table)?)
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse_any(input: &str) -> Result<Orientation, IoError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn read_orientation(path: &Path) -> Result<Orientation, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_any(&text)
}

pub fn write_orientation(o: &Orientation, path: &Path) -> Result<(), IoError> {
    let text = if path.extension().is_some_and(|e| e == "json") {
        to_json(o) + "\n"
    } else {
        to_text(o)
    };
    fs::write(path, text).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}
