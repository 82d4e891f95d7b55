//! Provenance sidecar: one line per vertex, 1-based vertex ids.
//!
//! ```text
//! v <id> COPY <copy> <inner-id>
//! v <id> NEW <s-index> <j>
//! v <id> BASE <base-id>
//! ```
//!
//! `copy` and `s-index` are 0-based; `j` runs over `1..r`. `BASE` lines
//! appear only for `d = 1`, where every vertex belongs to the base instance.

use std::io::{self, Write};

use hgcolor_core::VertexProvenance;

#[derive(Debug, thiserror::Error)]
pub enum ProvenanceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn write<W: Write + ?Sized>(provenance: &[VertexProvenance], out: &mut W) -> io::Result<()> {
    for (v, p) in provenance.iter().enumerate() {
        let id = v + 1;
        match *p {
            VertexProvenance::Base { index } => writeln!(out, "v {id} BASE {}", index + 1)?,
            VertexProvenance::Copy { copy, inner } => writeln!(out, "v {id} COPY {copy} {}", inner + 1)?,
            VertexProvenance::New { s_index, j } => writeln!(out, "v {id} NEW {s_index} {j}")?,
        }
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<Vec<VertexProvenance>, ProvenanceError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: &str| ProvenanceError::Parse {
            line,
            message: message.to_string(),
        };
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields[0] != "v" || fields.len() < 3 {
            return Err(err("expected `v <id> <kind> ...`"));
        }
        let id: usize = fields[1].parse().map_err(|_| err("bad vertex id"))?;
        if id != out.len() + 1 {
            return Err(err("vertex ids must be consecutive from 1"));
        }
        let num = |i: usize| -> Result<u64, ProvenanceError> {
            fields
                .get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err("bad or missing number"))
        };
        let expected_len = if fields[2] == "BASE" { 4 } else { 5 };
        if fields.len() != expected_len {
            return Err(err("wrong number of fields"));
        }
        let entry = match fields[2] {
            "BASE" => VertexProvenance::Base {
                index: one_based(num(3)?).ok_or_else(|| err("ids are 1-based"))?,
            },
            "COPY" => VertexProvenance::Copy {
                copy: u32::try_from(num(3)?).map_err(|_| err("copy index too large"))?,
                inner: one_based(num(4)?).ok_or_else(|| err("ids are 1-based"))?,
            },
            "NEW" => {
                let j = u32::try_from(num(4)?).map_err(|_| err("j too large"))?;
                if j == 0 {
                    return Err(err("j is 1-based"));
                }
                VertexProvenance::New { s_index: num(3)?, j }
            }
            _ => return Err(err("kind must be BASE, COPY or NEW")),
        };
        out.push(entry);
    }
    Ok(out)
}

fn one_based(id: u64) -> Option<u32> {
    id.checked_sub(1).and_then(|v| u32::try_from(v).ok())
}
