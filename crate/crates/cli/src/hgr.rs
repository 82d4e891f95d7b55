//! The `hgr` text format.
//!
//! ```text
//! c optional comment lines
//! p hgr <n> <m> <r>
//! <m lines of r space-separated 1-based vertex ids>
//! ```
//!
//! Writing is canonical: ids ascend within a line, lines are in
//! lexicographic order, comments are not preserved, and every line ends in
//! `\n`. Parsing accepts ids in any order within a line, skips blank lines
//! and comments, and drops duplicate edge lines (reported through
//! [`Hypergraph::duplicates_dropped`]).

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use hgcolor_core::Hypergraph;

#[derive(Debug, thiserror::Error)]
pub enum HgrError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn parse_error(line: usize, message: impl Into<String>) -> HgrError {
    HgrError::Parse {
        line,
        message: message.into(),
    }
}

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

pub fn parse(text: &str) -> Result<Hypergraph, HgrError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || is_comment(trimmed) {
            continue;
        }
        let Some((n, m, r)) = header else {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 5 || fields[0] != "p" || fields[1] != "hgr" {
                return Err(parse_error(line, "expected header `p hgr <n> <m> <r>`"));
            }
            let number = |s: &str, what: &str| {
                s.parse::<usize>()
                    .map_err(|_| parse_error(line, format!("bad {what} `{s}`")))
            };
            let (n, m, r) = (
                number(fields[2], "vertex count")?,
                number(fields[3], "edge count")?,
                number(fields[4], "uniformity")?,
            );
            if r < 2 {
                return Err(parse_error(line, "uniformity must be at least 2"));
            }
            if n > u32::MAX as usize {
                return Err(parse_error(line, "vertex count exceeds the 32-bit id range"));
            }
            header = Some((n, m, r));
            continue;
        };
        if edges.len() == m {
            return Err(parse_error(line, format!("more than the {m} edge lines declared")));
        }
        let mut edge = Vec::with_capacity(r);
        for token in trimmed.split_whitespace() {
            let id: u64 = token
                .parse()
                .map_err(|_| parse_error(line, format!("bad vertex id `{token}`")))?;
            if id == 0 || id > n as u64 {
                return Err(parse_error(line, format!("vertex id {id} outside 1..={n}")));
            }
            edge.push((id - 1) as u32);
        }
        if edge.len() != r {
            return Err(parse_error(
                line,
                format!("edge has {} vertices, expected {r}", edge.len()),
            ));
        }
        edge.sort_unstable();
        if edge.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_error(line, "edge repeats a vertex"));
        }
        edges.push(edge);
    }
    let Some((n, m, r)) = header else {
        return Err(parse_error(last_line.max(1), "missing header"));
    };
    if edges.len() != m {
        return Err(parse_error(
            last_line.max(1),
            format!("found {} edge lines, header declares {m}", edges.len()),
        ));
    }
    Hypergraph::new(n, r, edges).map_err(|e| parse_error(last_line.max(1), e.to_string()))
}

pub fn write<W: Write + ?Sized>(h: &Hypergraph, out: &mut W) -> io::Result<()> {
    writeln!(out, "p hgr {} {} {}", h.num_vertices(), h.num_edges(), h.uniformity())?;
    let mut line = String::new();
    for edge in h.edges() {
        line.clear();
        for (i, v) in edge.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&(v + 1).to_string());
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn to_string(h: &Hypergraph) -> String {
    let mut buf = Vec::new();
    write(h, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn read_file(path: &Path) -> Result<Hypergraph, HgrError> {
    parse(&fs::read_to_string(path)?)
}

pub fn write_file(path: &Path, h: &Hypergraph) -> io::Result<()> {
    let mut out = io::BufWriter::new(fs::File::create(path)?);
    write(h, &mut out)?;
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hgcolor_core::{build, ConstructionParams, SizeCap};

    fn line_of(text: &str) -> usize {
        match parse(text) {
            Err(HgrError::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn second_level_graph_is_canonical() {
        let h = build(ConstructionParams::new(2, 2).unwrap(), &SizeCap::default()).unwrap();
        assert_eq!(
            to_string(&h),
            "p hgr 8 10 2\n1 2\n1 5\n1 6\n2 7\n2 8\n3 4\n3 5\n3 7\n4 6\n4 8\n"
        );
        assert_eq!(parse(&to_string(&h)).unwrap(), h);
    }

    #[test]
    fn lenient_reading() {
        let h = parse("c made by hand\n\np hgr 4 3 2\n2 1\nc mid\n3 4\n1 2\n").unwrap();
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.duplicates_dropped(), 1);
        assert_eq!(to_string(&h), "p hgr 4 2 2\n1 2\n3 4\n");
    }

    #[test]
    fn empty_hypergraph() {
        let h = parse("p hgr 3 0 3\n").unwrap();
        assert_eq!((h.num_vertices(), h.num_edges(), h.uniformity()), (3, 0, 3));
        assert_eq!(to_string(&h), "p hgr 3 0 3\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("1 2\n"), 1);
        assert_eq!(line_of("c x\np hgr 4 1 2\n1 5\n"), 3);
        assert_eq!(line_of("p hgr 4 1 3\n1 2\n"), 2);
        assert_eq!(line_of("p hgr 4 1 2\n1 1\n"), 2);
        assert_eq!(line_of("p hgr 4 1 2\n1 0\n"), 2);
        assert_eq!(line_of("p hgr 4 1 2\n1 2\n3 4\n"), 3);
        assert_eq!(line_of("p hgr 4 2 2\n1 2\n"), 2);
        assert_eq!(line_of("p hgr 4 x 2\n"), 1);
        assert_eq!(line_of("p hgr 4 0 1\n"), 1);
        assert_eq!(line_of(""), 1);
    }
}
