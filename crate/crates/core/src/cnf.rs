//! `k`-colourability as CNF, DIMACS text, and SAT solver output.
//!
//! Variable `x(v, c)` (vertex `v` has colour `c`) is numbered `v * k + c + 1`.
//! The encoding has one at-least-one clause per vertex and, for every edge
//! and colour, a clause forbidding the edge from being entirely that colour.
//! There are no at-most-one clauses: picking any true colour per vertex from
//! a model already gives a proper colouring.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::hypergraph::{Coloring, Hypergraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CnfError {
    InvalidColorCount(usize),
    /// `n * k` does not fit DIMACS variable numbering.
    TooManyVariables {
        vertices: usize,
        k: usize,
    },
    EmptyClause {
        clause: usize,
    },
    InvalidLiteral {
        clause: usize,
        literal: i64,
    },
    Tautology {
        clause: usize,
        variable: i32,
    },
    Parse {
        line: usize,
        message: String,
    },
    /// A vertex has no true colour variable in the model.
    NoColor {
        vertex: VertexId,
    },
    /// The decoded colouring has a monochromatic edge.
    NotProper {
        edge: usize,
    },
}

impl fmt::Display for CnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidColorCount(k) => write!(f, "colour count must be at least 1, got {k}"),
            Self::TooManyVariables { vertices, k } => {
                write!(
                    f,
                    "{vertices} vertices with {k} colours exceed the DIMACS variable range"
                )
            }
            Self::EmptyClause { clause } => write!(f, "clause {clause} is empty"),
            Self::InvalidLiteral { clause, literal } => {
                write!(f, "clause {clause} has out-of-range literal {literal}")
            }
            Self::Tautology { clause, variable } => {
                write!(f, "clause {clause} contains both {variable} and -{variable}")
            }
            Self::Parse { line, message } => write!(f, "line {line}: {message}"),
            Self::NoColor { vertex } => write!(f, "model assigns no colour to vertex {vertex}"),
            Self::NotProper { edge } => write!(f, "decoded colouring leaves edge {edge} monochromatic"),
        }
    }
}

impl core::error::Error for CnfError {}

/// A CNF formula over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    /// Validates that every clause is non-empty, in range and not a tautology.
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, CnfError> {
        for (index, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CnfError::EmptyClause { clause: index });
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(CnfError::InvalidLiteral {
                        clause: index,
                        literal: lit as i64,
                    });
                }
                if clause.contains(&-lit) {
                    return Err(CnfError::Tautology {
                        clause: index,
                        variable: lit.abs(),
                    });
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Whether `model` satisfies every clause; unassigned variables are false.
    pub fn is_satisfied_by(&self, model: &Model) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&lit| model.value(lit.unsigned_abs() as usize).unwrap_or(false) == (lit > 0))
        })
    }

    /// Writes DIMACS CNF: the `p cnf` header, then one `0`-terminated clause
    /// per line.
    pub fn write_dimacs<W: fmt::Write>(&self, out: &mut W) -> fmt::Result {
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ")?;
            }
            out.write_str("0\n")?;
        }
        Ok(())
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        self.write_dimacs(&mut s).expect("writing to a String cannot fail");
        s
    }

    /// Parses DIMACS CNF. Comment lines start with `c`; clauses may span
    /// lines and are terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self, CnfError> {
        let err = |line: usize, message: &str| CnfError::Parse {
            line,
            message: message.to_string(),
        };
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            if trimmed.starts_with('p') {
                if header.is_some() {
                    return Err(err(line, "duplicate header"));
                }
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                    return Err(err(line, "expected `p cnf <vars> <clauses>`"));
                }
                let vars = fields[2].parse().map_err(|_| err(line, "bad variable count"))?;
                let count = fields[3].parse().map_err(|_| err(line, "bad clause count"))?;
                header = Some((vars, count));
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(err(line, "clause before header"));
            };
            for token in trimmed.split_whitespace() {
                let lit: i32 = token.parse().map_err(|_| err(line, "bad literal"))?;
                if lit == 0 {
                    clauses.push(core::mem::take(&mut current));
                } else if lit.unsigned_abs() as usize > vars {
                    return Err(err(line, "literal exceeds the declared variable count"));
                } else {
                    current.push(lit);
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| err(last_line.max(1), "missing header"))?;
        if !current.is_empty() {
            return Err(err(last_line, "unterminated clause"));
        }
        if clauses.len() != count {
            return Err(err(last_line, "clause count differs from the header"));
        }
        Self::new(vars, clauses).map_err(|e| err(last_line, &e.to_string()))
    }
}

/// Truth values reported by a solver, indexed by variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Model {
    values: Vec<Option<bool>>,
}

impl Model {
    /// Builds a model from signed literals; `0` entries are ignored.
    pub fn from_literals<I: IntoIterator<Item = i32>>(literals: I) -> Self {
        let mut model = Self::default();
        for lit in literals {
            model.set(lit);
        }
        model
    }

    fn set(&mut self, lit: i32) {
        if lit == 0 {
            return;
        }
        let var = lit.unsigned_abs() as usize;
        if self.values.len() < var {
            self.values.resize(var, None);
        }
        self.values[var - 1] = Some(lit > 0);
    }

    /// Value of variable `var` (1-based), if assigned.
    pub fn value(&self, var: usize) -> Option<bool> {
        var.checked_sub(1).and_then(|i| self.values.get(i).copied().flatten())
    }
}

/// What a SAT solver reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverOutcome {
    Sat(Model),
    Unsat,
    Unknown,
}

/// Variable number of `x(v, c)` for a `k`-colouring encoding.
pub fn color_var(v: VertexId, c: u32, k: usize) -> i32 {
    (v as usize * k + c as usize + 1) as i32
}

/// Encodes "`h` has a proper colouring with colours `0..k`".
///
/// With `symmetry_break`, vertex 0 is fixed to colour 0 by a unit clause.
pub fn encode_k_coloring(h: &Hypergraph, k: usize, symmetry_break: bool) -> Result<CnfFormula, CnfError> {
    if k == 0 {
        return Err(CnfError::InvalidColorCount(0));
    }
    let n = h.num_vertices();
    let num_vars = n.checked_mul(k).filter(|&v| v <= i32::MAX as usize);
    let num_vars = num_vars.ok_or(CnfError::TooManyVariables { vertices: n, k })?;
    let mut clauses = Vec::with_capacity(n + h.num_edges() * k + 1);
    for v in 0..n as VertexId {
        clauses.push((0..k as u32).map(|c| color_var(v, c, k)).collect());
    }
    for edge in h.edges() {
        for c in 0..k as u32 {
            clauses.push(edge.iter().map(|&v| -color_var(v, c, k)).collect());
        }
    }
    if symmetry_break && n > 0 {
        clauses.push(vec![color_var(0, 0, k)]);
    }
    CnfFormula::new(num_vars, clauses)
}

/// Reads a colouring back from a model: each vertex gets its smallest true
/// colour. Errors if a vertex has none, or if the result is not proper.
pub fn decode(model: &Model, h: &Hypergraph, k: usize) -> Result<Coloring, CnfError> {
    if k == 0 {
        return Err(CnfError::InvalidColorCount(0));
    }
    let colors = (0..h.num_vertices() as VertexId)
        .map(|v| {
            (0..k as u32)
                .find(|&c| model.value(color_var(v, c, k) as usize) == Some(true))
                .ok_or(CnfError::NoColor { vertex: v })
        })
        .collect::<Result<Vec<u32>, _>>()?;
    if let Some(edge) = h
        .edges()
        .position(|e| e.iter().all(|&v| colors[v as usize] == colors[e[0] as usize]))
    {
        return Err(CnfError::NotProper { edge });
    }
    Ok(Coloring::new(colors, k as u32).expect("colours drawn from 0..k"))
}

/// Removes ANSI escape sequences some solvers emit even when not on a tty.
fn strip_ansi(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let mut chars = line.chars().peekable();
    while let Some(ch) = chars.next() {
        if ch == '\u{1b}' {
            if chars.peek() == Some(&'[') {
                chars.next();
                for next in chars.by_ref() {
                    if ('@'..='~').contains(&next) {
                        break;
                    }
                }
            }
            continue;
        }
        out.push(ch);
    }
    out
}

/// Parses SAT-competition style solver output.
///
/// `s SATISFIABLE`, `s UNSATISFIABLE` and `s UNKNOWN` status lines and `v`
/// model lines are interpreted; comment lines and any other chatter are
/// ignored. Missing status means [`SolverOutcome::Unknown`]. Malformed
/// status or model lines, conflicting statuses, and model lines without a
/// satisfiable status are errors carrying the 1-based line number.
pub fn parse_solver_output(text: &str) -> Result<SolverOutcome, CnfError> {
    let err = |line: usize, message: &str| CnfError::Parse {
        line,
        message: message.to_string(),
    };
    #[derive(PartialEq, Clone, Copy)]
    enum Status {
        Sat,
        Unsat,
        Unknown,
    }
    let mut status: Option<Status> = None;
    let mut literals = Vec::new();
    let mut first_model_line = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let cleaned = strip_ansi(raw);
        let mut fields = cleaned.split_whitespace();
        match fields.next() {
            Some("s") => {
                let word = fields.next().ok_or_else(|| err(line, "status line without a status"))?;
                let parsed = match word.trim_end_matches(':') {
                    "SATISFIABLE" => Status::Sat,
                    "UNSATISFIABLE" => Status::Unsat,
                    "UNKNOWN" | "INDETERMINATE" => Status::Unknown,
                    _ => return Err(err(line, "unrecognised status")),
                };
                if status.is_some_and(|s| s != parsed) {
                    return Err(err(line, "conflicting status lines"));
                }
                status = Some(parsed);
            }
            Some("v") => {
                first_model_line.get_or_insert(line);
                for token in fields {
                    let lit: i32 = token.parse().map_err(|_| err(line, "bad literal in model line"))?;
                    literals.push(lit);
                }
            }
            _ => {}
        }
    }
    match (status, first_model_line) {
        (Some(Status::Sat), _) => Ok(SolverOutcome::Sat(Model::from_literals(literals))),
        (_, Some(line)) => Err(err(line, "model line without a satisfiable status")),
        (Some(Status::Unsat), None) => Ok(SolverOutcome::Unsat),
        (Some(Status::Unknown) | None, None) => Ok(SolverOutcome::Unknown),
    }
}
