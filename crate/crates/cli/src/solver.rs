//! Running an external SAT solver on a `k`-colouring formula.
//!
//! The solver is described by a shell command template containing `{cnf}`,
//! which is replaced by the path of a temporary DIMACS file. The command's
//! standard output is read as SAT-competition output; its exit status is
//! ignored because solvers conventionally exit with 10 or 20.

use std::io::{self, Write};
use std::process::{Command, Stdio};

use hgcolor_core::cnf::{decode, encode_k_coloring, parse_solver_output};
use hgcolor_core::{CnfError, CnfFormula, Coloring, Hypergraph, SolverOutcome};

#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error("solver command template must contain `{{cnf}}`")]
    MissingPlaceholder,
    #[error("failed to run solver: {0}")]
    Io(#[from] io::Error),
    #[error("solver output: {0}")]
    Output(CnfError),
    #[error("solver model: {0}")]
    Model(CnfError),
    #[error(transparent)]
    Encode(CnfError),
}

/// Decision reported for "is `h` `k`-colourable" by an external solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExternalVerdict {
    Colorable(Coloring),
    NotColorable,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverCommand {
    template: String,
}

impl SolverCommand {
    pub fn new(template: impl Into<String>) -> Result<Self, SolverError> {
        let template = template.into();
        if !template.contains("{cnf}") {
            return Err(SolverError::MissingPlaceholder);
        }
        Ok(Self { template })
    }

    pub fn template(&self) -> &str {
        &self.template
    }

    /// Writes `formula` to a temporary file, runs the solver and parses its
    /// standard output.
    pub fn solve(&self, formula: &CnfFormula) -> Result<SolverOutcome, SolverError> {
        let mut file = tempfile::Builder::new().prefix("hgcolor-").suffix(".cnf").tempfile()?;
        file.write_all(formula.to_dimacs().as_bytes())?;
        file.flush()?;
        let path = file.path().to_string_lossy().replace('\'', r"'\''");
        let command = self.template.replace("{cnf}", &format!("'{path}'"));
        let output = Command::new("sh")
            .arg("-c")
            .arg(&command)
            .stdin(Stdio::null())
            .stderr(Stdio::null())
            .output()?;
        parse_solver_output(&String::from_utf8_lossy(&output.stdout)).map_err(SolverError::Output)
    }

    /// Decides `k`-colourability of `h` through the solver. A reported model
    /// is decoded and checked for properness before it is accepted.
    pub fn k_colorable(&self, h: &Hypergraph, k: usize, symmetry_break: bool) -> Result<ExternalVerdict, SolverError> {
        let formula = encode_k_coloring(h, k, symmetry_break).map_err(SolverError::Encode)?;
        Ok(match self.solve(&formula)? {
            SolverOutcome::Sat(model) => ExternalVerdict::Colorable(decode(&model, h, k).map_err(SolverError::Model)?),
            SolverOutcome::Unsat => ExternalVerdict::NotColorable,
            SolverOutcome::Unknown => ExternalVerdict::Unknown,
        })
    }
}
