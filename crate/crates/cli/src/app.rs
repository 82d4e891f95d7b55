//! Command-line front end.
//!
//! Every command prints machine-parseable lines on stdout and diagnostics on
//! stderr. Exit codes: 0 pass, 1 property failure, 2 size refusal, 3 search
//! budget exhausted (or solver gave no answer), 64 usage, 65 malformed
//! input, 69 solver could not be run, 74 I/O failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hgcolor_core::certify::{optimal_coloring, CertifyError};
use hgcolor_core::cnf::encode_k_coloring;
use hgcolor_core::construction::{build_with_provenance, predict_sizes, ConstructionError, DEFAULT_SIZE_CAP};
use hgcolor_core::{
    degeneracy, find_triangle, greedy_color, k_colorable, min_color_class_size, Budget, Coloring, ConstructionParams,
    Hypergraph, SizeCap, VertexProvenance,
};
use num_bigint::BigUint;

use crate::hgr::{self, HgrError};
use crate::parallel::k_colorable_parallel;
use crate::provenance::{self, ProvenanceError};
use crate::solver::{ExternalVerdict, SolverCommand, SolverError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_UNAVAILABLE: i32 = 69;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(
    name = "hgcolor",
    version,
    about = "Build and certify triangle-free d-degenerate uniform hypergraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build G_d for uniformity r and write it in hgr format.
    Build(BuildArgs),
    /// Check degeneracy, triangle-freeness and new-vertex degrees.
    Verify(VerifyArgs),
    /// Exact chromatic number.
    Chromatic(ChromaticArgs),
    /// Print a greedy or an optimal colouring.
    Color(ColorArgs),
    /// Smallest colour class over all proper k-colourings.
    LemmaCheck(LemmaArgs),
    /// Write the k-colourability CNF in DIMACS format.
    Encode(EncodeArgs),
    /// Decide k-colourability with an external SAT solver.
    Sat(SatArgs),
    /// Interpret saved SAT solver output for a k-colourability formula.
    Decode(DecodeArgs),
    /// Predicted sizes of G_d.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    d: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Build even if the predicted size exceeds the cap.
    #[arg(long)]
    force: bool,
    /// Maximum predicted vertices + edges.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    cap: u64,
    /// Write the per-vertex provenance sidecar here.
    #[arg(long)]
    provenance: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Require degeneracy at most D.
    #[arg(long, value_name = "D")]
    degeneracy: Option<usize>,
    #[arg(long)]
    triangle_free: bool,
    /// Require every NEW vertex of the sidecar to have degree exactly D.
    #[arg(long, value_name = "D", requires = "provenance")]
    new_vertex_degree: Option<usize>,
    #[arg(long, value_name = "FILE")]
    provenance: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Search node budget.
    #[arg(long, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
    /// Split the exact search across threads.
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Args)]
struct ChromaticArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 16)]
    max_k: usize,
    #[command(flatten)]
    search: SearchArgs,
    /// Hand values of k the internal search cannot settle within budget to
    /// this solver command; `{cnf}` is replaced by the formula path.
    #[arg(long, value_name = "TEMPLATE")]
    solver_cmd: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ColorMode {
    #[arg(long)]
    greedy: bool,
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Args)]
struct ColorArgs {
    file: PathBuf,
    #[command(flatten)]
    mode: ColorMode,
    #[arg(long, default_value_t = 16)]
    max_k: usize,
    #[arg(long, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
}

#[derive(Debug, Args)]
struct LemmaArgs {
    file: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
    /// Fail unless the smallest class has at least this many vertices.
    #[arg(long, value_name = "N")]
    at_least: Option<usize>,
}

#[derive(Debug, Args)]
struct EncodeArgs {
    file: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: PathBuf,
    /// Fix vertex 1 to the first colour.
    #[arg(long)]
    symmetry_break: bool,
}

#[derive(Debug, Args)]
struct SatArgs {
    file: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_name = "TEMPLATE")]
    solver_cmd: String,
    #[arg(long)]
    symmetry_break: bool,
}

#[derive(Debug, Args)]
struct DecodeArgs {
    file: PathBuf,
    #[arg(long)]
    k: usize,
    /// Saved solver standard output.
    #[arg(long, value_name = "FILE")]
    result: PathBuf,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    d: usize,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_IO, e.to_string())
    }
}

fn certify_failure(e: CertifyError) -> Failure {
    match e {
        CertifyError::BudgetExceeded { .. } => Failure::new(EXIT_BUDGET, e.to_string()),
        CertifyError::InvalidColorCount(_) => Failure::new(EXIT_USAGE, e.to_string()),
        other => Failure::new(EXIT_FAILED, other.to_string()),
    }
}

fn solver_failure(e: SolverError) -> Failure {
    match e {
        SolverError::MissingPlaceholder => Failure::new(EXIT_USAGE, e.to_string()),
        SolverError::Io(_) => Failure::new(EXIT_UNAVAILABLE, e.to_string()),
        SolverError::Output(_) => Failure::new(EXIT_PARSE, e.to_string()),
        SolverError::Model(_) | SolverError::Encode(_) => Failure::new(EXIT_FAILED, e.to_string()),
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Hypergraph, Failure> {
    let h = hgr::read_file(path).map_err(|e| match e {
        HgrError::Parse { line, message } => Failure::new(EXIT_PARSE, format!("{}:{line}: {message}", path.display())),
        HgrError::Io(e) => Failure::new(EXIT_IO, format!("{}: {e}", path.display())),
    })?;
    if h.duplicates_dropped() > 0 {
        writeln!(
            err,
            "warning: {}: dropped {} duplicate edge lines",
            path.display(),
            h.duplicates_dropped()
        )?;
    }
    Ok(h)
}

fn params(r: usize, d: usize) -> Result<ConstructionParams, Failure> {
    ConstructionParams::new(r, d).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_coloring(out: &mut dyn Write, c: &Coloring) -> io::Result<()> {
    writeln!(out, "colors {}", c.colors_used())?;
    writeln!(out, "coloring {}", join(c.colors()))
}

fn cmd_build(args: BuildArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = params(args.r, args.d)?;
    let cap = if args.force {
        SizeCap::unlimited()
    } else {
        SizeCap::at_most(BigUint::from(args.cap))
    };
    let built = build_with_provenance(p, &cap).map_err(|e| match e {
        ConstructionError::TooLarge { .. } | ConstructionError::Unrepresentable { .. } => {
            Failure::new(EXIT_REFUSED, e.to_string())
        }
        ConstructionError::InvalidParams { .. } => Failure::new(EXIT_USAGE, e.to_string()),
        other => Failure::new(EXIT_FAILED, other.to_string()),
    })?;
    let g = &built.graph;
    match &args.out {
        Some(path) => {
            hgr::write_file(path, g)?;
            writeln!(
                out,
                "built n={} m={} r={}",
                g.num_vertices(),
                g.num_edges(),
                g.uniformity()
            )?;
        }
        None => hgr::write(g, out)?,
    }
    if let Some(path) = &args.provenance {
        let mut file = io::BufWriter::new(fs::File::create(path)?);
        provenance::write(&built.provenance, &mut file)?;
        file.flush()?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if args.degeneracy.is_none() && !args.triangle_free && args.new_vertex_degree.is_none() {
        return Err(Failure::new(
            EXIT_USAGE,
            "nothing to verify: pass --degeneracy, --triangle-free or --new-vertex-degree",
        ));
    }
    let h = load(&args.file, err)?;
    let mut all_pass = true;
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };

    if let Some(bound) = args.degeneracy {
        let (d, order) = degeneracy(&h);
        let ok = d <= bound;
        all_pass &= ok;
        writeln!(out, "degeneracy {d} bound {bound} {}", verdict(ok))?;
        writeln!(out, "elimination-order {}", join(order.order().iter().map(|v| v + 1)))?;
        writeln!(out, "step-degrees {}", join(order.step_degrees()))?;
    }
    if args.triangle_free {
        match find_triangle(&h) {
            None => writeln!(out, "triangle-free PASS")?,
            Some(t) => {
                all_pass = false;
                writeln!(out, "triangle-free FAIL")?;
                writeln!(
                    out,
                    "triangle edges {} vertices {}",
                    join(t.edges),
                    join(t.union.iter().map(|v| v + 1))
                )?;
            }
        }
    }
    if let (Some(expected), Some(path)) = (args.new_vertex_degree, &args.provenance) {
        let text = fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
        let labels = provenance::parse(&text).map_err(|e| match e {
            ProvenanceError::Parse { line, message } => {
                Failure::new(EXIT_PARSE, format!("{}:{line}: {message}", path.display()))
            }
            ProvenanceError::Io(e) => Failure::new(EXIT_IO, e.to_string()),
        })?;
        if labels.len() != h.num_vertices() {
            return Err(Failure::new(
                EXIT_PARSE,
                format!(
                    "{}: {} provenance lines for {} vertices",
                    path.display(),
                    labels.len(),
                    h.num_vertices()
                ),
            ));
        }
        let fresh: Vec<u32> = (0..h.num_vertices() as u32)
            .filter(|&v| matches!(labels[v as usize], VertexProvenance::New { .. }))
            .collect();
        let bad = fresh.iter().find(|&&v| h.incident_edges(v).len() != expected);
        let ok = bad.is_none();
        all_pass &= ok;
        writeln!(
            out,
            "new-vertex-degree {expected} count {} {}",
            fresh.len(),
            verdict(ok)
        )?;
        if let Some(&v) = bad {
            writeln!(out, "offending-vertex {} degree {}", v + 1, h.incident_edges(v).len())?;
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_FAILED })
}

fn decide(h: &Hypergraph, k: usize, search: &SearchArgs) -> Result<Option<Coloring>, CertifyError> {
    if search.parallel {
        k_colorable_parallel(h, k, Budget(search.budget))
    } else {
        k_colorable(h, k, Budget(search.budget))
    }
}

fn cmd_chromatic(args: ChromaticArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if args.max_k == 0 {
        return Err(Failure::new(EXIT_USAGE, "--max-k must be at least 1"));
    }
    let solver = args
        .solver_cmd
        .as_deref()
        .map(SolverCommand::new)
        .transpose()
        .map_err(solver_failure)?;
    let h = load(&args.file, err)?;
    if h.num_vertices() == 0 {
        writeln!(out, "chromatic 0")?;
        return Ok(EXIT_OK);
    }
    for k in 1..=args.max_k {
        let colorable = match decide(&h, k, &args.search) {
            Ok(found) => found.is_some(),
            Err(CertifyError::BudgetExceeded { nodes }) => {
                let Some(solver) = &solver else {
                    return Err(Failure::new(
                        EXIT_BUDGET,
                        format!("k={k}: search budget of {nodes} nodes exceeded"),
                    ));
                };
                writeln!(err, "k={k}: budget exceeded, asking the external solver")?;
                match solver.k_colorable(&h, k, true).map_err(solver_failure)? {
                    ExternalVerdict::Colorable(_) => true,
                    ExternalVerdict::NotColorable => false,
                    ExternalVerdict::Unknown => {
                        return Err(Failure::new(
                            EXIT_BUDGET,
                            format!("k={k}: external solver gave no answer"),
                        ))
                    }
                }
            }
            Err(e) => return Err(certify_failure(e)),
        };
        if colorable {
            writeln!(out, "chromatic {k}")?;
            return Ok(EXIT_OK);
        }
    }
    writeln!(out, "chromatic >{}", args.max_k)?;
    Ok(EXIT_FAILED)
}

fn cmd_color(args: ColorArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let h = load(&args.file, err)?;
    let coloring = if args.mode.greedy {
        let (_, order) = degeneracy(&h);
        greedy_color(&h, &order).map_err(certify_failure)?
    } else {
        match optimal_coloring(&h, args.max_k.max(1), Budget(args.budget)) {
            Ok(c) => c,
            Err(CertifyError::ChromaticAbove { kmax }) => {
                writeln!(out, "colors >{kmax}")?;
                return Ok(EXIT_FAILED);
            }
            Err(e) => return Err(certify_failure(e)),
        }
    };
    write_coloring(out, &coloring)?;
    Ok(EXIT_OK)
}

fn cmd_lemma_check(args: LemmaArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let h = load(&args.file, err)?;
    let smallest = min_color_class_size(&h, args.k, Budget(args.budget)).map_err(certify_failure)?;
    match smallest {
        Some(s) => writeln!(out, "lemma-min-class {s}")?,
        None => writeln!(out, "lemma-min-class none")?,
    }
    let ok = match args.at_least {
        Some(bound) => smallest.is_some_and(|s| s >= bound),
        None => true,
    };
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_encode(args: EncodeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let h = load(&args.file, err)?;
    let formula =
        encode_k_coloring(&h, args.k, args.symmetry_break).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    fs::write(&args.out, formula.to_dimacs())?;
    writeln!(
        out,
        "cnf vars={} clauses={}",
        formula.num_vars(),
        formula.clauses().len()
    )?;
    Ok(EXIT_OK)
}

fn report_verdict(out: &mut dyn Write, verdict: ExternalVerdict) -> Result<i32, Failure> {
    Ok(match verdict {
        ExternalVerdict::Colorable(c) => {
            writeln!(out, "sat-result SAT")?;
            write_coloring(out, &c)?;
            EXIT_OK
        }
        ExternalVerdict::NotColorable => {
            writeln!(out, "sat-result UNSAT")?;
            EXIT_OK
        }
        ExternalVerdict::Unknown => {
            writeln!(out, "sat-result UNKNOWN")?;
            EXIT_BUDGET
        }
    })
}

fn cmd_sat(args: SatArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let solver = SolverCommand::new(args.solver_cmd).map_err(solver_failure)?;
    let h = load(&args.file, err)?;
    let verdict = solver
        .k_colorable(&h, args.k, args.symmetry_break)
        .map_err(solver_failure)?;
    report_verdict(out, verdict)
}

fn cmd_decode(args: DecodeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    use hgcolor_core::cnf::{decode, parse_solver_output};
    use hgcolor_core::SolverOutcome;
    let h = load(&args.file, err)?;
    let text = fs::read_to_string(&args.result)
        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", args.result.display())))?;
    let outcome =
        parse_solver_output(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", args.result.display())))?;
    let verdict = match outcome {
        SolverOutcome::Sat(model) => ExternalVerdict::Colorable(
            decode(&model, &h, args.k).map_err(|e| Failure::new(EXIT_FAILED, e.to_string()))?,
        ),
        SolverOutcome::Unsat => ExternalVerdict::NotColorable,
        SolverOutcome::Unknown => ExternalVerdict::Unknown,
    };
    report_verdict(out, verdict)
}

fn cmd_stats(args: StatsArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let s = predict_sizes(params(args.r, args.d)?);
    writeln!(out, "stats V={} E={} numS={}", s.vertices, s.edges, s.s_sets)?;
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Build(a) => cmd_build(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Chromatic(a) => cmd_chromatic(a, out, err),
        Command::Color(a) => cmd_color(a, out, err),
        Command::LemmaCheck(a) => cmd_lemma_check(a, out, err),
        Command::Encode(a) => cmd_encode(a, out, err),
        Command::Sat(a) => cmd_sat(a, out, err),
        Command::Decode(a) => cmd_decode(a, out, err),
        Command::Stats(a) => cmd_stats(a, out),
    };
    match result.and_then(|code| out.flush().map(|_| code).map_err(Failure::from)) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}
