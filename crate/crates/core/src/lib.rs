//! Construction and exact certification of triangle-free, `d`-degenerate,
//! `r`-uniform hypergraphs whose chromatic number is `d + 1`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function over immutable [`Hypergraph`] values:
//!
//! - [`hypergraph`]: the data model, degree/induced/properness predicates and
//!   the complete uniform hypergraph generator.
//! - [`construction`]: the base instance `G_1`, the inductive step producing
//!   `G_d` from `G_{d-1}`, and exact size prediction.
//! - [`certify`]: degeneracy with an elimination-order certificate, triangle
//!   search, greedy colouring, an exact `k`-colourability solver, chromatic
//!   number and the minimum colour-class size over all proper colourings.
//! - [`cnf`]: `k`-colourability as CNF, DIMACS text and solver-output parsing.
#![no_std]

extern crate alloc;

pub mod certify;
pub mod cnf;
pub mod construction;
pub mod hypergraph;

pub use certify::{
    chromatic_number, degeneracy, find_triangle, greedy_color, is_d_degenerate, k_colorable, min_color_class_size,
    optimal_coloring, Budget, CertifyError, EliminationOrder, KColoring, TriangleCertificate,
};
pub use cnf::{CnfError, CnfFormula, Model, SolverOutcome};
pub use construction::{
    build, build_base, build_with_provenance, extend, predict_sizes, Construction, ConstructionError,
    ConstructionParams, ConstructionStats, SizeCap, VertexProvenance,
};
pub use hypergraph::{complete_uniform, Coloring, Hypergraph, HypergraphError};
