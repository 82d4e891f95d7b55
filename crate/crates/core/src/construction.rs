//! The family `G_d`: triangle-free, `d`-degenerate, `r`-uniform hypergraphs
//! with chromatic number `d + 1`.
//!
//! `G_1` is the path of consecutive `r`-windows on `r(r-1)` vertices. `G_d`
//! takes `d + r - 2` disjoint copies of `G_{d-1}`; for every choice of `d`
//! copies and `r - 1` vertices inside each chosen copy (an *S-set*) it adds
//! `r - 1` new vertices, each joined to every chosen `(r - 1)`-block by one
//! new edge.
//!
//! Vertex ids are fully determined by the enumeration order: copy `i`
//! occupies the id block `[i * |V(G_{d-1})|, (i + 1) * |V(G_{d-1})|)`, and new
//! vertices follow in S-set order. S-sets are ordered lexicographically by
//! the chosen copy indices, then by the tuple of per-copy vertex subsets
//! (each subset in lexicographic order, the first chosen copy most
//! significant).

use alloc::vec::Vec;
use core::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::hypergraph::{Hypergraph, HypergraphError, VertexId};

/// Default bound on predicted `|V| + |E|` before a build is refused.
pub const DEFAULT_SIZE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    InvalidParams {
        r: usize,
        d: usize,
    },
    /// The previous level was built for a different uniformity.
    UniformityMismatch {
        expected: usize,
        found: usize,
    },
    /// Predicted size exceeds the configured cap.
    TooLarge {
        vertices: BigUint,
        edges: BigUint,
        cap: BigUint,
    },
    /// Predicted vertex count does not fit 32-bit vertex ids; never buildable.
    Unrepresentable {
        vertices: BigUint,
    },
    Hypergraph(HypergraphError),
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParams { r, d } => {
                write!(f, "invalid parameters r={r} d={d}: need r >= 2 and d >= 1")
            }
            Self::UniformityMismatch { expected, found } => {
                write!(f, "previous level is {found}-uniform, expected {expected}")
            }
            Self::TooLarge { vertices, edges, cap } => write!(
                f,
                "refusing to build: predicted V={vertices} E={edges} exceeds cap {cap} on V+E"
            ),
            Self::Unrepresentable { vertices } => {
                write!(f, "predicted V={vertices} exceeds the 32-bit vertex id range")
            }
            Self::Hypergraph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConstructionError {}

impl From<HypergraphError> for ConstructionError {
    fn from(e: HypergraphError) -> Self {
        Self::Hypergraph(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    r: usize,
    d: usize,
}

impl ConstructionParams {
    pub fn new(r: usize, d: usize) -> Result<Self, ConstructionError> {
        if r < 2 || d < 1 {
            return Err(ConstructionError::InvalidParams { r, d });
        }
        Ok(Self { r, d })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

/// Upper bound on `|V| + |E|` accepted by [`build`] and [`extend`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeCap(Option<BigUint>);

impl SizeCap {
    pub fn at_most(limit: impl Into<BigUint>) -> Self {
        Self(Some(limit.into()))
    }

    /// No cap; only the vertex id range still applies.
    pub fn unlimited() -> Self {
        Self(None)
    }

    fn check(&self, stats: &ConstructionStats) -> Result<(), ConstructionError> {
        if let Some(cap) = &self.0 {
            if &stats.vertices + &stats.edges > *cap {
                return Err(ConstructionError::TooLarge {
                    vertices: stats.vertices.clone(),
                    edges: stats.edges.clone(),
                    cap: cap.clone(),
                });
            }
        }
        if stats.vertices > BigUint::from(VertexId::MAX) {
            return Err(ConstructionError::Unrepresentable {
                vertices: stats.vertices.clone(),
            });
        }
        Ok(())
    }
}

impl Default for SizeCap {
    fn default() -> Self {
        Self::at_most(DEFAULT_SIZE_CAP)
    }
}

/// Exact sizes of `G_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionStats {
    pub vertices: BigUint,
    pub edges: BigUint,
    /// Number of S-sets used by the last inductive step (0 for `d = 1`).
    pub s_sets: BigUint,
}

/// Where a vertex of a constructed instance came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexProvenance {
    /// Vertex `v_{index+1}` of the base instance `G_1`.
    Base { index: u32 },
    /// Vertex `inner` of the previous level, inside copy `copy` (0-based).
    Copy { copy: u32, inner: VertexId },
    /// The `j`-th (1-based) new vertex spawned by S-set `s_index`.
    New { s_index: u64, j: u32 },
}

/// A built instance together with the provenance of each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub params: ConstructionParams,
    pub graph: Hypergraph,
    pub provenance: Vec<VertexProvenance>,
}

impl Construction {
    /// Ids of the vertices added by the last inductive step.
    pub fn new_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.provenance
            .iter()
            .enumerate()
            .filter(|(_, p)| matches!(p, VertexProvenance::New { .. }))
            .map(|(v, _)| v as VertexId)
    }
}

fn copies(r: usize, d: usize) -> usize {
    d + r - 2
}

/// Sizes of one inductive step applied to a previous level of the given size.
fn step_stats(r: usize, d: usize, prev_vertices: &BigUint, prev_edges: &BigUint) -> ConstructionStats {
    let copies = BigUint::from(copies(r, d));
    let blocks: BigUint = binomial(prev_vertices.clone(), BigUint::from(r - 1));
    let s_sets = binomial(copies.clone(), BigUint::from(d)) * Pow::pow(blocks, d as u32);
    let vertices = &copies * prev_vertices + BigUint::from(r - 1) * &s_sets;
    let edges = &copies * prev_edges + BigUint::from(d * (r - 1)) * &s_sets;
    ConstructionStats {
        vertices,
        edges,
        s_sets,
    }
}

/// Exact vertex, edge and S-set counts of `G_d` for uniformity `r`.
pub fn predict_sizes(params: ConstructionParams) -> ConstructionStats {
    let r = params.r;
    let mut stats = ConstructionStats {
        vertices: BigUint::from(r * (r - 1)),
        edges: BigUint::from((r - 1) * (r - 1)),
        s_sets: BigUint::zero(),
    };
    for d in 2..=params.d {
        stats = step_stats(r, d, &stats.vertices, &stats.edges);
    }
    stats
}

/// The base instance `G_1`: vertices `0..r(r-1)` and the `(r-1)^2` windows
/// `{i, .., i + r - 1}`.
pub fn build_base(r: usize) -> Result<Hypergraph, ConstructionError> {
    if r < 2 {
        return Err(ConstructionError::InvalidParams { r, d: 1 });
    }
    let n = r * (r - 1);
    let windows = (0..=n - r).map(|i| (i as VertexId..(i + r) as VertexId).collect::<Vec<_>>());
    Ok(Hypergraph::new(n, r, windows)?)
}

fn base_construction(r: usize) -> Result<Construction, ConstructionError> {
    let graph = build_base(r)?;
    let provenance = (0..graph.num_vertices() as u32)
        .map(|index| VertexProvenance::Base { index })
        .collect();
    Ok(Construction {
        params: ConstructionParams::new(r, 1)?,
        graph,
        provenance,
    })
}

/// One inductive step: builds `G_d` from `prev = G_{d-1}`.
///
/// The size guard is evaluated from the actual size of `prev` before any
/// allocation happens.
pub fn extend(prev: &Hypergraph, r: usize, d: usize, cap: &SizeCap) -> Result<Construction, ConstructionError> {
    if r < 2 || d < 2 {
        return Err(ConstructionError::InvalidParams { r, d });
    }
    if prev.uniformity() != r {
        return Err(ConstructionError::UniformityMismatch {
            expected: r,
            found: prev.uniformity(),
        });
    }
    let prev_n = prev.num_vertices();
    let stats = step_stats(r, d, &BigUint::from(prev_n), &BigUint::from(prev.num_edges()));
    cap.check(&stats)?;
    let total_vertices = stats.vertices.to_usize().expect("checked against the id range");

    let copies = copies(r, d);
    let mut edges: Vec<Vec<VertexId>> = Vec::with_capacity(stats.edges.to_usize().unwrap_or(0));
    let mut provenance = Vec::with_capacity(total_vertices);
    for copy in 0..copies {
        let offset = (copy * prev_n) as VertexId;
        edges.extend(prev.edges().map(|e| e.iter().map(|&v| v + offset).collect::<Vec<_>>()));
        provenance.extend((0..prev_n as VertexId).map(|inner| VertexProvenance::Copy {
            copy: copy as u32,
            inner,
        }));
    }

    let blocks: Vec<Vec<VertexId>> = (0..prev_n as VertexId).combinations(r - 1).collect();
    let mut next_vertex = (copies * prev_n) as VertexId;
    let mut s_index = 0u64;
    for chosen in (0..copies).combinations(d) {
        for picks in (0..d).map(|_| 0..blocks.len()).multi_cartesian_product() {
            for j in 1..r as u32 {
                let fresh = next_vertex;
                next_vertex += 1;
                provenance.push(VertexProvenance::New { s_index, j });
                for (&copy, &pick) in chosen.iter().zip(&picks) {
                    let offset = (copy * prev_n) as VertexId;
                    let mut edge: Vec<VertexId> = blocks[pick].iter().map(|&v| v + offset).collect();
                    edge.push(fresh);
                    edges.push(edge);
                }
            }
            s_index += 1;
        }
    }
    debug_assert_eq!(next_vertex as usize, total_vertices);

    let graph = Hypergraph::new(total_vertices, r, edges)?;
    Ok(Construction {
        params: ConstructionParams::new(r, d)?,
        graph,
        provenance,
    })
}

/// Builds `G_d` with per-vertex provenance of the final step.
///
/// Refuses up front when the predicted `|V| + |E|` of `G_d` exceeds `cap`.
pub fn build_with_provenance(params: ConstructionParams, cap: &SizeCap) -> Result<Construction, ConstructionError> {
    cap.check(&predict_sizes(params))?;
    let mut current = base_construction(params.r)?;
    for d in 2..=params.d {
        current = extend(&current.graph, params.r, d, cap)?;
    }
    Ok(current)
}

/// Builds `G_d`. Deterministic: equal parameters give equal hypergraphs.
pub fn build(params: ConstructionParams, cap: &SizeCap) -> Result<Hypergraph, ConstructionError> {
    build_with_provenance(params, cap).map(|c| c.graph)
}

/// `C(n, k)` as a big integer. Exposed for callers reporting sizes.
pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if k == 0 {
        return BigUint::one();
    }
    binomial(BigUint::from(n), BigUint::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn stats(r: usize, d: usize) -> (u64, u64, u64) {
        let s = predict_sizes(ConstructionParams::new(r, d).unwrap());
        (
            s.vertices.to_u64().unwrap(),
            s.edges.to_u64().unwrap(),
            s.s_sets.to_u64().unwrap(),
        )
    }

    #[test]
    fn base_instances() {
        let h = build_base(2).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges()), (2, 1));
        assert_eq!(h.edge(0), &[0, 1]);

        let h = build_base(3).unwrap();
        assert_eq!(h.num_vertices(), 6);
        let edges: Vec<&[u32]> = h.edges().collect();
        assert_eq!(edges, vec![&[0, 1, 2][..], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);

        let h = build_base(4).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges()), (12, 9));
        for (i, e) in h.edges().enumerate() {
            let window: Vec<u32> = (i as u32..i as u32 + 4).collect();
            assert_eq!(e, window.as_slice());
        }
        assert_eq!(build_base(1), Err(ConstructionError::InvalidParams { r: 1, d: 1 }));
    }

    #[test]
    fn explicit_second_level_for_graphs() {
        let c = extend(&build_base(2).unwrap(), 2, 2, &SizeCap::default()).unwrap();
        let expected = Hypergraph::new(
            8,
            2,
            [
                [0, 1],
                [2, 3],
                [0, 4],
                [2, 4],
                [0, 5],
                [3, 5],
                [1, 6],
                [2, 6],
                [1, 7],
                [3, 7],
            ],
        )
        .unwrap();
        assert_eq!(c.graph, expected);
        assert_eq!(c.provenance[3], VertexProvenance::Copy { copy: 1, inner: 1 });
        assert_eq!(c.provenance[6], VertexProvenance::New { s_index: 2, j: 1 });
        assert_eq!(c.new_vertices().collect::<Vec<_>>(), vec![4, 5, 6, 7]);
    }

    #[test]
    fn new_vertices_have_degree_d() {
        for (r, d) in [(2, 2), (2, 3), (3, 2)] {
            let c = build_with_provenance(ConstructionParams::new(r, d).unwrap(), &SizeCap::default()).unwrap();
            let mut count = 0;
            for v in c.new_vertices() {
                assert_eq!(c.graph.degree(v).unwrap(), d);
                count += 1;
            }
            assert_eq!(count as u64, stats(r, d).2 * (r as u64 - 1));
        }
    }

    #[test]
    fn predicted_sizes() {
        assert_eq!(stats(2, 1), (2, 1, 0));
        assert_eq!(stats(2, 2), (8, 10, 4));
        assert_eq!(stats(3, 2), (1368, 2712, 675));
        assert_eq!(stats(4, 1), (12, 9, 0));
        assert_eq!(stats(2, 3), (536, 1566, 512));
        // C(4,3) * C(1368,2)^3
        let s = predict_sizes(ConstructionParams::new(3, 3).unwrap());
        assert_eq!(s.s_sets, BigUint::from(4u32) * Pow::pow(big_binomial(1368, 2), 3u32));
    }

    #[test]
    fn built_sizes_match_prediction() {
        for (r, d) in [(2, 1), (3, 1), (4, 1), (5, 1), (2, 2), (2, 3), (3, 2)] {
            let p = ConstructionParams::new(r, d).unwrap();
            let h = build(p, &SizeCap::default()).unwrap();
            let s = predict_sizes(p);
            assert_eq!(BigUint::from(h.num_vertices()), s.vertices, "r={r} d={d}");
            assert_eq!(BigUint::from(h.num_edges()), s.edges, "r={r} d={d}");
            assert_eq!(h.duplicates_dropped(), 0);
        }
    }

    #[test]
    fn oversized_builds_are_refused() {
        let err = build(ConstructionParams::new(3, 3).unwrap(), &SizeCap::default()).unwrap_err();
        assert!(matches!(err, ConstructionError::TooLarge { .. }));
        let err = build(ConstructionParams::new(2, 3).unwrap(), &SizeCap::at_most(2000u32)).unwrap_err();
        match err {
            ConstructionError::TooLarge { vertices, edges, .. } => {
                assert_eq!(vertices, BigUint::from(536u32));
                assert_eq!(edges, BigUint::from(1566u32));
            }
            other => panic!("unexpected {other:?}"),
        }
        // 536^4 S-sets at d = 4.
        let err = build(ConstructionParams::new(2, 4).unwrap(), &SizeCap::default()).unwrap_err();
        assert!(matches!(err, ConstructionError::TooLarge { .. }));
        let err = build(ConstructionParams::new(2, 4).unwrap(), &SizeCap::unlimited()).unwrap_err();
        assert!(matches!(err, ConstructionError::Unrepresentable { .. }));
    }

    #[test]
    fn invalid_params() {
        assert!(ConstructionParams::new(2, 0).is_err());
        assert!(ConstructionParams::new(1, 3).is_err());
        let base = build_base(3).unwrap();
        assert_eq!(
            extend(&base, 2, 2, &SizeCap::default()).unwrap_err(),
            ConstructionError::UniformityMismatch { expected: 2, found: 3 }
        );
        assert!(matches!(
            extend(&base, 3, 1, &SizeCap::default()),
            Err(ConstructionError::InvalidParams { .. })
        ));
    }

    #[test]
    fn block_structure() {
        let c = build_with_provenance(ConstructionParams::new(3, 2).unwrap(), &SizeCap::default()).unwrap();
        let block = 6u32;
        let copies = 3u32;
        for e in c.graph.edges() {
            let fresh: Vec<u32> = e.iter().copied().filter(|&v| v >= copies * block).collect();
            let old: Vec<u32> = e.iter().copied().filter(|&v| v < copies * block).collect();
            assert!(fresh.len() <= 1);
            assert!(old.iter().all(|&v| v / block == old[0] / block));
        }
    }
}
