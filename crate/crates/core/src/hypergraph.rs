//! Uniform hypergraphs, colourings and the basic predicates on them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use itertools::Itertools;

/// Dense 0-based vertex index.
pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    /// Uniformity below 2.
    InvalidUniformity(usize),
    VertexOutOfRange {
        vertex: u64,
        n: usize,
    },
    /// An edge listed the same vertex twice.
    RepeatedVertex {
        edge: usize,
        vertex: VertexId,
    },
    EdgeSize {
        edge: usize,
        expected: usize,
        found: usize,
    },
    TooManyVertices(usize),
    /// `complete_uniform` with fewer vertices than the uniformity.
    TooFewVertices {
        n: usize,
        r: usize,
    },
    ColoringLength {
        expected: usize,
        found: usize,
    },
    ColorOutOfRange {
        vertex: usize,
        color: u32,
        k: u32,
    },
}

impl fmt::Display for HypergraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidUniformity(r) => write!(f, "uniformity must be at least 2, got {r}"),
            Self::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            Self::RepeatedVertex { edge, vertex } => {
                write!(f, "edge {edge} lists vertex {vertex} more than once")
            }
            Self::EdgeSize { edge, expected, found } => {
                write!(f, "edge {edge} has {found} vertices, expected {expected}")
            }
            Self::TooManyVertices(n) => write!(f, "{n} vertices exceed the supported id range"),
            Self::TooFewVertices { n, r } => {
                write!(
                    f,
                    "complete {r}-uniform hypergraph needs at least {r} vertices, got {n}"
                )
            }
            Self::ColoringLength { expected, found } => {
                write!(f, "colouring covers {found} vertices, hypergraph has {expected}")
            }
            Self::ColorOutOfRange { vertex, color, k } => {
                write!(f, "vertex {vertex} has colour {color}, outside 0..{k}")
            }
        }
    }
}

impl core::error::Error for HypergraphError {}

/// An `r`-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored sorted within themselves and the edge list is sorted
/// lexicographically and deduplicated, so two hypergraphs with the same edge
/// set compare equal regardless of how they were built. Values are immutable;
/// the per-vertex incidence index is built once on construction.
#[derive(Clone)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    /// `m * r` vertex ids, edge `i` at `[i * r, (i + 1) * r)`.
    edges: Vec<VertexId>,
    incidence_offsets: Vec<usize>,
    incidence: Vec<u32>,
    duplicates_dropped: usize,
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary edge lists.
    ///
    /// Vertices inside an edge may come in any order. Duplicate edges are
    /// dropped and counted (see [`Hypergraph::duplicates_dropped`]); an edge
    /// of the wrong size, or one repeating a vertex, is an error.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[VertexId]>,
    {
        if r < 2 {
            return Err(HypergraphError::InvalidUniformity(r));
        }
        if n > VertexId::MAX as usize {
            return Err(HypergraphError::TooManyVertices(n));
        }
        let mut rows: Vec<Vec<VertexId>> = Vec::new();
        for (index, edge) in edges.into_iter().enumerate() {
            let edge = edge.as_ref();
            if edge.len() != r {
                return Err(HypergraphError::EdgeSize {
                    edge: index,
                    expected: r,
                    found: edge.len(),
                });
            }
            let mut row = edge.to_vec();
            row.sort_unstable();
            if let Some(&v) = row.iter().find(|&&v| v as usize >= n) {
                return Err(HypergraphError::VertexOutOfRange { vertex: v as u64, n });
            }
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex {
                    edge: index,
                    vertex: w[0],
                });
            }
            rows.push(row);
        }
        rows.sort_unstable();
        let before = rows.len();
        rows.dedup();
        let duplicates_dropped = before - rows.len();
        let flat = rows.into_iter().flatten().collect();
        let mut h = Self::from_sorted_flat(n, r, flat);
        h.duplicates_dropped = duplicates_dropped;
        Ok(h)
    }

    /// `n` isolated vertices.
    pub fn empty(n: usize, r: usize) -> Result<Self, HypergraphError> {
        Self::new(n, r, core::iter::empty::<[VertexId; 0]>())
    }

    /// Caller guarantees canonical form: rows sorted, lex-sorted, distinct, in range.
    fn from_sorted_flat(n: usize, r: usize, edges: Vec<VertexId>) -> Self {
        let mut counts = vec![0usize; n + 1];
        for &v in &edges {
            counts[v as usize + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut incidence = vec![0u32; edges.len()];
        for (e, row) in edges.chunks_exact(r).enumerate() {
            for &v in row {
                incidence[fill[v as usize]] = e as u32;
                fill[v as usize] += 1;
            }
        }
        Self {
            n,
            r,
            edges,
            incidence_offsets: counts,
            incidence,
            duplicates_dropped: 0,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len() / self.r
    }

    /// Number of duplicate edges discarded when this value was built.
    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    /// Vertices of edge `index`, ascending. Panics if out of range.
    pub fn edge(&self, index: usize) -> &[VertexId] {
        &self.edges[index * self.r..(index + 1) * self.r]
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> core::slice::ChunksExact<'_, VertexId> {
        self.edges.chunks_exact(self.r)
    }

    /// Indices of the edges containing `v`, ascending. Panics if `v >= n`.
    pub fn incident_edges(&self, v: VertexId) -> &[u32] {
        let v = v as usize;
        &self.incidence[self.incidence_offsets[v]..self.incidence_offsets[v + 1]]
    }

    /// Index of the edge with exactly these (ascending) vertices.
    pub fn find_edge(&self, sorted: &[VertexId]) -> Option<usize> {
        if sorted.len() != self.r {
            return None;
        }
        let (mut lo, mut hi) = (0, self.num_edges());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            match self.edge(mid).cmp(sorted) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), HypergraphError> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(HypergraphError::VertexOutOfRange {
                vertex: v as u64,
                n: self.n,
            })
        }
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: VertexId) -> Result<usize, HypergraphError> {
        self.check_vertex(v)?;
        Ok(self.incident_edges(v).len())
    }

    pub fn max_degree(&self) -> usize {
        self.incidence_offsets
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
    }

    /// Subhypergraph induced by `keep`: every edge lying entirely inside
    /// `keep`, with the kept vertices relabelled `0..keep.len()` in
    /// increasing id order. Repeats in `keep` are ignored.
    pub fn induced(&self, keep: &[VertexId]) -> Result<Hypergraph, HypergraphError> {
        const DROPPED: u32 = u32::MAX;
        let mut relabel = vec![DROPPED; self.n];
        for &v in keep {
            self.check_vertex(v)?;
            relabel[v as usize] = 0;
        }
        let mut next = 0u32;
        for slot in relabel.iter_mut().filter(|s| **s != DROPPED) {
            *slot = next;
            next += 1;
        }
        let mut flat = Vec::new();
        for edge in self.edges() {
            if edge.iter().all(|&v| relabel[v as usize] != DROPPED) {
                // Relabelling is monotone, so rows and row order stay canonical.
                flat.extend(edge.iter().map(|&v| relabel[v as usize]));
            }
        }
        Ok(Self::from_sorted_flat(next as usize, self.r, flat))
    }

    /// Whether no edge is monochromatic under `coloring`.
    pub fn is_proper(&self, coloring: &Coloring) -> Result<bool, HypergraphError> {
        if coloring.len() != self.n {
            return Err(HypergraphError::ColoringLength {
                expected: self.n,
                found: coloring.len(),
            });
        }
        let colors = coloring.colors();
        Ok(self
            .edges()
            .all(|e| e.iter().any(|&v| colors[v as usize] != colors[e[0] as usize])))
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// The complete `r`-uniform hypergraph on `n` vertices: all `C(n, r)`
/// `r`-subsets, in lexicographic order.
pub fn complete_uniform(n: usize, r: usize) -> Result<Hypergraph, HypergraphError> {
    if r < 2 {
        return Err(HypergraphError::InvalidUniformity(r));
    }
    if n < r {
        return Err(HypergraphError::TooFewVertices { n, r });
    }
    if n > VertexId::MAX as usize {
        return Err(HypergraphError::TooManyVertices(n));
    }
    let flat = (0..n as VertexId).combinations(r).flatten().collect();
    Ok(Hypergraph::from_sorted_flat(n, r, flat))
}

/// A total assignment of colours `0..k` to vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
    k: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, k: u32) -> Result<Self, HypergraphError> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(HypergraphError::ColorOutOfRange { vertex, color, k });
        }
        Ok(Self { colors, k })
    }

    /// Palette size `k`: the colouring uses colours from `0..k`.
    pub fn palette(&self) -> u32 {
        self.k
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: VertexId) -> u32 {
        self.colors[v as usize]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of vertices per colour, indexed by colour.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k as usize];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Number of distinct colours actually used.
    pub fn colors_used(&self) -> usize {
        self.class_sizes().iter().filter(|&&s| s > 0).count()
    }
}
