//! Exact checks for degeneracy, triangle-freeness and colourings.
//!
//! All tie-breaking is by lowest vertex id or lowest edge index, so every
//! certificate returned here is deterministic. Search budgets count
//! backtracking nodes (one node per tentative colour assignment) rather than
//! wall-clock time.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::hypergraph::{Coloring, Hypergraph, HypergraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyError {
    Hypergraph(HypergraphError),
    /// Elimination order is not a permutation of the vertices, or its
    /// recorded step degrees do not match the hypergraph.
    InvalidOrder(&'static str),
    /// Colour counts must be at least 1.
    InvalidColorCount(usize),
    BudgetExceeded {
        nodes: u64,
    },
    /// No proper colouring with at most `kmax` colours.
    ChromaticAbove {
        kmax: usize,
    },
}

impl fmt::Display for CertifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Hypergraph(e) => write!(f, "{e}"),
            Self::InvalidOrder(why) => write!(f, "invalid elimination order: {why}"),
            Self::InvalidColorCount(k) => write!(f, "colour count must be at least 1, got {k}"),
            Self::BudgetExceeded { nodes } => write!(f, "search budget of {nodes} nodes exceeded"),
            Self::ChromaticAbove { kmax } => write!(f, "chromatic number exceeds {kmax}"),
        }
    }
}

impl core::error::Error for CertifyError {}

impl From<HypergraphError> for CertifyError {
    fn from(e: HypergraphError) -> Self {
        Self::Hypergraph(e)
    }
}

/// Maximum number of search nodes an exact routine may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A vertex removal sequence with the degree each vertex had, at removal
/// time, in the subhypergraph induced by itself and the vertices after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder {
    order: Vec<VertexId>,
    step_degrees: Vec<u32>,
}

impl EliminationOrder {
    /// Wraps an arbitrary vertex permutation, computing its step degrees.
    pub fn from_order(h: &Hypergraph, order: Vec<VertexId>) -> Result<Self, CertifyError> {
        let step_degrees = step_degrees(h, &order)?;
        Ok(Self { order, step_degrees })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn step_degrees(&self) -> &[u32] {
        &self.step_degrees
    }

    /// Largest step degree: the degeneracy bound this order witnesses.
    pub fn width(&self) -> usize {
        self.step_degrees.iter().copied().max().unwrap_or(0) as usize
    }

    /// Recomputes the step degrees from scratch and checks them against the
    /// stored ones. Returns the witnessed bound.
    pub fn verify(&self, h: &Hypergraph) -> Result<usize, CertifyError> {
        if step_degrees(h, &self.order)? != self.step_degrees {
            return Err(CertifyError::InvalidOrder("step degrees do not match the hypergraph"));
        }
        Ok(self.width())
    }
}

/// Position of each vertex in `order`; errors unless `order` is a permutation.
fn positions(h: &Hypergraph, order: &[VertexId]) -> Result<Vec<usize>, CertifyError> {
    let n = h.num_vertices();
    if order.len() != n {
        return Err(CertifyError::InvalidOrder("length differs from the vertex count"));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        let slot = pos
            .get_mut(v as usize)
            .ok_or(CertifyError::InvalidOrder("vertex out of range"))?;
        if *slot != usize::MAX {
            return Err(CertifyError::InvalidOrder("vertex listed twice"));
        }
        *slot = i;
    }
    Ok(pos)
}

fn step_degrees(h: &Hypergraph, order: &[VertexId]) -> Result<Vec<u32>, CertifyError> {
    let pos = positions(h, order)?;
    Ok(order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            h.incident_edges(v)
                .iter()
                .filter(|&&e| h.edge(e as usize).iter().all(|&u| pos[u as usize] >= i))
                .count() as u32
        })
        .collect())
}

/// Degeneracy of `h`: repeatedly removes a vertex of minimum residual
/// degree (lowest id on ties) together with its edges. The degeneracy is the
/// largest degree seen at removal time; the removal sequence is returned as
/// the certificate.
pub fn degeneracy(h: &Hypergraph) -> (usize, EliminationOrder) {
    let n = h.num_vertices();
    let mut degree: Vec<u32> = (0..n as VertexId).map(|v| h.incident_edges(v).len() as u32).collect();
    let mut queue: BTreeSet<(u32, VertexId)> = (0..n as VertexId).map(|v| (degree[v as usize], v)).collect();
    let mut edge_alive = vec![true; h.num_edges()];
    let mut order = Vec::with_capacity(n);
    let mut step = Vec::with_capacity(n);
    while let Some((deg, v)) = queue.pop_first() {
        order.push(v);
        step.push(deg);
        for &e in h.incident_edges(v) {
            if !core::mem::replace(&mut edge_alive[e as usize], false) {
                continue;
            }
            for &u in h.edge(e as usize) {
                if u != v && queue.remove(&(degree[u as usize], u)) {
                    degree[u as usize] -= 1;
                    queue.insert((degree[u as usize], u));
                }
            }
        }
    }
    let order = EliminationOrder {
        order,
        step_degrees: step,
    };
    (order.width(), order)
}

/// Whether every subhypergraph of `h` has a vertex of degree at most `d`.
pub fn is_d_degenerate(h: &Hypergraph, d: usize) -> bool {
    degeneracy(h).0 <= d
}

/// Three edges whose union has exactly `r + 1` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCertificate {
    /// Edge indices, ascending.
    pub edges: [usize; 3],
    /// Union of the three edges, ascending.
    pub union: Vec<VertexId>,
}

impl TriangleCertificate {
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let [a, b, c] = self.edges;
        if !(a < b && b < c && c < h.num_edges()) {
            return false;
        }
        let union: BTreeSet<VertexId> = [a, b, c].iter().flat_map(|&e| h.edge(e).iter().copied()).collect();
        union.len() == h.uniformity() + 1 && union.into_iter().eq(self.union.iter().copied())
    }
}

/// Lexicographically first triangle `(a, b, c)`, `a < b < c`, if any.
///
/// Two distinct `r`-edges span at least `r + 1` vertices, so any two edges of
/// a triangle overlap in exactly `r - 1` vertices. Edges are grouped by their
/// `(r - 1)`-subsets; for each overlapping pair the third edge must be one of
/// the other `r - 1` `r`-subsets of their union, found by binary search in the
/// sorted edge list.
pub fn find_triangle(h: &Hypergraph) -> Option<TriangleCertificate> {
    let r = h.uniformity();
    let mut by_ridge: BTreeMap<Vec<VertexId>, Vec<usize>> = BTreeMap::new();
    for (index, edge) in h.edges().enumerate() {
        for skip in 0..r {
            let ridge: Vec<VertexId> = edge
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            by_ridge.entry(ridge).or_default().push(index);
        }
    }
    // partners[a] = edges b > a sharing r - 1 vertices with a.
    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); h.num_edges()];
    for group in by_ridge.values() {
        for (i, &a) in group.iter().enumerate() {
            partners[a].extend_from_slice(&group[i + 1..]);
        }
    }
    let mut union = Vec::with_capacity(r + 1);
    let mut candidate = Vec::with_capacity(r);
    for (a, list) in partners.iter_mut().enumerate() {
        list.sort_unstable();
        for &b in list.iter() {
            union.clear();
            union.extend_from_slice(h.edge(a));
            union.extend_from_slice(h.edge(b));
            union.sort_unstable();
            union.dedup();
            let third = (0..=r)
                .filter_map(|skip| {
                    candidate.clear();
                    candidate.extend(union.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    h.find_edge(&candidate)
                })
                .filter(|&c| c > b)
                .min();
            if let Some(c) = third {
                return Some(TriangleCertificate {
                    edges: [a, b, c],
                    union: union.clone(),
                });
            }
        }
    }
    None
}

const UNCOLORED: u32 = u32::MAX;

/// Colours vertices in reverse elimination order with the smallest colour
/// not forbidden. Colour `c` is forbidden for `v` when some edge through `v`
/// has all its other vertices already coloured `c`. Uses at most
/// `order.width() + 1` colours.
pub fn greedy_color(h: &Hypergraph, order: &EliminationOrder) -> Result<Coloring, CertifyError> {
    let bound = order.verify(h)?;
    let mut colors = vec![UNCOLORED; h.num_vertices()];
    let mut forbidden = vec![false; bound + 1];
    for &v in order.order().iter().rev() {
        forbidden.iter_mut().for_each(|f| *f = false);
        for &e in h.incident_edges(v) {
            let mut others = h
                .edge(e as usize)
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| colors[u as usize]);
            let first = others.next().unwrap_or(UNCOLORED);
            if first != UNCOLORED && others.all(|c| c == first) {
                // At most `bound` edges qualify, so `first <= bound`.
                forbidden[first as usize] = true;
            }
        }
        let c = forbidden
            .iter()
            .position(|&f| !f)
            .expect("step degree bounds the forbidden colours");
        colors[v as usize] = c as u32;
    }
    let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    Ok(Coloring::new(colors, k)?)
}

/// Vertex order used by the exact solver: descending degree, then id.
pub fn search_order(h: &Hypergraph) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = (0..h.num_vertices() as VertexId).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(h.incident_edges(v).len()), v));
    order
}

/// Result of an exact colouring search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub coloring: Option<Coloring>,
    pub nodes: u64,
}

/// Exact backtracking search for a proper colouring with colours `0..k`.
///
/// Vertices are branched on in [`search_order`], colours in ascending order.
/// Whenever all but one vertex of an edge carry the same colour `c`, `c` is
/// removed from the remaining vertex's domain; an empty domain triggers a
/// backtrack. Without assumptions, the first branched vertex is fixed to
/// colour 0. Assumptions pin vertices to colours before the search starts
/// and replace that symmetry break, which lets callers split the search tree.
#[derive(Debug, Clone)]
pub struct KColoring<'a> {
    h: &'a Hypergraph,
    k: usize,
    budget: Budget,
    assumptions: Vec<(VertexId, u32)>,
}

impl<'a> KColoring<'a> {
    pub fn new(h: &'a Hypergraph, k: usize) -> Self {
        Self {
            h,
            k,
            budget: Budget::DEFAULT,
            assumptions: Vec::new(),
        }
    }

    pub fn budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn assume(mut self, v: VertexId, color: u32) -> Self {
        self.assumptions.push((v, color));
        self
    }

    pub fn run(&self) -> Result<SearchOutcome, CertifyError> {
        if self.k == 0 {
            return Err(CertifyError::InvalidColorCount(0));
        }
        let mut state = SearchState::new(self.h, self.k);
        for &(v, c) in &self.assumptions {
            if v as usize >= self.h.num_vertices() {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: v as u64,
                    n: self.h.num_vertices(),
                }
                .into());
            }
            if c as usize >= self.k {
                return Err(HypergraphError::ColorOutOfRange {
                    vertex: v as usize,
                    color: c,
                    k: self.k as u32,
                }
                .into());
            }
            if state.color[v as usize] != UNCOLORED {
                if state.color[v as usize] != c {
                    return Ok(SearchOutcome {
                        coloring: None,
                        nodes: 0,
                    });
                }
                continue;
            }
            if state.forbidden[v as usize * self.k + c as usize] > 0 || !state.assign(v, c) {
                return Ok(SearchOutcome {
                    coloring: None,
                    nodes: 0,
                });
            }
        }
        let order: Vec<VertexId> = search_order(self.h)
            .into_iter()
            .filter(|&v| state.color[v as usize] == UNCOLORED)
            .collect();
        let pin_first = self.assumptions.is_empty();
        let found = state.search(&order, pin_first, self.budget.0)?;
        let coloring = found
            .then(|| Coloring::new(state.color.clone(), self.k as u32))
            .transpose()?;
        Ok(SearchOutcome {
            coloring,
            nodes: state.nodes,
        })
    }
}

struct SearchState<'a> {
    h: &'a Hypergraph,
    k: usize,
    r: u32,
    color: Vec<u32>,
    colored_in_edge: Vec<u32>,
    /// `m * k` counters: vertices of edge `e` coloured `c`.
    per_color: Vec<u32>,
    /// `n * k` counters: edges currently forbidding colour `c` at `v`.
    forbidden: Vec<u32>,
    allowed: Vec<u32>,
    trail: Vec<(VertexId, u32)>,
    nodes: u64,
}

impl<'a> SearchState<'a> {
    fn new(h: &'a Hypergraph, k: usize) -> Self {
        let n = h.num_vertices();
        let m = h.num_edges();
        Self {
            h,
            k,
            r: h.uniformity() as u32,
            color: vec![UNCOLORED; n],
            colored_in_edge: vec![0; m],
            per_color: vec![0; m * k],
            forbidden: vec![0; n * k],
            allowed: vec![k as u32; n],
            trail: Vec::new(),
            nodes: 0,
        }
    }

    /// Colours `v` with `c` and propagates. Returns false if some vertex is
    /// left without an allowed colour; the state is still fully updated, so
    /// [`SearchState::unassign`] restores it either way.
    fn assign(&mut self, v: VertexId, c: u32) -> bool {
        let (h, k, r) = (self.h, self.k, self.r);
        self.color[v as usize] = c;
        let mut consistent = true;
        for &e in h.incident_edges(v) {
            let e = e as usize;
            self.colored_in_edge[e] += 1;
            self.per_color[e * k + c as usize] += 1;
            if self.colored_in_edge[e] == r - 1 && self.per_color[e * k + c as usize] == r - 1 {
                let last = *h
                    .edge(e)
                    .iter()
                    .find(|&&u| self.color[u as usize] == UNCOLORED)
                    .expect("one vertex left");
                let slot = &mut self.forbidden[last as usize * k + c as usize];
                *slot += 1;
                if *slot == 1 {
                    self.allowed[last as usize] -= 1;
                    if self.allowed[last as usize] == 0 {
                        consistent = false;
                    }
                }
                self.trail.push((last, c));
            }
        }
        consistent
    }

    fn unassign(&mut self, v: VertexId, mark: usize) {
        let k = self.k;
        let c = self.color[v as usize];
        for &e in self.h.incident_edges(v) {
            let e = e as usize;
            self.colored_in_edge[e] -= 1;
            self.per_color[e * k + c as usize] -= 1;
        }
        while self.trail.len() > mark {
            let (u, col) = self.trail.pop().expect("trail above mark");
            let slot = &mut self.forbidden[u as usize * k + col as usize];
            *slot -= 1;
            if *slot == 0 {
                self.allowed[u as usize] += 1;
            }
        }
        self.color[v as usize] = UNCOLORED;
    }

    fn search(&mut self, order: &[VertexId], pin_first: bool, budget: u64) -> Result<bool, CertifyError> {
        let n = order.len();
        let mut next_color = vec![0u32; n + 1];
        let mut marks = vec![0usize; n];
        let mut depth = 0;
        while depth < n {
            let v = order[depth];
            let limit = if pin_first && depth == 0 { 1 } else { self.k as u32 };
            let base = v as usize * self.k;
            let choice = (next_color[depth]..limit).find(|&c| self.forbidden[base + c as usize] == 0);
            match choice {
                Some(c) => {
                    next_color[depth] = c + 1;
                    self.nodes += 1;
                    if self.nodes > budget {
                        return Err(CertifyError::BudgetExceeded { nodes: budget });
                    }
                    marks[depth] = self.trail.len();
                    if self.assign(v, c) {
                        depth += 1;
                        next_color[depth] = 0;
                    } else {
                        self.unassign(v, marks[depth]);
                    }
                }
                None => {
                    if depth == 0 {
                        return Ok(false);
                    }
                    depth -= 1;
                    self.unassign(order[depth], marks[depth]);
                }
            }
        }
        Ok(true)
    }
}

/// A proper colouring with at most `k` colours, or `None` if none exists.
pub fn k_colorable(h: &Hypergraph, k: usize, budget: Budget) -> Result<Option<Coloring>, CertifyError> {
    KColoring::new(h, k).budget(budget).run().map(|o| o.coloring)
}

/// Smallest `k <= kmax` admitting a proper colouring, with a witness.
///
/// The budget is shared across all values of `k` tried. A hypergraph without
/// vertices has chromatic number 0.
pub fn optimal_coloring(h: &Hypergraph, kmax: usize, budget: Budget) -> Result<Coloring, CertifyError> {
    if kmax == 0 {
        return Err(CertifyError::InvalidColorCount(0));
    }
    if h.num_vertices() == 0 {
        return Ok(Coloring::new(Vec::new(), 0)?);
    }
    let mut remaining = budget.0;
    for k in 1..=kmax {
        let outcome = KColoring::new(h, k)
            .budget(Budget(remaining))
            .run()
            .map_err(|e| match e {
                CertifyError::BudgetExceeded { .. } => CertifyError::BudgetExceeded { nodes: budget.0 },
                other => other,
            })?;
        if let Some(c) = outcome.coloring {
            return Ok(c);
        }
        remaining -= outcome.nodes;
    }
    Err(CertifyError::ChromaticAbove { kmax })
}

/// Minimum number of colours in a proper colouring, searched up to `kmax`.
pub fn chromatic_number(h: &Hypergraph, kmax: usize, budget: Budget) -> Result<usize, CertifyError> {
    optimal_coloring(h, kmax, budget).map(|c| c.palette() as usize)
}

/// Over all proper colourings with colours `0..k`, the minimum size of the
/// smallest colour class (unused colours count as size 0). `None` if `h` has
/// no proper `k`-colouring.
///
/// Enumerates assignments in vertex-id order, abandoning a branch as soon as
/// an edge is completed monochromatically. Colourings that differ only by a
/// permutation of colours have the same answer, so colours are introduced in
/// first-use order. A branch is also dropped once every class already has at
/// least the best size found, since classes only grow.
pub fn min_color_class_size(h: &Hypergraph, k: usize, budget: Budget) -> Result<Option<usize>, CertifyError> {
    if k == 0 {
        return Err(CertifyError::InvalidColorCount(0));
    }
    let n = h.num_vertices();
    if n == 0 {
        return Ok(Some(0));
    }
    // Edges that are complete once their largest vertex is coloured.
    let closing: Vec<Vec<usize>> = (0..n as VertexId)
        .map(|v| {
            h.incident_edges(v)
                .iter()
                .map(|&e| e as usize)
                .filter(|&e| *h.edge(e).last().unwrap() == v)
                .collect()
        })
        .collect();
    let mut colors = vec![UNCOLORED; n];
    let mut sizes = vec![0usize; k];
    let mut used = vec![0u32; n + 1];
    let mut best: Option<usize> = None;
    let mut nodes = 0u64;
    let mut next = vec![0u32; n + 1];
    let mut depth = 0usize;
    loop {
        if depth == n {
            let smallest = *sizes.iter().min().expect("k >= 1");
            best = Some(best.map_or(smallest, |b| b.min(smallest)));
            if best == Some(0) {
                break;
            }
            depth -= 1;
            sizes[colors[depth] as usize] -= 1;
            colors[depth] = UNCOLORED;
            continue;
        }
        let limit = (used[depth] as usize + 1).min(k) as u32;
        let c = next[depth];
        if c >= limit {
            if depth == 0 {
                break;
            }
            depth -= 1;
            sizes[colors[depth] as usize] -= 1;
            colors[depth] = UNCOLORED;
            continue;
        }
        next[depth] = c + 1;
        nodes += 1;
        if nodes > budget.0 {
            return Err(CertifyError::BudgetExceeded { nodes: budget.0 });
        }
        colors[depth] = c;
        let mono = closing[depth]
            .iter()
            .any(|&e| h.edge(e).iter().all(|&u| colors[u as usize] == c));
        if mono {
            colors[depth] = UNCOLORED;
            continue;
        }
        sizes[c as usize] += 1;
        if let Some(b) = best {
            if sizes.iter().all(|&s| s >= b) {
                sizes[c as usize] -= 1;
                colors[depth] = UNCOLORED;
                continue;
            }
        }
        used[depth + 1] = used[depth].max(c + 1);
        depth += 1;
        next[depth] = 0;
    }
    Ok(best)
}
