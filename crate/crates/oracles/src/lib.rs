//! Brute-force reference implementations for tests.
//!
//! Nothing here shares code with the algorithms under test beyond reading
//! the edge list of a [`Hypergraph`]. Everything is exponential and meant
//! for instances with at most a dozen or so vertices.

use hgcolor_core::Hypergraph;
use rand::seq::index::sample;
use rand::Rng;

fn edge_masks(h: &Hypergraph) -> Vec<u64> {
    assert!(h.num_vertices() <= 64, "oracles work on at most 64 vertices");
    h.edges().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v)).collect()
}

/// Degeneracy straight from the definition: the maximum, over all non-empty
/// vertex subsets `W`, of the minimum degree in the subhypergraph induced by
/// `W`. `O(2^n * m * n)`.
pub fn degeneracy_by_subsets(h: &Hypergraph) -> usize {
    let n = h.num_vertices();
    assert!(n <= 20, "subset oracle is exponential");
    let masks = edge_masks(h);
    let mut best = 0;
    for w in 1u64..1 << n {
        let mut degree = vec![0usize; n];
        for &e in masks.iter().filter(|&&e| e & w == e) {
            for (v, d) in degree.iter_mut().enumerate() {
                if e >> v & 1 == 1 {
                    *d += 1;
                }
            }
        }
        let min = (0..n).filter(|&v| w >> v & 1 == 1).map(|v| degree[v]).min().unwrap();
        best = best.max(min);
    }
    best
}

/// Calls `visit` on every assignment in `0..k`^n (odometer order) until it
/// returns false.
fn for_each_assignment(n: usize, k: usize, mut visit: impl FnMut(&[u32]) -> bool) {
    let mut colors = vec![0u32; n];
    loop {
        if !visit(&colors) {
            return;
        }
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            colors[i] += 1;
            if (colors[i] as usize) < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

fn proper(h: &Hypergraph, colors: &[u32]) -> bool {
    h.edges()
        .all(|e| e.iter().any(|&v| colors[v as usize] != colors[e[0] as usize]))
}

/// Whether some assignment of `k` colours leaves no edge monochromatic,
/// by trying all `k^n` of them.
pub fn colorable_by_enumeration(h: &Hypergraph, k: usize) -> bool {
    let mut found = false;
    for_each_assignment(h.num_vertices(), k, |colors| {
        found = proper(h, colors);
        !found
    });
    found
}

/// Smallest colour count admitting a proper colouring, by enumeration.
pub fn chromatic_by_enumeration(h: &Hypergraph) -> usize {
    if h.num_vertices() == 0 {
        return 0;
    }
    (1..).find(|&k| colorable_by_enumeration(h, k)).unwrap()
}

/// Minimum over all proper `k`-colourings of the smallest class size
/// (unused colours count as 0), by enumerating all `k^n` assignments.
pub fn min_class_by_enumeration(h: &Hypergraph, k: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for_each_assignment(h.num_vertices(), k, |colors| {
        if proper(h, colors) {
            let mut sizes = vec![0usize; k];
            for &c in colors {
                sizes[c as usize] += 1;
            }
            let smallest = *sizes.iter().min().unwrap();
            best = Some(best.map_or(smallest, |b| b.min(smallest)));
        }
        true
    });
    best
}

/// Lexicographically first triple of edge indices `a < b < c` whose union
/// has exactly `r + 1` vertices. `O(m^3)`.
pub fn triangle_by_triples(h: &Hypergraph) -> Option<[usize; 3]> {
    let m = h.num_edges();
    let r = h.uniformity();
    let edges: Vec<&[u32]> = h.edges().collect();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let mut union: Vec<u32> = edges[a].iter().chain(edges[b]).chain(edges[c]).copied().collect();
                union.sort_unstable();
                union.dedup();
                if union.len() == r + 1 {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Random `r`-uniform hypergraph with `n` vertices and up to `m` distinct
/// edges drawn uniformly (duplicates are dropped).
pub fn random_uniform<R: Rng>(rng: &mut R, n: usize, r: usize, m: usize) -> Hypergraph {
    let edges: Vec<Vec<u32>> = (0..m)
        .map(|_| sample(rng, n, r).into_iter().map(|v| v as u32).collect())
        .collect();
    Hypergraph::new(n, r, edges).unwrap()
}
