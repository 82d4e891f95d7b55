//! Opt-in multi-threaded `k`-colourability.
//!
//! The search tree is split on the colour of the second vertex in search
//! order (the first is pinned to colour 0, as in the sequential search) and
//! the `k` subtrees are searched on separate threads, each with the full
//! node budget. The decision always equals the sequential one; the witness
//! may differ.

use std::thread;

use hgcolor_core::certify::{search_order, KColoring};
use hgcolor_core::{k_colorable, Budget, CertifyError, Coloring, Hypergraph};

pub fn k_colorable_parallel(h: &Hypergraph, k: usize, budget: Budget) -> Result<Option<Coloring>, CertifyError> {
    let order = search_order(h);
    if k < 2 || order.len() < 2 {
        return k_colorable(h, k, budget);
    }
    let (first, second) = (order[0], order[1]);
    let results: Vec<_> = thread::scope(|scope| {
        let handles: Vec<_> = (0..k as u32)
            .map(|c| {
                scope.spawn(move || {
                    KColoring::new(h, k)
                        .budget(budget)
                        .assume(first, 0)
                        .assume(second, c)
                        .run()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|handle| handle.join().expect("search thread panicked"))
            .collect()
    });
    let mut exceeded = None;
    for result in results {
        match result {
            Ok(outcome) => {
                if let Some(c) = outcome.coloring {
                    return Ok(Some(c));
                }
            }
            Err(e @ CertifyError::BudgetExceeded { .. }) => exceeded = Some(e),
            Err(e) => return Err(e),
        }
    }
    exceeded.map_or(Ok(None), Err)
}
