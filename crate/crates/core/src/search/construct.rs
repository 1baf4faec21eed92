//! Extremal systems.

use crate::error::SystemError;
use crate::graph::Graph;
use crate::rainbow::GraphSystem;

/// `(K_n, K_n, empty)`: total `n(n-1)` edges.
pub fn two_complete_one_empty(n: usize) -> Result<GraphSystem, SystemError> {
    let k = Graph::complete(n)?;
    GraphSystem::new(vec![k.clone(), k, Graph::empty(n)?])
}

/// `t` copies of `K_{floor(n/2), ceil(n/2)}`, left side `0..floor(n/2)`:
/// total `t floor(n^2/4)` edges.
pub fn balanced_bipartite_system(n: usize, t: usize) -> Result<GraphSystem, SystemError> {
    let g = Graph::complete_bipartite(n / 2, n - n / 2)?;
    GraphSystem::repeated(&g, t)
}

/// Three copies of the balanced complete bipartite graph: product
/// `floor(n^2/4)^3`.
pub fn bipartite_triple(n: usize) -> Result<GraphSystem, SystemError> {
    balanced_bipartite_system(n, 3)
}
