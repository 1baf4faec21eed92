use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::canon::{canonical_system, MAX_CANON_ORDER};
use super::construct::bipartite_triple;
use super::{constructor_value, Objective, SearchConfig, SearchMode, SearchReport};
use crate::error::SearchError;
use crate::graph::{pair_count, Edge, Graph};
use crate::rainbow::{is_rbt_free, GraphSystem};

/// Adding `e` to `graphs[i]` creates no rainbow triangle (`t = 3`).
fn can_add(graphs: &[Graph; 3], i: usize, e: Edge) -> bool {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let (a, b) = (&graphs[j], &graphs[k]);
    ((a.row(e.u()) & b.row(e.v())) | (b.row(e.u()) & a.row(e.v()))).is_empty()
}

fn key(graphs: &[Graph; 3]) -> (u128, usize) {
    let counts = graphs.each_ref().map(Graph::edge_count);
    (
        counts.iter().map(|&c| c as u128).product(),
        counts.iter().sum(),
    )
}

struct Restart {
    value: (u128, usize),
    graphs: [Graph; 3],
    nodes: u64,
    rejected: u64,
}

fn random_greedy(n: usize, rng: &mut ChaCha8Rng) -> Result<[Graph; 3], SearchError> {
    let mut graphs = [Graph::empty(n)?, Graph::empty(n)?, Graph::empty(n)?];
    let mut slots: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..pair_count(n)).map(move |k| (i, k)))
        .collect();
    slots.shuffle(rng);
    for (i, k) in slots {
        let e = Edge::from_colex_index(k);
        if can_add(&graphs, i, e) {
            graphs[i].insert(e);
        }
    }
    Ok(graphs)
}

fn climb(n: usize, index: u32, cfg: &SearchConfig) -> Result<Restart, SearchError> {
    let seed = cfg.seed.expect("validated");
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (u64::from(index)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut graphs: [Graph; 3] = if index == 0 {
        let s = bipartite_triple(n)?;
        let v = s.into_graphs();
        [v[0].clone(), v[1].clone(), v[2].clone()]
    } else {
        random_greedy(n, &mut rng)?
    };
    let pairs = pair_count(n);
    let mut out = Restart {
        value: key(&graphs),
        graphs: graphs.clone(),
        nodes: 0,
        rejected: 0,
    };
    if pairs == 0 {
        return Ok(out);
    }
    let mut stale = 0u64;
    for _ in 0..cfg.iterations {
        if stale >= cfg.patience {
            break;
        }
        out.nodes += 1;
        let i = rng.gen_range(0..3);
        let e = Edge::from_colex_index(rng.gen_range(0..pairs));
        if !graphs[i].contains(e) {
            if can_add(&graphs, i, e) {
                graphs[i].insert(e);
                stale = 0;
                out.value = key(&graphs);
                out.graphs = graphs.clone();
            } else {
                out.rejected += 1;
                stale += 1;
            }
            continue;
        }
        // Swap: move this edge of graph i to a random non-edge.
        let f = Edge::from_colex_index(rng.gen_range(0..pairs));
        stale += 1;
        if graphs[i].contains(f) {
            continue;
        }
        graphs[i].remove(e);
        if can_add(&graphs, i, f) {
            graphs[i].insert(f);
        } else {
            graphs[i].insert(e);
            out.rejected += 1;
        }
    }
    Ok(out)
}

/// Hill climbing for `|G_1||G_2||G_3|` on `n` vertices. Restart 0 starts from
/// three balanced complete bipartite graphs, the rest from random greedy
/// fillings. Each restart has its own stream seeded from `(seed, restart)`, so
/// the result does not depend on the thread count.
pub fn local_search_product(n: usize, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    cfg.validate(SearchMode::Local)?;
    if n == 0 || n > crate::graph::MAX_VERTICES {
        return Err(SearchError::Config(format!(
            "n must be in 1..={}",
            crate::graph::MAX_VERTICES
        )));
    }
    if cfg.restarts == 0 {
        return Err(SearchError::Config("at least one restart is needed".into()));
    }
    let started = Instant::now();
    let runs = cfg.pool()?.install(|| {
        (0..cfg.restarts)
            .into_par_iter()
            .map(|r| climb(n, r, cfg))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let nodes = runs.iter().map(|r| r.nodes).sum();
    let rejected = runs.iter().map(|r| r.rejected).sum();
    // Highest key; ties go to the lowest restart index.
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("restarts > 0");
    let mut graphs = best.graphs.to_vec();
    if n <= MAX_CANON_ORDER {
        let bits: Vec<u64> = graphs
            .iter()
            .map(|g| g.to_bits().expect("n <= 8"))
            .collect();
        graphs = canonical_system(n, &bits)
            .into_iter()
            .map(|b| Graph::from_bits(n, b))
            .collect::<Result<_, _>>()?;
    }
    let witness = GraphSystem::new(graphs)?;
    debug_assert!(is_rbt_free(&witness));
    let value = best.value.0;
    let bound = Objective::Product.bound(n, 3);
    Ok(SearchReport {
        objective: Objective::Product,
        mode: SearchMode::Local,
        n,
        t: 3,
        best: value,
        bound,
        constructor_value: constructor_value(Objective::Product, n, 3),
        exceeds_bound: bound.is_some_and(|b| value > b),
        witnesses: vec![witness],
        witness_overflow: false,
        nodes,
        pruned_bound: 0,
        pruned_rainbow: rejected,
        elapsed_ms: started.elapsed().as_millis() as u64,
        exhaustive: false,
    })
}
