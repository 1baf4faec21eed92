//! Random generators and brute-force oracles shared by the integration tests.
//! The oracles use plain adjacency matrices, independent of the library's
//! bitset code.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbt_core::graph::{Edge, Graph};
use rbt_core::rainbow::{find_rainbow_triangle, GraphSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n)
        .map(|a| (0..n).map(|b| a != b && g.has_edge(a, b)).collect())
        .collect()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    Graph::from_edges(n, pairs(n).into_iter().filter(|_| rng.gen_bool(p))).unwrap()
}

/// Random maximal-ish triangle-free graph: edges inserted in random order,
/// skipped when they close a triangle, then thinned at a random rate.
pub fn random_triangle_free(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut order = pairs(n);
    order.shuffle(rng);
    let keep = rng.gen_range(0.3..=1.0);
    let mut m = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for (u, v) in order {
        if (0..n).any(|w| m[u][w] && m[v][w]) {
            continue;
        }
        m[u][v] = true;
        m[v][u] = true;
        edges.push((u, v));
    }
    let edges: Vec<_> = edges.into_iter().filter(|_| rng.gen_bool(keep)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Random system with random densities, repaired into an RBT-free one by
/// deleting one side of some rainbow triangle until none is left.
pub fn random_rbt_free(rng: &mut ChaCha8Rng, n: usize, t: usize) -> GraphSystem {
    let graphs = (0..t)
        .map(|_| {
            let p = rng.gen_range(0.0..=1.0);
            random_graph(rng, n, p)
        })
        .collect();
    repair(rng, GraphSystem::new(graphs).unwrap(), |_, _| {})
}

/// Deletes rainbow sides until the system is RBT-free. `on_delete(graphs, i)`
/// may adjust the other graphs after a side is removed from graph `i`.
pub fn repair(
    rng: &mut ChaCha8Rng,
    s: GraphSystem,
    mut on_delete: impl FnMut(&mut Vec<Graph>, (usize, Edge)),
) -> GraphSystem {
    let mut s = s;
    while let Some(w) = find_rainbow_triangle(&s) {
        let j = rng.gen_range(0..3);
        let (i, e) = (w.graphs[j], w.edges[j]);
        let mut graphs = s.into_graphs();
        graphs[i] = graphs[i].without_edge(e).unwrap();
        on_delete(&mut graphs, (i, e));
        s = GraphSystem::new(graphs).unwrap();
    }
    s
}

/// Triangles by naive triple scan.
pub fn naive_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let m = matrix(g);
    let n = g.order();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if m[a][b] && m[a][c] && m[b][c] {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Maximum matching size by exhaustive branching on the lowest vertex.
pub fn naive_matching_number(g: &Graph) -> usize {
    fn go(m: &[Vec<bool>], free: &mut Vec<bool>, start: usize) -> usize {
        let n = m.len();
        let Some(a) = (start..n).find(|&a| free[a]) else {
            return 0;
        };
        free[a] = false;
        let mut best = go(m, free, a + 1);
        for b in a + 1..n {
            if free[b] && m[a][b] {
                free[b] = false;
                best = best.max(1 + go(m, free, a + 1));
                free[b] = true;
            }
        }
        free[a] = true;
        best
    }
    let m = matrix(g);
    go(&m, &mut vec![true; g.order()], 0)
}

/// Rainbow triangle by brute force over all 3-sets and all ordered triples
/// of distinct graph indices.
pub fn naive_has_rainbow(s: &GraphSystem) -> bool {
    let t = s.len();
    let ms: Vec<_> = s.graphs().iter().map(matrix).collect();
    let n = s.order();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for i in 0..t {
                    for j in 0..t {
                        for k in 0..t {
                            if i != j
                                && j != k
                                && i != k
                                && ms[i][a][b]
                                && ms[j][b][c]
                                && ms[k][a][c]
                            {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

pub fn floor_quarter(n: usize) -> usize {
    n * n / 4
}

/// Every graph on `n` vertices, as a colex bit pattern and graph.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let m = n * (n - 1) / 2;
    (0..1u64 << m).map(move |bits| {
        let edges = pairs(n)
            .into_iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .map(|(_, e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

/// Random graph with a uniformly random edge density.
pub fn random_dense(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p = rng.gen_range(0.0..=1.0);
    random_graph(rng, n, p)
}
