mod common;

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rbt_core::certify::lemma_23_check;
use rbt_core::graph::{Edge, Graph, VertexSet};
use rbt_core::matching::{maximum_matching, MatchingResult};
use rbt_core::partition::{mantel_edge_bound, mantel_partition, verify_partition, MantelPartition};

/// Partition invariants checked directly on the adjacency matrix.
fn independent_check(g: &Graph, p: &MantelPartition, nu: usize) {
    let n = g.order();
    let m = matrix(g);
    let l = p.x_side.len();
    assert_eq!(l, nu);
    assert_eq!(p.y_side.len(), l);
    let mut owner = vec![0u8; n];
    for &x in &p.x_side {
        owner[x] += 1;
    }
    for &y in &p.y_side {
        owner[y] += 1;
    }
    for z in p.z_side.iter() {
        owner[z] += 1;
    }
    assert!(
        owner.iter().all(|&c| c == 1),
        "parts must partition the vertices"
    );
    for i in 0..l {
        assert!(m[p.x_side[i]][p.y_side[i]]);
    }
    let zs: Vec<usize> = p.z_side.iter().collect();
    for &z in &zs {
        for (w, &adjacent) in m[z].iter().enumerate() {
            if adjacent {
                assert!(p.x_side.contains(&w), "Z vertex {z} sees {w} outside X");
            }
        }
    }
    // Degree inside X ∪ Y is at most l.
    let xy: Vec<usize> = p.x_side.iter().chain(&p.y_side).copied().collect();
    for &w in &xy {
        assert!(xy.iter().filter(|&&v| m[w][v]).count() <= l);
    }
    // Consequence: |E| <= l(n - l).
    assert!(g.edge_count() <= l * (n - l));
}

#[test]
fn every_triangle_free_graph_up_to_six_vertices() {
    let mut checked = 0;
    for n in 1..=6 {
        for g in all_graphs(n).filter(|g| naive_triangles(g).is_empty()) {
            let p = mantel_partition(&g).unwrap();
            assert!(verify_partition(&g, &p));
            independent_check(&g, &p, naive_matching_number(&g));
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn random_triangle_free_graphs_up_to_32_vertices() {
    let mut rng = rng(20);
    for i in 0..1_000 {
        let n = rng.gen_range(1..=32);
        let g = random_triangle_free(&mut rng, n);
        let p = mantel_partition(&g).unwrap();
        assert!(verify_partition(&g, &p));
        let nu = if n <= 14 {
            naive_matching_number(&g)
        } else {
            maximum_matching(&g).size()
        };
        independent_check(&g, &p, nu);
        let r = mantel_edge_bound(&g).unwrap();
        assert!(r.holds(), "case {i}: {r}");
    }
}

#[test]
fn triangles_are_rejected() {
    let k3 = Graph::complete(3).unwrap();
    assert!(mantel_partition(&k3).is_err());
    assert!(mantel_edge_bound(&k3).is_err());
}

#[test]
fn tampered_partitions_fail() {
    let mut rng = rng(21);
    for _ in 0..300 {
        let n = rng.gen_range(3..=16);
        let g = random_triangle_free(&mut rng, n);
        let p = mantel_partition(&g).unwrap();
        if p.size() > 0 {
            // Break a matched pair.
            let mut q = p.clone();
            q.y_side.rotate_left(1);
            if q.size() > 1
                && q.x_side
                    .iter()
                    .zip(&q.y_side)
                    .any(|(&x, &y)| !g.has_edge(x, y))
            {
                assert!(!verify_partition(&g, &q));
            }
        }
        if let Some(z) = p.z_side.first() {
            // Drop a vertex from the cover.
            let q = MantelPartition {
                z_side: p.z_side.without(z),
                ..p.clone()
            };
            assert!(!verify_partition(&g, &q));
        }
    }
}

fn random_matching(rng: &mut ChaCha8Rng, g: &Graph, maximal: bool) -> MatchingResult {
    let mut edges: Vec<Edge> = g.edges().collect();
    edges.shuffle(rng);
    let mut used = VertexSet::default();
    let mut chosen = Vec::new();
    for e in edges {
        if used.contains(e.u()) || used.contains(e.v()) {
            continue;
        }
        if maximal || rng.gen_bool(0.5) {
            used = used.with(e.u()).with(e.v());
            chosen.push(e);
        }
    }
    MatchingResult::from_edges(chosen).unwrap()
}

#[test]
fn lemma_23_degree_bounds() {
    let mut rng = rng(22);
    let mut maximal_cases = 0;
    for _ in 0..3_000 {
        let n = rng.gen_range(2..=20);
        let g = random_triangle_free(&mut rng, n);
        let maximal = rng.gen_bool(0.5);
        let m = random_matching(&mut rng, &g, maximal);
        let w = m.matched_set();
        for x in (0..n).filter(|&x| !w.contains(x)) {
            let (local, total) = lemma_23_check(&g, &m, x).unwrap();
            assert!(local.holds());
            // Independent count.
            let dw = w.iter().filter(|&v| g.has_edge(x, v)).count();
            assert_eq!(local.value, dw as i128);
            assert!(dw <= m.size());
            if maximal {
                let total = total.expect("maximal matching");
                assert!(total.holds());
                assert!(g.degree(x).unwrap() <= m.size());
                maximal_cases += 1;
            }
        }
    }
    assert!(maximal_cases > 0);
}
