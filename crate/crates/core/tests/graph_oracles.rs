mod common;

use common::*;
use rand::Rng;
use rbt_core::graph::{mantel_number, Edge, Graph};

fn triangle_list(g: &Graph) -> Vec<[usize; 3]> {
    g.triangles().iter().map(|t| t.vertices()).collect()
}

#[test]
fn triangles_match_naive_scan_exhaustively() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            let naive = naive_triangles(&g);
            assert_eq!(triangle_list(&g), naive);
            assert_eq!(g.is_triangle_free(), naive.is_empty());
        }
    }
}

#[test]
fn triangles_match_naive_scan_randomly() {
    let mut rng = rng(1);
    for _ in 0..10_000 {
        let n = rng.gen_range(6..=8);
        let p = rng.gen_range(0.0..=1.0);
        let g = random_graph(&mut rng, n, p);
        let naive = naive_triangles(&g);
        assert_eq!(triangle_list(&g), naive);
        assert_eq!(g.find_triangle().is_none(), naive.is_empty());
    }
}

#[test]
fn vertex_deletion_identity() {
    let mut rng = rng(2);
    for _ in 0..2_000 {
        let n = rng.gen_range(2..=64);
        let g = random_dense(&mut rng, n);
        let x = rng.gen_range(0..n);
        let h = g.delete_vertex(x).unwrap();
        assert_eq!(h.order(), n - 1);
        assert_eq!(g.edge_count(), g.degree(x).unwrap() + h.edge_count());
        // Relabeling: vertices above x shift down by one.
        let m = matrix(&g);
        let keep: Vec<usize> = (0..n).filter(|&v| v != x).collect();
        for (a, &ga) in keep.iter().enumerate() {
            for (b, &gb) in keep.iter().enumerate() {
                assert_eq!(h.has_edge(a, b), a != b && m[ga][gb]);
            }
        }
    }
}

#[test]
fn adjacency_stays_symmetric() {
    let mut rng = rng(3);
    for _ in 0..2_000 {
        let n = rng.gen_range(2..=64);
        let mut g = random_graph(&mut rng, n, 0.3);
        for _ in 0..10 {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n);
            if u == v {
                v = (v + 1) % n;
            }
            g = g.toggled(Edge::new(u, v).unwrap()).unwrap();
        }
        for a in 0..n {
            assert!(!g.row(a).contains(a));
            for b in g.row(a).iter() {
                assert!(g.row(b).contains(a));
            }
        }
        let sum: usize = (0..n).map(|v| g.degree(v).unwrap()).sum();
        assert_eq!(sum, 2 * g.edge_count());
    }
}

#[test]
fn mantel_maximum_on_six_vertices() {
    let best = all_graphs(6)
        .filter(|g| naive_triangles(g).is_empty())
        .map(|g| g.edge_count())
        .max()
        .unwrap();
    assert_eq!(best, 9);
    assert_eq!(best as u64, mantel_number(6));
}

#[test]
fn hex_round_trip_and_bit_positions() {
    let mut rng = rng(4);
    for _ in 0..1_000 {
        let n = rng.gen_range(1..=64);
        let g = random_dense(&mut rng, n);
        let hex = g.to_hex();
        assert_eq!(hex.len(), 2 * (n * (n - 1) / 2).div_ceil(8));
        assert_eq!(Graph::from_hex(n, &hex).unwrap(), g);
        // Independent decoding: bit k of the little-endian byte string is
        // the k-th pair in colex order.
        let bytes: Vec<u8> = (0..hex.len() / 2)
            .map(|i| u8::from_str_radix(&hex[2 * i..2 * i + 2], 16).unwrap())
            .collect();
        for (k, (u, v)) in pairs(n).into_iter().enumerate() {
            assert_eq!(bytes[k / 8] >> (k % 8) & 1 == 1, g.has_edge(u, v));
        }
    }
}
