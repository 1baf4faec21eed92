mod common;

use common::*;
use num_rational::Ratio;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rbt_core::certify::*;
use rbt_core::graph::{Edge, Graph};
use rbt_core::matching::{greedy_maximal_matching, maximum_matching};
use rbt_core::rainbow::{is_rbt_free, GraphSystem};
use rbt_core::report::{CertReport, Claim};
use rbt_core::CertError;

type Certifier = fn(&Graph, &Graph, &Graph) -> Result<CertReport, CertError>;

fn subgraph(rng: &mut ChaCha8Rng, g: &Graph, keep: f64) -> Graph {
    Graph::from_edges(
        g.order(),
        g.edges()
            .filter(|_| rng.gen_bool(keep))
            .map(|e| (e.u(), e.v())),
    )
    .unwrap()
}

fn union(a: &Graph, b: &Graph) -> Graph {
    a.union(b).unwrap()
}

/// RBT-free triples from four families: unconstrained, `B` triangle-free,
/// `B ⊆ C ∩ D`, and both at once.
fn sample_triple(rng: &mut ChaCha8Rng, n: usize, family: usize) -> GraphSystem {
    let (b, c, d) = match family {
        0 => (
            random_dense(rng, n),
            random_dense(rng, n),
            random_dense(rng, n),
        ),
        1 => (
            random_triangle_free(rng, n),
            random_dense(rng, n),
            random_dense(rng, n),
        ),
        2 => {
            let c = random_dense(rng, n);
            let d = random_dense(rng, n);
            let keep = rng.gen_range(0.0..=1.0);
            let b = subgraph(rng, &c.intersection(&d).unwrap(), keep);
            (b, c, d)
        }
        _ => {
            let b = random_triangle_free(rng, n);
            let extra = rng.gen_range(0.0..=0.5);
            let c = union(&b, &random_graph(rng, n, extra));
            let d = union(&b, &random_graph(rng, n, extra));
            (b, c, d)
        }
    };
    let s = GraphSystem::new(vec![b, c, d]).unwrap();
    let nested = family >= 2;
    repair(rng, s, |graphs, (i, e): (usize, Edge)| {
        // Deleting from C or D also deletes from B to keep B ⊆ C ∩ D.
        if nested && i != 0 && graphs[0].contains(e) {
            graphs[0] = graphs[0].without_edge(e).unwrap();
        }
    })
}

#[derive(Default, Debug)]
struct Tally {
    sum_t3: usize,
    weighted: usize,
    nearly: usize,
    nested: usize,
    prop31: usize,
    lemma24: usize,
    incidence: usize,
}

fn expect_ok(r: &CertReport) {
    assert!(r.holds(), "violation: {r}");
    assert_eq!(r.slack, r.bound - r.value);
    assert_eq!(r.tight, r.slack == 0);
}

fn check_all(s: &GraphSystem, tally: &mut Tally) {
    let n = s.order();
    let (b, c, d) = (s.graph(0), s.graph(1), s.graph(2));
    let q = floor_quarter(n) as i128;
    let e = |g: &Graph| g.edge_count() as i128;

    let r = certify_sum_t3(s).unwrap();
    expect_ok(&r);
    assert_eq!(
        (r.value, r.bound),
        (e(b) + e(c) + e(d), (n * (n - 1)) as i128)
    );
    tally.sum_t3 += 1;

    let z = [0, 1, 2];
    expect_ok(&certify_triangle_incidence(s, z).unwrap());
    tally.incidence += 1;

    if naive_triangles(b).is_empty() {
        let r = certify_weighted(b, c, d).unwrap();
        expect_ok(&r);
        assert_eq!((r.value, r.bound), (2 * e(b) + e(c) + e(d), 4 * q));
        tally.weighted += 1;
    } else {
        assert!(matches!(
            certify_weighted(b, c, d),
            Err(CertError::NotTriangleFree(_))
        ));
    }

    if 2 * naive_matching_number(b) + 2 >= n {
        let r = certify_nearly_matchable(b, c, d).unwrap();
        expect_ok(&r);
        assert_eq!((r.value, r.bound), (e(c) + e(d), 2 * q));
        tally.nearly += 1;
    } else {
        assert!(certify_nearly_matchable(b, c, d).is_err());
    }

    let contained = b.is_subgraph_of(c) && b.is_subgraph_of(d);
    if contained {
        let r = certify_product_nested(b, c, d).unwrap();
        expect_ok(&r);
        assert_eq!((r.value, r.bound), (e(b) * e(c) * e(d), q * q * q));
        tally.nested += 1;
    } else {
        assert!(certify_product_nested(b, c, d).is_err());
    }

    if contained && naive_triangles(b).is_empty() {
        match prop31_bounds(b, c, d) {
            Ok(r) => {
                let (l, p, zq) = (r.params.l as i128, r.params.p as i128, r.params.q as i128);
                assert!(n > 2 * r.params.l + 2);
                assert_eq!(r.params.l, naive_matching_number(b));
                assert!(p <= zq);
                assert_eq!(r.edges.bound, l * l + l * p);
                assert_eq!(
                    r.pair.bound,
                    2 * (l * l + l * zq + zq * (zq - 1) / 2 - p * (p - 1) / 2)
                );
                expect_ok(&r.edges);
                expect_ok(&r.pair);
                tally.prop31 += 1;
            }
            Err(err) => {
                assert!(n <= 2 * naive_matching_number(b) + 2, "{err}");
            }
        }
    }

    for m in [maximum_matching(b), greedy_maximal_matching(b)] {
        let w = m.matched_set();
        for x in (0..n).filter(|&x| !w.contains(x)) {
            let r = lemma_24_check(b, c, d, &m, x).unwrap();
            expect_ok(&r);
            let direct = w.iter().filter(|&v| c.has_edge(x, v)).count()
                + w.iter().filter(|&v| d.has_edge(x, v)).count();
            assert_eq!(r.value, direct as i128);
            tally.lemma24 += 1;
        }
    }

    // The conjecture margin is evidence, not a theorem: only its arithmetic is
    // checked here.
    let r = conjecture_margin(b, c, d).unwrap();
    assert_eq!((r.value, r.bound), (e(b) * e(c) * e(d), q * q * q));
}

#[test]
fn ten_thousand_rbt_free_triples() {
    let mut rng = rng(40);
    let mut tally = Tally::default();
    for i in 0..10_000 {
        let n = rng.gen_range(3..=8);
        let s = sample_triple(&mut rng, n, i % 4);
        assert!(!naive_has_rainbow(&s));
        check_all(&s, &mut tally);
    }
    assert!(
        tally.weighted > 1_000 && tally.nearly > 1_000 && tally.nested > 1_000,
        "{tally:?}"
    );
    assert!(tally.prop31 > 100 && tally.lemma24 > 1_000, "{tally:?}");
}

#[test]
fn sum_over_t_graphs() {
    let mut rng = rng(41);
    for _ in 0..3_000 {
        let n = rng.gen_range(1..=8);
        let t = rng.gen_range(4..=6);
        let s = random_rbt_free(&mut rng, n, t);
        let r = certify_sum_t(&s).unwrap();
        expect_ok(&r);
        assert_eq!(r.value, s.total_edges() as i128);
        assert_eq!(r.bound, (t * floor_quarter(n)) as i128);
    }
}

#[test]
fn preconditions_are_enforced() {
    let k3 = Graph::complete(3).unwrap();
    let rainbow = GraphSystem::new(vec![k3.clone(), k3.clone(), k3.clone()]).unwrap();
    assert!(matches!(
        certify_sum_t3(&rainbow),
        Err(CertError::NotRbtFree(_))
    ));
    let two = GraphSystem::new(vec![k3.clone(), k3.clone()]).unwrap();
    assert!(certify_sum_t3(&two).is_err());
    assert!(certify_sum_t(&rainbow).is_err());
    let k2 = Graph::complete(2).unwrap();
    let tiny = GraphSystem::new(vec![k2.clone(), k2.clone(), k2]).unwrap();
    assert!(is_rbt_free(&tiny));
    assert!(certify_sum_t3(&tiny).is_err());
}

#[test]
fn values_are_monotone_under_edge_addition() {
    let mut rng = rng(42);
    let mut steps = 0;
    for _ in 0..2_000 {
        let n = rng.gen_range(3..=8);
        let s = random_rbt_free(&mut rng, n, 3);
        let i = rng.gen_range(0..3);
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        let e = Edge::new(u, v).unwrap();
        let bigger = s.with_graph(i, s.graph(i).with_edge(e).unwrap()).unwrap();
        if !is_rbt_free(&bigger) {
            continue;
        }
        steps += 1;
        let g = |s: &GraphSystem, k: usize| s.graph(k).clone();
        let pairs: [Certifier; 2] = [conjecture_margin, certify_nearly_matchable];
        assert!(certify_sum_t3(&bigger).unwrap().value >= certify_sum_t3(&s).unwrap().value);
        for f in pairs {
            if let (Ok(a), Ok(b)) = (
                f(&g(&s, 0), &g(&s, 1), &g(&s, 2)),
                f(&g(&bigger, 0), &g(&bigger, 1), &g(&bigger, 2)),
            ) {
                assert!(b.value >= a.value);
            }
        }
        if let (Ok(a), Ok(b)) = (
            certify_weighted(&g(&s, 0), &g(&s, 1), &g(&s, 2)),
            certify_weighted(&g(&bigger, 0), &g(&bigger, 1), &g(&bigger, 2)),
        ) {
            assert!(b.value >= a.value);
        }
    }
    assert!(steps > 100);
}

#[test]
fn spec_examples() {
    let k5 = Graph::complete(5).unwrap();
    let e5 = Graph::empty(5).unwrap();
    let k23 = Graph::complete_bipartite(2, 3).unwrap();
    let s = GraphSystem::new(vec![k5.clone(), k5.clone(), e5.clone()]).unwrap();
    let r = certify_sum_t3(&s).unwrap();
    assert_eq!((r.value, r.bound, r.tight), (20, 20, true));
    let r = certify_sum_t3(&GraphSystem::repeated(&k23, 3).unwrap()).unwrap();
    assert_eq!((r.value, r.bound), (18, 20));
    let r = certify_sum_t(&GraphSystem::repeated(&k23, 5).unwrap()).unwrap();
    assert_eq!((r.value, r.bound, r.tight), (30, 30, true));
    let r = certify_weighted(&k23, &k23, &k23).unwrap();
    assert_eq!((r.value, r.bound, r.tight), (24, 24, true));
    let r = certify_weighted(&e5, &k5, &k5).unwrap();
    assert_eq!((r.value, r.bound), (20, 24));
    let r = certify_nearly_matchable(&k23, &k23, &k23).unwrap();
    assert_eq!((r.value, r.bound, r.tight), (12, 12, true));
    let r = certify_product_nested(&k23, &k23, &k23).unwrap();
    assert_eq!((r.value, r.bound, r.tight), (216, 216, true));
    let r = conjecture_margin(&k5, &k5, &e5).unwrap();
    assert_eq!((r.value, r.slack), (0, 216));
    assert_eq!(r.claim, Claim::Conjecture);
}

#[test]
fn inequality_grids() {
    let s = scan_ineq32(INEQ32_NUMERATOR_MAX, INEQ32_DENOMINATOR).unwrap();
    assert!(s.holds());
    assert_eq!(s.checked, 1001 * 1002 / 2);
    let s = scan_ineq31(1, INEQ31_L_MAX, INEQ31_Q_MAX).unwrap();
    assert!(s.holds());
    assert_eq!(s.checked, 30 * (61 * 62 / 2));
}

#[test]
fn scans_agree_with_pointwise_checks() {
    // Independent evaluation of the (alpha, beta) inequality with rationals.
    let mut rng = rng(43);
    for _ in 0..2_000 {
        let den = rng.gen_range(1..=50i128);
        let b = rng.gen_range(0..=10 * den);
        let a = rng.gen_range(0..=b);
        let (alpha, beta) = (Ratio::new(a, den), Ratio::new(b, den));
        let one = Ratio::from_integer(1);
        let two = Ratio::from_integer(2);
        let lhs = (one + alpha) * (one + two * beta + two * beta * beta - two * alpha * alpha);
        let rhs = (one + beta) * (one + beta) * (one + beta);
        let r = ineq_32(alpha, beta).unwrap();
        assert_eq!((r.lhs, r.rhs), (lhs, rhs));
        assert!(r.holds());
    }
    // The (l, p, q) inequality against a rational evaluation.
    for l in 1..=8i128 {
        for q in 0..=16i128 {
            for p in 0..=q {
                let half = Ratio::new(1, 2);
                let inner =
                    Ratio::from_integer(l * l + l * q) + half * Ratio::from_integer(q * q - p * p);
                let lhs = Ratio::from_integer(l * l + l * p) * inner * inner;
                let rhs = Ratio::from_integer(((2 * l + q) * (2 * l + q) / 4).pow(3));
                let r = ineq_31(l as u64, p as u64, q as u64).unwrap();
                assert_eq!(r.holds(), lhs <= rhs);
                assert_eq!(r.tight, lhs == rhs);
            }
        }
    }
}
