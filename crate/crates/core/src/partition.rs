//! The `X ⊔ Y ⊔ Z` decomposition of a triangle-free graph built from a
//! maximum matching `{(x_i, y_i)}`: `Z` is the unmatched set, and every
//! neighbour of a vertex of `Z` lies in `X`.

use serde::{Deserialize, Serialize};

use crate::error::CertError;
use crate::graph::{Graph, VertexSet};
use crate::matching::{maximum_matching, MatchingResult};
use crate::report::{CertReport, Claim, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MantelPartition {
    /// `x_1, .., x_l`.
    pub x_side: Vec<usize>,
    /// `y_1, .., y_l`, with `(x_i, y_i)` a matching edge.
    pub y_side: Vec<usize>,
    pub z_side: VertexSet,
}

impl MantelPartition {
    /// The matching size `l`.
    pub fn size(&self) -> usize {
        self.x_side.len()
    }

    pub fn x_set(&self) -> VertexSet {
        self.x_side.iter().copied().collect()
    }

    pub fn y_set(&self) -> VertexSet {
        self.y_side.iter().copied().collect()
    }

    /// Maximum degree from `X` into `Z`.
    pub fn max_degree_into_z(&self, g: &Graph) -> usize {
        self.x_side
            .iter()
            .map(|&x| (g.row(x) & self.z_side).len())
            .max()
            .unwrap_or(0)
    }
}

/// Partition of a triangle-free `g` from a fresh maximum matching.
pub fn mantel_partition(g: &Graph) -> Result<MantelPartition, CertError> {
    if let Some(t) = g.find_triangle() {
        return Err(CertError::NotTriangleFree(t));
    }
    partition_from_matching(g, &maximum_matching(g))
}

/// Partition of a triangle-free `g` from a caller-supplied maximum matching.
///
/// Each matched pair sends the endpoint with neighbours in `Z` to `X`, or its
/// lower label when neither endpoint has any.
pub fn partition_from_matching(
    g: &Graph,
    matching: &MatchingResult,
) -> Result<MantelPartition, CertError> {
    if let Some(t) = g.find_triangle() {
        return Err(CertError::NotTriangleFree(t));
    }
    if !matching.is_matching_in(g) {
        return Err(CertError::pre("edges do not form a matching of the graph"));
    }
    let nu = maximum_matching(g).size();
    if matching.size() != nu {
        return Err(CertError::pre(format!(
            "matching has size {} but the matching number is {nu}",
            matching.size()
        )));
    }
    let z_side = g.vertices() - matching.matched_set();
    let mut x_side = Vec::with_capacity(nu);
    let mut y_side = Vec::with_capacity(nu);
    for e in matching.edges() {
        let (a, b) = (e.u(), e.v());
        let (za, zb) = (g.row(a) & z_side, g.row(b) & z_side);
        let (x, y) = match (za.is_empty(), zb.is_empty()) {
            (_, true) => (a, b),
            (true, false) => (b, a),
            (false, false) => {
                return Err(CertError::Inconsistent(format!(
                    "both ends of matched edge {e} see Z ({za:?}, {zb:?})"
                )))
            }
        };
        x_side.push(x);
        y_side.push(y);
    }
    Ok(MantelPartition {
        x_side,
        y_side,
        z_side,
    })
}

/// All partition invariants hold for `g`, and `l = nu(g)`.
pub fn verify_partition(g: &Graph, p: &MantelPartition) -> bool {
    let n = g.order();
    let l = p.x_side.len();
    if p.y_side.len() != l {
        return false;
    }
    let (x, y, z) = (p.x_set(), p.y_set(), p.z_side);
    let parts_ok = x.len() == l
        && y.len() == l
        && (x & y).is_empty()
        && (x & z).is_empty()
        && (y & z).is_empty()
        && (x | y | z) == VertexSet::full(n);
    parts_ok
        && p.x_side
            .iter()
            .zip(&p.y_side)
            .all(|(&a, &b)| g.has_edge(a, b))
        && z.iter().all(|v| g.row(v).is_subset(x))
        && maximum_matching(g).size() == l
}

/// `|E| <= l(n - l)` for triangle-free `g`, with the partition as witness.
pub fn mantel_edge_bound(g: &Graph) -> Result<CertReport, CertError> {
    let p = mantel_partition(g)?;
    let l = p.size() as i128;
    let n = g.order() as i128;
    let report = CertReport::new(Claim::MantelMatching, g.edge_count() as i128, l * (n - l));
    Ok(report.with_witness(Witness::Partition(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn c5() -> Graph {
        g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    }

    #[test]
    fn path_forces_sides() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let m = MatchingResult::from_edges(vec![Edge::new(0, 1).unwrap()]).unwrap();
        let p = partition_from_matching(&p3, &m).unwrap();
        assert_eq!(p.x_side, vec![1]);
        assert_eq!(p.y_side, vec![0]);
        assert_eq!(p.z_side, VertexSet::singleton(2));
        assert!(verify_partition(&p3, &p));

        let swapped = MantelPartition {
            x_side: p.y_side.clone(),
            y_side: p.x_side.clone(),
            z_side: p.z_side,
        };
        assert!(!verify_partition(&p3, &swapped));
    }

    #[test]
    fn five_cycle() {
        let c5 = c5();
        let m =
            MatchingResult::from_edges(vec![Edge::new(0, 1).unwrap(), Edge::new(2, 3).unwrap()])
                .unwrap();
        let p = partition_from_matching(&c5, &m).unwrap();
        assert_eq!(p.x_set(), VertexSet::from_iter([0, 3]));
        assert_eq!(p.y_set(), VertexSet::from_iter([1, 2]));
        assert_eq!(p.z_side, VertexSet::singleton(4));
        assert!(!c5.has_edge(4, 1) && !c5.has_edge(4, 2));
        assert!(verify_partition(&c5, &p));
        assert!(verify_partition(&c5, &mantel_partition(&c5).unwrap()));
    }

    #[test]
    fn complete_bipartite_has_no_z() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        let p = mantel_partition(&k33).unwrap();
        assert_eq!(p.size(), 3);
        assert!(p.z_side.is_empty());
        assert!(verify_partition(&k33, &p));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            mantel_partition(&Graph::complete(3).unwrap()),
            Err(CertError::NotTriangleFree(_))
        ));
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let small = MatchingResult::from_edges(vec![Edge::new(1, 2).unwrap()]).unwrap();
        assert!(matches!(
            partition_from_matching(&p4, &small),
            Err(CertError::Precondition(_))
        ));

        let bad = MantelPartition {
            x_side: vec![0],
            y_side: vec![3],
            z_side: VertexSet::from_iter([1, 2]),
        };
        assert!(!verify_partition(&g(4, &[(0, 3), (1, 2)]), &bad));
    }

    #[test]
    fn edge_bound_examples() {
        let r = mantel_edge_bound(&c5()).unwrap();
        assert_eq!((r.value, r.bound, r.tight), (5, 6, false));
        let r = mantel_edge_bound(&Graph::complete_bipartite(3, 3).unwrap()).unwrap();
        assert_eq!((r.value, r.bound, r.tight), (9, 9, true));
        let r = mantel_edge_bound(&Graph::complete_bipartite(1, 4).unwrap()).unwrap();
        assert_eq!((r.value, r.bound, r.tight), (4, 4, true));
        assert!(mantel_edge_bound(&Graph::complete(4).unwrap()).is_err());
    }
}
