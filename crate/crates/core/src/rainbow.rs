//! Systems of graphs on a shared vertex set and rainbow-triangle detection.
//!
//! A rainbow triangle picks its three sides from three distinct graphs of the
//! system. A system without one is RBT-free.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SystemError;
use crate::graph::{Edge, Graph, Triangle, VertexSet};

/// Largest supported number of graphs; graph memberships fit in one word.
pub const MAX_GRAPHS: usize = 64;

/// An ordered tuple of graphs on the same `n` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GraphSystem {
    n: usize,
    graphs: Vec<Graph>,
}

impl GraphSystem {
    pub fn new(graphs: Vec<Graph>) -> Result<GraphSystem, SystemError> {
        let first = graphs.first().ok_or(SystemError::NoGraphs)?;
        if graphs.len() > MAX_GRAPHS {
            return Err(SystemError::TooManyGraphs(graphs.len()));
        }
        let n = first.order();
        if let Some((index, g)) = graphs.iter().enumerate().find(|(_, g)| g.order() != n) {
            return Err(SystemError::OrderMismatch {
                index,
                expected: n,
                found: g.order(),
            });
        }
        Ok(GraphSystem { n, graphs })
    }

    /// `t` copies of `g`.
    pub fn repeated(g: &Graph, t: usize) -> Result<GraphSystem, SystemError> {
        GraphSystem::new(vec![g.clone(); t])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn into_graphs(self) -> Vec<Graph> {
        self.graphs
    }

    pub fn graph(&self, i: usize) -> &Graph {
        &self.graphs[i]
    }

    pub fn edge_counts(&self) -> Vec<usize> {
        self.graphs.iter().map(Graph::edge_count).collect()
    }

    pub fn total_edges(&self) -> usize {
        self.graphs.iter().map(Graph::edge_count).sum()
    }

    /// Exact product of the edge counts.
    pub fn edge_product(&self) -> u128 {
        self.graphs.iter().map(|g| g.edge_count() as u128).product()
    }

    pub fn union_graph(&self) -> Graph {
        let mut u = self.graphs[0].clone();
        for g in &self.graphs[1..] {
            u = u.union(g).expect("orders agree");
        }
        u
    }

    /// Bit `i` is set iff graph `i` contains `e`.
    #[inline]
    pub fn membership(&self, e: Edge) -> u64 {
        self.graphs
            .iter()
            .enumerate()
            .filter(|(_, g)| g.contains(e))
            .fold(0u64, |acc, (i, _)| acc | 1u64 << i)
    }

    /// Number of graphs containing each pair, indexed by colex index.
    pub fn multiplicities(&self) -> Vec<usize> {
        let m = crate::graph::pair_count(self.n);
        (0..m)
            .map(|k| self.membership(Edge::from_colex_index(k)).count_ones() as usize)
            .collect()
    }

    /// `G_1 ⊆ G_2 ⊆ .. ⊆ G_t`.
    pub fn is_nested(&self) -> bool {
        self.graphs.windows(2).all(|w| w[0].is_subgraph_of(&w[1]))
    }

    /// The same system with graph `i` replaced.
    pub fn with_graph(&self, i: usize, g: Graph) -> Result<GraphSystem, SystemError> {
        let mut graphs = self.graphs.clone();
        graphs[i] = g;
        GraphSystem::new(graphs)
    }

    pub fn require_len(&self, expected: usize) -> Result<(), SystemError> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(SystemError::WrongGraphCount {
                expected,
                found: self.len(),
            })
        }
    }
}

impl fmt::Debug for GraphSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphSystem")
            .field("n", &self.n)
            .field("graphs", &self.graphs)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SystemDoc {
    n: usize,
    graphs: Vec<Vec<Edge>>,
}

impl Serialize for GraphSystem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SystemDoc {
            n: self.n,
            graphs: self.graphs.iter().map(|g| g.edges().collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = SystemDoc::deserialize(d)?;
        let graphs = doc
            .graphs
            .iter()
            .map(|edges| Graph::from_edges(doc.n, edges.iter().map(|e| (e.u(), e.v()))))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        GraphSystem::new(graphs).map_err(D::Error::custom)
    }
}

/// A triangle with one side drawn from each of three distinct graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RainbowWitness {
    pub triangle: Triangle,
    /// Side `j` belongs to graph `graphs[j]`.
    pub edges: [Edge; 3],
    /// Strictly increasing graph indices (0-based).
    pub graphs: [usize; 3],
}

impl RainbowWitness {
    /// Checks the witness against `s`.
    pub fn is_valid_for(&self, s: &GraphSystem) -> bool {
        let mut sides = self.edges;
        sides.sort_unstable();
        sides == self.triangle.edges()
            && self.graphs[0] < self.graphs[1]
            && self.graphs[1] < self.graphs[2]
            && self.graphs[2] < s.len()
            && (0..3).all(|j| s.graph(self.graphs[j]).contains(self.edges[j]))
    }
}

impl fmt::Display for RainbowWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "triangle {} with {} in G{}, {} in G{}, {} in G{}",
            self.triangle,
            self.edges[0],
            self.graphs[0] + 1,
            self.edges[1],
            self.graphs[1] + 1,
            self.edges[2],
            self.graphs[2] + 1
        )
    }
}

const SIDE_ORDERS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Smallest increasing index triple drawing side `j` from `masks[j]`.
fn rainbow_assignment(tri: Triangle, masks: [u64; 3]) -> Option<RainbowWitness> {
    let sides = tri.edges();
    let above = |mask: u64, floor: Option<usize>| -> Option<usize> {
        let m = match floor {
            None => mask,
            Some(f) if f >= 63 => 0,
            Some(f) => mask & !((1u64 << (f + 1)) - 1),
        };
        (m != 0).then(|| m.trailing_zeros() as usize)
    };
    SIDE_ORDERS
        .iter()
        .filter_map(|order| {
            let a = above(masks[order[0]], None)?;
            let b = above(masks[order[1]], Some(a))?;
            let c = above(masks[order[2]], Some(b))?;
            Some(RainbowWitness {
                triangle: tri,
                edges: [sides[order[0]], sides[order[1]], sides[order[2]]],
                graphs: [a, b, c],
            })
        })
        .min_by_key(|w| w.graphs)
}

/// Some rainbow triangle, or `None` if the system is RBT-free.
///
/// Triangles of the union graph are scanned in ascending order; for the first
/// one admitting three distinct graphs, the lexicographically smallest index
/// triple is returned.
pub fn find_rainbow_triangle(s: &GraphSystem) -> Option<RainbowWitness> {
    if s.len() < 3 {
        return None;
    }
    let union = s.union_graph();
    if union.is_triangle_free() {
        return None;
    }
    union.triangles().into_iter().find_map(|tri| {
        let [e0, e1, e2] = tri.edges();
        rainbow_assignment(tri, [s.membership(e0), s.membership(e1), s.membership(e2)])
    })
}

pub fn is_rbt_free(s: &GraphSystem) -> bool {
    find_rainbow_triangle(s).is_none()
}

/// RBT-freeness of three graphs by bitset scan: for every side `(u,v)` in
/// `a`, no `w` closes it with one side in `b` and one in `c`.
pub fn is_rbt_free_triple(a: &Graph, b: &Graph, c: &Graph) -> bool {
    let n = a.order();
    for v in 1..n {
        let (bv, cv) = (b.row(v), c.row(v));
        for u in a.row(v) & VertexSet::full(v) {
            if !((b.row(u) & cv) | (c.row(u) & bv)).is_empty() {
                return false;
            }
        }
    }
    true
}

/// A rainbow triangle that would use `e` taken from graph `graph`, looking
/// only at the `n - 2` triangles through `e`.
///
/// Adding `e` to graph `graph` of an RBT-free system keeps it RBT-free iff
/// this returns `None`.
pub fn rainbow_through_edge(s: &GraphSystem, graph: usize, e: Edge) -> Option<RainbowWitness> {
    if s.len() < 3 {
        return None;
    }
    let own = 1u64 << graph;
    let others = s.vertices_minus(e);
    for w in others {
        let ea = Edge::new(e.u(), w).expect("w is not an endpoint");
        let eb = Edge::new(e.v(), w).expect("w is not an endpoint");
        let ma = s.membership(ea) & !own;
        let mb = s.membership(eb) & !own;
        if ma == 0 || mb == 0 || (ma == mb && ma.count_ones() == 1) {
            continue;
        }
        let tri = Triangle::new(e.u(), e.v(), w).expect("distinct");
        let sides = tri.edges();
        let mask_of = |side: Edge| {
            if side == e {
                own
            } else if side == ea {
                ma
            } else {
                mb
            }
        };
        return rainbow_assignment(
            tri,
            [mask_of(sides[0]), mask_of(sides[1]), mask_of(sides[2])],
        );
    }
    None
}

impl GraphSystem {
    fn vertices_minus(&self, e: Edge) -> VertexSet {
        VertexSet::full(self.n) - e.endpoints()
    }
}

/// `sum_i |G_i ∩ T|` where `T` is the triangle on `z`. Needs `t = 3`.
pub fn triangle_incidence(s: &GraphSystem, z: [usize; 3]) -> Result<usize, SystemError> {
    let tri = incidence_triangle(s, z)?;
    Ok(tri
        .edges()
        .iter()
        .map(|&e| s.membership(e).count_ones() as usize)
        .sum())
}

/// The bipartite graph on `{0,1,2}` (graphs) and `{3,4,5}` (the three sides of
/// the triangle on `z`, colex order) with `(i, 3+j)` an edge iff side `j` lies
/// in graph `i`. A perfect matching is a rainbow triangle.
pub fn auxiliary_incidence_graph(s: &GraphSystem, z: [usize; 3]) -> Result<Graph, SystemError> {
    let tri = incidence_triangle(s, z)?;
    let sides = tri.edges();
    let pairs = (0..3).flat_map(|i| {
        (0..3)
            .filter(move |&j| s.graph(i).contains(sides[j]))
            .map(move |j| (i, 3 + j))
    });
    Ok(Graph::from_edges(6, pairs)?)
}

fn incidence_triangle(s: &GraphSystem, z: [usize; 3]) -> Result<Triangle, SystemError> {
    s.require_len(3)?;
    if z.iter().any(|&x| x >= s.order()) {
        return Err(SystemError::NotATriple(z.to_vec()));
    }
    Triangle::new(z[0], z[1], z[2]).map_err(|_| SystemError::NotATriple(z.to_vec()))
}

/// Replacement trace of [`nest_reduce`].
#[derive(Clone, Debug)]
pub struct NestTrace {
    pub system: GraphSystem,
    /// `sum_i |G_i|^2` before the first and after every replacement.
    pub potentials: Vec<u64>,
}

/// Turns the system into a chain `G'_1 ⊆ .. ⊆ G'_t` with the same per-pair
/// multiplicities by repeatedly replacing an incomparable pair `(A, B)` with
/// `(A ∩ B, A ∪ B)`.
///
/// Graphs are kept sorted by edge count (stable); the first incomparable pair
/// `(i, j)`, `i < j`, is replaced each round.
pub fn nest_reduce(s: &GraphSystem) -> GraphSystem {
    nest_reduce_traced(s).system
}

pub fn nest_reduce_traced(s: &GraphSystem) -> NestTrace {
    let mut graphs = s.graphs.clone();
    graphs.sort_by_key(Graph::edge_count);
    let potential = |gs: &[Graph]| {
        gs.iter()
            .map(|g| (g.edge_count() as u64).pow(2))
            .sum::<u64>()
    };
    let mut potentials = vec![potential(&graphs)];
    while let Some((i, j)) = first_incomparable(&graphs) {
        let meet = graphs[i].intersection(&graphs[j]).expect("orders agree");
        let join = graphs[i].union(&graphs[j]).expect("orders agree");
        graphs[i] = meet;
        graphs[j] = join;
        graphs.sort_by_key(Graph::edge_count);
        potentials.push(potential(&graphs));
    }
    NestTrace {
        system: GraphSystem { n: s.n, graphs },
        potentials,
    }
}

fn first_incomparable(graphs: &[Graph]) -> Option<(usize, usize)> {
    let t = graphs.len();
    (0..t)
        .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
        .find(|&(i, j)| {
            !graphs[i].is_subgraph_of(&graphs[j]) && !graphs[j].is_subgraph_of(&graphs[i])
        })
}
