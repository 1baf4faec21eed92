//! Simple undirected graphs on at most 64 labeled vertices.
//!
//! Every adjacency row is a single `u64`, so neighbourhood intersections and
//! degree counts are one AND plus one popcount.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GraphError;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// Number of unordered pairs on `n` vertices, `n(n-1)/2`.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `floor(n^2 / 4)`, the triangle-free edge maximum on `n` vertices.
#[inline]
pub const fn mantel_number(n: usize) -> u64 {
    (n as u64 * n as u64) / 4
}

/// A subset of `0..64`, one bit per vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    /// True if every member is below `n`.
    #[inline]
    pub const fn fits(self, n: usize) -> bool {
        self.is_subset(VertexSet::full(n))
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = items.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} out of range"
            )));
        }
        Ok(items.into_iter().collect())
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An unordered pair `{u, v}` stored with `u < v`.
///
/// Edges order by their colex index `v(v-1)/2 + u`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Edge, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(GraphError::Loop(a)),
        }
    }

    #[inline]
    pub const fn u(self) -> usize {
        self.u
    }

    #[inline]
    pub const fn v(self) -> usize {
        self.v
    }

    #[inline]
    pub const fn colex_index(self) -> usize {
        self.v * (self.v - 1) / 2 + self.u
    }

    pub fn from_colex_index(index: usize) -> Edge {
        // largest v with v(v-1)/2 <= index
        let mut v = (index * 2).isqrt() + 1;
        while pair_count(v) > index {
            v -= 1;
        }
        while pair_count(v + 1) <= index {
            v += 1;
        }
        Edge {
            u: index - pair_count(v),
            v,
        }
    }

    #[inline]
    pub fn endpoints(self) -> VertexSet {
        VertexSet::singleton(self.u).with(self.v)
    }

    #[inline]
    pub fn touches(self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`; `x` must be an endpoint.
    #[inline]
    pub fn other(self, x: usize) -> usize {
        debug_assert!(self.touches(x));
        self.u ^ self.v ^ x
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.v, self.u).cmp(&(other.v, other.u))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        Edge::new(a, b).map_err(serde::de::Error::custom)
    }
}

/// Three distinct vertices, stored ascending.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Triangle {
    vertices: [usize; 3],
}

impl Triangle {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Triangle, GraphError> {
        let mut vertices = [a, b, c];
        vertices.sort_unstable();
        if vertices[0] == vertices[1] || vertices[1] == vertices[2] {
            return Err(GraphError::DegenerateTriangle(vertices));
        }
        Ok(Triangle { vertices })
    }

    #[inline]
    pub fn vertices(&self) -> [usize; 3] {
        self.vertices
    }

    /// The three sides in colex order.
    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.vertices;
        [
            Edge { u: a, v: b },
            Edge { u: a, v: c },
            Edge { u: b, v: c },
        ]
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.vertices;
        write!(f, "{{{a},{b},{c}}}")
    }
}

/// A simple undirected graph on the vertex labels `0..n`.
///
/// Rows beyond `n` are always empty, so derived equality and hashing are
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: [VertexSet; MAX_VERTICES],
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        check_order(n)?;
        Ok(Graph {
            n,
            rows: [VertexSet::EMPTY; MAX_VERTICES],
        })
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = VertexSet::full(n);
        for x in 0..n {
            g.rows[x] = all.without(x);
        }
        Ok(g)
    }

    /// `K_{a,b}` with the left side `0..a` and the right side `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
        Graph::complete_bipartite_between(
            a + b,
            VertexSet::full(a),
            VertexSet::full(a + b) - VertexSet::full(a),
        )
    }

    /// Every edge between two disjoint vertex sets.
    pub fn complete_bipartite_between(
        n: usize,
        left: VertexSet,
        right: VertexSet,
    ) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for side in [left, right] {
            if let Some(bad) = (side - VertexSet::full(n)).first() {
                return Err(GraphError::VertexOutOfRange { vertex: bad, n });
            }
        }
        if let Some(v) = (left & right).first() {
            return Err(GraphError::Loop(v));
        }
        for x in left {
            g.rows[x] = right;
        }
        for y in right {
            g.rows[y] = left;
        }
        Ok(g)
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (a, b) in edges {
            let e = Edge::new(a, b)?;
            g.check_vertex(e.v)?;
            g.insert(e);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, validating symmetry and irreflexivity.
    pub fn from_rows(rows: &[VertexSet]) -> Result<Graph, GraphError> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        for (x, &row) in rows.iter().enumerate() {
            if let Some(bad) = (row - VertexSet::full(n)).first() {
                return Err(GraphError::VertexOutOfRange { vertex: bad, n });
            }
            if row.contains(x) {
                return Err(GraphError::Loop(x));
            }
            for y in row {
                if !rows[y].contains(x) {
                    return Err(GraphError::Asymmetric(x, y));
                }
            }
            g.rows[x] = row;
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.rows[..self.n]
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.rows[a].contains(b)
    }

    #[inline]
    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// The neighbourhood of `x`; `x` itself is never a member.
    pub fn neighborhood(&self, x: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(x)?;
        Ok(self.rows[x])
    }

    /// Unchecked neighbourhood for hot loops; `x < n` is a caller obligation.
    #[inline]
    pub fn row(&self, x: usize) -> VertexSet {
        self.rows[x]
    }

    pub fn degree(&self, x: usize) -> Result<usize, GraphError> {
        Ok(self.neighborhood(x)?.len())
    }

    /// Number of neighbours of `x` inside `targets`. `x` in `targets` is ignored.
    pub fn degree_into(&self, x: usize, targets: VertexSet) -> Result<usize, GraphError> {
        Ok((self.neighborhood(x)? & targets).len())
    }

    /// Edges in ascending colex order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (1..self.n).flat_map(move |v| {
            (self.rows[v] & VertexSet::full(v))
                .iter()
                .map(move |u| Edge { u, v })
        })
    }

    pub fn with_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        self.check_vertex(e.v)?;
        let mut g = self.clone();
        g.insert(e);
        Ok(g)
    }

    pub fn without_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        self.check_vertex(e.v)?;
        let mut g = self.clone();
        g.remove(e);
        Ok(g)
    }

    pub fn toggled(&self, e: Edge) -> Result<Graph, GraphError> {
        if self.contains(e) {
            self.without_edge(e)
        } else {
            self.with_edge(e)
        }
    }

    // In-place mutation stays crate-private so the public surface is value-only.
    #[inline]
    pub(crate) fn insert(&mut self, e: Edge) {
        self.rows[e.u] = self.rows[e.u].with(e.v);
        self.rows[e.v] = self.rows[e.v].with(e.u);
    }

    #[inline]
    pub(crate) fn remove(&mut self, e: Edge) {
        self.rows[e.u] = self.rows[e.u].without(e.v);
        self.rows[e.v] = self.rows[e.v].without(e.u);
    }

    /// The graph spanned by `V \ {x}`, with labels above `x` shifted down by one.
    pub fn delete_vertex(&self, x: usize) -> Result<Graph, GraphError> {
        self.check_vertex(x)?;
        if self.n == 1 {
            return Err(GraphError::LastVertex);
        }
        let low = VertexSet::full(x);
        let mut g = Graph::empty(self.n - 1)?;
        for (dst, src) in (0..self.n).filter(|&y| y != x).enumerate() {
            let row = self.rows[src].bits();
            let high = row.checked_shr(x as u32 + 1).unwrap_or(0) << x;
            g.rows[dst] = VertexSet::from_bits((row & low.bits()) | high);
        }
        Ok(g)
    }

    /// All triangles, ascending by vertex triple.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for a in 0..self.n {
            let above_a = self.rows[a] - VertexSet::full(a + 1);
            for b in above_a {
                let common = self.rows[a] & (self.rows[b] - VertexSet::full(b + 1));
                out.extend(common.iter().map(|c| Triangle {
                    vertices: [a, b, c],
                }));
            }
        }
        out
    }

    /// First triangle in the order of [`Graph::triangles`].
    pub fn find_triangle(&self) -> Option<Triangle> {
        for a in 0..self.n {
            for b in self.rows[a] - VertexSet::full(a + 1) {
                if let Some(c) = (self.rows[a] & (self.rows[b] - VertexSet::full(b + 1))).first() {
                    return Some(Triangle {
                        vertices: [a, b, c],
                    });
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n
            && self
                .rows()
                .iter()
                .zip(other.rows())
                .all(|(a, b)| a.is_subset(*b))
    }

    pub fn intersection(&self, other: &Graph) -> Result<Graph, GraphError> {
        self.combine(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Graph) -> Result<Graph, GraphError> {
        self.combine(other, |a, b| a | b)
    }

    fn combine(
        &self,
        other: &Graph,
        op: impl Fn(VertexSet, VertexSet) -> VertexSet,
    ) -> Result<Graph, GraphError> {
        if self.n != other.n {
            return Err(GraphError::OrderMismatch(self.n, other.n));
        }
        let mut g = self.clone();
        for x in 0..self.n {
            g.rows[x] = op(self.rows[x], other.rows[x]);
        }
        Ok(g)
    }

    /// The image under the vertex map `x -> perm[x]`. `perm` must be a
    /// permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::OrderMismatch(self.n, perm.len()));
        }
        let image: VertexSet = perm.iter().copied().collect();
        if image != self.vertices() {
            return Err(GraphError::NotAPermutation);
        }
        let mut g = Graph::empty(self.n)?;
        for x in 0..self.n {
            g.rows[perm[x]] = self.rows[x].iter().map(|y| perm[y]).collect();
        }
        Ok(g)
    }

    /// Colex edge bits as a single word, for `C(n,2) <= 64` (`n <= 11`).
    pub fn to_bits(&self) -> Option<u64> {
        (pair_count(self.n) <= 64).then(|| {
            self.edges()
                .fold(0u64, |acc, e| acc | 1u64 << e.colex_index())
        })
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Graph, GraphError> {
        let m = pair_count(n);
        if m > 64 {
            return Err(GraphError::TooManyPairs(n));
        }
        if m < 64 && bits >> m != 0 {
            return Err(GraphError::StrayBits);
        }
        let mut g = Graph::empty(n)?;
        let mut rest = bits;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            g.insert(Edge::from_colex_index(k));
        }
        Ok(g)
    }

    /// The colex edge bits packed little-endian into `ceil(C(n,2)/8)` bytes.
    pub fn to_colex_bytes(&self) -> Vec<u8> {
        let mut bytes = vec![0u8; pair_count(self.n).div_ceil(8)];
        for e in self.edges() {
            let k = e.colex_index();
            bytes[k / 8] |= 1 << (k % 8);
        }
        bytes
    }

    pub fn from_colex_bytes(n: usize, bytes: &[u8]) -> Result<Graph, GraphError> {
        let m = pair_count(n);
        let expected = m.div_ceil(8);
        if bytes.len() != expected {
            return Err(GraphError::ByteLength {
                expected,
                found: bytes.len(),
            });
        }
        let mut g = Graph::empty(n)?;
        for (i, &byte) in bytes.iter().enumerate() {
            let mut rest = byte;
            while rest != 0 {
                let k = 8 * i + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if k >= m {
                    return Err(GraphError::StrayBits);
                }
                g.insert(Edge::from_colex_index(k));
            }
        }
        Ok(g)
    }

    /// Lowercase hex of [`Graph::to_colex_bytes`].
    pub fn to_hex(&self) -> String {
        hex::encode(self.to_colex_bytes())
    }

    pub fn from_hex(n: usize, text: &str) -> Result<Graph, GraphError> {
        let bytes = hex::decode(text).map_err(|e| GraphError::BadHex(e.to_string()))?;
        Graph::from_colex_bytes(n, &bytes)
    }

    #[inline]
    fn check_vertex(&self, x: usize) -> Result<(), GraphError> {
        if x < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: x,
                n: self.n,
            })
        }
    }
}

fn check_order(n: usize) -> Result<(), GraphError> {
    match n {
        0 => Err(GraphError::NoVertices),
        n if n > MAX_VERTICES => Err(GraphError::TooManyVertices(n)),
        _ => Ok(()),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
