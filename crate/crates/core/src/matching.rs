//! Maximum matchings on general graphs (Edmonds' blossom contraction) and
//! the matchability predicates built on them.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{CertError, GraphError};
use crate::graph::{Edge, Graph, VertexSet};
use crate::report::{CertReport, Claim, Witness};

/// A set of pairwise disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchingResult {
    edges: Vec<Edge>,
    size: usize,
    matched_set: VertexSet,
}

impl MatchingResult {
    /// Validates disjointness and sorts the edges colex.
    pub fn from_edges(mut edges: Vec<Edge>) -> Result<MatchingResult, GraphError> {
        edges.sort_unstable();
        let mut matched_set = VertexSet::EMPTY;
        for e in &edges {
            for x in [e.u(), e.v()] {
                if matched_set.contains(x) {
                    return Err(GraphError::DuplicateEdge(e.u(), e.v()));
                }
                matched_set = matched_set.with(x);
            }
        }
        Ok(MatchingResult {
            size: edges.len(),
            edges,
            matched_set,
        })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matched_set(&self) -> VertexSet {
        self.matched_set
    }

    /// Every edge lies in `g` and the cached fields agree with the edge list.
    pub fn is_matching_in(&self, g: &Graph) -> bool {
        let rebuilt = MatchingResult::from_edges(self.edges.clone());
        matches!(rebuilt, Ok(m) if m == *self) && self.edges.iter().all(|&e| g.contains(e))
    }

    /// No edge of `g` avoids the matched set.
    pub fn is_maximal_in(&self, g: &Graph) -> bool {
        let free = g.vertices() - self.matched_set;
        free.iter().all(|x| (g.row(x) & free).is_empty())
    }

    fn from_mates(mates: &[Option<usize>]) -> MatchingResult {
        let edges = mates
            .iter()
            .enumerate()
            .filter_map(|(x, m)| {
                m.filter(|&y| x < y)
                    .map(|y| Edge::new(x, y).expect("mate differs"))
            })
            .collect();
        MatchingResult::from_edges(edges).expect("mates are symmetric")
    }
}

/// Greedy matching scanning edges in ascending colex order.
pub fn greedy_maximal_matching(g: &Graph) -> MatchingResult {
    let mut used = VertexSet::EMPTY;
    let mut edges = Vec::new();
    for e in g.edges() {
        if (e.endpoints() & used).is_empty() {
            used = used | e.endpoints();
            edges.push(e);
        }
    }
    MatchingResult {
        size: edges.len(),
        edges,
        matched_set: used,
    }
}

/// A maximum matching, `size == nu(g)`.
pub fn maximum_matching(g: &Graph) -> MatchingResult {
    Blossom::new(g).run()
}

/// `nu(g)`.
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).size()
}

/// True iff `2 nu(g) >= n - 2`.
pub fn is_nearly_matchable(g: &Graph) -> bool {
    2 * matching_number(g) + 2 >= g.order()
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        let mut mate = vec![None; n];
        for e in greedy_maximal_matching(g).edges() {
            mate[e.u()] = Some(e.v());
            mate[e.v()] = Some(e.u());
        }
        Blossom {
            g,
            mate,
            parent: vec![None; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(mut self) -> MatchingResult {
        for root in 0..self.g.order() {
            if self.mate[root].is_none() {
                if let Some(end) = self.grow(root) {
                    self.augment(end);
                }
            }
        }
        MatchingResult::from_mates(&self.mate)
    }

    fn augment(&mut self, mut v: usize) {
        loop {
            let pv = self.parent[v].expect("augmenting path has parents");
            let next = self.mate[pv];
            self.mate[v] = Some(pv);
            self.mate[pv] = Some(v);
            match next {
                Some(w) => v = w,
                None => break,
            }
        }
    }

    /// Breadth-first alternating tree from `root`; returns a free vertex
    /// reached by an augmenting path.
    fn grow(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order();
        self.parent.fill(None);
        self.in_tree.fill(false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.in_tree[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for to in self.g.row(v) {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer =
                    to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let lca = self.lowest_common_base(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(v, lca, to, &mut in_blossom);
                    self.mark_path(to, lca, v, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = lca;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.in_tree[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn lowest_common_base(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("outer vertex has a parent"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("non-root outer vertex is matched");
            b = self.parent[m].expect("outer vertex has a parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, lca: usize, mut child: usize, in_blossom: &mut [bool]) {
        while self.base[v] != lca {
            let m = self.mate[v].expect("blossom path alternates");
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("blossom path alternates");
        }
    }
}

/// Result of the balanced-bipartite deficiency check.
#[derive(Clone, Debug, PartialEq)]
pub enum DeficiencyOutcome {
    /// `nu(b) = q`; the bound says nothing.
    NotApplicable { matching_size: usize },
    /// `nu(b) < q`. A tight report's witness says whether `b` is `K_{q-1,q}`
    /// plus an isolated vertex.
    Checked(CertReport),
}

/// For a bipartite `b` with sides of equal size `q` and no perfect matching,
/// checks `|b| <= (q-1)q`.
pub fn bipartite_deficiency_check(
    b: &Graph,
    left: VertexSet,
    right: VertexSet,
) -> Result<DeficiencyOutcome, CertError> {
    let q = left.len();
    if right.len() != q {
        return Err(CertError::pre(format!(
            "partite sets have sizes {} and {}",
            q,
            right.len()
        )));
    }
    if !(left & right).is_empty() {
        return Err(CertError::pre("partite sets overlap"));
    }
    if !(left | right).fits(b.order()) {
        return Err(CertError::pre(
            "partite sets name vertices outside the graph",
        ));
    }
    if let Some(e) = b.edges().find(|e| {
        !(left.contains(e.u()) && right.contains(e.v())
            || left.contains(e.v()) && right.contains(e.u()))
    }) {
        return Err(CertError::pre(format!(
            "edge {e} does not cross the partition"
        )));
    }

    let matching = maximum_matching(b);
    if matching.size() == q {
        return Ok(DeficiencyOutcome::NotApplicable { matching_size: q });
    }
    let edges = b.edge_count() as i128;
    let q = q as i128;
    let report = CertReport::new(Claim::BipartiteDeficiency, edges, (q - 1) * q);
    let report = if report.tight {
        let matched = is_deficient_extremal(b, left, right);
        report.with_witness(Witness::EqualityPattern { matched })
    } else {
        report.witness_on_violation(|| Witness::Matching(matching))
    };
    Ok(DeficiencyOutcome::Checked(report))
}

/// `b` is complete between a `(q-1)`-subset of one side and all of the other.
fn is_deficient_extremal(b: &Graph, left: VertexSet, right: VertexSet) -> bool {
    [(left, right), (right, left)]
        .into_iter()
        .any(|(short, full)| {
            let isolated = short.iter().filter(|&x| b.row(x).is_empty()).count();
            isolated == 1
                && short
                    .iter()
                    .all(|x| b.row(x).is_empty() || b.row(x) == full)
        })
}
