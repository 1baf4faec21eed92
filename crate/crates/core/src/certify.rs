//! Exact machine checks of the extremal inequalities for RBT-free systems.
//!
//! Every comparison is done on integers or exact rationals.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CertError;
use crate::graph::{mantel_number, Graph, VertexSet};
use crate::matching::{
    bipartite_deficiency_check, is_nearly_matchable, DeficiencyOutcome, MatchingResult,
};
use crate::partition::mantel_partition;
use crate::rainbow::{
    auxiliary_incidence_graph, find_rainbow_triangle, triangle_incidence, GraphSystem,
};
use crate::report::{CertReport, Claim, Witness};

fn require_rbt_free(s: &GraphSystem) -> Result<(), CertError> {
    match find_rainbow_triangle(s) {
        Some(w) => Err(CertError::NotRbtFree(w)),
        None => Ok(()),
    }
}

fn require_triangle_free(g: &Graph) -> Result<(), CertError> {
    match g.find_triangle() {
        Some(t) => Err(CertError::NotTriangleFree(t)),
        None => Ok(()),
    }
}

fn triple(b: &Graph, c: &Graph, d: &Graph) -> Result<GraphSystem, CertError> {
    Ok(GraphSystem::new(vec![b.clone(), c.clone(), d.clone()])?)
}

fn edges(g: &Graph) -> i128 {
    g.edge_count() as i128
}

fn mantel(n: usize) -> i128 {
    mantel_number(n) as i128
}

fn choose2(k: i128) -> i128 {
    k * (k - 1) / 2
}

/// `|E| <= floor(n^2/4)` for a triangle-free graph.
pub fn certify_mantel(g: &Graph) -> Result<CertReport, CertError> {
    require_triangle_free(g)?;
    Ok(
        CertReport::new(Claim::Mantel, edges(g), mantel(g.order())).witness_on_violation(|| {
            Witness::System(GraphSystem::new(vec![g.clone()]).expect("one graph"))
        }),
    )
}

/// Incidences between the triangle on `z` and three RBT-free graphs are at
/// most 6, derived from the missing perfect matching of the auxiliary
/// bipartite graph.
pub fn certify_triangle_incidence(s: &GraphSystem, z: [usize; 3]) -> Result<CertReport, CertError> {
    let aux = auxiliary_incidence_graph(s, z)?;
    require_rbt_free(s)?;
    let left = VertexSet::full(3);
    let right = VertexSet::full(6) - left;
    let value = triangle_incidence(s, z)? as i128;
    match bipartite_deficiency_check(&aux, left, right)? {
        DeficiencyOutcome::Checked(r) => {
            debug_assert_eq!(r.value, value);
            Ok(
                CertReport::new(Claim::TriangleIncidence, value, r.bound).witness_on_violation(
                    || Witness::Vertices {
                        vertices: z.to_vec(),
                    },
                ),
            )
        }
        DeficiencyOutcome::NotApplicable { .. } => Err(CertError::Inconsistent(format!(
            "auxiliary graph of {z:?} has a perfect matching in an RBT-free system"
        ))),
    }
}

fn require_matching_outside(
    g: &Graph,
    matching: &MatchingResult,
    x: usize,
) -> Result<(), CertError> {
    if !matching.is_matching_in(g) {
        return Err(CertError::pre("edges do not form a matching of the graph"));
    }
    if x >= g.order() || matching.matched_set().contains(x) {
        return Err(CertError::pre(format!(
            "vertex {x} must be an unmatched vertex"
        )));
    }
    Ok(())
}

/// Degree bounds for a vertex `x` missed by a matching of a triangle-free `g`:
/// `d(x, W) <= l` always, and `d(x) <= l` (second report) when the matching is
/// maximal.
pub fn lemma_23_check(
    g: &Graph,
    matching: &MatchingResult,
    x: usize,
) -> Result<(CertReport, Option<CertReport>), CertError> {
    require_triangle_free(g)?;
    require_matching_outside(g, matching, x)?;
    let l = matching.size() as i128;
    let local = g.degree_into(x, matching.matched_set())? as i128;
    let witness = || Witness::Matching(matching.clone());
    let first = CertReport::new(Claim::LocalDegree, local, l).witness_on_violation(witness);
    let second = matching.is_maximal_in(g).then(|| {
        CertReport::new(Claim::MaximalDegree, g.row(x).len() as i128, l)
            .witness_on_violation(witness)
    });
    Ok((first, second))
}

/// `d_C(x, W) + d_D(x, W) <= 2l` for a matching of `B` missing `x`.
pub fn lemma_24_check(
    b: &Graph,
    c: &Graph,
    d: &Graph,
    matching: &MatchingResult,
    x: usize,
) -> Result<CertReport, CertError> {
    let s = triple(b, c, d)?;
    require_matching_outside(b, matching, x)?;
    require_rbt_free(&s)?;
    let w = matching.matched_set();
    let value = (c.degree_into(x, w)? + d.degree_into(x, w)?) as i128;
    Ok(
        CertReport::new(Claim::PairDegree, value, 2 * matching.size() as i128)
            .witness_on_violation(|| Witness::Matching(matching.clone())),
    )
}

/// Two complete graphs and one empty one, in any order.
pub fn is_two_complete_one_empty(s: &GraphSystem) -> bool {
    let n = s.order();
    let full = crate::graph::pair_count(n);
    let mut counts = s.edge_counts();
    counts.sort_unstable();
    s.len() == 3 && counts == [0, full, full]
}

/// `G` is `K_{floor(n/2), ceil(n/2)}` on some split of the vertices.
pub fn is_balanced_complete_bipartite(g: &Graph) -> bool {
    let n = g.order();
    if n < 2 {
        return g.edge_count() == 0;
    }
    let right = g.row(0);
    let left = g.vertices() - right;
    let balanced = left.len().min(right.len()) == n / 2;
    balanced && left.iter().all(|x| g.row(x) == right) && right.iter().all(|y| g.row(y) == left)
}

/// `|G1| + |G2| + |G3| <= n(n-1)` for RBT-free triples with `n >= 3`. When
/// tight with `n >= 5`, the witness says whether the system is two complete
/// graphs plus an empty one.
pub fn certify_sum_t3(s: &GraphSystem) -> Result<CertReport, CertError> {
    s.require_len(3)?;
    let n = s.order();
    if n < 3 {
        return Err(CertError::pre(format!("n = {n}; the bound needs n >= 3")));
    }
    require_rbt_free(s)?;
    let n = n as i128;
    let report = CertReport::new(Claim::SumT3, s.total_edges() as i128, n * (n - 1));
    Ok(if report.tight && n >= 5 {
        report.with_witness(Witness::EqualityPattern {
            matched: is_two_complete_one_empty(s),
        })
    } else {
        report.witness_on_violation(|| Witness::System(s.clone()))
    })
}

/// `|G1| + .. + |Gt| <= t floor(n^2/4)` for RBT-free systems with `t >= 4`.
/// When tight, the witness says whether all graphs are the same balanced
/// complete bipartite graph.
pub fn certify_sum_t(s: &GraphSystem) -> Result<CertReport, CertError> {
    if s.len() < 4 {
        return Err(CertError::pre(format!(
            "t = {}; the bound needs t >= 4",
            s.len()
        )));
    }
    require_rbt_free(s)?;
    let report = CertReport::new(
        Claim::SumT,
        s.total_edges() as i128,
        s.len() as i128 * mantel(s.order()),
    );
    Ok(if report.tight {
        let g0 = s.graph(0);
        let matched = s.graphs().iter().all(|g| g == g0) && is_balanced_complete_bipartite(g0);
        report.with_witness(Witness::EqualityPattern { matched })
    } else {
        report.witness_on_violation(|| Witness::System(s.clone()))
    })
}

/// `2|B| + |C| + |D| <= 4 floor(n^2/4)` with `B` triangle-free.
pub fn certify_weighted(b: &Graph, c: &Graph, d: &Graph) -> Result<CertReport, CertError> {
    let s = triple(b, c, d)?;
    require_triangle_free(b)?;
    require_rbt_free(&s)?;
    let value = 2 * edges(b) + edges(c) + edges(d);
    Ok(
        CertReport::new(Claim::Weighted, value, 4 * mantel(s.order()))
            .witness_on_violation(|| Witness::System(s)),
    )
}

/// `|C| + |D| <= 2 floor(n^2/4)` with `B` nearly matchable.
pub fn certify_nearly_matchable(b: &Graph, c: &Graph, d: &Graph) -> Result<CertReport, CertError> {
    let s = triple(b, c, d)?;
    if !is_nearly_matchable(b) {
        return Err(CertError::pre("B is not nearly matchable"));
    }
    require_rbt_free(&s)?;
    let value = edges(c) + edges(d);
    Ok(
        CertReport::new(Claim::NearlyMatchable, value, 2 * mantel(s.order()))
            .witness_on_violation(|| Witness::System(s)),
    )
}

fn product_report(claim: Claim, s: GraphSystem) -> CertReport {
    let value = s.edge_product() as i128;
    CertReport::new(claim, value, mantel(s.order()).pow(3))
        .witness_on_violation(|| Witness::System(s))
}

/// `|B||C||D| <= floor(n^2/4)^3` with `B ⊆ C ∩ D`.
pub fn certify_product_nested(b: &Graph, c: &Graph, d: &Graph) -> Result<CertReport, CertError> {
    let s = triple(b, c, d)?;
    if !b.is_subgraph_of(c) || !b.is_subgraph_of(d) {
        return Err(CertError::pre("B must be contained in both C and D"));
    }
    require_rbt_free(&s)?;
    Ok(product_report(Claim::ProductNested, s))
}

/// The product against `floor(n^2/4)^3` without any containment assumption.
/// An excess is reported, not raised: it carries the full system as witness.
pub fn conjecture_margin(b: &Graph, c: &Graph, d: &Graph) -> Result<CertReport, CertError> {
    let s = triple(b, c, d)?;
    require_rbt_free(&s)?;
    Ok(product_report(Claim::Conjecture, s))
}

/// Matching size `l`, the largest degree `p` from `X` into `Z`, and `q = |Z|`
/// for the partition of `B`; `alpha = p/2l`, `beta = q/2l` when `l >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop31Params {
    pub l: usize,
    pub p: usize,
    pub q: usize,
    #[serde(with = "opt_ratio")]
    pub alpha: Option<Ratio<i64>>,
    #[serde(with = "opt_ratio")]
    pub beta: Option<Ratio<i64>>,
}

impl Prop31Params {
    pub fn new(l: usize, p: usize, q: usize) -> Prop31Params {
        let frac = |k: usize| (l >= 1).then(|| Ratio::new(k as i64, 2 * l as i64));
        Prop31Params {
            l,
            p,
            q,
            alpha: frac(p),
            beta: frac(q),
        }
    }
}

mod opt_ratio {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.collect_str(r),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Ratio<i64>>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop31Report {
    pub params: Prop31Params,
    /// `|B| <= l^2 + lp`.
    pub edges: CertReport,
    /// `|C| + |D| <= 2(l^2 + lq + C(q,2) - C(p,2))`.
    pub pair: CertReport,
}

impl Prop31Report {
    pub fn holds(&self) -> bool {
        self.edges.holds() && self.pair.holds()
    }
}

/// Both edge bounds derived from the `X ⊔ Y ⊔ Z` partition of `B`, for
/// RBT-free `(B, C, D)` with `B ⊆ C ∩ D` and `n > 2 nu(B) + 2`.
pub fn prop31_bounds(b: &Graph, c: &Graph, d: &Graph) -> Result<Prop31Report, CertError> {
    let s = triple(b, c, d)?;
    if !b.is_subgraph_of(c) || !b.is_subgraph_of(d) {
        return Err(CertError::pre("B must be contained in both C and D"));
    }
    require_triangle_free(b)?;
    require_rbt_free(&s)?;
    let partition = mantel_partition(b)?;
    let n = b.order();
    let l = partition.size();
    if n <= 2 * l + 2 {
        return Err(CertError::pre(format!(
            "n = {n} <= 2l + 2 = {}; B is nearly matchable",
            2 * l + 2
        )));
    }
    let p = partition.max_degree_into_z(b);
    let q = partition.z_side.len();
    let params = Prop31Params::new(l, p, q);
    let (li, pi, qi) = (l as i128, p as i128, q as i128);
    let witness = Witness::Prop31(params.clone());
    let edges_report = CertReport::new(Claim::Prop31Edges, edges(b), li * li + li * pi)
        .with_witness(witness.clone());
    let pair_bound = 2 * (li * li + li * qi + choose2(qi) - choose2(pi));
    let pair_report =
        CertReport::new(Claim::Prop31Pair, edges(c) + edges(d), pair_bound).with_witness(witness);
    Ok(Prop31Report {
        params,
        edges: edges_report,
        pair: pair_report,
    })
}

/// `(l^2 + lp)(l^2 + lq + q^2/2 - p^2/2)^2 <= floor((2l+q)^2/4)^3`, compared
/// after multiplying both sides by 4.
pub fn ineq_31(l: u64, p: u64, q: u64) -> Result<CertReport, CertError> {
    if p > q {
        return Err(CertError::pre(format!("p = {p} exceeds q = {q}")));
    }
    let (l, p, q) = (l as i128, p as i128, q as i128);
    let doubled = 2 * l * l + 2 * l * q + q * q - p * p;
    let lhs = (l * l + l * p) * doubled * doubled;
    let rhs = 4 * ((2 * l + q) * (2 * l + q) / 4).pow(3);
    Ok(CertReport::new(Claim::Ineq31, lhs, rhs).with_witness(Witness::Scaled { scale: 4 }))
}

/// Exact sides of `(1+a)(1 + 2b + 2b^2 - 2a^2) <= (1+b)^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCheck {
    pub lhs: Ratio<i128>,
    pub rhs: Ratio<i128>,
}

impl RationalCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    pub fn tight(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn ineq_32(alpha: Ratio<i128>, beta: Ratio<i128>) -> Result<RationalCheck, CertError> {
    let zero = Ratio::from_integer(0);
    if alpha < zero || alpha > beta {
        return Err(CertError::pre(format!(
            "need 0 <= alpha <= beta, got {alpha}, {beta}"
        )));
    }
    let one = Ratio::from_integer(1);
    let two = Ratio::from_integer(2);
    let lhs = (one + alpha) * (one + two * beta + two * beta * beta - two * alpha * alpha);
    let rhs = (one + beta) * (one + beta) * (one + beta);
    Ok(RationalCheck { lhs, rhs })
}

/// Totals of a grid scan; violations carry their exact parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub checked: u64,
    pub tight: u64,
    pub violations: Vec<Vec<String>>,
}

impl ScanSummary {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(mut self, other: ScanSummary) -> ScanSummary {
        self.checked += other.checked;
        self.tight += other.tight;
        self.violations.extend(other.violations);
        self
    }
}

/// Default range of the `(l, p, q)` scan.
pub const INEQ31_L_MAX: u64 = 30;
pub const INEQ31_Q_MAX: u64 = 60;
/// Default `(alpha, beta)` grid: `k / 100` for `0 <= k <= 1000`.
pub const INEQ32_DENOMINATOR: u64 = 100;
pub const INEQ32_NUMERATOR_MAX: u64 = 1000;

/// Checks the `(l, p, q)` inequality for `l_min <= l <= l_max`,
/// `0 <= p <= q <= q_max`, both parities of `q`.
pub fn scan_ineq31(l_min: u64, l_max: u64, q_max: u64) -> Result<ScanSummary, CertError> {
    if l_min > l_max {
        return Err(CertError::pre(format!("empty l range {l_min}..={l_max}")));
    }
    let summary = (l_min..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut part = ScanSummary::default();
            for q in 0..=q_max {
                for p in 0..=q {
                    let r = ineq_31(l, p, q).expect("p <= q");
                    part.checked += 1;
                    part.tight += r.tight as u64;
                    if !r.holds() {
                        part.violations
                            .push(vec![l.to_string(), p.to_string(), q.to_string()]);
                    }
                }
            }
            part
        })
        .reduce(ScanSummary::default, ScanSummary::merge);
    Ok(summary)
}

/// Checks the `(alpha, beta)` inequality on the grid `{k/den : 0 <= k <= num_max}`
/// with `alpha <= beta`, in integers scaled by `den^3`.
pub fn scan_ineq32(num_max: u64, den: u64) -> Result<ScanSummary, CertError> {
    if den == 0 {
        return Err(CertError::pre("grid denominator must be positive"));
    }
    let d = den as i128;
    let summary = (0..=num_max)
        .into_par_iter()
        .map(|b| {
            let mut part = ScanSummary::default();
            let b = b as i128;
            let rhs = (d + b).pow(3);
            for a in 0..=b {
                let lhs = (d + a) * (d * d + 2 * b * d + 2 * b * b - 2 * a * a);
                part.checked += 1;
                part.tight += (lhs == rhs) as u64;
                if lhs > rhs {
                    part.violations
                        .push(vec![format!("{a}/{d}"), format!("{b}/{d}")]);
                }
            }
            part
        })
        .reduce(ScanSummary::default, ScanSummary::merge);
    Ok(summary)
}
