//! Bound-check reports shared by every certifier.
//!
//! Integers are serialized as decimal strings so that consumers which parse
//! JSON numbers as doubles cannot truncate products.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matching::MatchingResult;
use crate::partition::MantelPartition;
use crate::rainbow::GraphSystem;

/// Identifies the inequality a report certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `|E| <= floor(n^2/4)` for triangle-free graphs.
    Mantel,
    /// `|E| <= l(n - l)` for triangle-free graphs with matching number `l`.
    MantelMatching,
    /// `|B| <= (q-1)q` for a balanced bipartite graph without a perfect matching.
    BipartiteDeficiency,
    /// Edge incidences of one triangle over three RBT-free graphs are at most 6.
    TriangleIncidence,
    /// `d(x, W) <= l` outside a matching of a triangle-free graph.
    LocalDegree,
    /// `d(x) <= l` outside a maximal matching of a triangle-free graph.
    MaximalDegree,
    /// `d_C(x, W) + d_D(x, W) <= 2l` outside a matching of `B`.
    PairDegree,
    /// `|G1| + |G2| + |G3| <= n(n-1)`.
    SumT3,
    /// `|G1| + .. + |Gt| <= t floor(n^2/4)` for `t >= 4`.
    SumT,
    /// `2|B| + |C| + |D| <= 4 floor(n^2/4)` with `B` triangle-free.
    Weighted,
    /// `|C| + |D| <= 2 floor(n^2/4)` with `B` nearly matchable.
    NearlyMatchable,
    /// `|B||C||D| <= floor(n^2/4)^3` with `B` inside `C` and `D`.
    ProductNested,
    /// `|B||C||D| <= floor(n^2/4)^3` with no containment assumption.
    Conjecture,
    /// `|B| <= l^2 + lp`.
    Prop31Edges,
    /// `|C| + |D| <= 2(l^2 + lq + C(q,2) - C(p,2))`.
    Prop31Pair,
    /// The scaled integer form of the `(l, p, q)` product inequality.
    Ineq31,
}

impl Claim {
    pub fn id(self) -> &'static str {
        match self {
            Claim::Mantel => "mantel",
            Claim::MantelMatching => "mantel-matching",
            Claim::BipartiteDeficiency => "bipartite-deficiency",
            Claim::TriangleIncidence => "triangle-incidence",
            Claim::LocalDegree => "local-degree",
            Claim::MaximalDegree => "maximal-degree",
            Claim::PairDegree => "pair-degree",
            Claim::SumT3 => "sum-t3",
            Claim::SumT => "sum-t",
            Claim::Weighted => "weighted",
            Claim::NearlyMatchable => "nearly-matchable",
            Claim::ProductNested => "product-nested",
            Claim::Conjecture => "conjecture",
            Claim::Prop31Edges => "prop31-edges",
            Claim::Prop31Pair => "prop31-pair",
            Claim::Ineq31 => "ineq31",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Supporting data attached to a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// The full input, attached to every violation.
    System(GraphSystem),
    /// Whether a tight instance has the known extremal shape.
    EqualityPattern {
        matched: bool,
    },
    Partition(MantelPartition),
    Matching(MatchingResult),
    Vertices {
        vertices: Vec<usize>,
    },
    Prop31(crate::certify::Prop31Params),
    /// Value and bound were multiplied by `scale` to stay integral.
    Scaled {
        scale: u32,
    },
}

/// Outcome of one bound check: `value <= bound` with exact integers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub claim: Claim,
    #[serde(with = "int_string")]
    pub value: i128,
    #[serde(with = "int_string")]
    pub bound: i128,
    #[serde(with = "int_string")]
    pub slack: i128,
    pub tight: bool,
    pub witness: Option<Witness>,
}

impl CertReport {
    pub fn new(claim: Claim, value: i128, bound: i128) -> CertReport {
        CertReport {
            claim,
            value,
            bound,
            slack: bound - value,
            tight: value == bound,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> CertReport {
        self.witness = Some(witness);
        self
    }

    /// Attaches `witness` only when the bound is exceeded.
    pub fn witness_on_violation(self, witness: impl FnOnce() -> Witness) -> CertReport {
        if self.holds() {
            self
        } else {
            self.with_witness(witness())
        }
    }

    #[inline]
    pub fn holds(&self) -> bool {
        self.slack >= 0
    }
}

impl fmt::Display for CertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.holds(), self.tight) {
            (false, _) => "VIOLATED",
            (true, true) => "holds (tight)",
            (true, false) => "holds",
        };
        write!(
            f,
            "{}: {} <= {} {} [slack {}]",
            self.claim, self.value, self.bound, verdict, self.slack
        )
    }
}

/// Serde adapter writing integers as decimal strings.
pub mod int_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
