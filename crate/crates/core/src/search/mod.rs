//! Maximization of `sum |G_i|` and `|G_1||G_2||G_3|` over RBT-free systems.
//!
//! Exhaustive search enumerates systems on at most 8 vertices with symmetry
//! breaking and branch-and-bound; local search hill-climbs over single-edge
//! moves for larger `n`.

pub mod canon;
pub mod construct;
mod exhaustive;
mod local;

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::SearchError;
use crate::graph::{mantel_number, pair_count};
use crate::rainbow::GraphSystem;
use crate::report::int_string;

pub use construct::{balanced_bipartite_system, bipartite_triple, two_complete_one_empty};
pub use exhaustive::{exhaustive_max_product, exhaustive_max_sum};
pub use local::local_search_product;

/// Default cap on `t * C(n,2)`, the log2 size of the raw tuple space.
pub const DEFAULT_BUDGET: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    Sum,
    Product,
}

impl Objective {
    pub fn value(self, counts: impl IntoIterator<Item = u64>) -> u64 {
        match self {
            Objective::Sum => counts.into_iter().sum(),
            Objective::Product => counts.into_iter().product(),
        }
    }

    pub fn of_system(self, s: &GraphSystem) -> u128 {
        match self {
            Objective::Sum => s.total_edges() as u128,
            Objective::Product => s.edge_product(),
        }
    }

    /// The proven (sum) or conjectured (product) upper bound, where one is
    /// stated: `n(n-1)` for `t = 3, n >= 3`; `t floor(n^2/4)` for `t >= 4`;
    /// `floor(n^2/4)^3` for the product.
    pub fn bound(self, n: usize, t: usize) -> Option<u128> {
        let quarter = mantel_number(n) as u128;
        match self {
            Objective::Sum if t == 3 && n >= 3 => Some((n * (n - 1)) as u128),
            Objective::Sum if t >= 4 => Some(t as u128 * quarter),
            Objective::Sum => None,
            Objective::Product => Some(quarter.pow(3)),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Sum => "sum",
            Objective::Product => "product",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    Local,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Required in local mode.
    pub seed: Option<u64>,
    /// Moves per restart (local mode).
    pub iterations: u64,
    pub restarts: u32,
    /// Consecutive non-improving moves tolerated before a restart.
    pub patience: u64,
    pub threads: usize,
    /// Enumerate the first graph up to isomorphism.
    pub iso_pruning: bool,
    /// Order the graphs by edge count and prune by the optimistic bound. With
    /// this and `iso_pruning` both off, every tuple is enumerated.
    pub branch_and_bound: bool,
    pub witness_cap: usize,
    /// Largest permitted `t * C(n,2)`.
    pub budget: usize,
    /// Resumable progress file for exhaustive runs.
    pub checkpoint: Option<PathBuf>,
}

impl SearchConfig {
    pub fn exhaustive() -> SearchConfig {
        SearchConfig {
            mode: SearchMode::Exhaustive,
            seed: None,
            iterations: 0,
            restarts: 0,
            patience: 0,
            threads: 1,
            iso_pruning: true,
            branch_and_bound: true,
            witness_cap: 64,
            budget: DEFAULT_BUDGET,
            checkpoint: None,
        }
    }

    /// Plain enumeration of every tuple, for cross-checking the pruned search.
    pub fn unpruned() -> SearchConfig {
        SearchConfig {
            iso_pruning: false,
            branch_and_bound: false,
            ..SearchConfig::exhaustive()
        }
    }

    pub fn local(seed: u64) -> SearchConfig {
        SearchConfig {
            mode: SearchMode::Local,
            seed: Some(seed),
            iterations: 20_000,
            restarts: 8,
            patience: 2_000,
            threads: 1,
            iso_pruning: false,
            branch_and_bound: false,
            witness_cap: 1,
            budget: DEFAULT_BUDGET,
            checkpoint: None,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> SearchConfig {
        self.threads = threads;
        self
    }

    fn validate(&self, mode: SearchMode) -> Result<(), SearchError> {
        if self.mode != mode {
            return Err(SearchError::Config(format!(
                "expected {mode:?} mode, got {:?}",
                self.mode
            )));
        }
        if self.threads == 0 {
            return Err(SearchError::Config("thread count must be positive".into()));
        }
        if self.witness_cap == 0 {
            return Err(SearchError::Config("witness cap must be positive".into()));
        }
        if mode == SearchMode::Local && self.seed.is_none() {
            return Err(SearchError::Config("local search needs a seed".into()));
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool, SearchError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| SearchError::Config(e.to_string()))
    }
}

/// Outcome of a search run. `elapsed_ms` is the only field that varies
/// between identical runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub objective: Objective,
    pub mode: SearchMode,
    pub n: usize,
    pub t: usize,
    #[serde(with = "int_string")]
    pub best: u128,
    #[serde(serialize_with = "opt_string")]
    pub bound: Option<u128>,
    #[serde(with = "int_string")]
    pub constructor_value: u128,
    /// `best` exceeds `bound`; the witnesses are counterexamples.
    pub exceeds_bound: bool,
    /// Maximizers found, as canonical forms when `n <= 8`.
    #[serde(serialize_with = "hex_systems")]
    pub witnesses: Vec<GraphSystem>,
    pub witness_overflow: bool,
    #[serde(with = "int_string")]
    pub nodes: u64,
    #[serde(with = "int_string")]
    pub pruned_bound: u64,
    #[serde(with = "int_string")]
    pub pruned_rainbow: u64,
    #[serde(with = "int_string")]
    pub elapsed_ms: u64,
    /// `best` is the true maximum.
    pub exhaustive: bool,
}

impl SearchReport {
    /// The report with `elapsed_ms` cleared, for reproducibility checks.
    pub fn without_timing(&self) -> SearchReport {
        SearchReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

fn opt_string<S: Serializer>(v: &Option<u128>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

fn hex_systems<S: Serializer>(v: &[GraphSystem], s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Doc {
        n: usize,
        hex: Vec<String>,
    }
    s.collect_seq(v.iter().map(|sys| Doc {
        n: sys.order(),
        hex: sys.graphs().iter().map(|g| g.to_hex()).collect(),
    }))
}

/// Best value among the RBT-free constructors with `t` graphs.
pub fn constructor_value(objective: Objective, n: usize, t: usize) -> u128 {
    let bipartite = balanced_bipartite_system(n, t)
        .map(|s| objective.of_system(&s))
        .unwrap_or(0);
    let two_complete = match objective {
        // Two complete graphs and t-2 empty ones.
        Objective::Sum if t >= 2 => 2 * pair_count(n) as u128,
        Objective::Sum => (t * pair_count(n)) as u128,
        Objective::Product => 0,
    };
    bipartite.max(two_complete)
}

pub(crate) fn check_budget(n: usize, t: usize, budget: usize) -> Result<(), SearchError> {
    let needed = t.saturating_mul(pair_count(n));
    if needed > budget {
        return Err(SearchError::BudgetExceeded { needed, budget });
    }
    Ok(())
}
