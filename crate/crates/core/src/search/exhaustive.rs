use std::collections::BTreeSet;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canon::{canonical_system, isomorphism_class_representatives, MAX_CANON_ORDER};
use super::{check_budget, constructor_value, Objective, SearchConfig, SearchMode, SearchReport};
use crate::error::SearchError;
use crate::graph::{pair_count, Edge, Graph};
use crate::rainbow::GraphSystem;

/// Adjacency rows of a graph on at most 8 vertices, one byte per vertex.
#[derive(Clone, Copy, Default)]
struct Rows([u8; 8]);

impl Rows {
    fn from_bits(bits: u64) -> Rows {
        let mut rows = [0u8; 8];
        let mut rest = bits;
        while rest != 0 {
            let e = Edge::from_colex_index(rest.trailing_zeros() as usize);
            rest &= rest - 1;
            rows[e.u()] |= 1 << e.v();
            rows[e.v()] |= 1 << e.u();
        }
        Rows(rows)
    }
}

/// No rainbow triangle takes a side from `a`, `b` and `c` respectively.
#[inline]
fn triple_free(n: usize, a: &Rows, b: &Rows, c: &Rows) -> bool {
    for v in 1..n {
        let (bv, cv) = (b.0[v], c.0[v]);
        let mut lower = a.0[v] & ((1u8 << v) - 1);
        while lower != 0 {
            let u = lower.trailing_zeros() as usize;
            lower &= lower - 1;
            if (b.0[u] & cv) | (c.0[u] & bv) != 0 {
                return false;
            }
        }
    }
    true
}

struct Universe {
    n: usize,
    pairs: usize,
    /// Rows by bit pattern, when `2^C(n,2)` is small enough to tabulate.
    table: Option<Vec<Rows>>,
    /// Bit patterns with `k` edges, ascending.
    by_count: Vec<Vec<u64>>,
}

impl Universe {
    fn new(n: usize) -> Universe {
        let pairs = pair_count(n);
        let all = 1u64 << pairs;
        let table = (pairs <= 20).then(|| (0..all).map(Rows::from_bits).collect());
        let mut by_count = vec![Vec::new(); pairs + 1];
        for bits in 0..all {
            by_count[bits.count_ones() as usize].push(bits);
        }
        Universe {
            n,
            pairs,
            table,
            by_count,
        }
    }

    #[inline]
    fn rows(&self, bits: u64) -> Rows {
        match &self.table {
            Some(t) => t[bits as usize],
            None => Rows::from_bits(bits),
        }
    }
}

#[derive(Default)]
struct ChunkResult {
    best: Option<u64>,
    witnesses: BTreeSet<Vec<u64>>,
    overflow: bool,
    nodes: u64,
    pruned_bound: u64,
    pruned_rainbow: u64,
}

/// Running maximum with its capped, canonical witness set. Merging is
/// commutative, so the result does not depend on chunk completion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Incumbent {
    best: Option<u64>,
    witnesses: BTreeSet<Vec<u64>>,
    overflow: bool,
}

impl Incumbent {
    fn absorb(
        &mut self,
        best: Option<u64>,
        witnesses: BTreeSet<Vec<u64>>,
        overflow: bool,
        cap: usize,
    ) {
        match best.cmp(&self.best) {
            std::cmp::Ordering::Less => {}
            std::cmp::Ordering::Greater => {
                self.best = best;
                self.witnesses = witnesses;
                self.overflow = overflow;
            }
            std::cmp::Ordering::Equal => {
                self.witnesses.extend(witnesses);
                self.overflow |= overflow;
            }
        }
        if self.witnesses.len() > cap {
            self.overflow = true;
            while self.witnesses.len() > cap {
                self.witnesses.pop_last();
            }
        }
    }
}

struct Search<'a> {
    objective: Objective,
    t: usize,
    cfg: &'a SearchConfig,
    universe: &'a Universe,
    incumbent: &'a AtomicU64,
    /// Graph order is fixed by edge count (first graph largest).
    ordered: bool,
}

impl Search<'_> {
    fn run_chunk(&self, first: u64) -> ChunkResult {
        let mut out = ChunkResult::default();
        let mut chosen = Vec::with_capacity(self.t);
        let mut rows = Vec::with_capacity(self.t);
        chosen.push(first);
        rows.push(self.universe.rows(first));
        out.nodes += 1;
        let count = first.count_ones() as u64;
        if self.ordered {
            self.ordered_dfs(&mut chosen, &mut rows, count, &mut out);
        } else {
            self.plain_dfs(&mut chosen, &mut rows, &mut out);
        }
        out
    }

    fn value_after(&self, acc: u64, count: u64) -> u64 {
        match self.objective {
            Objective::Sum => acc + count,
            Objective::Product => acc * count,
        }
    }

    /// Largest value reachable when every remaining graph has at most `cap` edges.
    fn optimistic(&self, acc: u64, cap: u64, remaining: usize) -> u64 {
        match self.objective {
            Objective::Sum => acc + cap * remaining as u64,
            Objective::Product => acc.saturating_mul(cap.saturating_pow(remaining as u32)),
        }
    }

    fn extends_rbt_free(&self, rows: &[Rows], next: &Rows) -> bool {
        let n = self.universe.n;
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if !triple_free(n, &rows[i], &rows[j], next) {
                    return false;
                }
            }
        }
        true
    }

    fn ordered_dfs(
        &self,
        chosen: &mut Vec<u64>,
        rows: &mut Vec<Rows>,
        acc: u64,
        out: &mut ChunkResult,
    ) {
        let k = chosen.len();
        if k == self.t {
            self.record_leaf(chosen, acc, out);
            return;
        }
        let prev = chosen[k - 1];
        let prev_count = prev.count_ones() as usize;
        let first_count = chosen[0].count_ones() as usize;
        // With iso pruning the first graph is relabeled, so only its edge
        // count bounds the second; later graphs follow (count, bits) order.
        let bits_bounded = k >= 2 || !self.cfg.iso_pruning;
        let top = if bits_bounded {
            prev_count
        } else {
            first_count
        };
        let remaining = self.t - k - 1;
        for count in (0..=top).rev() {
            let value = self.value_after(acc, count as u64);
            if self.cfg.branch_and_bound {
                let bound = self.optimistic(value, count as u64, remaining);
                if bound < self.incumbent.load(Ordering::Relaxed) {
                    out.pruned_bound += 1;
                    break;
                }
            }
            for &bits in &self.universe.by_count[count] {
                if bits_bounded && count == prev_count && bits > prev {
                    break;
                }
                out.nodes += 1;
                let next = self.universe.rows(bits);
                if !self.extends_rbt_free(rows, &next) {
                    out.pruned_rainbow += 1;
                    continue;
                }
                chosen.push(bits);
                rows.push(next);
                self.ordered_dfs(chosen, rows, value, out);
                chosen.pop();
                rows.pop();
            }
        }
    }

    fn plain_dfs(&self, chosen: &mut Vec<u64>, rows: &mut Vec<Rows>, out: &mut ChunkResult) {
        if chosen.len() == self.t {
            let mut all_free = true;
            'outer: for k in 2..rows.len() {
                if !self.extends_rbt_free(&rows[..k], &rows[k]) {
                    all_free = false;
                    break 'outer;
                }
            }
            if all_free {
                let value = self
                    .objective
                    .value(chosen.iter().map(|b| b.count_ones() as u64));
                self.record_leaf(chosen, value, out);
            } else {
                out.pruned_rainbow += 1;
            }
            return;
        }
        for bits in 0..(1u64 << self.universe.pairs) {
            out.nodes += 1;
            chosen.push(bits);
            rows.push(self.universe.rows(bits));
            self.plain_dfs(chosen, rows, out);
            chosen.pop();
            rows.pop();
        }
    }

    fn record_leaf(&self, chosen: &[u64], value: u64, out: &mut ChunkResult) {
        // A leaf below the shared incumbent can never be a final maximizer.
        if value < self.incumbent.load(Ordering::Relaxed) {
            return;
        }
        match out.best {
            Some(b) if value < b => return,
            Some(b) if value == b => {}
            _ => {
                out.best = Some(value);
                out.witnesses.clear();
                out.overflow = false;
                self.incumbent.fetch_max(value, Ordering::Relaxed);
            }
        }
        out.witnesses
            .insert(canonical_system(self.universe.n, chosen));
        if out.witnesses.len() > self.cfg.witness_cap {
            out.overflow = true;
            out.witnesses.pop_last();
        }
    }
}

/// Exact maximum of `sum |G_i|` over RBT-free systems of `t` graphs on `n`
/// vertices.
pub fn exhaustive_max_sum(
    n: usize,
    t: usize,
    cfg: &SearchConfig,
) -> Result<SearchReport, SearchError> {
    exhaustive(Objective::Sum, n, t, cfg)
}

/// Exact maximum of `|G_1||G_2||G_3|` over RBT-free triples on `n` vertices.
/// A value above `floor(n^2/4)^3` is flagged in `exceeds_bound`.
pub fn exhaustive_max_product(n: usize, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    exhaustive(Objective::Product, n, 3, cfg)
}

fn exhaustive(
    objective: Objective,
    n: usize,
    t: usize,
    cfg: &SearchConfig,
) -> Result<SearchReport, SearchError> {
    cfg.validate(SearchMode::Exhaustive)?;
    if n == 0 || n > MAX_CANON_ORDER {
        return Err(SearchError::Config(format!(
            "exhaustive search needs 1 <= n <= {MAX_CANON_ORDER}"
        )));
    }
    if t == 0 {
        return Err(SearchError::Config("t must be positive".into()));
    }
    if cfg.iso_pruning && pair_count(n) > 21 {
        return Err(SearchError::Config(
            "isomorphism pruning needs n <= 7".into(),
        ));
    }
    check_budget(n, t, cfg.budget)?;
    let started = Instant::now();

    let universe = Universe::new(n);
    let ordered = cfg.iso_pruning || cfg.branch_and_bound;
    let firsts: Vec<u64> = if cfg.iso_pruning {
        isomorphism_class_representatives(n)
    } else {
        (0..1u64 << universe.pairs).collect()
    };

    let mut checkpoint = match &cfg.checkpoint {
        Some(path) => Checkpoint::load_or_new(path, objective, n, t, cfg)?,
        None => Checkpoint::new(objective, n, t, cfg),
    };
    let mut state = checkpoint.incumbent(n)?;
    let seed = constructor_value(objective, n, t) as u64;
    let shared = AtomicU64::new(seed.max(state.best.unwrap_or(0)));
    let search = Search {
        objective,
        t,
        cfg,
        universe: &universe,
        incumbent: &shared,
        ordered,
    };

    let pending: Vec<(usize, u64)> = firsts
        .iter()
        .copied()
        .enumerate()
        .filter(|(id, _)| !checkpoint.completed.contains(id))
        .collect();
    let progress = Mutex::new((&mut state, &mut checkpoint, Stats::default()));
    let failure: Mutex<Option<SearchError>> = Mutex::new(None);
    cfg.pool()?.install(|| {
        pending.par_iter().for_each(|&(id, first)| {
            let r = search.run_chunk(first);
            let mut guard = progress.lock().expect("progress lock");
            let (state, checkpoint, stats) = &mut *guard;
            stats.nodes += r.nodes;
            stats.pruned_bound += r.pruned_bound;
            stats.pruned_rainbow += r.pruned_rainbow;
            state.absorb(r.best, r.witnesses, r.overflow, cfg.witness_cap);
            checkpoint.completed.insert(id);
            if let Some(path) = &cfg.checkpoint {
                checkpoint.store(state);
                if let Err(e) = checkpoint.save(path) {
                    failure.lock().expect("failure lock").get_or_insert(e);
                }
            }
        })
    });
    if let Some(e) = failure.into_inner().expect("failure lock") {
        return Err(e);
    }
    let (_, _, stats) = progress.into_inner().expect("progress lock");

    let best = state.best.unwrap_or(0) as u128;
    let bound = objective.bound(n, t);
    let witnesses = state
        .witnesses
        .iter()
        .map(|tuple| {
            let graphs = tuple
                .iter()
                .map(|&b| Graph::from_bits(n, b))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GraphSystem::new(graphs)?)
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    Ok(SearchReport {
        objective,
        mode: SearchMode::Exhaustive,
        n,
        t,
        best,
        bound,
        constructor_value: constructor_value(objective, n, t),
        exceeds_bound: bound.is_some_and(|b| best > b),
        witnesses,
        witness_overflow: state.overflow,
        nodes: stats.nodes,
        pruned_bound: stats.pruned_bound,
        pruned_rainbow: stats.pruned_rainbow,
        elapsed_ms: started.elapsed().as_millis() as u64,
        exhaustive: true,
    })
}

#[derive(Default)]
struct Stats {
    nodes: u64,
    pruned_bound: u64,
    pruned_rainbow: u64,
}

/// Progress file: the parameters of the run, the finished chunk ids (indices
/// into the first-graph list) and the incumbent with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    objective: Objective,
    n: usize,
    t: usize,
    iso_pruning: bool,
    branch_and_bound: bool,
    witness_cap: usize,
    completed: BTreeSet<usize>,
    #[serde(default)]
    best: Option<String>,
    /// Canonical witness tuples, each graph in colex hex.
    witnesses: Vec<Vec<String>>,
    overflow: bool,
}

impl Checkpoint {
    fn new(objective: Objective, n: usize, t: usize, cfg: &SearchConfig) -> Checkpoint {
        Checkpoint {
            objective,
            n,
            t,
            iso_pruning: cfg.iso_pruning,
            branch_and_bound: cfg.branch_and_bound,
            witness_cap: cfg.witness_cap,
            completed: BTreeSet::new(),
            best: None,
            witnesses: Vec::new(),
            overflow: false,
        }
    }

    fn load_or_new(
        path: &Path,
        objective: Objective,
        n: usize,
        t: usize,
        cfg: &SearchConfig,
    ) -> Result<Checkpoint, SearchError> {
        let fresh = Checkpoint::new(objective, n, t, cfg);
        if !path.exists() {
            return Ok(fresh);
        }
        let text = std::fs::read_to_string(path)?;
        let saved: Checkpoint =
            serde_json::from_str(&text).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
        let same_run = saved.objective == fresh.objective
            && saved.n == fresh.n
            && saved.t == fresh.t
            && saved.iso_pruning == fresh.iso_pruning
            && saved.branch_and_bound == fresh.branch_and_bound
            && saved.witness_cap == fresh.witness_cap;
        if !same_run {
            return Err(SearchError::Checkpoint(format!(
                "{} belongs to a different search",
                path.display()
            )));
        }
        Ok(saved)
    }

    fn incumbent(&self, n: usize) -> Result<Incumbent, SearchError> {
        let bad = |e: String| SearchError::Checkpoint(e);
        let best = self
            .best
            .as_deref()
            .map(|b| b.parse::<u64>().map_err(|e| bad(e.to_string())))
            .transpose()?;
        let witnesses = self
            .witnesses
            .iter()
            .map(|tuple| {
                tuple
                    .iter()
                    .map(|h| {
                        Graph::from_hex(n, h)
                            .map_err(|e| bad(e.to_string()))
                            .map(|g| g.to_bits().expect("n <= 8"))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Incumbent {
            best,
            witnesses,
            overflow: self.overflow,
        })
    }

    fn store(&mut self, state: &Incumbent) {
        self.best = state.best.map(|b| b.to_string());
        self.witnesses = state
            .witnesses
            .iter()
            .map(|tuple| {
                tuple
                    .iter()
                    .map(|&b| Graph::from_bits(self.n, b).expect("valid pattern").to_hex())
                    .collect()
            })
            .collect();
        self.overflow = state.overflow;
    }

    fn save(&self, path: &Path) -> Result<(), SearchError> {
        let tmp = path.with_extension("tmp");
        std::fs::write(
            &tmp,
            serde_json::to_string_pretty(self)
                .map_err(|e| SearchError::Checkpoint(e.to_string()))?,
        )?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Per-chunk values for tests: best value keyed by first-graph pattern.
#[cfg(test)]
fn chunk_bests(
    objective: Objective,
    n: usize,
    t: usize,
    cfg: &SearchConfig,
) -> std::collections::BTreeMap<u64, Option<u64>> {
    let universe = Universe::new(n);
    let shared = AtomicU64::new(0);
    let search = Search {
        objective,
        t,
        cfg,
        universe: &universe,
        incumbent: &shared,
        ordered: cfg.iso_pruning || cfg.branch_and_bound,
    };
    (0..1u64 << universe.pairs)
        .map(|f| (f, search.run_chunk(f).best))
        .collect()
}
