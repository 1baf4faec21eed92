//! Brute-force canonical labeling for small graphs and systems.
//!
//! A graph on `n <= 8` vertices is a `C(n,2)`-bit word (colex). Its canonical
//! form is the smallest word over all `n!` relabelings; the relabel tables
//! are built once per `n`.

use std::sync::OnceLock;

use crate::graph::{pair_count, Edge};

/// Largest order handled by the permutation tables.
pub const MAX_CANON_ORDER: usize = 8;

/// For each vertex permutation, the image of every pair index.
pub struct PermTable {
    n: usize,
    pairs: usize,
    images: Vec<u8>,
}

impl PermTable {
    fn build(n: usize) -> PermTable {
        let pairs = pair_count(n);
        let mut images = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            for k in 0..pairs {
                let e = Edge::from_colex_index(k);
                let image =
                    Edge::new(perm[e.u()], perm[e.v()]).expect("permutation keeps pairs distinct");
                images.push(image.colex_index() as u8);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        PermTable { n, pairs, images }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn permutations(&self) -> usize {
        self.images.len().checked_div(self.pairs).unwrap_or(1)
    }

    #[inline]
    pub fn relabel(&self, perm: usize, bits: u64) -> u64 {
        let row = &self.images[perm * self.pairs..(perm + 1) * self.pairs];
        let mut out = 0u64;
        let mut rest = bits;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1u64 << row[k];
        }
        out
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The memoized table for `n <= 8`.
pub fn perm_table(n: usize) -> &'static PermTable {
    static TABLES: [OnceLock<PermTable>; MAX_CANON_ORDER + 1] =
        [const { OnceLock::new() }; MAX_CANON_ORDER + 1];
    assert!(
        n <= MAX_CANON_ORDER,
        "canonical forms are limited to n <= {MAX_CANON_ORDER}"
    );
    TABLES[n].get_or_init(|| PermTable::build(n))
}

/// Smallest relabeling of one graph.
pub fn canonical_graph(n: usize, bits: u64) -> u64 {
    let table = perm_table(n);
    (0..table.permutations())
        .map(|p| table.relabel(p, bits))
        .min()
        .expect("at least the identity")
}

/// Smallest relabeling of a system whose objective ignores graph order: for
/// each vertex permutation the relabeled words are sorted ascending, and the
/// smallest such tuple wins.
pub fn canonical_system(n: usize, graphs: &[u64]) -> Vec<u64> {
    let table = perm_table(n);
    let mut best: Option<Vec<u64>> = None;
    let mut scratch = Vec::with_capacity(graphs.len());
    for p in 0..table.permutations() {
        scratch.clear();
        scratch.extend(graphs.iter().map(|&g| table.relabel(p, g)));
        scratch.sort_unstable();
        if best.as_ref().is_none_or(|b| scratch < *b) {
            best = Some(scratch.clone());
        }
    }
    best.expect("at least the identity")
}

/// One representative per isomorphism class (the smallest word), ascending.
pub fn isomorphism_class_representatives(n: usize) -> Vec<u64> {
    let table = perm_table(n);
    let m = pair_count(n);
    assert!(m <= 24, "class sweep needs C(n,2) <= 24");
    let mut seen = vec![false; 1usize << m];
    let mut reps = Vec::new();
    for bits in 0..(1u64 << m) {
        if seen[bits as usize] {
            continue;
        }
        reps.push(bits);
        for p in 0..table.permutations() {
            seen[table.relabel(p, bits) as usize] = true;
        }
    }
    reps
}
