//! Exact dimension of the span of kernel sequences truncated to a prefix.

use std::collections::HashSet;

use crate::error::Result;
use crate::regularity::generators::{one_hot, periodic_basis, rank_families, Generator};
use crate::regularity::kernel::{kernel_sequences, IndexedSequence};
use crate::regularity::rank::{certified_rank, distinct_columns, project, rank_of};
use crate::regularity::{KernelIndex, RegularityParams};

// Sequences materialized at once; bounds peak memory.
const CHUNK: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelRankReport {
    pub e_max: u32,
    pub terms: usize,
    /// Number of `(e, j)` with `e <= e_max` and `j != j_e`.
    pub v_sequences: usize,
    /// Distinct truncated sequences among them.
    pub v_distinct: usize,
    /// Distinct columns among the `V` sequences.
    pub columns: usize,
    pub v_dim: usize,
    /// `G_4` and `v_0`, each with whether it lies in `V`.
    pub inside_v: Vec<(Generator, bool)>,
    /// `W` and the extra sequence, each with whether it enlarged the span.
    pub added: Vec<(KernelIndex, bool)>,
    pub total: usize,
}

/// Reduces the kernel sequences of `w` with `e <= e_max` to `terms` terms.
///
/// `V` (the `j != j_e` sequences) is reduced on its own, which yields a basis
/// of `V` made of kernel sequences. `G_4` and `v_0` are then tested against
/// that basis, and finally the `j_e` sequences and
/// `w(k^{e_max + 1} i + j_{e_max})` are appended one by one.
pub fn kernel_rank<S: IndexedSequence + ?Sized>(
    w: &S,
    p: &RegularityParams,
    e_max: u32,
    terms: usize,
) -> Result<KernelRankReport> {
    let fam = rank_families(p, e_max)?;
    let mut seen = HashSet::new();
    let mut v_rows = Vec::new();
    for chunk in fam.v.chunks(CHUNK) {
        for row in kernel_sequences(w, p.k, chunk, terms) {
            if seen.insert(row.clone()) {
                v_rows.push(row);
            }
        }
    }
    drop(seen);

    let columns = distinct_columns(&v_rows, terms)?;
    let projected: Vec<Vec<i64>> = v_rows.iter().map(|r| project(r, &columns)).collect();
    let v = certified_rank(&projected, columns.len())?;
    drop(projected);
    let basis: Vec<Vec<i64>> = v.basis_rows.iter().map(|&t| v_rows[t].clone()).collect();

    let probes: Vec<Generator> = periodic_basis(4).into_iter().chain(one_hot(1)).collect();
    let inside_v = probes
        .iter()
        .map(|g| {
            let mut rows = basis.clone();
            rows.push(g.materialize(w, p.k, terms));
            Ok((*g, rank_of(&rows, terms)? == v.rank))
        })
        .collect::<Result<Vec<_>>>()?;

    let outside: Vec<KernelIndex> = fam.w.iter().copied().chain([fam.extra]).collect();
    let mut rows = basis;
    let mut rank = v.rank;
    let mut added = Vec::new();
    for (ix, row) in outside.iter().zip(kernel_sequences(w, p.k, &outside, terms)) {
        rows.push(row);
        let next = rank_of(&rows, terms)?;
        added.push((*ix, next > rank));
        rank = next;
    }
    Ok(KernelRankReport {
        e_max,
        terms,
        v_sequences: fam.v.len(),
        v_distinct: v_rows.len(),
        columns: columns.len(),
        v_dim: v.rank,
        inside_v,
        added,
        total: rank,
    })
}
