//! Brute-force ground truth for small instances: boundary solvability on a
//! cluster, minimum distance by enumeration, and minimum-weight decoding.
//!
//! These are deliberately simple and go through the dense product complex,
//! not the standard-form fast paths they are meant to check.

use rayon::prelude::*;
use thiserror::Error;

use crate::augmented::{AugmentedCode, ErrorStdForm, SyndromeStdForm};
use crate::decoder::Cluster;
use crate::gf2::{BitMatrix, BitVec};

/// Largest number of candidate vectors an enumeration may visit.
pub const ENUMERATION_LIMIT: u128 = 1_000_000_000;

/// Largest code size accepted by [`exact_decode`].
pub const EXACT_DECODE_MAX_QUBITS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration would visit {candidates} vectors, limit is {limit}")]
    Infeasible { candidates: u128, limit: u128 },
    #[error("code has {n} qubits, exact decoding supports at most {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("syndrome is not the boundary of any error")]
    NotASyndrome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceBound {
    /// Minimum weight with the lexicographically smallest witness (qubit indices).
    Exact { distance: usize, witness: Vec<usize> },
    /// No logical of weight up to and including the cap.
    GreaterThan(usize),
}

impl DistanceBound {
    pub fn exact(&self) -> Option<usize> {
        match self {
            DistanceBound::Exact { distance, .. } => Some(*distance),
            DistanceBound::GreaterThan(_) => None,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `sum_{w <= w_max} C(n, w)`, saturating.
pub fn candidates_up_to(n: usize, w_max: usize) -> u128 {
    (0..=w_max.min(n)).fold(0u128, |acc, w| acc.saturating_add(binomial(n, w)))
}

fn check_budget(n: usize, w_max: usize) -> Result<(), OracleError> {
    let candidates = candidates_up_to(n, w_max);
    if candidates > ENUMERATION_LIMIT {
        return Err(OracleError::Infeasible {
            candidates,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Whether `s` restricted to the cluster is the boundary of an error
/// supported on the cluster's qubits, by Gaussian elimination on the
/// restricted product boundary.
pub fn is_boundary_on_cluster(code: &AugmentedCode, cluster: &Cluster, s: &SyndromeStdForm) -> bool {
    let fixed = code.fixed();
    let d2 = code.product_complex().boundary(2).clone();
    let mut qubits = Vec::new();
    let mut checks = Vec::new();
    for v in cluster.vertices() {
        qubits.extend((0..fixed.n_z()).map(|c| code.vertex_qubit(v, c)));
        checks.extend((0..fixed.n()).map(|a| code.vertex_check(v, a)));
    }
    for e in cluster.edges() {
        qubits.extend((0..fixed.n()).map(|a| code.edge_qubit(e, a)));
        checks.extend((0..fixed.n_x()).map(|b| code.edge_check(e, b)));
    }
    let restricted = d2.select_rows(&checks).select_columns(&qubits);
    let bits = code.syndrome_to_bits(s);
    let target: Vec<bool> = checks.iter().map(|&i| bits.get(i)).collect();
    let target = BitVec::from_bools(&target);
    restricted.solve(&target).is_some()
}

/// Whether an error is a product of Z stabilizers, i.e. the boundary of a
/// degree-3 chain of the product complex.
pub fn is_stabilizer(code: &AugmentedCode, err: &ErrorStdForm) -> bool {
    let d3 = code.product_complex().boundary(3).clone();
    d3.solve(&code.error_to_bits(err)).is_some()
}

/// Per-qubit columns: X-check syndrome words followed by one word of
/// pairings with the logical X representatives.
struct ColumnTable {
    words: usize,
    data: Vec<u64>,
    n: usize,
}

impl ColumnTable {
    fn new(code: &AugmentedCode) -> Self {
        let d2: BitMatrix = code.product_complex().boundary(2).clone();
        let checks = d2.num_rows();
        let n = d2.num_cols();
        let syn_words = checks.div_ceil(64);
        let words = syn_words + 1;
        let reps = code.logical_x_reps();
        assert!(reps.len() <= 64, "at most 64 logicals");
        let mut data = vec![0u64; n * words];
        let t = d2.transpose();
        for q in 0..n {
            let col = t.row(q);
            data[q * words..q * words + syn_words].copy_from_slice(col.as_words());
            let mut pair = 0u64;
            for (i, r) in reps.iter().enumerate() {
                if r.get(q) {
                    pair |= 1 << i;
                }
            }
            data[q * words + syn_words] = pair;
        }
        Self { words, data, n }
    }

    fn col(&self, q: usize) -> &[u64] {
        &self.data[q * self.words..(q + 1) * self.words]
    }
}

/// Depth-first enumeration of `w`-subsets of `start..n` in lexicographic
/// order, with the running XOR of columns. Returns the first subset whose
/// accumulated vector satisfies `accept`.
fn search_from(
    table: &ColumnTable,
    first: usize,
    w: usize,
    accept: &(impl Fn(&[u64]) -> bool + Sync),
) -> Option<Vec<usize>> {
    let words = table.words;
    let n = table.n;
    let mut chosen = vec![first];
    let mut acc = vec![0u64; words * w];
    acc[..words].copy_from_slice(table.col(first));
    if w == 1 {
        return accept(&acc[..words]).then_some(chosen);
    }
    // next[d] is the next candidate index at depth d (d >= 1)
    let mut next = vec![0usize; w];
    next[1] = first + 1;
    let mut depth = 1;
    loop {
        if next[depth] + (w - depth) > n {
            // exhausted this depth
            depth -= 1;
            if depth == 0 {
                return None;
            }
            chosen.pop();
            continue;
        }
        let q = next[depth];
        next[depth] += 1;
        let (prev, cur) = acc.split_at_mut(depth * words);
        let cur = &mut cur[..words];
        for ((c, &p), &x) in cur.iter_mut().zip(&prev[(depth - 1) * words..]).zip(table.col(q)) {
            *c = p ^ x;
        }
        if depth + 1 == w {
            if accept(cur) {
                chosen.push(q);
                return Some(chosen);
            }
        } else {
            chosen.push(q);
            depth += 1;
            next[depth] = q + 1;
        }
    }
}

fn search_weight(table: &ColumnTable, w: usize, accept: &(impl Fn(&[u64]) -> bool + Sync)) -> Option<Vec<usize>> {
    if w == 0 {
        let zero = vec![0u64; table.words];
        return accept(&zero).then(Vec::new);
    }
    (0..table.n)
        .into_par_iter()
        .filter(|&q| q + w <= table.n)
        .find_map_first(|q| search_from(table, q, w, accept))
}

/// Smallest weight of a zero-syndrome error that is a logical failure,
/// enumerating weights `1..=w_max`.
pub fn brute_force_distance(code: &AugmentedCode, w_max: usize) -> Result<DistanceBound, OracleError> {
    check_budget(code.n(), w_max)?;
    let table = ColumnTable::new(code);
    let syn_words = table.words - 1;
    let accept = |acc: &[u64]| acc[..syn_words].iter().all(|&x| x == 0) && acc[syn_words] != 0;
    for w in 1..=w_max.min(code.n()) {
        if let Some(witness) = search_weight(&table, w, &accept) {
            return Ok(DistanceBound::Exact { distance: w, witness });
        }
    }
    Ok(DistanceBound::GreaterThan(w_max))
}

/// A minimum-weight error with syndrome `s`; ties broken by the
/// lexicographically smallest sorted support.
pub fn exact_decode(code: &AugmentedCode, s: &SyndromeStdForm) -> Result<ErrorStdForm, OracleError> {
    let n = code.n();
    if n > EXACT_DECODE_MAX_QUBITS {
        return Err(OracleError::TooManyQubits {
            n,
            max: EXACT_DECODE_MAX_QUBITS,
        });
    }
    let table = ColumnTable::new(code);
    let syn_words = table.words - 1;
    let target = code.syndrome_to_bits(s);
    let target = target.as_words();
    let accept = |acc: &[u64]| acc[..syn_words] == *target;
    for w in 0..=n {
        if let Some(support) = search_weight(&table, w, &accept) {
            return Ok(code.error_from_qubits(support));
        }
    }
    Err(OracleError::NotASyndrome)
}
