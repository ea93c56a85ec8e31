//! The small "fixed" CSS code of the product.
//!
//! The code is given by `H_X` (`n_X x n_C`) and `H_Z` (`n_Z x n_C`) with
//! `H_X * H_Z^T = 0` and no redundant checks. As a chain complex it reads
//! `C_2 = Z2^{n_Z} --H_Z^T--> C_1 = Z2^{n_C} --H_X--> C_0 = Z2^{n_X}`.
//!
//! Vectors of the fixed code are small, so besides the [`BitVec`] API the
//! decoder hot paths use packed `u64` words where bit `a` is coordinate `a`.
//! This caps `n_C` at 64.
//!
//! Some texts state the commutation condition as `H_Z^T * H_X = 0`, which does
//! not type-check for non-square matrices; the condition enforced here is the
//! usual `H_X * H_Z^T = 0`.

use std::collections::HashMap;

use thiserror::Error;

use crate::chain_complex::ChainComplex;
use crate::gf2::{BitMatrix, BitVec, ParseBitsError};

/// Largest supported `n_X` or `n_Z`; decoder tables have `2^n` entries.
pub const MAX_CHECKS: usize = 16;
/// Largest supported `n_C`.
pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("H_X has {hx} columns but H_Z has {hz}")]
    ColumnMismatch { hx: usize, hz: usize },
    #[error("fixed code must have between 1 and {MAX_QUBITS} qubits, got {0}")]
    QubitCount(usize),
    #[error("{which} has {count} rows; at most {MAX_CHECKS} are supported")]
    TooManyChecks { which: &'static str, count: usize },
    #[error("checks do not commute: H_X * H_Z^T != 0")]
    NotCommuting,
    #[error("{which} has redundant rows (rank {rank} < {rows})")]
    Redundant {
        which: &'static str,
        rank: usize,
        rows: usize,
    },
    #[error("code encodes no logical qubits")]
    NoLogicals,
    #[error("malformed code file: {0}")]
    Parse(String),
    #[error(transparent)]
    Bits(#[from] ParseBitsError),
}

#[derive(Clone, Debug)]
pub struct CssCode {
    n: usize,
    hx: BitMatrix,
    hz: BitMatrix,
    hx_words: Vec<u64>,
    hz_words: Vec<u64>,
    x_logicals: Vec<u64>,
    z_logicals: Vec<u64>,
    distance: usize,
    dx_table: Vec<u64>,
    dzt_table: HashMap<u64, u64>,
}

/// Iterates the `n`-bit words of weight `w` in increasing numeric order.
pub(crate) fn words_of_weight(n: usize, w: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let mut next: Option<u128> = if w > n {
        None
    } else {
        Some((1u128 << w) - 1)
    };
    std::iter::from_fn(move || {
        let x = next?;
        if x >= limit {
            return None;
        }
        next = if x == 0 {
            None
        } else {
            // Gosper's hack
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x as u64)
    })
}

#[inline]
fn parity(w: u64) -> bool {
    w.count_ones() & 1 == 1
}

fn rows_as_words(m: &BitMatrix) -> Vec<u64> {
    m.rows().iter().map(BitVec::to_word).collect()
}

impl CssCode {
    pub fn build(hx: BitMatrix, hz: BitMatrix) -> Result<Self, CodeError> {
        let n = hx.num_cols();
        if hz.num_cols() != n {
            return Err(CodeError::ColumnMismatch {
                hx: n,
                hz: hz.num_cols(),
            });
        }
        if n == 0 || n > MAX_QUBITS {
            return Err(CodeError::QubitCount(n));
        }
        for (which, m) in [("H_X", &hx), ("H_Z", &hz)] {
            if m.num_rows() > MAX_CHECKS {
                return Err(CodeError::TooManyChecks {
                    which,
                    count: m.num_rows(),
                });
            }
        }
        if !hx.mul(&hz.transpose()).is_zero() {
            return Err(CodeError::NotCommuting);
        }
        for (which, m) in [("H_X", &hx), ("H_Z", &hz)] {
            let rank = m.rank();
            if rank < m.num_rows() {
                return Err(CodeError::Redundant {
                    which,
                    rank,
                    rows: m.num_rows(),
                });
            }
        }
        if hx.num_rows() + hz.num_rows() == n {
            return Err(CodeError::NoLogicals);
        }

        let (xs, zs) = compute_logicals(&hx, &hz);
        let mut code = CssCode {
            n,
            hx_words: rows_as_words(&hx),
            hz_words: rows_as_words(&hz),
            hx,
            hz,
            x_logicals: xs.iter().map(BitVec::to_word).collect(),
            z_logicals: zs.iter().map(BitVec::to_word).collect(),
            distance: 0,
            dx_table: Vec::new(),
            dzt_table: HashMap::new(),
        };
        code.distance = code.brute_force_distance();
        code.dx_table = code.build_dx_table();
        code.dzt_table = (0u64..1 << code.n_z())
            .map(|y| (code.hz_t_image(y), y))
            .collect();
        Ok(code)
    }

    /// `[[4,2,2]]` with checks `XXXX` and `ZZZZ`.
    pub fn four_two_two() -> Self {
        let row = BitMatrix::parse_rows(4, "1111").expect("static matrix");
        Self::build(row.clone(), row).expect("[[4,2,2]] is valid")
    }

    /// `[[1,1,1]]`: one bare qubit, no checks. The product with it is the
    /// plain toric code.
    pub fn trivial() -> Self {
        Self::build(BitMatrix::zeros(0, 1), BitMatrix::zeros(0, 1)).expect("[[1,1,1]] is valid")
    }

    /// The `[[7,1,3]]` Steane code.
    pub fn steane() -> Self {
        let h = BitMatrix::parse_rows(7, "1010101\n0110011\n0001111").expect("static matrix");
        Self::build(h.clone(), h).expect("Steane code is valid")
    }

    /// Parses the text format: the rows of `H_X`, a blank line, the rows of
    /// `H_Z`. Each row is a string of `0`/`1` of length `n_C`. A block holding
    /// the single line `-` is an empty matrix. Lines starting with `#` are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let mut blocks: Vec<Vec<&str>> = vec![Vec::new()];
        for line in text.lines() {
            let line = line.trim();
            if line.starts_with('#') {
                continue;
            }
            if line.is_empty() {
                if !blocks.last().expect("non-empty").is_empty() {
                    blocks.push(Vec::new());
                }
            } else {
                blocks.last_mut().expect("non-empty").push(line);
            }
        }
        if blocks.last().is_some_and(Vec::is_empty) {
            blocks.pop();
        }
        if blocks.len() != 2 {
            return Err(CodeError::Parse(format!(
                "expected two blocks (H_X, H_Z) separated by a blank line, found {}",
                blocks.len()
            )));
        }
        let width = |b: &[&str]| -> Option<usize> {
            (b != ["-"]).then(|| b[0].chars().filter(|c| !c.is_whitespace()).count())
        };
        let n = width(&blocks[0])
            .or_else(|| width(&blocks[1]))
            .ok_or_else(|| CodeError::Parse("both blocks are empty; n_C is undefined".into()))?;
        let parse_block = |b: &[&str]| -> Result<BitMatrix, CodeError> {
            if b == ["-"] {
                Ok(BitMatrix::zeros(0, n))
            } else {
                Ok(BitMatrix::parse_rows(n, &b.join("\n"))?)
            }
        };
        Self::build(parse_block(&blocks[0])?, parse_block(&blocks[1])?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_x(&self) -> usize {
        self.hx.num_rows()
    }

    pub fn n_z(&self) -> usize {
        self.hz.num_rows()
    }

    pub fn k(&self) -> usize {
        self.x_logicals.len()
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    /// `C_2 -> C_1 -> C_0` with maps `H_Z^T` and `H_X`.
    pub fn complex(&self) -> ChainComplex {
        ChainComplex::new(
            vec![self.n_x(), self.n, self.n_z()],
            vec![self.hx.clone(), self.hz.transpose()],
        )
        .expect("shapes follow from the check matrices")
    }

    pub fn x_logicals(&self) -> Vec<BitVec> {
        self.x_logicals.iter().map(|&w| BitVec::from_word(self.n, w)).collect()
    }

    pub fn z_logicals(&self) -> Vec<BitVec> {
        self.z_logicals.iter().map(|&w| BitVec::from_word(self.n, w)).collect()
    }

    #[inline]
    pub fn x_logical_words(&self) -> &[u64] {
        &self.x_logicals
    }

    #[inline]
    pub fn z_logical_words(&self) -> &[u64] {
        &self.z_logicals
    }

    #[inline]
    pub fn hz_words(&self) -> &[u64] {
        &self.hz_words
    }

    #[inline]
    pub fn hx_words(&self) -> &[u64] {
        &self.hx_words
    }

    /// `H_X * e` for a packed `C_1` vector.
    #[inline]
    pub fn hx_syndrome(&self, e: u64) -> u64 {
        self.hx_words
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &row)| acc | (u64::from(parity(row & e)) << i))
    }

    /// `H_Z^T * y` for a packed `C_2` vector.
    #[inline]
    pub fn hz_t_image(&self, y: u64) -> u64 {
        let mut acc = 0;
        let mut y = y;
        while y != 0 {
            let b = y.trailing_zeros() as usize;
            acc ^= self.hz_words[b];
            y &= y - 1;
        }
        acc
    }

    /// Bit `i` is `(s | x_i)`.
    #[inline]
    pub fn x_pairings(&self, s: u64) -> u64 {
        self.x_logicals
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &x)| acc | (u64::from(parity(x & s)) << i))
    }

    /// Minimum-weight `e` with `H_X * e = s`. Among equal weights, the one
    /// whose packed word is numerically smallest (so `1000` beats `0100`).
    #[inline]
    pub fn decode_dx(&self, s: u64) -> u64 {
        self.dx_table[s as usize]
    }

    /// The unique `y` with `H_Z^T * y = s`, or `None` outside the image.
    /// `H_Z` has full row rank, so preimages are unique and thus minimal.
    #[inline]
    pub fn decode_dzt(&self, s: u64) -> Option<u64> {
        self.dzt_table.get(&s).copied()
    }

    pub fn decode_dx_bits(&self, s: &BitVec) -> BitVec {
        assert_eq!(s.len(), self.n_x());
        BitVec::from_word(self.n, self.decode_dx(s.to_word()))
    }

    pub fn decode_dzt_bits(&self, s: &BitVec) -> Option<BitVec> {
        assert_eq!(s.len(), self.n);
        self.decode_dzt(s.to_word())
            .map(|y| BitVec::from_word(self.n_z(), y))
    }

    fn build_dx_table(&self) -> Vec<u64> {
        let size = 1usize << self.n_x();
        let mut table = vec![u64::MAX; size];
        let mut filled = 0;
        'outer: for w in 0..=self.n {
            for e in words_of_weight(self.n, w) {
                let s = self.hx_syndrome(e) as usize;
                if table[s] == u64::MAX {
                    table[s] = e;
                    filled += 1;
                    if filled == size {
                        break 'outer;
                    }
                }
            }
        }
        debug_assert_eq!(filled, size, "H_X has full row rank");
        table
    }

    /// Smallest weight of a nontrivial logical of either type.
    fn brute_force_distance(&self) -> usize {
        for w in 1..=self.n {
            for v in words_of_weight(self.n, w) {
                let z_type = self.hx_syndrome(v) == 0 && self.x_pairings(v) != 0;
                let z_pair = self
                    .z_logicals
                    .iter()
                    .any(|&z| parity(z & v));
                let x_type = self.hz_words.iter().all(|&r| !parity(r & v)) && z_pair;
                if z_type || x_type {
                    return w;
                }
            }
        }
        unreachable!("a code with k >= 1 has a logical of weight <= n")
    }
}

/// Symplectic pairs `(x_i, z_j)` with `(x_i | z_j) = delta_ij`.
///
/// Candidates are kernel basis vectors taken in order and kept when
/// independent of the stabilizers seen so far, then paired by symplectic
/// Gram-Schmidt. Deterministic for a fixed input.
pub fn compute_logicals(hx: &BitMatrix, hz: &BitMatrix) -> (Vec<BitVec>, Vec<BitVec>) {
    let pick = |kernel_of: &BitMatrix, stabilizers: &BitMatrix| -> Vec<BitVec> {
        let mut span = stabilizers.clone();
        let mut out = Vec::new();
        for v in kernel_of.kernel_basis() {
            let grown = span.vstack(&BitMatrix::from_rows(v.len(), vec![v.clone()]));
            if grown.rank() > span.rank() {
                span = grown;
                out.push(v);
            }
        }
        out
    };
    let mut xs = pick(hz, hx);
    let mut zs = pick(hx, hz);
    debug_assert_eq!(xs.len(), zs.len());

    let mut x_out = Vec::new();
    let mut z_out = Vec::new();
    while !xs.is_empty() {
        let x = xs.remove(0);
        let pos = zs
            .iter()
            .position(|z| x.dot(z))
            .expect("pairing between homology and cohomology is non-degenerate");
        let z = zs.remove(pos);
        for other in xs.iter_mut() {
            if other.dot(&z) {
                other.xor_assign(&x);
            }
        }
        for other in zs.iter_mut() {
            if x.dot(other) {
                other.xor_assign(&z);
            }
        }
        x_out.push(x);
        z_out.push(z);
    }
    (x_out, z_out)
}
