//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors and matrices store their coordinates in 64-bit words. Bits beyond
//! the logical length of a vector are kept at zero so that word-wise
//! comparisons, hashing and popcounts are exact.
//!
//! Gaussian elimination always picks the leftmost pivot column and, within
//! it, the topmost available row. `solve` and `kernel_basis` are therefore
//! deterministic functions of their input.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseBitsError {
    #[error("unexpected character {0:?}; expected '0' or '1'")]
    BadChar(char),
    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![!0; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// Builds a vector from the low `len` bits of `word` (bit `i` is coordinate `i`).
    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= WORD, "from_word supports at most 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word;
            v.clear_tail();
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.flip(i);
        }
        v
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Standard inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// The packed words; bits past `len` are zero.
    pub fn as_words(&self) -> &[u64] {
        &self.words
    }

    /// The first 64 coordinates packed into one word.
    pub fn to_word(&self) -> u64 {
        assert!(self.len <= WORD, "to_word on a vector longer than 64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn concat(parts: &[&BitVec]) -> BitVec {
        let len = parts.iter().map(|p| p.len).sum();
        let mut out = BitVec::zeros(len);
        let mut off = 0;
        for p in parts {
            for i in p.iter_ones() {
                out.set(off + i, true);
            }
            off += p.len;
        }
        out
    }

    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        BitVec::from_support(
            len,
            self.iter_ones()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ParseBitsError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitVec::from_bools(&bits))
    }
}

/// A row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
        }
        Self { cols, rows }
    }

    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has the wrong length");
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Parses whitespace-separated rows of `0`/`1` characters.
    pub fn parse_rows(cols: usize, text: &str) -> Result<Self, ParseBitsError> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().map(str::trim).filter(|l| !l.is_empty()).enumerate() {
            let r: BitVec = line.parse()?;
            if r.len() != cols {
                return Err(ParseBitsError::RaggedRow {
                    row: i,
                    found: r.len(),
                    expected: cols,
                });
            }
            rows.push(r);
        }
        Ok(Self { cols, rows })
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_bools(&self.rows.iter().map(|r| r.get(c)).collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Matrix-vector product.
    ///
    /// # Panics
    ///
    /// Panics when `v.len() != self.num_cols()`.
    pub fn mat_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(
            v.len(),
            self.cols,
            "dimension mismatch: {}x{} matrix applied to vector of length {}",
            self.num_rows(),
            self.cols,
            v.len()
        );
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.num_rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Composition `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.num_rows(), "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix {
            cols: other.cols,
            rows,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| BitVec::from_bools(&cols.iter().map(|&c| r.get(c)).collect::<Vec<_>>()))
            .collect();
        BitMatrix {
            cols: cols.len(),
            rows,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: self.cols,
            rows: rows.iter().map(|&r| self.rows[r].clone()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self.clone()).pivots.len()
    }

    /// Finds some `x` with `self * x == b`, or `None` if `b` is outside the
    /// column space.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.num_rows(), "right-hand side has the wrong length");
        let mut ech = Echelon::with_rhs(self.clone(), b.clone());
        ech.solution()
    }

    /// A basis of the null space `{x : self * x == 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let ech = Echelon::new(self.clone());
        let mut is_pivot = vec![false; self.cols];
        for &(_, c) in &ech.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVec::zeros(self.cols);
                x.set(f, true);
                for &(r, c) in &ech.pivots {
                    if ech.mat.get(r, f) {
                        x.set(c, true);
                    }
                }
                x
            })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.num_rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form with an optional right-hand side column.
struct Echelon {
    mat: BitMatrix,
    rhs: Option<BitVec>,
    /// (row, column) of each pivot, in increasing order of both.
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    fn new(mat: BitMatrix) -> Self {
        Self::reduce(mat, None)
    }

    fn with_rhs(mat: BitMatrix, rhs: BitVec) -> Self {
        Self::reduce(mat, Some(rhs))
    }

    fn reduce(mut mat: BitMatrix, mut rhs: Option<BitVec>) -> Self {
        let nrows = mat.num_rows();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..mat.cols {
            if next == nrows {
                break;
            }
            let Some(p) = (next..nrows).find(|&r| mat.rows[r].get(c)) else {
                continue;
            };
            mat.rows.swap(next, p);
            if let Some(b) = rhs.as_mut() {
                let (x, y) = (b.get(next), b.get(p));
                b.set(next, y);
                b.set(p, x);
            }
            let pivot_row = mat.rows[next].clone();
            let pivot_rhs = rhs.as_ref().map(|b| b.get(next));
            for r in 0..nrows {
                if r != next && mat.rows[r].get(c) {
                    mat.rows[r].xor_assign(&pivot_row);
                    if let (Some(b), Some(true)) = (rhs.as_mut(), pivot_rhs) {
                        b.flip(r);
                    }
                }
            }
            pivots.push((next, c));
            next += 1;
        }
        Self { mat, rhs, pivots }
    }

    fn solution(&mut self) -> Option<BitVec> {
        let rhs = self.rhs.as_ref()?;
        let rank = self.pivots.len();
        if (rank..self.mat.num_rows()).any(|r| rhs.get(r)) {
            return None;
        }
        let mut x = BitVec::zeros(self.mat.cols);
        for &(r, c) in &self.pivots {
            if rhs.get(r) {
                x.set(c, true);
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    /// Per-bit accumulation, independent of the word-level dot product.
    fn mat_vec_naive(m: &BitMatrix, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(m.num_rows());
        for i in 0..m.num_rows() {
            let mut acc = false;
            for j in 0..m.num_cols() {
                acc ^= m.get(i, j) && v.get(j);
            }
            out.set(i, acc);
        }
        out
    }

    #[test]
    fn mat_vec_examples() {
        assert_eq!(BitMatrix::identity(3).mat_vec(&bv("101")), bv("101"));
        assert!(BitMatrix::zeros(4, 3).mat_vec(&bv("111")).is_zero());
        let hx = BitMatrix::parse_rows(4, "1111").unwrap();
        assert_eq!(hx.mat_vec(&bv("1100")), bv("0"));
        assert_eq!(mat_vec_naive(&hx, &bv("1100")), bv("0"));
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn mat_vec_rejects_mismatch() {
        BitMatrix::identity(3).mat_vec(&bv("10"));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
        // vertex-edge incidence of a connected graph: |V| - 1
        let cycle = BitMatrix::parse_rows(4, "1001\n1100\n0110\n0011").unwrap();
        assert_eq!(cycle.rank(), 3);
    }

    #[test]
    fn solve_examples() {
        let b = bv("1101");
        assert_eq!(BitMatrix::identity(4).solve(&b), Some(b.clone()));
        let col = BitMatrix::parse_rows(1, "1\n1\n1\n1").unwrap();
        assert_eq!(col.solve(&bv("1111")), Some(bv("1")));
        assert_eq!(col.solve(&bv("1000")), None);
    }

    #[test]
    fn kernel_examples() {
        assert!(BitMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(BitMatrix::zeros(1, 3).kernel_basis().len(), 3);
        let hx = BitMatrix::parse_rows(4, "1111").unwrap();
        let k = hx.kernel_basis();
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|v| v.weight() % 2 == 0));
        // exhaustive: the span is exactly the even-weight subspace
        let mut span = std::collections::HashSet::new();
        for mask in 0u32..8 {
            let mut acc = BitVec::zeros(4);
            for (i, v) in k.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc.xor_assign(v);
                }
            }
            span.insert(acc);
        }
        let evens: std::collections::HashSet<_> = (0u64..16)
            .filter(|w| w.count_ones() % 2 == 0)
            .map(|w| BitVec::from_word(4, w))
            .collect();
        assert_eq!(span, evens);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(bv("1010").to_string(), "1010");
        assert_eq!("10x".parse::<BitVec>(), Err(ParseBitsError::BadChar('x')));
        assert!(matches!(
            BitMatrix::parse_rows(3, "101\n11"),
            Err(ParseBitsError::RaggedRow { row: 1, .. })
        ));
    }

    #[test]
    fn tail_bits_stay_clear() {
        let v = BitVec::ones(70);
        assert_eq!(v.weight(), 70);
        assert_eq!(v.as_words()[1], (1 << 6) - 1);
        let w = BitVec::from_word(3, 0xff);
        assert_eq!(w.weight(), 3);
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (0usize..12, 0usize..12).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| BitMatrix::from_rows(c, rows.iter().map(|r| BitVec::from_bools(r)).collect()),
            )
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_is_sound(m in arb_matrix(), seed in any::<u64>()) {
            let b = BitVec::from_bools(&(0..m.num_rows()).map(|i| (seed >> (i % 64)) & 1 == 1).collect::<Vec<_>>());
            if let Some(x) = m.solve(&b) {
                prop_assert_eq!(m.mat_vec(&x), b);
            }
            // anything in the column space must be found
            let x = BitVec::from_bools(&(0..m.num_cols()).map(|i| (seed >> ((i * 7) % 64)) & 1 == 1).collect::<Vec<_>>());
            let image = m.mat_vec(&x);
            prop_assert!(m.solve(&image).is_some());
        }

        #[test]
        fn kernel_is_independent_and_annihilated(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.len(), m.num_cols() - m.rank());
            for v in &k {
                prop_assert!(m.mat_vec(v).is_zero());
            }
            if !k.is_empty() {
                prop_assert_eq!(BitMatrix::from_rows(m.num_cols(), k.clone()).rank(), k.len());
            }
        }

        #[test]
        fn mat_vec_matches_naive(m in arb_matrix(), seed in any::<u64>()) {
            let v = BitVec::from_bools(&(0..m.num_cols()).map(|i| (seed >> i) & 1 == 1).collect::<Vec<_>>());
            prop_assert_eq!(m.mat_vec(&v), mat_vec_naive(&m, &v));
        }
    }
}
