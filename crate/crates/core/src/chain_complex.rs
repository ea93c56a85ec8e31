//! Chain complexes over GF(2) and their tensor product.
//!
//! Degree conventions used throughout the crate:
//!
//! | accessor          | meaning                                  |
//! |-------------------|------------------------------------------|
//! | `dim(i)`          | dimension of the degree-`i` space        |
//! | `boundary(i)`     | map from degree `i` to degree `i - 1`, `1 <= i <= top_degree()`; shape `dim(i-1) x dim(i)` |
//! | `top_degree()`    | highest degree `D`; degrees run `D, ..., 1, 0` |
//!
//! The boundary into degree `-1` and out of degree `D + 1` are implicit zeros.
//! Over GF(2) signs vanish, so the product boundary is `dB (x) I + I (x) dC`.

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("a chain complex needs at least one degree")]
    Empty,
    #[error("expected {expected} boundary maps, got {found}")]
    BoundaryCount { expected: usize, found: usize },
    #[error("boundary of degree {degree} is {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    BoundaryShape {
        degree: usize,
        rows: usize,
        cols: usize,
        exp_rows: usize,
        exp_cols: usize,
    },
    #[error("degree {degree} out of range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    /// `maps[k]` is the boundary from degree `k + 1` to degree `k`.
    maps: Vec<BitMatrix>,
}

impl ChainComplex {
    /// `dims[i]` is the dimension of degree `i`; `boundaries[k]` maps degree
    /// `k + 1` to degree `k`. Shapes are checked, `d∘d = 0` is not (see
    /// [`ChainComplex::verify`]).
    pub fn new(dims: Vec<usize>, boundaries: Vec<BitMatrix>) -> Result<Self, ComplexError> {
        if dims.is_empty() {
            return Err(ComplexError::Empty);
        }
        if boundaries.len() != dims.len() - 1 {
            return Err(ComplexError::BoundaryCount {
                expected: dims.len() - 1,
                found: boundaries.len(),
            });
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.num_rows() != dims[k] || b.num_cols() != dims[k + 1] {
                return Err(ComplexError::BoundaryShape {
                    degree: k + 1,
                    rows: b.num_rows(),
                    cols: b.num_cols(),
                    exp_rows: dims[k],
                    exp_cols: dims[k + 1],
                });
            }
        }
        Ok(Self {
            dims,
            maps: boundaries,
        })
    }

    /// Single-degree complex `Z2^n` at degree 0.
    pub fn point(n: usize) -> Self {
        Self {
            dims: vec![n],
            maps: vec![],
        }
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    /// Boundary from `degree` to `degree - 1`.
    ///
    /// # Panics
    ///
    /// Panics unless `1 <= degree <= top_degree()`.
    pub fn boundary(&self, degree: usize) -> &BitMatrix {
        assert!(
            degree >= 1 && degree <= self.top_degree(),
            "no boundary map out of degree {degree}"
        );
        &self.maps[degree - 1]
    }

    /// `true` iff every composition of consecutive boundaries vanishes.
    pub fn verify(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    fn rank_out_of(&self, degree: usize) -> usize {
        if degree == 0 || degree > self.top_degree() {
            0
        } else {
            self.boundary(degree).rank()
        }
    }

    /// `dim ker d_i - rank d_{i+1}`.
    pub fn homology_dim(&self, degree: usize) -> Result<usize, ComplexError> {
        let top = self.top_degree();
        if degree > top {
            return Err(ComplexError::DegreeOutOfRange { degree, top });
        }
        let cycles = self.dims[degree] - self.rank_out_of(degree);
        Ok(cycles - self.rank_out_of(degree + 1))
    }

    /// Degree-`i` cycles `ker d_i`.
    pub fn cycles(&self, degree: usize) -> Vec<BitVec> {
        if degree == 0 {
            (0..self.dims[0])
                .map(|i| BitVec::from_support(self.dims[0], [i]))
                .collect()
        } else {
            self.boundary(degree).kernel_basis()
        }
    }

    /// The cochain complex: same spaces, transposed maps. Degree `i` of the
    /// result is degree `top - i` of `self`, so it is again a chain complex.
    pub fn dual(&self) -> ChainComplex {
        let top = self.top_degree();
        let dims = (0..=top).map(|i| self.dims[top - i]).collect();
        let maps = (1..=top).map(|k| self.boundary(top + 1 - k).transpose()).collect();
        ChainComplex { dims, maps }
    }

    /// Offset of the block `B_j (x) C_{i-j}` inside degree `i` of `self (x) other`,
    /// or `None` when that block does not exist.
    pub fn product_block_offset(&self, other: &ChainComplex, degree: usize, j: usize) -> Option<usize> {
        let (lo, hi) = product_block_range(self, other, degree);
        if j < lo || j > hi {
            return None;
        }
        Some(
            (lo..j)
                .map(|jj| self.dim(jj) * other.dim(degree - jj))
                .sum(),
        )
    }
}

fn product_block_range(b: &ChainComplex, c: &ChainComplex, degree: usize) -> (usize, usize) {
    let lo = degree.saturating_sub(c.top_degree());
    let hi = degree.min(b.top_degree());
    (lo, hi)
}

/// Tensor product of two complexes.
///
/// Degree `i` of the product is the concatenation of the blocks
/// `B_j (x) C_{i-j}` in increasing `j`; inside a block the basis element
/// `b (x) c` sits at `b * dim C_{i-j} + c`.
pub fn tensor_product(b: &ChainComplex, c: &ChainComplex) -> ChainComplex {
    let top = b.top_degree() + c.top_degree();
    let dims: Vec<usize> = (0..=top)
        .map(|i| {
            let (lo, hi) = product_block_range(b, c, i);
            (lo..=hi).map(|j| b.dim(j) * c.dim(i - j)).sum()
        })
        .collect();
    let mut maps = Vec::with_capacity(top);
    for i in 1..=top {
        let mut m = BitMatrix::zeros(dims[i - 1], dims[i]);
        let (lo, hi) = product_block_range(b, c, i);
        for j in lo..=hi {
            let src = b.product_block_offset(c, i, j).expect("block in range");
            let cdim = c.dim(i - j);
            // dB (x) I : B_j (x) C_{i-j} -> B_{j-1} (x) C_{i-j}
            if j >= 1 {
                if let Some(dst) = b.product_block_offset(c, i - 1, j - 1) {
                    let db = b.boundary(j);
                    for bi in 0..b.dim(j) {
                        for bo in (0..db.num_rows()).filter(|&r| db.get(r, bi)) {
                            for ci in 0..cdim {
                                m.flip(dst + bo * cdim + ci, src + bi * cdim + ci);
                            }
                        }
                    }
                }
            }
            // I (x) dC : B_j (x) C_{i-j} -> B_j (x) C_{i-j-1}
            if i - j >= 1 {
                if let Some(dst) = b.product_block_offset(c, i - 1, j) {
                    let dc = c.boundary(i - j);
                    let cdim_out = c.dim(i - j - 1);
                    for bi in 0..b.dim(j) {
                        for ci in 0..cdim {
                            for co in (0..dc.num_rows()).filter(|&r| dc.get(r, ci)) {
                                m.flip(dst + bi * cdim_out + co, src + bi * cdim + ci);
                            }
                        }
                    }
                }
            }
        }
        maps.push(m);
    }
    ChainComplex { dims, maps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_two_two() -> ChainComplex {
        let hx = BitMatrix::parse_rows(4, "1111").unwrap();
        let hz_t = BitMatrix::parse_rows(1, "1\n1\n1\n1").unwrap();
        ChainComplex::new(vec![1, 4, 1], vec![hx, hz_t]).unwrap()
    }

    /// Cycle graph on `n` vertices as a 1-dimensional complex.
    fn cycle_graph(n: usize) -> ChainComplex {
        let mut d = BitMatrix::zeros(n, n);
        for e in 0..n {
            d.set(e, e, true);
            d.set((e + 1) % n, e, true);
        }
        ChainComplex::new(vec![n, n], vec![d]).unwrap()
    }

    #[test]
    fn verify_examples() {
        assert!(ChainComplex::point(3).verify());
        assert!(four_two_two().verify());
        let id = BitMatrix::identity(2);
        let bad = ChainComplex::new(vec![2, 2, 2], vec![id.clone(), id]).unwrap();
        assert!(!bad.verify());
    }

    #[test]
    fn shape_errors() {
        assert_eq!(ChainComplex::new(vec![], vec![]), Err(ComplexError::Empty));
        assert!(matches!(
            ChainComplex::new(vec![2, 3], vec![BitMatrix::zeros(3, 2)]),
            Err(ComplexError::BoundaryShape { degree: 1, .. })
        ));
        assert!(matches!(
            ChainComplex::new(vec![2, 3], vec![]),
            Err(ComplexError::BoundaryCount { .. })
        ));
    }

    #[test]
    fn homology_of_four_two_two() {
        let c = four_two_two();
        assert_eq!(c.homology_dim(0), Ok(0));
        assert_eq!(c.homology_dim(1), Ok(2));
        assert_eq!(c.homology_dim(2), Ok(0));
        assert_eq!(
            c.homology_dim(3),
            Err(ComplexError::DegreeOutOfRange { degree: 3, top: 2 })
        );
    }

    #[test]
    fn point_is_a_unit() {
        let c = four_two_two();
        let p = tensor_product(&ChainComplex::point(1), &c);
        assert_eq!(p, c);
        let q = tensor_product(&c, &ChainComplex::point(1));
        assert_eq!(q, c);
    }

    #[test]
    fn kunneth_on_small_complexes() {
        let samples = [four_two_two(), cycle_graph(3), cycle_graph(4), ChainComplex::point(2)];
        for b in &samples {
            for c in &samples {
                let p = tensor_product(b, c);
                assert!(p.verify());
                for deg in 0..=p.top_degree() {
                    let expected: usize = (0..=deg)
                        .filter(|&j| j <= b.top_degree() && deg - j <= c.top_degree())
                        .map(|j| b.homology_dim(j).unwrap() * c.homology_dim(deg - j).unwrap())
                        .sum();
                    assert_eq!(p.homology_dim(deg).unwrap(), expected, "degree {deg}");
                }
            }
        }
    }

    #[test]
    fn dual_complex_verifies() {
        let c = tensor_product(&cycle_graph(3), &four_two_two());
        let d = c.dual();
        assert!(d.verify());
        assert_eq!(d.dims().iter().rev().copied().collect::<Vec<_>>(), c.dims());
        // cohomology and homology have equal dimensions over a field
        for i in 0..=c.top_degree() {
            assert_eq!(
                d.homology_dim(c.top_degree() - i).unwrap(),
                c.homology_dim(i).unwrap()
            );
        }
    }

    #[test]
    fn block_offsets() {
        let b = cycle_graph(3);
        let c = four_two_two();
        // degree 2: B0 (x) C2 | B1 (x) C1
        assert_eq!(b.product_block_offset(&c, 2, 0), Some(0));
        assert_eq!(b.product_block_offset(&c, 2, 1), Some(3));
        assert_eq!(b.product_block_offset(&c, 2, 2), None);
        assert_eq!(b.product_block_offset(&c, 0, 0), Some(0));
    }
}
