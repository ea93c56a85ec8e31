//! The augmented surface code: torus complex (x) fixed code, with the torus
//! cells of degree 0, 1, 2 and the qubits placed on degree 2 of the product.
//!
//! Layout (pinned; everything else depends on it):
//!
//! * qubits: all vertex qubits `(v, c)`, `c < n_Z`, then edge qubits
//!   `(e, a)`, `a < n_C`, then face qubits `(f, b)`, `b < n_X`; the cell index
//!   is major and the fixed-code index minor inside each block;
//! * X checks: vertex checks `(v, a)`, `a < n_C`, then edge checks `(e, b)`,
//!   `b < n_X`.
//!
//! This is exactly the basis order of [`tensor_product`] at degrees 2 and 1.

use thiserror::Error;

use crate::chain_complex::{tensor_product, ChainComplex};
use crate::fixed_code::CssCode;
use crate::gf2::BitVec;
use crate::toric::{Cellulation, Direction};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AugmentedError {
    #[error("residual has a nonzero syndrome; only cycles can be judged")]
    NonZeroSyndrome,
    #[error("vector has length {found}, expected {expected}")]
    Length { found: usize, expected: usize },
}

/// A Z error in standard form: one packed fixed-code vector per torus cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ErrorStdForm {
    /// `x(v)` in `C_2` (`n_Z` bits).
    pub vertex: Vec<u64>,
    /// `x(e)` in `C_1` (`n_C` bits).
    pub edge: Vec<u64>,
    /// `x(f)` in `C_0` (`n_X` bits).
    pub face: Vec<u64>,
}

impl ErrorStdForm {
    pub fn xor_assign(&mut self, other: &ErrorStdForm) {
        for (a, b) in [
            (&mut self.vertex, &other.vertex),
            (&mut self.edge, &other.edge),
            (&mut self.face, &other.face),
        ] {
            for (x, y) in a.iter_mut().zip(b) {
                *x ^= y;
            }
        }
    }

    pub fn xor(&self, other: &ErrorStdForm) -> ErrorStdForm {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn weight(&self) -> usize {
        self.vertex
            .iter()
            .chain(&self.edge)
            .chain(&self.face)
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.vertex.iter().chain(&self.edge).chain(&self.face).all(|&w| w == 0)
    }
}

/// A syndrome in standard form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SyndromeStdForm {
    /// `s(v)` in `C_1` (`n_C` bits).
    pub vertex: Vec<u64>,
    /// `s(e)` in `C_0` (`n_X` bits).
    pub edge: Vec<u64>,
}

impl SyndromeStdForm {
    pub fn is_zero(&self) -> bool {
        self.vertex.iter().chain(&self.edge).all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &SyndromeStdForm) {
        for (x, y) in self.vertex.iter_mut().zip(&other.vertex) {
            *x ^= y;
        }
        for (x, y) in self.edge.iter_mut().zip(&other.edge) {
            *x ^= y;
        }
    }
}

/// Where a qubit sits in the layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QubitSite {
    Vertex { v: usize, c: usize },
    Edge { e: usize, a: usize },
    Face { f: usize, b: usize },
}

#[derive(Clone, Debug)]
pub struct AugmentedCode {
    cell: Cellulation,
    fixed: CssCode,
}

impl AugmentedCode {
    pub fn new(cell: Cellulation, fixed: CssCode) -> Self {
        Self { cell, fixed }
    }

    pub fn cellulation(&self) -> &Cellulation {
        &self.cell
    }

    pub fn fixed(&self) -> &CssCode {
        &self.fixed
    }

    /// `|F| n_X + |E| n_C + |V| n_Z`.
    pub fn n(&self) -> usize {
        self.cell.num_faces() * self.fixed.n_x()
            + self.cell.num_edges() * self.fixed.n()
            + self.cell.num_vertices() * self.fixed.n_z()
    }

    /// `k_B k_C` with `k_B = 2` on the torus.
    pub fn k(&self) -> usize {
        2 * self.fixed.k()
    }

    /// `d_B d_C`; tight for the torus, verified by enumeration on small sizes.
    pub fn d(&self) -> usize {
        self.cell.side() * self.fixed.distance()
    }

    pub fn num_x_checks(&self) -> usize {
        self.cell.num_vertices() * self.fixed.n() + self.cell.num_edges() * self.fixed.n_x()
    }

    fn edge_offset(&self) -> usize {
        self.cell.num_vertices() * self.fixed.n_z()
    }

    fn face_offset(&self) -> usize {
        self.edge_offset() + self.cell.num_edges() * self.fixed.n()
    }

    pub fn vertex_qubit(&self, v: usize, c: usize) -> usize {
        debug_assert!(c < self.fixed.n_z());
        v * self.fixed.n_z() + c
    }

    pub fn edge_qubit(&self, e: usize, a: usize) -> usize {
        debug_assert!(a < self.fixed.n());
        self.edge_offset() + e * self.fixed.n() + a
    }

    pub fn face_qubit(&self, f: usize, b: usize) -> usize {
        debug_assert!(b < self.fixed.n_x());
        self.face_offset() + f * self.fixed.n_x() + b
    }

    pub fn qubit_site(&self, q: usize) -> QubitSite {
        assert!(q < self.n(), "qubit {q} out of range");
        let (nz, nc, nx) = (self.fixed.n_z(), self.fixed.n(), self.fixed.n_x());
        if q < self.edge_offset() {
            QubitSite::Vertex { v: q / nz, c: q % nz }
        } else if q < self.face_offset() {
            let r = q - self.edge_offset();
            QubitSite::Edge { e: r / nc, a: r % nc }
        } else {
            let r = q - self.face_offset();
            QubitSite::Face { f: r / nx, b: r % nx }
        }
    }

    pub fn vertex_check(&self, v: usize, a: usize) -> usize {
        v * self.fixed.n() + a
    }

    pub fn edge_check(&self, e: usize, b: usize) -> usize {
        self.cell.num_vertices() * self.fixed.n() + e * self.fixed.n_x() + b
    }

    pub fn zero_error(&self) -> ErrorStdForm {
        ErrorStdForm {
            vertex: vec![0; self.cell.num_vertices()],
            edge: vec![0; self.cell.num_edges()],
            face: vec![0; self.cell.num_faces()],
        }
    }

    pub fn zero_syndrome(&self) -> SyndromeStdForm {
        SyndromeStdForm {
            vertex: vec![0; self.cell.num_vertices()],
            edge: vec![0; self.cell.num_edges()],
        }
    }

    /// Flips one qubit of a standard-form error.
    pub fn flip_qubit(&self, err: &mut ErrorStdForm, q: usize) {
        match self.qubit_site(q) {
            QubitSite::Vertex { v, c } => err.vertex[v] ^= 1 << c,
            QubitSite::Edge { e, a } => err.edge[e] ^= 1 << a,
            QubitSite::Face { f, b } => err.face[f] ^= 1 << b,
        }
    }

    pub fn error_from_qubits(&self, qubits: impl IntoIterator<Item = usize>) -> ErrorStdForm {
        let mut err = self.zero_error();
        for q in qubits {
            self.flip_qubit(&mut err, q);
        }
        err
    }

    pub fn error_to_bits(&self, err: &ErrorStdForm) -> BitVec {
        let mut out = BitVec::zeros(self.n());
        for (v, &w) in err.vertex.iter().enumerate() {
            for c in ones(w) {
                out.set(self.vertex_qubit(v, c), true);
            }
        }
        for (e, &w) in err.edge.iter().enumerate() {
            for a in ones(w) {
                out.set(self.edge_qubit(e, a), true);
            }
        }
        for (f, &w) in err.face.iter().enumerate() {
            for b in ones(w) {
                out.set(self.face_qubit(f, b), true);
            }
        }
        out
    }

    pub fn error_from_bits(&self, bits: &BitVec) -> Result<ErrorStdForm, AugmentedError> {
        if bits.len() != self.n() {
            return Err(AugmentedError::Length {
                found: bits.len(),
                expected: self.n(),
            });
        }
        Ok(self.error_from_qubits(bits.iter_ones()))
    }

    pub fn syndrome_to_bits(&self, s: &SyndromeStdForm) -> BitVec {
        let mut out = BitVec::zeros(self.num_x_checks());
        for (v, &w) in s.vertex.iter().enumerate() {
            for a in ones(w) {
                out.set(self.vertex_check(v, a), true);
            }
        }
        for (e, &w) in s.edge.iter().enumerate() {
            for b in ones(w) {
                out.set(self.edge_check(e, b), true);
            }
        }
        out
    }

    pub fn syndrome_from_bits(&self, bits: &BitVec) -> Result<SyndromeStdForm, AugmentedError> {
        if bits.len() != self.num_x_checks() {
            return Err(AugmentedError::Length {
                found: bits.len(),
                expected: self.num_x_checks(),
            });
        }
        let mut s = self.zero_syndrome();
        let (nc, nx) = (self.fixed.n(), self.fixed.n_x());
        let split = self.cell.num_vertices() * nc;
        for i in bits.iter_ones() {
            if i < split {
                s.vertex[i / nc] ^= 1 << (i % nc);
            } else {
                let r = i - split;
                s.edge[r / nx] ^= 1 << (r % nx);
            }
        }
        Ok(s)
    }

    /// Boundary of an error in the product complex:
    /// `s(v) = H_Z^T x(v) + sum_{e ∋ v} x(e)` and
    /// `s(e) = H_X x(e) + sum_{f ∋ e} x(f)`.
    pub fn syndrome(&self, err: &ErrorStdForm) -> SyndromeStdForm {
        let mut s = self.zero_syndrome();
        for (v, &x) in err.vertex.iter().enumerate() {
            if x != 0 {
                s.vertex[v] ^= self.fixed.hz_t_image(x);
            }
        }
        for (e, &x) in err.edge.iter().enumerate() {
            if x != 0 {
                let [a, b] = self.cell.edge_endpoints(e);
                s.vertex[a] ^= x;
                s.vertex[b] ^= x;
                s.edge[e] ^= self.fixed.hx_syndrome(x);
            }
        }
        for (f, &x) in err.face.iter().enumerate() {
            if x != 0 {
                for e in self.cell.face_boundary(f) {
                    s.edge[e] ^= x;
                }
            }
        }
        s
    }

    /// The full product complex. Dense, so meant for small sizes.
    pub fn product_complex(&self) -> ChainComplex {
        tensor_product(&self.cell.complex(), &self.fixed.complex())
    }

    /// X stabilizer generators (rows of the degree-2 boundary): `n_C` per
    /// vertex, then `n_X` per edge.
    pub fn x_stabilizers(&self) -> Vec<BitVec> {
        let (nc, nx, nz) = (self.fixed.n(), self.fixed.n_x(), self.fixed.n_z());
        let mut out = Vec::with_capacity(self.num_x_checks());
        for v in 0..self.cell.num_vertices() {
            for a in 0..nc {
                let mut q: Vec<usize> = (0..nz)
                    .filter(|&c| self.fixed.hz_words()[c] >> a & 1 == 1)
                    .map(|c| self.vertex_qubit(v, c))
                    .collect();
                q.extend(self.cell.incident_edges(v).iter().map(|&e| self.edge_qubit(e, a)));
                out.push(BitVec::from_support(self.n(), q));
            }
        }
        for e in 0..self.cell.num_edges() {
            for b in 0..nx {
                let row = self.fixed.hx_words()[b];
                let mut q: Vec<usize> = ones(row).map(|a| self.edge_qubit(e, a)).collect();
                q.extend(self.cell.edge_cofaces(e).iter().map(|&f| self.face_qubit(f, b)));
                out.push(BitVec::from_support(self.n(), q));
            }
        }
        out
    }

    /// Z stabilizer generators (columns of the degree-3 boundary): `n_Z` per
    /// edge, then `n_C` per face.
    pub fn z_stabilizers(&self) -> Vec<BitVec> {
        let (nc, nx, nz) = (self.fixed.n(), self.fixed.n_x(), self.fixed.n_z());
        let mut out = Vec::new();
        for e in 0..self.cell.num_edges() {
            for c in 0..nz {
                let mut q: Vec<usize> = self
                    .cell
                    .edge_endpoints(e)
                    .iter()
                    .map(|&v| self.vertex_qubit(v, c))
                    .collect();
                q.extend(ones(self.fixed.hz_words()[c]).map(|a| self.edge_qubit(e, a)));
                out.push(BitVec::from_support(self.n(), q));
            }
        }
        for f in 0..self.cell.num_faces() {
            for a in 0..nc {
                let mut q: Vec<usize> = self
                    .cell
                    .face_boundary(f)
                    .iter()
                    .map(|&e| self.edge_qubit(e, a))
                    .collect();
                q.extend(
                    (0..nx)
                        .filter(|&b| self.fixed.hx_words()[b] >> a & 1 == 1)
                        .map(|b| self.face_qubit(f, b)),
                );
                out.push(BitVec::from_support(self.n(), q));
            }
        }
        out
    }

    fn edge_product(&self, edges: &BitVec, word: u64) -> BitVec {
        let mut out = BitVec::zeros(self.n());
        for e in edges.iter_ones() {
            for a in ones(word) {
                out.set(self.edge_qubit(e, a), true);
            }
        }
        out
    }

    /// `b (x) x_j` for each torus cohomology rep `b` (major) and fixed-code X
    /// logical `x_j` (minor).
    pub fn logical_x_reps(&self) -> Vec<BitVec> {
        let mut out = Vec::with_capacity(self.k());
        for dir in Direction::BOTH {
            let b = self.cell.cohomology_rep(dir);
            for &x in self.fixed.x_logical_words() {
                out.push(self.edge_product(&b, x));
            }
        }
        out
    }

    /// `l (x) z_j`, ordered like [`AugmentedCode::logical_x_reps`].
    pub fn logical_z_reps(&self) -> Vec<BitVec> {
        let mut out = Vec::with_capacity(self.k());
        for dir in Direction::BOTH {
            let l = self.cell.homology_rep(dir);
            for &z in self.fixed.z_logical_words() {
                out.push(self.edge_product(&l, z));
            }
        }
        out
    }

    /// Bit `i` is the pairing of a cycle with the `i`-th X logical rep.
    pub fn logical_pairings(&self, residual: &ErrorStdForm) -> u64 {
        let mut out = 0u64;
        let m = self.cell.side();
        let kc = self.fixed.k();
        for (d, dir) in Direction::BOTH.into_iter().enumerate() {
            let mut acc = 0u64;
            for k in 0..m {
                let e = match dir {
                    Direction::Horizontal => self.cell.horizontal_edge(k, 0),
                    Direction::Vertical => self.cell.vertical_edge(0, k),
                };
                acc ^= residual.edge[e];
            }
            out |= self.fixed.x_pairings(acc) << (d * kc);
        }
        out
    }

    /// Whether a zero-syndrome residual is a nontrivial logical.
    pub fn is_logical_failure(&self, residual: &ErrorStdForm) -> Result<bool, AugmentedError> {
        if !self.syndrome(residual).is_zero() {
            return Err(AugmentedError::NonZeroSyndrome);
        }
        Ok(self.logical_pairings(residual) != 0)
    }
}

pub(crate) fn ones(w: u64) -> impl Iterator<Item = usize> {
    let mut w = w;
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(t)
        }
    })
}
