//! Square-lattice cellulation of the torus.
//!
//! Index layout for side `m`:
//!
//! * vertex `(r, c)` has id `r * m + c`;
//! * the horizontal edge leaving vertex `v` towards `(r, c + 1)` has id `v`;
//! * the vertical edge leaving vertex `v` towards `(r + 1, c)` has id `m^2 + v`;
//! * the face whose lower-left corner is `v` has id `v`; its boundary is
//!   `h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)`.
//!
//! All coordinates are taken mod `m`.

use thiserror::Error;

use crate::chain_complex::ChainComplex;
use crate::gf2::{BitMatrix, BitVec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorusError {
    #[error("torus side must be at least 2, got {0}")]
    TooSmall(usize),
}

/// Which of the two independent (co)homology classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Cycles running along rows (horizontal edges); the dual cut is a column of horizontal edges.
    Horizontal,
    /// Cycles running along columns (vertical edges).
    Vertical,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Horizontal, Direction::Vertical];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cellulation {
    m: usize,
    edge_ends: Vec<[usize; 2]>,
    face_edges: Vec<[usize; 4]>,
    /// Incident edges per vertex: right, up, left, down.
    vertex_edges: Vec<[usize; 4]>,
    /// Faces containing each edge.
    edge_faces: Vec<[usize; 2]>,
}

impl Cellulation {
    pub fn torus(m: usize) -> Result<Self, TorusError> {
        if m < 2 {
            return Err(TorusError::TooSmall(m));
        }
        let nv = m * m;
        let vid = |r: usize, c: usize| (r % m) * m + (c % m);
        let mut edge_ends = vec![[0; 2]; 2 * nv];
        let mut vertex_edges = vec![[0; 4]; nv];
        let mut face_edges = vec![[0; 4]; nv];
        let mut edge_faces = vec![[0; 2]; 2 * nv];
        for r in 0..m {
            for c in 0..m {
                let v = vid(r, c);
                edge_ends[v] = [v, vid(r, c + 1)];
                edge_ends[nv + v] = [v, vid(r + 1, c)];
                vertex_edges[v] = [v, nv + v, vid(r, c + m - 1), nv + vid(r + m - 1, c)];
                face_edges[v] = [v, vid(r + 1, c), nv + v, nv + vid(r, c + 1)];
                edge_faces[v] = [v, vid(r + m - 1, c)];
                edge_faces[nv + v] = [v, vid(r, c + m - 1)];
            }
        }
        Ok(Self {
            m,
            edge_ends,
            face_edges,
            vertex_edges,
            edge_faces,
        })
    }

    #[inline]
    pub fn side(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.m * self.m
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        2 * self.m * self.m
    }

    #[inline]
    pub fn num_faces(&self) -> usize {
        self.m * self.m
    }

    pub fn vertex_id(&self, row: usize, col: usize) -> usize {
        (row % self.m) * self.m + col % self.m
    }

    pub fn horizontal_edge(&self, row: usize, col: usize) -> usize {
        self.vertex_id(row, col)
    }

    pub fn vertical_edge(&self, row: usize, col: usize) -> usize {
        self.num_vertices() + self.vertex_id(row, col)
    }

    #[inline]
    pub fn edge_endpoints(&self, e: usize) -> [usize; 2] {
        self.edge_ends[e]
    }

    #[inline]
    pub fn face_boundary(&self, f: usize) -> [usize; 4] {
        self.face_edges[f]
    }

    /// Edges incident to `v` in the order right, up, left, down.
    #[inline]
    pub fn incident_edges(&self, v: usize) -> [usize; 4] {
        self.vertex_edges[v]
    }

    /// The two faces having `e` in their boundary.
    #[inline]
    pub fn edge_cofaces(&self, e: usize) -> [usize; 2] {
        self.edge_faces[e]
    }

    #[inline]
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edge_ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Edge-to-vertex incidence (`|V| x |E|`).
    pub fn boundary_1(&self) -> BitMatrix {
        let mut d = BitMatrix::zeros(self.num_vertices(), self.num_edges());
        for (e, ends) in self.edge_ends.iter().enumerate() {
            for &v in ends {
                d.flip(v, e);
            }
        }
        d
    }

    /// Face-to-edge incidence (`|E| x |F|`).
    pub fn boundary_2(&self) -> BitMatrix {
        let mut d = BitMatrix::zeros(self.num_edges(), self.num_faces());
        for (f, edges) in self.face_edges.iter().enumerate() {
            for &e in edges {
                d.flip(e, f);
            }
        }
        d
    }

    /// `B_2 = Z2^F -> B_1 = Z2^E -> B_0 = Z2^V`.
    pub fn complex(&self) -> ChainComplex {
        ChainComplex::new(
            vec![self.num_vertices(), self.num_edges(), self.num_faces()],
            vec![self.boundary_1(), self.boundary_2()],
        )
        .expect("torus incidence shapes are consistent")
    }

    /// Non-contractible cycle: row 0 of horizontal edges, or column 0 of vertical edges.
    pub fn homology_rep(&self, dir: Direction) -> BitVec {
        let support: Vec<usize> = match dir {
            Direction::Horizontal => (0..self.m).map(|c| self.horizontal_edge(0, c)).collect(),
            Direction::Vertical => (0..self.m).map(|r| self.vertical_edge(r, 0)).collect(),
        };
        BitVec::from_support(self.num_edges(), support)
    }

    pub fn homology_reps(&self) -> [BitVec; 2] {
        Direction::BOTH.map(|d| self.homology_rep(d))
    }

    /// Cocycle pairing to one with `homology_rep(dir)` and zero with the other.
    pub fn cohomology_rep(&self, dir: Direction) -> BitVec {
        self.disjoint_cocycle_reps(dir).swap_remove(0)
    }

    pub fn cohomology_reps(&self) -> [BitVec; 2] {
        Direction::BOTH.map(|d| self.cohomology_rep(d))
    }

    /// `m` pairwise disjoint representatives of one cohomology class: the
    /// parallel straight cuts. For `Horizontal` these are the columns of
    /// horizontal edges `{h(r, c) : r}`, one per `c`.
    pub fn disjoint_cocycle_reps(&self, dir: Direction) -> Vec<BitVec> {
        (0..self.m)
            .map(|k| {
                let support: Vec<usize> = match dir {
                    Direction::Horizontal => (0..self.m).map(|r| self.horizontal_edge(r, k)).collect(),
                    Direction::Vertical => (0..self.m).map(|c| self.vertical_edge(k, c)).collect(),
                };
                BitVec::from_support(self.num_edges(), support)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let t = Cellulation::torus(3).unwrap();
        assert_eq!((t.num_vertices(), t.num_edges(), t.num_faces()), (9, 18, 9));
        assert_eq!(Cellulation::torus(1), Err(TorusError::TooSmall(1)));
        assert_eq!(Cellulation::torus(0), Err(TorusError::TooSmall(0)));
    }

    #[test]
    fn m2_face_boundaries_have_weight_4() {
        let t = Cellulation::torus(2).unwrap();
        let d2 = t.boundary_2();
        for f in 0..4 {
            assert_eq!(d2.column(f).weight(), 4);
        }
        assert_eq!(t.boundary_1().rank(), 3);
    }

    #[test]
    fn complexes_verify_and_have_two_cycles() {
        for m in 2..=8 {
            let c = Cellulation::torus(m).unwrap().complex();
            assert!(c.verify(), "m = {m}");
            if m <= 6 {
                assert_eq!(c.homology_dim(1), Ok(2), "m = {m}");
            }
        }
    }

    #[test]
    fn index_layout_round_trip() {
        let t = Cellulation::torus(4).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let v = t.vertex_id(r, c);
                assert_eq!(v, r * 4 + c);
                assert_eq!(t.edge_endpoints(t.horizontal_edge(r, c)), [v, t.vertex_id(r, c + 1)]);
                assert_eq!(t.edge_endpoints(t.vertical_edge(r, c)), [v, t.vertex_id(r + 1, c)]);
                for e in t.incident_edges(v) {
                    assert!(t.edge_endpoints(e).contains(&v));
                }
            }
        }
        for e in 0..t.num_edges() {
            for f in t.edge_cofaces(e) {
                assert!(t.face_boundary(f).contains(&e));
            }
        }
    }

    #[test]
    fn cohomology_pairing() {
        for m in 2..=5 {
            let t = Cellulation::torus(m).unwrap();
            let d2 = t.boundary_2();
            let d1 = t.boundary_1();
            let hom = t.homology_reps();
            let coh = t.cohomology_reps();
            for (i, x) in coh.iter().enumerate() {
                assert_eq!(x.weight(), m);
                // cocycle: even overlap with every face boundary
                assert!(d2.transpose().mat_vec(x).is_zero());
                for (j, z) in hom.iter().enumerate() {
                    assert_eq!(x.dot(z), i == j);
                }
            }
            for z in &hom {
                assert!(d1.mat_vec(z).is_zero());
            }
        }
    }

    #[test]
    fn disjoint_reps() {
        let t = Cellulation::torus(3).unwrap();
        let d1t = t.boundary_1().transpose();
        for dir in Direction::BOTH {
            let reps = t.disjoint_cocycle_reps(dir);
            assert_eq!(reps.len(), 3);
            let mut union = BitVec::zeros(t.num_edges());
            for (i, a) in reps.iter().enumerate() {
                assert_eq!(a.weight(), 3);
                for b in &reps[i + 1..] {
                    assert!(!a.as_words().iter().zip(b.as_words()).any(|(x, y)| x & y != 0));
                }
                union.xor_assign(a);
            }
            assert_eq!(union.weight(), 9);
            // consecutive reps differ by a vertex coboundary
            for w in reps.windows(2) {
                assert!(d1t.solve(&w[0].xor(&w[1])).is_some());
            }
            // any homology rep with nonzero pairing meets each rep oddly
            let z = t.homology_rep(dir);
            for a in &reps {
                assert!(a.dot(&z));
            }
        }
    }
}
