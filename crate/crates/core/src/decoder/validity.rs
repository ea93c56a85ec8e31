//! Cluster validity: when is a syndrome on a cluster the boundary of an error
//! supported on that cluster?
//!
//! A cluster `M` is a subgraph of the torus (vertices plus edges whose
//! endpoints are in it), taken with the whole fixed code in the product. For a
//! redundancy-free fixed code `H_0(C) = 0`, so the first homology of the
//! restricted product is `H_0(M) (x) H_1(C)`. A syndrome `s` on `M` is then a
//! boundary iff `ds = 0` at every cluster vertex and, on every connected
//! component of `M`, the summed pairings `(s(v)|x_j)` vanish.

use thiserror::Error;

use crate::augmented::{AugmentedCode, SyndromeStdForm};
use crate::toric::Cellulation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("edge {edge} is in the cluster but endpoint {vertex} is not")]
    NotClosed { edge: usize, vertex: usize },
    #[error("cluster masks have length {vertices}/{edges}, torus has {expected_vertices}/{expected_edges}")]
    Length {
        vertices: usize,
        edges: usize,
        expected_vertices: usize,
        expected_edges: usize,
    },
}

/// A set of torus vertices and edges, closed under taking endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    vertices: Vec<bool>,
    edges: Vec<bool>,
}

impl Cluster {
    pub fn new(cell: &Cellulation, vertices: Vec<bool>, edges: Vec<bool>) -> Result<Self, ClusterError> {
        if vertices.len() != cell.num_vertices() || edges.len() != cell.num_edges() {
            return Err(ClusterError::Length {
                vertices: vertices.len(),
                edges: edges.len(),
                expected_vertices: cell.num_vertices(),
                expected_edges: cell.num_edges(),
            });
        }
        for (e, _) in edges.iter().enumerate().filter(|(_, &b)| b) {
            for v in cell.edge_endpoints(e) {
                if !vertices[v] {
                    return Err(ClusterError::NotClosed { edge: e, vertex: v });
                }
            }
        }
        Ok(Self { vertices, edges })
    }

    /// The subgraph spanned by `edges` (their endpoints are added).
    pub fn from_edges(cell: &Cellulation, edges: impl IntoIterator<Item = usize>) -> Self {
        let mut c = Self::empty(cell);
        for e in edges {
            c.edges[e] = true;
            for v in cell.edge_endpoints(e) {
                c.vertices[v] = true;
            }
        }
        c
    }

    pub fn empty(cell: &Cellulation) -> Self {
        Self {
            vertices: vec![false; cell.num_vertices()],
            edges: vec![false; cell.num_edges()],
        }
    }

    pub fn singleton(cell: &Cellulation, v: usize) -> Self {
        let mut c = Self::empty(cell);
        c.vertices[v] = true;
        c
    }

    pub fn whole(cell: &Cellulation) -> Self {
        Self {
            vertices: vec![true; cell.num_vertices()],
            edges: vec![true; cell.num_edges()],
        }
    }

    #[inline]
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices[v]
    }

    #[inline]
    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges[e]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v)
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e)
    }

    /// Component label per vertex (`usize::MAX` outside the cluster), and the
    /// number of components. Labels follow the smallest vertex of each component.
    pub fn components(&self, cell: &Cellulation) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.vertices.len()];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in self.vertices() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for e in cell.incident_edges(u) {
                    if !self.edges[e] {
                        continue;
                    }
                    let w = cell.other_end(e, u);
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self, cell: &Cellulation) -> bool {
        self.components(cell).1 <= 1
    }
}

/// The cluster-summed pairings `sum_v ((s(v)|x_1), ..., (s(v)|x_k))`, bit `j`
/// for logical `j`.
pub fn validity_vector(code: &AugmentedCode, cluster: &Cluster, s: &SyndromeStdForm) -> u64 {
    let fixed = code.fixed();
    cluster
        .vertices()
        .fold(0, |acc, v| acc ^ fixed.x_pairings(s.vertex[v]))
}

/// Whether `s` restricted to `cluster` is the boundary of an error supported
/// on the cluster (any faces are irrelevant: face qubits only reach edges).
pub fn general_cluster_validity(code: &AugmentedCode, cluster: &Cluster, s: &SyndromeStdForm) -> bool {
    let cell = code.cellulation();
    let fixed = code.fixed();
    for u in cluster.vertices() {
        let mut d = fixed.hx_syndrome(s.vertex[u]);
        for e in cell.incident_edges(u) {
            if cluster.contains_edge(e) {
                d ^= s.edge[e];
            }
        }
        if d != 0 {
            return false;
        }
    }
    let (label, count) = cluster.components(cell);
    let mut val = vec![0u64; count];
    for v in cluster.vertices() {
        val[label[v]] ^= fixed.x_pairings(s.vertex[v]);
    }
    val.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_code::CssCode;

    fn code() -> AugmentedCode {
        AugmentedCode::new(Cellulation::torus(4).unwrap(), CssCode::four_two_two())
    }

    #[test]
    fn closure_is_enforced() {
        let cell = Cellulation::torus(3).unwrap();
        let mut edges = vec![false; cell.num_edges()];
        edges[0] = true;
        let err = Cluster::new(&cell, vec![false; 9], edges).unwrap_err();
        assert!(matches!(err, ClusterError::NotClosed { edge: 0, .. }));
    }

    #[test]
    fn empty_syndrome_is_valid() {
        let c = code();
        let cell = c.cellulation();
        let s = c.zero_syndrome();
        for cl in [Cluster::empty(cell), Cluster::singleton(cell, 5), Cluster::whole(cell)] {
            assert!(general_cluster_validity(&c, &cl, &s));
        }
    }

    #[test]
    fn odd_pairing_on_a_single_vertex_is_invalid() {
        let c = code();
        let cl = Cluster::singleton(c.cellulation(), 3);
        let mut s = c.zero_syndrome();
        s.vertex[3] = c.fixed().z_logical_words()[0];
        assert_ne!(validity_vector(&c, &cl, &s), 0);
        assert!(!general_cluster_validity(&c, &cl, &s));
        // 1111 pairs evenly with both logicals
        s.vertex[3] = 0b1111;
        assert_eq!(validity_vector(&c, &cl, &s), 0);
        assert!(general_cluster_validity(&c, &cl, &s));
    }

    #[test]
    fn components_are_checked_separately() {
        let c = code();
        let cell = c.cellulation();
        let a = cell.vertex_id(0, 0);
        let b = cell.vertex_id(2, 2);
        let z = c.fixed().z_logical_words()[0];
        let mut s = c.zero_syndrome();
        s.vertex[a] = z;
        s.vertex[b] = z;
        let mut vertices = vec![false; cell.num_vertices()];
        vertices[a] = true;
        vertices[b] = true;
        let apart = Cluster::new(cell, vertices, vec![false; cell.num_edges()]).unwrap();
        assert_eq!(validity_vector(&c, &apart, &s), 0);
        assert!(!general_cluster_validity(&c, &apart, &s));
        let path = [
            cell.horizontal_edge(0, 0),
            cell.horizontal_edge(0, 1),
            cell.vertical_edge(0, 2),
            cell.vertical_edge(1, 2),
        ];
        let joined = Cluster::from_edges(cell, path);
        assert!(joined.is_connected(cell));
        assert!(general_cluster_validity(&c, &joined, &s));
    }
}
