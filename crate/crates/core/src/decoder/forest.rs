//! Cluster growth on the torus with a disjoint-set forest.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::toric::Cellulation;

use super::DecodeError;

/// Union-find state for one growth phase.
///
/// Every vertex starts as its own cluster. Edges carry a support counter in
/// growth units (two half-edges, or `d` subedges); an edge is covered once its
/// counter reaches `units`, and covered edges merge their endpoint clusters.
/// Per root the forest keeps the validity vector, the smallest member vertex,
/// the boundary vertex list and the exact count of boundary vertices.
#[derive(Debug, Default)]
pub struct ClusterForest {
    parent: Vec<u32>,
    size: Vec<u32>,
    validity: Vec<u64>,
    min_vertex: Vec<u32>,
    boundary: Vec<Vec<u32>>,
    boundary_count: Vec<u32>,
    is_boundary: Vec<bool>,
    support: Vec<u8>,
    units: u8,
    heap: BinaryHeap<Reverse<(u32, u32, u32)>>,
    fused: Vec<usize>,
    scratch: Vec<u32>,
}

impl ClusterForest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = v;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    #[inline]
    pub fn is_covered(&self, e: usize) -> bool {
        self.support[e] >= self.units
    }

    pub fn support(&self) -> &[u8] {
        &self.support
    }

    pub fn covered_edges(&self) -> Vec<bool> {
        self.support.iter().map(|&s| s >= self.units).collect()
    }

    pub fn validity(&mut self, v: usize) -> u64 {
        let r = self.find(v);
        self.validity[r]
    }

    /// Number of boundary vertices of the cluster containing `v`.
    pub fn boundary_size(&mut self, v: usize) -> usize {
        let r = self.find(v);
        self.boundary_count[r] as usize
    }

    fn vertex_is_interior(&self, cell: &Cellulation, v: usize) -> bool {
        cell.incident_edges(v).iter().all(|&e| self.is_covered(e))
    }

    /// Resets to singleton clusters with the given edge supports and vertex
    /// validity vectors, then merges along already covered edges.
    pub fn reset(&mut self, cell: &Cellulation, seeds: &[u8], units: u8, validity: impl Fn(usize) -> u64) {
        let nv = cell.num_vertices();
        self.units = units;
        self.support.clear();
        self.support.extend(seeds.iter().map(|&s| s.min(units)));
        self.parent.clear();
        self.parent.extend(0..nv as u32);
        self.size.clear();
        self.size.resize(nv, 1);
        self.validity.clear();
        self.validity.extend((0..nv).map(&validity));
        self.min_vertex.clear();
        self.min_vertex.extend(0..nv as u32);
        self.boundary.resize_with(nv, Vec::new);
        self.boundary.truncate(nv);
        self.boundary_count.clear();
        self.is_boundary.clear();
        for v in 0..nv {
            let b = !self.vertex_is_interior(cell, v);
            self.is_boundary.push(b);
            self.boundary_count.push(u32::from(b));
            let list = &mut self.boundary[v];
            list.clear();
            if b {
                list.push(v as u32);
            }
        }
        for e in 0..cell.num_edges() {
            if self.is_covered(e) {
                let [a, b] = cell.edge_endpoints(e);
                self.union(a, b);
            }
        }
        self.heap.clear();
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big as u32;
        self.size[big] += self.size[small];
        self.validity[big] ^= self.validity[small];
        self.min_vertex[big] = self.min_vertex[big].min(self.min_vertex[small]);
        self.boundary_count[big] += self.boundary_count[small];
        let moved = std::mem::take(&mut self.boundary[small]);
        self.boundary[big].extend_from_slice(&moved);
        // hand the allocation back so resets stay allocation-free
        self.boundary[small] = moved;
        self.boundary[small].clear();
        big
    }

    fn push_if_invalid(&mut self, root: usize) {
        if self.validity[root] != 0 {
            self.heap.push(Reverse((
                self.boundary_count[root],
                self.min_vertex[root],
                root as u32,
            )));
        }
    }

    /// Grows invalid clusters until every cluster is valid.
    ///
    /// Each step selects the invalid cluster with the fewest boundary
    /// vertices (ties: smallest member vertex) and adds one unit of support to
    /// every uncovered edge incident to its boundary vertices.
    pub fn grow(&mut self, cell: &Cellulation) -> Result<(), DecodeError> {
        for v in 0..cell.num_vertices() {
            if self.parent[v] as usize == v {
                self.push_if_invalid(v);
            }
        }
        while let Some(Reverse((count, minv, r))) = self.heap.pop() {
            let r = r as usize;
            if self.parent[r] as usize != r
                || self.validity[r] == 0
                || self.boundary_count[r] != count
                || self.min_vertex[r] != minv
            {
                continue;
            }
            if count == 0 {
                return Err(DecodeError::GrowthStalled);
            }
            self.grow_cluster(cell, r);
            let root = self.find(r);
            self.push_if_invalid(root);
        }
        Ok(())
    }

    fn grow_cluster(&mut self, cell: &Cellulation, r: usize) {
        let units = self.units;
        let mut list = std::mem::take(&mut self.boundary[r]);
        self.fused.clear();
        for &u in &list {
            if !self.is_boundary[u as usize] {
                continue;
            }
            for e in cell.incident_edges(u as usize) {
                if self.support[e] < units {
                    self.support[e] += 1;
                    if self.support[e] == units {
                        self.fused.push(e);
                    }
                }
            }
        }
        self.scratch.clear();
        for &u in &list {
            let u = u as usize;
            if !self.is_boundary[u] {
                continue;
            }
            if self.vertex_is_interior(cell, u) {
                self.is_boundary[u] = false;
                self.boundary_count[r] -= 1;
            } else {
                self.scratch.push(u as u32);
            }
        }
        list.clear();
        std::mem::swap(&mut list, &mut self.scratch);
        self.boundary[r] = list;

        let fused = std::mem::take(&mut self.fused);
        for &e in &fused {
            for w in cell.edge_endpoints(e) {
                if self.is_boundary[w] && self.vertex_is_interior(cell, w) {
                    self.is_boundary[w] = false;
                    let rw = self.find(w);
                    self.boundary_count[rw] -= 1;
                }
            }
        }
        for &e in &fused {
            let [a, b] = cell.edge_endpoints(e);
            self.union(a, b);
        }
        self.fused = fused;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singletons_stay_put_when_valid() {
        let cell = Cellulation::torus(4).unwrap();
        let mut f = ClusterForest::new();
        f.reset(&cell, &vec![0; cell.num_edges()], 2, |_| 0);
        f.grow(&cell).unwrap();
        assert!(f.support().iter().all(|&s| s == 0));
        assert_eq!(f.boundary_size(3), 1);
    }

    #[test]
    fn seeded_edges_merge() {
        let cell = Cellulation::torus(4).unwrap();
        let mut seeds = vec![0; cell.num_edges()];
        seeds[cell.horizontal_edge(0, 0)] = 2;
        seeds[cell.horizontal_edge(0, 1)] = 2;
        let mut f = ClusterForest::new();
        f.reset(&cell, &seeds, 2, |v| u64::from(v == 0));
        assert_eq!(f.find(0), f.find(2));
        assert_eq!(f.validity(2), 1);
        // middle vertex still has uncovered vertical edges
        assert_eq!(f.boundary_size(1), 3);
    }

    #[test]
    fn two_defects_at_distance_two_join() {
        let cell = Cellulation::torus(4).unwrap();
        let a = cell.vertex_id(1, 0);
        let b = cell.vertex_id(1, 2);
        let mut f = ClusterForest::new();
        f.reset(&cell, &vec![0; cell.num_edges()], 2, |v| u64::from(v == a || v == b));
        f.grow(&cell).unwrap();
        assert_eq!(f.find(a), f.find(b));
        assert_eq!(f.validity(a), 0);
        // a connecting path is covered
        let h1 = cell.horizontal_edge(1, 0);
        let h2 = cell.horizontal_edge(1, 1);
        assert!(f.is_covered(h1) && f.is_covered(h2));
    }

    #[test]
    fn stalls_on_impossible_validity() {
        // a single odd vertex on the whole torus can never become valid
        let cell = Cellulation::torus(2).unwrap();
        let mut f = ClusterForest::new();
        f.reset(&cell, &vec![0; cell.num_edges()], 2, |v| u64::from(v == 0));
        assert_eq!(f.grow(&cell), Err(DecodeError::GrowthStalled));
    }
}
