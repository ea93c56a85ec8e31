//! Spanning forests and leaf-by-leaf peeling.

use std::collections::VecDeque;

use crate::toric::Cellulation;

/// A spanning forest of a set of torus edges, stored as the list of
/// (leaf vertex, tree edge, parent vertex) triples in peeling order.
///
/// Trees are built by breadth-first search from the smallest vertex of each
/// component, visiting incident edges in the order right, up, left, down.
/// Peeling order is the reverse of discovery order, so every triple's vertex
/// is a leaf of what remains.
#[derive(Debug, Default, Clone)]
pub struct SpanningForest {
    steps: Vec<(usize, usize, usize)>,
}

impl SpanningForest {
    pub fn build(cell: &Cellulation, in_subgraph: impl Fn(usize) -> bool) -> Self {
        let nv = cell.num_vertices();
        let mut visited = vec![false; nv];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..nv {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for e in cell.incident_edges(u) {
                    if !in_subgraph(e) {
                        continue;
                    }
                    let w = cell.other_end(e, u);
                    if !visited[w] {
                        visited[w] = true;
                        order.push((w, e, u));
                        queue.push_back(w);
                    }
                }
            }
        }
        order.reverse();
        Self { steps: order }
    }

    /// `(leaf, edge, parent)` in peeling order.
    pub fn steps(&self) -> &[(usize, usize, usize)] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_subgraph_gives_empty_forest() {
        let cell = Cellulation::torus(3).unwrap();
        assert!(SpanningForest::build(&cell, |_| false).is_empty());
    }

    #[test]
    fn forest_of_full_torus_is_a_tree() {
        let cell = Cellulation::torus(4).unwrap();
        let f = SpanningForest::build(&cell, |_| true);
        assert_eq!(f.len(), cell.num_vertices() - 1);
        // leaves are peeled before their parents
        let mut removed = vec![false; cell.num_vertices()];
        for &(leaf, e, parent) in f.steps() {
            assert!(!removed[leaf] && !removed[parent]);
            assert!(cell.edge_endpoints(e).contains(&leaf));
            assert!(cell.edge_endpoints(e).contains(&parent));
            removed[leaf] = true;
        }
        assert!(!removed[0], "root is never peeled");
    }
}
