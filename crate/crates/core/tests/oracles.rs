use augsurf::decoder::{general_cluster_validity, Cluster};
use augsurf::oracles::{brute_force_distance, is_boundary_on_cluster, is_stabilizer};
use augsurf::{AugmentedCode, Cellulation, CssCode};
use proptest::prelude::*;

fn code(m: usize, fixed: CssCode) -> AugmentedCode {
    AugmentedCode::new(Cellulation::torus(m).unwrap(), fixed)
}

#[test]
fn whole_code_solvability_matches_logical_test() {
    use rand::{Rng, SeedableRng};
    let c = code(3, CssCode::four_two_two());
    let whole = Cluster::whole(c.cellulation());
    let stabs = c.z_stabilizers();
    let logicals = c.logical_z_reps();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    let mut failures = 0;
    for _ in 0..1_000 {
        // random zero-syndrome residual: stabilizers plus maybe logicals
        let mut bits = augsurf::BitVec::zeros(c.n());
        for s in &stabs {
            if rng.gen_bool(0.3) {
                bits.xor_assign(s);
            }
        }
        for l in &logicals {
            if rng.gen_bool(0.3) {
                bits.xor_assign(l);
            }
        }
        let residual = c.error_from_bits(&bits).unwrap();
        let failure = c.is_logical_failure(&residual).unwrap();
        failures += u32::from(failure);
        assert!(is_boundary_on_cluster(&c, &whole, &c.syndrome(&residual)));
        assert_eq!(is_stabilizer(&c, &residual), !failure);
    }
    assert!(failures > 100 && failures < 900);
}

#[test]
fn toric_distances() {
    for m in 2..=4 {
        assert_eq!(brute_force_distance(&code(m, CssCode::trivial()), m).unwrap().exact(), Some(m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    /// General validity equals the oracle on arbitrary (possibly
    /// disconnected) clusters and arbitrary cycle syndromes.
    #[test]
    fn general_validity_matches_oracle(
        vertex_mask in prop::collection::vec(any::<bool>(), 9),
        edge_bits in prop::collection::vec(any::<bool>(), 18),
        err_bits in prop::collection::vec(any::<bool>(), 90),
        extra in prop::collection::vec((0usize..9, 0usize..2), 0..3),
    ) {
        let c = code(3, CssCode::four_two_two());
        let cell = c.cellulation();
        let edges: Vec<bool> = (0..cell.num_edges())
            .map(|e| edge_bits[e] && cell.edge_endpoints(e).iter().all(|&v| vertex_mask[v]))
            .collect();
        let cluster = Cluster::new(cell, vertex_mask.clone(), edges).unwrap();
        // error restricted to the cluster, plus Z logicals dropped on vertices
        let mut err = c.zero_error();
        for (q, &b) in err_bits.iter().enumerate() {
            if b {
                c.flip_qubit(&mut err, q);
            }
        }
        for v in 0..cell.num_vertices() {
            if !vertex_mask[v] { err.vertex[v] = 0; }
        }
        for e in 0..cell.num_edges() {
            if !cluster.contains_edge(e) { err.edge[e] = 0; }
        }
        err.face.iter_mut().for_each(|w| *w = 0);
        let mut s = c.syndrome(&err);
        for (v, j) in extra {
            s.vertex[v] ^= c.fixed().z_logical_words()[j];
        }
        prop_assert_eq!(
            general_cluster_validity(&c, &cluster, &s),
            is_boundary_on_cluster(&c, &cluster, &s)
        );
    }
}
