//! Property tests over randomized conditions and graphs.

use mgspec_core::conditions::is_lagrangian;
use mgspec_core::graph::{EdgeLength, MetricGraph};
use mgspec_core::linalg::{hermitian_min_eigenvalue, spectral_norm};
use mgspec_core::random;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lagrangian_round_trip_recovers_matrices(seed in any::<u64>(), d in 1usize..=8, complex: bool) {
        let mut rng = random::seeded(seed);
        let vc = random::random_vertex_condition(&mut rng, d, complex);
        let subspace = vc.to_lagrangian();
        let check = is_lagrangian(subspace.basis()).unwrap();
        prop_assert!(check.is_lagrangian);
        prop_assert!(check.defect <= 1e-10);
        let back = subspace.decompose().unwrap();
        let p_err = spectral_norm(&(back.projection() - vc.projection()));
        let l_err = spectral_norm(&(back.coupling() - vc.coupling()));
        prop_assert!(p_err <= 1e-10, "projection error {}", p_err);
        prop_assert!(l_err <= 1e-10 * (1.0 + spectral_norm(vc.coupling())), "coupling error {}", l_err);
    }

    #[test]
    fn coupling_split_identities(seed in any::<u64>(), d in 1usize..=8, complex: bool) {
        let mut rng = random::seeded(seed);
        let vc = random::random_vertex_condition(&mut rng, d, complex);
        let split = vc.split_coupling();
        prop_assert!(hermitian_min_eigenvalue(&split.positive) >= -1e-12);
        let neg_neg = split.negative.clone() * mgspec_core::C64::new(-1.0, 0.0);
        prop_assert!(hermitian_min_eigenvalue(&neg_neg) >= -1e-12);
        prop_assert!(spectral_norm(&(&split.positive * &split.negative)) <= 1e-10);
        let sum_err = spectral_norm(&(&split.positive + &split.negative - vc.coupling()));
        prop_assert!(sum_err <= 1e-10);
    }

    #[test]
    fn handshake_count_over_random_graphs(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let spec = random::random_graph_spec(&mut rng, 10, 0.5, 4.0);
        let g = MetricGraph::build(spec).unwrap();
        let degree_sum: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
        let finite = g.edges().iter().filter(|e| e.length.is_finite()).count();
        let rays = g.edge_count() - finite;
        prop_assert_eq!(degree_sum, 2 * finite + rays);
        // star ordering is reproducible
        for v in 0..g.vertex_count() {
            prop_assert_eq!(&g.vertex_star(v).ends, &g.vertex_star(v).ends);
        }
        // uniform length bound matches the data
        let min_len = g
            .edges()
            .iter()
            .filter_map(|e| match e.length {
                EdgeLength::Finite(l) => Some(l),
                EdgeLength::Infinite => None,
            })
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(g.u_min(), min_len);
    }
}
