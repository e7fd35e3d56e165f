mod common;

use common::*;
use permdensity::clique::{max_clique, UndirectedGraph};
use permdensity::density::{derangement_graph, exact_alpha, rho, RhoOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn exact() -> RhoOptions {
    RhoOptions {
        force_exact: true,
        ..RhoOptions::default()
    }
}

#[test]
fn solver_matches_brute_force_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let n = rng.gen_range(1..=20);
        let p: f64 = rng.gen_range(0.1..0.95);
        let (adj, edges) = random_graph(&mut rng, n, p);
        let g = UndirectedGraph::from_edges(n, &edges);
        let c = max_clique(&g).unwrap();
        assert!(g.is_clique(&c.vertices));
        assert_eq!(c.size, brute_force_clique_number(n, &adj), "n={n} p={p}");
        assert_eq!(c.size, enumeration_clique_number(&adj));
    }
}

#[test]
fn exact_alpha_matches_enumeration_oracle() {
    for g in small_transitive_groups(200) {
        let oracle = enumeration_clique_number(&intersection_adjacency(&g));
        let a = exact_alpha(&g, None, &exact()).unwrap();
        assert_eq!(a.alpha, oracle, "{}", g.display_name());
        let r = rho(&g, &RhoOptions::default()).unwrap();
        assert_eq!(r.alpha, oracle, "{} via default options", g.display_name());
    }
}

#[test]
fn alpha_is_independence_number_of_derangement_graph() {
    // α(Γ_G) as the clique number of the complement
    for g in small_transitive_groups(60) {
        let dg = derangement_graph(&g).unwrap().complement();
        let n = dg.vertex_count();
        let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| dg.has_edge(i, j)).collect()).collect();
        let alpha = enumeration_clique_number(&adj);
        assert_eq!(rho(&g, &exact()).unwrap().alpha, alpha, "{}", g.display_name());
    }
}
