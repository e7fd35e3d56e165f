mod common;

use std::sync::OnceLock;

use num_rational::Ratio;
use permdensity::constructions::*;
use permdensity::density::*;
use permdensity::group::PermGroup;
use proptest::prelude::*;

fn groups() -> &'static [PermGroup] {
    static G: OnceLock<Vec<PermGroup>> = OnceLock::new();
    G.get_or_init(|| common::small_transitive_groups(400))
}

/// A maximal intersecting set grown greedily in a shuffled order.
fn random_intersecting(g: &PermGroup, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    let mut s = seed | 1;
    for i in (1..order.len()).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        order.swap(i, (s % (i as u64 + 1)) as usize);
    }
    let mut set: Vec<usize> = Vec::new();
    for x in order {
        if set.iter().all(|&y| g.element(x).intersects(g.element(y))) {
            set.push(x);
        }
    }
    set
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn translation_keeps_intersecting(gi in 0usize..1000, seed: u64, pick: usize) {
        let g = &groups()[gi % groups().len()];
        let set = IntersectingSet::new(g, random_intersecting(g, seed)).unwrap();
        let f = set.members()[pick % set.size()];
        let t = set.translate_by_inverse(g, f);
        prop_assert_eq!(t.size(), set.size());
        prop_assert!(t.members().contains(&0));
        prop_assert!(is_intersecting(g, t.members()));
    }

    #[test]
    fn greedy_sets_respect_alpha(gi in 0usize..1000, seed: u64) {
        let g = &groups()[gi % groups().len()];
        let r = rho(g, &RhoOptions::default()).unwrap();
        prop_assert!(random_intersecting(g, seed).len() <= r.alpha);
    }
}

#[test]
fn clique_coclique_and_range() {
    for g in groups() {
        let r = rho(g, &RhoOptions::default()).unwrap();
        assert!(r.alpha * r.omega_lower <= r.order, "{}", r.name);
        assert!(r.alpha >= r.stabilizer_order);
        assert!(r.rho >= Ratio::from_integer(1));
        assert!(r.rho < Ratio::from_integer(g.degree() as u64));
        let idx: Vec<usize> = r.omega_witness.iter().map(|p| g.index_of(p).unwrap()).collect();
        assert!(is_derangement_clique(g, &idx));
        let w: Vec<usize> = r.witness.iter().map(|p| g.index_of(p).unwrap()).collect();
        assert_eq!(w.len(), r.alpha);
        assert!(is_intersecting(g, &w));
    }
}

#[test]
fn subgroup_monotonicity_on_pair_actions() {
    let opts = RhoOptions::default();
    for (h, g) in [(a4_pairs(), s4_pairs()), (a5_pairs(), s5_pairs())] {
        assert!(g.contains_group(&h));
        assert!(rho(&g, &opts).unwrap().rho <= rho(&h, &opts).unwrap().rho);
    }
}

#[test]
fn quotient_monotonicity() {
    // a quotient by blocks of size 2 with a fixed-point-free kernel involution
    let opts = RhoOptions::default();
    let mut checked = 0;
    for g in groups().iter().filter(|g| g.degree() % 2 == 0) {
        for s in g.all_block_systems().unwrap().iter().filter(|s| s.block_size() == 2) {
            let q = g.quotient_action(s).unwrap();
            if !q.kernel.elements().iter().any(|k| k.is_derangement()) {
                continue;
            }
            let rg = rho(g, &opts).unwrap().rho;
            let rq = rho(&q.quotient, &opts).unwrap().rho;
            assert!(rg <= rq, "{}: {rg} > {rq}", g.display_name());
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn strict_implies_canonical_witness() {
    let opts = RhoOptions { strict: true, ..RhoOptions::default() };
    for g in groups().iter().filter(|g| g.order() <= 120) {
        let r = rho(g, &opts).unwrap();
        match (r.is_strict_ekr, &r.non_canonical_witness) {
            (Some(true), w) => assert!(w.is_none()),
            (Some(false), Some(w)) => {
                let idx: Vec<usize> = w.iter().map(|p| g.index_of(p).unwrap()).collect();
                let set = IntersectingSet::new(g, idx).unwrap();
                assert!(!is_canonical(g, &set));
                assert_eq!(set.size(), r.alpha);
            }
            (Some(false), None) => assert!(r.alpha > r.stabilizer_order),
            (None, _) => panic!("strict requested"),
        }
    }
}
