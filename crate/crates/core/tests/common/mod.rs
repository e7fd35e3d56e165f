//! Oracles shared by the integration tests and the acceptance target.
//! Nothing here calls the crate's clique solver.
#![allow(dead_code)]

use std::path::PathBuf;

use permdensity::classify::{load_catalog, CatalogEntry};
use permdensity::constructions::*;
use permdensity::group::PermGroup;

pub const ELEMENT_CAP: usize = 1_000_000;

pub fn catalog_dir(degree: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("catalogs")
        .join(format!("deg{degree}"))
}

pub fn catalog(degree: usize) -> Vec<CatalogEntry> {
    load_catalog(catalog_dir(degree), ELEMENT_CAP).expect("bundled catalog loads")
}

pub fn catalog_groups(degree: usize) -> Vec<PermGroup> {
    catalog(degree)
        .into_iter()
        .filter_map(|e| match e {
            CatalogEntry::Group(g) => Some(g),
            CatalogEntry::OverCap { .. } => None,
        })
        .collect()
}

pub const CATALOG_DEGREES: [usize; 8] = [4, 5, 6, 7, 8, 9, 10, 14];

/// Named constructions small enough for exhaustive checks.
pub fn construction_groups() -> Vec<PermGroup> {
    let full5 = CodeSpec::full_even_weight(5).unwrap();
    let full3 = CodeSpec::full_even_weight(3).unwrap();
    let mut v = vec![
        a4_pairs(),
        s4_pairs(),
        a5_pairs(),
        s5_pairs(),
        klein_four(),
        thm16i_group(&full3).unwrap(),
        thm16i_group(&full5).unwrap(),
        frobenius_lift(3, 2, &full3).unwrap(),
        frobenius_lift(5, 2, &full5).unwrap(),
        iterated_wreath_sylow(2, 2).unwrap(),
        iterated_wreath_sylow(2, 3).unwrap(),
        iterated_wreath_sylow(3, 2).unwrap(),
    ];
    for n in [3, 4, 5, 6, 7] {
        v.push(cyclic(n).unwrap());
        v.push(dihedral(n).unwrap());
    }
    v.extend([symmetric(4).unwrap(), alternating(4).unwrap(), alternating(5).unwrap()]);
    v
}

/// Every bundled or constructed transitive group of order at most `limit`.
pub fn small_transitive_groups(limit: usize) -> Vec<PermGroup> {
    CATALOG_DEGREES
        .iter()
        .flat_map(|&n| catalog_groups(n))
        .chain(construction_groups())
        .filter(|g| g.order() <= limit && g.is_transitive())
        .collect()
}

fn agree_somewhere(a: &permdensity::perm::Perm, b: &permdensity::perm::Perm) -> bool {
    (0..a.degree()).any(|v| a.apply(v) == b.apply(v))
}

/// Adjacency of the intersection graph built straight from point images.
pub fn intersection_adjacency(g: &PermGroup) -> Vec<Vec<bool>> {
    let id = permdensity::perm::Perm::identity(g.degree());
    let verts: Vec<_> = g.elements().iter().filter(|x| agree_somewhere(x, &id)).collect();
    verts
        .iter()
        .map(|a| verts.iter().map(|b| a != b && agree_somewhere(a, b)).collect())
        .collect()
}

/// Clique number by plain subset enumeration: every clique is grown from
/// smaller ones in increasing vertex order, pruned only by size.
pub fn enumeration_clique_number(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    let words = n.div_ceil(64);
    let rows: Vec<Vec<u64>> = adj
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (j, &e) in r.iter().enumerate() {
                if e {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    fn count(s: &[u64]) -> usize {
        s.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn grow(rows: &[Vec<u64>], size: usize, cand: Vec<u64>, best: &mut usize) {
        if size > *best {
            *best = size;
        }
        if size + count(&cand) <= *best {
            return;
        }
        let mut cand = cand;
        while let Some(v) = cand
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
        {
            cand[v / 64] &= !(1 << (v % 64));
            if size + 1 + count(&cand) <= *best {
                return;
            }
            let next: Vec<u64> = cand.iter().zip(&rows[v]).map(|(a, b)| a & b).collect();
            grow(rows, size + 1, next, best);
        }
    }
    let mut best = 0;
    let all: Vec<u64> = (0..words)
        .map(|i| {
            let bits = (n - i * 64).min(64);
            if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 }
        })
        .collect();
    grow(&rows, 0, all, &mut best);
    best
}

/// Clique number by checking all `2^n` vertex subsets; `n <= 24`.
pub fn brute_force_clique_number(n: usize, adj: &[Vec<bool>]) -> usize {
    assert!(n <= 24);
    let masks: Vec<u32> = (0..n)
        .map(|i| (0..n).filter(|&j| adj[i][j]).fold(0u32, |m, j| m | 1 << j))
        .collect();
    let mut is_clique = vec![false; 1 << n];
    is_clique[0] = true;
    let mut best = 0;
    for s in 1usize..(1 << n) {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let ok = is_clique[rest] && (masks[v] as usize & rest) == rest;
        is_clique[s] = ok;
        if ok {
            best = best.max(s.count_ones() as usize);
        }
    }
    best
}

/// `σ` with `σ H σ⁻¹ = K`, searched over all of `S_n` (small n only).
pub fn permutation_equivalent(h: &PermGroup, k: &PermGroup) -> bool {
    if h.degree() != k.degree() || h.order() != k.order() {
        return false;
    }
    let n = h.degree();
    let mut sigma: Vec<usize> = (0..n).collect();
    fn next_perm(a: &mut [usize]) -> bool {
        let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
            return false;
        };
        let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
        a.swap(i - 1, j);
        a[i..].reverse();
        true
    }
    loop {
        let conj = |g: &permdensity::perm::Perm| {
            let mut img = vec![0; n];
            for v in 0..n {
                img[sigma[v]] = sigma[g.apply(v)];
            }
            permdensity::perm::Perm::from_images(img).unwrap()
        };
        if h.generators().iter().all(|g| k.contains(&conj(g))) {
            return true;
        }
        if !next_perm(&mut sigma) {
            return false;
        }
    }
}

/// `G(n, p)` as an adjacency matrix and an edge list.
pub fn random_graph(rng: &mut impl rand::Rng, n: usize, p: f64) -> (Vec<Vec<bool>>, Vec<(usize, usize)>) {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in &edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    (adj, edges)
}
