//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use num_rational::Ratio;
use permdensity::classify::{run_suite, spectrum, CatalogEntry, Suite, SuiteOptions, SuiteReport};
use permdensity::clique::{max_clique, UndirectedGraph};
use permdensity::constructions::*;
use permdensity::density::*;
use permdensity::group::PermGroup;
use permdensity::perm::Perm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn int(n: u64) -> Ratio<u64> {
    Ratio::from_integer(n)
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn suite_options() -> SuiteOptions {
    SuiteOptions {
        workers: workers(),
        ..SuiteOptions::default()
    }
}

fn strict() -> RhoOptions {
    RhoOptions {
        strict: true,
        ..RhoOptions::default()
    }
}

fn indices(g: &PermGroup, perms: &[Perm]) -> Vec<usize> {
    perms.iter().map(|p| g.index_of(p).expect("element of group")).collect()
}

fn suite_clean(r: &SuiteReport) -> std::result::Result<(), String> {
    if r.failed == 0 && r.errors == 0 {
        return Ok(());
    }
    let bad: Vec<String> = r
        .results
        .iter()
        .filter(|x| matches!(x.verdict, permdensity::classify::Verdict::Fail | permdensity::classify::Verdict::Error))
        .map(|x| format!("{} ({})", x.group, x.evidence.join("; ")))
        .collect();
    Err(format!(
        "{}: {} failed, {} errors: {}",
        r.suite,
        r.failed,
        r.errors,
        bad.join(" | ")
    ))
}

fn criterion_1() -> Check {
    let s4p = s4_pairs();
    let r = rho(&s4p, &strict()).map_err(|e| e.to_string())?;
    ensure(r.rho == int(1) && r.is_ekr, format!("S4 pairs rho = {}", r.rho))?;
    ensure(r.is_strict_ekr == Some(false), "S4 pairs strict-EKR not false")?;
    let system = s4p
        .all_block_systems()
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|s| s.block_size() == 2)
        .ok_or("S4 pairs has no blocks of size 2")?;
    let kernel = s4p.quotient_action(&system).map_err(|e| e.to_string())?.kernel;
    let witness = r.non_canonical_witness.as_ref().ok_or("no non-canonical witness")?;
    let w: BTreeSet<&Perm> = witness.iter().collect();
    let k: BTreeSet<&Perm> = kernel.elements().iter().collect();
    ensure(kernel.order() == 4 && w == k, "witness is not the Klein kernel")?;

    let a4p = rho(&a4_pairs(), &RhoOptions::default()).map_err(|e| e.to_string())?;
    ensure(a4p.rho == int(2), format!("A4 pairs rho = {}", a4p.rho))?;

    let a4 = alternating(4).map_err(|e| e.to_string())?;
    let r = rho(&a4, &strict()).map_err(|e| e.to_string())?;
    ensure(r.rho == int(1), format!("A4 rho = {}", r.rho))?;
    ensure(r.is_strict_ekr == Some(false), "A4 strict-EKR not false")?;
    let w = r.non_canonical_witness.as_ref().ok_or("no A4 witness")?;
    let set = IntersectingSet::new(&a4, indices(&a4, w)).map_err(|e| e.to_string())?;
    ensure(set.size() == 3 && !is_canonical(&a4, &set), "A4 witness not a non-canonical set of size 3")?;
    Ok("S4 pairs rho 1, strict false via Klein kernel; A4 pairs rho 2; A4 rho 1, non-canonical set of size 3".into())
}

fn criterion_2() -> Check {
    let a5p = a5_pairs();
    let r = rho(&a5p, &RhoOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.rho == int(2), format!("A5 pairs rho = {}", r.rho))?;
    ensure(r.witness.len() == 12, "A5 witness size")?;
    for (i, a) in r.witness.iter().enumerate() {
        for b in &r.witness[i + 1..] {
            let ab = a.compose(&b.inverse()).map_err(|e| e.to_string())?;
            ensure((0..10).any(|v| ab.apply(v) == v), "witness pair without common point")?;
        }
    }
    let s5p = s5_pairs();
    let r = rho(&s5p, &RhoOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.rho == int(1), format!("S5 pairs rho = {}", r.rho))?;
    ensure(r.omega_lower >= 10, format!("S5 clique only {}", r.omega_lower))?;
    ensure(
        is_derangement_clique(&s5p, &indices(&s5p, &r.omega_witness)),
        "S5 clique witness invalid",
    )?;
    ensure(r.nodes == 0 && r.method.iter().any(|m| m == "bounds meet"), "S5 needed a search")?;
    Ok(format!(
        "A5 pairs rho 2 with a verified 12-set; S5 pairs rho 1 from a clique of size {} (alpha <= {})",
        r.omega_lower,
        120 / r.omega_lower
    ))
}

fn criterion_3() -> Check {
    let mut entries: Vec<CatalogEntry> = [4, 8, 9].iter().flat_map(|&n| catalog(n)).collect();
    for (p, k) in [(2, 2), (2, 3), (3, 2)] {
        entries.push(CatalogEntry::Group(iterated_wreath_sylow(p, k).map_err(|e| e.to_string())?));
    }
    let r = run_suite(Suite::ThmMain2, &entries, &suite_options());
    suite_clean(&r)?;
    let expected = 5 + 50 + 34 + 3;
    ensure(r.passed == expected, format!("{} of {expected} passed", r.passed))?;
    Ok(format!("{} groups of degree 4, 8, 9 have rho = 1", r.passed))
}

fn criterion_4() -> Check {
    let deg6 = catalog(6);
    let deg10: Vec<CatalogEntry> = catalog(10)
        .into_iter()
        .filter(|e| matches!(e, CatalogEntry::Group(g) if g.order() <= 5000))
        .collect();
    ensure(deg6.len() == 16, "degree-6 catalog size")?;
    let mut entries = deg6.clone();
    entries.extend(deg10.iter().cloned());
    let r = run_suite(Suite::ThmMain3, &entries, &suite_options());
    suite_clean(&r)?;
    ensure(r.passed == entries.len(), format!("{} of {} passed", r.passed, entries.len()))?;

    let exact = RhoOptions {
        force_exact: true,
        ..RhoOptions::default()
    };
    let mut twos = Vec::new();
    for g in catalog_groups(6) {
        let r = rho(&g, &exact).map_err(|e| e.to_string())?;
        ensure(r.rho == int(1) || r.rho == int(2), format!("{} rho {}", r.name, r.rho))?;
        if r.rho == int(2) {
            twos.push(g);
        }
    }
    ensure(twos.len() == 1, format!("{} degree-6 groups with rho 2", twos.len()))?;
    ensure(
        permutation_equivalent(&twos[0], &a4_pairs()),
        "the rho-2 group is not A4 on pairs",
    )?;
    for (n, list) in [(6, deg6), (10, deg10)] {
        let s = spectrum(&list, n, &RhoOptions::default()).map_err(|e| e.to_string())?;
        ensure(s.values().iter().all(|v| *v.denom() == 1), format!("non-integral value at degree {n}"))?;
        ensure(s.non_integral().is_empty(), "non-integral entries")?;
    }
    Ok(format!(
        "{} groups match the classification; only {} has rho 2 at degree 6; spectra integral",
        r.passed,
        twos[0].display_name()
    ))
}

fn criterion_5() -> Check {
    let code = CodeSpec::full_even_weight(5).map_err(|e| e.to_string())?;
    let mut got = Vec::new();
    for d in [1, 2, 4] {
        let g = frobenius_lift(5, d, &code).map_err(|e| e.to_string())?;
        let r = rho(&g, &strict()).map_err(|e| e.to_string())?;
        got.push((r.is_ekr, r.is_strict_ekr == Some(true)));
    }
    ensure(
        got == [(false, false), (true, false), (true, true)],
        format!("(EKR, strict) = {got:?}"),
    )?;
    Ok("d = 1, 2, 4 give (false,false), (true,false), (true,true)".into())
}

fn translation_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let groups = small_transitive_groups(400);
    let mut trials = 0;
    for _ in 0..500 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let mut order: Vec<usize> = (0..g.order()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let mut set: Vec<usize> = Vec::new();
        for x in order {
            if set.iter().all(|&y| g.element(x).intersects(g.element(y))) {
                set.push(x);
            }
        }
        let f = set[rng.gen_range(0..set.len())];
        let s = IntersectingSet::new(g, set).map_err(|e| e.to_string())?;
        let t = s.translate_by_inverse(g, f);
        ensure(
            t.size() == s.size() && t.members().contains(&0) && is_intersecting(g, t.members()),
            format!("translation broke an intersecting set in {}", g.display_name()),
        )?;
        trials += 1;
    }
    Ok(format!("{trials} random maximal intersecting sets"))
}

fn clique_coclique() -> Check {
    let mut n = 0;
    for g in CATALOG_DEGREES
        .iter()
        .flat_map(|&d| catalog_groups(d))
        .chain(construction_groups())
        .filter(|g| g.is_transitive())
    {
        let r = rho(&g, &RhoOptions::default()).map_err(|e| format!("{}: {e}", g.display_name()))?;
        ensure(r.alpha * r.omega_lower <= r.order, format!("{} violates the bound", r.name))?;
        ensure(
            is_derangement_clique(&g, &indices(&g, &r.omega_witness)),
            format!("{} clique witness invalid", r.name),
        )?;
        n += 1;
    }
    Ok(format!("alpha * omega <= |G| on {n} reports"))
}

fn subgroup_monotonicity() -> Check {
    for (h, g) in [(a4_pairs(), s4_pairs()), (a5_pairs(), s5_pairs())] {
        ensure(g.contains_group(&h), "not a subgroup")?;
        let rg = rho(&g, &RhoOptions::default()).map_err(|e| e.to_string())?.rho;
        let rh = rho(&h, &RhoOptions::default()).map_err(|e| e.to_string())?.rho;
        ensure(rg <= rh, format!("rho({}) = {rg} > rho({}) = {rh}", g.display_name(), h.display_name()))?;
    }
    Ok("rho(S4) <= rho(A4), rho(S5) <= rho(A5) on pairs".into())
}

fn suite_over(suite: Suite, degrees: &[usize]) -> Check {
    let entries: Vec<CatalogEntry> = degrees.iter().flat_map(|&n| catalog(n)).collect();
    let r = run_suite(suite, &entries, &suite_options());
    suite_clean(&r)?;
    ensure(r.passed > 0, format!("{suite}: nothing applicable"))?;
    Ok(format!("{suite}: {} passed, {} not applicable or over cap", r.passed, r.skipped))
}

fn criterion_6() -> Check {
    let parts: Vec<(&str, Check)> = vec![
        ("translation invariance", translation_invariance()),
        ("clique-coclique", clique_coclique()),
        ("quotient monotonicity", suite_over(Suite::LemSemiq, &[6, 10, 14])),
        ("subgroup monotonicity", subgroup_monotonicity()),
        ("kernel witnesses", suite_over(Suite::PropDm2, &[6, 10, 14])),
        ("normalizer strictness", suite_over(Suite::LemPrime, &[5, 7])),
        ("derangement existence", suite_over(Suite::DerangementExistence, &CATALOG_DEGREES)),
    ];
    let mut failed = Vec::new();
    for (name, res) in &parts {
        match res {
            Ok(m) => println!("    ok   {name}: {m}"),
            Err(m) => {
                println!("    FAIL {name}: {m}");
                failed.push(*name);
            }
        }
    }
    if failed.is_empty() {
        Ok(format!("{} property checks", parts.len()))
    } else {
        Err(format!("failed: {}", failed.join(", ")))
    }
}

fn criterion_7() -> Check {
    let groups = small_transitive_groups(200);
    let exact = RhoOptions {
        force_exact: true,
        ..RhoOptions::default()
    };
    for g in &groups {
        let oracle = enumeration_clique_number(&intersection_adjacency(g));
        let a = exact_alpha(g, None, &exact).map_err(|e| e.to_string())?;
        ensure(a.alpha == oracle, format!("{}: solver {} oracle {oracle}", g.display_name(), a.alpha))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for i in 0..200 {
        let n = rng.gen_range(1..=24);
        let p: f64 = rng.gen_range(0.05..0.95);
        let (adj, edges) = random_graph(&mut rng, n, p);
        let c = max_clique(&UndirectedGraph::from_edges(n, &edges)).map_err(|e| e.to_string())?;
        let brute = brute_force_clique_number(n, &adj);
        ensure(c.size == brute, format!("graph {i}: solver {} brute force {brute}", c.size))?;
    }
    Ok(format!("{} groups of order <= 200 and 200 random graphs agree", groups.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        (1, "strict-EKR examples", Duration::from_secs(1), criterion_1),
        (2, "A5 and S5 on pairs", Duration::from_secs(10), criterion_2),
        (3, "prime-power degrees", Duration::from_secs(60), criterion_3),
        (4, "degree 2p classification", Duration::from_secs(300), criterion_4),
        (5, "frobenius lifts", Duration::from_secs(60), criterion_5),
        (6, "property suites", Duration::from_secs(300), criterion_6),
        (7, "oracle equivalence", Duration::from_secs(300), criterion_7),
    ];
    let mut failures = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let res = check();
        let took = start.elapsed();
        let res = match res {
            Ok(m) if took > limit => Err(format!("{m}, but took {took:.2?} (limit {limit:?})")),
            other => other,
        };
        match res {
            Ok(m) => println!("PASS {n} {name} ({took:.2?}): {m}"),
            Err(m) => {
                failures += 1;
                println!("FAIL {n} {name} ({took:.2?}): {m}");
            }
        }
    }
    println!("{} of 7 criteria passed", 7 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
