//! Theorem-verification suites over lists of groups.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::{classify_2p, prime_power, twice_odd_prime};
use crate::constructions::is_prime;
use crate::density::{rho, DensityReport, RhoOptions};
use crate::error::{Error, Result};
use crate::group::grp::read_dir;
use crate::group::{BlockSystem, PermGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    ThmMain2,
    ThmMain3,
    LemSemiq,
    PropMinimal,
    PropSemiregular,
    PropDm2,
    LemPrime,
    CorStrictEkr,
    DerangementExistence,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::ThmMain2,
        Suite::ThmMain3,
        Suite::LemSemiq,
        Suite::PropMinimal,
        Suite::PropSemiregular,
        Suite::PropDm2,
        Suite::LemPrime,
        Suite::CorStrictEkr,
        Suite::DerangementExistence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ThmMain2 => "thm-main2",
            Suite::ThmMain3 => "thm-main3",
            Suite::LemSemiq => "lem-semiq",
            Suite::PropMinimal => "prop-minimal",
            Suite::PropSemiregular => "prop-semiregular",
            Suite::PropDm2 => "prop-dm2",
            Suite::LemPrime => "lem-prime",
            Suite::CorStrictEkr => "cor-strict-ekr",
            Suite::DerangementExistence => "derangement-existence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Base options; `force_exact` is switched on for groups up to
    /// `exact_order_limit`.
    pub rho: RhoOptions,
    pub exact_order_limit: usize,
    /// Groups processed concurrently.
    pub workers: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            rho: RhoOptions::default(),
            exact_order_limit: 5000,
            workers: 1,
        }
    }
}

impl SuiteOptions {
    fn rho_for(&self, group: &PermGroup) -> RhoOptions {
        RhoOptions {
            force_exact: self.rho.force_exact || group.order() <= self.exact_order_limit,
            ..self.rho.clone()
        }
    }

    fn rho(&self, group: &PermGroup) -> Result<(DensityReport, &'static str)> {
        let opts = self.rho_for(group);
        let mode = if opts.force_exact { "exact search" } else { "bounds allowed" };
        Ok((rho(group, &opts)?, mode))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Not applicable, or above the order cap.
    Skipped,
    /// A cap or budget ran out, or the input was malformed.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub group: String,
    pub verdict: Verdict,
    pub evidence: Vec<String>,
    #[serde(skip)]
    pub resource_exhausted: bool,
}

impl SuiteResult {
    fn new(group: &str, verdict: Verdict, evidence: Vec<String>) -> SuiteResult {
        SuiteResult {
            group: group.to_string(),
            verdict,
            evidence,
            resource_exhausted: false,
        }
    }

    fn check(group: &str, ok: bool, evidence: Vec<String>) -> SuiteResult {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        SuiteResult::new(group, verdict, evidence)
    }

    fn skipped(group: &str, reason: impl Into<String>) -> SuiteResult {
        SuiteResult::new(group, Verdict::Skipped, vec![reason.into()])
    }

    fn from_error(group: &str, e: Error) -> SuiteResult {
        let mut r = SuiteResult::new(group, Verdict::Error, vec![e.to_string()]);
        r.resource_exhausted = e.is_resource_exhaustion();
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
    /// Sorted by group name.
    pub results: Vec<SuiteResult>,
}

impl SuiteReport {
    fn new(suite: Suite, mut results: Vec<SuiteResult>) -> SuiteReport {
        results.sort_by(|a, b| a.group.cmp(&b.group));
        let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
        SuiteReport {
            suite: suite.name().to_string(),
            passed: count(Verdict::Pass),
            failed: count(Verdict::Fail),
            skipped: count(Verdict::Skipped),
            errors: count(Verdict::Error),
            results,
        }
    }

    /// Every check that ran passed.
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errors == 0
    }

    pub fn resource_exhausted(&self) -> bool {
        self.results.iter().any(|r| r.resource_exhausted)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let tag = match r.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "SKIP",
                Verdict::Error => "ERROR",
            };
            writeln!(f, "{tag} {}: {}", r.group, r.evidence.join("; "))?;
        }
        writeln!(
            f,
            "{}: {} passed, {} failed, {} skipped, {} errors",
            self.suite, self.passed, self.failed, self.skipped, self.errors
        )
    }
}

/// A catalog file: either an enumerated group or one left out by the cap.
#[derive(Clone, Debug)]
pub enum CatalogEntry {
    Group(PermGroup),
    OverCap { name: String, cap: usize },
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        match self {
            CatalogEntry::Group(g) => g.display_name(),
            CatalogEntry::OverCap { name, .. } => name.clone(),
        }
    }
}

impl From<PermGroup> for CatalogEntry {
    fn from(g: PermGroup) -> Self {
        CatalogEntry::Group(g)
    }
}

/// Loads every `.grp` file of a directory; groups above `cap` become
/// [`CatalogEntry::OverCap`]. Files without a name line are named by stem.
pub fn load_catalog(dir: impl AsRef<Path>, cap: usize) -> Result<Vec<CatalogEntry>> {
    read_dir(dir)?
        .into_iter()
        .map(|(stem, file)| {
            let name = file.name.clone().unwrap_or_else(|| stem.clone());
            let file = crate::group::grp::GrpFile {
                name: Some(name.clone()),
                ..file
            };
            match file.into_group(cap) {
                Ok(g) => Ok(CatalogEntry::Group(g)),
                Err(Error::OrderCapExceeded { cap }) => Ok(CatalogEntry::OverCap { name, cap }),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Runs one suite; per-group problems become verdicts, never errors.
pub fn run_suite(suite: Suite, entries: &[CatalogEntry], options: &SuiteOptions) -> SuiteReport {
    let mut results: Vec<SuiteResult> = entries
        .iter()
        .filter_map(|e| match e {
            CatalogEntry::OverCap { name, cap } => Some(SuiteResult::skipped(
                name,
                format!("skipped: order cap ({cap})"),
            )),
            CatalogEntry::Group(_) => None,
        })
        .collect();
    let groups: Vec<&PermGroup> = entries
        .iter()
        .filter_map(|e| match e {
            CatalogEntry::Group(g) => Some(g),
            CatalogEntry::OverCap { .. } => None,
        })
        .collect();
    if suite == Suite::PropMinimal {
        results.extend(prop_minimal(&groups, options));
        return SuiteReport::new(suite, results);
    }
    if options.workers > 1 {
        let inner = SuiteOptions {
            rho: RhoOptions {
                workers: 1,
                ..options.rho.clone()
            },
            ..options.clone()
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .expect("thread pool");
        let par: Vec<SuiteResult> = pool.install(|| {
            groups
                .par_iter()
                .map(|g| evaluate(suite, g, &inner))
                .collect()
        });
        results.extend(par);
    } else {
        results.extend(groups.iter().map(|g| evaluate(suite, g, options)));
    }
    SuiteReport::new(suite, results)
}

fn evaluate(suite: Suite, g: &PermGroup, options: &SuiteOptions) -> SuiteResult {
    let name = g.display_name();
    if !g.is_transitive() {
        return SuiteResult::skipped(&name, "precondition: group not transitive");
    }
    check_group(suite, g, options).unwrap_or_else(|e| SuiteResult::from_error(&name, e))
}

fn check_group(suite: Suite, g: &PermGroup, options: &SuiteOptions) -> Result<SuiteResult> {
    let name = g.display_name();
    match suite {
        Suite::ThmMain2 => thm_main2(&name, g, options),
        Suite::ThmMain3 => thm_main3(&name, g, options),
        Suite::LemSemiq => lem_semiq(&name, g, options),
        Suite::PropSemiregular => prop_semiregular(&name, g, options),
        Suite::PropDm2 => prop_dm2(&name, g),
        Suite::LemPrime => lem_prime(&name, g),
        Suite::CorStrictEkr => cor_strict_ekr(&name, g, options),
        Suite::DerangementExistence => Ok(derangement_existence(&name, g)),
        Suite::PropMinimal => unreachable!("handled across groups"),
    }
}

fn thm_main2(name: &str, g: &PermGroup, options: &SuiteOptions) -> Result<SuiteResult> {
    let Some((p, k)) = prime_power(g.degree()) else {
        return Ok(SuiteResult::skipped(
            name,
            format!("precondition: degree {} is not a prime power", g.degree()),
        ));
    };
    let (r, mode) = options.rho(g)?;
    Ok(SuiteResult::check(
        name,
        r.rho == Ratio::from_integer(1),
        vec![format!("degree {p}^{k}, rho = {} ({mode})", r.rho)],
    ))
}

fn thm_main3(name: &str, g: &PermGroup, options: &SuiteOptions) -> Result<SuiteResult> {
    if twice_odd_prime(g.degree()).is_none() {
        return Ok(SuiteResult::skipped(
            name,
            format!("precondition: degree {} is not twice an odd prime", g.degree()),
        ));
    }
    let class = match classify_2p(g) {
        Ok(c) => c,
        Err(e @ Error::UnexpectedSimplyPrimitive { .. }) => {
            return Ok(SuiteResult::check(name, false, vec![e.to_string()]))
        }
        Err(e) => return Err(e),
    };
    let (r, mode) = options.rho(g)?;
    let predicted = Ratio::from_integer(class.predicted_rho);
    let in_range = r.rho == Ratio::from_integer(1) || r.rho == Ratio::from_integer(2);
    Ok(SuiteResult::check(
        name,
        in_range && r.rho == predicted,
        vec![
            format!("rho = {} ({mode})", r.rho),
            format!("classified {:?}, predicted rho = {predicted}", class.case),
        ],
    ))
}

/// A fixed-point-free involution of the kernel whose orbits are the blocks.
fn block_involution(g: &PermGroup, kernel: &[usize], system: &BlockSystem) -> Option<usize> {
    kernel.iter().copied().find(|&i| {
        let e = g.element(i);
        (0..g.degree()).all(|v| {
            let w = e.apply(v);
            w != v && system.block_of(w) == system.block_of(v)
        })
    })
}

fn lem_semiq(name: &str, g: &PermGroup, options: &SuiteOptions) -> Result<SuiteResult> {
    let systems: Vec<BlockSystem> = g
        .all_block_systems()?
        .into_iter()
        .filter(|s| s.block_size() == 2)
        .collect();
    let mut evidence = Vec::new();
    let mut ok = true;
    let mut rho_g = None;
    for s in &systems {
        let q = g.quotient_action(s)?;
        let Some(t) = block_involution(g, &q.kernel_indices, s) else {
            continue;
        };
        let rg = match rho_g {
            Some(r) => r,
            None => {
                let r = options.rho(g)?.0.rho;
                rho_g = Some(r);
                r
            }
        };
        let rq = options.rho(&q.quotient)?.0.rho;
        ok &= rg <= rq;
        evidence.push(format!(
            "H = <{}>: rho(G) = {rg} <= rho(G/H) = {rq} on {} blocks",
            g.element(t),
            s.block_count()
        ));
    }
    if evidence.is_empty() {
        return Ok(SuiteResult::skipped(
            name,
            "precondition: no block system of size 2 is the orbit set of a kernel involution",
        ));
    }
    Ok(SuiteResult::check(name, ok, evidence))
}

fn prop_minimal(groups: &[&PermGroup], options: &SuiteOptions) -> Vec<SuiteResult> {
    let transitive: Vec<&PermGroup> = groups.iter().copied().filter(|g| g.is_transitive()).collect();
    let mut pairs = Vec::new();
    for (i, h) in transitive.iter().enumerate() {
        for (j, g) in transitive.iter().enumerate() {
            if i != j
                && h.degree() == g.degree()
                && h.order() < g.order()
                && g.order() % h.order() == 0
                && g.contains_group(h)
            {
                pairs.push((i, j));
            }
        }
    }
    let mut cache: Vec<Option<Result<Ratio<u64>>>> = vec![None; transitive.len()];
    let mut get = |i: usize| -> Result<Ratio<u64>> {
        if cache[i].is_none() {
            cache[i] = Some(options.rho(transitive[i]).map(|r| r.0.rho));
        }
        cache[i].clone().expect("filled")
    };
    pairs
        .into_iter()
        .map(|(i, j)| {
            let label = format!(
                "{} <= {}",
                transitive[i].display_name(),
                transitive[j].display_name()
            );
            match (get(i), get(j)) {
                (Ok(rh), Ok(rg)) => SuiteResult::check(
                    &label,
                    rg <= rh,
                    vec![format!("rho(G) = {rg} <= rho(H) = {rh}")],
                ),
                (Err(e), _) | (_, Err(e)) => SuiteResult::from_error(&label, e),
            }
        })
        .collect()
}

fn prop_semiregular(name: &str, g: &PermGroup, options: &SuiteOptions) -> Result<SuiteResult> {
    let mut lengths: Vec<usize> = g
        .find_semiregular_elements()
        .iter()
        .map(|s| s.cycle_length)
        .collect();
    lengths.sort_unstable();
    lengths.dedup();
    if lengths.is_empty() {
        return Ok(SuiteResult::skipped(name, "precondition: no semiregular element"));
    }
    let (r, mode) = options.rho(g)?;
    let mut ok = true;
    let mut evidence = vec![format!("rho = {} ({mode})", r.rho)];
    for l in lengths {
        let k = g.degree() / l;
        ok &= r.rho <= Ratio::from_integer(k as u64);
        evidence.push(format!("order {l}, {k} orbits"));
    }
    Ok(SuiteResult::check(name, ok, evidence))
}

fn prop_dm2(name: &str, g: &PermGroup) -> Result<SuiteResult> {
    let n = g.degree();
    if !n.is_multiple_of(2) || !is_prime(n / 2) || n < 6 {
        return Ok(SuiteResult::skipped(
            name,
            format!("precondition: degree {n} is not twice an odd prime"),
        ));
    }
    let p = n / 2;
    let systems = g.all_block_systems()?;
    if systems.iter().any(|s| s.block_size() == p) {
        return Ok(SuiteResult::skipped(name, "precondition: admits blocks of size p"));
    }
    let pair_systems: Vec<&BlockSystem> = systems.iter().filter(|s| s.block_size() == 2).collect();
    if pair_systems.is_empty() {
        return Ok(SuiteResult::skipped(name, "precondition: no blocks of size 2"));
    }
    let mut evidence = Vec::new();
    let mut ok = true;
    for s in pair_systems {
        let q = g.quotient_action(s)?;
        let blocks = s.blocks();
        let mut missing = 0;
        for (i, b) in blocks.iter().enumerate() {
            for (j, b2) in blocks.iter().enumerate() {
                if i == j {
                    continue;
                }
                let found = q.kernel_indices.iter().any(|&k| {
                    let e = g.element(k);
                    e.apply(b[0]) == b[0]
                        && e.apply(b[1]) == b[1]
                        && e.apply(b2[0]) == b2[1]
                        && e.apply(b2[1]) == b2[0]
                });
                if !found {
                    missing += 1;
                }
            }
        }
        ok &= missing == 0;
        evidence.push(format!(
            "{} ordered block pairs, kernel order {}, {missing} without a witness",
            p * (p - 1),
            q.kernel.order()
        ));
    }
    Ok(SuiteResult::check(name, ok, evidence))
}

fn lem_prime(name: &str, g: &PermGroup) -> Result<SuiteResult> {
    let p = g.degree();
    if !is_prime(p) || !g.is_2_transitive() {
        return Ok(SuiteResult::skipped(
            name,
            "precondition: not doubly transitive of prime degree",
        ));
    }
    let cycle = (0..g.order())
        .find(|&i| g.element(i).cycle_type() == [p])
        .expect("a transitive group of prime degree contains a p-cycle");
    let norm = g.normalizer_of_cyclic(cycle);
    Ok(SuiteResult::check(
        name,
        norm.order() > p,
        vec![format!(
            "P = <{}>, |N_G(P)| = {} > {p}",
            g.element(cycle),
            norm.order()
        )],
    ))
}

fn cor_strict_ekr(name: &str, g: &PermGroup, options: &SuiteOptions) -> Result<SuiteResult> {
    let Some(p) = twice_odd_prime(g.degree()) else {
        return Ok(SuiteResult::skipped(
            name,
            format!("precondition: degree {} is not twice an odd prime", g.degree()),
        ));
    };
    let mut family = None;
    for s in g.all_block_systems()?.iter().filter(|s| s.block_size() == 2) {
        let q = g.quotient_action(s)?;
        let qo = q.quotient.order();
        if q.kernel.order() > 1
            && q.kernel.is_subgroup_alternating()
            && qo % p == 0
            && (p - 1) % (qo / p) == 0
        {
            family = Some((qo / p, q.kernel.order()));
            break;
        }
    }
    let Some((d, k)) = family else {
        return Ok(SuiteResult::skipped(
            name,
            "precondition: no size-2 blocks with even kernel and quotient Z_p:Z_d",
        ));
    };
    let opts = RhoOptions {
        strict: true,
        ..options.rho_for(g)
    };
    let r = rho(g, &opts)?;
    let strict = r.is_strict_ekr.expect("strict requested");
    let ok = r.is_ekr == (d > 1) && strict == (d > 2);
    Ok(SuiteResult::check(
        name,
        ok,
        vec![format!(
            "p = {p}, d = {d}, |K| = {k}: EKR {}, strict-EKR {strict}",
            r.is_ekr
        )],
    ))
}

fn is_prime_power(n: u64) -> bool {
    n > 1 && prime_power(n as usize).is_some()
}

fn derangement_existence(name: &str, g: &PermGroup) -> SuiteResult {
    if g.degree() < 2 {
        return SuiteResult::skipped(name, "precondition: degree below 2");
    }
    let derangements = g.derangements();
    let witness = derangements
        .iter()
        .copied()
        .filter(|&i| is_prime_power(g.element(i).order()))
        .min_by_key(|&i| (g.element(i).order(), i));
    match witness {
        Some(i) => {
            let e = g.element(i);
            let order = e.order();
            SuiteResult::check(
                name,
                true,
                vec![format!(
                    "{} derangements; {} has prime-power order {order}",
                    derangements.len(),
                    e
                )],
            )
        }
        None => SuiteResult::check(
            name,
            false,
            vec![format!(
                "{} derangements, none of prime-power order",
                derangements.len()
            )],
        ),
    }
}
