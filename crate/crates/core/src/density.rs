//! Intersecting sets, the derangement graph and exact intersection density.
//!
//! Two elements intersect when they agree on a point. A set of pairwise
//! intersecting elements is an independent set of the derangement graph
//! `Γ_G` (edges `g ~ h` when `g h⁻¹` is a derangement), and translating it
//! by any of its members gives one through the identity. So `α(Γ_G)` is the
//! clique number of the intersection graph on the non-derangements.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::clique::{CliqueSearch, UndirectedGraph, DEFAULT_ENUMERATION_LIMIT, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Groups larger than this are not turned into an explicit `Γ_G`.
pub const DEFAULT_GRAPH_VERTEX_CAP: usize = 20_000;

/// Below this order the exact search is cheaper than the subgroup bound.
const SUBGROUP_BOUND_MIN_ORDER: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoOptions {
    /// Skip the 2-transitive and matching-bound shortcuts.
    pub force_exact: bool,
    /// Also decide strict-EKR.
    pub strict: bool,
    pub node_budget: u64,
    pub enumeration_limit: usize,
    pub workers: usize,
}

impl Default for RhoOptions {
    fn default() -> Self {
        RhoOptions {
            force_exact: false,
            strict: false,
            node_budget: DEFAULT_NODE_BUDGET,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            workers: 1,
        }
    }
}

/// Pairwise intersecting elements of a group, by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectingSet {
    members: Vec<usize>,
}

impl IntersectingSet {
    pub fn new(group: &PermGroup, mut members: Vec<usize>) -> Result<IntersectingSet> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&i| i >= group.order()) {
            return Err(Error::InvalidArgument(format!("element index {bad} out of range")));
        }
        if !is_intersecting(group, &members) {
            return Err(Error::InvalidArgument("set is not intersecting".into()));
        }
        Ok(IntersectingSet { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `f⁻¹ F` for the member `f`.
    pub fn translate_by_inverse(&self, group: &PermGroup, f: usize) -> IntersectingSet {
        let finv = group.element(f).inverse();
        let mut members: Vec<usize> = self
            .members
            .iter()
            .map(|&i| {
                group
                    .index_of(&finv.compose_unchecked(group.element(i)))
                    .expect("closed under multiplication")
            })
            .collect();
        members.sort_unstable();
        IntersectingSet { members }
    }

    pub fn perms(&self, group: &PermGroup) -> Vec<Perm> {
        self.members.iter().map(|&i| group.element(i).clone()).collect()
    }
}

/// Every pair `g, h` has `g h⁻¹` fixing a point.
pub fn is_intersecting(group: &PermGroup, members: &[usize]) -> bool {
    members.iter().enumerate().all(|(i, &a)| {
        members[i + 1..]
            .iter()
            .all(|&b| group.element(a).div_right(group.element(b)).has_fixed_point())
    })
}

/// No two members agree on any point, i.e. a clique of `Γ_G`.
pub fn is_derangement_clique(group: &PermGroup, members: &[usize]) -> bool {
    members.iter().enumerate().all(|(i, &a)| {
        members[i + 1..]
            .iter()
            .all(|&b| a != b && group.element(a).div_right(group.element(b)).is_derangement())
    })
}

/// A full coset `{g : g(v) = w}` of a point stabilizer.
pub fn is_canonical(group: &PermGroup, set: &IntersectingSet) -> bool {
    let members = set.members();
    let Some(&first) = members.first() else {
        return false;
    };
    if members.len() != group.max_stabilizer_order() {
        return false;
    }
    (0..group.degree()).any(|v| {
        let w = group.element(first).apply(v);
        members.iter().all(|&i| group.element(i).apply(v) == w)
    })
}

/// `Γ_G` with vertex `i` labelled by element index `i`.
pub fn derangement_graph(group: &PermGroup) -> Result<UndirectedGraph> {
    derangement_graph_capped(group, DEFAULT_GRAPH_VERTEX_CAP)
}

pub fn derangement_graph_capped(group: &PermGroup, cap: usize) -> Result<UndirectedGraph> {
    if group.order() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let els = group.elements();
    let mut g = UndirectedGraph::from_fn(els.len(), |a, b| !els[a].intersects(&els[b]));
    g.set_labels((0..els.len()).collect());
    Ok(g)
}

/// The graph on non-derangements (identity first) with `g ~ h` when
/// `g h⁻¹` fixes a point; labels are element indices.
pub fn intersection_graph(group: &PermGroup) -> Result<UndirectedGraph> {
    intersection_graph_capped(group, DEFAULT_GRAPH_VERTEX_CAP)
}

pub fn intersection_graph_capped(group: &PermGroup, cap: usize) -> Result<UndirectedGraph> {
    let verts: Vec<usize> = (0..group.order())
        .filter(|&i| group.element(i).has_fixed_point())
        .collect();
    if verts.len() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let els = group.elements();
    let mut g = UndirectedGraph::from_fn(verts.len(), |a, b| {
        els[verts[a]].intersects(&els[verts[b]])
    });
    g.set_labels(verts);
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiregularBound {
    /// `|G| / ℓ`.
    pub bound: usize,
    pub element: usize,
    pub cycle_length: usize,
    /// `⟨g⟩`, a clique of `Γ_G`.
    pub clique: Vec<usize>,
}

/// Bound from the semiregular element of largest order; `None` if the
/// group has no semiregular element.
pub fn semiregular_upper_bound(group: &PermGroup) -> Option<SemiregularBound> {
    let best = group
        .find_semiregular_elements()
        .into_iter()
        .min_by_key(|s| (std::cmp::Reverse(s.cycle_length), s.index))?;
    let mut clique = group.cyclic_subgroup(best.index);
    clique.sort_unstable();
    Some(SemiregularBound {
        bound: group.order() / best.cycle_length,
        element: best.index,
        cycle_length: best.cycle_length,
        clique,
    })
}

/// Closure of `gens` inside `group`, abandoned once it exceeds `limit`
/// elements or contains a non-identity element with a fixed point.
fn semiregular_closure(group: &PermGroup, gens: &[usize], limit: usize) -> Option<Vec<usize>> {
    let mut seen: HashSet<usize> = HashSet::from([0]);
    let mut out = vec![0usize];
    let mut i = 0;
    while i < out.len() {
        let e = group.element(out[i]);
        for &s in gens {
            let x = group.element(s).compose_unchecked(e);
            let j = group.index_of(&x).expect("closed");
            if seen.insert(j) {
                if j != 0 && x.has_fixed_point() {
                    return None;
                }
                out.push(j);
                if out.len() > limit {
                    return None;
                }
            }
        }
        i += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// A large semiregular subgroup, grown greedily from cyclic subgroups of
/// the highest-order semiregular elements. Always contains the identity.
pub fn largest_semiregular_subgroup(group: &PermGroup) -> Vec<usize> {
    let mut semis = group.find_semiregular_elements();
    semis.sort_by_key(|s| (std::cmp::Reverse(s.cycle_length), s.index));
    let n = group.degree().max(1);
    let mut best = vec![0usize];
    for start in semis.iter().take(6) {
        let mut gens = vec![start.index];
        let mut members = group.cyclic_subgroup(start.index);
        members.sort_unstable();
        for cand in &semis {
            if members.len() == n {
                break;
            }
            if members.binary_search(&cand.index).is_ok() || !n.is_multiple_of(members.len() * 2) {
                continue;
            }
            gens.push(cand.index);
            match semiregular_closure(group, &gens, n) {
                Some(m) => members = m,
                None => {
                    gens.pop();
                }
            }
        }
        if members.len() > best.len() {
            best = members;
        }
        if best.len() == n {
            break;
        }
    }
    best
}

/// Elements normalizing the subgroup `sub` (sorted indices).
fn normalizer_of(group: &PermGroup, sub: &[usize]) -> Vec<usize> {
    (0..group.order())
        .filter(|&x| {
            let gx = group.element(x);
            sub.iter().all(|&s| {
                let c = gx.compose_unchecked(group.element(s)).div_right(gx);
                sub.binary_search(&group.index_of(&c).expect("closed")).is_ok()
            })
        })
        .collect()
}

/// A clique of `Γ_G` made of cosets of the semiregular subgroup `sub`
/// inside its normalizer. `xS` and `yS` can sit together exactly when
/// every element of `x y⁻¹ S` is a derangement.
fn normalizer_coset_clique(group: &PermGroup, sub: &[usize], budget: u64) -> Vec<usize> {
    let norm = normalizer_of(group, sub);
    let mut coset_of: std::collections::HashMap<usize, usize> = Default::default();
    let mut reps: Vec<usize> = Vec::new();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for &x in &norm {
        if coset_of.contains_key(&x) {
            continue;
        }
        let gx = group.element(x);
        let members: Vec<usize> = sub
            .iter()
            .map(|&s| group.index_of(&gx.compose_unchecked(group.element(s))).expect("closed"))
            .collect();
        for &m in &members {
            coset_of.insert(m, reps.len());
        }
        reps.push(x);
        cosets.push(members);
    }
    let all_derangements =
        |c: usize| cosets[c].iter().all(|&i| group.element(i).is_derangement());
    // coset 0 is S itself
    let good: Vec<usize> = (1..reps.len()).filter(|&c| all_derangements(c)).collect();
    if good.len() > 4096 {
        return sub.to_vec();
    }
    let quotient = |a: usize, b: usize| {
        let q = group.element(reps[a]).div_right(group.element(reps[b]));
        coset_of[&group.index_of(&q).expect("closed")]
    };
    let graph = UndirectedGraph::from_fn(good.len(), |a, b| {
        all_derangements(quotient(good[a], good[b]))
    });
    let chosen = match CliqueSearch::new(&graph).budget(budget).run() {
        Ok(c) => c.vertices,
        Err(_) => crate::clique::greedy_clique_lower_bound(&graph).vertices,
    };
    let mut out = sub.to_vec();
    for c in chosen {
        out.extend_from_slice(&cosets[good[c]]);
    }
    out.sort_unstable();
    out
}

/// Adds derangements, in index order, that agree nowhere with every member.
fn extend_derangement_clique(group: &PermGroup, mut clique: Vec<usize>, pool: &[usize]) -> Vec<usize> {
    let mut inside: HashSet<usize> = clique.iter().copied().collect();
    for &d in pool {
        if inside.contains(&d) {
            continue;
        }
        let g = group.element(d);
        if clique.iter().all(|&c| !g.intersects(group.element(c))) {
            clique.push(d);
            inside.insert(d);
        }
    }
    clique.sort_unstable();
    clique
}

/// The best `Γ_G` clique found by the heuristics: semiregular subgroups,
/// unions of their cosets in the normalizer, then greedy extension.
pub fn derangement_clique(group: &PermGroup) -> Vec<usize> {
    let n = group.degree();
    let derangements = group.derangements();
    let mut seeds: Vec<Vec<usize>> = vec![largest_semiregular_subgroup(group)];
    let mut semis = group.find_semiregular_elements();
    semis.sort_by_key(|s| (std::cmp::Reverse(s.cycle_length), s.index));
    let mut seen_subgroups: HashSet<Vec<usize>> = HashSet::new();
    for s in &semis {
        if seeds.len() >= 6 {
            break;
        }
        let mut c = group.cyclic_subgroup(s.index);
        c.sort_unstable();
        if seen_subgroups.insert(c.clone()) && c != seeds[0] {
            seeds.push(c);
        }
    }
    let mut best = vec![0usize];
    for seed in seeds {
        if best.len() == n {
            break;
        }
        let mut candidates = vec![extend_derangement_clique(group, seed.clone(), &derangements)];
        if seed.len() > 1 {
            let cosets = normalizer_coset_clique(group, &seed, 1_000_000);
            candidates.push(extend_derangement_clique(group, cosets, &derangements));
        }
        for c in candidates {
            if c.len() > best.len() {
                best = c;
            }
        }
    }
    debug_assert!(is_derangement_clique(group, &best));
    best
}

/// A proper transitive subgroup `H` gives `ρ(G) <= ρ(H)`. Candidates are
/// preimages of normalizers, in block quotients, of the image of the
/// highest-order semiregular element. Returns the smallest `ρ(H)` found.
pub fn subgroup_bound(group: &PermGroup, options: &RhoOptions) -> Result<Option<(usize, Ratio<u64>)>> {
    let Some(sr) = semiregular_upper_bound(group) else {
        return Ok(None);
    };
    let mut best: Option<(usize, Ratio<u64>)> = None;
    for system in group.all_block_systems()? {
        let q = group.quotient_action(&system)?;
        let gbar = q.projection[sr.element];
        if gbar == 0 {
            continue;
        }
        let norm = q.quotient.normalizer_of_cyclic(gbar);
        let members: Vec<usize> = (0..group.order())
            .filter(|&i| norm.contains(q.quotient.element(q.projection[i])))
            .collect();
        if members.len() == group.order() {
            continue;
        }
        let h = group.subgroup_from_indices(&members);
        if !h.is_transitive() {
            continue;
        }
        let r = rho(
            &h,
            &RhoOptions {
                strict: false,
                force_exact: false,
                ..options.clone()
            },
        )?
        .rho;
        if best.is_none_or(|(_, b)| r < b) {
            best = Some((h.order(), r));
        }
        if r == Ratio::from_integer(1) {
            break;
        }
    }
    Ok(best)
}

/// Largest intersecting set, found by exact search on the intersection
/// graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactAlpha {
    pub alpha: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
    /// Non-derangement count, the vertex count of the searched graph.
    pub vertices: usize,
}

struct SearchSpace {
    graph: UndirectedGraph,
    /// Element index of each vertex; vertex 0 is the identity.
    verts: Vec<usize>,
    local: Vec<Option<usize>>,
    partition: Vec<u32>,
}

impl SearchSpace {
    fn build(group: &PermGroup) -> Result<SearchSpace> {
        let graph = intersection_graph(group)?;
        let verts = graph.labels().expect("labelled").to_vec();
        let mut local = vec![None; group.order()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = Some(i);
        }
        // right cosets Hg of a semiregular H are cliques of Γ_G, hence
        // independent sets here
        let h = largest_semiregular_subgroup(group);
        let mut class_id = std::collections::HashMap::new();
        let partition = verts
            .iter()
            .map(|&g| {
                let ge = group.element(g);
                let rep = h
                    .iter()
                    .map(|&x| group.index_of(&group.element(x).compose_unchecked(ge)).expect("closed"))
                    .min()
                    .expect("H contains the identity");
                let next = class_id.len() as u32;
                *class_id.entry(rep).or_insert(next)
            })
            .collect();
        Ok(SearchSpace {
            graph,
            verts,
            local,
            partition,
        })
    }

    fn to_elements(&self, vertices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = vertices.iter().map(|&v| self.verts[v]).collect();
        out.sort_unstable();
        out
    }
}

/// Exact `α(Γ_G)` for a transitive group.
///
/// Conjugation fixes the identity and preserves intersection, so a maximum
/// set through the identity can be moved to contain the representative of
/// the first conjugacy class it meets. Case `i` therefore searches cliques
/// through `{1, c_i}` avoiding the earlier classes. The search stops early
/// once `target` is reached.
pub fn exact_alpha(group: &PermGroup, target: Option<usize>, options: &RhoOptions) -> Result<ExactAlpha> {
    let space = SearchSpace::build(group)?;
    let stab: Vec<usize> = group
        .stabilizer_indices(0)
        .into_iter()
        .map(|i| space.local[i].expect("stabilizer elements fix a point"))
        .collect();
    let mut best = stab;
    best.sort_unstable();
    let mut nodes = 0u64;
    let n = space.verts.len();
    let mut removed = vec![false; n];
    removed[0] = true;
    let classes: Vec<Vec<usize>> = group
        .conjugacy_classes()
        .into_iter()
        .filter(|c| c[0] != 0 && group.element(c[0]).has_fixed_point())
        .collect();
    for class in classes {
        if target.is_some_and(|t| best.len() >= t) {
            break;
        }
        let c = space.local[class[0]].expect("non-derangement");
        let candidates: Vec<usize> = space
            .graph
            .neighbors(c)
            .filter(|&v| !removed[v])
            .collect();
        for &x in &class {
            removed[space.local[x].expect("non-derangement")] = true;
        }
        if 2 + candidates.len() <= best.len() {
            continue;
        }
        let mut search = CliqueSearch::new(&space.graph)
            .base(&[0, c])
            .candidates(candidates)
            .incumbent(best.clone())
            .partition(space.partition.clone())
            .budget(options.node_budget.saturating_sub(nodes))
            .workers(options.workers);
        if let Some(t) = target {
            search = search.target(t);
        }
        let found = search.run().map_err(|e| match e {
            Error::SearchBudgetExceeded { nodes: k } => Error::SearchBudgetExceeded { nodes: nodes + k },
            other => other,
        })?;
        nodes += found.nodes;
        if found.size > best.len() {
            best = found.vertices;
        }
    }
    Ok(ExactAlpha {
        alpha: best.len(),
        witness: space.to_elements(&best),
        nodes,
        vertices: n,
    })
}

/// Every maximum intersecting set containing the identity, given `alpha`.
pub fn maximum_sets_through_identity(
    group: &PermGroup,
    alpha: usize,
    options: &RhoOptions,
) -> Result<Vec<Vec<usize>>> {
    match sets_through_identity(group, alpha, options.enumeration_limit, options)? {
        (sets, false) => Ok(sets),
        (_, true) => Err(Error::EnumerationLimitExceeded {
            limit: options.enumeration_limit,
        }),
    }
}

fn sets_through_identity(
    group: &PermGroup,
    alpha: usize,
    limit: usize,
    options: &RhoOptions,
) -> Result<(Vec<Vec<usize>>, bool)> {
    let space = SearchSpace::build(group)?;
    let (found, truncated) = CliqueSearch::new(&space.graph)
        .base(&[0])
        .partition(space.partition.clone())
        .budget(options.node_budget)
        .enumerate_at_most(alpha, limit)?;
    let mut sets: Vec<Vec<usize>> = found.iter().map(|c| space.to_elements(c)).collect();
    sets.sort();
    Ok((sets, truncated))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictEkr {
    pub strict: bool,
    /// Maximum sets through the identity that were checked.
    pub sets_checked: usize,
    /// A non-canonical maximum set, preferring subgroups.
    pub non_canonical: Option<Vec<usize>>,
}

fn is_closed(group: &PermGroup, members: &[usize]) -> bool {
    members.iter().all(|&a| {
        members.iter().all(|&b| {
            let p = group.element(a).compose_unchecked(group.element(b));
            members
                .binary_search(&group.index_of(&p).expect("closed"))
                .is_ok()
        })
    })
}

/// Strict-EKR check given the exact `alpha`. Canonicity is preserved by
/// translation, so only maximum sets through the identity are examined.
/// The canonical ones among those are point stabilizers, at most one per
/// point, so more than `degree` of them settles the question without
/// listing them all.
pub fn strict_ekr_with_alpha(group: &PermGroup, alpha: usize, options: &RhoOptions) -> Result<StrictEkr> {
    if alpha != group.max_stabilizer_order() {
        // no canonical set is maximum; report any maximum set
        return Ok(StrictEkr {
            strict: false,
            sets_checked: 0,
            non_canonical: None,
        });
    }
    let limit = options.enumeration_limit;
    let (sets, truncated) = sets_through_identity(group, alpha, limit, options)?;
    if truncated && limit < group.degree() {
        return Err(Error::EnumerationLimitExceeded { limit });
    }
    let bad: Vec<&Vec<usize>> = sets
        .iter()
        .filter(|s| !is_canonical(group, &IntersectingSet { members: s.to_vec() }))
        .collect();
    let non_canonical = bad
        .iter()
        .find(|s| is_closed(group, s))
        .or(bad.first())
        .map(|s| s.to_vec());
    Ok(StrictEkr {
        strict: bad.is_empty(),
        sets_checked: sets.len(),
        non_canonical,
    })
}

pub fn is_strict_ekr(group: &PermGroup, options: &RhoOptions) -> Result<bool> {
    let report = rho(
        group,
        &RhoOptions {
            strict: true,
            ..options.clone()
        },
    )?;
    Ok(report.is_strict_ekr.expect("strict requested"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub stabilizer_order: usize,
    pub alpha: usize,
    pub rho: Ratio<u64>,
    /// A maximum intersecting set.
    pub witness: Vec<Perm>,
    pub omega_lower: usize,
    /// A clique of `Γ_G` of size `omega_lower`.
    pub omega_witness: Vec<Perm>,
    pub is_ekr: bool,
    /// `None` when not computed.
    pub is_strict_ekr: Option<bool>,
    pub non_canonical_witness: Option<Vec<Perm>>,
    pub method: Vec<String>,
    pub nodes: u64,
}

#[derive(Serialize)]
struct RatioJson {
    num: u64,
    den: u64,
}

#[derive(Serialize)]
struct DensityReportJson<'a> {
    name: &'a str,
    degree: usize,
    order: usize,
    stabilizer_order: usize,
    alpha: usize,
    rho: RatioJson,
    is_ekr: bool,
    is_strict_ekr: Option<bool>,
    witness: Vec<String>,
    omega_lower: usize,
    omega_witness: Vec<String>,
    non_canonical_witness: Option<Vec<String>>,
    method: &'a [String],
    nodes: u64,
}

pub(crate) fn cycle_strings(perms: &[Perm]) -> Vec<String> {
    perms.iter().map(Perm::to_cycle_string).collect()
}

impl DensityReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(DensityReportJson {
            name: &self.name,
            degree: self.degree,
            order: self.order,
            stabilizer_order: self.stabilizer_order,
            alpha: self.alpha,
            rho: RatioJson {
                num: *self.rho.numer(),
                den: *self.rho.denom(),
            },
            is_ekr: self.is_ekr,
            is_strict_ekr: self.is_strict_ekr,
            witness: cycle_strings(&self.witness),
            omega_lower: self.omega_lower,
            omega_witness: cycle_strings(&self.omega_witness),
            non_canonical_witness: self.non_canonical_witness.as_deref().map(cycle_strings),
            method: &self.method,
            nodes: self.nodes,
        })
        .expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.name)?;
        writeln!(f, "degree {}, order {}, |G_v| = {}", self.degree, self.order, self.stabilizer_order)?;
        writeln!(f, "alpha = {}", self.alpha)?;
        writeln!(f, "rho = {}", self.rho)?;
        writeln!(f, "EKR: {}", self.is_ekr)?;
        match self.is_strict_ekr {
            Some(s) => writeln!(f, "strict-EKR: {s}")?,
            None => writeln!(f, "strict-EKR: not computed")?,
        }
        writeln!(f, "omega >= {}", self.omega_lower)?;
        writeln!(f, "witness: {}", cycle_strings(&self.witness).join(" "))?;
        if let Some(w) = &self.non_canonical_witness {
            writeln!(f, "non-canonical maximum set: {}", cycle_strings(w).join(" "))?;
        }
        for m in &self.method {
            writeln!(f, "  - {m}")?;
        }
        Ok(())
    }
}

/// Exact intersection density of a transitive group.
pub fn rho(group: &PermGroup, options: &RhoOptions) -> Result<DensityReport> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let order = group.order();
    let stab_order = group.max_stabilizer_order();
    let stab = group.stabilizer_indices(0);
    let mut method = vec![format!("lower bound: alpha >= |G_v| = {stab_order}")];
    let mut nodes = 0;

    let (alpha, witness, omega) = if group.is_2_transitive() && !options.force_exact {
        method.push("2-transitive: rho = 1".into());
        let omega = semiregular_upper_bound(group)
            .map(|b| b.clique)
            .unwrap_or_else(|| vec![0]);
        (stab_order, stab.clone(), omega)
    } else {
        let omega = derangement_clique(group);
        let upper = order / omega.len();
        method.push(format!(
            "upper bound: Γ_G clique of size {} gives alpha <= {upper}",
            omega.len()
        ));
        if upper == stab_order && !options.force_exact {
            method.push("bounds meet".into());
            (stab_order, stab.clone(), omega)
        } else if let Some(h) = (!options.force_exact && order > SUBGROUP_BOUND_MIN_ORDER)
            .then(|| subgroup_bound(group, options))
            .transpose()?
            .flatten()
            .filter(|(_, r)| *r == Ratio::from_integer(1))
            .map(|(h, _)| h)
        {
            method.push(format!("upper bound: transitive subgroup of order {h} has rho = 1"));
            method.push("bounds meet".into());
            (stab_order, stab.clone(), omega)
        } else {
            let target = (!options.force_exact).then_some(upper);
            let exact = exact_alpha(group, target, options)?;
            nodes = exact.nodes;
            method.push(format!(
                "exact: maximum clique of the intersection graph ({} vertices, {} nodes)",
                exact.vertices, exact.nodes
            ));
            (exact.alpha, exact.witness, omega)
        }
    };

    let mut is_strict_ekr = None;
    let mut non_canonical_witness = None;
    if alpha > stab_order {
        is_strict_ekr = Some(false);
        method.push("strict-EKR false: alpha exceeds |G_v|".into());
    } else if options.strict {
        let check = strict_ekr_with_alpha(group, alpha, options)?;
        method.push(format!(
            "strict-EKR: {} maximum sets through the identity checked",
            check.sets_checked
        ));
        is_strict_ekr = Some(check.strict);
        non_canonical_witness = check
            .non_canonical
            .map(|s| s.iter().map(|&i| group.element(i).clone()).collect());
    }

    debug_assert!(alpha * omega.len() <= order);
    let perms = |v: &[usize]| v.iter().map(|&i| group.element(i).clone()).collect();
    Ok(DensityReport {
        name: group.display_name(),
        degree: group.degree(),
        order,
        stabilizer_order: stab_order,
        alpha,
        rho: Ratio::new(alpha as u64, stab_order as u64),
        witness: perms(&witness),
        omega_lower: omega.len(),
        omega_witness: perms(&omega),
        is_ekr: alpha == stab_order,
        is_strict_ekr,
        non_canonical_witness,
        method,
        nodes,
    })
}
