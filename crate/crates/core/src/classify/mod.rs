//! Degree-2p classification, verification suites and density spectra.

mod spectrum;
mod suites;

pub use spectrum::{spectrum, Spectrum};
pub use suites::{
    load_catalog, run_suite, CatalogEntry, Suite, SuiteOptions, SuiteReport, SuiteResult, Verdict,
};

use serde::Serialize;

use crate::constructions::is_prime;
use crate::error::{Error, Result};
use crate::group::PermGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// Blocks of size 2, cyclic quotient of order p, nontrivial even kernel.
    #[serde(rename = "CASE_I")]
    CaseI,
    /// Simply primitive of degree 10 and order 60.
    #[serde(rename = "CASE_II")]
    CaseII,
    #[serde(rename = "RHO_ONE")]
    RhoOne,
}

impl Case {
    pub fn predicted_rho(self) -> u64 {
        match self {
            Case::CaseI | Case::CaseII => 2,
            Case::RhoOne => 1,
        }
    }
}

/// What was found for one system of blocks of size 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSystemEvidence {
    pub blocks: Vec<Vec<usize>>,
    pub quotient_order: usize,
    pub quotient_cyclic: bool,
    pub kernel_order: usize,
    pub kernel_alternating: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification2p {
    pub case: Case,
    pub p: usize,
    pub degree: usize,
    pub order: usize,
    pub primitive: bool,
    pub two_transitive: bool,
    pub pair_systems: Vec<PairSystemEvidence>,
    pub has_p_blocks: bool,
    pub predicted_rho: u64,
}

impl Classification2p {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl std::fmt::Display for Classification2p {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let case = match self.case {
            Case::CaseI => "CASE_I",
            Case::CaseII => "CASE_II",
            Case::RhoOne => "RHO_ONE",
        };
        writeln!(f, "case: {case} (predicted rho = {})", self.predicted_rho)?;
        writeln!(f, "degree {} = 2*{}, order {}", self.degree, self.p, self.order)?;
        writeln!(f, "primitive: {}, 2-transitive: {}", self.primitive, self.two_transitive)?;
        writeln!(f, "blocks of size p: {}", self.has_p_blocks)?;
        for s in &self.pair_systems {
            writeln!(
                f,
                "blocks of size 2: quotient order {} (cyclic: {}), kernel order {} (even: {})",
                s.quotient_order, s.quotient_cyclic, s.kernel_order, s.kernel_alternating
            )?;
        }
        Ok(())
    }
}

/// Some element generates the whole group.
pub fn is_cyclic(group: &PermGroup) -> bool {
    let n = group.order() as u64;
    group.elements().iter().any(|g| g.order() == n)
}

/// `Some(p)` when `n = 2p` with `p` an odd prime.
pub fn twice_odd_prime(n: usize) -> Option<usize> {
    (n.is_multiple_of(2) && n / 2 > 2 && is_prime(n / 2)).then_some(n / 2)
}

/// `Some((p, k))` when `n = p^k`, `k >= 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Decides which of the three cases of the degree-2p density theorem
/// applies, from structural facts only.
pub fn classify_2p(group: &PermGroup) -> Result<Classification2p> {
    let degree = group.degree();
    let p = twice_odd_prime(degree).ok_or(Error::DegreeNotTwiceOddPrime)?;
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let systems = group.all_block_systems()?;
    let primitive = systems.is_empty();
    let two_transitive = group.is_2_transitive();
    let has_p_blocks = systems.iter().any(|s| s.block_size() == p);
    let mut pair_systems = Vec::new();
    for s in systems.iter().filter(|s| s.block_size() == 2) {
        let q = group.quotient_action(s)?;
        pair_systems.push(PairSystemEvidence {
            blocks: s.blocks().to_vec(),
            quotient_order: q.quotient.order(),
            quotient_cyclic: is_cyclic(&q.quotient),
            kernel_order: q.kernel.order(),
            kernel_alternating: q.kernel.is_subgroup_alternating(),
        });
    }
    let case_i = pair_systems.iter().any(|s| {
        s.quotient_cyclic && s.quotient_order == p && s.kernel_order > 1 && s.kernel_alternating
    });
    let case = if case_i {
        Case::CaseI
    } else if primitive && !two_transitive {
        match (degree, group.order()) {
            (10, 60) => Case::CaseII,
            (10, 120) => Case::RhoOne,
            (degree, order) => return Err(Error::UnexpectedSimplyPrimitive { degree, order }),
        }
    } else {
        Case::RhoOne
    };
    Ok(Classification2p {
        case,
        p,
        degree,
        order: group.order(),
        primitive,
        two_transitive,
        pair_systems,
        has_p_blocks,
        predicted_rho: case.predicted_rho(),
    })
}
