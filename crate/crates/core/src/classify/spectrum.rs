use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use super::CatalogEntry;
use crate::density::{rho, RhoOptions};
use crate::error::{Error, Result};

/// Intersection densities of a list of transitive groups of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub degree: usize,
    pub entries: BTreeMap<String, Ratio<u64>>,
    /// Groups left out by the order cap.
    pub skipped: Vec<String>,
}

impl Spectrum {
    /// The largest density, `I(n)` over the groups seen.
    pub fn max(&self) -> Option<Ratio<u64>> {
        self.entries.values().copied().max()
    }

    /// Distinct values, ascending.
    pub fn values(&self) -> Vec<Ratio<u64>> {
        let mut v: Vec<_> = self.entries.values().copied().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn non_integral(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, r)| !r.is_integer())
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct R {
            num: u64,
            den: u64,
        }
        #[derive(Serialize)]
        struct J<'a> {
            degree: usize,
            entries: BTreeMap<&'a str, R>,
            values: Vec<R>,
            max: Option<R>,
            non_integral: Vec<&'a str>,
            skipped: &'a [String],
        }
        let r = |x: Ratio<u64>| R {
            num: *x.numer(),
            den: *x.denom(),
        };
        serde_json::to_string_pretty(&J {
            degree: self.degree,
            entries: self.entries.iter().map(|(k, v)| (k.as_str(), r(*v))).collect(),
            values: self.values().into_iter().map(r).collect(),
            max: self.max().map(r),
            non_integral: self.non_integral(),
            skipped: &self.skipped,
        })
        .expect("serializable")
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, r) in &self.entries {
            writeln!(f, "{r}\t{name}")?;
        }
        for name in &self.skipped {
            writeln!(f, "skipped (order cap)\t{name}")?;
        }
        let values: Vec<String> = self.values().iter().map(|v| v.to_string()).collect();
        writeln!(f, "degree {}: values {{{}}}", self.degree, values.join(", "))?;
        match self.max() {
            Some(m) => writeln!(f, "max = {m}")?,
            None => writeln!(f, "max: no groups")?,
        }
        writeln!(f, "non-integral: {}", self.non_integral().len())
    }
}

/// Exact density of every entry; all groups must have degree `n`.
pub fn spectrum(entries: &[CatalogEntry], n: usize, options: &RhoOptions) -> Result<Spectrum> {
    let mut out = Spectrum {
        degree: n,
        entries: BTreeMap::new(),
        skipped: Vec::new(),
    };
    for e in entries {
        match e {
            CatalogEntry::OverCap { name, .. } => out.skipped.push(name.clone()),
            CatalogEntry::Group(g) => {
                if g.degree() != n {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        found: g.degree(),
                    });
                }
                out.entries.insert(g.display_name(), rho(g, options)?.rho);
            }
        }
    }
    Ok(out)
}
