//! The `.grp` text format.
//!
//! ```text
//! # comments run from '#' to end of line; blank lines are ignored
//! degree 6                 # first content line, required
//! name A4 on 2-subsets     # optional, at most once, right after degree
//! (1 2)(3 4)               # one generator per line, 1-based cycles
//! img: 1 0 2 3 4 5         # or a 0-based image table
//! ```
//!
//! `()` denotes the identity. A file with no generator lines describes the
//! trivial group.

use std::fmt::Write as _;
use std::path::Path;

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrpFile {
    pub degree: usize,
    pub name: Option<String>,
    pub generators: Vec<Perm>,
}

impl GrpFile {
    pub fn parse(text: &str) -> Result<GrpFile> {
        let mut degree: Option<usize> = None;
        let mut name: Option<String> = None;
        let mut generators = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some(n) = degree else {
                let rest = content
                    .strip_prefix("degree")
                    .ok_or_else(|| err(format!("expected 'degree N', found {content:?}")))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad degree {:?}", rest.trim())))?;
                if n == 0 {
                    return Err(err("degree must be positive".into()));
                }
                degree = Some(n);
                continue;
            };
            if let Some(rest) = content.strip_prefix("name") {
                if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                    return Err(err(format!("unrecognised line {content:?}")));
                }
                if name.is_some() || !generators.is_empty() {
                    return Err(err("'name' must appear once, before generators".into()));
                }
                let rest = rest.trim();
                if rest.is_empty() {
                    return Err(err("empty name".into()));
                }
                name = Some(rest.to_string());
                continue;
            }
            let g = Perm::parse(content, Some(n)).map_err(|e| err(e.to_string()))?;
            generators.push(g);
        }
        let degree = degree.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing 'degree N' line".into(),
        })?;
        Ok(GrpFile {
            degree,
            name,
            generators,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<GrpFile> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        GrpFile::parse(&text)
    }

    pub fn from_group(group: &PermGroup) -> GrpFile {
        GrpFile {
            degree: group.degree(),
            name: group.name().map(str::to_string),
            generators: group.generators().to_vec(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "degree {}", self.degree).unwrap();
        if let Some(name) = &self.name {
            writeln!(s, "name {name}").unwrap();
        }
        for g in &self.generators {
            writeln!(s, "{}", g.to_cycle_string()).unwrap();
        }
        s
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn into_group(self, cap: usize) -> Result<PermGroup> {
        let g = PermGroup::generate(self.degree, &self.generators, cap)?;
        Ok(match self.name {
            Some(n) => g.with_name(n),
            None => g,
        })
    }
}

/// Reads every `.grp` file in `dir`, sorted by file name.
pub fn read_dir(dir: impl AsRef<Path>) -> Result<Vec<(String, GrpFile)>> {
    let dir = dir.as_ref();
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let stem = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let file = GrpFile::read(&p).map_err(|e| match e {
                Error::Parse { line, message } => Error::Parse {
                    line,
                    message: format!("{}: {message}", p.display()),
                },
                other => other,
            })?;
            Ok((stem, file))
        })
        .collect()
}
