//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verified statement failed, 2 usage or input
//! error, 3 a cap or search budget ran out.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classify::{classify_2p, load_catalog, run_suite, spectrum, CatalogEntry, Suite, SuiteOptions};
use crate::clique::{DEFAULT_ENUMERATION_LIMIT, DEFAULT_NODE_BUDGET};
use crate::constructions;
use crate::density::{self, RhoOptions};
use crate::error::{Error, Result};
use crate::group::grp::GrpFile;
use crate::group::{PermGroup, DEFAULT_ORDER_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub cap: usize,
    pub node_budget: u64,
    pub enumeration_limit: usize,
    pub force_exact: bool,
    pub workers: usize,
    pub deterministic: bool,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cap: DEFAULT_ORDER_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            force_exact: false,
            workers: 1,
            deterministic: false,
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 || self.node_budget == 0 || self.enumeration_limit == 0 {
            return Err(Error::InvalidArgument("caps and budgets must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("worker count must be at least 1".into()));
        }
        Ok(())
    }

    /// Search workers; `--deterministic` pins this to one.
    pub fn search_workers(&self) -> usize {
        if self.deterministic {
            1
        } else {
            self.workers
        }
    }

    pub fn rho_options(&self) -> RhoOptions {
        RhoOptions {
            force_exact: self.force_exact,
            strict: false,
            node_budget: self.node_budget,
            enumeration_limit: self.enumeration_limit,
            workers: self.search_workers(),
        }
    }

    pub fn suite_options(&self) -> SuiteOptions {
        SuiteOptions {
            rho: RhoOptions {
                workers: 1,
                ..self.rho_options()
            },
            workers: self.workers,
            ..SuiteOptions::default()
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "permdensity", version, about = "Exact intersection density of permutation groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest group order to enumerate.
    #[arg(long, global = true, env = "EKR_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    pub cap: usize,
    /// Branch-node budget for clique searches.
    #[arg(long, global = true, env = "EKR_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Most maximum cliques enumerated for strict-EKR.
    #[arg(long = "enum-limit", global = true, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    pub enum_limit: usize,
    /// Threads for suites and clique search
    #[arg(long, global = true, env = "EKR_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Single-worker search, for byte-stable output.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Disable the 2-transitive and matching-bound shortcuts.
    #[arg(long = "force-exact", global = true)]
    pub force_exact: bool,
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            cap: self.cap,
            node_budget: self.budget,
            enumeration_limit: self.enum_limit,
            force_exact: self.force_exact,
            workers: self.workers,
            deterministic: self.deterministic,
            format: if self.json {
                OutputFormat::Json
            } else {
                OutputFormat::Text
            },
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orbits, primitivity, block systems, derangements, semiregular elements.
    Info {
        file: PathBuf,
        /// Write the derangement graph in DIMACS format.
        #[arg(long = "dimacs-out")]
        dimacs_out: Option<PathBuf>,
    },
    /// Exact intersection density.
    Rho {
        file: PathBuf,
        #[arg(long)]
        strict: bool,
        /// Write the intersection graph in DIMACS format.
        #[arg(long = "dimacs-out")]
        dimacs_out: Option<PathBuf>,
    },
    /// EKR and, with --strict, strict-EKR.
    Ekr {
        file: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Degree-2p case analysis.
    Classify { file: PathBuf },
    /// Build a named group and write it as .grp.
    Construct {
        /// cyclic, dihedral, symmetric, alternating, a4-pairs, s4-pairs,
        /// a5-pairs, s5-pairs, thm16i, frobenius-lift, wreath-sylow
        name: String,
        /// Numeric parameters, then code seeds as 0/1 strings
        args: Vec<String>,
        /// Output file; stdout if omitted
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite over .grp files or directories.
    Verify {
        /// thm-main2, thm-main3, lem-semiq, prop-minimal, prop-semiregular,
        /// prop-dm2, lem-prime, cor-strict-ekr, derangement-existence
        suite: String,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Density of every group in a directory.
    Spectrum {
        dir: PathBuf,
        /// Expected degree; defaults to that of the first group
        #[arg(long)]
        degree: Option<usize>,
    },
}

/// Parses `args` (program name first) and runs the command, writing to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let config = cli.global.config();
    if let Err(e) = config.validate() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    match execute(&cli.command, &config, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_resource_exhaustion() {
        EXIT_EXHAUSTED
    } else if matches!(e, Error::UnexpectedSimplyPrimitive { .. }) {
        EXIT_FAILURE
    } else {
        EXIT_USAGE
    }
}

fn load(file: &Path, config: &RunConfig) -> Result<PermGroup> {
    let parsed = GrpFile::read(file).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", file.display()),
        },
        other => other,
    })?;
    let stem = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = parsed.name.clone().unwrap_or(stem);
    GrpFile {
        name: Some(name),
        ..parsed
    }
    .into_group(config.cap)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn execute(command: &Command, config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let json = config.format == OutputFormat::Json;
    match command {
        Command::Info { file, dimacs_out } => {
            let g = load(file, config)?;
            let info = group_info(&g)?;
            if let Some(path) = dimacs_out {
                std::fs::write(path, density::derangement_graph_capped(&g, config.cap)?.to_dimacs())?;
            }
            emit(out, &if json { info.to_json() } else { info.to_text() })?;
        }
        Command::Rho {
            file,
            strict,
            dimacs_out,
        } => {
            let g = load(file, config)?;
            if let Some(path) = dimacs_out {
                std::fs::write(path, density::intersection_graph_capped(&g, config.cap)?.to_dimacs())?;
            }
            let opts = RhoOptions {
                strict: *strict,
                ..config.rho_options()
            };
            let r = density::rho(&g, &opts)?;
            emit(out, &if json { r.to_json() } else { r.to_string() })?;
        }
        Command::Ekr { file, strict } => {
            let g = load(file, config)?;
            let opts = RhoOptions {
                strict: *strict,
                ..config.rho_options()
            };
            let r = density::rho(&g, &opts)?;
            let text = if json {
                serde_json::to_string_pretty(&json!({
                    "name": r.name,
                    "rho": {"num": r.rho.numer(), "den": r.rho.denom()},
                    "is_ekr": r.is_ekr,
                    "is_strict_ekr": r.is_strict_ekr,
                    "non_canonical_witness": r.non_canonical_witness.as_deref().map(density::cycle_strings),
                }))
                .expect("serializable")
            } else {
                let strict = r
                    .is_strict_ekr
                    .map_or("not computed".to_string(), |s| s.to_string());
                let mut t = format!("ekr={} strict={strict}", r.is_ekr);
                if let Some(w) = &r.non_canonical_witness {
                    t.push_str(&format!(
                        "\nnon-canonical maximum set: {}",
                        density::cycle_strings(w).join(" ")
                    ));
                }
                t
            };
            emit(out, &text)?;
        }
        Command::Classify { file } => {
            let g = load(file, config)?;
            let c = classify_2p(&g)?;
            emit(out, &if json { c.to_json() } else { c.to_string() })?;
        }
        Command::Construct {
            name,
            args,
            out: path,
        } => {
            let g = constructions::by_name(name, args)?;
            let text = GrpFile::from_group(&g).to_text();
            match path {
                Some(p) => {
                    std::fs::write(p, &text)?;
                    if json {
                        emit(
                            out,
                            &json!({"name": g.display_name(), "degree": g.degree(), "order": g.order(), "path": p}).to_string(),
                        )?;
                    } else {
                        emit(out, &format!("wrote {} (degree {}, order {})", p.display(), g.degree(), g.order()))?;
                    }
                }
                None => emit(out, &text)?,
            }
        }
        Command::Verify { suite, paths } => {
            let suite: Suite = suite.parse()?;
            let mut entries = Vec::new();
            for p in paths {
                entries.extend(load_entries(p, config)?);
            }
            let report = run_suite(suite, &entries, &config.suite_options());
            emit(out, &if json { report.to_json() } else { report.to_string() })?;
            return Ok(if report.failed > 0 {
                EXIT_FAILURE
            } else if report.resource_exhausted() {
                EXIT_EXHAUSTED
            } else if report.errors > 0 {
                EXIT_FAILURE
            } else {
                EXIT_OK
            });
        }
        Command::Spectrum { dir, degree } => {
            let entries = load_entries(dir, config)?;
            let n = match degree {
                Some(n) => *n,
                None => entries
                    .iter()
                    .find_map(|e| match e {
                        CatalogEntry::Group(g) => Some(g.degree()),
                        CatalogEntry::OverCap { .. } => None,
                    })
                    .ok_or_else(|| Error::InvalidArgument("no groups to measure".into()))?,
            };
            let s = spectrum(&entries, n, &config.rho_options())?;
            emit(out, &if json { s.to_json() } else { s.to_string() })?;
        }
    }
    Ok(EXIT_OK)
}

fn load_entries(path: &Path, config: &RunConfig) -> Result<Vec<CatalogEntry>> {
    if path.is_dir() {
        load_catalog(path, config.cap)
    } else {
        match load(path, config) {
            Ok(g) => Ok(vec![CatalogEntry::Group(g)]),
            Err(Error::OrderCapExceeded { cap }) => Ok(vec![CatalogEntry::OverCap {
                name: path.display().to_string(),
                cap,
            }]),
            Err(e) => Err(e),
        }
    }
}

#[derive(Serialize)]
struct SemiregularSummary {
    cycle_length: usize,
    orbit_count: usize,
    count: usize,
    example: String,
}

#[derive(Serialize)]
struct GroupInfo {
    name: String,
    degree: usize,
    order: usize,
    orbits: Vec<Vec<usize>>,
    transitive: bool,
    two_transitive: bool,
    primitive: Option<bool>,
    block_systems: Vec<Vec<Vec<usize>>>,
    derangements: usize,
    semiregular: Vec<SemiregularSummary>,
}

fn group_info(g: &PermGroup) -> Result<GroupInfo> {
    let transitive = g.is_transitive();
    let systems = if transitive && g.degree() > 1 {
        g.all_block_systems()?
    } else {
        Vec::new()
    };
    let mut semiregular: Vec<SemiregularSummary> = Vec::new();
    for s in g.find_semiregular_elements() {
        match semiregular.iter_mut().find(|x| x.cycle_length == s.cycle_length) {
            Some(x) => x.count += 1,
            None => semiregular.push(SemiregularSummary {
                cycle_length: s.cycle_length,
                orbit_count: s.orbit_count,
                count: 1,
                example: g.element(s.index).to_cycle_string(),
            }),
        }
    }
    semiregular.sort_by_key(|s| s.cycle_length);
    Ok(GroupInfo {
        name: g.display_name(),
        degree: g.degree(),
        order: g.order(),
        orbits: g.orbits(),
        transitive,
        two_transitive: g.is_2_transitive(),
        primitive: transitive.then_some(systems.is_empty()),
        block_systems: systems.iter().map(|s| s.blocks().to_vec()).collect(),
        derangements: g.derangements().len(),
        semiregular,
    })
}

impl GroupInfo {
    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn to_text(&self) -> String {
        let points = |b: &Vec<usize>| {
            let inner: Vec<String> = b.iter().map(|v| (v + 1).to_string()).collect();
            format!("{{{}}}", inner.join(","))
        };
        let mut s = format!(
            "group: {}\ndegree {}, order {}\n",
            self.name, self.degree, self.order
        );
        let orbits: Vec<String> = self.orbits.iter().map(points).collect();
        s += &format!("orbits: {}\n", orbits.join(" "));
        s += &format!("transitive: {}\n2-transitive: {}\n", self.transitive, self.two_transitive);
        if let Some(p) = self.primitive {
            s += &format!("primitive: {p}\n");
        }
        for sys in &self.block_systems {
            let blocks: Vec<String> = sys.iter().map(points).collect();
            s += &format!(
                "block system: {} blocks of size {}: {}\n",
                sys.len(),
                sys[0].len(),
                blocks.join(" ")
            );
        }
        s += &format!("derangements: {}\n", self.derangements);
        for r in &self.semiregular {
            s += &format!(
                "semiregular: {} elements with {} cycles of length {}, e.g. {}\n",
                r.count, r.orbit_count, r.cycle_length, r.example
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["permdensity"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&[]).0, EXIT_USAGE);
        assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(&["rho", "/nonexistent.grp"]).0, EXIT_USAGE);
        assert_eq!(run(&["--workers", "0", "construct", "cyclic", "3"]).0, EXIT_USAGE);
        assert_eq!(run(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn construct_to_stdout() {
        let (code, out, _) = run(&["construct", "a4-pairs"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("degree 6\nname A4 on 2-subsets\n"));
    }

    #[test]
    fn config_defaults() {
        let c = RunConfig::default();
        assert!(c.validate().is_ok());
        let d = RunConfig {
            deterministic: true,
            workers: 8,
            ..c
        };
        assert_eq!(d.search_workers(), 1);
    }
}
