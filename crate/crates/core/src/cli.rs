//! Command-line front end.
//!
//! Exit codes: 0 success, 1 bad input or any ordinary failure, 2 when a
//! proven depth relation fails to hold (an implementation bug).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cache::TableCache;
use crate::chains::{alt_chain_depth, danz_twisted_depth, sym_chain_depth, young_branching_matrix};
use crate::error::DepthError;
use crate::groupspec::{parse_group_spec, GroupSpec};
use crate::inclusion::{core_reduction_report, pair_depth_report, CoreChecks, PairAnalysis, TableSource};
use crate::matdepth::{depth_report, min_depth, DepthReport, NonnegMatrix};
use crate::permgrp::{is_subgroup, FiniteGroup, GroupError, DEFAULT_CAP};

#[derive(Debug, Parser)]
#[command(name = "depthlab", version, about = "Subgroup depth and h-depth over the complex numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Character-table cache directory (default: $DEPTHLAB_CACHE or ./.depthlab-cache).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest group that will be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Upper limit for the prime search.
    #[arg(long, global = true, default_value_t = crate::chartab::DEFAULT_PRIME_CAP)]
    pub prime_cap: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depths of an inclusion matrix read from a file.
    Matrix {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
    /// Depths of a subgroup pair via character tables.
    Pair {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Closed-form depth of a group chain.
    Chain {
        #[arg(long, value_enum)]
        family: ChainFamily,
        #[arg(long)]
        n: u64,
        /// Also compute the depth from an inclusion matrix.
        #[arg(long)]
        verify_matrix: bool,
    },
    /// Compare a pair with its reduction modulo the core.
    CoreReduce {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Inspect or clear the character-table cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainFamily {
    Sym,
    Alt,
    TwistedSym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    Clear,
    Stats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairLabel {
    pub group: String,
    pub subgroup: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub pair: PairLabel,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: u64,
    pub core_order: usize,
    pub normalizer_index: u64,
    pub normal: bool,
    pub prime: u64,
    pub matrix: NonnegMatrix,
    #[serde(flatten)]
    pub depth: DepthReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_report: Option<Box<QuotientReport>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: u64,
    pub prime: u64,
    pub matrix: NonnegMatrix,
    #[serde(flatten)]
    pub depth: DepthReport,
    pub checks: CoreChecks,
}

impl PairReport {
    pub fn new(pair: PairLabel, a: PairAnalysis) -> Self {
        Self {
            pair,
            group_order: a.group_order,
            subgroup_order: a.subgroup_order,
            index: a.index,
            core_order: a.core_order,
            normalizer_index: a.normalizer_index,
            normal: a.normal,
            prime: a.prime,
            matrix: a.inclusion.matrix,
            depth: a.depth,
            quotient_report: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub family: ChainFamily,
    pub n: u64,
    pub closed_form: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_depth: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct CacheReport {
    dir: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    entries: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bytes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    removed: Option<usize>,
}

struct Runner {
    cap: usize,
    tables: TableSource,
    cache: TableCache,
}

impl Runner {
    fn new(cli: &Cli) -> Self {
        let cache = cli
            .cache_dir
            .clone()
            .map_or_else(TableCache::from_env, TableCache::new);
        Self {
            cap: cli.cap,
            tables: TableSource::cached(cache.clone()).with_prime_cap(cli.prime_cap),
            cache,
        }
    }

    /// Parses both specs, embeds the subgroup in the ambient degree and checks
    /// generator membership before anything is enumerated beyond `G`.
    fn pair_groups(&self, group: &str, subgroup: &str) -> Result<(FiniteGroup, FiniteGroup), DepthError> {
        let gspec = parse_group_spec(group)?;
        let hspec = parse_group_spec(subgroup)?;
        let hspec: GroupSpec = hspec.with_degree(gspec.degree)?;
        let g = FiniteGroup::enumerate(gspec.degree, gspec.generators, self.cap)?;
        if let Some(x) = hspec.generators.iter().find(|x| !g.contains(x)) {
            return Err(GroupError::NotASubgroup(format!("generator {x} is not in the group")).into());
        }
        let h = FiniteGroup::enumerate(hspec.degree, hspec.generators, self.cap)?;
        debug_assert!(is_subgroup(&g, &h)?);
        Ok((g, h))
    }

    fn matrix(&self, path: &PathBuf, format: MatrixFormat) -> Result<DepthReport, DepthError> {
        let text = fs::read_to_string(path)?;
        let m = match format {
            MatrixFormat::Csv => NonnegMatrix::from_csv(&text)?,
            MatrixFormat::Json => NonnegMatrix::from_json(&text)?,
        };
        Ok(depth_report(&m)?)
    }

    fn pair(&self, group: &str, subgroup: &str) -> Result<PairReport, DepthError> {
        let (g, h) = self.pair_groups(group, subgroup)?;
        let a = pair_depth_report(&g, &h, &self.tables)?;
        Ok(PairReport::new(label(group, subgroup), a))
    }

    fn core_reduce(&self, group: &str, subgroup: &str) -> Result<PairReport, DepthError> {
        let (g, h) = self.pair_groups(group, subgroup)?;
        let r = core_reduction_report(&g, &h, &self.tables)?;
        let q = r.quotient;
        let mut report = PairReport::new(label(group, subgroup), r.original);
        report.quotient_report = Some(Box::new(QuotientReport {
            group_order: q.group_order,
            subgroup_order: q.subgroup_order,
            index: q.index,
            prime: q.prime,
            matrix: q.inclusion.matrix,
            depth: q.depth,
            checks: r.checks,
        }));
        Ok(report)
    }

    fn chain(&self, family: ChainFamily, n: u64, verify: bool) -> Result<ChainReport, DepthError> {
        let closed_form = match family {
            ChainFamily::Sym => sym_chain_depth(n)?,
            ChainFamily::Alt => alt_chain_depth(n)?,
            ChainFamily::TwistedSym => danz_twisted_depth(n)?,
        };
        let matrix_depth = if verify {
            Some(match family {
                ChainFamily::Sym => min_depth(&young_branching_matrix(n as usize).matrix)?,
                ChainFamily::Alt => {
                    let big = format!("alt:{}", n + 1);
                    let small = format!("alt:{n}");
                    self.pair(&big, &small)?.depth.min_depth
                }
                ChainFamily::TwistedSym => {
                    return Err(DepthError::Spec(crate::groupspec::SpecError::Degree(
                        "no inclusion matrix is available for the twisted chain".into(),
                    )))
                }
            })
        } else {
            None
        };
        if let Some(d) = matrix_depth {
            if d != closed_form {
                return Err(DepthError::TheoremViolation(format!(
                    "matrix depth {d} differs from closed form {closed_form}"
                )));
            }
        }
        Ok(ChainReport {
            family,
            n,
            closed_form,
            matrix_depth,
        })
    }

    fn cache(&self, action: CacheAction) -> Result<CacheReport, DepthError> {
        let dir = self.cache.dir().display().to_string();
        Ok(match action {
            CacheAction::Stats => {
                let s = self.cache.stats()?;
                CacheReport {
                    dir,
                    entries: Some(s.entries),
                    bytes: Some(s.bytes),
                    removed: None,
                }
            }
            CacheAction::Clear => CacheReport {
                dir,
                entries: None,
                bytes: None,
                removed: Some(self.cache.clear()?),
            },
        })
    }
}

fn label(group: &str, subgroup: &str) -> PairLabel {
    PairLabel {
        group: group.to_string(),
        subgroup: subgroup.to_string(),
    }
}

/// Flattens a JSON object into aligned `key  value` lines.
fn render_table(value: &serde_json::Value) -> String {
    fn walk(prefix: &str, v: &serde_json::Value, out: &mut Vec<(String, String)>) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    // Matrices print as rows, not as nested keys.
                    if let Some(rows) = v.get("entries").and_then(|e| e.as_array()) {
                        for (i, row) in rows.iter().enumerate() {
                            out.push((format!("{key}[{i}]"), row.to_string()));
                        }
                    } else {
                        walk(&key, v, out);
                    }
                }
            }
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:width$}  {v}");
    }
    out
}

fn render<T: Serialize>(value: &T, format: OutputFormat) -> Result<String, DepthError> {
    Ok(match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            s
        }
        OutputFormat::Table => render_table(&serde_json::to_value(value)?),
    })
}

/// Runs one command and returns what it prints on success.
pub fn run(cli: &Cli) -> Result<String, DepthError> {
    let runner = Runner::new(cli);
    match &cli.command {
        Command::Matrix { matrix, format } => render(&runner.matrix(matrix, *format)?, cli.output),
        Command::Pair { group, subgroup } => render(&runner.pair(group, subgroup)?, cli.output),
        Command::Chain {
            family,
            n,
            verify_matrix,
        } => render(&runner.chain(*family, *n, *verify_matrix)?, cli.output),
        Command::CoreReduce { group, subgroup } => {
            render(&runner.core_reduce(group, subgroup)?, cli.output)
        }
        Command::Cache { action } => render(&runner.cache(*action)?, cli.output),
    }
}

pub fn exit_code(result: &Result<String, DepthError>) -> i32 {
    match result {
        Ok(_) => 0,
        Err(e) if e.is_theorem_violation() => 2,
        Err(_) => 1,
    }
}
