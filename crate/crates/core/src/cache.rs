//! On-disk cache of character tables.
//!
//! One JSON file per (element set, prime). Entries are validated against the
//! group's conjugacy data and re-verified on load; anything that does not
//! check out is ignored and recomputed.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chartab::{verify_table, CharTableModP, PrimeContext};
use crate::permgrp::{ConjugacyData, FiniteGroup};

pub const CACHE_ENV: &str = "DEPTHLAB_CACHE";
pub const DEFAULT_CACHE_DIR: &str = "./.depthlab-cache";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedTable {
    pub order: u64,
    pub exponent: u64,
    pub p: u64,
    pub omega: u64,
    pub class_sizes: Vec<usize>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<u64>>,
}

impl CachedTable {
    pub fn from_table(t: &CharTableModP) -> Self {
        Self {
            order: t.order,
            exponent: t.context.exponent,
            p: t.context.p,
            omega: t.context.omega,
            class_sizes: t.classes.class_sizes.clone(),
            degrees: t.degrees.clone(),
            values: t.values.clone(),
        }
    }

    /// Rebuilds a table for `classes`; `None` if the entry does not fit.
    pub fn into_table(self, classes: &ConjugacyData) -> Option<CharTableModP> {
        if self.class_sizes != classes.class_sizes {
            return None;
        }
        let table = CharTableModP {
            context: PrimeContext {
                p: self.p,
                exponent: self.exponent,
                omega: self.omega,
            },
            order: self.order,
            values: self.values,
            degrees: self.degrees,
            classes: classes.clone(),
        };
        verify_table(&table).passed.then_some(table)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub entries: usize,
    pub bytes: u64,
}

#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Directory from `DEPTHLAB_CACHE`, else `./.depthlab-cache`.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR), PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// SHA-256 over the sorted element list and the prime.
    pub fn key(g: &FiniteGroup, p: u64) -> String {
        let mut hasher = Sha256::new();
        hasher.update((g.degree() as u64).to_le_bytes());
        hasher.update((g.order() as u64).to_le_bytes());
        for x in g.elements() {
            for &img in x.images() {
                hasher.update(img.to_le_bytes());
            }
        }
        hasher.update(p.to_le_bytes());
        hex::encode(hasher.finalize())
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(
        &self,
        g: &FiniteGroup,
        classes: &ConjugacyData,
        p: u64,
    ) -> Option<CharTableModP> {
        let text = fs::read_to_string(self.path_for(&Self::key(g, p))).ok()?;
        let entry: CachedTable = serde_json::from_str(&text).ok()?;
        if entry.order != g.order() as u64 || entry.p != p {
            return None;
        }
        entry.into_table(classes)
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn store(&self, g: &FiniteGroup, table: &CharTableModP) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = CachedTable::from_table(table);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path_for(&Self::key(g, table.context.p)))
            .map_err(|e| e.error)?;
        Ok(())
    }

    fn entries(&self) -> io::Result<Vec<PathBuf>> {
        let dir = match fs::read_dir(&self.dir) {
            Ok(d) => d,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let mut out = Vec::new();
        for entry in dir {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                out.push(path);
            }
        }
        Ok(out)
    }

    pub fn stats(&self) -> io::Result<CacheStats> {
        let entries = self.entries()?;
        let mut bytes = 0;
        for path in &entries {
            bytes += fs::metadata(path)?.len();
        }
        Ok(CacheStats {
            entries: entries.len(),
            bytes,
        })
    }

    /// Removes every cached table; returns how many were removed.
    pub fn clear(&self) -> io::Result<usize> {
        let entries = self.entries()?;
        for path in &entries {
            fs::remove_file(path)?;
        }
        Ok(entries.len())
    }
}
