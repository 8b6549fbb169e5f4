//! Persistent factor cache: UTF-8 JSON lines, one record per `2^n - 1`,
//! append-with-compaction, per-record durability.
//!
//! Corrupt or inconsistent lines never poison a run: they are skipped with a
//! warning and quarantined to `<path>.quarantine` for inspection.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::os::fd::AsRawFd;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{FactorBudget, FactoredInteger, Status};
use crate::error::CacheError;

/// Wire format of one cache line. Big integers travel as decimal strings so
/// the file stays human-inspectable and language-neutral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCacheRecord {
    pub n: u64,
    pub factors: Vec<(String, u32)>,
    pub cofactor: String,
    pub status: Status,
    pub trial_bound: u64,
    pub rho_cap: u64,
    pub timestamp: u64,
}

impl FactorCacheRecord {
    /// Builds a record from a factorization of `2^n - 1`.
    pub fn new(n: u64, f: &FactoredInteger, budget: &FactorBudget) -> Self {
        FactorCacheRecord {
            n,
            factors: f
                .factors()
                .iter()
                .map(|(p, e)| (p.to_string(), *e))
                .collect(),
            cofactor: f.cofactor().to_string(),
            status: f.status(),
            trial_bound: budget.trial_division_bound,
            rho_cap: budget.rho_iteration_cap,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    /// Parses and revalidates: the product times the cofactor must rebuild
    /// `2^n - 1` exactly, and the declared status must match the cofactor.
    pub fn to_factored(&self) -> Result<FactoredInteger, CacheError> {
        let parse = |s: &str| -> Result<BigUint, CacheError> {
            s.parse::<BigUint>()
                .map_err(|e| CacheError::BadRecord(format!("n={}: bad integer {s:?}: {e}", self.n)))
        };
        let mut factors = Vec::with_capacity(self.factors.len());
        for (p, e) in &self.factors {
            factors.push((parse(p)?, *e));
        }
        let cofactor = parse(&self.cofactor)?;
        let value = (BigUint::one() << self.n) - 1u32;
        let f = FactoredInteger::from_raw_checked(value, factors, cofactor)
            .map_err(|e| CacheError::BadRecord(format!("n={}: {e}", self.n)))?;
        if f.status() != self.status {
            return Err(CacheError::BadRecord(format!(
                "n={}: declared status disagrees with cofactor",
                self.n
            )));
        }
        Ok(f)
    }

    /// Replacement rule: Complete wins over Partial; among Partial the larger
    /// trial bound wins; equals fall back to last-write-wins.
    fn supersedes(&self, old: &FactorCacheRecord) -> bool {
        match (self.status, old.status) {
            (Status::Complete, _) => true,
            (Status::Partial, Status::Complete) => false,
            (Status::Partial, Status::Partial) => self.trial_bound >= old.trial_bound,
        }
    }
}

struct Inner {
    file: File,
    records: BTreeMap<u64, FactorCacheRecord>,
    lines_on_disk: u64,
}

/// Handle to an open cache file. One writer per file (advisory `flock`),
/// any number of concurrent users of the handle itself.
pub struct FactorCache {
    path: PathBuf,
    read_only: bool,
    inner: Mutex<Inner>,
}

impl FactorCache {
    /// Opens (creating if missing) for read-write; takes the writer lock.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        Self::open_impl(path.as_ref(), false)
    }

    /// Opens for reading only; no lock is taken.
    pub fn open_read_only(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        Self::open_impl(path.as_ref(), true)
    }

    fn open_impl(path: &Path, read_only: bool) -> Result<Self, CacheError> {
        let file = OpenOptions::new()
            .read(true)
            .write(!read_only)
            .create(!read_only)
            .open(path)?;
        if !read_only {
            let rc = unsafe { libc::flock(file.as_raw_fd(), libc::LOCK_EX | libc::LOCK_NB) };
            if rc != 0 {
                return Err(CacheError::Locked(path.display().to_string()));
            }
        }
        let mut records = BTreeMap::new();
        let mut lines_on_disk = 0u64;
        let mut quarantined = Vec::new();
        for line in BufReader::new(&file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            lines_on_disk += 1;
            match serde_json::from_str::<FactorCacheRecord>(&line)
                .map_err(|e| CacheError::BadRecord(e.to_string()))
                .and_then(|rec| rec.to_factored().map(|_| rec))
            {
                Ok(rec) => {
                    let keep = records
                        .get(&rec.n)
                        .map_or(true, |old| rec.supersedes(old));
                    if keep {
                        records.insert(rec.n, rec);
                    }
                }
                Err(why) => {
                    eprintln!("warning: skipping corrupt cache line ({why})");
                    quarantined.push(line);
                }
            }
        }
        if !quarantined.is_empty() {
            let qpath = quarantine_path(path);
            match OpenOptions::new().create(true).append(true).open(&qpath) {
                Ok(mut q) => {
                    for line in &quarantined {
                        let _ = writeln!(q, "{line}");
                    }
                    eprintln!(
                        "warning: {} corrupt line(s) moved to {}",
                        quarantined.len(),
                        qpath.display()
                    );
                }
                Err(e) => eprintln!("warning: could not write quarantine file: {e}"),
            }
        }
        let cache = FactorCache {
            path: path.to_path_buf(),
            read_only,
            inner: Mutex::new(Inner {
                file,
                records,
                lines_on_disk,
            }),
        };
        if !read_only {
            let needs_compaction = {
                let inner = cache.inner.lock().unwrap();
                inner.lines_on_disk > 2 * inner.records.len() as u64 + 16
                    || !quarantined.is_empty()
            };
            if needs_compaction {
                cache.compact()?;
            }
        }
        Ok(cache)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Best-known record for `n`.
    pub fn get(&self, n: u64) -> Option<FactorCacheRecord> {
        self.inner.lock().unwrap().records.get(&n).cloned()
    }

    /// Stores `record` under the replacement rule, appending durably when it
    /// wins. Returns whether it became the record of note.
    pub fn upsert(&self, record: FactorCacheRecord) -> Result<bool, CacheError> {
        if self.read_only {
            return Err(CacheError::Locked(format!(
                "{} (opened read-only)",
                self.path.display()
            )));
        }
        record.to_factored()?; // reject anything that fails reconstruction
        let mut inner = self.inner.lock().unwrap();
        let keep = inner
            .records
            .get(&record.n)
            .map_or(true, |old| record.supersedes(old));
        if !keep {
            return Ok(false);
        }
        let mut line = serde_json::to_string(&record)
            .map_err(|e| CacheError::BadRecord(e.to_string()))?;
        line.push('\n');
        inner.file.write_all(line.as_bytes())?;
        inner.file.sync_data()?;
        inner.lines_on_disk += 1;
        inner.records.insert(record.n, record);
        Ok(true)
    }

    /// All records, ascending by `n`.
    pub fn records(&self) -> Vec<FactorCacheRecord> {
        self.inner.lock().unwrap().records.values().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rewrites the file with exactly one line per `n` (atomic via rename).
    pub fn compact(&self) -> Result<(), CacheError> {
        if self.read_only {
            return Ok(());
        }
        let mut inner = self.inner.lock().unwrap();
        let tmp_path = self.path.with_extension("jsonl.tmp");
        {
            let mut tmp = File::create(&tmp_path)?;
            for rec in inner.records.values() {
                let line = serde_json::to_string(rec)
                    .map_err(|e| CacheError::BadRecord(e.to_string()))?;
                writeln!(tmp, "{line}")?;
            }
            tmp.sync_data()?;
        }
        fs::rename(&tmp_path, &self.path)?;
        // reopen so the handle points at the new inode and keeps its lock
        let file = OpenOptions::new().read(true).write(true).open(&self.path)?;
        let rc = unsafe { libc::flock(file.as_raw_fd(), libc::LOCK_EX | libc::LOCK_NB) };
        if rc != 0 {
            return Err(CacheError::Locked(self.path.display().to_string()));
        }
        inner.lines_on_disk = inner.records.len() as u64;
        inner.file = file;
        Ok(())
    }
}

fn quarantine_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_os_string();
    os.push(".quarantine");
    PathBuf::from(os)
}
