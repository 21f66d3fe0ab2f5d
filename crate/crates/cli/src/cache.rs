//! Append-only JSON-lines cache of verdict records.
//!
//! A hit is never trusted as stored: transversals and witnesses are checked
//! against the group, and shortcut or oracle answers are recomputed and
//! compared. A hit that fails is recomputed and appended again.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use perfcode::perfect::{is_witness, validate_transversal};
use perfcode::Subgroup;

use crate::dsl::Resolved;
use crate::record::{EvidenceRecord, VerdictRecord};
use crate::run::{decide, Caps, CliResult, Method};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub group: String,
    pub subgroup: String,
    pub method: String,
    pub budget: u64,
    pub max_order: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    key: CacheKey,
    record: VerdictRecord,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub rejected: usize,
}

pub struct Cache {
    path: PathBuf,
    entries: Mutex<HashMap<CacheKey, VerdictRecord>>,
    stats: Mutex<CacheStats>,
}

impl Cache {
    /// Loads `path` if it exists; unreadable lines are skipped. Later lines
    /// override earlier ones.
    pub fn open(path: &Path) -> CliResult<Self> {
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                if let Ok(l) = serde_json::from_str::<Line>(&line?) {
                    entries.insert(l.key, l.record);
                }
            }
        }
        Ok(Cache {
            path: path.to_path_buf(),
            entries: Mutex::new(entries),
            stats: Mutex::default(),
        })
    }

    pub fn stats(&self) -> CacheStats {
        *self.stats.lock().expect("cache stats lock")
    }

    fn bump(&self, f: impl FnOnce(&mut CacheStats)) {
        f(&mut self.stats.lock().expect("cache stats lock"));
    }

    pub fn get_or_compute(
        &self,
        spec: &str,
        r: &Resolved,
        g: &Subgroup,
        method: Method,
        caps: Caps,
        timing: bool,
    ) -> CliResult<VerdictRecord> {
        let key = CacheKey {
            group: spec.to_string(),
            subgroup: r.description.clone(),
            method: method.name().to_string(),
            budget: caps.budget,
            max_order: caps.max_order,
        };
        let stored = self.entries.lock().expect("cache lock").get(&key).cloned();
        if let Some(rec) = stored {
            if self.still_valid(&rec, r, g, method, caps)? {
                self.bump(|s| s.hits += 1);
                let mut rec = rec;
                rec.wall_time = None;
                return Ok(rec);
            }
            self.bump(|s| s.rejected += 1);
        } else {
            self.bump(|s| s.misses += 1);
        }
        let fresh = decide(spec, r, g, method, caps, timing)?;
        let mut stored = fresh.clone();
        stored.wall_time = None;
        self.append(&key, &stored)?;
        Ok(fresh)
    }

    fn still_valid(
        &self,
        rec: &VerdictRecord,
        r: &Resolved,
        g: &Subgroup,
        method: Method,
        caps: Caps,
    ) -> CliResult<bool> {
        let h = &r.subgroup;
        let amb = g.ambient();
        let gens: Vec<Vec<u32>> = amb
            .generators()
            .iter()
            .map(|p| p.images().to_vec())
            .collect();
        if rec.group_generators != gens
            || rec.group_order != g.order()
            || rec.subgroup_order != h.order()
        {
            return Ok(false);
        }
        let in_group = |x: u32| (x as usize) < amb.order();
        Ok(match &rec.evidence {
            EvidenceRecord::Transversal { elements } => {
                rec.is_perfect_code
                    && elements.iter().all(|&x| in_group(x))
                    && validate_transversal(g, h, elements)?
            }
            EvidenceRecord::Witness { element, images } => {
                !rec.is_perfect_code
                    && in_group(*element)
                    && amb.element(*element) == images.as_slice()
                    && is_witness(g, h, *element)?
            }
            EvidenceRecord::Shortcut { .. } | EvidenceRecord::Oracle => {
                decide(&rec.group, r, g, method, caps, false)?.is_perfect_code
                    == rec.is_perfect_code
            }
        })
    }

    fn append(&self, key: &CacheKey, rec: &VerdictRecord) -> CliResult<()> {
        let line = serde_json::to_string(&Line {
            key: key.clone(),
            record: rec.clone(),
        })
        .expect("cache lines serialize");
        let mut entries = self.entries.lock().expect("cache lock");
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(f, "{line}")?;
        entries.insert(key.clone(), rec.clone());
        Ok(())
    }
}
