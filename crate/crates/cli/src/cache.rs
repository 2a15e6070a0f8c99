//! On-disk series cache keyed by provenance hash.
//!
//! Records are written to a temporary file in the cache directory and renamed
//! into place, so concurrent writers never expose a partial record.

use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use isingser_core::{Provenance, Series, SeriesRecord};

use crate::error::{CliError, CliResult};

pub const CACHE_ENV: &str = "ISINGSER_CACHE";
const DEFAULT_DIR: &str = ".isingser-cache";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Use,
    Bypass,
    /// Recompute and require equality with any cached record.
    Audit,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    mode: Mode,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn from_env(mode: Mode) -> Cache {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Cache { dir, mode }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A current record for exactly this provenance, if present and readable.
    pub fn lookup(&self, prov: &Provenance) -> Option<Series> {
        let text = fs::read_to_string(self.path(&prov.key())).ok()?;
        let record: SeriesRecord = serde_json::from_str(&text).ok()?;
        (record.is_current() && record.provenance == *prov).then_some(record.series)
    }

    pub fn store(&self, prov: &Provenance, series: &Series) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let record = SeriesRecord::new(series.clone(), prov.clone());
        let text = serde_json::to_string(&record).map_err(std::io::Error::other)?;
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            record.key,
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, self.path(&record.key)).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }

    /// Cached series for `prov`, computing and storing it on a miss.
    pub fn get_or_compute<E>(
        &self,
        prov: &Provenance,
        compute: impl FnOnce() -> Result<Series, E>,
    ) -> CliResult<Series>
    where
        CliError: From<E>,
    {
        let cached = match self.mode {
            Mode::Bypass => None,
            _ => self.lookup(prov),
        };
        if self.mode == Mode::Use {
            if let Some(s) = cached {
                return Ok(s);
            }
        }
        let fresh = compute()?;
        match (self.mode, cached) {
            (Mode::Audit, Some(old)) if old != fresh => {
                return Err(CliError::Mismatch(format!(
                    "cache audit: record {} differs from recomputation",
                    self.path(&prov.key()).display()
                )));
            }
            (Mode::Audit, Some(_)) => eprintln!("cache audit: {} matches", prov.key()),
            (Mode::Audit, None) => eprintln!("cache audit: no record for {}", prov.key()),
            _ => {}
        }
        if self.mode != Mode::Bypass {
            if let Err(e) = self.store(prov, &fresh) {
                eprintln!("warning: cannot write cache in {}: {e}", self.dir.display());
            }
        }
        Ok(fresh)
    }
}
