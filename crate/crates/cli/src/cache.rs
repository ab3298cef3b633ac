//! On-disk cache of structure-constant tables.
//!
//! Entries are keyed by `sha256(matrix, H, engine version)`. A loaded entry is
//! used only if it matches the requested matrix and cutoff and passes the spot
//! re-derivation; otherwise it is rebuilt and replaced.

use std::io::Write;
use std::path::{Path, PathBuf};

use minind_core::cartan::CartanDatum;
use minind_core::gla::{build_graded_lie, tables, GradedLie};
use minind_core::{Error, Result, ENGINE_VERSION};
use sha2::{Digest, Sha256};

/// How a cached lookup was satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    Rebuilt,
}

pub fn cache_key(datum: &CartanDatum, height: usize) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_string(datum.matrix()).expect("matrices serialize"));
    h.update(b"\n");
    h.update(height.to_string());
    h.update(b"\n");
    h.update(ENGINE_VERSION);
    hex::encode(h.finalize())
}

pub fn entry_path(dir: &Path, datum: &CartanDatum, height: usize) -> PathBuf {
    dir.join(format!("{}.json", cache_key(datum, height)))
}

fn try_load(path: &Path, datum: &CartanDatum, height: usize) -> Option<GradedLie> {
    let text = std::fs::read_to_string(path).ok()?;
    let g = tables::load(&text).ok()?;
    if g.datum().matrix() != datum.matrix() || g.cutoff() != height {
        return None;
    }
    tables::spot_check(&g).ok()?;
    Some(g)
}

fn store(dir: &Path, path: &Path, g: &GradedLie) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("cache write failed in {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(tables::dump(g).as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Builds the algebra, consulting `dir` when given.
pub fn graded_lie(datum: &CartanDatum, height: usize, dir: Option<&Path>) -> Result<(GradedLie, Option<CacheOutcome>)> {
    let Some(dir) = dir else {
        return Ok((build_graded_lie(datum, height)?, None));
    };
    let path = entry_path(dir, datum, height);
    let existed = path.exists();
    if let Some(g) = try_load(&path, datum, height) {
        return Ok((g, Some(CacheOutcome::Hit)));
    }
    let g = build_graded_lie(datum, height)?;
    store(dir, &path, &g)?;
    Ok((g, Some(if existed { CacheOutcome::Rebuilt } else { CacheOutcome::Miss })))
}
