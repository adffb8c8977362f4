//! On-disk cache of finite quotients, one JSON file per (family, level).
//!
//! Only the generator permutations are stored; loading rebuilds the element
//! numbering by the same breadth-first search, so a cached quotient is
//! element-for-element identical to a fresh one. Writes go to a temporary
//! file in the cache directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hlslab_core::groups::Perm;
use hlslab_core::{ApproximatedGroup, Caps, Family, FiniteQuotient};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, Result};

pub const QUOTIENT_FORMAT: &str = "hlslab-quotient/1";

/// Environment variable overriding the default cache directory.
pub const CACHE_ENV: &str = "HLSLAB_CACHE";

#[derive(Serialize, Deserialize)]
struct QuotientFile {
    format: String,
    family: String,
    level: String,
    degree: String,
    order: String,
    generators: Vec<Vec<String>>,
}

/// `$HLSLAB_CACHE`, else `$XDG_CACHE_HOME/hlslab`, else `~/.cache/hlslab`,
/// else `.hlslab-cache`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("hlslab");
    }
    if let Some(h) = std::env::var_os("HOME") {
        return PathBuf::from(h).join(".cache").join("hlslab");
    }
    PathBuf::from(".hlslab-cache")
}

#[derive(Clone, Debug)]
pub struct QuotientCache {
    dir: PathBuf,
}

impl QuotientCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        QuotientCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, family: Family, n: usize) -> PathBuf {
        self.dir.join(format!("{}-{n}.json", family.as_str()))
    }

    /// `Ok(None)` when no file exists.
    pub fn load(&self, family: Family, n: usize, caps: &Caps) -> Result<Option<FiniteQuotient>> {
        let path = self.path(family, n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(AppError::io(path, e)),
        };
        let ctx = path.display().to_string();
        let file: QuotientFile = serde_json::from_str(&text).map_err(|e| AppError::format(&ctx, e))?;
        if file.format != QUOTIENT_FORMAT || file.family != family.as_str() || file.level != n.to_string() {
            return Err(AppError::format(&ctx, "format tag, family or level does not match"));
        }
        let degree: usize = file.degree.parse().map_err(|e| AppError::format(&ctx, e))?;
        let gens = file
            .generators
            .iter()
            .map(|g| {
                let images = g
                    .iter()
                    .map(|s| s.parse::<u32>().map_err(|e| AppError::format(&ctx, e)))
                    .collect::<Result<Vec<_>>>()?;
                if images.len() != degree {
                    return Err(AppError::format(&ctx, "generator length differs from degree"));
                }
                Ok(Perm::from_images(images)?)
            })
            .collect::<Result<Vec<_>>>()?;
        if gens.len() != family.rank() {
            return Err(AppError::format(&ctx, "wrong number of generators"));
        }
        let q = FiniteQuotient::from_generators(gens, caps.fiber_order)?;
        if q.order().to_string() != file.order {
            return Err(AppError::format(&ctx, "stored order disagrees with the rebuilt group"));
        }
        Ok(Some(q))
    }

    pub fn store(&self, family: Family, n: usize, q: &FiniteQuotient) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| AppError::io(&self.dir, e))?;
        let file = QuotientFile {
            format: QUOTIENT_FORMAT.into(),
            family: family.as_str().into(),
            level: n.to_string(),
            degree: q.degree().to_string(),
            order: q.order().to_string(),
            generators: q
                .generators()
                .iter()
                .map(|g| g.images().iter().map(u32::to_string).collect())
                .collect(),
        };
        let text = serde_json::to_string(&file).map_err(|e| AppError::format("quotient cache", e))?;
        write_atomic(&self.path(family, n), text.as_bytes())
    }

    pub fn get_or_build(&self, family: Family, n: usize, caps: &Caps) -> Result<FiniteQuotient> {
        if let Some(q) = self.load(family, n, caps)? {
            return Ok(q);
        }
        let q = family.quotient(n, caps)?;
        self.store(family, n, &q)?;
        Ok(q)
    }

    /// Levels `1..=depth`, built in parallel on the current rayon pool.
    pub fn approximated_group(&self, family: Family, depth: usize, caps: &Caps) -> Result<ApproximatedGroup> {
        let levels = (1..=depth)
            .into_par_iter()
            .map(|n| self.get_or_build(family, n, caps))
            .collect::<Result<Vec<_>>>()?;
        Ok(ApproximatedGroup::from_levels(family, levels)?)
    }
}

/// Writes via a temporary file in the same directory and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| AppError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| AppError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| AppError::io(path, e.error))?;
    Ok(())
}
