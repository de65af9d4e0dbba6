//! Content-addressed on-disk cache of enumerated disk sets.
//!
//! A record is addressed by `(p, q, side, max_weight, model version)` and
//! stores the chosen normal representative of every disk; loading rebuilds
//! the classes from those weights.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::diagram::{HandleSide, HeegaardDiagram};
use super::disks::{enumerate_both, DiskClass, DiskSet};
use crate::error::{Error, Result};
use crate::surface::normal::NormalCurve;
use crate::surface::triangulation::{EDGE_COUNT, MODEL_VERSION};
use crate::surface::Curve;

pub const CACHE_FORMAT: &str = "lensphere-disks/1";

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "LENSPHERE_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub format: String,
    pub p: u32,
    pub q: u32,
    pub side: HandleSide,
    pub max_weight: u32,
    pub model_version: String,
    pub disks: Vec<[u32; EDGE_COUNT]>,
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

pub fn cache_key(p: u32, q: u32, side: HandleSide, max_weight: u32, model_version: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}|p={}|q={}|side={}|max_weight={}|model={}", CACHE_FORMAT, p, q, side, max_weight, model_version));
    hex::encode(h.finalize())
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> DiskCache {
        DiskCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, d: &HeegaardDiagram, side: HandleSide, max_weight: u32) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(d.p(), d.q(), side, max_weight, MODEL_VERSION)))
    }

    /// The cached set, `None` when absent; a record that does not match its
    /// address is a [`Error::CacheMismatch`].
    pub fn load(&self, d: &HeegaardDiagram, side: HandleSide, max_weight: u32) -> Result<Option<DiskSet>> {
        let path = self.path(d, side, max_weight);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Io { path: path.display().to_string(), source: e }),
        };
        let mismatch = |why: String| Error::CacheMismatch(format!("{}: {}", path.display(), why));
        let rec: CacheRecord = serde_json::from_str(&text).map_err(|e| mismatch(e.to_string()))?;
        if rec.format != CACHE_FORMAT {
            return Err(mismatch(format!("format {:?}", rec.format)));
        }
        if rec.model_version != MODEL_VERSION {
            return Err(mismatch(format!("model version {:?}, expected {:?}", rec.model_version, MODEL_VERSION)));
        }
        if (rec.p, rec.q, rec.side, rec.max_weight) != (d.p(), d.q(), side, max_weight) {
            return Err(mismatch(format!("record is for L({},{}) {} at {}", rec.p, rec.q, rec.side, rec.max_weight)));
        }
        let mut disks = Vec::with_capacity(rec.disks.len());
        for w in rec.disks {
            let n = NormalCurve::new(w).map_err(|e| mismatch(e.to_string()))?;
            if n.max_weight() > max_weight {
                return Err(mismatch(format!("representative {:?} exceeds the budget", w)));
            }
            let curve = Curve::from_normal(&n).map_err(|e| mismatch(e.to_string()))?;
            disks.push(DiskClass::from_curve(d, side, curve, Some(n.max_weight())).map_err(|e| mismatch(e.to_string()))?);
        }
        Ok(Some(DiskSet::from_disks(side, max_weight, disks)))
    }

    pub fn store(&self, d: &HeegaardDiagram, set: &DiskSet) -> Result<PathBuf> {
        let io = |path: &Path, e| Error::Io { path: path.display().to_string(), source: e };
        fs::create_dir_all(&self.dir).map_err(|e| io(&self.dir, e))?;
        let rec = CacheRecord {
            format: CACHE_FORMAT.into(),
            p: d.p(),
            q: d.q(),
            side: set.side,
            max_weight: set.max_weight,
            model_version: MODEL_VERSION.into(),
            disks: set.disks().iter().map(|c| *c.normal().expect("enumerated disks are normal").weights()).collect(),
        };
        let path = self.path(d, set.side, set.max_weight);
        // write then rename so readers never see a partial record
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&rec)?).map_err(|e| io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| io(&path, e))?;
        Ok(path)
    }

    /// Both disk sets, from the cache when present, otherwise enumerated and stored.
    pub fn load_or_enumerate(&self, d: &HeegaardDiagram, max_weight: u32) -> Result<[DiskSet; 2]> {
        if let (Some(v), Some(w)) = (self.load(d, HandleSide::V, max_weight)?, self.load(d, HandleSide::W, max_weight)?) {
            log::info!("disk sets for L({},{}) at {} loaded from {}", d.p(), d.q(), max_weight, self.dir.display());
            return Ok([v, w]);
        }
        let sets = enumerate_both(d, max_weight);
        for s in &sets {
            self.store(d, s)?;
        }
        Ok(sets)
    }
}
