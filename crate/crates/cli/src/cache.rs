//! Hilbert bases on disk, one JSON file per clutter, named by the SHA-256 of
//! the canonical clutter string.
//!
//! Bases are stored in canonical coordinates, so isomorphic inputs share an
//! entry, and are relabeled on the way out.

use std::path::{Path, PathBuf};

use reeskit_core::clutter::{canonical_form, Clutter, CANONICAL_VERTEX_LIMIT};
use reeskit_core::lattice::{rees_hilbert_basis, symbolic_rees_generators, HilbertBasis};
use reeskit_core::polyhedra::{canonical_sort, rees_cone_facets, simis_cone};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cone {
    Rees,
    Simis,
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    cone: Cone,
    elements: Vec<Vec<i64>>,
}

#[derive(Debug, Clone)]
pub struct HilbertCache {
    dir: Option<PathBuf>,
}

fn compute(c: &Clutter, cone: Cone) -> CliResult<HilbertBasis> {
    Ok(match cone {
        Cone::Rees => rees_hilbert_basis(c)?,
        Cone::Simis => symbolic_rees_generators(c)?,
    })
}

fn facets(c: &Clutter, cone: Cone) -> CliResult<Vec<Vec<i64>>> {
    Ok(match cone {
        Cone::Rees => rees_cone_facets(c)?.all_normals(),
        Cone::Simis => simis_cone(c).all_normals(),
    })
}

impl HilbertCache {
    /// `dir` if given, else `$REESKIT_CACHE`, else no caching.
    pub fn new(dir: Option<PathBuf>) -> Self {
        let dir = dir.or_else(|| std::env::var_os("REESKIT_CACHE").map(PathBuf::from));
        HilbertCache { dir }
    }

    pub fn disabled() -> Self {
        HilbertCache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Canonical key and `perm[old] = new`. Past the canonical-form limit the
    /// clutter is keyed as given.
    fn key(c: &Clutter) -> CliResult<(String, Clutter, Vec<usize>)> {
        if c.n() <= CANONICAL_VERTEX_LIMIT {
            let f = canonical_form(c)?;
            Ok((f.key, f.clutter, f.perm))
        } else {
            let key = format!("raw:{}", crate::io::emit_clutter(c));
            Ok((key, c.clone(), (0..c.n()).collect()))
        }
    }

    fn path(dir: &Path, key: &str, cone: Cone) -> PathBuf {
        let mut h = Sha256::new();
        h.update(key.as_bytes());
        let name = match cone {
            Cone::Rees => "rees",
            Cone::Simis => "simis",
        };
        dir.join(format!("{name}-{}.json", hex::encode(h.finalize())))
    }

    /// The Hilbert basis of the Rees or Simis cone of `c`, from the cache when
    /// present. Returns the basis and whether it came from disk.
    pub fn get(&self, c: &Clutter, cone: Cone) -> CliResult<(HilbertBasis, bool)> {
        let Some(dir) = &self.dir else {
            return Ok((compute(c, cone)?, false));
        };
        let (key, canon, perm) = Self::key(c)?;
        let path = Self::path(dir, &key, cone);
        let stored = std::fs::read_to_string(&path)
            .ok()
            .and_then(|t| serde_json::from_str::<Entry>(&t).ok())
            .filter(|e| e.key == key && e.cone == cone);
        let (canonical_elements, hit) = match stored {
            Some(e) => (e.elements, true),
            None => {
                let elements = compute(&canon, cone)?.elements;
                let entry = Entry { key, cone, elements: elements.clone() };
                // A cache that cannot be written is only a missed speedup.
                if std::fs::create_dir_all(dir).is_ok() {
                    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
                    let body = serde_json::to_string(&entry).expect("entry serializes");
                    if std::fs::write(&tmp, body).is_ok() {
                        let _ = std::fs::rename(&tmp, &path);
                    }
                }
                (elements, false)
            }
        };
        let n = c.n();
        let mut elements: Vec<Vec<i64>> = canonical_elements
            .iter()
            .map(|y| {
                let mut x: Vec<i64> = (0..n).map(|i| y[perm[i]]).collect();
                x.push(y[n]);
                x
            })
            .collect();
        canonical_sort(&mut elements);
        Ok((HilbertBasis { dim: n + 1, elements, facets: facets(c, cone)? }, hit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, edges: &[&[usize]]) -> Clutter {
        let e: Vec<Vec<usize>> = edges.iter().map(|e| e.iter().map(|v| v - 1).collect()).collect();
        Clutter::new(n, &e).unwrap()
    }

    #[test]
    fn cached_equals_fresh() {
        let dir = tempfile::tempdir().unwrap();
        let cache = HilbertCache::new(Some(dir.path().to_path_buf()));
        let q6 = c(6, &[&[1, 2, 5], &[1, 3, 4], &[2, 3, 6], &[4, 5, 6]]);
        // an isomorphic copy shares the entry
        let q6b = c(6, &[&[2, 1, 6], &[2, 3, 4], &[1, 3, 5], &[4, 5, 6]]);
        for cone in [Cone::Rees, Cone::Simis] {
            let (first, hit) = cache.get(&q6, cone).unwrap();
            assert!(!hit);
            assert_eq!(first, compute(&q6, cone).unwrap());
            let (second, hit) = cache.get(&q6b, cone).unwrap();
            assert!(hit);
            assert_eq!(second, compute(&q6b, cone).unwrap());
        }
    }

    #[test]
    fn corrupt_entries_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = HilbertCache::new(Some(dir.path().to_path_buf()));
        let p3 = c(3, &[&[1, 2], &[2, 3]]);
        cache.get(&p3, Cone::Rees).unwrap();
        for f in std::fs::read_dir(dir.path()).unwrap() {
            std::fs::write(f.unwrap().path(), "not json").unwrap();
        }
        let (hb, hit) = cache.get(&p3, Cone::Rees).unwrap();
        assert!(!hit);
        assert_eq!(hb, compute(&p3, Cone::Rees).unwrap());
    }
}
