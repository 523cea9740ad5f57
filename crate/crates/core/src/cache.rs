//! Persistent basis cache: one JSON-lines file of canonical keys per
//! (family, d, sector, degree, max_edges), plus a content-hash index
//! guarding against stale or truncated files. All writes go through a
//! temporary file in the same directory followed by an atomic rename.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::chain::Key;
use crate::enumerate::{basis, Basis};
use crate::family::{FamilySpec, Sector};

const INDEX_FILE: &str = "index.json";

/// File stem for one cached basis.
fn stem(spec: &FamilySpec, degree: i64, max_edges: usize) -> String {
    let sector = match spec.sector {
        Sector::Surface { g, m } => format!("g{g}m{m}"),
        Sector::OneBoundary { g } => format!("g{g}"),
        Sector::Hairs { p, q } => format!("p{p}q{q}"),
    };
    format!(
        "{:?}_d{}_{}_deg{}_e{}",
        spec.family, spec.d, sector, degree, max_edges
    )
    .to_lowercase()
}

fn sha_hex(data: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(data);
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn load_index(dir: &Path) -> BTreeMap<String, String> {
    fs::read(dir.join(INDEX_FILE))
        .ok()
        .and_then(|b| serde_json::from_slice(&b).ok())
        .unwrap_or_default()
}

fn write_atomic(dir: &Path, name: &str, data: &[u8]) -> std::io::Result<()> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(data)?;
    tmp.persist(dir.join(name)).map_err(|e| e.error)?;
    Ok(())
}

fn store_index(dir: &Path, index: &BTreeMap<String, String>) -> std::io::Result<()> {
    let mut data = serde_json::to_vec_pretty(index).expect("serializable index");
    data.push(b'\n');
    write_atomic(dir, INDEX_FILE, &data)
}

fn encode(keys: &[Key]) -> Vec<u8> {
    let mut out = Vec::new();
    for k in keys {
        out.extend_from_slice(k);
        out.push(b'\n');
    }
    out
}

fn decode(data: &[u8]) -> Vec<Key> {
    data.split(|&b| b == b'\n')
        .filter(|l| !l.is_empty())
        .map(|l| l.to_vec())
        .collect()
}

/// Like [`basis`], but backed by a directory cache when one is given. A
/// hit requires both the file and a matching content hash in the index;
/// anything else falls back to recomputation and rewrites the entry.
pub fn cached_basis(
    dir: Option<&Path>,
    spec: &FamilySpec,
    degree: i64,
    max_edges: usize,
) -> Basis {
    let Some(dir) = dir else {
        return basis(spec, degree, max_edges);
    };
    let name = format!("{}.jsonl", stem(spec, degree, max_edges));
    if let Some(keys) = read_valid(dir, &name) {
        return Basis::from_keys(spec, degree, keys);
    }
    let b = basis(spec, degree, max_edges);
    if let Err(e) = store(dir, &name, &b.keys) {
        eprintln!("cache write failed for {name}: {e}");
    }
    b
}

fn read_valid(dir: &Path, name: &str) -> Option<Vec<Key>> {
    let data = fs::read(dir.join(name)).ok()?;
    let index = load_index(dir);
    if index.get(name)? != &sha_hex(&data) {
        return None;
    }
    Some(decode(&data))
}

fn store(dir: &Path, name: &str, keys: &[Key]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let data = encode(keys);
    write_atomic(dir, name, &data)?;
    let mut index = load_index(dir);
    index.insert(name.to_string(), sha_hex(&data));
    store_index(dir, &index)
}

/// Cache directory from the environment, if configured.
pub fn env_cache_dir() -> Option<PathBuf> {
    std::env::var_os("RGCX_CACHE_DIR").map(PathBuf::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;

    #[test]
    fn warm_reads_match_cold_runs() {
        let tmp = tempfile::tempdir().unwrap();
        let spec = FamilySpec::new(Family::Rgc, 2, Sector::Surface { g: 0, m: 3 }).unwrap();
        let cold = cached_basis(Some(tmp.path()), &spec, -1, 6);
        assert!(cold.dim() > 0);
        let name = format!("{}.jsonl", stem(&spec, -1, 6));
        assert!(tmp.path().join(&name).exists());
        let warm = cached_basis(Some(tmp.path()), &spec, -1, 6);
        assert_eq!(cold.keys, warm.keys);
        assert_eq!(cold.reps, warm.reps);
    }

    #[test]
    fn corrupted_files_are_recomputed() {
        let tmp = tempfile::tempdir().unwrap();
        let spec = FamilySpec::new(Family::Rgc, 2, Sector::Surface { g: 0, m: 3 }).unwrap();
        let cold = cached_basis(Some(tmp.path()), &spec, -1, 6);
        let name = format!("{}.jsonl", stem(&spec, -1, 6));
        fs::write(tmp.path().join(&name), b"garbage\n").unwrap();
        let again = cached_basis(Some(tmp.path()), &spec, -1, 6);
        assert_eq!(cold.keys, again.keys);
        // the rewrite restored a valid entry
        let reread = read_valid(tmp.path(), &name).unwrap();
        assert_eq!(reread, cold.keys);
    }
}
