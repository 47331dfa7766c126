//! Version-stamped on-disk cache of computed tables.

use crate::error::{Error, Result};
use crate::symfunc::HtildeTable;
use std::fs;
use std::path::{Path, PathBuf};

/// Bumped whenever a serialized format changes.
pub const CACHE_VERSION: &str = "qtatoms-cache-v2";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Htilde,
    Transition,
    ModuleBasis,
}

impl TableKind {
    fn name(&self) -> &'static str {
        match self {
            TableKind::Htilde => "htilde",
            TableKind::Transition => "transition",
            TableKind::ModuleBasis => "module_basis",
        }
    }
}

pub fn path_for(dir: &Path, kind: TableKind, key: &str) -> PathBuf {
    dir.join(format!("{}_{}.txt", kind.name(), key))
}

/// Writes `body` under a version stamp.
pub fn store(dir: &Path, kind: TableKind, key: &str, body: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = path_for(dir, kind, key);
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, format!("{CACHE_VERSION} {} {key}\n{body}", kind.name()))?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

/// Returns the stored body, `None` when missing, an error when the stamp differs.
pub fn load(dir: &Path, kind: TableKind, key: &str) -> Result<Option<String>> {
    let path = path_for(dir, kind, key);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let (header, body) = text.split_once('\n').unwrap_or((&text, ""));
    let want = format!("{CACHE_VERSION} {} {key}", kind.name());
    if header.trim() != want {
        return Err(Error::Parse(format!("cache stamp mismatch in {}: {header:?}", path.display())));
    }
    Ok(Some(body.to_string()))
}

/// Loads the `H̃` table of degree `n`, rebuilding (with a warning) when the
/// cached copy is missing, stale or corrupt.
pub fn load_or_build_htilde(
    dir: &Path,
    n: usize,
    build: impl FnOnce() -> Result<HtildeTable>,
) -> Result<HtildeTable> {
    let key = n.to_string();
    match load(dir, TableKind::Htilde, &key) {
        Ok(Some(body)) => match HtildeTable::from_text(&body) {
            Ok(t) if t.n == n => return Ok(t),
            Ok(_) => eprintln!("warning: cached H̃ table {key} has the wrong degree; rebuilding"),
            Err(e) => eprintln!("warning: cached H̃ table {key} unusable ({e}); rebuilding"),
        },
        Ok(None) => {}
        Err(e) => eprintln!("warning: {e}; rebuilding"),
    }
    let table = build()?;
    if let Err(e) = store(dir, TableKind::Htilde, &key, &table.to_text()) {
        eprintln!("warning: could not store H̃ table {key}: {e}");
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(load(dir.path(), TableKind::Transition, "3").unwrap(), None);
        store(dir.path(), TableKind::Transition, "3", "abc\n").unwrap();
        assert_eq!(load(dir.path(), TableKind::Transition, "3").unwrap().as_deref(), Some("abc\n"));
        fs::write(path_for(dir.path(), TableKind::Transition, "4"), "old-version transition 4\nabc").unwrap();
        assert!(load(dir.path(), TableKind::Transition, "4").is_err());
    }

    #[test]
    fn htilde_round_trip_and_rebuild() {
        let dir = tempfile::tempdir().unwrap();
        let fresh = crate::symfunc::htilde_table(4).unwrap();
        let built = load_or_build_htilde(dir.path(), 4, || HtildeTable::from_text(&fresh.to_text())).unwrap();
        let again = load_or_build_htilde(dir.path(), 4, || panic!("should load from cache")).unwrap();
        assert_eq!(built.matrix, again.matrix);
        fs::write(path_for(dir.path(), TableKind::Htilde, "4"), format!("{CACHE_VERSION} htilde 4\nnonsense")).unwrap();
        let rebuilt = load_or_build_htilde(dir.path(), 4, || HtildeTable::from_text(&fresh.to_text())).unwrap();
        assert_eq!(rebuilt.matrix, fresh.matrix);
    }
}
