use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};

use multikat::enumeration::EnumerationCache;

/// Hom-categories stored as `<key>.json` files. Writes go through a
/// temporary file in the same directory and a rename.
pub struct FsCache {
    dir: PathBuf,
    warned: AtomicBool,
}

impl FsCache {
    /// Opens `dir`, creating it if needed. Returns `None` with a warning on
    /// stderr when the directory cannot be written.
    pub fn open(dir: &Path) -> Option<FsCache> {
        let usable = fs::create_dir_all(dir).is_ok() && tempfile::NamedTempFile::new_in(dir).is_ok();
        if !usable {
            eprintln!("warning: cache directory {} is not writable; caching disabled", dir.display());
            return None;
        }
        Some(FsCache {
            dir: dir.to_path_buf(),
            warned: AtomicBool::new(false),
        })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn write(&self, key: &str, bytes: &[u8]) -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        readable(tmp.as_file())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

/// Temporary files start out private; results are meant to be shared.
pub fn readable(file: &fs::File) -> std::io::Result<()> {
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        file.set_permissions(fs::Permissions::from_mode(0o644))?;
    }
    #[cfg(not(unix))]
    let _ = file;
    Ok(())
}

impl EnumerationCache for FsCache {
    fn load(&self, key: &str) -> Option<Vec<u8>> {
        fs::read(self.path(key)).ok()
    }

    fn store(&self, key: &str, bytes: &[u8]) {
        if let Err(e) = self.write(key, bytes) {
            if !self.warned.swap(true, Ordering::Relaxed) {
                eprintln!("warning: could not write cache entry: {e}");
            }
        }
    }

    fn corrupt(&self, key: &str) {
        eprintln!("warning: cache entry {key} is corrupt; recomputing");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FsCache::open(dir.path()).unwrap();
        assert_eq!(cache.load("k"), None);
        cache.store("k", b"abc");
        assert_eq!(cache.load("k").as_deref(), Some(&b"abc"[..]));
        cache.store("k", b"xyz");
        assert_eq!(cache.load("k").as_deref(), Some(&b"xyz"[..]));
    }
}
