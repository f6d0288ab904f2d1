//! Advisory locking for cache files.
//!
//! A lock is a sibling `<cache>.lock` file created with `O_EXCL`; holding
//! it means this process may read or write the cache.  The lock file
//! records the owning process id to make stale locks diagnosable.  Locks
//! are advisory: they serialize the CLI's own commands, which are defined
//! to be non-reentrant on a shared cache path.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};

/// Held for the lifetime of a cache operation; releasing is automatic.
pub struct CacheLock {
    path: PathBuf,
}

impl CacheLock {
    /// Acquires the advisory lock for `cache`, failing immediately when
    /// another process holds it.
    pub fn acquire(cache: &Path) -> anyhow::Result<CacheLock> {
        let mut name = cache.as_os_str().to_os_string();
        name.push(".lock");
        let path = PathBuf::from(name);
        match std::fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&path)
        {
            Ok(mut file) => {
                let _ = writeln!(file, "{}", std::process::id());
                Ok(CacheLock { path })
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Err(anyhow!(
                "cache {} is locked by another process (remove {} if stale)",
                cache.display(),
                path.display()
            )),
            Err(e) => {
                Err(e).with_context(|| format!("creating lock file {}", path.display()))
            }
        }
    }
}

impl Drop for CacheLock {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.path);
    }
}
