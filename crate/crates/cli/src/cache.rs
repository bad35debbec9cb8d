//! On-disk result cache: `<dir>/<fingerprint hex>` holds one record line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Cache, CliError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(format!("creating cache {}", dir.display()), e))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, fingerprint: &str) -> PathBuf {
        self.dir.join(fingerprint)
    }

    pub fn get(&self, fingerprint: &str) -> Result<Option<String>, CliError> {
        match fs::read_to_string(self.path(fingerprint)) {
            Ok(s) => Ok(Some(s.trim_end_matches('\n').to_owned())),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(CliError::io(format!("reading cache entry {fingerprint}"), e)),
        }
    }

    /// Write to a temporary file in the same directory, then rename.
    pub fn put(&self, fingerprint: &str, line: &str) -> Result<(), CliError> {
        let ctx = || format!("writing cache entry {fingerprint}");
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| CliError::io(ctx(), e))?;
        tmp.write_all(line.as_bytes())
            .and_then(|_| tmp.write_all(b"\n"))
            .and_then(|_| tmp.as_file().sync_all())
            .map_err(|e| CliError::io(ctx(), e))?;
        tmp.persist(self.path(fingerprint)).map_err(|e| CliError::io(ctx(), e.error))?;
        Ok(())
    }
}
