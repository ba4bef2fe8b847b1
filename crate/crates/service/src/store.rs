//! Flat-file persistence: one JSON document per session and one per front.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use paretoscope_core::{export_front, import_front_json, ExportFormat, Front};

use crate::session::SessionState;

#[derive(Debug, Clone)]
pub struct Store {
    root: PathBuf,
}

impl Store {
    pub fn open(root: impl Into<PathBuf>) -> io::Result<Self> {
        let root = root.into();
        fs::create_dir_all(root.join("sessions"))?;
        fs::create_dir_all(root.join("fronts"))?;
        Ok(Self { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn session_path(&self, id: &str) -> PathBuf {
        self.root.join("sessions").join(format!("{id}.json"))
    }

    fn front_path(&self, id: &str) -> PathBuf {
        self.root.join("fronts").join(format!("{id}.json"))
    }

    pub fn save_session(&self, state: &SessionState) -> io::Result<()> {
        let mut bytes = serde_json::to_vec_pretty(state).map_err(io::Error::other)?;
        bytes.push(b'\n');
        write_atomic(&self.session_path(&state.id), &bytes)
    }

    /// `None` if no such session exists.
    pub fn load_session(&self, id: &str) -> io::Result<Option<SessionState>> {
        if !valid_id(id) {
            return Ok(None);
        }
        match fs::read(self.session_path(id)) {
            Ok(bytes) => serde_json::from_slice(&bytes).map(Some).map_err(io::Error::other),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn load_sessions(&self) -> io::Result<Vec<SessionState>> {
        let mut out = Vec::new();
        for entry in fs::read_dir(self.root.join("sessions"))? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let bytes = fs::read(&path)?;
            match serde_json::from_slice(&bytes) {
                Ok(s) => out.push(s),
                Err(e) => tracing::warn!(path = %path.display(), error = %e, "skipping unreadable session"),
            }
        }
        out.sort_by(|a: &SessionState, b| a.id.cmp(&b.id));
        Ok(out)
    }

    pub fn save_front(&self, id: &str, front: &Front) -> io::Result<()> {
        let bytes = export_front(front, ExportFormat::Json).map_err(io::Error::other)?;
        write_atomic(&self.front_path(id), &bytes)
    }

    /// `None` if no such front exists.
    pub fn load_front(&self, id: &str) -> io::Result<Option<Front>> {
        if !valid_id(id) {
            return Ok(None);
        }
        match fs::read(self.front_path(id)) {
            Ok(bytes) => import_front_json(&bytes).map(Some).map_err(io::Error::other),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// Ids are generated by the service; anything else cannot name a file.
pub fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-')
}

fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(tmp, path)
}
