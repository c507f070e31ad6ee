use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const MANIFEST_SCHEMA: &str = "lcsim.manifest/1";

/// Metadata written next to every run's output.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema: &'static str,
    pub command_line: Vec<String>,
    pub seed: Option<u64>,
    pub generator: &'static str,
    pub threads: usize,
    pub parameters: serde_json::Value,
    pub wall_time_secs: f64,
    pub output_sha256: String,
}

/// Primary output sink. Everything written is hashed for the manifest and
/// flushed eagerly so long scans can be followed while they run.
pub struct Output {
    sink: Box<dyn Write + Send>,
    hasher: Sha256,
    path: Option<PathBuf>,
}

impl Output {
    pub fn open(path: Option<&Path>) -> Result<Self> {
        let sink: Box<dyn Write + Send> = match path {
            Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
            None => Box::new(io::stdout()),
        };
        Ok(Output { sink, hasher: Sha256::new(), path: path.map(Path::to_path_buf) })
    }

    pub fn line(&mut self, text: &str) -> Result<()> {
        self.hasher.update(text.as_bytes());
        self.hasher.update(b"\n");
        writeln!(self.sink, "{text}")?;
        self.sink.flush()?;
        Ok(())
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn finish(mut self) -> Result<String> {
        self.sink.flush()?;
        Ok(hex::encode(self.hasher.finalize()))
    }
}

pub fn write_manifest(manifest: &RunManifest, explicit: Option<&Path>, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(manifest)?;
    let target = explicit.map(Path::to_path_buf).or_else(|| {
        output.map(|p| {
            let mut name = p.as_os_str().to_owned();
            name.push(".manifest.json");
            PathBuf::from(name)
        })
    });
    match target {
        Some(path) => {
            std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))
        }
        None => {
            eprintln!("{}", serde_json::to_string(manifest)?);
            Ok(())
        }
    }
}
