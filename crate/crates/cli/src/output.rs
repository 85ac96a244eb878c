use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// 17 significant digits; `inf` / `-inf` / `nan` spelled out.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Comma-separated text with `#` comment lines and `\n` line endings.
#[derive(Debug, Default, Clone)]
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comment(&mut self, line: impl AsRef<str>) -> &mut Self {
        self.text.push_str("# ");
        self.text.push_str(line.as_ref());
        self.text.push('\n');
        self
    }

    pub fn header(&mut self, columns: &[&str]) -> &mut Self {
        self.text.push_str(&columns.join(","));
        self.text.push('\n');
        self
    }

    pub fn row<S: AsRef<str>>(&mut self, cells: impl IntoIterator<Item = S>) -> &mut Self {
        let mut first = true;
        for c in cells {
            if !first {
                self.text.push(',');
            }
            self.text.push_str(c.as_ref());
            first = false;
        }
        self.text.push('\n');
        self
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub argv: Vec<String>,
    pub flags: serde_json::Value,
    pub n: Vec<usize>,
    pub s: Option<f64>,
    pub r: Option<usize>,
    pub grid: Option<String>,
    pub function: Option<String>,
    pub image: Option<String>,
    pub outputs: Vec<String>,
    pub threads: usize,
    pub wall_clock_seconds: f64,
    pub status: String,
    pub exit_code: i32,
    pub error: Option<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, argv: Vec<String>) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            argv,
            flags: serde_json::Value::Null,
            n: Vec::new(),
            s: None,
            r: None,
            grid: None,
            function: None,
            image: None,
            outputs: Vec::new(),
            threads: 0,
            wall_clock_seconds: 0.0,
            status: "running".to_string(),
            exit_code: 0,
            error: None,
        }
    }

    pub fn file_name(subcommand: &str) -> String {
        format!("{subcommand}.manifest.json")
    }
}

/// Output directory plus the record of what has been written to it.
#[derive(Debug)]
pub struct Outputs {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Outputs {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into(), written: Vec::new() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn ensure_dir(&self) -> CliResult<()> {
        fs::create_dir_all(&self.dir).map_err(|e| CliError::io(&self.dir, e))
    }

    pub fn write(&mut self, name: &str, contents: impl AsRef<[u8]>) -> CliResult<PathBuf> {
        self.ensure_dir()?;
        let path = self.path(name);
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.written.push(path.clone());
        Ok(path)
    }

    /// Record a file produced by another writer (e.g. an image encoder).
    pub fn record(&mut self, path: PathBuf) {
        self.written.push(path);
    }

    pub fn prepare(&self) -> CliResult<()> {
        self.ensure_dir()
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    pub fn write_manifest(&self, manifest: &RunManifest) -> CliResult<PathBuf> {
        self.ensure_dir()?;
        let path = self.path(&RunManifest::file_name(&manifest.subcommand));
        let mut text = serde_json::to_string_pretty(manifest).map_err(|e| CliError::io(&path, e))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}
