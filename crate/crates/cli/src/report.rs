//! Plain-text reports. A report depends only on the command line and the
//! input bytes, so repeated runs produce identical output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
}

/// A file produced alongside the report, written only when `--dot` is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub digest: Option<String>,
    pub lines: Vec<String>,
    pub status: Status,
    pub artifacts: Vec<Artifact>,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            digest: None,
            lines: Vec::new(),
            status: Status::Ok,
            artifacts: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// A `key  value` row with the key padded to a fixed width.
    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key:<24}{value}"));
    }

    pub fn mismatch(&mut self) {
        self.status = Status::Mismatch;
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Mismatch => 1,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command);
        if let Some(d) = &self.digest {
            let _ = writeln!(out, "input sha256:{d}");
        }
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        for a in &self.artifacts {
            let _ = writeln!(out, "dot: {}", a.file_name);
        }
        let _ = writeln!(
            out,
            "outcome: {}",
            match self.status {
                Status::Ok => "ok",
                Status::Mismatch => "MISMATCH",
            }
        );
        out
    }

    /// Writes every artifact into `dir`, creating it if needed.
    pub fn write_artifacts(&self, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
        let io = |path: &Path, source| CliError::Write {
            path: path.display().to_string(),
            source,
        };
        fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        let mut written = Vec::new();
        for a in &self.artifacts {
            let path = dir.join(&a.file_name);
            fs::write(&path, &a.contents).map_err(|e| io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// File-system friendly form of a catalog or pattern name.
pub fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            '*' => 's',
            c if c.is_ascii_alphanumeric() || c == '_' || c == '-' => c,
            _ => '_',
        })
        .collect()
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

/// `i` in superscript digits.
pub fn superscript(i: usize) -> String {
    i.to_string()
        .chars()
        .map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize])
        .collect()
}
