//! Run configuration, JSON envelopes and atomic file output.

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use tricolor::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct InputFile {
    pub path: String,
    /// FNV-1a of the file bytes, hex.
    pub digest: String,
}

/// Everything that determines a run's output. The worker count is left out
/// on purpose: results do not depend on it.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub inputs: BTreeMap<&'static str, InputFile>,
    pub seed: Option<u64>,
    pub budgets: BTreeMap<&'static str, Value>,
    pub mode: Option<String>,
    pub params: BTreeMap<&'static str, Value>,
    pub output: Option<String>,
}

impl RunConfig {
    pub fn new(command: &'static str, output: Option<&Path>) -> Self {
        RunConfig {
            command,
            inputs: BTreeMap::new(),
            seed: None,
            budgets: BTreeMap::new(),
            mode: None,
            params: BTreeMap::new(),
            output: output.map(|p| p.display().to_string()),
        }
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.seed = Some(seed);
        self
    }

    pub fn mode(&mut self, mode: impl Into<String>) -> &mut Self {
        self.mode = Some(mode.into());
        self
    }

    pub fn budget(&mut self, name: &'static str, v: impl Serialize) -> &mut Self {
        self.budgets.insert(name, to_value(v));
        self
    }

    pub fn param(&mut self, name: &'static str, v: impl Serialize) -> &mut Self {
        self.params.insert(name, to_value(v));
        self
    }

    /// Reads an input file and records its path and digest.
    pub fn read(&mut self, role: &'static str, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        self.inputs.insert(
            role,
            InputFile {
                path: path.display().to_string(),
                digest: format!("{:016x}", fnv1a(text.as_bytes())),
            },
        );
        Ok(text)
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    format_version: u32,
    config: &'a RunConfig,
    result: &'a T,
}

/// Writes the artifact to `config.output`, or to stdout when unset.
pub fn emit<T: Serialize>(config: &RunConfig, result: &T) -> Result<()> {
    let env = Envelope {
        format_version: FORMAT_VERSION,
        config,
        result,
    };
    let mut text = serde_json::to_string_pretty(&env)?;
    text.push('\n');
    match &config.output {
        Some(p) => write_atomic(Path::new(p), &text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Text formats carry the envelope as `#` comment lines ahead of the body.
pub fn text_with_header(config: &RunConfig, body: &str) -> Result<String> {
    Ok(format!(
        "# format_version {FORMAT_VERSION}\n# config {}\n{body}",
        serde_json::to_string(config)?
    ))
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Write to a sibling temporary file, then rename over the target.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidInput(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp: PathBuf = path.with_file_name(tmp_name);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}
