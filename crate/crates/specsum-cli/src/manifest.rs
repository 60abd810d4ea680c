//! Every run that writes files also writes a manifest sidecar describing
//! exactly what produced them. The manifest hash covers the inputs that
//! determine the data: the command with its query arguments, the config
//! digest, the resolved seed, and the engine version. Output paths and
//! wall-clock time are recorded in the sidecar but deliberately left out of
//! the hash, so identical queries produce byte-identical tables no matter
//! where or when they are written.

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::CliError;

pub struct RunManifest {
    pub command: String,
    pub config_sha256: String,
    pub seed: u64,
    pub engine_version: &'static str,
    pub outputs: Vec<String>,
    pub manifest_hash: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Seed precedence: SPECSUM_SEED in the environment beats the config value,
/// which beats the default of 0.
pub fn resolve_seed(config_seed: Option<u64>) -> Result<u64, CliError> {
    match std::env::var("SPECSUM_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("SPECSUM_SEED is not an integer: {text:?}"))),
        Err(_) => Ok(config_seed.unwrap_or(0)),
    }
}

impl RunManifest {
    /// `command` is the canonical query string, subcommand plus arguments,
    /// e.g. "scan region=-1,8,-8,8 grid=21,21".
    pub fn new(command: &str, config_text: &str, seed: u64, outputs: Vec<String>) -> RunManifest {
        let config_sha256 = sha256_hex(config_text.as_bytes());
        let engine_version = env!("CARGO_PKG_VERSION");
        let canonical = format!("{command}\n{config_sha256}\n{seed}\n{engine_version}");
        let manifest_hash = sha256_hex(canonical.as_bytes());
        RunManifest {
            command: command.to_string(),
            config_sha256,
            seed,
            engine_version,
            outputs,
            manifest_hash,
        }
    }

    /// Write `<out>.manifest.toml` next to the named output file.
    pub fn write_sidecar(&self, out_path: &Path, wall_clock_ms: u128) -> Result<(), CliError> {
        let mut text = String::new();
        text.push_str(&format!("command = {:?}\n", self.command));
        text.push_str(&format!("config_sha256 = {:?}\n", self.config_sha256));
        text.push_str(&format!("manifest_hash = {:?}\n", self.manifest_hash));
        text.push_str(&format!("seed = {}\n", self.seed));
        text.push_str(&format!("engine_version = {:?}\n", self.engine_version));
        let outputs = self
            .outputs
            .iter()
            .map(|o| format!("{o:?}"))
            .collect::<Vec<_>>()
            .join(", ");
        text.push_str(&format!("outputs = [{outputs}]\n"));
        text.push_str(&format!("wall_clock_ms = {wall_clock_ms}\n"));
        let sidecar = sidecar_path(out_path);
        std::fs::write(sidecar, text)?;
        Ok(())
    }
}

pub fn sidecar_path(out_path: &Path) -> std::path::PathBuf {
    let mut name = out_path.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.toml");
    out_path.with_file_name(name)
}
