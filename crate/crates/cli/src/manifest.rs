//! Run manifests: enough to re-run a command and check that it printed the
//! same bytes.

use std::collections::BTreeMap;
use std::path::Path;

use clap::Parser;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Cli, Command, Failure, Sink, EXIT_FOUND, EXIT_OK};

/// Manifest layout version; bump on incompatible changes.
pub const MANIFEST_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub manifest_version: u32,
    pub command: String,
    /// Arguments after the program name, without `--manifest`.
    pub parameters: Vec<String>,
    pub seed: u64,
    pub threads: usize,
    pub versions: BTreeMap<String, String>,
    pub inputs: Vec<InputDigest>,
    pub output_sha256: String,
    pub exit_code: u8,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Construct(_) => "construct",
        Command::Detect(_) => "detect",
        Command::Audit(_) => "audit",
        Command::Solve(_) => "solve",
        Command::Embed(_) => "embed",
        Command::Bounds(_) => "bounds",
        Command::Replay(_) => "replay",
    }
}

/// `args` without `--manifest PATH` / `--manifest=PATH`.
fn strip_manifest(args: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--manifest" {
            skip = true;
        } else if !a.starts_with("--manifest=") {
            out.push(a.clone());
        }
    }
    out
}

impl RunManifest {
    pub fn new(cli: &Cli, args: &[String], inputs: Vec<InputDigest>, output_sha256: String, exit_code: u8) -> Self {
        let versions = BTreeMap::from([
            ("btfree".to_string(), btfree::VERSION.to_string()),
            ("btfree-cli".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ]);
        RunManifest {
            manifest_version: MANIFEST_VERSION,
            command: command_name(&cli.command).to_string(),
            parameters: strip_manifest(args),
            seed: cli.seed,
            threads: cli.threads,
            versions,
            inputs,
            output_sha256,
            exit_code,
        }
    }

    /// Write to `path`, or as one line to standard error.
    pub fn emit(&self, path: Option<&Path>) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        match path {
            Some(p) => std::fs::write(p, text + "\n"),
            None => {
                eprintln!("{}", serde_json::to_string(self).map_err(std::io::Error::other)?);
                Ok(())
            }
        }
    }
}

#[derive(Serialize)]
struct ReplayReport {
    reproduced: bool,
    command: String,
    expected_sha256: String,
    /// Absent when changed inputs prevented the re-run.
    actual_sha256: Option<String>,
    expected_exit: u8,
    actual_exit: Option<u8>,
    input_mismatches: Vec<String>,
}

/// Re-run the manifest's parameters into a buffer and compare digests.
/// Exits 0 when output and status match, 1 otherwise.
pub fn replay(path: &Path, out: &mut Sink) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let m: RunManifest =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: bad manifest: {e}", path.display())))?;
    if m.manifest_version != MANIFEST_VERSION {
        return Err(Failure::Usage(format!("unsupported manifest version {}", m.manifest_version)));
    }
    let mut input_mismatches = Vec::new();
    for inp in &m.inputs {
        if inp.path == "-" {
            return Err(Failure::Usage("manifest input was standard input; replay needs a file".into()));
        }
        match std::fs::read(&inp.path) {
            Ok(bytes) if hex::encode(Sha256::digest(&bytes)) == inp.sha256 => {}
            _ => input_mismatches.push(inp.path.clone()),
        }
    }
    let argv = std::iter::once("btfree".to_string()).chain(m.parameters.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| Failure::Usage(format!("manifest parameters: {e}")))?;
    if matches!(cli.command, Command::Replay(_)) {
        return Err(Failure::Usage("a manifest cannot replay another replay".into()));
    }
    let (actual_sha256, actual_exit) = if input_mismatches.is_empty() {
        let mut buf: Vec<u8> = Vec::new();
        let run = crate::execute(&cli, &mut buf)?;
        (Some(run.output_sha256), Some(run.exit))
    } else {
        (None, None)
    };
    let reproduced = actual_sha256.as_deref() == Some(m.output_sha256.as_str()) && actual_exit == Some(m.exit_code);
    out.json(&ReplayReport {
        reproduced,
        command: m.command,
        expected_sha256: m.output_sha256,
        actual_sha256,
        expected_exit: m.exit_code,
        actual_exit,
        input_mismatches,
    })?;
    Ok(if reproduced { EXIT_OK } else { EXIT_FOUND })
}
