//! Plain-text run manifests: `key = value` lines whose keys are long flag
//! names (`-` or `_` separated). Flags given on the command line win.

use std::ffi::OsString;
use std::path::Path;

use crate::error::{Error, Result};

/// Subcommand names, used to locate where file-provided flags go.
pub const SUBCOMMANDS: [&str; 5] = ["rate", "sweep-n", "sweep-qber", "simulate", "cdm06-pe"];

/// Flags that belong before the subcommand.
const GLOBAL_KEYS: [&str; 1] = ["threads"];

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidConfig(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() || key.starts_with('-') {
            return Err(Error::InvalidConfig(format!("line {}: bad key {key:?}", lineno + 1)));
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

fn flag_args(entries: &[(String, String)]) -> Vec<OsString> {
    let mut out = Vec::new();
    for (key, value) in entries {
        match value.as_str() {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{key}").into());
                out.push(value.into());
            }
        }
    }
    out
}

/// Returns the argument list with the manifest named by `--config` spliced
/// in ahead of the command-line flags, so that explicit flags override it.
pub fn merge_config_args(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut config_path = None;
    let mut sub_index = None;
    let mut i = 1;
    while i < args.len() {
        let arg = args[i].to_string_lossy();
        if arg == "--config" {
            config_path = args.get(i + 1).cloned();
            i += 2;
            continue;
        }
        if let Some(p) = arg.strip_prefix("--config=") {
            config_path = Some(p.into());
        } else if sub_index.is_none() && SUBCOMMANDS.contains(&arg.as_ref()) {
            sub_index = Some(i);
        } else if sub_index.is_none() && arg == "--threads" {
            i += 1;
        }
        i += 1;
    }
    let (Some(path), Some(sub)) = (config_path, sub_index) else {
        return Ok(args);
    };
    let entries = read_config(Path::new(&path))?;
    let (global, local): (Vec<_>, Vec<_>) = entries
        .into_iter()
        .filter(|(k, _)| k != "config")
        .partition(|(k, _)| GLOBAL_KEYS.contains(&k.as_str()));
    let mut merged: Vec<OsString> = args[..1].to_vec();
    merged.extend(flag_args(&global));
    merged.extend_from_slice(&args[1..=sub]);
    merged.extend(flag_args(&local));
    merged.extend_from_slice(&args[sub + 1..]);
    Ok(merged)
}
