//! Reading algebra and bimodule JSON files. Algebra references inside a
//! bimodule file are resolved relative to that file's directory.

use std::fs;
use std::path::Path;

use crate::algebra::CondensationAlgebra;
use crate::bimodule::{BimoduleJson, CondensationBimodule};
use crate::error::{Error, Result};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

/// Serde errors carry our own `Display` text; drop the repeated prefix.
fn json_error(path: Option<&Path>, e: serde_json::Error) -> Error {
    let msg = e.to_string();
    let msg = msg.strip_prefix("input error: ").unwrap_or(&msg);
    match path {
        Some(p) => Error::input(format!("{}: {msg}", p.display())),
        None => Error::input(msg),
    }
}

pub fn parse_algebra(text: &str) -> Result<CondensationAlgebra> {
    serde_json::from_str(text).map_err(|e| json_error(None, e))
}

pub fn load_algebra(path: &Path) -> Result<CondensationAlgebra> {
    serde_json::from_str(&read(path)?).map_err(|e| json_error(Some(path), e))
}

pub fn load_bimodule(path: &Path) -> Result<CondensationBimodule> {
    let raw: BimoduleJson =
        serde_json::from_str(&read(path)?).map_err(|e| json_error(Some(path), e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    raw.resolve(|r| load_algebra(&base.join(r)))
}

/// Pretty JSON with a trailing newline; the on-disk fixture format.
pub fn to_canonical_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
