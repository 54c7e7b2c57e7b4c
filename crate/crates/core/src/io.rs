//! File formats: JSON documents and CSV spectrum export.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::LengthSpectrum;
use crate::surface::FenchelNielsenSurface;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `length,multiplicity` rows, shortest first.
pub fn spectrum_csv(s: &LengthSpectrum) -> String {
    let mut out = String::from("length,multiplicity\n");
    for e in &s.entries {
        out.push_str(&format!("{},{}\n", e.length, e.multiplicity));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub label: String,
    pub surface: FenchelNielsenSurface,
}

/// A labelled list of surfaces, stored as `{"members": [{"label", "surface"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFamily {
    pub members: Vec<FamilyMember>,
}
