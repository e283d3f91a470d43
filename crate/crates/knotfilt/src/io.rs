//! Reading and writing diagram, marked-diagram and clasper files.

use std::fs;
use std::path::{Path, PathBuf};

use knotfilt_core::clasper::RootedClasper;
use knotfilt_core::diagram::Violation;
use knotfilt_core::gauss::{gauss_from_pd, pd_from_gauss, GaussCode};
use knotfilt_core::geometry::Polyline;
use knotfilt_core::moves::{MarkedDiagram, MoveGroup};
use knotfilt_core::PlanarDiagram;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid diagram: {violations:?}")]
    Invalid { violations: Vec<Violation> },
    #[error(transparent)]
    Core(#[from] knotfilt_core::Error),
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.into(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::Write {
        path: path.into(),
        source,
    })
}

/// Parses PD JSON (`{"components": .., "crossings": [..]}`) or Gauss text,
/// and validates the result.
pub fn parse_diagram(text: &str) -> Result<PlanarDiagram, IoError> {
    let d = if text.trim_start().starts_with('{') {
        serde_json::from_str::<PlanarDiagram>(text)?
    } else {
        let g: GaussCode = text.trim().parse()?;
        pd_from_gauss(&g)?
    };
    let violations = d.validate();
    if !violations.is_empty() {
        return Err(IoError::Invalid { violations });
    }
    Ok(d)
}

pub fn read_diagram(path: &Path) -> Result<PlanarDiagram, IoError> {
    parse_diagram(&read_text(path)?)
}

pub fn diagram_json(d: &PlanarDiagram) -> String {
    serde_json::to_string(d).expect("diagram serializes")
}

pub fn diagram_gauss(d: &PlanarDiagram) -> Result<String, IoError> {
    Ok(gauss_from_pd(d)?.to_string())
}

/// A marked diagram with the groups of a bracket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketInput {
    pub marked: MarkedDiagram,
    #[serde(default)]
    pub moves: Vec<MoveGroup>,
}

/// A clasper instance: the knot drawing and the clasper on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClasperInput {
    pub name: String,
    pub knot: Polyline,
    pub clasper: RootedClasper,
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    parse_json(&read_text(path)?)
}
