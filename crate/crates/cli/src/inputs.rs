//! Loading structures, boundary Laplacians, weights and boundary data.

use std::fs;
use std::path::Path;

use gasket_core::{
    build_sg, build_star_toy, CellStructure, MatrixDoc, Scalar, SymmetricMatrix, Tolerances,
    WeightVector,
};
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// `sgN`, `star-toy`, or a path to a structure document.
pub fn load_structure(name: &str) -> CliResult<CellStructure> {
    if name == "star-toy" {
        return Ok(build_star_toy());
    }
    if let Some(n) = name
        .strip_prefix("sg")
        .and_then(|n| n.parse::<usize>().ok())
    {
        return Ok(build_sg(n)?);
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "{name:?} is neither a built-in structure (sgN, star-toy) nor a file"
        )));
    }
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{name}: {e}")))
}

/// Matrix document, or the unit complete graph when no file is given.
pub fn load_d<S: Scalar>(
    path: Option<&Path>,
    k: usize,
    tol: &Tolerances,
) -> CliResult<SymmetricMatrix<S>> {
    let Some(path) = path else {
        return Ok(SymmetricMatrix::complete_graph(k));
    };
    let doc: MatrixDoc = serde_json::from_str(&fs::read_to_string(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let d = SymmetricMatrix::new(doc.to_matrix()?, tol.entry)?;
    if d.dim() != k {
        return Err(CliError::Input(format!(
            "D is {}x{} but the structure has k = {k}",
            d.dim(),
            d.dim()
        )));
    }
    Ok(d)
}

fn scalar_from_json<S: Scalar>(v: &Value) -> CliResult<S> {
    match v {
        Value::String(s) => Ok(S::parse_text(s)?),
        Value::Number(n) => Ok(S::parse_text(&n.to_string())?),
        other => Err(CliError::Input(format!("expected a number, got {other}"))),
    }
}

/// A JSON list of weights (strings such as `"3/5"` or plain numbers), or an
/// object with such a list under `"r"`.
pub fn load_r<S: Scalar>(path: &Path, cell_count: usize) -> CliResult<WeightVector<S>> {
    let value: Value = serde_json::from_str(&fs::read_to_string(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let list = match &value {
        Value::Array(items) => items,
        Value::Object(map) => match map.get("r") {
            Some(Value::Array(items)) => items,
            _ => return Err(CliError::Input("weights object needs an \"r\" list".into())),
        },
        _ => return Err(CliError::Input("weights must be a JSON list".into())),
    };
    let weights = list
        .iter()
        .map(scalar_from_json)
        .collect::<CliResult<Vec<S>>>()?;
    if weights.len() != cell_count {
        return Err(CliError::Input(format!(
            "{} weights for {cell_count} cells",
            weights.len()
        )));
    }
    Ok(WeightVector::new(weights)?)
}

/// Values separated by commas and/or whitespace.
pub fn parse_values<S: Scalar>(text: &str) -> CliResult<Vec<S>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| S::parse_text(t).map_err(CliError::from))
        .collect()
}

pub fn parse_address(text: &str) -> CliResult<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad cell id {t:?} in address")))
        })
        .collect()
}
