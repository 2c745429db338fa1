//! Body files: a JSON object with `"dim"` plus either `"vertices"`
//! (`[[x,y(,z)], ...]`) or `"halfspaces"` (`[{"a": [...], "b": r}, ...]`).
//! The loader builds whichever representation is missing.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::polytope::{Body, HPolytope, Halfspace, Vector};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct HalfspaceJson {
    a: Vec<f64>,
    b: f64,
}

#[derive(Serialize, Deserialize)]
struct BodyJson {
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    halfspaces: Option<Vec<HalfspaceJson>>,
}

pub fn body_from_json(text: &str) -> Result<Body> {
    let parsed: BodyJson = serde_json::from_str(text)?;
    if parsed.dim != 2 && parsed.dim != 3 {
        return Err(Error::InvalidInput(format!(
            "body dim must be 2 or 3, got {}",
            parsed.dim
        )));
    }
    if let Some(vertices) = parsed.vertices {
        let pts: Result<Vec<Vector>> = vertices.iter().map(|v| Vector::from_slice(v)).collect();
        let pts = pts?;
        if pts.iter().any(|p| p.dim() != parsed.dim) {
            return Err(Error::InvalidInput(
                "vertex length disagrees with dim".into(),
            ));
        }
        Body::from_points(parsed.dim, &pts)
    } else if let Some(halfspaces) = parsed.halfspaces {
        let mut hs = Vec::with_capacity(halfspaces.len());
        for h in &halfspaces {
            let n = Vector::from_slice(&h.a)?;
            if n.dim() != parsed.dim {
                return Err(Error::InvalidInput(
                    "halfspace normal length disagrees with dim".into(),
                ));
            }
            hs.push(Halfspace::new(n, h.b)?);
        }
        let hp = HPolytope::new(parsed.dim, hs)?.canonicalized()?;
        Body::from_hpolytope(&hp)
    } else {
        Err(Error::InvalidInput(
            "body file needs either vertices or halfspaces".into(),
        ))
    }
}

pub fn body_to_json(body: &Body) -> String {
    let json = BodyJson {
        dim: body.dim(),
        vertices: Some(body.vertices().iter().map(|v| v.to_vec()).collect()),
        halfspaces: None,
    };
    let mut out = serde_json::to_string_pretty(&json).expect("body serialization cannot fail");
    out.push('\n');
    out
}

pub fn load_body(path: &Path) -> Result<Body> {
    let text = std::fs::read_to_string(path)?;
    body_from_json(&text)
}

pub fn save_body(body: &Body, path: &Path) -> Result<()> {
    std::fs::write(path, body_to_json(body))?;
    Ok(())
}

/// Points file: a JSON array of coordinate arrays.
pub fn points_from_json(text: &str) -> Result<Vec<Vector>> {
    let raw: Vec<Vec<f64>> = serde_json::from_str(text)?;
    raw.iter().map(|v| Vector::from_slice(v)).collect()
}
