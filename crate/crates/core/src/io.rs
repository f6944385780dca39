//! JSON documents read and written by the command-line tool.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::Embedding;
use crate::projection::ProjectionResult;
use crate::simplex::{BarycentricPoint, EdgeLengths};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Invalid {
        field: field.into(),
        message: message.into(),
    }
}

/// An `n`-simplex given by its full `(n+1) x (n+1)` edge-length table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexDocument {
    pub n: usize,
    pub edge_lengths: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curvature: Option<f64>,
}

impl SimplexDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: SimplexDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<(), DocumentError> {
        let m = self.n + 1;
        if self.n == 0 {
            return Err(invalid("n", "simplex dimension must be at least 1"));
        }
        if self.edge_lengths.len() != m {
            return Err(invalid(
                "edge_lengths",
                format!(
                    "expected {m} rows for n = {}, got {}",
                    self.n,
                    self.edge_lengths.len()
                ),
            ));
        }
        for (i, row) in self.edge_lengths.iter().enumerate() {
            if row.len() != m {
                return Err(invalid(
                    format!("edge_lengths[{i}]"),
                    format!("expected {m} entries, got {}", row.len()),
                ));
            }
            for (j, &v) in row.iter().enumerate() {
                let field = format!("edge_lengths[{i}][{j}]");
                if !v.is_finite() || v < 0.0 {
                    return Err(invalid(
                        field,
                        format!("must be a nonnegative number, got {v}"),
                    ));
                }
                if i == j && v != 0.0 {
                    return Err(invalid(field, format!("diagonal must be 0, got {v}")));
                }
                if i != j && v == 0.0 {
                    return Err(invalid(field, "off-diagonal edge length must be positive"));
                }
                if j > i && self.edge_lengths[j][i] != v {
                    return Err(invalid(
                        field,
                        format!(
                            "not symmetric: {v} vs edge_lengths[{j}][{i}] = {}",
                            self.edge_lengths[j][i]
                        ),
                    ));
                }
            }
        }
        if let Some(k) = self.curvature {
            if !k.is_finite() {
                return Err(invalid("curvature", "must be finite"));
            }
        }
        Ok(())
    }

    pub fn edge_lengths(&self) -> Result<EdgeLengths, DocumentError> {
        EdgeLengths::new(self.edge_lengths.clone())
            .map_err(|e| invalid("edge_lengths", e.to_string()))
    }
}

/// A point of a simplex in barycentric coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDocument {
    pub barycentric: Vec<f64>,
}

impl PointDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Validates against a simplex with `vertices` vertices.
    pub fn point(&self, vertices: usize) -> Result<BarycentricPoint, DocumentError> {
        if self.barycentric.len() != vertices {
            return Err(invalid(
                "barycentric",
                format!(
                    "expected {vertices} coordinates, got {}",
                    self.barycentric.len()
                ),
            ));
        }
        BarycentricPoint::new(self.barycentric.clone())
            .map_err(|e| invalid("barycentric", e.to_string()))
    }
}

/// Serialized form of a projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionDocument {
    pub foot: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foot_model: Option<Vec<f64>>,
    pub altitude: f64,
    pub inside_face: bool,
}

impl From<&ProjectionResult> for ProjectionDocument {
    fn from(r: &ProjectionResult) -> Self {
        Self {
            foot: r.foot.coords().to_vec(),
            foot_model: r.foot_model.as_ref().map(|h| h.0.clone()),
            altitude: r.altitude,
            inside_face: r.inside_face,
        }
    }
}

/// A number with 17 significant digits, enough to round-trip any `f64`.
fn full_precision(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes an embedding as JSON, every coordinate with 17 significant digits.
pub fn embedding_to_json(emb: &Embedding) -> String {
    let model = serde_json::to_string(&emb.model).expect("model tag serializes");
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"model\": {model},\n"));
    out.push_str(&format!(
        "  \"curvature\": {},\n",
        full_precision(emb.curvature)
    ));
    out.push_str("  \"vertices\": [\n");
    for (i, v) in emb.vertices.iter().enumerate() {
        let coords: Vec<String> = v.iter().map(|&c| full_precision(c)).collect();
        let sep = if i + 1 == emb.vertices.len() { "" } else { "," };
        out.push_str(&format!("    [{}]{sep}\n", coords.join(", ")));
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn embedding_from_json(text: &str) -> Result<Embedding, DocumentError> {
    Ok(serde_json::from_str(text)?)
}

/// Fixed-point rendering with `digits` significant digits; falls back to
/// scientific notation for very large or very small magnitudes.
pub fn format_significant(v: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 {
            "0".to_string()
        } else {
            v.to_string()
        };
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let exp: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|s| s.parse().ok())
        .expect("formatter emits an exponent");
    if !(-6..=15).contains(&exp) {
        return sci;
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}
