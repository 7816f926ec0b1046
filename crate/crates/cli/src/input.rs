//! Strict-schema graph description files.
//!
//! The document is JSON with exactly three top-level keys:
//!
//! ```json
//! {
//!   "vertices": ["a", "b"],
//!   "edges": [{"id": "e1", "from": "a", "to": "b", "length": 1.0}],
//!   "conditions": {
//!     "a": {"family": "dirichlet"},
//!     "b": {"family": "delta", "alpha": -4.0}
//!   }
//! }
//! ```
//!
//! Edge lengths are positive numbers or the string `"inf"` (such edges omit
//! `"to"`). A condition is one of: a named family (`dirichlet`, `neumann`,
//! `kirchhoff`, `delta`, `delta_prime`, the latter two with `alpha`), an
//! explicit `{P, L}` matrix pair, a `{A, B}` matrix pair, or a
//! `{lagrangian: ...}` basis of the doubled boundary space. Matrices are
//! row-major arrays of rows whose entries are `[re, im]` pairs. Unknown keys
//! anywhere are rejected: a typo must not silently become a default
//! condition.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use serde::Deserialize;

use mgspec_core::conditions::{ABCondition, LagrangianSubspace, VertexCondition};
use mgspec_core::graph::{EdgeLength, EdgeSpec, GraphSpec, MetricGraph};
use mgspec_core::C64;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<EdgeEntry>,
    conditions: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    id: String,
    from: String,
    #[serde(default)]
    to: Option<String>,
    length: LengthEntry,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum LengthEntry {
    Number(f64),
    Tag(String),
}

fn parse_matrix(
    value: &serde_json::Value,
    key: &str,
    vertex: &str,
) -> Result<DMatrix<C64>, CliError> {
    let rows: Vec<Vec<[f64; 2]>> =
        serde_json::from_value(value.clone()).map_err(|_| CliError::Schema {
            detail: format!(
                "matrix {key} at vertex {vertex} must be an array of rows of [re, im] pairs"
            ),
        })?;
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(CliError::Schema {
            detail: format!("matrix {key} at vertex {vertex} must be rectangular and non-empty"),
        });
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| {
        C64::new(rows[i][j][0], rows[i][j][1])
    }))
}

fn condition_from_value(
    vertex: &str,
    degree: usize,
    value: &serde_json::Value,
) -> Result<VertexCondition, CliError> {
    let obj = value.as_object().ok_or_else(|| CliError::Schema {
        detail: format!("condition at vertex {vertex} must be an object"),
    })?;
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let has = |k: &str| obj.contains_key(k);

    for key in &keys {
        if !matches!(
            *key,
            "family" | "alpha" | "P" | "L" | "A" | "B" | "lagrangian"
        ) {
            return Err(CliError::Schema {
                detail: format!("unknown key {key:?} in condition at vertex {vertex}"),
            });
        }
    }

    let vc = if has("family") {
        for key in &keys {
            if !matches!(*key, "family" | "alpha") {
                return Err(CliError::Schema {
                    detail: format!(
                        "key {key:?} cannot be combined with a family at vertex {vertex}"
                    ),
                });
            }
        }
        let family = obj["family"].as_str().ok_or_else(|| CliError::Schema {
            detail: format!("family at vertex {vertex} must be a string"),
        })?;
        let alpha = match obj.get("alpha") {
            None => None,
            Some(a) => Some(a.as_f64().ok_or_else(|| CliError::Schema {
                detail: format!("alpha at vertex {vertex} must be a number"),
            })?),
        };
        let needs_alpha = matches!(family, "delta" | "delta_prime");
        if needs_alpha && alpha.is_none() {
            return Err(CliError::Schema {
                detail: format!("family {family:?} at vertex {vertex} requires alpha"),
            });
        }
        if !needs_alpha && alpha.is_some() {
            return Err(CliError::Schema {
                detail: format!("family {family:?} at vertex {vertex} does not take alpha"),
            });
        }
        match family {
            "dirichlet" => VertexCondition::dirichlet(degree),
            "neumann" => VertexCondition::neumann(degree),
            "kirchhoff" => VertexCondition::kirchhoff(degree),
            "delta" => VertexCondition::delta(alpha.unwrap(), degree),
            "delta_prime" => VertexCondition::delta_prime(alpha.unwrap(), degree),
            other => {
                return Err(CliError::Schema {
                    detail: format!("unknown condition family {other:?} at vertex {vertex}"),
                })
            }
        }
        .map_err(|source| CliError::Condition {
            vertex: vertex.to_string(),
            source,
        })?
    } else if has("P") || has("L") {
        if !(has("P") && has("L")) || keys.len() != 2 {
            return Err(CliError::Schema {
                detail: format!("explicit condition at vertex {vertex} needs exactly P and L"),
            });
        }
        let p = parse_matrix(&obj["P"], "P", vertex)?;
        let l = parse_matrix(&obj["L"], "L", vertex)?;
        VertexCondition::new(p, l).map_err(|source| CliError::Condition {
            vertex: vertex.to_string(),
            source,
        })?
    } else if has("A") || has("B") {
        if !(has("A") && has("B")) || keys.len() != 2 {
            return Err(CliError::Schema {
                detail: format!("matrix-pair condition at vertex {vertex} needs exactly A and B"),
            });
        }
        let a = parse_matrix(&obj["A"], "A", vertex)?;
        let b = parse_matrix(&obj["B"], "B", vertex)?;
        let ab = ABCondition::new(a, b).map_err(|source| CliError::Condition {
            vertex: vertex.to_string(),
            source,
        })?;
        ab.to_vertex_condition()
            .map_err(|source| CliError::Condition {
                vertex: vertex.to_string(),
                source,
            })?
    } else if has("lagrangian") {
        if keys.len() != 1 {
            return Err(CliError::Schema {
                detail: format!("lagrangian condition at vertex {vertex} takes no other keys"),
            });
        }
        let basis = parse_matrix(&obj["lagrangian"], "lagrangian", vertex)?;
        if basis.nrows() != 2 * degree || basis.ncols() != degree {
            return Err(CliError::Schema {
                detail: format!(
                    "lagrangian basis at vertex {vertex} must be {}x{} (doubled boundary space), got {}x{}",
                    2 * degree,
                    degree,
                    basis.nrows(),
                    basis.ncols()
                ),
            });
        }
        let subspace = LagrangianSubspace::new(basis).map_err(|source| CliError::Condition {
            vertex: vertex.to_string(),
            source,
        })?;
        subspace.decompose().map_err(|source| CliError::Condition {
            vertex: vertex.to_string(),
            source,
        })?
    } else {
        return Err(CliError::Schema {
            detail: format!(
                "condition at vertex {vertex} specifies none of family/P,L/A,B/lagrangian"
            ),
        });
    };

    if vc.degree() != degree {
        return Err(CliError::Condition {
            vertex: vertex.to_string(),
            source: mgspec_core::conditions::ConditionError::ShapeMismatch {
                p: vc.degree(),
                l: degree,
            },
        });
    }
    Ok(vc)
}

/// Serialize a graph and its conditions back to the file format, with
/// conditions written as explicit `{P, L}` matrices. Parsing the output
/// reproduces the data model exactly.
pub fn render_graph_json(graph: &MetricGraph, conditions: &[VertexCondition]) -> String {
    let matrix_json = |m: &DMatrix<C64>| -> serde_json::Value {
        serde_json::Value::Array(
            (0..m.nrows())
                .map(|i| {
                    serde_json::Value::Array(
                        (0..m.ncols())
                            .map(|j| serde_json::json!([m[(i, j)].re, m[(i, j)].im]))
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    let edges: Vec<serde_json::Value> = graph
        .edges()
        .iter()
        .map(|e| match (e.end, e.length) {
            (Some(to), EdgeLength::Finite(l)) => serde_json::json!({
                "id": e.id,
                "from": graph.vertex_id(e.start),
                "to": graph.vertex_id(to),
                "length": l,
            }),
            _ => serde_json::json!({
                "id": e.id,
                "from": graph.vertex_id(e.start),
                "length": "inf",
            }),
        })
        .collect();
    let conditions_json: serde_json::Map<String, serde_json::Value> = conditions
        .iter()
        .enumerate()
        .map(|(v, vc)| {
            (
                graph.vertex_id(v).to_string(),
                serde_json::json!({
                    "P": matrix_json(vc.projection()),
                    "L": matrix_json(vc.coupling()),
                }),
            )
        })
        .collect();
    serde_json::to_string_pretty(&serde_json::json!({
        "vertices": graph.vertex_ids(),
        "edges": edges,
        "conditions": conditions_json,
    }))
    .expect("graph document serializes")
}

/// Parse and validate a graph file into the graph and its per-vertex
/// conditions (in vertex order).
pub fn parse_graph_file(path: &Path) -> Result<(MetricGraph, Vec<VertexCondition>), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        detail: format!("{}: {e}", path.display()),
    })?;
    parse_graph_str(&text)
}

/// Parse a graph document from a string (the file body).
pub fn parse_graph_str(text: &str) -> Result<(MetricGraph, Vec<VertexCondition>), CliError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        detail: e.to_string(),
    })?;

    let mut edges = Vec::with_capacity(file.edges.len());
    for e in &file.edges {
        let length = match &e.length {
            LengthEntry::Number(l) => EdgeLength::Finite(*l),
            LengthEntry::Tag(tag) if tag == "inf" => EdgeLength::Infinite,
            LengthEntry::Tag(tag) => {
                return Err(CliError::Schema {
                    detail: format!(
                        "edge {}: length must be a number or \"inf\", got {tag:?}",
                        e.id
                    ),
                })
            }
        };
        edges.push(EdgeSpec {
            id: e.id.clone(),
            from: e.from.clone(),
            to: e.to.clone(),
            length,
        });
    }
    let graph = MetricGraph::build(GraphSpec {
        vertices: file.vertices,
        edges,
    })?;

    for key in file.conditions.keys() {
        if graph.vertex_by_id(key).is_err() {
            return Err(CliError::Schema {
                detail: format!("condition given for unknown vertex {key:?}"),
            });
        }
    }
    let mut conditions = Vec::with_capacity(graph.vertex_count());
    for v in 0..graph.vertex_count() {
        let id = graph.vertex_id(v);
        let value = file
            .conditions
            .get(id)
            .ok_or_else(|| CliError::MissingCondition {
                vertex: id.to_string(),
            })?;
        conditions.push(condition_from_value(id, graph.degree(v), value)?);
    }
    Ok((graph, conditions))
}
