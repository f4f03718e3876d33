//! The JSON graph file: `{"name": ..., "vertices": [{"id", "euler"}], "edges": [[u, w]]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use plumbing_core::{ResolutionGraph, Vertex};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: i64,
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[i64; 2]>,
}

impl GraphFile {
    pub fn from_graph(g: &ResolutionGraph) -> Self {
        GraphFile {
            name: g.name().map(str::to_string),
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.id,
                    euler: v.euler,
                })
                .collect(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<ResolutionGraph, CliError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id,
                euler: v.euler,
            })
            .collect();
        let edges = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = ResolutionGraph::new(vertices, edges).map_err(|e| CliError::Parse {
            origin: "graph".into(),
            message: e.to_string(),
        })?;
        Ok(match &self.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph file serializes")
    }
}

/// Parses a graph document; JSON errors carry line and column.
pub fn parse_graph(text: &str, source: &str) -> Result<ResolutionGraph, CliError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        origin: source.to_string(),
        message: format!("line {} column {}: {e}", e.line(), e.column()),
    })?;
    file.to_graph().map_err(|e| match e {
        CliError::Parse { message, .. } => CliError::Parse {
            origin: source.to_string(),
            message,
        },
        other => other,
    })
}

pub fn read_graph(path: &Path) -> Result<ResolutionGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let g = parse_graph(&text, &path.display().to_string())?;
    if g.name().is_some() {
        return Ok(g);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
    Ok(g.with_name(stem))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"name": "a2", "vertices": [{"id": 1, "euler": -2}, {"id": 2, "euler": -2}], "edges": [[1, 2]]}"#;
        let g = parse_graph(text, "inline").unwrap();
        assert_eq!(g.name(), Some("a2"));
        let again = parse_graph(&GraphFile::from_graph(&g).to_json(), "again").unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn json_errors_are_positioned() {
        let err = parse_graph("{\n  \"vertices\": [1,", "bad").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn structural_errors_are_parse_errors() {
        let text = r#"{"vertices": [{"id": 1, "euler": -2}], "edges": [[1, 3]]}"#;
        let err = parse_graph(text, "x").unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
