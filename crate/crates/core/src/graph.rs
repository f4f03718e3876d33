//! Plumbing (resolution) graphs: trees of rational curves decorated by Euler
//! numbers.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex id {0} appears more than once")]
    DuplicateVertex(i64),
    #[error("edge references unknown vertex id {0}")]
    UnknownVertex(i64),
    #[error("self-loop at vertex {0}")]
    SelfLoop(i64),
    #[error("edge {0}-{1} appears more than once")]
    MultiEdge(i64, i64),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph contains a cycle")]
    NotATree,
    #[error("intersection form is not negative definite (leading principal minor {minor_index} of -I is not positive)")]
    NotNegativeDefinite { minor_index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: i64,
    pub euler: i64,
}

/// A connected tree with integer Euler decorations; all genera are zero.
///
/// The vertex and edge lists are kept in the order they were given so that a
/// graph read from a file is written back unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionGraph {
    name: Option<String>,
    vertices: Vec<Vertex>,
    edges: Vec<(i64, i64)>,
}

impl ResolutionGraph {
    /// Validates the structural invariants. Definiteness is checked when the
    /// intersection form is built.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(i64, i64)>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut ids = BTreeSet::new();
        for v in &vertices {
            if !ids.insert(v.id) {
                return Err(GraphError::DuplicateVertex(v.id));
            }
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            for x in [a, b] {
                if !ids.contains(&x) {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::MultiEdge(a, b));
            }
        }
        let graph = ResolutionGraph {
            name: None,
            vertices,
            edges,
        };
        if graph.components(&ids).len() > 1 {
            return Err(GraphError::Disconnected);
        }
        if graph.edges.len() + 1 != graph.vertices.len() {
            return Err(GraphError::NotATree);
        }
        Ok(graph)
    }

    /// Convenience constructor from `(id, euler)` pairs.
    pub fn from_pairs(vertices: &[(i64, i64)], edges: &[(i64, i64)]) -> Result<Self, GraphError> {
        Self::new(
            vertices
                .iter()
                .map(|&(id, euler)| Vertex { id, euler })
                .collect(),
            edges.to_vec(),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(i64, i64)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, id: i64) -> bool {
        self.vertices.iter().any(|v| v.id == id)
    }

    pub fn euler(&self, id: i64) -> Option<i64> {
        self.vertices.iter().find(|v| v.id == id).map(|v| v.euler)
    }

    pub fn has_edge(&self, a: i64, b: i64) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x == a && y == b) || (x == b && y == a))
    }

    pub fn neighbors(&self, id: i64) -> Vec<i64> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn max_id(&self) -> i64 {
        self.vertices.iter().map(|v| v.id).max().unwrap_or(0)
    }

    /// Connected components of the subgraph induced on `subset`, each sorted
    /// by id, ordered by their smallest id.
    pub fn components(&self, subset: &BTreeSet<i64>) -> Vec<Vec<i64>> {
        let mut adjacency: BTreeMap<i64, Vec<i64>> =
            subset.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            if subset.contains(&a) && subset.contains(&b) {
                adjacency.get_mut(&a).unwrap().push(b);
                adjacency.get_mut(&b).unwrap().push(a);
            }
        }
        let mut visited = BTreeSet::new();
        let mut out = Vec::new();
        for &start in subset {
            if visited.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            visited.insert(start);
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adjacency[&v] {
                    if visited.insert(w) {
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The full subgraph on `subset` (Euler numbers copied, induced edges).
    /// Fails with [`GraphError::Disconnected`] unless it is connected.
    pub fn induced_subgraph(&self, subset: &BTreeSet<i64>) -> Result<ResolutionGraph, GraphError> {
        for id in subset {
            if !self.contains(*id) {
                return Err(GraphError::UnknownVertex(*id));
            }
        }
        let vertices = self
            .vertices
            .iter()
            .filter(|v| subset.contains(&v.id))
            .copied()
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| subset.contains(a) && subset.contains(b))
            .copied()
            .collect();
        ResolutionGraph::new(vertices, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_structural_defects() {
        assert_eq!(
            ResolutionGraph::from_pairs(&[], &[]),
            Err(GraphError::Empty)
        );
        assert_eq!(
            ResolutionGraph::from_pairs(&[(1, -2), (1, -2)], &[]),
            Err(GraphError::DuplicateVertex(1))
        );
        assert_eq!(
            ResolutionGraph::from_pairs(&[(1, -2)], &[(1, 7)]),
            Err(GraphError::UnknownVertex(7))
        );
        assert_eq!(
            ResolutionGraph::from_pairs(&[(1, -2)], &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            ResolutionGraph::from_pairs(&[(1, -2), (2, -2)], &[(1, 2), (2, 1)]),
            Err(GraphError::MultiEdge(2, 1))
        );
        assert_eq!(
            ResolutionGraph::from_pairs(&[(1, -2), (2, -2)], &[]),
            Err(GraphError::Disconnected)
        );
        assert_eq!(
            ResolutionGraph::from_pairs(&[(1, -2), (2, -2), (3, -2)], &[(1, 2), (2, 3), (3, 1)]),
            Err(GraphError::NotATree)
        );
    }

    #[test]
    fn induced_components() {
        let g = ResolutionGraph::from_pairs(
            &[(1, -2), (2, -2), (3, -2), (4, -2)],
            &[(1, 2), (2, 3), (3, 4)],
        )
        .unwrap();
        let sub: BTreeSet<i64> = [1, 3, 4].into_iter().collect();
        assert_eq!(g.components(&sub), vec![vec![1], vec![3, 4]]);
        assert_eq!(g.induced_subgraph(&sub), Err(GraphError::Disconnected));
        let sub: BTreeSet<i64> = [3, 4].into_iter().collect();
        let h = g.induced_subgraph(&sub).unwrap();
        assert_eq!(h.len(), 2);
        assert!(h.has_edge(4, 3));
    }
}
