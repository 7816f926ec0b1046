//! Immutable metric-graph data model.
//!
//! Edges are identified with intervals `(0, l(e))`; finite edges run between
//! two vertices, infinite edges (rays) have a start vertex only. Loops and
//! parallel edges are allowed and contribute distinct edge ends to the star
//! of their vertex. The model is validated once at construction and never
//! mutated afterwards, so it can be shared freely across threads.

use std::collections::HashMap;

use thiserror::Error;

/// Edge length: a positive real or a ray of infinite length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeLength {
    Finite(f64),
    Infinite,
}

impl EdgeLength {
    pub fn is_finite(self) -> bool {
        matches!(self, EdgeLength::Finite(_))
    }

    /// Numeric value with `+∞` for rays.
    pub fn value(self) -> f64 {
        match self {
            EdgeLength::Finite(l) => l,
            EdgeLength::Infinite => f64::INFINITY,
        }
    }
}

/// Which end of an edge an edge-end refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndTag {
    /// Coordinate `t = 0`; boundary sign `+1`.
    Start,
    /// Coordinate `t = l(e)`; boundary sign `-1`.
    End,
}

/// One endpoint of one edge, the atoms of vertex boundary data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeEnd {
    pub edge: usize,
    pub tag: EndTag,
}

impl EdgeEnd {
    /// Boundary sign: `+1` at edge starts, `-1` at edge ends, so that signed
    /// derivative traces are orientation-independent ("ingoing" derivatives).
    pub fn sign(self) -> f64 {
        match self.tag {
            EndTag::Start => 1.0,
            EndTag::End => -1.0,
        }
    }
}

/// The ordered edge-end star of one vertex.
///
/// The ordering is canonical: sorted by (edge index, start before end). All
/// boundary-condition matrices are written in these coordinates.
#[derive(Debug, Clone)]
pub struct VertexStar {
    pub vertex: usize,
    pub ends: Vec<EdgeEnd>,
}

impl VertexStar {
    pub fn degree(&self) -> usize {
        self.ends.len()
    }
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub id: String,
    pub length: EdgeLength,
    pub start: usize,
    /// Absent exactly for infinite edges.
    pub end: Option<usize>,
}

/// Validated metric graph.
#[derive(Debug, Clone)]
pub struct MetricGraph {
    vertex_ids: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    stars: Vec<VertexStar>,
    u_min: f64,
}

/// Raw graph description consumed by [`MetricGraph::build`].
#[derive(Debug, Clone)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    /// `None` for infinite edges.
    pub to: Option<String>,
    pub length: EdgeLength,
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("edge {edge} has non-positive length {length}")]
    NonPositiveLength { edge: String, length: f64 },
    #[error("edge {edge} references unknown vertex {vertex}")]
    DanglingIncidence { edge: String, vertex: String },
    #[error("vertex {vertex} has no incident edges")]
    IsolatedVertex { vertex: String },
    #[error("graph is not connected: vertex {vertex} is unreachable from {root}")]
    Disconnected { root: String, vertex: String },
    #[error("finite edge {edge} is missing its end vertex")]
    MissingEndpointOnFiniteEdge { edge: String },
    #[error("infinite edge {edge} must not have an end vertex")]
    EndpointOnInfiniteEdge { edge: String },
    #[error("unknown vertex {vertex}")]
    UnknownVertex { vertex: String },
    #[error("duplicate vertex id {vertex}")]
    DuplicateVertexId { vertex: String },
    #[error("duplicate edge id {edge}")]
    DuplicateEdgeId { edge: String },
    #[error("graph has no edges")]
    Empty,
}

impl MetricGraph {
    /// Validate a raw description and build the graph.
    ///
    /// Checks positive lengths, complete incidence, absence of isolated
    /// vertices, and connectivity; computes the uniform lower edge-length
    /// bound as the infimum over finite edge lengths.
    pub fn build(spec: GraphSpec) -> Result<Self, GraphError> {
        if spec.edges.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut vertex_index = HashMap::new();
        for (i, id) in spec.vertices.iter().enumerate() {
            if vertex_index.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertexId { vertex: id.clone() });
            }
        }
        let mut seen_edges = HashMap::new();
        let mut edges = Vec::with_capacity(spec.edges.len());
        for e in &spec.edges {
            if seen_edges.insert(e.id.clone(), ()).is_some() {
                return Err(GraphError::DuplicateEdgeId { edge: e.id.clone() });
            }
            match e.length {
                EdgeLength::Finite(l) if l <= 0.0 || !l.is_finite() => {
                    return Err(GraphError::NonPositiveLength {
                        edge: e.id.clone(),
                        length: l,
                    });
                }
                _ => {}
            }
            let start =
                *vertex_index
                    .get(&e.from)
                    .ok_or_else(|| GraphError::DanglingIncidence {
                        edge: e.id.clone(),
                        vertex: e.from.clone(),
                    })?;
            let end = match (&e.to, e.length) {
                (Some(to), EdgeLength::Finite(_)) => Some(*vertex_index.get(to).ok_or_else(
                    || GraphError::DanglingIncidence {
                        edge: e.id.clone(),
                        vertex: to.clone(),
                    },
                )?),
                (None, EdgeLength::Finite(_)) => {
                    return Err(GraphError::MissingEndpointOnFiniteEdge { edge: e.id.clone() });
                }
                (Some(_), EdgeLength::Infinite) => {
                    return Err(GraphError::EndpointOnInfiniteEdge { edge: e.id.clone() });
                }
                (None, EdgeLength::Infinite) => None,
            };
            edges.push(Edge {
                id: e.id.clone(),
                length: e.length,
                start,
                end,
            });
        }

        let n_v = spec.vertices.len();
        let mut ends_per_vertex: Vec<Vec<EdgeEnd>> = vec![Vec::new(); n_v];
        for (k, e) in edges.iter().enumerate() {
            ends_per_vertex[e.start].push(EdgeEnd {
                edge: k,
                tag: EndTag::Start,
            });
            if let Some(v) = e.end {
                ends_per_vertex[v].push(EdgeEnd {
                    edge: k,
                    tag: EndTag::End,
                });
            }
        }
        for (v, ends) in ends_per_vertex.iter().enumerate() {
            if ends.is_empty() {
                return Err(GraphError::IsolatedVertex {
                    vertex: spec.vertices[v].clone(),
                });
            }
        }
        // canonical star order: (edge index, start before end)
        let stars: Vec<VertexStar> = ends_per_vertex
            .into_iter()
            .enumerate()
            .map(|(v, mut ends)| {
                ends.sort_by_key(|e| (e.edge, e.tag));
                VertexStar { vertex: v, ends }
            })
            .collect();

        // connectivity over the incidence structure (rays touch one vertex)
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n_v];
        for e in &edges {
            if let Some(end) = e.end {
                adjacency[e.start].push(end);
                adjacency[end].push(e.start);
            }
        }
        let mut reached = vec![false; n_v];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = reached.iter().position(|r| !r) {
            return Err(GraphError::Disconnected {
                root: spec.vertices[0].clone(),
                vertex: spec.vertices[v].clone(),
            });
        }

        let u_min = edges
            .iter()
            .filter_map(|e| match e.length {
                EdgeLength::Finite(l) => Some(l),
                EdgeLength::Infinite => None,
            })
            .fold(f64::INFINITY, f64::min);

        Ok(MetricGraph {
            vertex_ids: spec.vertices,
            vertex_index,
            edges,
            stars,
            u_min,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn vertex_by_id(&self, id: &str) -> Result<usize, GraphError> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex {
                vertex: id.to_string(),
            })
    }

    /// Uniform lower bound on finite edge lengths (`+∞` if every edge is a ray).
    pub fn u_min(&self) -> f64 {
        self.u_min
    }

    /// Edge-end star of a vertex, in canonical order.
    pub fn vertex_star(&self, v: usize) -> &VertexStar {
        &self.stars[v]
    }

    pub fn stars(&self) -> &[VertexStar] {
        &self.stars
    }

    pub fn degree(&self, v: usize) -> usize {
        self.stars[v].degree()
    }

    /// Check the uniform lower-length hypothesis `l(e) ≥ u` for every edge;
    /// on failure reports the first violating edge. The bound is non-strict.
    pub fn check_bounded_geometry(&self, u: f64) -> Result<(), &Edge> {
        for e in &self.edges {
            if e.length.value() < u {
                return Err(e);
            }
        }
        Ok(())
    }

    /// The vertex owning a given edge end.
    pub fn end_vertex(&self, end: EdgeEnd) -> usize {
        let e = &self.edges[end.edge];
        match end.tag {
            EndTag::Start => e.start,
            EndTag::End => e.end.expect("end tag on finite edge"),
        }
    }
}

/// Convenience constructors for common test graphs.
impl MetricGraph {
    /// Single finite edge between two vertices.
    pub fn interval(length: f64) -> Self {
        MetricGraph::build(GraphSpec {
            vertices: vec!["a".into(), "b".into()],
            edges: vec![EdgeSpec {
                id: "e".into(),
                from: "a".into(),
                to: Some("b".into()),
                length: EdgeLength::Finite(length),
            }],
        })
        .expect("valid interval")
    }

    /// Star with `n` finite edges of equal length, all oriented outward from
    /// the center vertex `c`; leaves are named `v1..vn`.
    pub fn star(n: usize, length: f64) -> Self {
        let mut vertices = vec!["c".to_string()];
        let mut edges = Vec::new();
        for i in 1..=n {
            vertices.push(format!("v{i}"));
            edges.push(EdgeSpec {
                id: format!("e{i}"),
                from: "c".into(),
                to: Some(format!("v{i}")),
                length: EdgeLength::Finite(length),
            });
        }
        MetricGraph::build(GraphSpec { vertices, edges }).expect("valid star")
    }

    /// Two edges `[0,a]` and `[0,b]` joined at a middle vertex `m`.
    pub fn split_interval(a: f64, b: f64) -> Self {
        MetricGraph::build(GraphSpec {
            vertices: vec!["a".into(), "m".into(), "b".into()],
            edges: vec![
                EdgeSpec {
                    id: "e1".into(),
                    from: "a".into(),
                    to: Some("m".into()),
                    length: EdgeLength::Finite(a),
                },
                EdgeSpec {
                    id: "e2".into(),
                    from: "m".into(),
                    to: Some("b".into()),
                    length: EdgeLength::Finite(b),
                },
            ],
        })
        .expect("valid split interval")
    }
}
