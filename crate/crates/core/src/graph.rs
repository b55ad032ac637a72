//! Undirected graphs over named vertices, plus the plain-text exchange
//! format used by the CLI (one vertex-list line, then one `a b` line per
//! edge).

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A vertex name: a short token such as `u`, `v'`, `x`, `A`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel(String);

impl VertexLabel {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidVertexName(name));
        }
        Ok(VertexLabel(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// Builds a label from a literal known to be well-formed.
pub fn vl(name: &str) -> VertexLabel {
    VertexLabel::new(name).expect("well-formed vertex name")
}

/// An undirected edge. Endpoints are stored sorted, so `Edge` equality and
/// ordering are orientation-free.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexLabel, VertexLabel);

impl Edge {
    pub fn new(a: VertexLabel, b: VertexLabel) -> Result<Self> {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => Ok(Edge(a, b)),
            Greater => Ok(Edge(b, a)),
            Equal => Err(Error::LoopEdge(a)),
        }
    }

    pub fn ends(&self) -> (&VertexLabel, &VertexLabel) {
        (&self.0, &self.1)
    }

    pub fn touches(&self, v: &VertexLabel) -> bool {
        &self.0 == v || &self.1 == v
    }

    pub fn other(&self, v: &VertexLabel) -> Option<&VertexLabel> {
        if &self.0 == v {
            Some(&self.1)
        } else if &self.1 == v {
            Some(&self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.0)?;
        t.serialize_element(&self.1)?;
        t.end()
    }
}

/// A finite simple graph. Vertex and edge sets are kept sorted, so equal
/// graphs compare equal regardless of construction order and all iteration
/// is deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    vertices: BTreeSet<VertexLabel>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexLabel>,
        edges: impl IntoIterator<Item = (VertexLabel, VertexLabel)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<_> = vertices.into_iter().collect();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            set.insert(Edge::new(a, b)?);
        }
        Self::from_parts(vertices, set)
    }

    pub fn from_parts(vertices: BTreeSet<VertexLabel>, edges: BTreeSet<Edge>) -> Result<Self> {
        for e in &edges {
            for v in [&e.0, &e.1] {
                if !vertices.contains(v) {
                    return Err(Error::UnknownVertex(v.clone()));
                }
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexLabel> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &VertexLabel) -> bool {
        self.vertices.contains(v)
    }

    pub fn adjacent(&self, a: &VertexLabel, b: &VertexLabel) -> bool {
        match Edge::new(a.clone(), b.clone()) {
            Ok(e) => self.edges.contains(&e),
            Err(_) => false,
        }
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn neighbors(&self, v: &VertexLabel) -> Vec<&VertexLabel> {
        self.edges.iter().filter_map(|e| e.other(v)).collect()
    }

    pub fn degree(&self, v: &VertexLabel) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexLabel> {
        &self.vertices
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Parses the text format: first non-comment line lists the vertices,
    /// each following line is `a b`. `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let mut vertices = BTreeSet::new();
        for tok in header.split_whitespace() {
            vertices.insert(VertexLabel::new(tok)?);
        }
        let mut edges = BTreeSet::new();
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::Parse(format!(
                    "edge line must have exactly two names, got {line:?}"
                )));
            }
            edges.insert(Edge::new(VertexLabel::new(toks[0])?, VertexLabel::new(toks[1])?)?);
        }
        Graph::from_parts(vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.vertices.iter().map(|v| v.as_str()).collect();
        out.push_str(&names.join(" "));
        out.push('\n');
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.0, e.1));
        }
        out
    }
}
