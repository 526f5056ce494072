//! Graph JSON documents and small text formats used by the CLI.
//!
//! A graph document is `{"n": <vertices>, "edges": [[u, v], ...]}` with an
//! optional `"labels"` array. A graph argument on the command line is either
//! a path to such a document or `butterfly:R`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::butterfly::{Butterfly, ButterflyCoordinate, ButterflyError};
use crate::certificate::GraphDescriptor;
use crate::graph::{Edge, Graph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Butterfly(#[from] ButterflyError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad vertex list {0:?}")]
    VertexList(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("set document must be an array or an object with \"vertices\" or \"edges\"")]
    SetShape,
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphDocument {
    pub fn of(g: &Graph) -> Self {
        GraphDocument {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&e| e.into()).collect(),
            labels: g.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let g = Graph::from_edges(self.n, self.edges.iter().map(|&p| Edge::from(p)))?;
        match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let doc: GraphDocument = serde_json::from_str(text)?;
    Ok(doc.to_graph()?)
}

pub fn graph_to_json(g: &Graph) -> String {
    let mut s = serde_json::to_string_pretty(&GraphDocument::of(g)).expect("graph serializes");
    s.push('\n');
    s
}

pub fn read_file(path: &Path) -> Result<String, ParseError> {
    std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A graph named on the command line, with the descriptor certificates
/// record for it.
pub struct LoadedGraph {
    pub graph: Graph,
    pub descriptor: GraphDescriptor,
    pub butterfly: Option<Butterfly>,
}

pub fn load_graph(arg: &str) -> Result<LoadedGraph, ParseError> {
    if let Some(r) = arg.strip_prefix("butterfly:") {
        let r: usize = r.trim().parse().map_err(|_| ParseError::VertexList(arg.to_string()))?;
        let bf = Butterfly::new(r)?;
        return Ok(LoadedGraph {
            graph: bf.graph().clone(),
            descriptor: GraphDescriptor::Butterfly { r },
            butterfly: Some(bf),
        });
    }
    let graph = parse_graph(&read_file(Path::new(arg))?)?;
    Ok(LoadedGraph {
        descriptor: GraphDescriptor::inline(&graph),
        graph,
        butterfly: None,
    })
}

/// Parses `0,3,5` or, for butterflies, `[1,0] [3,0]`.
pub fn parse_vertex_list(text: &str, n: usize, butterfly: Option<&Butterfly>) -> Result<Vec<Vertex>, ParseError> {
    let mut out = Vec::new();
    if text.contains('[') {
        let bf = butterfly.ok_or_else(|| ParseError::VertexList(text.to_string()))?;
        let mut rest = text;
        while let Some(start) = rest.find('[') {
            let end = rest[start..]
                .find(']')
                .ok_or_else(|| ParseError::VertexList(text.to_string()))?;
            let c: ButterflyCoordinate = rest[start..start + end + 1].parse()?;
            out.push(bf.index(c)?);
            rest = &rest[start + end + 1..];
        }
    } else {
        for tok in text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            out.push(tok.parse().map_err(|_| ParseError::VertexList(text.to_string()))?);
        }
    }
    if let Some(&vertex) = out.iter().find(|&&v| v >= n) {
        return Err(ParseError::VertexOutOfRange { vertex, n });
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SetDocument {
    Vertices(Vec<Vertex>),
    Edges(Vec<[Vertex; 2]>),
    Object {
        #[serde(default)]
        vertices: Option<Vec<Vertex>>,
        #[serde(default)]
        edges: Option<Vec<[Vertex; 2]>>,
    },
}

/// Vertex set from a JSON array of indices or `{"vertices": [...]}`.
pub fn parse_vertex_set(text: &str) -> Result<Vec<Vertex>, ParseError> {
    match serde_json::from_str::<SetDocument>(text)? {
        SetDocument::Vertices(v) => Ok(v),
        SetDocument::Object { vertices: Some(v), .. } => Ok(v),
        _ => Err(ParseError::SetShape),
    }
}

/// Edge set from a JSON array of pairs or `{"edges": [[u, v], ...]}`.
pub fn parse_edge_set(text: &str) -> Result<Vec<Edge>, ParseError> {
    match serde_json::from_str::<SetDocument>(text)? {
        SetDocument::Edges(e) | SetDocument::Object { edges: Some(e), .. } => {
            Ok(e.into_iter().map(Edge::from).collect())
        }
        SetDocument::Vertices(v) if v.is_empty() => Ok(Vec::new()),
        _ => Err(ParseError::SetShape),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documents() {
        let p3 = parse_graph(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(p3.edge_count(), 2);
        let single = parse_graph(r#"{"n":1,"edges":[]}"#).unwrap();
        assert_eq!(single.vertex_count(), 1);
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(
            parse_graph(r#"{"n":2,"edges":[[0,0]]}"#),
            Err(ParseError::Graph(GraphError::SelfLoop { position: 0, vertex: 0 }))
        ));
        assert!(matches!(
            parse_graph(r#"{"n":2,"edges":[[0,1],]}"#),
            Err(ParseError::Json { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph(r#"{"n":2,"edges":[[0,5]]}"#),
            Err(ParseError::Graph(GraphError::VertexOutOfRange { .. }))
        ));
        assert!(matches!(
            parse_graph(r#"{"n":2,"edges":[[0,1,1]]}"#),
            Err(ParseError::Json { .. })
        ));
    }

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertex_list("3, 0,1", 4, None).unwrap(), vec![0, 1, 3]);
        assert!(parse_vertex_list("9", 4, None).is_err());
        let bf = Butterfly::new(3).unwrap();
        assert_eq!(parse_vertex_list("[1,0] [2,1]", 32, Some(&bf)).unwrap(), vec![1, 10]);
    }

    #[test]
    fn set_documents() {
        assert_eq!(parse_vertex_set("[0,2]").unwrap(), vec![0, 2]);
        assert_eq!(parse_vertex_set(r#"{"vertices":[1]}"#).unwrap(), vec![1]);
        assert_eq!(parse_edge_set("[[1,0]]").unwrap(), vec![Edge::new(0, 1)]);
        assert_eq!(parse_edge_set(r#"{"edges":[[2,3]]}"#).unwrap(), vec![Edge::new(2, 3)]);
        assert!(parse_edge_set("[1,2]").is_err());
    }
}
