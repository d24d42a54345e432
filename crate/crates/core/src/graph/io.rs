use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Label {
    Text(String),
    Int(i64),
}

impl Label {
    fn into_string(self) -> String {
        match self {
            Label::Text(s) => s,
            Label::Int(i) => i.to_string(),
        }
    }
}

/// On-disk graph: every unordered edge listed once.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    vertices: Vec<Label>,
    edges: Vec<[Label; 2]>,
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let labels: Vec<String> = file.vertices.into_iter().map(Label::into_string).collect();
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut edges = Vec::with_capacity(file.edges.len());
    for [u, v] in file.edges {
        let (u, v) = (u.into_string(), v.into_string());
        let lookup = |l: &str| {
            index.get(l).copied().ok_or_else(|| Error::Parse(format!("edge endpoint {l:?} is not a declared vertex")))
        };
        edges.push((lookup(&u)?, lookup(&v)?));
    }
    Graph::new(labels, &edges).map_err(|e| Error::Parse(e.to_string()))
}

pub fn graph_to_json(g: &Graph) -> String {
    let file = GraphFile {
        vertices: g.labels().iter().cloned().map(Label::Text).collect(),
        edges: g
            .edges()
            .map(|(u, v)| [Label::Text(g.label(u).to_owned()), Label::Text(g.label(v).to_owned())])
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("graph file serializes")
}

/// One `u v` pair per line; `#` starts a comment. Vertices are numbered in
/// order of first appearance.
pub fn graph_from_edge_list(text: &str) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let ids: Vec<usize> = match tokens.as_slice() {
            [single] => vec![intern(single, &mut labels, &mut index)],
            [u, v] => vec![intern(u, &mut labels, &mut index), intern(v, &mut labels, &mut index)],
            _ => return Err(Error::Parse(format!("line {}: expected `u v`, got {line:?}", lineno + 1))),
        };
        if let [u, v] = ids[..] {
            edges.push((u, v));
        }
    }
    Graph::new(labels, &edges)
}

fn intern(token: &str, labels: &mut Vec<String>, index: &mut HashMap<String, usize>) -> usize {
    *index.entry(token.to_owned()).or_insert_with(|| {
        labels.push(token.to_owned());
        labels.len() - 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen;

    #[test]
    fn json_roundtrip() {
        let g = petersen();
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_symmetrizes_and_accepts_integers() {
        let g = graph_from_json(r#"{"vertices": [0, 1, "x"], "edges": [[0, 1], ["x", 1]]}"#).unwrap();
        assert!(g.has_edge(1, 0));
        assert!(g.has_edge(1, 2));
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(graph_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            graph_from_json(r#"{"vertices": [0], "edges": [[0, 1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(graph_from_json(r#"{"vertices": [0, 0], "edges": []}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn edge_list() {
        let g = graph_from_edge_list("# triangle\na b\nb c # trailing\n\nc a\nd\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(3), 0);
        assert!(graph_from_edge_list("a b c\n").is_err());
    }
}
