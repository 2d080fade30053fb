//! Graph and partition file formats.
//!
//! Graph JSON: `{"n": 16, "family": "gamma", "vertices": ["2", ...],
//! "edges": [[0, 3], ...]}` with edges `i < j`, sorted. Labels are rendered
//! as in [`VertexLabel`]'s `Display`: residues as decimals, pairs as `(a,b)`.
//!
//! Partition JSON: `{"R": [labels...], "B": [labels...]}`; labels may be
//! strings or bare integers.

use std::collections::HashMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use zdvce::graph::{Family, GraphError, LabeledGraph, VertexLabel};
use zdvce::vce::{Bipartition, Side};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot parse {what}: {source}")]
    Parse {
        what: &'static str,
        source: serde_json::Error,
    },
    #[error("malformed vertex label `{0}`")]
    BadLabel(String),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("partition names label {0}, which is not a vertex of the graph")]
    UnknownLabel(String),
    #[error("partition lists vertex {0} more than once")]
    DuplicateLabel(String),
    #[error("partition omits vertex {0}")]
    MissingVertex(String),
    #[error("partition side {0} is empty")]
    EmptySide(Side),
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
}

pub fn graph_to_json(g: &LabeledGraph, family: Option<Family>) -> String {
    let doc = GraphDoc {
        n: g.modulus(),
        family: family.map(|f| f.name().to_string()),
        vertices: g.labels().iter().map(|l| l.to_string()).collect(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&doc).expect("graph documents always serialize")
}

fn parse_pair(s: &str) -> Option<(u64, u64)> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Parses a rendered label; the family decides which variant a plain
/// residue or a pair denotes.
pub fn parse_label(s: &str, family: Option<Family>) -> Result<VertexLabel, FormatError> {
    let bad = || FormatError::BadLabel(s.to_string());
    let s = s.trim();
    if let Ok(k) = s.parse::<u64>() {
        return match family {
            Some(Family::TotalOfGamma) => Ok(VertexLabel::TotalOriginal(k)),
            Some(Family::LineOfGamma) => Err(bad()),
            _ => Ok(VertexLabel::Residue(k)),
        };
    }
    let (a, b) = parse_pair(s).ok_or_else(bad)?;
    match family {
        Some(Family::TotalOfGamma) => Ok(VertexLabel::TotalEdge(a, b)),
        Some(Family::LineOfGamma) | None => Ok(VertexLabel::EdgePair(a, b)),
        _ => Err(bad()),
    }
}

/// Reads a graph document back into a graph and its family, if named.
pub fn graph_from_json(text: &str) -> Result<(LabeledGraph, Option<Family>), FormatError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|source| FormatError::Parse {
        what: "graph file",
        source,
    })?;
    let family = doc
        .family
        .as_deref()
        .map(|f| f.parse::<Family>().map_err(|e| FormatError::BadLabel(e.to_string())))
        .transpose()?;
    let labels = doc
        .vertices
        .iter()
        .map(|s| parse_label(s, family))
        .collect::<Result<Vec<_>, _>>()?;
    let edges = doc.edges.iter().map(|&[u, v]| (u, v));
    Ok((LabeledGraph::from_edges(labels, doc.n, edges)?, family))
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum LabelToken {
    Number(u64),
    Text(String),
}

impl LabelToken {
    fn render(&self) -> String {
        match self {
            LabelToken::Number(k) => k.to_string(),
            LabelToken::Text(s) => s.trim().to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionDoc {
    #[serde(rename = "R")]
    r: Vec<LabelToken>,
    #[serde(rename = "B")]
    b: Vec<LabelToken>,
}

/// Matches a partition document against `g` by rendered label.
pub fn partition_from_json(text: &str, g: &LabeledGraph) -> Result<Bipartition, FormatError> {
    let doc: PartitionDoc = serde_json::from_str(text).map_err(|source| FormatError::Parse {
        what: "partition file",
        source,
    })?;
    let index: HashMap<String, usize> = g
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (normalize(&l.to_string()), i))
        .collect();
    let mut sides: Vec<Option<Side>> = vec![None; g.len()];
    for (side, tokens) in [(Side::R, &doc.r), (Side::B, &doc.b)] {
        for token in tokens {
            let rendered = token.render();
            let &v = index
                .get(&normalize(&rendered))
                .ok_or_else(|| FormatError::UnknownLabel(rendered.clone()))?;
            if sides[v].replace(side).is_some() {
                return Err(FormatError::DuplicateLabel(rendered));
            }
        }
    }
    for (side, tokens) in [(Side::R, &doc.r), (Side::B, &doc.b)] {
        if tokens.is_empty() {
            return Err(FormatError::EmptySide(side));
        }
    }
    let sides = sides
        .into_iter()
        .enumerate()
        .map(|(v, s)| s.ok_or_else(|| FormatError::MissingVertex(g.label(v).to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Bipartition::new(sides).expect("both sides checked nonempty"))
}

/// Drops whitespace so `(2, 8)` and `(2,8)` match.
fn normalize(label: &str) -> String {
    label.chars().filter(|c| !c.is_whitespace()).collect()
}

fn dot_id(label: &VertexLabel) -> String {
    match label.residue() {
        Some(k) => k.to_string(),
        None => format!("\"{label}\""),
    }
}

/// Undirected DOT rendering; node names are the vertex labels.
pub fn graph_to_dot(g: &LabeledGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for label in g.labels() {
        writeln!(out, "  {};", dot_id(label)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", dot_id(&g.label(u)), dot_id(&g.label(v))).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use zdvce::graph::gamma;

    #[test]
    fn label_parsing_follows_family() {
        assert_eq!(parse_label("8", Some(Family::Gamma)).unwrap(), VertexLabel::Residue(8));
        assert_eq!(
            parse_label("(2, 8)", Some(Family::LineOfGamma)).unwrap(),
            VertexLabel::EdgePair(2, 8)
        );
        assert_eq!(
            parse_label("5", Some(Family::TotalOfGamma)).unwrap(),
            VertexLabel::TotalOriginal(5)
        );
        assert_eq!(
            parse_label("(2,5)", Some(Family::TotalOfGamma)).unwrap(),
            VertexLabel::TotalEdge(2, 5)
        );
        assert_eq!(parse_label("(2,8)", None).unwrap(), VertexLabel::EdgePair(2, 8));
        assert!(parse_label("8", Some(Family::LineOfGamma)).is_err());
        assert!(parse_label("(2,8)", Some(Family::Omega)).is_err());
        assert!(parse_label("x", None).is_err());
        assert!(parse_label("(2,8", None).is_err());
    }

    #[test]
    fn json_layout_is_stable() {
        let g = gamma(6).unwrap();
        assert_eq!(
            graph_to_json(&g, Some(Family::Gamma)),
            r#"{"n":6,"family":"gamma","vertices":["2","3","4"],"edges":[[0,1],[1,2]]}"#
        );
        assert_eq!(
            graph_to_json(&gamma(7).unwrap(), Some(Family::Gamma)),
            r#"{"n":7,"family":"gamma","vertices":[],"edges":[]}"#
        );
    }

    #[test]
    fn dot_uses_labels() {
        let dot = graph_to_dot(&gamma(16).unwrap(), "gamma(16)");
        assert!(dot.lines().any(|l| l.trim() == "8 -- 10;"));
        assert_eq!(dot.matches(" -- ").count(), 7);
        let line = zdvce::graph::line_graph(&gamma(16).unwrap());
        let dot = graph_to_dot(&line, "line");
        assert!(dot.contains("\"(4,12)\" -- \"(8,12)\";") || dot.contains("\"(4,8)\" -- \"(4,12)\";"));
    }

    #[test]
    fn partition_validation() {
        let g = gamma(15).unwrap();
        let ok = partition_from_json(r#"{"R": [3, 6, "9", 12], "B": ["5", 10]}"#, &g).unwrap();
        assert_eq!(ok.members(Side::R).len(), 4);

        let err = |text: &str| partition_from_json(text, &g).unwrap_err();
        assert!(matches!(err("{"), FormatError::Parse { .. }));
        assert!(matches!(
            err(r#"{"R": [3, 6, 9, 12, 7], "B": [5, 10]}"#),
            FormatError::UnknownLabel(l) if l == "7"
        ));
        assert!(matches!(
            err(r#"{"R": [3, 3, 6, 9, 12], "B": [5, 10]}"#),
            FormatError::DuplicateLabel(l) if l == "3"
        ));
        assert!(matches!(
            err(r#"{"R": [3, 6, 9], "B": [5, 10]}"#),
            FormatError::MissingVertex(l) if l == "12"
        ));
        assert!(matches!(
            err(r#"{"R": [], "B": [3, 5, 6, 9, 10, 12]}"#),
            FormatError::EmptySide(Side::R)
        ));
    }
}
