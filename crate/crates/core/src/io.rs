//! Graph text and JSON formats.
//!
//! Text format, one graph per file:
//!
//! ```text
//! n 3
//! colors rrb
//! e 0 1
//! e 0 2
//! ```
//!
//! The writer emits edges as `u < v` in lexicographic order; parsing then
//! writing such a file reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_graph_text(src: &str) -> Result<ColoredGraph> {
    let mut lines =
        src.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, first) = lines.next().ok_or_else(|| perr(1, "missing `n <count>` line"))?;
    let n = match first.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", count] => count.parse::<usize>().map_err(|_| perr(ln, format!("bad vertex count {count:?}")))?,
        _ => return Err(perr(ln, "expected `n <count>`")),
    };

    let (ln, second) = lines.next().ok_or_else(|| perr(ln + 1, "missing `colors` line"))?;
    let letters = match second.split_whitespace().collect::<Vec<_>>()[..] {
        ["colors"] => "",
        ["colors", s] => s,
        _ => return Err(perr(ln, "expected `colors <r|b>...`")),
    };
    let colors = letters
        .chars()
        .map(|c| match c {
            'r' => Ok(Color::Red),
            'b' => Ok(Color::Blue),
            _ => Err(perr(ln, format!("bad color letter {c:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if colors.len() != n {
        return Err(perr(ln, format!("{} colors for {n} vertices", colors.len())));
    }

    let mut g = ColoredGraph::edgeless(colors);
    for (ln, line) in lines {
        let (u, v) = match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["e", u, v] => {
                let u = u.parse::<usize>().map_err(|_| perr(ln, format!("bad vertex id {u:?}")))?;
                let v = v.parse::<usize>().map_err(|_| perr(ln, format!("bad vertex id {v:?}")))?;
                (u, v)
            }
            _ => return Err(perr(ln, "expected `e <u> <v>`")),
        };
        if u >= n || v >= n {
            return Err(perr(ln, format!("vertex {} out of range", u.max(v))));
        }
        if u == v {
            return Err(perr(ln, format!("self-loop at {u}")));
        }
        if g.adjacent(u, v) {
            return Err(perr(ln, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

pub fn write_graph_text(g: &ColoredGraph) -> String {
    let mut out = format!("n {}\ncolors", g.n());
    if g.n() > 0 {
        out.push(' ');
        out.push_str(&g.color_string());
    }
    out.push('\n');
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonVertex {
    id: usize,
    color: Color,
}

/// The JSON mirror of the text format.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    vertices: Vec<JsonVertex>,
    edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &ColoredGraph) -> Self {
        GraphJson {
            vertices: g.vertices().map(|v| JsonVertex { id: v, color: g.color(v) }).collect(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<ColoredGraph> {
        let mut colors = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(Error::Format(format!("vertex at position {i} has id {}", v.id)));
            }
            colors.push(v.color);
        }
        let mut g = ColoredGraph::edgeless(colors);
        for &[u, v] in &self.edges {
            if u < g.n() && v < g.n() && g.adjacent(u, v) {
                return Err(Error::Format(format!("duplicate edge [{u},{v}]")));
            }
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }
}

impl Serialize for ColoredGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from_graph(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GraphJson::deserialize(d)?.to_graph().map_err(serde::de::Error::custom)
    }
}

pub fn parse_graph_json(src: &str) -> Result<ColoredGraph> {
    let doc: GraphJson = serde_json::from_str(src).map_err(|e| Error::Format(e.to_string()))?;
    doc.to_graph()
}

pub fn graph_to_json_value(g: &ColoredGraph) -> serde_json::Value {
    serde_json::to_value(GraphJson::from_graph(g)).expect("graph serializes")
}

pub fn write_graph_json(g: &ColoredGraph) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).expect("graph serializes")
}

/// Parses either format, choosing JSON when the first non-blank character
/// is `{`.
pub fn parse_graph_any(src: &str) -> Result<ColoredGraph> {
    if src.trim_start().starts_with('{') {
        parse_graph_json(src)
    } else {
        parse_graph_text(src)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let src = "n 4\ncolors rrbb\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 2 3\n";
        let g = parse_graph_text(src).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(write_graph_text(&g), src);
        let empty = "n 0\ncolors\n";
        assert_eq!(write_graph_text(&parse_graph_text(empty).unwrap()), empty);
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"vertices":[{"id":0,"color":"red"},{"id":1,"color":"blue"}],"edges":[[0,1]]}"#;
        let g = parse_graph_json(src).unwrap();
        assert_eq!(write_graph_json(&g), src);
        assert_eq!(parse_graph_any(src).unwrap(), g);
    }

    #[test]
    fn text_errors_carry_lines() {
        let e = parse_graph_text("n 2\ncolors rx\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_graph_text("n 2\ncolors rb\ne 0 5\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_graph_text("n 2\ncolors rb\ne 0 1\ne 1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        assert!(parse_graph_text("").is_err());
        assert!(parse_graph_text("n 1\ncolors rb\n").is_err());
    }

    #[test]
    fn json_errors() {
        assert!(parse_graph_json(r#"{"vertices":[{"id":1,"color":"red"}],"edges":[]}"#).is_err());
        assert!(parse_graph_json(r#"{"vertices":[{"id":0,"color":"red"}],"edges":[[0,0]]}"#).is_err());
        assert!(parse_graph_json(r#"{"vertices":[],"edges":[],"x":1}"#).is_err());
    }
}
