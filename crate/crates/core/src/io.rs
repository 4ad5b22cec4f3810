//! Text formats.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 0-based labels.
//! Coloring: an optional `k <count>` header, then one `edge_index color` line
//! per edge with 1-based colors. A coloring section may directly follow an
//! edge list in the same stream. Lines starting with `#` and blank lines are
//! skipped everywhere.

use std::fmt::Write as _;

use serde_json::json;

use crate::decompose::DecompositionTrace;
use crate::error::{Error, Result};
use crate::graph::{Graph, Tree};
use crate::verify::EdgeColoring;

/// DOT colors indexed by `color − 1`, wrapping past the end.
pub const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
    "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3",
];

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let mut it = s.split_whitespace();
    let mut field = |what: &str| -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                msg: format!("missing {what}"),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line,
                msg: format!("bad {what}: {e}"),
            })
    };
    let a = field("first field")?;
    let b = field("second field")?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "expected two fields".into(),
        });
    }
    Ok((a, b))
}

/// Parsed edge list plus whatever content lines follow it.
pub struct EdgeList<'a> {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub rest: Vec<(usize, &'a str)>,
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList<'_>> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(hl, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, s) = lines.next().ok_or(Error::Parse {
            line: hl,
            msg: format!("header promises {m} edges, found {}", edges.len()),
        })?;
        edges.push(parse_pair(line, s)?);
    }
    Ok(EdgeList {
        n,
        edges,
        rest: lines.collect(),
    })
}

/// Reads a tree; a trailing coloring section, if any, is ignored.
pub fn read_tree(text: &str) -> Result<Tree> {
    let list = parse_edge_list(text)?;
    Tree::new(list.n, list.edges)
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let list = parse_edge_list(text)?;
    Graph::new(list.n, list.edges)
}

/// Reads a tree and, when present, the coloring section that follows it.
pub fn read_tree_with_coloring(text: &str) -> Result<(Tree, Option<EdgeColoring>)> {
    let list = parse_edge_list(text)?;
    let tree = Tree::new(list.n, list.edges)?;
    let coloring = if list.rest.is_empty() {
        None
    } else {
        Some(coloring_from_lines(&list.rest, tree.m())?)
    };
    Ok((tree, coloring))
}

pub fn parse_coloring(text: &str, m: usize) -> Result<EdgeColoring> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    coloring_from_lines(&lines, m)
}

fn coloring_from_lines(lines: &[(usize, &str)], m: usize) -> Result<EdgeColoring> {
    let mut declared_k = None;
    let mut body = lines;
    if let Some(&(line, first)) = lines.first() {
        if let Some(k) = first.strip_prefix('k') {
            let k = k.trim().parse::<u32>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad color count: {e}"),
            })?;
            declared_k = Some(k);
            body = &lines[1..];
        }
    }
    let mut colors = vec![0u32; m];
    let mut seen = 0;
    for &(line, s) in body {
        let (e, c) = parse_pair(line, s)?;
        if e >= m {
            return Err(Error::BadEdgeIndex { index: e, m });
        }
        if colors[e] != 0 {
            return Err(Error::Parse {
                line,
                msg: format!("edge {e} colored twice"),
            });
        }
        if c == 0 {
            return Err(Error::BadColor {
                edge: e,
                color: 0,
                k: declared_k.unwrap_or(0),
            });
        }
        colors[e] = c as u32;
        seen += 1;
    }
    if seen != m {
        return Err(Error::CoverageError { expected: m, got: seen });
    }
    match declared_k {
        Some(k) => EdgeColoring::with_k(k, colors),
        None => EdgeColoring::new(colors),
    }
}

pub fn write_edge_list(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = format!("{} {}\n", n, edges.len());
    for &(u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_tree(tree: &Tree) -> String {
    write_edge_list(tree.n(), tree.edges())
}

pub fn write_coloring(c: &EdgeColoring) -> String {
    let mut out = format!("k {}\n", c.k());
    for (e, col) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "{e} {col}");
    }
    out
}

/// `{"d": …, "rounds": […], "coloring": […]}`
pub fn trace_json(trace: &DecompositionTrace) -> serde_json::Value {
    json!({
        "d": trace.depth(),
        "rounds": trace.rounds,
        "coloring": trace.depth_of,
    })
}

/// Graphviz rendering with edges labeled and colored by their color id.
/// With a trace, pen width shrinks with depth so early cuts stand out.
pub fn to_dot(tree: &Tree, coloring: Option<&EdgeColoring>, trace: Option<&DecompositionTrace>) -> String {
    let mut out = String::from("graph T {\n  node [shape=circle];\n");
    for v in 0..tree.n() {
        let _ = writeln!(out, "  {v};");
    }
    let d = trace.map_or(0, DecompositionTrace::depth);
    for (e, &(u, v)) in tree.edges().iter().enumerate() {
        let mut attrs = Vec::new();
        if let Some(c) = coloring {
            let col = c.color(e);
            attrs.push(format!("label=\"{col}\""));
            attrs.push(format!("color=\"{}\"", PALETTE[(col as usize - 1) % PALETTE.len()]));
        }
        if let Some(t) = trace {
            let width = d + 1 - t.depth_of[e];
            attrs.push(format!("penwidth={width}"));
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {u} -- {v};");
        } else {
            let _ = writeln!(out, "  {u} -- {v} [{}];", attrs.join(", "));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{algorithm1, TieBreak};

    #[test]
    fn edge_list_with_comments() {
        let text = "# a path\n4 3\n0 1\n\n1 2\n# middle\n2 3\n";
        let t = read_tree(text).unwrap();
        assert_eq!(t.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(write_tree(&t), "4 3\n0 1\n1 2\n2 3\n");
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(read_tree(""), Err(Error::Parse { .. })));
        assert!(matches!(read_tree("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(read_tree("3 2\n0 1\n1 x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(read_tree("3 2\n0 1\n1 0\n"), Err(Error::DuplicateEdge { .. })));
    }

    #[test]
    fn coloring_sections() {
        let c = parse_coloring("k 2\n0 1\n2 1\n1 2\n", 3).unwrap();
        assert_eq!((c.k(), c.colors()), (2, &[1, 2, 1][..]));
        let c = parse_coloring("0 1\n1 2\n2 2\n", 3).unwrap();
        assert_eq!(c.k(), 2);
        assert!(matches!(parse_coloring("0 1\n1 2\n", 3), Err(Error::CoverageError { .. })));
        assert!(matches!(parse_coloring("0 1\n0 2\n1 1\n", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_coloring("0 0\n", 1), Err(Error::BadColor { .. })));
        assert!(matches!(parse_coloring("k 1\n0 2\n", 1), Err(Error::BadColor { .. })));

        let (t, c) = read_tree_with_coloring("3 2\n0 1\n1 2\nk 2\n0 1\n1 2\n").unwrap();
        assert_eq!(t.m(), 2);
        assert_eq!(c.unwrap().colors(), &[1, 2]);
        assert!(read_tree_with_coloring("2 1\n0 1\n").unwrap().1.is_none());
    }

    #[test]
    fn dot_and_json() {
        let t = Tree::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let (c, trace) = algorithm1(&t, TieBreak::default()).unwrap();
        let dot = to_dot(&t, Some(&c), Some(&trace));
        assert!(dot.contains("1 -- 2 [label=\"1\", color=\"#e41a1c\", penwidth=2];"));
        assert!(dot.contains("0 -- 1 [label=\"2\", color=\"#377eb8\", penwidth=1];"));
        assert_eq!(
            trace_json(&trace).to_string(),
            r#"{"coloring":[2,1,2],"d":2,"rounds":[[1],[0,2]]}"#
        );
    }
}
