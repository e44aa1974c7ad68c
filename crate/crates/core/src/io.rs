//! Reading graphs from edge lists and JSON.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{check_cap, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Json,
}

/// Parses a graph and checks it against the configured vertex cap.
///
/// Edge lists may use sparse identifiers; they are relabelled densely in
/// ascending identifier order. A line holding a single identifier declares
/// an isolated vertex.
pub fn load_graph(data: &[u8], format: Format) -> Result<Graph> {
    let g = match format {
        Format::EdgeList => parse_edge_list(data)?,
        Format::Json => parse_json(data)?,
    };
    check_cap(g.n())?;
    Ok(g)
}

fn parse_json(data: &[u8]) -> Result<Graph> {
    serde_json::from_slice::<Graph>(data).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn parse_edge_list(data: &[u8]) -> Result<Graph> {
    let text = std::str::from_utf8(data).map_err(|e| Error::Parse {
        line: 1 + data[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count(),
        column: 0,
        message: "input is not valid UTF-8".into(),
    })?;

    let mut ids: BTreeMap<u64, usize> = BTreeMap::new();
    let mut raw_edges: Vec<(u64, u64, usize, usize)> = Vec::new();

    for (index, line) in text.lines().enumerate() {
        let lineno = index + 1;
        let content = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        };
        let mut tokens = Vec::new();
        let mut offset = 0;
        for piece in content.split_whitespace() {
            let col = content[offset..].find(piece).unwrap() + offset;
            offset = col + piece.len();
            let value: u64 = piece.parse().map_err(|_| Error::Parse {
                line: lineno,
                column: col + 1,
                message: format!("expected a nonnegative vertex identifier, found {piece:?}"),
            })?;
            tokens.push((value, col + 1));
        }
        match tokens.as_slice() {
            [] => {}
            [(v, _)] => {
                ids.insert(*v, 0);
            }
            [(u, _), (v, col)] => {
                if u == v {
                    return Err(Error::Parse {
                        line: lineno,
                        column: *col,
                        message: format!("self-loop at vertex {u}"),
                    });
                }
                ids.insert(*u, 0);
                ids.insert(*v, 0);
                raw_edges.push((*u, *v, lineno, *col));
            }
            [_, _, (_, col), ..] => {
                return Err(Error::Parse {
                    line: lineno,
                    column: *col,
                    message: "expected at most two identifiers per line".into(),
                })
            }
        }
    }

    if ids.len() > crate::graph::HARD_VERTEX_LIMIT {
        return Err(Error::Capacity {
            requested: ids.len(),
            cap: crate::max_vertices(),
        });
    }
    for (i, slot) in ids.values_mut().enumerate() {
        *slot = i;
    }
    let mut edges = Vec::with_capacity(raw_edges.len());
    let mut seen = std::collections::BTreeSet::new();
    for (u, v, line, column) in raw_edges {
        let (a, b) = (ids[&u], ids[&v]);
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::Parse {
                line,
                column,
                message: format!("parallel edge {u}-{v}"),
            });
        }
        edges.push((a, b));
    }
    Graph::new(ids.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn edge_list_path() {
        let g = load_graph(b"0 1\n1 2", Format::EdgeList).unwrap();
        assert_eq!(g, Graph::new(3, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(g.edges().collect::<Vec<_>>(), fixtures::p3().edges().collect::<Vec<_>>());
    }

    #[test]
    fn json_cycle() {
        let g = load_graph(br#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}"#, Format::Json).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), fixtures::c4().edges().collect::<Vec<_>>());
    }

    #[test]
    fn self_loop_rejected_with_position() {
        match load_graph(b"0 1\n1 1\n", Format::EdgeList) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_sparse_ids() {
        let g = load_graph(b"# header\n10 20 # edge\n30\n", Format::EdgeList).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn garbage_reports_column() {
        match load_graph(b"0 x", Format::EdgeList) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cap_enforced() {
        let text: String = (0..17).map(|v| format!("{v}\n")).collect();
        assert!(matches!(
            load_graph(text.as_bytes(), Format::EdgeList),
            Err(Error::Capacity { .. })
        ));
    }
}
