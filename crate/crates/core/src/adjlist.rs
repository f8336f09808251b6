//! Plain adjacency-list text: a line with `n`, then one line `i: j k …` per vertex.
//! Several graphs may share a file, separated by blank lines.

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_ORDER};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdjListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

pub fn to_adjacency_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for v in 0..g.order() {
        let nbrs: Vec<String> = (0..g.order()).filter(|&u| g.has_edge(v, u)).map(|u| u.to_string()).collect();
        if nbrs.is_empty() {
            out.push_str(&format!("{v}:\n"));
        } else {
            out.push_str(&format!("{v}: {}\n", nbrs.join(" ")));
        }
    }
    out
}

/// Parses every graph in the text.
pub fn parse_adjacency_lists(text: &str) -> Result<Vec<Graph>, AdjListError> {
    let mut graphs = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).peekable();
    loop {
        while lines.peek().is_some_and(|(_, l)| l.is_empty()) {
            lines.next();
        }
        let Some((header_line, header)) = lines.next() else {
            return Ok(graphs);
        };
        let n: usize = header.parse().map_err(|_| AdjListError::Syntax {
            line: header_line,
            message: format!("expected a vertex count, found {header:?}"),
        })?;
        if n > MAX_ORDER {
            return Err(AdjListError::Graph { line: header_line, source: GraphError::TooManyVertices(n) });
        }
        let mut edges = Vec::new();
        for expected in 0..n {
            let (line, text) = lines.next().ok_or(AdjListError::Syntax {
                line: header_line,
                message: format!("graph declares {n} vertices but the input ends after {expected}"),
            })?;
            let (label, rest) = text.split_once(':').ok_or(AdjListError::Syntax {
                line,
                message: "expected \"i: neighbors\"".into(),
            })?;
            if label.trim().parse::<usize>().ok() != Some(expected) {
                return Err(AdjListError::Syntax { line, message: format!("expected vertex {expected}, found {:?}", label.trim()) });
            }
            for token in rest.split_whitespace() {
                let u: usize = token
                    .parse()
                    .map_err(|_| AdjListError::Syntax { line, message: format!("bad neighbor {token:?}") })?;
                edges.push((expected, u, line));
            }
        }
        let mut rows = vec![0u64; n];
        for &(v, u, line) in &edges {
            if u >= n {
                return Err(AdjListError::Graph { line, source: GraphError::VertexOutOfRange { vertex: u, order: n } });
            }
            rows[v] |= 1 << u;
        }
        let g = Graph::from_rows(rows).map_err(|source| AdjListError::Graph { line: header_line, source })?;
        graphs.push(g);
    }
}
