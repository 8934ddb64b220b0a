//! Plain-text matrix and graph files.
//!
//! Matrix: `sym <n>` followed by `n` rows of `n` numbers.
//! Graph: `graph <n> <m>` followed by `m` lines `u v`, `1 ≤ u < v ≤ n`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::linalg::{LinalgError, SymmetricMatrix};

/// Asymmetry accepted when reading matrix files.
pub const PARSE_SYMMETRY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Matrix(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Shortest exact form for integers, 17 significant digits otherwise.
pub fn format_scalar(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.16e}")
    }
}

pub fn write_matrix(a: &SymmetricMatrix) -> String {
    let n = a.n();
    let mut out = String::with_capacity(n * n * 4 + 16);
    writeln!(out, "sym {n}").unwrap();
    for i in 0..n {
        let row: Vec<String> = a.row(i).iter().map(|&v| format_scalar(v)).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    fields: usize,
) -> Result<Vec<usize>, FormatError> {
    let (no, header) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(syntax(no, format!("expected header `{keyword}`")));
    }
    let values: Vec<usize> = parts
        .map(|p| p.parse().map_err(|_| syntax(no, format!("bad count `{p}`"))))
        .collect::<Result<_, _>>()?;
    if values.len() != fields {
        return Err(syntax(no, format!("`{keyword}` header takes {fields} field(s)")));
    }
    Ok(values)
}

pub fn parse_matrix(text: &str) -> Result<SymmetricMatrix, FormatError> {
    let mut lines = content_lines(text);
    let n = parse_header(&mut lines, "sym", 1)?[0];
    if n == 0 {
        return Err(syntax(1, "matrix size must be positive"));
    }
    let mut data = Vec::with_capacity(n * n);
    for r in 0..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| syntax(r + 2, format!("expected {n} rows, found {r}")))?;
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| syntax(no, format!("bad number `{tok}`")))?;
            data.push(v);
        }
        if data.len() - before != n {
            return Err(syntax(no, format!("expected {n} entries, found {}", data.len() - before)));
        }
    }
    if let Some((no, _)) = lines.next() {
        return Err(syntax(no, "trailing content after matrix rows"));
    }
    Ok(SymmetricMatrix::from_row_major_with_tolerance(
        n,
        data,
        PARSE_SYMMETRY_TOLERANCE,
    )?)
}

pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::with_capacity(edges.len() * 8 + 16);
    writeln!(out, "graph {} {}", g.n(), edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let header = parse_header(&mut lines, "graph", 2)?;
    let (n, m) = (header[0], header[1]);
    let mut g = Graph::empty(n);
    for e in 0..m {
        let (no, line) = lines
            .next()
            .ok_or_else(|| syntax(e + 2, format!("expected {m} edges, found {e}")))?;
        let ends: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| syntax(no, format!("bad vertex `{t}`"))))
            .collect::<Result<_, _>>()?;
        let [u, v] = ends[..] else {
            return Err(syntax(no, "edge lines hold exactly two vertices"));
        };
        if !(1 <= u && u < v && v <= n) {
            return Err(syntax(no, format!("edge `{u} {v}` needs 1 <= u < v <= {n}")));
        }
        g.add_edge(u - 1, v - 1)?;
    }
    if let Some((no, _)) = lines.next() {
        return Err(syntax(no, "trailing content after edge list"));
    }
    Ok(g)
}

/// Loaded input: the matrix formats carry a `sym` header, graphs `graph`.
#[derive(Debug, Clone)]
pub enum Input {
    Matrix(SymmetricMatrix),
    Graph(Graph),
}

impl Input {
    pub fn matrix(&self) -> SymmetricMatrix {
        match self {
            Input::Matrix(a) => a.clone(),
            Input::Graph(g) => g.adjacency_matrix(),
        }
    }

    /// The graph, if this is a graph file or a 0/1 adjacency matrix.
    pub fn graph(&self) -> Option<Graph> {
        match self {
            Input::Graph(g) => Some(g.clone()),
            Input::Matrix(a) => Graph::from_adjacency(a).ok(),
        }
    }
}

pub fn parse_input(text: &str) -> Result<Input, FormatError> {
    let first = content_lines(text).next().map(|(_, l)| l).unwrap_or("");
    if first.starts_with("graph") {
        parse_graph(text).map(Input::Graph)
    } else {
        parse_matrix(text).map(Input::Matrix)
    }
}
