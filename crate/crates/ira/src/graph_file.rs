//! Plain-text Tanner graph files.
//!
//! ```text
//! ira <n_info> <n_check> <n_pilot> <n_sys>
//! c <j> <info neighbours of check j>
//! p <pilot indices>
//! s <systematic indices>
//! ```
//!
//! The header keyword is `ira` for the chain accumulator, `ira-circular` for
//! the circular one and `ldpc` for graphs without accumulator.

use std::fmt;
use std::io::{self, BufRead, Write};

use ira_core::graph::{Accumulator, GraphKind, TannerGraph};

#[derive(Debug)]
pub enum GraphFileError {
    Io(io::Error),
    Parse { line: usize, message: String },
    Graph(ira_core::Error),
}

impl fmt::Display for GraphFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFileError::Io(e) => write!(f, "graph file: {e}"),
            GraphFileError::Parse { line, message } => write!(f, "graph file line {line}: {message}"),
            GraphFileError::Graph(e) => write!(f, "graph file: {e}"),
        }
    }
}

impl std::error::Error for GraphFileError {}

impl From<io::Error> for GraphFileError {
    fn from(e: io::Error) -> Self {
        GraphFileError::Io(e)
    }
}

impl From<ira_core::Error> for GraphFileError {
    fn from(e: ira_core::Error) -> Self {
        GraphFileError::Graph(e)
    }
}

fn keyword(kind: GraphKind) -> &'static str {
    match kind {
        GraphKind::Ira(Accumulator::Chain) => "ira",
        GraphKind::Ira(Accumulator::Circular) => "ira-circular",
        GraphKind::Ldpc => "ldpc",
    }
}

fn write_list<W: Write>(w: &mut W, tag: &str, items: impl IntoIterator<Item = u32>) -> io::Result<()> {
    write!(w, "{tag}")?;
    for x in items {
        write!(w, " {x}")?;
    }
    writeln!(w)
}

pub fn write_graph<W: Write>(graph: &TannerGraph, mut w: W) -> io::Result<()> {
    writeln!(
        w,
        "{} {} {} {} {}",
        keyword(graph.kind()),
        graph.n_info(),
        graph.n_check(),
        graph.pilots().len(),
        graph.systematic().len()
    )?;
    for j in 0..graph.n_check() {
        write!(w, "c {j}")?;
        for &b in graph.check(j) {
            write!(w, " {b}")?;
        }
        writeln!(w)?;
    }
    write_list(&mut w, "p", graph.pilots().iter().copied())?;
    write_list(&mut w, "s", graph.systematic().iter().copied())?;
    w.flush()
}

pub fn graph_to_string(graph: &TannerGraph) -> String {
    let mut out = Vec::new();
    write_graph(graph, &mut out).expect("writing to memory");
    String::from_utf8(out).expect("graph files are ASCII")
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphFileError {
    GraphFileError::Parse { line, message: message.into() }
}

fn numbers<'a, T: std::str::FromStr>(
    line: usize,
    fields: impl Iterator<Item = &'a str>,
) -> Result<Vec<T>, GraphFileError> {
    fields.map(|f| f.parse().map_err(|_| parse_err(line, format!("bad number `{f}`")))).collect()
}

pub fn read_graph<R: BufRead>(r: R) -> Result<TannerGraph, GraphFileError> {
    let mut lines = r.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(l) if l.trim().is_empty() => None,
        other => Some((i + 1, other)),
    });
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty graph file"))?;
    let header = header?;
    let mut fields = header.split_whitespace();
    let kind = match fields.next() {
        Some("ira") => GraphKind::Ira(Accumulator::Chain),
        Some("ira-circular") => GraphKind::Ira(Accumulator::Circular),
        Some("ldpc") => GraphKind::Ldpc,
        other => return Err(parse_err(hline, format!("unknown graph kind {other:?}"))),
    };
    let dims: Vec<usize> = numbers(hline, fields)?;
    let [n_info, n_check, n_pilot, n_sys] = dims[..] else {
        return Err(parse_err(hline, "header needs four counts"));
    };
    let mut edges = Vec::new();
    let mut next_check = 0;
    let mut pilots = None;
    let mut systematic = None;
    for (no, line) in lines {
        let line = line?;
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("c") => {
                let v: Vec<u32> = numbers(no, fields)?;
                if v.first() != Some(&(next_check as u32)) {
                    return Err(parse_err(no, format!("expected check {next_check}")));
                }
                edges.extend(v[1..].iter().map(|&b| (next_check as u32, b)));
                next_check += 1;
            }
            Some("p") => pilots = Some(numbers::<u32>(no, fields)?),
            Some("s") => systematic = Some(numbers::<u32>(no, fields)?),
            other => return Err(parse_err(no, format!("unknown line tag {other:?}"))),
        }
    }
    if next_check != n_check {
        return Err(parse_err(hline, format!("header announces {n_check} checks, found {next_check}")));
    }
    let pilots = pilots.unwrap_or_default();
    let systematic = systematic.unwrap_or_default();
    if pilots.len() != n_pilot || systematic.len() != n_sys {
        return Err(parse_err(hline, "pilot or systematic count differs from the header"));
    }
    let mut graph = TannerGraph::from_edges(kind, n_info, n_check, &edges)?;
    graph.set_pilots(pilots)?;
    graph.set_systematic(systematic)?;
    Ok(graph)
}

pub fn graph_from_str(s: &str) -> Result<TannerGraph, GraphFileError> {
    read_graph(s.as_bytes())
}
