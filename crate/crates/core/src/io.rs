//! Plain-text instance formats and graph-derived packing families.
//!
//! Graph: header `n m`, then `m` lines `u v`. Family: header `n q` followed
//! by one member per line, or header `q r partite` followed by members given
//! as global indices with the `j`-th in `[j r, (j+1) r)`. Blank lines and
//! lines starting with `#` are ignored.

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::{PartiteFamily, SetFamily};
use crate::graph::Graph;

/// A parsed family file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Plain(SetFamily),
    Partite(PartiteFamily),
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers<T: FromStr>(line: usize, text: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|tok| tok.parse().map_err(|_| parse_error(line, format!("expected a non-negative integer, found {tok:?}"))))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing header \"n m\""))?;
    let [n, m]: [usize; 2] = numbers(header_line, header)?
        .try_into()
        .map_err(|_| parse_error(header_line, "header must be \"n m\""))?;
    let mut graph_edges = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    for (line, text) in lines.by_ref().take(m) {
        let [u, v]: [usize; 2] =
            numbers(line, text)?.try_into().map_err(|_| parse_error(line, "edge line must be \"u v\""))?;
        if u == v {
            return Err(parse_error(line, format!("loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(parse_error(line, format!("edge {u} {v} out of range for {n} vertices")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_error(line, format!("parallel edge {u} {v}")));
        }
        graph_edges.push((u, v));
    }
    if graph_edges.len() != m {
        return Err(parse_error(header_line, format!("header promises {m} edges, found {}", graph_edges.len())));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_error(line, "unexpected content after the last edge"));
    }
    Graph::new(n, graph_edges)
}

pub fn parse_family(text: &str) -> Result<Family> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let partite = match tokens.as_slice() {
        [_, _] => false,
        [_, _, "partite"] => true,
        _ => return Err(parse_error(header_line, "header must be \"n q\" or \"q r partite\"")),
    };
    let [a, b]: [usize; 2] = numbers(header_line, &tokens[..2].join(" "))?.try_into().expect("two tokens");
    let q = if partite { a } else { b };
    if q == 0 || (partite && q < 2) {
        return Err(parse_error(header_line, "member size is too small"));
    }
    let mut members = Vec::new();
    for (line, text) in lines {
        let member: Vec<usize> = numbers(line, text)?;
        if member.len() != q {
            return Err(parse_error(line, format!("member has {} elements, expected {q}", member.len())));
        }
        let distinct: BTreeSet<usize> = member.iter().copied().collect();
        if distinct.len() != q {
            return Err(parse_error(line, "member repeats an element"));
        }
        if partite {
            let r = b;
            for (j, &u) in member.iter().enumerate() {
                if !(j * r..(j + 1) * r).contains(&u) {
                    return Err(parse_error(line, format!("element {u} is not in part {j} = [{}, {})", j * r, (j + 1) * r)));
                }
            }
        } else if let Some(&u) = member.iter().find(|&&u| u >= a) {
            return Err(parse_error(line, format!("element {u} outside 0..{a}")));
        }
        members.push(member);
    }
    Ok(if partite {
        Family::Partite(PartiteFamily::new(a, b, members)?)
    } else {
        Family::Plain(SetFamily::new(a, b, members)?)
    })
}

pub fn format_graph(graph: &Graph) -> String {
    let mut out = format!("{} {}\n", graph.vertex_count(), graph.edge_count());
    for &(u, v) in graph.edges() {
        out += &format!("{u} {v}\n");
    }
    out
}

pub fn format_family(family: &SetFamily) -> String {
    let mut out = format!("{} {}\n", family.ground_size(), family.member_size());
    for set in family.sets() {
        let line: Vec<String> = set.iter().map(usize::to_string).collect();
        out += &line.join(" ");
        out.push('\n');
    }
    out
}

/// Which subgraphs become members of the encoded packing family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackingEncoding {
    /// Triangles as 3-sets of vertices.
    VertexTriangle,
    /// Triangles as 3-sets of edge ids.
    EdgeTriangle,
    /// Paths on three vertices as 3-sets of vertices.
    VertexP3,
}

impl FromStr for PackingEncoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex-triangle" => Ok(PackingEncoding::VertexTriangle),
            "edge-triangle" => Ok(PackingEncoding::EdgeTriangle),
            "vertex-p3" => Ok(PackingEncoding::VertexP3),
            _ => Err(Error::InvalidParameter(format!(
                "unknown encoding {s:?}; expected vertex-triangle, edge-triangle or vertex-p3"
            ))),
        }
    }
}

/// Family whose p-packings are the vertex- or edge-disjoint triangle or P3
/// packings of `graph`. Members are listed in lexicographic order.
pub fn encode_graph_packing(graph: &Graph, mode: PackingEncoding) -> SetFamily {
    let n = graph.vertex_count();
    let mut sets = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                let (uv, vw, uw) = (graph.has_edge(u, v), graph.has_edge(v, w), graph.has_edge(u, w));
                match mode {
                    PackingEncoding::VertexTriangle if uv && vw && uw => {
                        sets.insert(vec![u, v, w]);
                    }
                    PackingEncoding::EdgeTriangle if uv && vw && uw => {
                        let mut ids: Vec<usize> = [(u, v), (v, w), (u, w)]
                            .iter()
                            .map(|&(a, b)| graph.edge_id(a, b).expect("edge exists"))
                            .collect();
                        ids.sort_unstable();
                        sets.insert(ids);
                    }
                    PackingEncoding::VertexP3 if [uv && vw, uv && uw, uw && vw].iter().any(|&b| b) => {
                        sets.insert(vec![u, v, w]);
                    }
                    _ => {}
                }
            }
        }
    }
    let ground = match mode {
        PackingEncoding::EdgeTriangle => graph.edge_count(),
        _ => n,
    };
    SetFamily::new(ground, 3, sets.into_iter().collect()).expect("encoded members are distinct 3-sets")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(err: Error) -> usize {
        match err {
            Error::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn graphs() {
        let g = parse_graph("2 1\n0 1").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(line_of(parse_graph("2 1\n0 0").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("3 2\n0 1\n0 1").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph("3 1\n0 7").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("3 2\n0 1").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("3 1\n0 x").unwrap_err()), 2);
        let g = parse_graph("# comment\n3 2\n\n0 1\n1 2\n").unwrap();
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn families() {
        let Family::Plain(f) = parse_family("6 3\n0 1 2\n3 4 5").unwrap() else { panic!() };
        assert_eq!(f.len(), 2);
        assert_eq!(line_of(parse_family("6 3\n0 1 1").unwrap_err()), 2);
        assert_eq!(line_of(parse_family("6 3\n0 1").unwrap_err()), 2);
        assert_eq!(line_of(parse_family("6 3\n0 1 9").unwrap_err()), 2);
        let Family::Partite(pf) = parse_family("3 2 partite\n0 2 4\n1 3 5").unwrap() else { panic!() };
        assert_eq!(pf.len(), 2);
        assert_eq!(line_of(parse_family("3 2 partite\n0 1 4").unwrap_err()), 2);
        assert_eq!(parse_family(&format_family(&f)).unwrap(), Family::Plain(f));
    }

    #[test]
    fn encodings() {
        let k3 = Graph::complete(3);
        assert_eq!(encode_graph_packing(&k3, PackingEncoding::VertexTriangle).sets(), &[vec![0, 1, 2]]);
        assert_eq!(encode_graph_packing(&k3, PackingEncoding::EdgeTriangle).sets(), &[vec![0, 1, 2]]);
        let p3 = Graph::path(3);
        assert_eq!(encode_graph_packing(&p3, PackingEncoding::VertexP3).sets(), &[vec![0, 1, 2]]);
        assert!(encode_graph_packing(&p3, PackingEncoding::VertexTriangle).is_empty());
        assert_eq!(encode_graph_packing(&Graph::complete(4), PackingEncoding::VertexTriangle).len(), 4);
        assert_eq!(encode_graph_packing(&Graph::complete(4), PackingEncoding::EdgeTriangle).ground_size(), 6);
        assert_eq!("vertex-p3".parse::<PackingEncoding>().unwrap(), PackingEncoding::VertexP3);
        assert!("square".parse::<PackingEncoding>().is_err());
    }
}
