//! Parsing of command-line query objects: graphs, vertex sets, words and
//! configurations.

use anyhow::{bail, Context, Result};
use misnet::graph6::parse_graph6;
use misnet::{Config, DiGraph, VertexSet, Word};

/// Parses an edge list such as `0-1,1>2`: `u-v` is an undirected edge and
/// `u>v` an arc. The vertex count is `vertices` or one more than the largest
/// index mentioned.
pub fn parse_edges(text: &str, vertices: Option<usize>) -> Result<DiGraph> {
    let mut arcs = Vec::new();
    let mut largest = None;
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (sep, both) = if item.contains('>') {
            ('>', false)
        } else if item.contains('-') {
            ('-', true)
        } else {
            bail!("edge `{item}` must look like `u-v` or `u>v`");
        };
        let (u, v) = item.split_once(sep).expect("separator present");
        let u: usize = u.trim().parse().with_context(|| format!("bad vertex in `{item}`"))?;
        let v: usize = v.trim().parse().with_context(|| format!("bad vertex in `{item}`"))?;
        if u == v {
            bail!("loop `{item}` is not allowed");
        }
        largest = largest.max(Some(u.max(v)));
        arcs.push((u, v));
        if both {
            arcs.push((v, u));
        }
    }
    let n = match (vertices, largest) {
        (Some(n), Some(m)) if m >= n => bail!("vertex {m} out of range for {n} vertices"),
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    Ok(DiGraph::from_arcs(n, arcs)?)
}

/// Exactly one of a graph6/digraph6 string and an edge list.
pub fn read_graph(graph6: Option<&str>, edges: Option<&str>, vertices: Option<usize>) -> Result<DiGraph> {
    match (graph6, edges) {
        (Some(s), None) => {
            if vertices.is_some() {
                bail!("--vertices only applies to --edges");
            }
            Ok(parse_graph6(s.trim())?)
        }
        (None, Some(e)) => parse_edges(e, vertices),
        _ => bail!("give exactly one of --graph6 and --edges"),
    }
}

fn parse_vertices(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in text.split([',', ' ']).map(str::trim).filter(|s| !s.is_empty()) {
        let v: usize = tok.parse().with_context(|| format!("`{tok}` is not a vertex"))?;
        if v >= n {
            bail!("vertex {v} out of range for {n} vertices");
        }
        out.push(v);
    }
    Ok(out)
}

/// A comma-separated vertex list; empty means the empty set.
pub fn parse_set(text: &str, n: usize) -> Result<VertexSet> {
    Ok(VertexSet::from_vertices(n, parse_vertices(text, n)?))
}

/// A comma-separated vertex sequence.
pub fn parse_word(text: &str, n: usize) -> Result<Word> {
    Ok(Word::new(parse_vertices(text, n)?))
}

/// A bit string of length `n` (vertex 0 first), or otherwise a decimal mask
/// with bit `v` for vertex `v`.
pub fn parse_config(text: &str, n: usize) -> Result<Config> {
    let s = text.trim();
    if s.len() == n && s.chars().all(|c| c == '0' || c == '1') {
        return Ok(s.parse()?);
    }
    let mask: u64 = s
        .parse()
        .with_context(|| format!("`{s}` is neither a {n}-bit string nor a decimal mask"))?;
    if n < 64 && mask >> n != 0 {
        bail!("mask {mask} has bits beyond {n} vertices");
    }
    Ok(Config::from_mask(n, mask))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_arcs() {
        let g = parse_edges("0-1, 1>2", None).unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.has_edge(0, 1));
        assert!(g.has_arc(1, 2) && !g.has_arc(2, 1));
        assert_eq!(parse_edges("", Some(4)).unwrap().n(), 4);
        assert!(parse_edges("0-0", None).is_err());
        assert!(parse_edges("0-3", Some(2)).is_err());
        assert!(parse_edges("0~1", None).is_err());
    }

    #[test]
    fn configs() {
        assert_eq!(parse_config("011", 3).unwrap().to_string(), "011");
        assert_eq!(parse_config("0", 3).unwrap().to_string(), "000");
        assert_eq!(parse_config("6", 3).unwrap().to_string(), "011");
        assert!(parse_config("8", 3).is_err());
        assert!(parse_config("x", 3).is_err());
    }

    #[test]
    fn sets_and_words() {
        assert_eq!(parse_set("0,2", 3).unwrap().to_vec(), vec![0, 2]);
        assert!(parse_set("", 3).unwrap().is_empty());
        assert_eq!(parse_word("0,2,1,0", 3).unwrap().as_slice(), &[0, 2, 1, 0]);
        assert!(parse_word("3", 3).is_err());
    }
}
