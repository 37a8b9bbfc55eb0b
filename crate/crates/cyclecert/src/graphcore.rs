//! Concrete multigraph representation with loops and parallel edges, plus a
//! line-oriented edge-list format.
//!
//! Vertices are dense 0-based indices; labels live in provenance maps held
//! by callers. Undirected edges are normalized to `u <= v` at ingest so the
//! stored edge list is a canonical, diffable artifact.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {endpoint} out of range (vertex count {vertex_count})")]
    EndpointOutOfRange { endpoint: u64, vertex_count: usize },
}

/// Errors from [`read_edge_list`], each carrying the 1-based line number.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("edge list has no content lines")]
    Empty,
    #[error("missing trailing newline")]
    MissingTrailingNewline,
    #[error("line {line}: expected a decimal vertex count")]
    BadVertexCount { line: usize },
    #[error("line {line}: expected \"u v\" with a single space")]
    BadEdge { line: usize },
    #[error("line {line}: endpoint {endpoint} out of range (vertex count {vertex_count})")]
    EndpointOutOfRange {
        line: usize,
        endpoint: u64,
        vertex_count: usize,
    },
}

/// An undirected multigraph. Loops (`u = v`) and repeated edges are allowed;
/// the edge list order is construction-deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Multigraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn with_edges<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Multigraph::new(vertex_count);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds an undirected edge, normalized to `u <= v`.
    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<(), GraphError> {
        for e in [u, v] {
            if (e as usize) >= self.vertex_count {
                return Err(GraphError::EndpointOutOfRange {
                    endpoint: e as u64,
                    vertex_count: self.vertex_count,
                });
            }
        }
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Per-vertex degrees; a loop contributes 2 to its vertex.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    /// Histogram `degree -> number of vertices`.
    pub fn degree_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for d in self.degrees() {
            *hist.entry(d).or_insert(0) += 1;
        }
        hist
    }
}

/// Serializes to the edge-list format: first line vertex count, then one
/// `u v` line per edge, LF endings, trailing newline.
pub fn write_edge_list(g: &Multigraph) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * 8);
    writeln!(out, "{}", g.vertex_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses the edge-list format. Lines starting with `#` are comments; the
/// first content line is the vertex count; every other content line is
/// `u v` with a single ASCII space. A trailing newline is required.
pub fn read_edge_list(text: &str) -> Result<Multigraph, EdgeListError> {
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(EdgeListError::MissingTrailingNewline);
    }
    let mut graph: Option<Multigraph> = None;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.starts_with('#') {
            continue;
        }
        match graph {
            None => {
                if line.is_empty() || !line.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(EdgeListError::BadVertexCount { line: lineno });
                }
                let n: usize = line
                    .parse()
                    .map_err(|_| EdgeListError::BadVertexCount { line: lineno })?;
                graph = Some(Multigraph::new(n));
            }
            Some(ref mut g) => {
                let (us, vs) = line
                    .split_once(' ')
                    .ok_or(EdgeListError::BadEdge { line: lineno })?;
                if us.is_empty()
                    || vs.is_empty()
                    || !us.bytes().all(|b| b.is_ascii_digit())
                    || !vs.bytes().all(|b| b.is_ascii_digit())
                {
                    return Err(EdgeListError::BadEdge { line: lineno });
                }
                let parse_endpoint = |s: &str| -> Result<u32, EdgeListError> {
                    let raw: u64 = s
                        .parse()
                        .map_err(|_| EdgeListError::BadEdge { line: lineno })?;
                    if raw >= g.vertex_count() as u64 {
                        return Err(EdgeListError::EndpointOutOfRange {
                            line: lineno,
                            endpoint: raw,
                            vertex_count: g.vertex_count(),
                        });
                    }
                    Ok(raw as u32)
                };
                let u = parse_endpoint(us)?;
                let v = parse_endpoint(vs)?;
                g.add_edge(u, v).expect("endpoints already range-checked");
            }
        }
    }
    graph.ok_or(EdgeListError::Empty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_roundtrip() {
        let g = read_edge_list("3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(g.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn loop_and_digon() {
        let lp = read_edge_list("1\n0 0\n").unwrap();
        assert_eq!(lp.edges(), &[(0, 0)]);
        assert_eq!(lp.degrees(), vec![2]);
        let digon = read_edge_list("2\n0 1\n0 1\n").unwrap();
        assert_eq!(digon.edge_count(), 2);
        assert_eq!(digon.degrees(), vec![2, 2]);
    }

    #[test]
    fn comments_skipped() {
        let g = read_edge_list("# a triangle\n3\n# edges follow\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            read_edge_list("3\n0 1\n1 2 3\n"),
            Err(EdgeListError::BadEdge { line: 3 })
        );
        assert_eq!(
            read_edge_list("two\n"),
            Err(EdgeListError::BadVertexCount { line: 1 })
        );
        assert_eq!(
            read_edge_list("2\n0 5\n"),
            Err(EdgeListError::EndpointOutOfRange {
                line: 2,
                endpoint: 5,
                vertex_count: 2
            })
        );
        assert_eq!(
            read_edge_list("3\n0 1"),
            Err(EdgeListError::MissingTrailingNewline)
        );
        assert_eq!(read_edge_list(""), Err(EdgeListError::Empty));
    }

    #[test]
    fn add_edge_rejects_out_of_range() {
        let mut g = Multigraph::new(2);
        assert!(g.add_edge(0, 2).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Multigraph> {
        (1usize..20).prop_flat_map(|n| {
            proptest::collection::vec((0u32..n as u32, 0u32..n as u32), 0..40)
                .prop_map(move |edges| Multigraph::with_edges(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn read_write_roundtrip(g in arb_graph()) {
            let text = write_edge_list(&g);
            let back = read_edge_list(&text).unwrap();
            prop_assert_eq!(&g, &back);
            // write . read is the identity on canonical text
            prop_assert_eq!(write_edge_list(&back), text);
        }
    }
}
