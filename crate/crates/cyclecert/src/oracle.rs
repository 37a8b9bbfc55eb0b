//! Exhaustive simple-cycle enumeration for multigraphs — the independent
//! brute-force oracle behind the symbolic spectrum rule, and a standalone
//! distinct-cycle-length checker for any input graph.
//!
//! Strategy: rooted depth-first search from each start vertex `s` in
//! increasing order, visiting only vertices `> s` except to close back at
//! `s`. Parallel edges are tracked by edge identity so digons and distinct
//! parallel routings are each counted once; loops are handled by a separate
//! scan. Canonical form: the vertex sequence starts at the cycle's minimum
//! vertex, and of the two orientations the one with the smaller second
//! vertex is kept, so each simple cycle is reported exactly once.
//!
//! Exhaustive enumeration is for desk-scale graphs (roughly a thousand
//! vertices); the paper-scale verification in [`crate::construction`] never
//! touches this module.

use std::collections::HashMap;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::graphcore::Multigraph;

/// Default enumeration budget.
pub const DEFAULT_MAX_CYCLES: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// The enumeration budget was reached; carries the count reached.
    #[error("cycle limit exceeded: stopped after {count} cycles")]
    LimitExceeded { count: usize },
}

/// One simple cycle in canonical form.
///
/// `length` counts edges (1 for a loop, 2 for a pair of parallel edges).
/// `edge_ids` are indices into the graph's edge list, recording which of
/// any parallel edges the cycle uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRecord {
    pub length: usize,
    pub vertices: Vec<u32>,
    pub edge_ids: Vec<u32>,
}

/// Calls `f(length, vertices, edge_ids)` once per simple cycle, in a
/// deterministic order (loops by edge id, then DFS discovery order per
/// start vertex). `f` may break to stop early.
pub fn visit_cycles<F>(g: &Multigraph, mut f: F) -> ControlFlow<()>
where
    F: FnMut(usize, &[u32], &[u32]) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for (eid, &(u, v)) in g.edges().iter().enumerate() {
        let eid = eid as u32;
        if u == v {
            // Loops cannot take part in any longer simple cycle.
            f(1, &[u], &[eid])?;
        } else {
            adj[u as usize].push((v, eid));
            adj[v as usize].push((u, eid));
        }
    }
    for a in &mut adj {
        a.sort_unstable();
    }

    let mut on_path = vec![false; n];
    let mut path: Vec<u32> = Vec::new();
    let mut path_edges: Vec<u32> = Vec::new();
    // stack of (vertex, cursor into adj[vertex])
    let mut stack: Vec<(u32, usize)> = Vec::new();

    for s in 0..n as u32 {
        path.clear();
        path_edges.clear();
        path.push(s);
        on_path[s as usize] = true;
        stack.push((s, 0));
        while let Some(&(v, cursor)) = stack.last() {
            let neighbors = &adj[v as usize];
            if cursor < neighbors.len() {
                stack.last_mut().expect("frame checked above").1 += 1;
                let (w, eid) = neighbors[cursor];
                if w < s {
                    continue;
                }
                if w == s {
                    let m = path.len();
                    if m < 2 || eid == path_edges[0] {
                        continue;
                    }
                    // Canonical orientation: digons by edge id order, longer
                    // cycles by the second-vertex rule.
                    if m == 2 && path_edges[0] > eid {
                        continue;
                    }
                    if m >= 3 && path[1] > path[m - 1] {
                        continue;
                    }
                    path_edges.push(eid);
                    let verdict = f(m, &path, &path_edges);
                    path_edges.pop();
                    verdict?;
                } else if !on_path[w as usize] {
                    on_path[w as usize] = true;
                    path.push(w);
                    path_edges.push(eid);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
                on_path[v as usize] = false;
                path.pop();
                if !stack.is_empty() {
                    path_edges.pop();
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// Every simple cycle as a full [`CycleRecord`], at most `max_cycles` of them.
pub fn enumerate_cycles(
    g: &Multigraph,
    max_cycles: usize,
) -> Result<Vec<CycleRecord>, OracleError> {
    let mut out = Vec::new();
    let flow = visit_cycles(g, |length, vertices, edge_ids| {
        if out.len() == max_cycles {
            return ControlFlow::Break(());
        }
        out.push(CycleRecord {
            length,
            vertices: vertices.to_vec(),
            edge_ids: edge_ids.to_vec(),
        });
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Continue(()) => Ok(out),
        ControlFlow::Break(()) => Err(OracleError::LimitExceeded { count: out.len() }),
    }
}

/// The length multiset only (ascending) — the memory-economical mode.
pub fn cycle_lengths(g: &Multigraph, max_cycles: usize) -> Result<Vec<usize>, OracleError> {
    let mut out = Vec::new();
    let flow = visit_cycles(g, |length, _, _| {
        if out.len() == max_cycles {
            return ControlFlow::Break(());
        }
        out.push(length);
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Continue(()) => {
            out.sort_unstable();
            Ok(out)
        }
        ControlFlow::Break(()) => Err(OracleError::LimitExceeded { count: out.len() }),
    }
}

/// Outcome of [`distinct_lengths`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Distinct,
    /// Two simple cycles share `length`; the earliest witness pair in
    /// enumeration order is reported.
    Collision {
        length: usize,
        first: CycleRecord,
        second: CycleRecord,
    },
}

/// Checks whether all simple cycles of `g` have pairwise distinct lengths,
/// stopping at the first collision.
pub fn distinct_lengths(g: &Multigraph, max_cycles: usize) -> Result<Verdict, OracleError> {
    let mut seen: HashMap<usize, CycleRecord> = HashMap::new();
    let mut verdict = Verdict::Distinct;
    let mut count = 0usize;
    let mut limited = false;
    let flow = visit_cycles(g, |length, vertices, edge_ids| {
        if count == max_cycles {
            limited = true;
            return ControlFlow::Break(());
        }
        count += 1;
        let record = CycleRecord {
            length,
            vertices: vertices.to_vec(),
            edge_ids: edge_ids.to_vec(),
        };
        if let Some(first) = seen.get(&length) {
            verdict = Verdict::Collision {
                length,
                first: first.clone(),
                second: record,
            };
            return ControlFlow::Break(());
        }
        seen.insert(length, record);
        ControlFlow::Continue(())
    });
    if matches!(flow, ControlFlow::Break(())) && limited {
        return Err(OracleError::LimitExceeded { count });
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::read_edge_list;
    use proptest::prelude::*;

    fn k4() -> Multigraph {
        Multigraph::with_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_has_seven_cycles() {
        let lengths = cycle_lengths(&k4(), DEFAULT_MAX_CYCLES).unwrap();
        assert_eq!(lengths, vec![3, 3, 3, 3, 4, 4, 4]);
    }

    #[test]
    fn loop_is_a_length_one_cycle() {
        let g = read_edge_list("1\n0 0\n").unwrap();
        let cycles = enumerate_cycles(&g, 10).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].length, 1);
        assert_eq!(cycles[0].vertices, vec![0]);
    }

    #[test]
    fn digon_counted_once() {
        let g = read_edge_list("2\n0 1\n0 1\n").unwrap();
        let cycles = enumerate_cycles(&g, 10).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].length, 2);
        assert_eq!(cycles[0].edge_ids, vec![0, 1]);
    }

    #[test]
    fn triple_edge_gives_three_digons() {
        let g = Multigraph::with_edges(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        let cycles = enumerate_cycles(&g, 10).unwrap();
        // one per unordered pair of parallel edges
        assert_eq!(cycles.len(), 3);
        assert!(cycles.iter().all(|c| c.length == 2));
    }

    #[test]
    fn triangle_canonical_record() {
        let g = read_edge_list("3\n0 1\n1 2\n2 0\n").unwrap();
        let cycles = enumerate_cycles(&g, 10).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices, vec![0, 1, 2]);
    }

    #[test]
    fn distinct_verdicts() {
        // triangle sharing a vertex with a 4-cycle: lengths {3, 4}
        let g =
            Multigraph::with_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0)])
                .unwrap();
        assert_eq!(
            distinct_lengths(&g, DEFAULT_MAX_CYCLES).unwrap(),
            Verdict::Distinct
        );
        // two vertex-disjoint triangles joined by a path: witness 3, 3
        let h = Multigraph::with_edges(
            7,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 4),
            ],
        )
        .unwrap();
        match distinct_lengths(&h, DEFAULT_MAX_CYCLES).unwrap() {
            Verdict::Collision { length, first, second } => {
                assert_eq!(length, 3);
                assert_ne!(first.vertices, second.vertices);
            }
            Verdict::Distinct => panic!("expected a collision"),
        }
    }

    #[test]
    fn limit_exceeded_reports_count() {
        assert_eq!(
            cycle_lengths(&k4(), 3),
            Err(OracleError::LimitExceeded { count: 3 })
        );
        assert_eq!(
            distinct_lengths(&k4(), 2),
            Err(OracleError::LimitExceeded { count: 2 })
        );
    }

    /// Independent component count for the cyclomatic cross-check.
    fn component_count(g: &Multigraph) -> usize {
        let n = g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in g.edges() {
            let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        (0..n).filter(|&v| find(&mut parent, v) == v).count()
    }

    fn arb_sparse_graph() -> impl Strategy<Value = Multigraph> {
        // edge count <= vertex count: at most one cycle per component
        (2usize..24).prop_flat_map(|n| {
            proptest::collection::vec((0u32..n as u32, 0u32..n as u32), 0..n)
                .prop_map(move |edges| Multigraph::with_edges(n, edges).unwrap())
        })
    }

    fn arb_graph() -> impl Strategy<Value = Multigraph> {
        (2usize..10).prop_flat_map(|n| {
            proptest::collection::vec((0u32..n as u32, 0u32..n as u32), 0..14)
                .prop_map(move |edges| Multigraph::with_edges(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn sparse_count_matches_cyclomatic_number(g in arb_sparse_graph()) {
            let cycles = cycle_lengths(&g, DEFAULT_MAX_CYCLES).unwrap();
            let expected = g.edge_count() + component_count(&g) - g.vertex_count();
            prop_assert_eq!(cycles.len(), expected);
        }

        #[test]
        fn relabeling_preserves_length_multiset(g in arb_graph(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<u32> = (0..g.vertex_count() as u32).collect();
            perm.shuffle(&mut rng);
            let relabeled = Multigraph::with_edges(
                g.vertex_count(),
                g.edges().iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])),
            ).unwrap();
            let a = cycle_lengths(&g, DEFAULT_MAX_CYCLES).unwrap();
            let b = cycle_lengths(&relabeled, DEFAULT_MAX_CYCLES).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
