//! Brute-force reference enumerator. No I/O accounting.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{EmError, Result};
use crate::graph::{DataGraph, VertexId};
use crate::pattern::PatternGraph;

/// Sorted, duplicate-free instance tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceSet {
    pub tuples: Vec<Vec<VertexId>>,
}

impl InstanceSet {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn digest(&self) -> u64 {
        crate::sink::digest_of(&self.tuples)
    }

    /// Sorts `tuples` and reports whether duplicates were present.
    pub fn from_emitted(mut tuples: Vec<Vec<VertexId>>) -> (Self, usize) {
        tuples.sort_unstable();
        let before = tuples.len();
        tuples.dedup();
        let dups = before - tuples.len();
        (InstanceSet { tuples }, dups)
    }
}

/// Largest `n` the oracle accepts for pattern size `k`.
pub fn guard_limit(k: usize) -> Option<usize> {
    match k {
        0..=5 => Some(40),
        6..=9 => Some(25),
        _ => None,
    }
}

pub type Constraint<'a> = &'a dyn Fn(usize, VertexId) -> bool;

pub fn brute_force(
    g: &DataGraph,
    h: &PatternGraph,
    induced: bool,
    constraint: Option<Constraint<'_>>,
) -> Result<InstanceSet> {
    let k = h.k();
    let n = g.n();
    match guard_limit(k) {
        Some(lim) if n <= lim => {}
        Some(lim) => {
            return Err(EmError::OracleGuard(format!(
                "n={n} exceeds {lim} for k={k}"
            )))
        }
        None => return Err(EmError::OracleGuard(format!("k={k} exceeds 9"))),
    }
    Ok(brute_force_unguarded(g, h, induced, constraint))
}

/// As [`brute_force`] without the size guard. Only sensible for sparse
/// graphs where backtracking prunes early.
pub fn brute_force_unguarded(
    g: &DataGraph,
    h: &PatternGraph,
    induced: bool,
    constraint: Option<Constraint<'_>>,
) -> InstanceSet {
    let k = h.k();
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for (u, v) in g.edge_list() {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    let verts: Vec<VertexId> = adj.keys().copied().collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    extend(h, &adj, &verts, induced, constraint, &mut cur, &mut out);
    out.sort_unstable();
    InstanceSet { tuples: out }
}

fn extend(
    h: &PatternGraph,
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    verts: &[VertexId],
    induced: bool,
    constraint: Option<Constraint<'_>>,
    cur: &mut Vec<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    let i = cur.len();
    if i == h.k() {
        out.push(cur.clone());
        return;
    }
    let connected = |a: VertexId, b: VertexId| adj.get(&a).is_some_and(|s| s.contains(&b));
    for &v in verts {
        if cur.contains(&v) {
            continue;
        }
        if constraint.is_some_and(|c| !c(i, v)) {
            continue;
        }
        let ok = (0..i).all(|j| {
            let e = connected(cur[j], v);
            if h.has_edge(i, j) {
                e
            } else {
                !(induced && e)
            }
        });
        if ok {
            cur.push(v);
            extend(h, adj, verts, induced, constraint, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emcore::{EmConfig, EmMachine};
    use crate::graph::ingest;

    fn complete(q: u64) -> Vec<(u64, u64)> {
        (0..q).flat_map(|a| (a + 1..q).map(move |b| (a, b))).collect()
    }

    fn graph(pairs: &[(u64, u64)]) -> DataGraph {
        let m = EmMachine::new(EmConfig::new(1 << 12, 8).unwrap());
        ingest(&m, pairs).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let t = PatternGraph::clique(3);
        assert_eq!(brute_force(&graph(&complete(3)), &t, false, None).unwrap().len(), 6);
        assert_eq!(brute_force(&graph(&complete(4)), &t, false, None).unwrap().len(), 24);
    }

    #[test]
    fn p3_in_triangle() {
        let g = graph(&complete(3));
        let p3 = PatternGraph::path(3);
        assert_eq!(brute_force(&g, &p3, false, None).unwrap().len(), 6);
        assert_eq!(brute_force(&g, &p3, true, None).unwrap().len(), 0);
    }

    #[test]
    fn guard_refuses() {
        let pairs: Vec<_> = (0..41u64).map(|i| (i, i + 1)).collect();
        let g = graph(&pairs);
        assert!(matches!(
            brute_force(&g, &PatternGraph::path(3), false, None),
            Err(EmError::OracleGuard(_))
        ));
    }

    #[test]
    fn constraint_restricts() {
        let g = graph(&complete(4));
        let c = |i: usize, v: VertexId| i != 0 || v == 0;
        let s = brute_force(&g, &PatternGraph::clique(3), false, Some(&c)).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.tuples.iter().all(|t| t[0] == 0));
    }

    #[test]
    fn relabeling_invariance_and_containment() {
        let pairs = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4), (4, 5), (5, 3)];
        let moved: Vec<_> = pairs.iter().map(|&(a, b)| ((a * 7 + 3) % 11, (b * 7 + 3) % 11)).collect();
        for h in [PatternGraph::cycle(4), PatternGraph::path(3), PatternGraph::clique(3)] {
            let a = brute_force(&graph(&pairs), &h, false, None).unwrap();
            let b = brute_force(&graph(&moved), &h, false, None).unwrap();
            assert_eq!(a.len(), b.len());
            let ind = brute_force(&graph(&pairs), &h, true, None).unwrap();
            assert!(ind.tuples.iter().all(|t| a.tuples.binary_search(t).is_ok()));
        }
    }
}
