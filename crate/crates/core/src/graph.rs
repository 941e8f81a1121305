//! Data graph in adjacency-list form.
//!
//! The adjacency array is a concatenation of neighbor lists in ascending
//! owner order, each list ascending. Owner boundaries (`vertices`,
//! `offsets`) are metadata carried alongside the array; only neighbor
//! entries occupy external words.

use std::cmp::Ordering;
use std::path::Path;

use crate::emcore::{Cursor, EmMachine, ExtArray, Word};
use crate::error::{EmError, Result};

pub type VertexId = u32;

#[derive(Clone, Debug)]
pub struct DataGraph {
    vertices: Vec<VertexId>,
    offsets: Vec<usize>,
    adj: ExtArray,
    labels: Option<Vec<u64>>,
}

impl DataGraph {
    pub fn empty() -> Self {
        DataGraph {
            vertices: Vec::new(),
            offsets: vec![0],
            adj: ExtArray::empty(),
            labels: None,
        }
    }

    /// Vertex count (vertices with at least one neighbor).
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Undirected edge count.
    pub fn m(&self) -> usize {
        self.adj.len() / 2
    }

    /// Directed entry count, `2m`.
    pub fn entries(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> &ExtArray {
        &self.adj
    }

    /// Sorted ids of the vertices present.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Largest vertex id plus one (0 for the empty graph).
    pub fn id_bound(&self) -> usize {
        self.vertices.last().map_or(0, |&v| v as usize + 1)
    }

    /// Original input ids, when the graph was built by [`ingest`].
    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Entry range `[start, end)` of the list at vertex index `i`.
    pub fn list_range(&self, i: usize) -> (usize, usize) {
        (self.offsets[i], self.offsets[i + 1])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.index_of(v).map_or(0, |i| self.offsets[i + 1] - self.offsets[i])
    }

    pub fn max_degree(&self) -> usize {
        self.offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    /// Uncounted host view of a neighbor list. Algorithms may only use it for
    /// data whose blocks they have paid to read.
    pub fn neighbors(&self, v: VertexId) -> &[Word] {
        match self.index_of(v) {
            Some(i) => &self.adj.words()[self.offsets[i]..self.offsets[i + 1]],
            None => &[],
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&(v as Word)).is_ok()
    }

    /// Undirected edges `(u, v)` with `u < v`, in adjacency order. Uncounted.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m());
        for (i, &u) in self.vertices.iter().enumerate() {
            for &w in &self.adj.words()[self.offsets[i]..self.offsets[i + 1]] {
                if (u as Word) < w {
                    out.push((u, w as VertexId));
                }
            }
        }
        out
    }

    /// Builds the graph from `(owner, neighbor)` records sorted by owner then
    /// neighbor. Duplicates and self-loops are dropped. One scan plus one
    /// write pass.
    pub fn from_sorted_entries(machine: &EmMachine, records: &ExtArray) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut offsets = vec![0];
        let mut out = machine.writer()?;
        let _buf = machine.charge(machine.block().min(records.len().max(1)))?;
        let mut cur = Cursor::new(records);
        let mut prev: Option<(Word, Word)> = None;
        let mut pos = 0;
        while pos + 1 < records.len() {
            let a = cur.get(machine, pos);
            let b = cur.get(machine, pos + 1);
            pos += 2;
            if a == b || prev == Some((a, b)) {
                continue;
            }
            if prev.map(|p| p.0) != Some(a) {
                if !vertices.is_empty() {
                    offsets.push(out.len());
                }
                vertices.push(to_vertex(a)?);
            }
            out.push(b);
            prev = Some((a, b));
        }
        machine.add_ops((records.len() / 2) as u64);
        if !vertices.is_empty() {
            offsets.push(out.len());
        }
        let adj = out.finish();
        let g = DataGraph {
            vertices,
            offsets,
            adj,
            labels: None,
        };
        debug_assert!(g.entries().is_multiple_of(2), "asymmetric entry set");
        Ok(g)
    }

    /// Builds a graph from undirected edge records `(u, v)` (width 2):
    /// writes both orientations, sorts, and normalizes. Ids are kept as given.
    pub fn from_edge_records(machine: &EmMachine, edges: &ExtArray) -> Result<Self> {
        let directed = {
            let mut w = machine.writer()?;
            let _buf = machine.charge(machine.block().min(edges.len().max(1)))?;
            let mut cur = Cursor::new(edges);
            let mut pos = 0;
            while pos + 1 < edges.len() {
                let a = cur.get(machine, pos);
                let b = cur.get(machine, pos + 1);
                pos += 2;
                if a != b {
                    w.extend(&[a, b, b, a]);
                }
            }
            w.finish()
        };
        let sorted = machine.ext_sort(&directed, 2, pair_order)?;
        Self::from_sorted_entries(machine, &sorted)
    }

    /// Subgraph induced by the vertices satisfying `keep`. One scan of the
    /// adjacency array plus writes of the surviving entries.
    pub fn induced_subgraph<F: Fn(VertexId) -> bool>(
        &self,
        machine: &EmMachine,
        keep: F,
    ) -> Result<Self> {
        machine.pay_scan(&self.adj)?;
        let mut vertices = Vec::new();
        let mut offsets = vec![0];
        let mut out = machine.writer()?;
        for (i, &u) in self.vertices.iter().enumerate() {
            if !keep(u) {
                continue;
            }
            let before = out.len();
            for &w in &self.adj.words()[self.offsets[i]..self.offsets[i + 1]] {
                if keep(w as VertexId) {
                    out.push(w);
                }
            }
            if out.len() > before {
                vertices.push(u);
                offsets.push(out.len());
            }
        }
        Ok(DataGraph {
            vertices,
            offsets,
            adj: out.finish(),
            labels: None,
        })
    }
}

fn to_vertex(w: Word) -> Result<VertexId> {
    VertexId::try_from(w).map_err(|_| EmError::Config(format!("vertex id {w} exceeds u32 range")))
}

pub(crate) fn pair_order(x: &[Word], y: &[Word]) -> Ordering {
    (x[0], x[1]).cmp(&(y[0], y[1]))
}

/// Normalizes an edge multiset into a [`DataGraph`]: drops self-loops,
/// merges duplicates, compacts ids to `0..n` preserving their order, and
/// sorts the lists. All data movement is accounted on `machine`.
pub fn ingest(machine: &EmMachine, pairs: &[(u64, u64)]) -> Result<DataGraph> {
    // Input sits in external memory as width-2 records.
    let input = ExtArray::from_words(pairs.iter().flat_map(|&(a, b)| [a, b]).collect());

    let directed = {
        let mut w = machine.writer()?;
        let _buf = machine.charge(machine.block().min(input.len().max(1)))?;
        let mut cur = Cursor::new(&input);
        let mut pos = 0;
        while pos + 1 < input.len() {
            let a = cur.get(machine, pos);
            let b = cur.get(machine, pos + 1);
            pos += 2;
            if a != b {
                w.extend(&[a, b, b, a]);
            }
        }
        w.finish()
    };
    if directed.is_empty() {
        return Ok(DataGraph::empty());
    }
    let by_owner = machine.ext_sort(&directed, 2, pair_order)?;

    // Rank owners; emit (rank(a), b) and the distinct owner list.
    let (ranked, owners) = {
        let mut recs = machine.writer()?;
        let mut ids = machine.writer()?;
        let _buf = machine.charge(machine.block())?;
        let mut cur = Cursor::new(&by_owner);
        let mut prev: Option<(Word, Word)> = None;
        let mut rank: Word = 0;
        let mut pos = 0;
        while pos + 1 < by_owner.len() {
            let a = cur.get(machine, pos);
            let b = cur.get(machine, pos + 1);
            pos += 2;
            if prev == Some((a, b)) {
                continue;
            }
            match prev {
                Some((pa, _)) if pa == a => {}
                Some(_) => {
                    rank += 1;
                    ids.push(a);
                }
                None => ids.push(a),
            }
            recs.extend(&[rank, b]);
            prev = Some((a, b));
        }
        machine.add_ops((by_owner.len() / 2) as u64);
        (recs.finish(), ids.finish())
    };

    // Sort by neighbor and translate it through the owner list by merging.
    let by_nbr = machine.ext_sort(&ranked, 2, |x, y| (x[1], x[0]).cmp(&(y[1], y[0])))?;
    let relabeled = {
        let mut out = machine.writer()?;
        let _buf = machine.charge(2 * machine.block())?;
        let mut cur = Cursor::new(&by_nbr);
        let mut ids = Cursor::new(&owners);
        let mut id_pos = 0;
        let mut pos = 0;
        while pos + 1 < by_nbr.len() {
            let ra = cur.get(machine, pos);
            let b = cur.get(machine, pos + 1);
            pos += 2;
            while ids.get(machine, id_pos) < b {
                id_pos += 1;
            }
            out.extend(&[ra, id_pos as Word]);
        }
        machine.add_ops((by_nbr.len() / 2) as u64);
        out.finish()
    };
    let sorted = machine.ext_sort(&relabeled, 2, pair_order)?;
    let n = owners.len();
    if n > VertexId::MAX as usize {
        return Err(EmError::Config(format!("{n} vertices exceed u32 range")));
    }
    let mut g = DataGraph::from_sorted_entries(machine, &sorted)?;
    g.labels = Some(owners.words().to_vec());
    Ok(g)
}

/// Parses the edge-list text format: one edge per line, two
/// whitespace-separated decimal ids, `#` starts a comment line.
pub fn parse_edge_list(text: &str) -> Result<Vec<(u64, u64)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<u64> {
            let tok = tok.ok_or_else(|| EmError::Parse {
                line: i + 1,
                msg: "expected two vertex ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| EmError::Parse {
                line: i + 1,
                msg: format!("invalid vertex id {tok:?}"),
            })
        };
        let a = parse(parts.next())?;
        let b = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(EmError::Parse {
                line: i + 1,
                msg: "trailing tokens after edge".into(),
            });
        }
        out.push((a, b));
    }
    Ok(out)
}

pub fn read_edge_list(path: &Path) -> Result<Vec<(u64, u64)>> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text)
}

/// Writes an edge list in the text format.
pub fn format_edge_list(edges: &[(u64, u64)]) -> String {
    let mut s = String::new();
    for (a, b) in edges {
        s.push_str(&format!("{a} {b}\n"));
    }
    s
}
