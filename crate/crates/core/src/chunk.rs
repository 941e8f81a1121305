//! Splitting the adjacency array into consecutive chunks for the
//! deterministic algorithm.

use crate::emcore::EmMachine;
use crate::error::{EmError, Result};
use crate::graph::{DataGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chunk {
    /// Entry range `[start, end)` of the adjacency array.
    pub start: usize,
    pub end: usize,
    /// Vertex indices (into `DataGraph::vertices`) whose lists intersect the chunk.
    pub first_vertex: usize,
    pub last_vertex: usize,
    /// The vertex whose list crosses a boundary of this chunk, if any.
    pub incomplete: Option<VertexId>,
}

impl Chunk {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// `(owner, entry range)` for every list segment inside the chunk.
    pub fn segments<'g>(
        &self,
        g: &'g DataGraph,
    ) -> impl Iterator<Item = (VertexId, usize, usize)> + 'g {
        let (start, end) = (self.start, self.end);
        (self.first_vertex..=self.last_vertex).map(move |i| {
            let (a, b) = g.list_range(i);
            (g.vertices()[i], a.max(start), b.min(end))
        })
    }
}

#[derive(Clone, Debug)]
pub struct ChunkPartition {
    pub chunks: Vec<Chunk>,
    /// Maximum entries per chunk.
    pub cap: usize,
}

impl ChunkPartition {
    pub fn len(&self) -> usize {
        self.chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }
}

/// Default chunk capacity `floor(M / 4k)`; errors when `M / 8k < 1`.
pub fn chunk_cap(mem: usize, k: usize) -> Result<usize> {
    if mem < 8 * k {
        return Err(EmError::Config(format!(
            "memory too small for pattern size: M={mem} < 8k={}",
            8 * k
        )));
    }
    Ok(mem / (4 * k))
}

pub fn partition_chunks(machine: &EmMachine, g: &DataGraph, k: usize) -> Result<ChunkPartition> {
    let cap = chunk_cap(machine.mem(), k)?;
    partition_with_cap(machine, g, cap)
}

/// Greedy left-to-right chunking with at most one incomplete vertex per
/// chunk. One accounted scan of the adjacency array, plus the write of the
/// chunk table (three words per chunk).
pub fn partition_with_cap(machine: &EmMachine, g: &DataGraph, cap: usize) -> Result<ChunkPartition> {
    if cap == 0 {
        return Err(EmError::Config("chunk capacity must be positive".into()));
    }
    machine.pay_scan(g.adjacency())?;
    let mut chunks = Vec::new();
    let n = g.n();
    let mut vi = 0;
    let mut pos = 0;
    while vi < n {
        let start = pos;
        let first_vertex = vi;
        let continuing = pos > g.list_range(vi).0;
        let mut incomplete = continuing.then(|| g.vertices()[vi]);
        let mut last_vertex = vi;
        loop {
            if vi >= n {
                break;
            }
            let (_, end) = g.list_range(vi);
            let rem = end - pos;
            let used = pos - start;
            if used + rem <= cap {
                pos = end;
                last_vertex = vi;
                vi += 1;
                continue;
            }
            let owner = g.vertices()[vi];
            if used == cap {
                break;
            }
            match incomplete {
                Some(w) if w != owner => break,
                _ => {
                    pos += cap - used;
                    last_vertex = vi;
                    incomplete = Some(owner);
                    break;
                }
            }
        }
        chunks.push(Chunk {
            start,
            end: pos,
            first_vertex,
            last_vertex,
            incomplete,
        });
    }
    machine.add_ops(n as u64);
    machine.count_writes(machine.config().blocks(3 * chunks.len()));
    Ok(ChunkPartition { chunks, cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emcore::EmConfig;
    use crate::graph::ingest;
    use rand::{Rng, SeedableRng};

    fn check_invariants(g: &DataGraph, p: &ChunkPartition, lower: usize) {
        let mut pos = 0;
        for (ci, c) in p.chunks.iter().enumerate() {
            assert_eq!(c.start, pos, "chunks must be consecutive");
            assert!(c.len() <= p.cap);
            assert!(!c.is_empty());
            pos = c.end;
            let mut incompletes = Vec::new();
            for i in c.first_vertex..=c.last_vertex {
                let (a, b) = g.list_range(i);
                assert!(a < c.end && b > c.start, "vertex {i} not in chunk {ci}");
                if a < c.start || b > c.end {
                    incompletes.push(g.vertices()[i]);
                }
            }
            assert!(incompletes.len() <= 1, "chunk {ci} has {incompletes:?}");
            assert_eq!(c.incomplete, incompletes.first().copied());
            let last = ci + 1 == p.chunks.len();
            if !last && c.len() <= lower {
                // Closed early because the next list would add a second
                // incomplete vertex.
                let next = &p.chunks[ci + 1];
                let (a, b) = g.list_range(next.first_vertex);
                assert!(c.incomplete.is_some());
                assert!(a == c.end && c.len() + (b - a) > p.cap);
            }
        }
        assert_eq!(pos, g.entries());
    }

    #[test]
    fn small_graph_single_chunk() {
        let m = EmMachine::new(EmConfig::new(1200, 4).unwrap());
        let g = ingest(&m, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let p = partition_chunks(&m, &g, 3).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.chunks[0].incomplete, None);
    }

    #[test]
    fn memory_too_small() {
        let m = EmMachine::new(EmConfig::new(16, 4).unwrap());
        let g = ingest(&m, &[(0, 1)]).unwrap();
        assert!(matches!(partition_chunks(&m, &g, 3), Err(EmError::Config(_))));
    }

    #[test]
    fn hub_spans_many_chunks() {
        // M=480, k=3: cap = 40; hub of degree 120.
        let m = EmMachine::new(EmConfig::new(480, 8).unwrap());
        let pairs: Vec<_> = (1..=120u64).map(|i| (0, i)).collect();
        let g = ingest(&m, &pairs).unwrap();
        let p = partition_chunks(&m, &g, 3).unwrap();
        check_invariants(&g, &p, 480 / 24);
        let hub_chunks = p.chunks.iter().filter(|c| c.incomplete == Some(0)).count();
        assert!(hub_chunks >= 3);
    }

    #[test]
    fn random_graph_range_two_to_four() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut pairs = std::collections::BTreeSet::new();
            while pairs.len() < 20 {
                let a = rng.gen_range(0..12u64);
                let b = rng.gen_range(0..12u64);
                if a != b {
                    pairs.insert((a.min(b), a.max(b)));
                }
            }
            let pairs: Vec<_> = pairs.into_iter().collect();
            let m = EmMachine::new(EmConfig::new(48, 4).unwrap());
            let g = ingest(&m, &pairs).unwrap();
            assert_eq!(g.entries(), 40);
            let p = partition_chunks(&m, &g, 3).unwrap();
            assert_eq!(p.cap, 4);
            check_invariants(&g, &p, 2);
            for (i, c) in p.chunks.iter().enumerate() {
                let early = i + 1 < p.len() && c.len() <= 2;
                if !early && i + 1 < p.len() {
                    assert!((3..=4).contains(&c.len()));
                }
            }
            // Early closes at most double the greedy bound.
            assert!(p.len() <= 2 * (16 * 3 * 20 / 48 + 1));
        }
    }

    #[test]
    fn scan_cost_is_charged() {
        let m = EmMachine::new(EmConfig::new(96, 4).unwrap());
        let pairs: Vec<_> = (0..30u64).map(|i| (i, i + 1)).collect();
        let g = ingest(&m, &pairs).unwrap();
        let before = m.stats();
        let p = partition_chunks(&m, &g, 3).unwrap();
        let d = m.stats().since(&before);
        assert_eq!(d.block_reads, 15);
        assert_eq!(d.block_writes, (3 * p.len()).div_ceil(4) as u64);
    }
}
