//! Removing the degree assumption: very-high-degree vertices are fixed
//! explicitly and the rest of the pattern is enumerated on the low-degree
//! subgraph, constrained by adjacency masks to the fixed vertices.

use crate::emcore::{EmMachine, IoStats};
use crate::error::{EmError, Result};
use crate::graph::{DataGraph, VertexId};
use crate::pattern::{combinations, find_mis, PatternGraph};
use crate::randenum::rand::{enumerate_rand, RandOptions};
use crate::sink::{SinkMark, TupleSink};

#[derive(Clone, Copy, Debug, Default)]
pub struct DegreeOptions {
    /// Degree above which a vertex is very high; defaults to `sqrt(E M)`.
    pub threshold: Option<usize>,
    /// Forces the color count of the inner randomized runs.
    pub colors: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeReport {
    pub io: IoStats,
    pub very_high: usize,
    /// Branches `(p, fixed tuple, index set)` that ran an enumeration.
    pub branches: u64,
    pub emitted: u64,
    /// Memory-budget restarts inside the inner enumerations.
    pub restarts: u32,
}

pub fn default_threshold(edges: usize, mem: usize) -> usize {
    ((edges as f64) * (mem as f64)).sqrt().floor() as usize
}

pub fn degree_decompose(
    machine: &EmMachine,
    g: &DataGraph,
    h: &PatternGraph,
    sink: &mut dyn TupleSink,
    seed: u64,
    opts: DegreeOptions,
) -> Result<DegreeReport> {
    let before = machine.stats();
    let k = h.k();
    machine.config().check_pattern(k)?;
    let thr = opts
        .threshold
        .unwrap_or_else(|| default_threshold(g.m(), machine.mem()));
    machine.count_reads(machine.config().blocks(g.n()));
    let vhd: Vec<VertexId> = g
        .vertices()
        .iter()
        .copied()
        .filter(|&v| g.degree(v) > thr)
        .collect();
    let r = vhd.len();
    let mut is_vhd = vec![false; g.id_bound()];
    for &v in &vhd {
        is_vhd[v as usize] = true;
    }
    let low_graph;
    let gl: &DataGraph = if r == 0 {
        g
    } else {
        low_graph = g.induced_subgraph(machine, |v| !is_vhd[v as usize])?;
        &low_graph
    };
    let low: Vec<VertexId> = g
        .vertices()
        .iter()
        .copied()
        .filter(|&v| !is_vhd[v as usize])
        .collect();

    // Adjacency among the very-high-degree vertices, from one read of their lists.
    let _vm = machine.charge((r * r).div_ceil(64).max(1))?;
    let mut vadj = vec![false; r * r];
    for (a, &v) in vhd.iter().enumerate() {
        let i = g.index_of(v).expect("present");
        let (lo, hi) = g.list_range(i);
        machine.load_range(g.adjacency(), lo, hi);
        for (b, &w) in vhd.iter().enumerate() {
            vadj[a * r + b] = g.has_edge(v, w);
        }
    }

    let mut rep = DegreeReport {
        very_high: r,
        ..DegreeReport::default()
    };
    let mut masks = vec![0u32; g.id_bound()];
    for p in 0..=k.min(r) {
        for tuple in ordered_tuples(r, p) {
            let fixed: Vec<VertexId> = tuple.iter().map(|&a| vhd[a]).collect();
            let mut masks_ready = false;
            for set in combinations(k, p) {
                machine.add_ops(1);
                let edges_ok = (0..p).all(|a| {
                    (a + 1..p).all(|b| !h.has_edge(set[a], set[b]) || vadj[tuple[a] * r + tuple[b]])
                });
                if !edges_ok {
                    continue;
                }
                if p == k {
                    let mut t = vec![0; k];
                    for a in 0..p {
                        t[set[a]] = fixed[a];
                    }
                    sink.emit(machine, &t);
                    rep.emitted += 1;
                    continue;
                }
                if !masks_ready {
                    compute_masks(machine, g, &fixed, &low, &mut masks);
                    masks_ready = true;
                }
                let (emitted, restarts) = run_branch(machine, gl, h, &set, &fixed, &low, &masks, sink, seed, opts)?;
                rep.emitted += emitted;
                rep.restarts += restarts;
                rep.branches += 1;
            }
        }
    }
    rep.io = machine.stats().since(&before);
    Ok(rep)
}

/// Bit `a` of `masks[u]` is set iff `u` is adjacent to `fixed[a]`, for low `u`.
fn compute_masks(
    machine: &EmMachine,
    g: &DataGraph,
    fixed: &[VertexId],
    low: &[VertexId],
    masks: &mut [u32],
) {
    for &u in low {
        masks[u as usize] = 0;
    }
    for (a, &v) in fixed.iter().enumerate() {
        let i = g.index_of(v).expect("present");
        let (lo, hi) = g.list_range(i);
        machine.load_range(g.adjacency(), lo, hi);
        for &u in g.neighbors(v) {
            masks[u as usize] |= 1 << a;
        }
    }
    machine.count_writes(machine.config().blocks(low.len()));
    machine.add_ops(low.len() as u64);
}

#[allow(clippy::too_many_arguments)]
fn run_branch(
    machine: &EmMachine,
    gl: &DataGraph,
    h: &PatternGraph,
    set: &[usize],
    fixed: &[VertexId],
    low: &[VertexId],
    masks: &[u32],
    sink: &mut dyn TupleSink,
    seed: u64,
    opts: DegreeOptions,
) -> Result<(u64, u32)> {
    let k = h.k();
    let rest: Vec<usize> = (0..k).filter(|i| !set.contains(i)).collect();
    // Required mask of each remaining pattern vertex.
    let need: Vec<u32> = rest
        .iter()
        .map(|&j| {
            set.iter()
                .enumerate()
                .filter(|&(_, &i)| h.has_edge(i, j))
                .fold(0u32, |m, (a, _)| m | 1 << a)
        })
        .collect();
    let hp = h.induced(&rest);
    let (core, iso): (Vec<usize>, Vec<usize>) = (0..rest.len()).partition(|&j| hp.degree(j) > 0);
    let ok = |u: VertexId, m: u32| masks[u as usize] & m == m;
    let mut iso_cands: Vec<Vec<VertexId>> = Vec::with_capacity(iso.len());
    for &j in &iso {
        let c: Vec<VertexId> = low.iter().copied().filter(|&u| ok(u, need[j])).collect();
        machine.count_writes(machine.config().blocks(c.len()));
        if c.is_empty() {
            return Ok((0, 0));
        }
        iso_cands.push(c);
    }
    for &j in &core {
        if !low.iter().any(|&u| ok(u, need[j])) {
            return Ok((0, 0));
        }
    }
    let mut fixed_slots: Vec<(usize, VertexId)> = set.iter().copied().zip(fixed.iter().copied()).collect();
    fixed_slots.sort_unstable();
    let mut join = Join {
        inner: sink,
        full: vec![0; k],
        core_slots: core.iter().map(|&j| rest[j]).collect(),
        iso_slots: iso.iter().map(|&j| rest[j]).collect(),
        iso_cands,
        fixed: fixed.to_vec(),
        per_load: (machine.mem() / (4 * k)).max(1),
        seen: 0,
        emitted: 0,
    };
    for &(i, v) in &fixed_slots {
        join.full[i] = v;
    }
    if core.is_empty() {
        join.emit(machine, &[]);
        return Ok((join.emitted, 0));
    }
    let core_pattern = hp.induced(&core);
    let mis = find_mis(&core_pattern)?;
    let core_need: Vec<u32> = core.iter().map(|&j| need[j]).collect();
    let filter = |i: usize, u: VertexId| ok(u, core_need[i]);
    let r = enumerate_rand(
        machine,
        gl,
        &mis,
        &mut join,
        seed,
        RandOptions {
            induced: false,
            filter: Some(&filter),
            colors: opts.colors,
        },
    )?;
    Ok((join.emitted, r.restarts))
}

/// Completes core tuples with the pattern vertices isolated in the
/// remaining pattern: a block nested-loop join against their candidate
/// lists, reloaded once per block of core tuples.
struct Join<'s> {
    inner: &'s mut dyn TupleSink,
    full: Vec<VertexId>,
    core_slots: Vec<usize>,
    iso_slots: Vec<usize>,
    iso_cands: Vec<Vec<VertexId>>,
    fixed: Vec<VertexId>,
    per_load: usize,
    seen: u64,
    emitted: u64,
}

impl Join<'_> {
    fn extend(&mut self, machine: &EmMachine, depth: usize, used: &mut Vec<VertexId>) {
        if depth == self.iso_slots.len() {
            self.inner.emit(machine, &self.full);
            self.emitted += 1;
            return;
        }
        for ci in 0..self.iso_cands[depth].len() {
            let u = self.iso_cands[depth][ci];
            machine.add_ops(1);
            if used.contains(&u) {
                continue;
            }
            self.full[self.iso_slots[depth]] = u;
            used.push(u);
            self.extend(machine, depth + 1, used);
            used.pop();
        }
    }
}

impl TupleSink for Join<'_> {
    fn emit(&mut self, machine: &EmMachine, tuple: &[VertexId]) {
        if !self.iso_slots.is_empty() && self.seen.is_multiple_of(self.per_load as u64) {
            let words: usize = self.iso_cands.iter().map(Vec::len).sum();
            machine.count_reads(machine.config().blocks(words));
        }
        self.seen += 1;
        for (j, &v) in tuple.iter().enumerate() {
            self.full[self.core_slots[j]] = v;
        }
        let mut used: Vec<VertexId> = self.fixed.iter().chain(tuple).copied().collect();
        self.extend(machine, 0, &mut used);
    }

    fn mark(&self) -> SinkMark {
        self.inner.mark()
    }

    fn rollback(&mut self, mark: SinkMark) {
        self.inner.rollback(mark)
    }

    fn buffer_words(&self, block: usize) -> usize {
        self.inner.buffer_words(block)
    }
}

/// Ordered `p`-tuples of distinct indices below `r`, lexicographic.
fn ordered_tuples(r: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(r: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for a in 0..r {
            if !cur.contains(&a) {
                cur.push(a);
                rec(r, p, cur, out);
                cur.pop();
            }
        }
    }
    rec(r, p, &mut cur, &mut out);
    out
}

/// Rejects modes the decomposition does not define.
pub fn check_supported(induced: bool) -> Result<()> {
    if induced {
        return Err(EmError::Config(
            "induced enumeration is not supported by the degree decomposition".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples() {
        assert_eq!(ordered_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(ordered_tuples(3, 2).len(), 6);
        assert_eq!(ordered_tuples(2, 2), vec![vec![0, 1], vec![1, 0]]);
    }
}
