//! Color-coded decomposition into `c^k` deterministic subproblems.

use crate::det::{enumerate_det, DetOptions, DetReport, IndexFilter};
use crate::emcore::{EmMachine, IoStats};
use crate::error::Result;
use crate::graph::{DataGraph, VertexId};
use crate::pattern::MisConfig;
use crate::randenum::coloring::{partition_edges, sample_coloring, ColorClasses, Coloring};
use crate::sink::TupleSink;

#[derive(Clone, Copy, Default)]
pub struct RandOptions<'a> {
    pub induced: bool,
    /// Extra per-index predicate, applied with the color filter.
    pub filter: Option<IndexFilter<'a>>,
    /// Forces the color count instead of `max(1, ceil(sqrt(E/M)))`.
    pub colors: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RandReport {
    pub io: IoStats,
    pub colors: u32,
    pub subproblems: u64,
    pub skipped: u64,
    pub largest_class: usize,
    pub emitted: u64,
    pub restarts: u32,
}

/// `max(1, ceil(sqrt(E / M)))`.
pub fn default_colors(edges: usize, mem: usize) -> u32 {
    let mut c = 1u32;
    while (c as u128 * c as u128) * (mem as u128) < edges as u128 {
        c += 1;
    }
    c
}

/// Independence degree `2(k - s + 1)` of the coloring family.
pub fn wiseness(mis: &MisConfig) -> usize {
    2 * (mis.k - mis.s + 1)
}

pub fn enumerate_rand(
    machine: &EmMachine,
    g: &DataGraph,
    mis: &MisConfig,
    sink: &mut dyn TupleSink,
    seed: u64,
    opts: RandOptions<'_>,
) -> Result<RandReport> {
    let c = opts
        .colors
        .unwrap_or_else(|| default_colors(g.m(), machine.mem()));
    let coloring = sample_coloring(seed, wiseness(mis), c, g.id_bound());
    enumerate_with_coloring(machine, g, mis, sink, &coloring, opts)
}

/// Runs the subproblems for a given coloring; used directly with the
/// high-probability coloring.
pub fn enumerate_with_coloring(
    machine: &EmMachine,
    g: &DataGraph,
    mis: &MisConfig,
    sink: &mut dyn TupleSink,
    coloring: &Coloring,
    opts: RandOptions<'_>,
) -> Result<RandReport> {
    let before = machine.stats();
    let k = mis.k;
    let c = coloring.colors();
    let mut rep = RandReport {
        colors: c,
        ..RandReport::default()
    };
    let user = opts.filter;
    if c == 1 {
        let d = enumerate_det(
            machine,
            g,
            mis,
            sink,
            DetOptions {
                induced: opts.induced,
                filter: user,
                cap: None,
            },
        )?;
        rep.subproblems = 1;
        rep.largest_class = g.m();
        rep.emitted = d.emitted;
        rep.restarts = d.restarts;
        rep.io = machine.stats().since(&before);
        return Ok(rep);
    }
    if mis.rows().contains(&0) {
        // An isolated pattern vertex may map outside every class union.
        return Err(crate::error::EmError::PatternUnsupported(
            "color-coded enumeration needs a pattern without isolated vertices".into(),
        ));
    }
    let classes = partition_edges(machine, g, coloring)?;
    rep.largest_class = classes.sizes().into_iter().max().unwrap_or(0);
    let _resident = machine.charge(classes.table_words() + coloring.resident_words())?;
    // Pattern pairs in original indices; induced mode needs every pair.
    let mut edge_pairs = Vec::new();
    let mut union_pairs = Vec::new();
    let lab = &mis.labeling;
    for a in 0..k {
        for b in a + 1..k {
            let (oa, ob) = (lab[a], lab[b]);
            if mis.adjacent(a, b) {
                edge_pairs.push((oa, ob));
            }
            if mis.adjacent(a, b) || opts.induced {
                union_pairs.push((oa, ob));
            }
        }
    }
    // Host-side memo of the coloring; evaluating it is internal work either way.
    let colors: Vec<u32> = (0..g.id_bound()).map(|v| coloring.color(v as VertexId)).collect();
    machine.add_ops(g.id_bound() as u64);
    let mut tau = vec![1u32; k];
    loop {
        machine.add_ops(edge_pairs.len() as u64);
        let empty = edge_pairs
            .iter()
            .any(|&(i, j)| classes.size(tau[i], tau[j]) == 0);
        if empty {
            rep.skipped += 1;
        } else {
            rep.subproblems += 1;
            let d = run_subproblem(machine, mis, sink, &colors, &classes, &tau, &union_pairs, opts)?;
            rep.emitted += d.emitted;
            rep.restarts += d.restarts;
        }
        // Odometer over color tuples.
        let mut i = k;
        loop {
            if i == 0 {
                rep.io = machine.stats().since(&before);
                return Ok(rep);
            }
            i -= 1;
            tau[i] += 1;
            if tau[i] <= c {
                break;
            }
            tau[i] = 1;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_subproblem(
    machine: &EmMachine,
    mis: &MisConfig,
    sink: &mut dyn TupleSink,
    colors: &[u32],
    classes: &ColorClasses,
    tau: &[u32],
    union_pairs: &[(usize, usize)],
    opts: RandOptions<'_>,
) -> Result<DetReport> {
    let mut wanted: Vec<(u32, u32)> = union_pairs
        .iter()
        .map(|&(i, j)| (tau[i].min(tau[j]), tau[i].max(tau[j])))
        .collect();
    wanted.sort_unstable();
    wanted.dedup();
    let mut w = machine.writer()?;
    let _read_buf = machine.charge(machine.block())?;
    for &(a, b) in &wanted {
        let (lo, hi) = classes.range(a, b);
        let words = machine.load_range(classes.edges(), 2 * lo, 2 * hi);
        w.extend(words);
    }
    let recs = w.finish();
    drop(_read_buf);
    let sub = DataGraph::from_edge_records(machine, &recs)?;
    let user = opts.filter;
    let filter = |i: usize, v: VertexId| colors[v as usize] == tau[i] && user.is_none_or(|f| f(i, v));
    enumerate_det(
        machine,
        &sub,
        mis,
        sink,
        DetOptions {
            induced: opts.induced,
            filter: Some(&filter),
            cap: None,
        },
    )
}
