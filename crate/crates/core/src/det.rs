//! Deterministic enumeration: rounds over tuples of chunks.
//!
//! Every round loads `k-s-1` chunks, derives candidate sets from them, pays
//! one scan to gather the edges of incomplete chunk vertices, then streams
//! the adjacency array once more, fixing the free vertex to each data vertex
//! in turn and backtracking over the resident candidates.
//!
//! Host-side indexes (per-chunk lookup tables, inverted candidate lists) are
//! shortcuts for work the machine would do on data it has already paid to
//! read; they never change the counters.

use std::collections::HashSet;

use crate::chunk::{partition_with_cap, chunk_cap, Chunk};
use crate::emcore::{EmMachine, IoStats, Word};
use crate::error::{EmError, Result};
use crate::graph::{pair_order, DataGraph, VertexId};
use crate::pattern::MisConfig;
use crate::sink::TupleSink;

/// Distinct keys, flattened values and per-key ranges.
type Linked = (Vec<VertexId>, Vec<VertexId>, Vec<(usize, usize)>);

/// Per-index predicate on original pattern indices.
pub type IndexFilter<'a> = &'a dyn Fn(usize, VertexId) -> bool;

#[derive(Clone, Copy, Default)]
pub struct DetOptions<'a> {
    /// Only vertex-induced instances; requires an `s = 1` configuration.
    pub induced: bool,
    pub filter: Option<IndexFilter<'a>>,
    /// Chunk capacity override; defaults to `floor(M / 4k)`.
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DetReport {
    pub io: IoStats,
    pub rounds: u64,
    pub phi: usize,
    pub cap: usize,
    pub restarts: u32,
    /// Rounds in which the second family of iterations (half case) ran.
    pub second_change_rounds: u64,
    /// Largest number of block reads spent in a single round.
    pub max_round_reads: u64,
    pub emitted: u64,
}

pub fn enumerate_det(
    machine: &EmMachine,
    g: &DataGraph,
    mis: &MisConfig,
    sink: &mut dyn TupleSink,
    opts: DetOptions<'_>,
) -> Result<DetReport> {
    let k = mis.k;
    machine.config().check_pattern(k)?;
    if opts.induced && mis.s != 1 {
        return Err(EmError::PatternUnsupported(
            "induced enumeration needs an s = 1 configuration".into(),
        ));
    }
    let before = machine.stats();
    let _sink_buf = machine.charge(sink.buffer_words(machine.block()))?;
    if mis.chunk_slots() == 0 {
        let emitted = scan_edges(machine, g, mis, sink, opts)?;
        return Ok(DetReport {
            io: machine.stats().since(&before),
            emitted,
            ..DetReport::default()
        });
    }
    let mut cap = match opts.cap {
        Some(c) => c,
        None => chunk_cap(machine.mem(), k)?,
    };
    let mut restarts = 0;
    loop {
        let mark = sink.mark();
        match run_rounds(machine, g, mis, sink, opts, cap) {
            Ok(mut rep) => {
                rep.io = machine.stats().since(&before);
                rep.restarts = restarts;
                return Ok(rep);
            }
            Err(EmError::MemoryBudgetExceeded { .. }) if cap > 1 => {
                sink.rollback(mark);
                cap /= 2;
                restarts += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

/// The `k = 2` pattern: every directed entry is one instance.
fn scan_edges(
    machine: &EmMachine,
    g: &DataGraph,
    mis: &MisConfig,
    sink: &mut dyn TupleSink,
    opts: DetOptions<'_>,
) -> Result<u64> {
    machine.pay_scan(g.adjacency())?;
    let mut emitted = 0;
    let mut t = [0 as VertexId; 2];
    for (i, &a) in g.vertices().iter().enumerate() {
        let (lo, hi) = g.list_range(i);
        for &b in &g.adjacency().words()[lo..hi] {
            let b = b as VertexId;
            t[mis.labeling[0]] = a;
            t[mis.labeling[1]] = b;
            if let Some(f) = opts.filter {
                if !f(0, t[0]) || !f(1, t[1]) {
                    continue;
                }
            }
            sink.emit(machine, &t);
            emitted += 1;
        }
    }
    Ok(emitted)
}

/// Lookup tables over one chunk's resident entries.
struct ChunkIndex {
    chunk: Chunk,
    /// `(owner, neighbor)` in adjacency order.
    entries: Vec<(VertexId, VertexId)>,
    /// `(owner, lo, hi)` ranges into `entries`.
    owners: Vec<(VertexId, usize, usize)>,
    /// `(neighbor, owner)` sorted.
    by_nbr: Vec<(VertexId, VertexId)>,
    /// Distinct neighbor ends.
    nbrs: Vec<VertexId>,
    /// Distinct neighbors of complete owners.
    complete_nbrs: Vec<VertexId>,
}

impl ChunkIndex {
    fn build(g: &DataGraph, chunk: &Chunk) -> Self {
        let mut entries = Vec::with_capacity(chunk.len());
        let mut owners = Vec::new();
        for (owner, lo, hi) in chunk.segments(g) {
            let start = entries.len();
            for &b in &g.adjacency().words()[lo..hi] {
                entries.push((owner, b as VertexId));
            }
            owners.push((owner, start, entries.len()));
        }
        let mut by_nbr: Vec<_> = entries.iter().map(|&(a, b)| (b, a)).collect();
        by_nbr.sort_unstable();
        let mut nbrs: Vec<_> = by_nbr.iter().map(|p| p.0).collect();
        nbrs.dedup();
        let mut complete_nbrs: Vec<_> = entries
            .iter()
            .filter(|e| Some(e.0) != chunk.incomplete)
            .map(|e| e.1)
            .collect();
        complete_nbrs.sort_unstable();
        complete_nbrs.dedup();
        ChunkIndex {
            chunk: chunk.clone(),
            entries,
            owners,
            by_nbr,
            nbrs,
            complete_nbrs,
        }
    }

    fn owner_entries(&self, a: VertexId) -> &[(VertexId, VertexId)] {
        match self.owners.binary_search_by_key(&a, |o| o.0) {
            Ok(i) => &self.entries[self.owners[i].1..self.owners[i].2],
            Err(_) => &[],
        }
    }

    fn owners_of(&self, b: VertexId) -> &[(VertexId, VertexId)] {
        let lo = self.by_nbr.partition_point(|p| p.0 < b);
        let hi = self.by_nbr.partition_point(|p| p.0 <= b);
        &self.by_nbr[lo..hi]
    }

    fn is_complete(&self, a: VertexId) -> bool {
        self.chunk.incomplete != Some(a)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Free,
    Matched(usize),
    Probe(usize),
    /// Position `k-1` in the half case.
    Last,
}

/// Round-scoped membership stamps over vertex ids.
struct Stamps {
    cand: Vec<u32>,
    complete: Vec<u32>,
    incomplete: Vec<u32>,
    now: u32,
}

impl Stamps {
    fn new(n: usize) -> Self {
        Stamps {
            cand: vec![0; n],
            complete: vec![0; n],
            incomplete: vec![0; n],
            now: 0,
        }
    }
    fn next(&mut self) {
        self.now += 1;
    }
    fn is(&self, v: &[u32], x: VertexId) -> bool {
        v[x as usize] == self.now
    }
}

fn run_rounds(
    machine: &EmMachine,
    g: &DataGraph,
    mis: &MisConfig,
    sink: &mut dyn TupleSink,
    opts: DetOptions<'_>,
    cap: usize,
) -> Result<DetReport> {
    let part = partition_with_cap(machine, g, cap)?;
    let index: Vec<ChunkIndex> = part.chunks.iter().map(|c| ChunkIndex::build(g, c)).collect();
    let phi = index.len();
    let slots = mis.chunk_slots();
    let mut rep = DetReport {
        phi,
        cap,
        ..DetReport::default()
    };
    if phi == 0 {
        return Ok(rep);
    }
    let mut stamps = Stamps::new(g.id_bound());
    let mut sel = vec![0usize; slots];
    let mut ctx = RoundCtx::new(machine, g, mis, opts);
    loop {
        let before = machine.stats().block_reads;
        let second = ctx.round(&index, &sel, &mut stamps, sink)?;
        rep.rounds += 1;
        rep.second_change_rounds += second as u64;
        rep.max_round_reads = rep.max_round_reads.max(machine.stats().block_reads - before);
        // Odometer over chunk tuples, last slot fastest.
        let mut i = slots;
        loop {
            if i == 0 {
                rep.emitted = ctx.emitted;
                return Ok(rep);
            }
            i -= 1;
            sel[i] += 1;
            if sel[i] < phi {
                break;
            }
            sel[i] = 0;
        }
    }
}

struct RoundCtx<'a> {
    machine: &'a EmMachine,
    g: &'a DataGraph,
    mis: &'a MisConfig,
    opts: DetOptions<'a>,
    k: usize,
    s: usize,
    free: usize,
    half: bool,
    order: Vec<Step>,
    emitted: u64,
    /// Reused `(asg, assigned, tuple)` buffers of [`Search`].
    scratch: (Vec<VertexId>, Vec<usize>, Vec<VertexId>),
}

/// Per-round resident data.
struct Resident<'r> {
    sel: Vec<&'r ChunkIndex>,
    stamps: &'r Stamps,
    /// Edges from incomplete chunk vertices to candidates that are not
    /// otherwise resident, normalized `(min, max)`.
    eprime: HashSet<(VertexId, VertexId)>,
}

impl Resident<'_> {
    fn complete(&self, x: VertexId) -> bool {
        self.stamps.is(&self.stamps.complete, x)
    }

    fn adjacent(&self, g: &DataGraph, x: VertexId, y: VertexId) -> Result<bool> {
        if self.complete(x) {
            return Ok(g.has_edge(x, y));
        }
        if self.complete(y) {
            return Ok(g.has_edge(y, x));
        }
        let inc = |v| self.stamps.is(&self.stamps.incomplete, v);
        let cand = |v| self.stamps.is(&self.stamps.cand, v);
        if (inc(x) && cand(y)) || (inc(y) && cand(x)) {
            return Ok(self.eprime.contains(&(x.min(y), x.max(y))));
        }
        Err(EmError::Invariant(format!(
            "adjacency of {x} and {y} is not resident"
        )))
    }
}

/// Which family of iterations is running.
#[derive(Clone, Copy)]
enum Family<'e> {
    Main,
    /// Half case, all `Gamma_k` images forced to incomplete vertices; the
    /// last position ranges over the free vertex's linked list.
    Second {
        forced: &'e [Option<VertexId>],
        linked: &'e [VertexId],
    },
}

struct Search<'a, 'r> {
    res: &'a Resident<'r>,
    hits: &'a [VertexId],
    v: VertexId,
    family: Family<'a>,
    asg: Vec<VertexId>,
    assigned: Vec<usize>,
    tuple: Vec<VertexId>,
}

impl<'a> RoundCtx<'a> {
    fn new(machine: &'a EmMachine, g: &'a DataGraph, mis: &'a MisConfig, opts: DetOptions<'a>) -> Self {
        let k = mis.k;
        let s = mis.s;
        let half = mis.is_half();
        let mut order = vec![Step::Free];
        for i in 0..mis.chunk_slots() {
            order.push(if i < s { Step::Matched(i) } else { Step::Probe(i) });
        }
        if half {
            order.push(Step::Last);
        }
        RoundCtx {
            machine,
            g,
            mis,
            opts,
            k,
            s,
            free: mis.free(),
            half,
            order,
            emitted: 0,
            scratch: (vec![0; k], Vec::with_capacity(k), vec![0; k]),
        }
    }

    /// Runs one round; returns whether the second family executed.
    fn round(
        &mut self,
        index: &[ChunkIndex],
        sel: &[usize],
        stamps: &mut Stamps,
        sink: &mut dyn TupleSink,
    ) -> Result<bool> {
        let m = self.machine;
        let g = self.g;
        let chosen: Vec<&ChunkIndex> = sel.iter().map(|&l| &index[l]).collect();

        // Step 1: load chunks, V_i and E_i.
        let mut mem = m.charge(0)?;
        for c in &chosen {
            mem.grow(c.entries.len() + c.owners.len())?;
            m.load_range(g.adjacency(), c.chunk.start, c.chunk.end);
        }
        stamps.next();
        for c in &chosen {
            for &(a, _, _) in &c.owners {
                stamps.cand[a as usize] = stamps.now;
                if c.is_complete(a) {
                    stamps.complete[a as usize] = stamps.now;
                }
            }
            if let Some(w) = c.chunk.incomplete {
                stamps.incomplete[w as usize] = stamps.now;
            }
        }
        // Step 2: candidates for S, and for position k-1 in the half case.
        for c in chosen.iter().take(self.s) {
            mem.grow(c.nbrs.len())?;
            for &b in &c.nbrs {
                stamps.cand[b as usize] = stamps.now;
            }
        }
        if self.half {
            for &j in &self.mis.gamma_k {
                let c = chosen[j];
                mem.grow(c.complete_nbrs.len())?;
                for &b in &c.complete_nbrs {
                    stamps.cand[b as usize] = stamps.now;
                }
            }
        }
        m.add_ops(mem.words() as u64);

        // Step 3: one scan for the edges of incomplete vertices.
        m.pay_scan(g.adjacency())?;
        let mut eprime = HashSet::new();
        let mut seen_w = Vec::new();
        for c in &chosen {
            let Some(w) = c.chunk.incomplete else { continue };
            if seen_w.contains(&w) {
                continue;
            }
            seen_w.push(w);
            for &y in g.neighbors(w) {
                let y = y as VertexId;
                if stamps.is(&stamps.cand, y) && !stamps.is(&stamps.complete, y)
                    && eprime.insert((w.min(y), w.max(y))) {
                        mem.grow(1)?;
                    }
            }
        }

        // Second family setup (half case): V' and the linked lists.
        let second = self.half && self.second_applies(&chosen);
        let mut forced: Vec<Option<VertexId>> = Vec::new();
        let mut linked = None;
        if second {
            forced = vec![None; self.mis.chunk_slots()];
            for &j in &self.mis.gamma_k {
                forced[j] = chosen[j].chunk.incomplete;
            }
            linked = Some(self.build_linked(&chosen)?);
        }

        let res = Resident {
            sel: chosen.clone(),
            stamps,
            eprime,
        };

        // Step 4: stream all lists once. The graph is undirected, so the
        // candidates adjacent to `v` are read off `v`'s own sorted list.
        m.pay_scan(g.adjacency())?;
        let all_v = self.mis.rows()[self.free] == 0;
        let seg = (m.mem() / (8 * self.k)).max(1);
        let mut hits: Vec<VertexId> = Vec::new();
        for &v in g.vertices() {
            hits.clear();
            hits.extend(
                g.neighbors(v)
                    .iter()
                    .map(|&y| y as VertexId)
                    .filter(|&y| stamps.is(&stamps.cand, y)),
            );
            let linked_here = linked
                .as_ref()
                .and_then(|(sk, _, _)| sk.binary_search(&v).ok());
            if hits.is_empty() && !all_v && linked_here.is_none() {
                continue;
            }
            let _e2 = m.charge(hits.len())?;
            if all_v || !hits.is_empty() {
                self.search(&res, &hits, v, Family::Main, sink)?;
            }
            if let (Some((_, words, ranges)), Some(pos)) = (&linked, linked_here) {
                let (a, b) = ranges[pos];
                let linked = &words[a..b];
                let _segment = m.charge(linked.len().min(seg))?;
                self.search(
                    &res,
                    &hits,
                    v,
                    Family::Second {
                        forced: &forced,
                        linked,
                    },
                    sink,
                )?;
            }
        }
        // Step 5: everything is released when the guards drop.
        drop(mem);
        Ok(second)
    }

    /// Second family runs when every chunk selected for a `Gamma_k` position
    /// has an incomplete vertex.
    fn second_applies(&self, chosen: &[&ChunkIndex]) -> bool {
        self.mis
            .gamma_k
            .iter()
            .all(|&j| chosen[j].chunk.incomplete.is_some())
    }

    /// Builds the sorted linked lists `u -> {x}` with `x` adjacent to every
    /// forced incomplete vertex. Returns distinct `u`, the flattened `x`
    /// values, and per-`u` ranges.
    fn build_linked(
        &self,
        chosen: &[&ChunkIndex],
    ) -> Result<Linked> {
        let m = self.machine;
        let g = self.g;
        let b = m.block();
        let ws: Vec<VertexId> = self
            .mis
            .gamma_k
            .iter()
            .map(|&j| chosen[j].chunk.incomplete.expect("checked"))
            .collect();
        let mut keys = Vec::new();
        let mut flat = Vec::new();
        let mut ranges = Vec::new();
        if ws.is_empty() {
            // V' is every vertex and the linked lists are the adjacency lists.
            m.pay_scan(g.adjacency())?;
            for &u in g.vertices() {
                let start = flat.len();
                flat.extend(g.neighbors(u).iter().map(|&x| x as VertexId));
                keys.push(u);
                ranges.push((start, flat.len()));
            }
            return Ok((keys, flat, ranges));
        }
        // Merge the lists of the forced vertices into V'.
        let _bufs = m.charge(b * (ws.len() + 1))?;
        let mut vprime: Option<Vec<VertexId>> = None;
        for &w in &ws {
            let i = g.index_of(w).expect("incomplete vertex is present");
            let (lo, hi) = g.list_range(i);
            m.load_range(g.adjacency(), lo, hi);
            let list: Vec<VertexId> = g.neighbors(w).iter().map(|&x| x as VertexId).collect();
            vprime = Some(match vprime {
                None => list,
                Some(prev) => {
                    m.add_ops((prev.len() + list.len()) as u64);
                    sorted_intersection(&prev, &list)
                }
            });
        }
        let vprime = vprime.unwrap_or_default();
        m.count_writes(m.config().blocks(vprime.len()));
        // Join V' against the adjacency array, then sort by the far end.
        m.pay_scan(g.adjacency())?;
        m.count_reads(m.config().blocks(vprime.len()));
        let mut w = m.writer()?;
        for &a in &vprime {
            for &u in g.neighbors(a) {
                w.push(u);
                w.push(a as Word);
            }
        }
        let recs = w.finish();
        drop(_bufs);
        let sorted = m.ext_sort(&recs, 2, pair_order)?;
        m.count_reads(m.config().blocks(sorted.len()));
        let words = sorted.words();
        let mut i = 0;
        while i + 1 < words.len() {
            let u = words[i] as VertexId;
            let start = flat.len();
            while i + 1 < words.len() && words[i] as VertexId == u {
                flat.push(words[i + 1] as VertexId);
                i += 2;
            }
            keys.push(u);
            ranges.push((start, flat.len()));
        }
        Ok((keys, flat, ranges))
    }

    fn search(
        &mut self,
        res: &Resident<'_>,
        hits: &[VertexId],
        v: VertexId,
        family: Family<'_>,
        sink: &mut dyn TupleSink,
    ) -> Result<()> {
        let (asg, mut assigned, tuple) = std::mem::take(&mut self.scratch);
        assigned.clear();
        let mut st = Search {
            res,
            hits,
            v,
            family,
            asg,
            assigned,
            tuple,
        };
        let r = self.step(&mut st, 0, sink);
        self.scratch = (st.asg, st.assigned, st.tuple);
        r
    }

    fn step(&mut self, st: &mut Search<'_, '_>, depth: usize, sink: &mut dyn TupleSink) -> Result<()> {
        self.machine.add_ops(1);
        if depth == self.order.len() {
            for p in 0..self.k {
                st.tuple[self.mis.labeling[p]] = st.asg[p];
            }
            sink.emit(self.machine, &st.tuple);
            self.emitted += 1;
            return Ok(());
        }
        match self.order[depth] {
            Step::Free => {
                if self.place(st, self.free, st.v)? {
                    self.step(st, depth + 1, sink)?;
                    st.assigned.pop();
                }
            }
            Step::Matched(i) => {
                let res = st.res;
                let hits = st.hits;
                let c = res.sel[i];
                let partner = self.k - self.s + i;
                let forced = match st.family {
                    Family::Second { forced, .. } => forced[i],
                    Family::Main => None,
                };
                if let Some(w) = forced {
                    for &(a, b) in c.owner_entries(w) {
                        self.pair(st, depth, (i, a), (partner, b), sink)?;
                    }
                } else if self.mis.adjacent(i, self.free) {
                    for &x in hits {
                        for &(a, b) in c.owner_entries(x) {
                            self.pair(st, depth, (i, a), (partner, b), sink)?;
                        }
                    }
                } else if self.mis.adjacent(partner, self.free) {
                    for &y in hits {
                        for &(b, a) in c.owners_of(y) {
                            self.pair(st, depth, (i, a), (partner, b), sink)?;
                        }
                    }
                } else {
                    for &(a, b) in &c.entries {
                        self.pair(st, depth, (i, a), (partner, b), sink)?;
                    }
                }
            }
            Step::Probe(i) => {
                let c = st.res.sel[i];
                let target = st.asg[self.mis.probe[i]];
                for &(_, a) in c.owners_of(target) {
                    self.machine.add_ops(1);
                    if self.place(st, i, a)? {
                        self.step(st, depth + 1, sink)?;
                        st.assigned.pop();
                    }
                }
            }
            Step::Last => {
                let last = self.k - 1;
                let g = self.g;
                let xs: &[VertexId] = match st.family {
                    Family::Second { linked, .. } => linked,
                    Family::Main => {
                        // Anchor on the first Gamma_k image that is complete
                        // in its chunk; none means the second family owns it.
                        let anchor = self
                            .mis
                            .gamma_k
                            .iter()
                            .find(|&&j| st.res.sel[j].is_complete(st.asg[j]))
                            .map(|&j| st.asg[j]);
                        match anchor {
                            Some(a) => {
                                for &x in g.neighbors(a) {
                                    self.machine.add_ops(1);
                                    if self.place(st, last, x as VertexId)? {
                                        self.step(st, depth + 1, sink)?;
                                        st.assigned.pop();
                                    }
                                }
                                &[]
                            }
                            None => &[],
                        }
                    }
                };
                for &x in xs {
                    self.machine.add_ops(1);
                    if self.place(st, last, x)? {
                        self.step(st, depth + 1, sink)?;
                        st.assigned.pop();
                    }
                }
            }
        }
        Ok(())
    }

    /// Places a matched pair `(i, a)`, `(partner, b)` and recurses.
    fn pair(
        &mut self,
        st: &mut Search<'_, '_>,
        depth: usize,
        (i, a): (usize, VertexId),
        (partner, b): (usize, VertexId),
        sink: &mut dyn TupleSink,
    ) -> Result<()> {
        self.machine.add_ops(1);
        if !self.place(st, i, a)? {
            return Ok(());
        }
        if self.place(st, partner, b)? {
            self.step(st, depth + 1, sink)?;
            st.assigned.pop();
        }
        st.assigned.pop();
        Ok(())
    }

    /// Assigns `x` to position `p` if it is consistent with everything
    /// already placed; pushes `p` onto the assigned list on success.
    fn place(&self, st: &mut Search<'_, '_>, p: usize, x: VertexId) -> Result<bool> {
        for &q in &st.assigned {
            if st.asg[q] == x {
                return Ok(false);
            }
        }
        if let Some(f) = self.opts.filter {
            if !f(self.mis.labeling[p], x) {
                return Ok(false);
            }
        }
        let second = matches!(st.family, Family::Second { .. });
        for &q in &st.assigned {
            if self.guaranteed(p, q, second) {
                continue;
            }
            let need = self.mis.adjacent(p, q);
            if !need && !self.opts.induced {
                continue;
            }
            let e = if p == self.free {
                self.hit(st, st.asg[q])?
            } else if q == self.free {
                self.hit(st, x)?
            } else {
                st.res.adjacent(self.g, x, st.asg[q])?
            };
            if e != need {
                return Ok(false);
            }
        }
        st.asg[p] = x;
        st.assigned.push(p);
        Ok(true)
    }

    fn hit(&self, st: &Search<'_, '_>, y: VertexId) -> Result<bool> {
        if !st.res.stamps.is(&st.res.stamps.cand, y) {
            return Err(EmError::Invariant(format!(
                "vertex {y} queried against the free vertex is not a candidate"
            )));
        }
        Ok(st.hits.binary_search(&y).is_ok())
    }

    /// Pairs whose adjacency holds by construction of the candidates.
    fn guaranteed(&self, p: usize, q: usize, second: bool) -> bool {
        let (a, b) = (p.min(q), p.max(q));
        let k = self.k;
        let s = self.s;
        if a < self.mis.chunk_slots() {
            if a < s && b == k - s + a {
                return true;
            }
            if a >= s && self.mis.probe[a] == b {
                return true;
            }
        }
        if b < self.mis.chunk_slots() && b >= s && self.mis.probe[b] == a {
            return true;
        }
        if second && b == k - 1 && (a == self.free || self.mis.gamma_k.contains(&a)) {
            return true;
        }
        false
    }
}

fn sorted_intersection(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
