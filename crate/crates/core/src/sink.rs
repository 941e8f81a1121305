//! Receivers for enumerated instances.

use crate::emcore::EmMachine;
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitMode {
    Count,
    Digest,
    /// Tuples are written to an external array, paying `ceil(kT/B)` writes.
    List,
}

/// Sink state snapshot; restoring it discards everything emitted since.
#[derive(Clone, Copy, Debug)]
pub struct SinkMark {
    count: u64,
    digest: u64,
    list_len: usize,
    collected: usize,
    pending: usize,
}

pub trait TupleSink {
    fn emit(&mut self, machine: &EmMachine, tuple: &[VertexId]);
    fn mark(&self) -> SinkMark;
    fn rollback(&mut self, mark: SinkMark);
    /// Internal memory the sink needs while a run is active.
    fn buffer_words(&self, block: usize) -> usize;
}

#[derive(Clone, Debug)]
pub struct EmitSink {
    mode: EmitMode,
    count: u64,
    digest: u64,
    list: Vec<VertexId>,
    /// Words in the current, not yet written, output block.
    pending: usize,
    collected: Option<Vec<Vec<VertexId>>>,
}

impl EmitSink {
    pub fn new(mode: EmitMode) -> Self {
        EmitSink {
            mode,
            count: 0,
            digest: 0,
            list: Vec::new(),
            pending: 0,
            collected: None,
        }
    }

    /// Also keeps every tuple in host memory, uncounted. For tests.
    pub fn collecting(mode: EmitMode) -> Self {
        let mut s = Self::new(mode);
        s.collected = Some(Vec::new());
        s
    }

    pub fn mode(&self) -> EmitMode {
        self.mode
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Order-independent digest of the emitted multiset.
    pub fn digest(&self) -> u64 {
        self.digest
    }

    /// Tuples written in list mode, flattened.
    pub fn list_words(&self) -> &[VertexId] {
        &self.list
    }

    pub fn collected(&self) -> Option<&[Vec<VertexId>]> {
        self.collected.as_deref()
    }

    pub fn take_collected(&mut self) -> Vec<Vec<VertexId>> {
        self.collected.take().unwrap_or_default()
    }

    /// Writes the final partial block in list mode.
    pub fn finish(&mut self, machine: &EmMachine) {
        if self.mode == EmitMode::List && self.pending > 0 {
            machine.count_writes(1);
            self.pending = 0;
        }
    }
}

impl TupleSink for EmitSink {
    fn emit(&mut self, machine: &EmMachine, tuple: &[VertexId]) {
        self.count += 1;
        machine.add_ops(1);
        match self.mode {
            EmitMode::Count => {}
            EmitMode::Digest => self.digest = self.digest.wrapping_add(tuple_hash(tuple)),
            EmitMode::List => {
                self.digest = self.digest.wrapping_add(tuple_hash(tuple));
                let b = machine.block();
                for &v in tuple {
                    self.list.push(v);
                    self.pending += 1;
                    if self.pending == b {
                        machine.count_writes(1);
                        self.pending = 0;
                    }
                }
            }
        }
        if let Some(c) = &mut self.collected {
            c.push(tuple.to_vec());
        }
    }

    fn mark(&self) -> SinkMark {
        SinkMark {
            count: self.count,
            digest: self.digest,
            list_len: self.list.len(),
            collected: self.collected.as_ref().map_or(0, Vec::len),
            pending: self.pending,
        }
    }

    fn rollback(&mut self, mark: SinkMark) {
        self.count = mark.count;
        self.digest = mark.digest;
        self.list.truncate(mark.list_len);
        self.pending = mark.pending;
        if let Some(c) = &mut self.collected {
            c.truncate(mark.collected);
        }
    }

    fn buffer_words(&self, block: usize) -> usize {
        if self.mode == EmitMode::List {
            block
        } else {
            0
        }
    }
}

/// Forwards tuples after placing them into a larger tuple: every emitted
/// value `t[j]` lands at `slots[j]`, the fixed values keep their positions.
pub struct Splice<'a> {
    inner: &'a mut dyn TupleSink,
    full: Vec<VertexId>,
    slots: Vec<usize>,
}

impl<'a> Splice<'a> {
    pub fn new(inner: &'a mut dyn TupleSink, fixed: &[(usize, VertexId)], slots: Vec<usize>) -> Self {
        let mut full = vec![0; fixed.len() + slots.len()];
        for &(i, v) in fixed {
            full[i] = v;
        }
        Splice { inner, full, slots }
    }
}

impl TupleSink for Splice<'_> {
    fn emit(&mut self, machine: &EmMachine, tuple: &[VertexId]) {
        for (j, &v) in tuple.iter().enumerate() {
            self.full[self.slots[j]] = v;
        }
        self.inner.emit(machine, &self.full);
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

/// 64-bit hash of a tuple; summed (wrapping) into the digest.
pub fn tuple_hash(t: &[VertexId]) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15 ^ t.len() as u64;
    for &v in t {
        h = mix(h ^ v as u64);
    }
    h
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Digest of a set of tuples, for comparing against a sink.
pub fn digest_of<'a, I: IntoIterator<Item = &'a Vec<VertexId>>>(tuples: I) -> u64 {
    tuples
        .into_iter()
        .fold(0u64, |acc, t| acc.wrapping_add(tuple_hash(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emcore::EmConfig;

    #[test]
    fn list_mode_charges_blocks() {
        let m = EmMachine::new(EmConfig::new(64, 4).unwrap());
        let mut s = EmitSink::new(EmitMode::List);
        for i in 0..5 {
            s.emit(&m, &[i, i + 1, i + 2]);
        }
        s.finish(&m);
        assert_eq!(m.stats().block_writes, 4); // ceil(15/4)
        assert_eq!(m.stats().block_reads, 0);
        assert_eq!(s.list_words().len(), 15);
    }

    #[test]
    fn digest_is_order_independent() {
        let m = EmMachine::new(EmConfig::new(64, 4).unwrap());
        let mut a = EmitSink::new(EmitMode::Digest);
        let mut b = EmitSink::new(EmitMode::Digest);
        a.emit(&m, &[1, 2]);
        a.emit(&m, &[2, 1]);
        b.emit(&m, &[2, 1]);
        b.emit(&m, &[1, 2]);
        assert_eq!(a.digest(), b.digest());
        assert_ne!(tuple_hash(&[1, 2]), tuple_hash(&[2, 1]));
        assert_eq!(a.digest(), digest_of(&[vec![1, 2], vec![2, 1]]));
    }

    #[test]
    fn rollback_discards() {
        let m = EmMachine::new(EmConfig::new(64, 4).unwrap());
        let mut s = EmitSink::collecting(EmitMode::Digest);
        s.emit(&m, &[1, 2]);
        let mark = s.mark();
        s.emit(&m, &[3, 4]);
        s.rollback(mark);
        assert_eq!(s.count(), 1);
        assert_eq!(s.collected().unwrap(), &[vec![1, 2]]);
        assert_eq!(s.digest(), tuple_hash(&[1, 2]));
    }

    #[test]
    fn splice_places_values() {
        let m = EmMachine::new(EmConfig::new(64, 4).unwrap());
        let mut s = EmitSink::collecting(EmitMode::Count);
        {
            let mut sp = Splice::new(&mut s, &[(1, 9)], vec![2, 0]);
            sp.emit(&m, &[5, 6]);
        }
        assert_eq!(s.collected().unwrap(), &[vec![6, 9, 5]]);
    }
}
