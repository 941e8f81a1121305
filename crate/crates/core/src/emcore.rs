//! Simulated external-memory machine.
//!
//! External arrays live in host memory, but every access goes through the
//! machine, which counts block transfers and charges internal-memory words
//! against the budget `M`. Algorithms are free to use host-side indexes over
//! data they have already paid to read; what they may not do is touch data
//! without paying for the blocks that hold it.

use std::cell::Cell;
use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::error::{EmError, Result};

/// A machine word: one vertex id or one adjacency entry.
pub type Word = u64;

/// Internal memory size `M` and block length `B`, both in words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmConfig {
    pub mem: usize,
    pub block: usize,
}

impl EmConfig {
    pub fn new(mem: usize, block: usize) -> Result<Self> {
        if block == 0 {
            return Err(EmError::Config("block size must be at least 1".into()));
        }
        if mem < 2 * block {
            return Err(EmError::Config(format!(
                "memory M={mem} must be at least 2*B={}",
                2 * block
            )));
        }
        Ok(EmConfig { mem, block })
    }

    /// Checks that `M` holds the k^2 bookkeeping words a k-vertex pattern needs.
    pub fn check_pattern(&self, k: usize) -> Result<()> {
        if self.mem < k * k {
            return Err(EmError::Config(format!(
                "memory M={} too small for pattern with k={k} (needs k^2={})",
                self.mem,
                k * k
            )));
        }
        Ok(())
    }

    /// `ceil(words / B)`.
    pub fn blocks(&self, words: usize) -> u64 {
        words.div_ceil(self.block) as u64
    }
}

/// Transfer and work counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IoStats {
    pub block_reads: u64,
    pub block_writes: u64,
    pub internal_ops: u64,
    pub peak_internal_words: usize,
}

impl IoStats {
    pub fn total_io(&self) -> u64 {
        self.block_reads + self.block_writes
    }

    /// Counter difference `self - earlier`. The peak is carried over from `self`.
    pub fn since(&self, earlier: &IoStats) -> IoStats {
        IoStats {
            block_reads: self.block_reads - earlier.block_reads,
            block_writes: self.block_writes - earlier.block_writes,
            internal_ops: self.internal_ops - earlier.internal_ops,
            peak_internal_words: self.peak_internal_words,
        }
    }

    /// Sum of counters from independent machines; peaks combine by max.
    pub fn merge(&mut self, other: &IoStats) {
        self.block_reads += other.block_reads;
        self.block_writes += other.block_writes;
        self.internal_ops += other.internal_ops;
        self.peak_internal_words = self.peak_internal_words.max(other.peak_internal_words);
    }
}

static NEXT_ARRAY_ID: AtomicU64 = AtomicU64::new(1);

/// A sequence of words stored in external memory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtArray {
    id: u64,
    words: Vec<Word>,
}

impl ExtArray {
    /// Places input data in external memory. No transfer is counted: this is
    /// how the problem input arrives.
    pub fn from_words(words: Vec<Word>) -> Self {
        ExtArray {
            id: NEXT_ARRAY_ID.fetch_add(1, AtomicOrdering::Relaxed),
            words,
        }
    }

    pub fn empty() -> Self {
        Self::from_words(Vec::new())
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Uncounted host view, for inspecting results after a run.
    pub fn words(&self) -> &[Word] {
        &self.words
    }
}

/// Internal-memory accounting: words in use and the limit `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MemTracker {
    pub in_use: usize,
    pub limit: usize,
}

/// Result of an external sort.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SortReport {
    pub records: usize,
    pub runs: usize,
    pub passes: usize,
    pub fan_in: usize,
}

/// The machine. Single-threaded; counters are interior-mutable so that
/// algorithms can hold shared references to it alongside borrowed arrays.
#[derive(Debug)]
pub struct EmMachine {
    cfg: EmConfig,
    reads: Cell<u64>,
    writes: Cell<u64>,
    ops: Cell<u64>,
    in_use: Cell<usize>,
    peak: Cell<usize>,
}

impl EmMachine {
    pub fn new(cfg: EmConfig) -> Self {
        EmMachine {
            cfg,
            reads: Cell::new(0),
            writes: Cell::new(0),
            ops: Cell::new(0),
            in_use: Cell::new(0),
            peak: Cell::new(0),
        }
    }

    pub fn config(&self) -> EmConfig {
        self.cfg
    }

    pub fn block(&self) -> usize {
        self.cfg.block
    }

    pub fn mem(&self) -> usize {
        self.cfg.mem
    }

    pub fn stats(&self) -> IoStats {
        IoStats {
            block_reads: self.reads.get(),
            block_writes: self.writes.get(),
            internal_ops: self.ops.get(),
            peak_internal_words: self.peak.get(),
        }
    }

    pub fn tracker(&self) -> MemTracker {
        MemTracker {
            in_use: self.in_use.get(),
            limit: self.cfg.mem,
        }
    }

    pub fn available(&self) -> usize {
        self.cfg.mem - self.in_use.get()
    }

    pub fn add_ops(&self, n: u64) {
        self.ops.set(self.ops.get() + n);
    }

    pub(crate) fn count_reads(&self, n: u64) {
        self.reads.set(self.reads.get() + n);
    }

    pub(crate) fn count_writes(&self, n: u64) {
        self.writes.set(self.writes.get() + n);
    }

    /// Charges `words` of internal memory; released when the guard drops.
    pub fn charge(&self, words: usize) -> Result<Charge<'_>> {
        self.try_add(words)?;
        Ok(Charge {
            machine: self,
            words,
        })
    }

    fn try_add(&self, words: usize) -> Result<()> {
        let in_use = self.in_use.get();
        if in_use + words > self.cfg.mem {
            return Err(EmError::MemoryBudgetExceeded {
                in_use,
                requested: words,
                limit: self.cfg.mem,
            });
        }
        self.in_use.set(in_use + words);
        if in_use + words > self.peak.get() {
            self.peak.set(in_use + words);
        }
        Ok(())
    }

    fn release(&self, words: usize) {
        let in_use = self.in_use.get();
        debug_assert!(words <= in_use, "released more than charged");
        self.in_use.set(in_use.saturating_sub(words));
    }

    /// Reads every word of `arr` in order through a one-block buffer.
    pub fn scan<F: FnMut(Word)>(&self, arr: &ExtArray, mut visitor: F) -> Result<IoStats> {
        let before = self.stats();
        let _buf = self.charge(self.cfg.block.min(arr.len().max(1)))?;
        for chunk in arr.words.chunks(self.cfg.block) {
            self.count_reads(1);
            for &w in chunk {
                visitor(w);
            }
        }
        self.add_ops(arr.len() as u64);
        Ok(self.stats().since(&before))
    }

    /// Charges the transfers of a full sequential scan of `arr` without
    /// handing the words to a visitor. Used when an algorithm streams the
    /// whole array but only inspects parts it can locate through host-side
    /// metadata; the counted cost is identical to `scan`.
    pub(crate) fn pay_scan(&self, arr: &ExtArray) -> Result<()> {
        let _buf = self.charge(self.cfg.block.min(arr.len().max(1)))?;
        self.count_reads(self.cfg.blocks(arr.len()));
        self.add_ops(arr.len() as u64);
        Ok(())
    }

    /// Loads the words `[start, end)` of `arr`, paying for every block the
    /// range touches. The caller must have charged internal memory for them.
    pub fn load_range<'a>(&self, arr: &'a ExtArray, start: usize, end: usize) -> &'a [Word] {
        debug_assert!(start <= end && end <= arr.len());
        if start < end {
            let b = self.cfg.block;
            let blocks = (end - 1) / b - start / b + 1;
            self.count_reads(blocks as u64);
            self.add_ops((end - start) as u64);
        }
        &arr.words[start..end]
    }

    /// Number of blocks covering `[start, end)`.
    pub fn blocks_touched(&self, start: usize, end: usize) -> u64 {
        if start >= end {
            0
        } else {
            let b = self.cfg.block;
            ((end - 1) / b - start / b + 1) as u64
        }
    }

    pub fn writer(&self) -> Result<ArrayWriter<'_>> {
        ArrayWriter::new(self)
    }

    /// Stable multiway merge sort of fixed-width records using all currently
    /// free internal memory.
    pub fn ext_sort<F>(&self, arr: &ExtArray, width: usize, cmp: F) -> Result<ExtArray>
    where
        F: Fn(&[Word], &[Word]) -> Ordering,
    {
        self.ext_sort_report(arr, width, cmp).map(|(a, _)| a)
    }

    pub fn ext_sort_report<F>(
        &self,
        arr: &ExtArray,
        width: usize,
        cmp: F,
    ) -> Result<(ExtArray, SortReport)>
    where
        F: Fn(&[Word], &[Word]) -> Ordering,
    {
        let b = self.cfg.block;
        if width == 0 || width > b {
            return Err(EmError::Config(format!(
                "record width {width} must be in 1..={b} (block size)"
            )));
        }
        if !arr.len().is_multiple_of(width) {
            return Err(EmError::Config(format!(
                "array length {} is not a multiple of record width {width}",
                arr.len()
            )));
        }
        let records = arr.len() / width;
        if records == 0 {
            return Ok((ExtArray::empty(), SortReport::default()));
        }
        let budget = self.available();
        let run_records = budget / width;
        if run_records == 0 {
            return Err(EmError::MemoryBudgetExceeded {
                in_use: self.in_use.get(),
                requested: width,
                limit: self.cfg.mem,
            });
        }
        let _mem = self.charge(budget)?;
        let compares = Cell::new(0u64);
        let counted = |x: &[Word], y: &[Word]| {
            compares.set(compares.get() + 1);
            cmp(x, y)
        };

        // Run formation: one read pass, one write pass.
        let mut runs: Vec<ExtArray> = Vec::new();
        let mut reader = Cursor::new(arr);
        let mut rec = 0;
        while rec < records {
            let end = (rec + run_records).min(records);
            for pos in rec * width..end * width {
                reader.touch(self, pos);
            }
            let mut slices: Vec<&[Word]> = arr.words[rec * width..end * width]
                .chunks(width)
                .collect();
            slices.sort_by(|x, y| counted(x, y));
            let mut w = ArrayWriter::unbuffered(self);
            for s in slices {
                w.extend(s);
            }
            runs.push(w.finish());
            rec = end;
        }
        let mut report = SortReport {
            records,
            runs: runs.len(),
            passes: 1,
            fan_in: 0,
        };

        if runs.len() > 1 {
            let fan_in = (budget / b).saturating_sub(1);
            if fan_in < 2 {
                return Err(EmError::Config(format!(
                    "{budget} free words give merge fan-in {fan_in}; need at least 2"
                )));
            }
            report.fan_in = fan_in;
            while runs.len() > 1 {
                let mut next = Vec::with_capacity(runs.len().div_ceil(fan_in));
                for group in runs.chunks(fan_in) {
                    next.push(self.merge_runs(group, width, &counted));
                }
                runs = next;
                report.passes += 1;
            }
        }
        self.add_ops(compares.get() + records as u64);
        Ok((runs.pop().unwrap_or_else(ExtArray::empty), report))
    }

    fn merge_runs<F>(&self, group: &[ExtArray], width: usize, cmp: &F) -> ExtArray
    where
        F: Fn(&[Word], &[Word]) -> Ordering,
    {
        let mut out = ArrayWriter::unbuffered(self);
        if group.len() == 1 {
            let only = &group[0];
            let mut c = Cursor::new(only);
            for pos in 0..only.len() {
                c.touch(self, pos);
            }
            out.extend(only.words());
            return out.finish();
        }
        let mut heads: Vec<usize> = vec![0; group.len()];
        let mut cursors: Vec<Cursor<'_>> = group.iter().map(Cursor::new).collect();
        loop {
            let mut best: Option<usize> = None;
            for (i, run) in group.iter().enumerate() {
                let h = heads[i];
                if h >= run.len() {
                    continue;
                }
                let cand = &run.words[h..h + width];
                best = match best {
                    None => Some(i),
                    Some(j) => {
                        let cur = &group[j].words[heads[j]..heads[j] + width];
                        // Strict less keeps earlier runs first on ties.
                        if cmp(cand, cur) == Ordering::Less {
                            Some(i)
                        } else {
                            Some(j)
                        }
                    }
                };
            }
            let Some(i) = best else { break };
            let h = heads[i];
            for pos in h..h + width {
                cursors[i].touch(self, pos);
            }
            out.extend(&group[i].words[h..h + width]);
            heads[i] += width;
        }
        out.finish()
    }
}

/// Guard for charged internal memory.
#[derive(Debug)]
pub struct Charge<'a> {
    machine: &'a EmMachine,
    words: usize,
}

impl Charge<'_> {
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn grow(&mut self, words: usize) -> Result<()> {
        self.machine.try_add(words)?;
        self.words += words;
        Ok(())
    }

    pub fn shrink(&mut self, words: usize) {
        let w = words.min(self.words);
        self.machine.release(w);
        self.words -= w;
    }
}

impl Drop for Charge<'_> {
    fn drop(&mut self) {
        self.machine.release(self.words);
    }
}

/// Sequential reader that pays once per block entered.
#[derive(Debug)]
pub struct Cursor<'a> {
    arr: &'a ExtArray,
    current: Option<usize>,
}

impl<'a> Cursor<'a> {
    pub fn new(arr: &'a ExtArray) -> Self {
        Cursor { arr, current: None }
    }

    pub fn touch(&mut self, m: &EmMachine, pos: usize) {
        let blk = pos / m.cfg.block;
        if self.current != Some(blk) {
            m.count_reads(1);
            self.current = Some(blk);
        }
    }

    pub fn get(&mut self, m: &EmMachine, pos: usize) -> Word {
        self.touch(m, pos);
        self.arr.words[pos]
    }

    pub fn array(&self) -> &'a ExtArray {
        self.arr
    }
}

/// Appends words to a fresh external array, paying one write per block.
#[derive(Debug)]
pub struct ArrayWriter<'a> {
    machine: &'a EmMachine,
    words: Vec<Word>,
    _buf: Option<Charge<'a>>,
}

impl<'a> ArrayWriter<'a> {
    /// A writer with its own charged one-block output buffer.
    pub fn new(machine: &'a EmMachine) -> Result<Self> {
        let buf = machine.charge(machine.cfg.block)?;
        Ok(ArrayWriter {
            machine,
            words: Vec::new(),
            _buf: Some(buf),
        })
    }

    /// A writer whose buffer is part of memory already charged by the caller.
    pub(crate) fn unbuffered(machine: &'a EmMachine) -> Self {
        ArrayWriter {
            machine,
            words: Vec::new(),
            _buf: None,
        }
    }

    pub fn push(&mut self, w: Word) {
        self.words.push(w);
        if self.words.len().is_multiple_of(self.machine.cfg.block) {
            self.machine.count_writes(1);
        }
    }

    pub fn extend(&mut self, ws: &[Word]) {
        for &w in ws {
            self.push(w);
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn finish(self) -> ExtArray {
        if !self.words.len().is_multiple_of(self.machine.cfg.block) {
            self.machine.count_writes(1);
        }
        ExtArray::from_words(self.words)
    }
}
