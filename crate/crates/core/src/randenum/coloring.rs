//! Vertex colorings and the color classes of the edge set.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::emcore::{EmMachine, ExtArray, Word};
use crate::error::Result;
use crate::graph::{DataGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    Constant,
    /// Random polynomial of degree `t-1` over `Z_p`, reduced mod `c`.
    Poly { p: u64, coeffs: Vec<u64> },
    /// Hashed colors, overridden by a sorted table of `(vertex, color)`.
    Table { seed: u64, high: Vec<(VertexId, u32)> },
}

/// Colors in `1..=c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    c: u32,
    rule: Rule,
}

impl Coloring {
    pub fn constant() -> Self {
        Coloring {
            c: 1,
            rule: Rule::Constant,
        }
    }

    pub(crate) fn table(c: u32, seed: u64, high: Vec<(VertexId, u32)>) -> Self {
        let rule = if c == 1 {
            Rule::Constant
        } else {
            Rule::Table { seed, high }
        };
        Coloring { c, rule }
    }

    pub fn colors(&self) -> u32 {
        self.c
    }

    pub fn color(&self, v: VertexId) -> u32 {
        match &self.rule {
            Rule::Constant => 1,
            Rule::Poly { p, coeffs } if *p <= u32::MAX as u64 => {
                // acc, x < p < 2^32, so acc * x + a fits in u64.
                let x = v as u64 % p;
                let mut acc = 0u64;
                for &a in coeffs {
                    acc = (acc * x + a) % p;
                }
                (acc % self.c as u64) as u32 + 1
            }
            Rule::Poly { p, coeffs } => {
                let p = *p as u128;
                let x = v as u128 % p;
                let mut acc: u128 = 0;
                for &a in coeffs {
                    acc = (acc * x + a as u128) % p;
                }
                (acc % self.c as u128) as u32 + 1
            }
            Rule::Table { seed, high } => match high.binary_search_by_key(&v, |e| e.0) {
                Ok(i) => high[i].1,
                Err(_) => (hash_pair(*seed, v as u64) % self.c as u64) as u32 + 1,
            },
        }
    }

    /// Words the coloring occupies while resident.
    pub fn resident_words(&self) -> usize {
        match &self.rule {
            Rule::Constant => 1,
            Rule::Poly { coeffs, .. } => coeffs.len() + 2,
            Rule::Table { high, .. } => 2 * high.len() + 2,
        }
    }

    /// The prime modulus, for polynomial colorings.
    pub fn modulus(&self) -> Option<u64> {
        match &self.rule {
            Rule::Poly { p, .. } => Some(*p),
            _ => None,
        }
    }
}

/// A `t`-wise independent coloring with `c` colors for vertex ids below
/// `id_bound`, drawn deterministically from `seed`.
pub fn sample_coloring(seed: u64, t: usize, c: u32, id_bound: usize) -> Coloring {
    if c <= 1 {
        return Coloring::constant();
    }
    let floor = (id_bound as u64).max(2 * c as u64 * c as u64);
    let p = next_prime(floor);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..t.max(1)).map(|_| rng.gen_range(0..p)).collect();
    Coloring {
        c,
        rule: Rule::Poly { p, coeffs },
    }
}

/// Smallest prime strictly greater than `x`.
pub fn next_prime(x: u64) -> u64 {
    let mut q = x + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn hash_pair(seed: u64, v: u64) -> u64 {
    let mut z = seed ^ v.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Edges grouped by the unordered color pair of their endpoints.
#[derive(Clone, Debug)]
pub struct ColorClasses {
    c: u32,
    /// Records `(u, v)` with `u < v`, consecutive per class.
    edges: ExtArray,
    /// Record range per class, indexed by `(t1-1)*c + (t2-1)` with `t1 <= t2`.
    ranges: Vec<(usize, usize)>,
}

impl ColorClasses {
    pub fn colors(&self) -> u32 {
        self.c
    }

    fn slot(&self, t1: u32, t2: u32) -> usize {
        let (a, b) = (t1.min(t2), t1.max(t2));
        ((a - 1) * self.c + (b - 1)) as usize
    }

    /// Records `[start, end)` of class `{t1, t2}`.
    pub fn range(&self, t1: u32, t2: u32) -> (usize, usize) {
        self.ranges[self.slot(t1, t2)]
    }

    pub fn size(&self, t1: u32, t2: u32) -> usize {
        let (a, b) = self.range(t1, t2);
        b - a
    }

    pub fn edges(&self) -> &ExtArray {
        &self.edges
    }

    /// Edges of class `{t1, t2}`, uncounted.
    pub fn class_edges(&self, t1: u32, t2: u32) -> Vec<(VertexId, VertexId)> {
        let (a, b) = self.range(t1, t2);
        self.edges.words()[2 * a..2 * b]
            .chunks(2)
            .map(|r| (r[0] as VertexId, r[1] as VertexId))
            .collect()
    }

    /// Sizes of all classes `t1 <= t2`.
    pub fn sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for a in 1..=self.c {
            for b in a..=self.c {
                out.push(self.size(a, b));
            }
        }
        out
    }

    /// Words of the in-memory class table.
    pub fn table_words(&self) -> usize {
        2 * self.ranges.len()
    }
}

/// Sorts the edges by color pair and records the class boundaries: one
/// pass to write `(u, v)` records, one sort, one pass to build the table.
pub fn partition_edges(
    machine: &EmMachine,
    g: &DataGraph,
    coloring: &Coloring,
) -> Result<ColorClasses> {
    let c = coloring.colors();
    let _col = machine.charge(coloring.resident_words())?;
    machine.pay_scan(g.adjacency())?;
    let mut w = machine.writer()?;
    for (u, v) in g.edge_list() {
        w.push(u as Word);
        w.push(v as Word);
    }
    let recs = w.finish();
    let key = |r: &[Word]| {
        let a = coloring.color(r[0] as VertexId);
        let b = coloring.color(r[1] as VertexId);
        (a.min(b), a.max(b), r[0], r[1])
    };
    let sorted = machine.ext_sort(&recs, 2, |x, y| key(x).cmp(&key(y)))?;
    let slots = (c * c) as usize;
    let _table = machine.charge(2 * slots)?;
    machine.pay_scan(&sorted)?;
    let mut ranges = vec![(0usize, 0usize); slots];
    let words = sorted.words();
    let n = words.len() / 2;
    let mut i = 0;
    while i < n {
        let (a, b, _, _) = key(&words[2 * i..2 * i + 2]);
        let start = i;
        while i < n {
            let (x, y, _, _) = key(&words[2 * i..2 * i + 2]);
            if (x, y) != (a, b) {
                break;
            }
            i += 1;
        }
        ranges[((a - 1) * c + (b - 1)) as usize] = (start, i);
    }
    machine.add_ops(n as u64);
    Ok(ColorClasses {
        c,
        edges: sorted,
        ranges,
    })
}

/// Sum over classes of the falling factorial `|E| (|E|-1) ... (|E|-t+1)`:
/// ordered `t`-tuples of distinct edges sharing a class.
pub fn collision_statistic(classes: &ColorClasses, t: usize) -> BigUint {
    let mut total = BigUint::from(0u32);
    for size in classes.sizes() {
        if size < t {
            continue;
        }
        let mut f = BigUint::from(1u32);
        for j in 0..t {
            f *= BigUint::from((size - j) as u64);
        }
        total += f;
    }
    total
}
