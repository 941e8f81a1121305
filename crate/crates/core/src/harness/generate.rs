//! Synthetic data graphs. Every generator is deterministic in its seed and
//! returns a simple graph as sorted `(u, v)` pairs with `u < v`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{EmError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Complete { q: u64 },
    Random { n: u64, m: u64 },
    Grid { a: u64, b: u64 },
    /// `q` leaves around vertex 0.
    Star { q: u64 },
    /// Random graph on `n` vertices with maximum degree `d`; `m` defaults to `n d / 4`.
    Bounded { n: u64, d: u64, m: Option<u64> },
}

impl GenKind {
    /// Number of edges the generator will produce.
    pub fn edges(&self) -> u64 {
        match *self {
            GenKind::Complete { q } => q * q.saturating_sub(1) / 2,
            GenKind::Random { m, .. } => m,
            GenKind::Grid { a, b } => (a * b.saturating_sub(1)) + (b * a.saturating_sub(1)),
            GenKind::Star { q } => q,
            GenKind::Bounded { n, d, m } => m.unwrap_or(n * d / 4),
        }
    }

    /// Same family with roughly `e` edges, for sweeps over the edge count.
    /// Random and bounded graphs keep their vertices-per-edge ratio.
    pub fn with_edges(&self, e: u64) -> Result<GenKind> {
        let scaled_n = |n: u64, m: u64| ((n as f64) * (e as f64) / (m.max(1) as f64)).ceil() as u64;
        Ok(match *self {
            GenKind::Complete { .. } => {
                let mut q = 1;
                while q * (q - 1) / 2 < e {
                    q += 1;
                }
                GenKind::Complete { q }
            }
            GenKind::Random { n, m } => GenKind::Random { n: scaled_n(n, m).max(2), m: e },
            GenKind::Star { .. } => GenKind::Star { q: e },
            GenKind::Bounded { n, d, m } => {
                let m0 = m.unwrap_or(n * d / 4);
                GenKind::Bounded { n: scaled_n(n, m0).max(2), d, m: Some(e) }
            }
            GenKind::Grid { .. } => {
                return Err(EmError::Config("grid graphs cannot be swept over E".into()))
            }
        })
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenKind::Complete { q } => write!(f, "complete:{q}"),
            GenKind::Random { n, m } => write!(f, "random:{n}:{m}"),
            GenKind::Grid { a, b } => write!(f, "grid:{a}:{b}"),
            GenKind::Star { q } => write!(f, "star:{q}"),
            GenKind::Bounded { n, d, m: None } => write!(f, "bounded:{n}:{d}"),
            GenKind::Bounded { n, d, m: Some(m) } => write!(f, "bounded:{n}:{d}:{m}"),
        }
    }
}

impl FromStr for GenKind {
    type Err = EmError;

    /// `KIND:P1:P2...`, e.g. `random:100:300` or `bounded:1000:8`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let kind = parts.next().unwrap_or("").to_ascii_lowercase();
        let nums: Vec<u64> = parts
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| EmError::Config(format!("bad generator parameter {p:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        let arity = |want: &[usize]| -> Result<()> {
            if want.contains(&nums.len()) {
                Ok(())
            } else {
                Err(EmError::Config(format!("generator {kind} takes {want:?} parameters, got {}", nums.len())))
            }
        };
        let g = match kind.as_str() {
            "complete" | "clique" => {
                arity(&[1])?;
                GenKind::Complete { q: nums[0] }
            }
            "random" => {
                arity(&[2])?;
                GenKind::Random { n: nums[0], m: nums[1] }
            }
            "grid" => {
                arity(&[2])?;
                GenKind::Grid { a: nums[0], b: nums[1] }
            }
            "star" => {
                arity(&[1])?;
                GenKind::Star { q: nums[0] }
            }
            "bounded" => {
                arity(&[2, 3])?;
                GenKind::Bounded { n: nums[0], d: nums[1], m: nums.get(2).copied() }
            }
            _ => return Err(EmError::Config(format!("unknown generator {kind:?}"))),
        };
        g.check()?;
        Ok(g)
    }
}

impl GenKind {
    fn check(&self) -> Result<()> {
        let infeasible = |msg: String| Err(EmError::Config(msg));
        match *self {
            GenKind::Random { n, m } if m > n * n.saturating_sub(1) / 2 => {
                infeasible(format!("random graph with m={m} > n(n-1)/2 for n={n}"))
            }
            GenKind::Bounded { n, d, m: Some(m) } if m > n * d / 2 || m > n * n.saturating_sub(1) / 2 => {
                infeasible(format!("bounded graph with m={m} exceeds the degree budget n*d/2={}", n * d / 2))
            }
            GenKind::Bounded { d: 0, .. } => infeasible("bounded graph needs d >= 1".into()),
            _ => Ok(()),
        }
    }
}

pub fn generate(kind: GenKind, seed: u64) -> Result<Vec<(u64, u64)>> {
    kind.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = match kind {
        GenKind::Complete { q } => (0..q).flat_map(|a| (a + 1..q).map(move |b| (a, b))).collect(),
        GenKind::Random { n, m } => random(&mut rng, n, m),
        GenKind::Grid { a, b } => {
            let id = |r: u64, c: u64| r * b + c;
            let mut out = Vec::new();
            for r in 0..a {
                for c in 0..b {
                    if c + 1 < b {
                        out.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < a {
                        out.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            out
        }
        GenKind::Star { q } => (1..=q).map(|i| (0, i)).collect(),
        GenKind::Bounded { n, d, m } => bounded(&mut rng, n, d, m.unwrap_or(n * d / 4))?,
    };
    edges.sort_unstable();
    Ok(edges)
}

fn random(rng: &mut ChaCha8Rng, n: u64, m: u64) -> Vec<(u64, u64)> {
    let all = n * n.saturating_sub(1) / 2;
    if m * 4 > all {
        // Dense: shuffle the full pair list.
        let mut pairs: Vec<(u64, u64)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let (picked, _) = pairs.partial_shuffle(rng, m as usize);
        return picked.to_vec();
    }
    let mut set = HashSet::with_capacity(m as usize);
    let mut out = Vec::with_capacity(m as usize);
    while (out.len() as u64) < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if set.insert(e) {
            out.push(e);
        }
    }
    out
}

/// Samples endpoints among vertices that still have spare degree.
fn bounded(rng: &mut ChaCha8Rng, n: u64, d: u64, m: u64) -> Result<Vec<(u64, u64)>> {
    let mut deg = vec![0u64; n as usize];
    let mut open: Vec<u64> = (0..n).collect();
    let mut set = HashSet::with_capacity(m as usize);
    let mut out = Vec::with_capacity(m as usize);
    let mut misses = 0u64;
    while (out.len() as u64) < m {
        if open.len() < 2 || misses > 1000 * (open.len() as u64 + 10) {
            return Err(EmError::Config(format!(
                "could not place {m} edges with max degree {d} on {n} vertices"
            )));
        }
        let i = rng.gen_range(0..open.len());
        let j = rng.gen_range(0..open.len());
        let (a, b) = (open[i], open[j]);
        let e = (a.min(b), a.max(b));
        if a == b || set.contains(&e) {
            misses += 1;
            continue;
        }
        misses = 0;
        set.insert(e);
        out.push(e);
        for v in [a, b] {
            deg[v as usize] += 1;
        }
        // Remove saturated endpoints, larger index first so the other stays valid.
        let (hi, lo) = (i.max(j), i.min(j));
        for idx in [hi, lo] {
            if deg[open[idx] as usize] == d {
                open.swap_remove(idx);
            }
        }
    }
    Ok(out)
}
