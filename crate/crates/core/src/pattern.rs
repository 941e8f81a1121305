//! Pattern graphs and matched independent set (MIS) configurations.
//!
//! A configuration relabels the pattern so that (0-based) positions
//! `k-s..k` hold the independent set `S`, position `i < s` is matched with
//! `k-s+i`, and position `k-s-1` is the free vertex whose image is iterated
//! over the data graph. Positions `s..k-s-1` reach an already-fixed vertex
//! through their probe edge.

use std::fmt;
use std::path::Path;

use crate::error::{EmError, Result};

/// Largest pattern `find_mis` searches exhaustively by default.
pub const DEFAULT_MAX_SEARCH_K: usize = 12;

#[derive(Clone, PartialEq, Eq)]
pub struct PatternGraph {
    k: usize,
    rows: Vec<u32>,
}

impl fmt::Debug for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternGraph(k={}, edges={:?})", self.k, self.edges())
    }
}

impl PatternGraph {
    pub fn new(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if !(1..=32).contains(&k) {
            return Err(EmError::Config(format!("pattern size k={k} must be in 1..=32")));
        }
        let mut rows = vec![0u32; k];
        for &(a, b) in edges {
            if a >= k || b >= k {
                return Err(EmError::Config(format!("pattern edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(EmError::Config(format!("pattern self-loop at {a}")));
            }
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
        }
        Ok(PatternGraph { k, rows })
    }

    pub fn clique(k: usize) -> Self {
        let edges: Vec<_> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        Self::new(k, &edges).expect("valid clique")
    }

    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "cycle needs k >= 3");
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Self::new(k, &edges).expect("valid cycle")
    }

    pub fn path(k: usize) -> Self {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Self::new(k, &edges).expect("valid path")
    }

    /// `a x b` grid, vertices numbered row-major.
    pub fn mesh(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..a {
            for c in 0..b {
                let v = r * b + c;
                if c + 1 < b {
                    edges.push((v, v + 1));
                }
                if r + 1 < a {
                    edges.push((v, v + b));
                }
            }
        }
        Self::new(a * b, &edges).expect("valid mesh")
    }

    /// Star with one center (vertex 0) and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, &edges).expect("valid star")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.rows[a].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.k {
            for b in a + 1..self.k {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Subgraph induced by `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> PatternGraph {
        let mut edges = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    edges.push((i, j));
                }
            }
        }
        PatternGraph::new(keep.len().max(1), &edges).expect("induced pattern")
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            for v in 0..self.k {
                if frontier >> v & 1 == 1 {
                    next |= self.rows[v];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.k
    }

    /// Parses a named family (`clique k`, `cycle k`, `path k`, `mesh a b`,
    /// `star q`, with spaces or colons) or, failing that, treats `spec` as the
    /// path of an edge-list file.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let norm = spec.replace([':', ','], " ");
        let toks: Vec<&str> = norm.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            toks.get(i)
                .ok_or_else(|| EmError::Config(format!("pattern {spec:?}: missing parameter")))?
                .parse::<usize>()
                .map_err(|_| EmError::Config(format!("pattern {spec:?}: bad parameter")))
        };
        let named = match toks.first().copied() {
            Some("clique") => Some(Self::clique(num(1)?)),
            Some("triangle") => Some(Self::clique(3)),
            Some("cycle") => {
                let k = num(1)?;
                if k < 3 {
                    return Err(EmError::Config("cycle needs k >= 3".into()));
                }
                Some(Self::cycle(k))
            }
            Some("path") => {
                let k = num(1)?;
                if k < 2 {
                    return Err(EmError::Config("path needs k >= 2".into()));
                }
                Some(Self::path(k))
            }
            Some("mesh") | Some("grid") => Some(Self::mesh(num(1)?, num(2)?)),
            Some("star") => Some(Self::star(num(1)?)),
            _ => None,
        };
        if let Some(p) = named {
            if p.k < 2 {
                return Err(EmError::Config("pattern needs k >= 2".into()));
            }
            return Ok(p);
        }
        let path = Path::new(spec);
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            return Self::from_edge_text(&text);
        }
        Err(EmError::Config(format!("unknown pattern spec {spec:?}")))
    }

    /// Pattern from edge-list text; ids are compacted preserving order.
    pub fn from_edge_text(text: &str) -> Result<Self> {
        let pairs = crate::graph::parse_edge_list(text)?;
        let mut ids: Vec<u64> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        ids.sort_unstable();
        ids.dedup();
        let idx = |v: u64| ids.binary_search(&v).unwrap();
        let mut edges = Vec::new();
        for &(a, b) in &pairs {
            if a == b {
                return Err(EmError::Config(format!("pattern self-loop at {a}")));
            }
            edges.push((idx(a), idx(b)));
        }
        if ids.len() < 2 {
            return Err(EmError::Config("pattern needs k >= 2".into()));
        }
        Self::new(ids.len(), &edges)
    }
}

/// Which already-fixed vertices a probe edge may point to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeRule {
    /// Probe targets must lie in `S`.
    Strict,
    /// Targets may also be matched partners `0..s`, whose images are fixed by
    /// their own probe edges.
    Relaxed,
    /// Targets may be any earlier position; only used for the s = 1
    /// configuration of induced enumeration.
    Chained,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisConfig {
    pub k: usize,
    pub s: usize,
    /// `labeling[r]` is the original pattern vertex at position `r`.
    pub labeling: Vec<usize>,
    /// Probe target (a position) for every chunk position `0..k-s-1`.
    pub probe: Vec<usize>,
    /// Smallest fixed neighbor of the free vertex, if any.
    pub free_probe: Option<usize>,
    /// Positions `< s-1` adjacent to position `k-1`; only when `2s = k`.
    pub gamma_k: Vec<usize>,
    pub rule: ProbeRule,
    rows: Vec<u32>,
}

impl MisConfig {
    /// Builds and validates the configuration for an explicit labeling.
    pub fn with_labeling(
        h: &PatternGraph,
        s: usize,
        labeling: Vec<usize>,
        rule: ProbeRule,
    ) -> Result<Self> {
        let k = h.k;
        if s == 0 || 2 * s > k {
            return Err(EmError::PatternUnsupported(format!("MIS size s={s} out of 1..=k/2")));
        }
        let mut seen = 0u64;
        for &o in &labeling {
            if o >= k || seen >> o & 1 == 1 {
                return Err(EmError::Config("labeling is not a permutation".into()));
            }
            seen |= 1 << o;
        }
        if labeling.len() != k {
            return Err(EmError::Config("labeling is not a permutation".into()));
        }
        let rows = relabel_rows(h, &labeling);
        let adj = |a: usize, b: usize| rows[a] >> b & 1 == 1;
        for a in k - s..k {
            for b in a + 1..k {
                if adj(a, b) {
                    return Err(EmError::PatternUnsupported("S is not independent".into()));
                }
            }
        }
        for i in 0..s {
            if !adj(i, k - s + i) {
                return Err(EmError::PatternUnsupported(format!(
                    "position {i} is not adjacent to its match {}",
                    k - s + i
                )));
            }
        }
        let mut probe = Vec::with_capacity(k - s - 1);
        for i in 0..k - s - 1 {
            if i < s {
                probe.push(k - s + i);
                continue;
            }
            let t = (0..k)
                .find(|&j| adj(i, j) && target_allowed(rule, k, s, i, j))
                .ok_or_else(|| {
                    EmError::PatternUnsupported(format!("position {i} has no probe target"))
                })?;
            probe.push(t);
        }
        let free = k - s - 1;
        let free_probe = if 2 * s == k {
            Some(k - 1)
        } else {
            (0..k).find(|&j| adj(free, j) && (j < s || j >= k - s))
        };
        let gamma_k = if 2 * s == k {
            (0..s - 1).filter(|&i| adj(i, k - 1)).collect()
        } else {
            Vec::new()
        };
        Ok(MisConfig {
            k,
            s,
            labeling,
            probe,
            free_probe,
            gamma_k,
            rule,
            rows,
        })
    }

    /// Position iterated over all data vertices.
    pub fn free(&self) -> usize {
        self.k - self.s - 1
    }

    /// Number of chunk positions, `k-s-1`.
    pub fn chunk_slots(&self) -> usize {
        self.k - self.s - 1
    }

    pub fn is_half(&self) -> bool {
        2 * self.s == self.k
    }

    pub fn partner(&self, i: usize) -> usize {
        self.k - self.s + i
    }

    /// Pattern adjacency in position space.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    /// Positions of `S` in original labels.
    pub fn independent_set(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.labeling[self.k - self.s..].to_vec();
        v.sort_unstable();
        v
    }
}

fn target_allowed(rule: ProbeRule, k: usize, s: usize, i: usize, j: usize) -> bool {
    match rule {
        ProbeRule::Strict => j >= k - s,
        ProbeRule::Relaxed => j >= k - s || j < s,
        ProbeRule::Chained => j >= k - s || j < i,
    }
}

fn relabel_rows(h: &PatternGraph, labeling: &[usize]) -> Vec<u32> {
    let k = h.k;
    let mut rows = vec![0u32; k];
    for a in 0..k {
        for b in 0..k {
            if h.has_edge(labeling[a], labeling[b]) {
                rows[a] |= 1 << b;
            }
        }
    }
    rows
}

/// Finds a maximum-size MIS configuration. Strict probes are used when they
/// reach the same `s` as relaxed probes.
pub fn find_mis(h: &PatternGraph) -> Result<MisConfig> {
    find_mis_bounded(h, DEFAULT_MAX_SEARCH_K)
}

pub fn find_mis_bounded(h: &PatternGraph, max_k: usize) -> Result<MisConfig> {
    let relaxed = find_mis_with(h, ProbeRule::Relaxed, max_k)?;
    match find_mis_with(h, ProbeRule::Strict, max_k) {
        Ok(strict) if strict.s == relaxed.s => Ok(strict),
        _ => Ok(relaxed),
    }
}

/// Exhaustive search under one probe rule. Ties: lexicographically smallest
/// `S` (original labels), then lexicographically smallest labeling.
pub fn find_mis_with(h: &PatternGraph, rule: ProbeRule, max_k: usize) -> Result<MisConfig> {
    let k = h.k;
    if k > max_k {
        return Err(EmError::PatternUnsupported(format!(
            "k={k} exceeds exhaustive MIS search bound {max_k}"
        )));
    }
    if k < 2 {
        return Err(EmError::PatternUnsupported("pattern needs k >= 2".into()));
    }
    for s in (1..=k / 2).rev() {
        for set in combinations(k, s) {
            if !is_independent(h, &set) {
                continue;
            }
            let mut best: Option<Vec<usize>> = None;
            for_each_matching(h, &set, &mut |partner| {
                for lab in labelings_for(h, &set, partner, rule) {
                    if best.as_ref().is_none_or(|b| lab < *b) {
                        best = Some(lab);
                    }
                }
            });
            if let Some(lab) = best {
                return MisConfig::with_labeling(h, s, lab, rule);
            }
        }
    }
    Err(EmError::PatternUnsupported(format!(
        "no admissible MIS configuration for {h:?}"
    )))
}

fn is_independent(h: &PatternGraph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &a)| set[i + 1..].iter().all(|&b| !h.has_edge(a, b)))
}

pub(crate) fn combinations(k: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn rec(start: usize, k: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for v in start..k {
            if k - v < s - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, k, s, cur, out);
            cur.pop();
        }
    }
    rec(0, k, s, &mut cur, &mut out);
    out
}

/// Calls `f(partner)` for every injective matching of `set` into non-set
/// neighbors; `partner[i]` is matched with `set[i]`.
fn for_each_matching(h: &PatternGraph, set: &[usize], f: &mut dyn FnMut(&[usize])) {
    let in_set: u32 = set.iter().fold(0, |acc, &v| acc | 1 << v);
    let mut partner = Vec::with_capacity(set.len());
    fn rec(
        h: &PatternGraph,
        set: &[usize],
        in_set: u32,
        used: u32,
        partner: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        let i = partner.len();
        if i == set.len() {
            f(partner);
            return;
        }
        let cand = h.rows[set[i]] & !in_set & !used;
        for p in 0..h.k {
            if cand >> p & 1 == 1 {
                partner.push(p);
                rec(h, set, in_set, used | 1 << p, partner, f);
                partner.pop();
            }
        }
    }
    rec(h, set, in_set, 0, &mut partner, f);
}

/// Admissible labelings for a fixed `S` and matching: partners ascending,
/// every choice of free vertex, remaining vertices ascending.
fn labelings_for(
    h: &PatternGraph,
    set: &[usize],
    partner: &[usize],
    rule: ProbeRule,
) -> Vec<Vec<usize>> {
    let k = h.k;
    let s = set.len();
    let mut pairs: Vec<(usize, usize)> = partner.iter().copied().zip(set.iter().copied()).collect();
    pairs.sort_unstable();
    let used: u32 = set.iter().chain(partner).fold(0, |acc, &v| acc | 1 << v);
    let rest: Vec<usize> = (0..k).filter(|&v| used >> v & 1 == 0).collect();
    let base = |middle: &[usize], free: Option<usize>| -> Vec<usize> {
        let mut lab = Vec::with_capacity(k);
        lab.extend(pairs.iter().map(|p| p.0));
        lab.extend_from_slice(middle);
        lab.extend(free);
        lab.extend(pairs.iter().map(|p| p.1));
        lab
    };
    let mut out = Vec::new();
    if rest.is_empty() {
        out.push(base(&[], None));
    } else {
        for (fi, &free) in rest.iter().enumerate() {
            let middle: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != fi)
                .map(|(_, &v)| v)
                .collect();
            let lab = base(&middle, Some(free));
            let ok = (s..k - s - 1).all(|pos| {
                let v = lab[pos];
                (0..k).any(|j| h.has_edge(v, lab[j]) && target_allowed(rule, k, s, pos, j))
            });
            if ok {
                out.push(lab);
            }
        }
    }
    out
}

/// Configuration with `s = 1` for induced enumeration: every pair of
/// candidate sets is resident when only one vertex lies in `S`. Positions
/// `1..k-2` are placed greedily (smallest id first) among vertices with a
/// neighbor already placed.
pub fn find_induced_config(h: &PatternGraph) -> Result<MisConfig> {
    let k = h.k;
    if k < 2 {
        return Err(EmError::PatternUnsupported("pattern needs k >= 2".into()));
    }
    for x in 0..k {
        for y in 0..k {
            if !h.has_edge(x, y) {
                continue;
            }
            if k == 2 {
                return MisConfig::with_labeling(h, 1, vec![y, x], ProbeRule::Chained);
            }
            for f in 0..k {
                if f == x || f == y {
                    continue;
                }
                let mut placed = vec![y];
                let mut fixed: u32 = 1 << x | 1 << y;
                let mut left: Vec<usize> = (0..k).filter(|&v| v != x && v != y && v != f).collect();
                while !left.is_empty() {
                    let Some(pos) = left.iter().position(|&v| h.rows[v] & fixed != 0) else {
                        break;
                    };
                    let v = left.remove(pos);
                    fixed |= 1 << v;
                    placed.push(v);
                }
                if !left.is_empty() {
                    continue;
                }
                placed.push(f);
                placed.push(x);
                return MisConfig::with_labeling(h, 1, placed, ProbeRule::Chained);
            }
        }
    }
    Err(EmError::PatternUnsupported(format!(
        "no s=1 configuration for induced enumeration of {h:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_valid(h: &PatternGraph, c: &MisConfig) {
        let k = h.k;
        let s = c.s;
        // Rebuild from the labeling to re-run all checks.
        let again = MisConfig::with_labeling(h, s, c.labeling.clone(), c.rule).unwrap();
        assert_eq!(&again, c);
        for i in 0..s.min(c.chunk_slots()) {
            assert_eq!(c.probe[i], k - s + i);
        }
        for i in 0..c.chunk_slots() {
            assert!(c.adjacent(i, c.probe[i]));
        }
    }

    #[test]
    fn triangle_config() {
        let h = PatternGraph::clique(3);
        let c = find_mis(&h).unwrap();
        assert_eq!(c.s, 1);
        assert_eq!(c.probe, vec![2]);
        assert_eq!(c.free(), 1);
        assert_valid(&h, &c);
    }

    #[test]
    fn cliques_have_s_one() {
        for k in 2..=7 {
            let h = PatternGraph::clique(k);
            let c = find_mis(&h).unwrap();
            assert_eq!(c.s, 1, "k={k}");
            assert_eq!(c.rule, ProbeRule::Strict);
            assert_valid(&h, &c);
        }
    }

    #[test]
    fn cycles_have_half() {
        for k in 3..=9 {
            let h = PatternGraph::cycle(k);
            let c = find_mis(&h).unwrap();
            assert_eq!(c.s, k / 2, "k={k}");
            assert_valid(&h, &c);
        }
    }

    #[test]
    fn figure_one_labeling() {
        // Positions h1..h9 laid out as
        //   h6 h1 h8
        //   h2 h7 h3
        //   h9 h4 h5
        let grid = [[6, 1, 8], [2, 7, 3], [9, 4, 5]];
        let mut edges = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                if c + 1 < 3 {
                    edges.push((grid[r][c] - 1, grid[r][c + 1] - 1));
                }
                if r + 1 < 3 {
                    edges.push((grid[r][c] - 1, grid[r + 1][c] - 1));
                }
            }
        }
        let h = PatternGraph::new(9, &edges).unwrap();
        let c = MisConfig::with_labeling(&h, 4, (0..9).collect(), ProbeRule::Strict).unwrap();
        // 1-based: P(1)=6, P(2)=7, P(3)=8, P(4)=9, P(5)=3.
        assert_eq!(c.probe, vec![5, 6, 7, 8]);
        assert_eq!(c.free_probe, Some(2));
        let found = find_mis(&h).unwrap();
        assert_eq!(found.s, 4);
        assert_valid(&h, &found);
    }

    #[test]
    fn mesh_three_by_three() {
        let h = PatternGraph::mesh(3, 3);
        let c = find_mis(&h).unwrap();
        assert_eq!(c.s, 4);
        assert_valid(&h, &c);
    }

    #[test]
    fn star_needs_relaxed_probes_when_center_is_matched() {
        let h = PatternGraph::star(4);
        let c = find_mis(&h).unwrap();
        assert_eq!(c.s, 1);
        assert_valid(&h, &c);
        // With S = {leaf}, only the relaxed rule admits the other leaves.
        let lab = vec![0, 2, 3, 4, 1];
        assert!(MisConfig::with_labeling(&h, 1, lab.clone(), ProbeRule::Strict).is_err());
        assert!(MisConfig::with_labeling(&h, 1, lab, ProbeRule::Relaxed).is_ok());
    }

    #[test]
    fn edgeless_is_unsupported() {
        let h = PatternGraph::new(3, &[]).unwrap();
        assert!(matches!(find_mis(&h), Err(EmError::PatternUnsupported(_))));
    }

    #[test]
    fn half_case_gamma() {
        let h = PatternGraph::cycle(4);
        let c = find_mis(&h).unwrap();
        assert!(c.is_half());
        // Position 0 is adjacent to position 3 in a 4-cycle's bipartite layout.
        assert_eq!(c.gamma_k, vec![0]);
        let p4 = find_mis(&PatternGraph::path(4)).unwrap();
        assert_eq!(p4.s, 2);
    }

    #[test]
    fn induced_configs_exist_for_connected_patterns() {
        for h in [
            PatternGraph::cycle(6),
            PatternGraph::path(4),
            PatternGraph::mesh(2, 3),
            PatternGraph::clique(4),
            PatternGraph::path(2),
        ] {
            let c = find_induced_config(&h).unwrap();
            assert_eq!(c.s, 1);
            assert_valid(&h, &c);
        }
    }

    #[test]
    fn parse_named_specs() {
        assert_eq!(PatternGraph::parse_spec("clique 4").unwrap(), PatternGraph::clique(4));
        assert_eq!(PatternGraph::parse_spec("cycle:5").unwrap(), PatternGraph::cycle(5));
        assert_eq!(PatternGraph::parse_spec("mesh 2 3").unwrap().edge_count(), 7);
        assert!(PatternGraph::parse_spec("cycle 2").is_err());
        assert!(PatternGraph::parse_spec("nonsense").is_err());
        let p = PatternGraph::from_edge_text("10 20\n20 30\n").unwrap();
        assert_eq!(p, PatternGraph::path(3));
    }
    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_max_s(h: &PatternGraph, rule: ProbeRule) -> Option<usize> {
        let perms = permutations(h.k());
        (1..=h.k() / 2)
            .rev()
            .find(|&s| perms.iter().any(|p| MisConfig::with_labeling(h, s, p.clone(), rule).is_ok()))
    }

    #[test]
    fn search_matches_labeling_brute_force() {
        for k in 2..=5 {
            let pairs: Vec<(usize, usize)> =
                (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<_> =
                    (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
                let h = PatternGraph::new(k, &edges).unwrap();
                if !h.is_connected() {
                    continue;
                }
                for rule in [ProbeRule::Strict, ProbeRule::Relaxed] {
                    let found = find_mis_with(&h, rule, 12).ok().map(|c| c.s);
                    assert_eq!(found, brute_max_s(&h, rule), "{h:?} {rule:?}");
                }
            }
        }
    }

    #[test]
    fn search_matches_brute_force_on_six_vertex_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tried = 0;
        while tried < 40 {
            let mut edges = Vec::new();
            for a in 0..6 {
                for b in a + 1..6 {
                    if rng.gen_bool(0.4) {
                        edges.push((a, b));
                    }
                }
            }
            let h = PatternGraph::new(6, &edges).unwrap();
            if !h.is_connected() {
                continue;
            }
            tried += 1;
            let found = find_mis_with(&h, ProbeRule::Relaxed, 12).ok().map(|c| c.s);
            assert_eq!(found, brute_max_s(&h, ProbeRule::Relaxed), "{h:?}");
        }
    }
}
