use emgraph::det::{enumerate_det, DetOptions};
use emgraph::emcore::{EmConfig, EmMachine};
use emgraph::graph::{ingest, DataGraph};
use emgraph::oracle::{brute_force, brute_force_unguarded, InstanceSet};
use emgraph::pattern::{find_induced_config, find_mis, PatternGraph};
use emgraph::sink::{EmitMode, EmitSink};
use rand::{Rng, SeedableRng};

fn random_pairs(seed: u64, n: u64, m: usize) -> Vec<(u64, u64)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut set = std::collections::BTreeSet::new();
    let max = (n * (n - 1) / 2) as usize;
    while set.len() < m.min(max) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            set.insert((a.min(b), a.max(b)));
        }
    }
    set.into_iter().collect()
}

fn complete(q: u64) -> Vec<(u64, u64)> {
    (0..q).flat_map(|a| (a + 1..q).map(move |b| (a, b))).collect()
}

fn run(g: &DataGraph, h: &PatternGraph, mem: usize, block: usize, induced: bool) -> (InstanceSet, usize) {
    let m = EmMachine::new(EmConfig::new(mem, block).unwrap());
    let mis = if induced { find_induced_config(h).unwrap() } else { find_mis(h).unwrap() };
    let mut sink = EmitSink::collecting(EmitMode::Count);
    let opts = DetOptions { induced, ..DetOptions::default() };
    let rep = enumerate_det(&m, g, &mis, &mut sink, opts).unwrap();
    assert!(m.stats().peak_internal_words <= mem);
    assert_eq!(rep.emitted, sink.count());
    InstanceSet::from_emitted(sink.take_collected())
}

fn check(pairs: &[(u64, u64)], h: &PatternGraph, mem: usize, block: usize, induced: bool) {
    let gm = EmMachine::new(EmConfig::new(1 << 12, 8).unwrap());
    let g = ingest(&gm, pairs).unwrap();
    let want = brute_force(&g, h, induced, None).unwrap();
    let (got, dups) = run(&g, h, mem, block, induced);
    assert_eq!(dups, 0, "duplicates for {h:?}");
    assert_eq!(got, want, "{h:?} induced={induced} M={mem}");
}

fn patterns() -> Vec<PatternGraph> {
    vec![
        PatternGraph::clique(3),
        PatternGraph::clique(4),
        PatternGraph::cycle(4),
        PatternGraph::cycle(5),
        PatternGraph::cycle(6),
        PatternGraph::path(3),
        PatternGraph::path(4),
        PatternGraph::mesh(2, 3),
        PatternGraph::star(3),
        PatternGraph::path(2),
    ]
}

#[test]
fn small_named_cases() {
    let t = PatternGraph::clique(3);
    check(&complete(4), &t, 64, 4, false);
    check(&[(0, 1), (1, 2), (2, 3), (3, 0)], &t, 64, 4, false);
    check(&complete(4), &PatternGraph::cycle(4), 64, 4, false);
    check(&complete(5), &PatternGraph::cycle(4), 64, 4, false);
    check(&complete(4), &PatternGraph::cycle(6), 64, 4, false);
}

#[test]
fn random_graphs_match_oracle() {
    for seed in 0..6 {
        let pairs = random_pairs(seed, 14, 30);
        for h in patterns() {
            let k = h.k();
            for mem in [(16 * k).max(k * k).max(64), 40 * k] {
                check(&pairs, &h, mem, 4, false);
            }
        }
    }
}

#[test]
fn induced_random_graphs_match_oracle() {
    for seed in 10..14 {
        let pairs = random_pairs(seed, 12, 28);
        for h in patterns() {
            let mem = (16 * h.k()).max(64);
            check(&pairs, &h, mem, 4, true);
        }
    }
}

#[test]
fn hub_forces_second_change() {
    // A hub adjacent to everything, plus a sparse ring.
    let mut pairs: Vec<(u64, u64)> = (1..20).map(|i| (0, i)).collect();
    pairs.extend((1..19).map(|i| (i, i + 1)));
    pairs.extend([(3, 9), (5, 14), (2, 17)]);
    let gm = EmMachine::new(EmConfig::new(1 << 12, 8).unwrap());
    let g = ingest(&gm, &pairs).unwrap();
    let h = PatternGraph::cycle(4);
    let mis = find_mis(&h).unwrap();
    let m = EmMachine::new(EmConfig::new(64, 4).unwrap());
    let mut sink = EmitSink::collecting(EmitMode::Count);
    let rep = enumerate_det(&m, &g, &mis, &mut sink, DetOptions::default()).unwrap();
    assert!(rep.second_change_rounds > 0);
    let (got, dups) = InstanceSet::from_emitted(sink.take_collected());
    assert_eq!(dups, 0);
    assert_eq!(got, brute_force(&g, &h, false, None).unwrap());
}

#[test]
fn mesh_in_grid() {
    let mut pairs = Vec::new();
    for r in 0..6u64 {
        for c in 0..6u64 {
            let v = r * 6 + c;
            if c + 1 < 6 {
                pairs.push((v, v + 1));
            }
            if r + 1 < 6 {
                pairs.push((v, v + 6));
            }
        }
    }
    // 36 vertices is past the oracle's k = 9 guard; the grid is sparse enough.
    let gm = EmMachine::new(EmConfig::new(1 << 12, 8).unwrap());
    let g = ingest(&gm, &pairs).unwrap();
    let h = PatternGraph::mesh(3, 3);
    let want = brute_force_unguarded(&g, &h, false, None);
    assert!(!want.is_empty());
    let (got, dups) = run(&g, &h, 9 * 40, 4, false);
    assert_eq!(dups, 0);
    assert_eq!(got, want);
}
