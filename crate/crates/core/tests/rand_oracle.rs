use emgraph::emcore::{EmConfig, EmMachine};
use emgraph::graph::{ingest, DataGraph};
use emgraph::oracle::{brute_force, InstanceSet};
use emgraph::pattern::{find_induced_config, find_mis, PatternGraph};
use emgraph::randenum::{degree_decompose, enumerate_rand, DegreeOptions, RandOptions};
use emgraph::sink::{EmitMode, EmitSink};
use rand::{Rng, SeedableRng};

fn random_pairs(seed: u64, n: u64, m: usize) -> Vec<(u64, u64)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut set = std::collections::BTreeSet::new();
    while set.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            set.insert((a.min(b), a.max(b)));
        }
    }
    set.into_iter().collect()
}

fn graph(pairs: &[(u64, u64)]) -> DataGraph {
    ingest(&EmMachine::new(EmConfig::new(1 << 12, 8).unwrap()), pairs).unwrap()
}

fn patterns() -> Vec<PatternGraph> {
    vec![
        PatternGraph::clique(3),
        PatternGraph::clique(4),
        PatternGraph::cycle(4),
        PatternGraph::cycle(6),
        PatternGraph::path(3),
        PatternGraph::path(4),
        PatternGraph::mesh(2, 3),
    ]
}

#[test]
fn rand_matches_oracle_for_several_seeds() {
    let g = graph(&random_pairs(1, 14, 32));
    for h in patterns() {
        let want = brute_force(&g, &h, false, None).unwrap();
        for induced in [false, true] {
            let want = if induced { brute_force(&g, &h, true, None).unwrap() } else { want.clone() };
            let mis = if induced { find_induced_config(&h).unwrap() } else { find_mis(&h).unwrap() };
            for seed in 0..3 {
                // Induced configs have one probe, so keep the chunk count low.
                let mem = if induced { 256 } else { (16 * h.k()).max(64) };
                let m = EmMachine::new(EmConfig::new(mem, 4).unwrap());
                let mut sink = EmitSink::collecting(EmitMode::Digest);
                let opts = RandOptions { induced, colors: Some(2), ..RandOptions::default() };
                let rep = enumerate_rand(&m, &g, &mis, &mut sink, seed, opts).unwrap();
                assert!(rep.subproblems >= 1);
                assert!(m.stats().peak_internal_words <= m.mem());
                let (got, dups) = InstanceSet::from_emitted(sink.take_collected());
                assert_eq!(dups, 0, "{h:?} seed {seed}");
                assert_eq!(got, want, "{h:?} induced={induced} seed {seed}");
            }
        }
    }
}

#[test]
fn degree_decomposition_matches_oracle() {
    // Two hubs on top of a sparse random graph.
    let mut pairs = random_pairs(5, 16, 24);
    for i in 2..16 {
        pairs.push((0, i));
        if i % 2 == 0 {
            pairs.push((1, i));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let g = graph(&pairs);
    for h in patterns() {
        let want = brute_force(&g, &h, false, None).unwrap();
        let m = EmMachine::new(EmConfig::new((16 * h.k()).max(64), 4).unwrap());
        let mut sink = EmitSink::collecting(EmitMode::Count);
        let opts = DegreeOptions { threshold: Some(7), colors: Some(2) };
        let rep = degree_decompose(&m, &g, &h, &mut sink, 3, opts).unwrap();
        assert!(rep.very_high >= 1, "threshold should select hubs");
        let (got, dups) = InstanceSet::from_emitted(sink.take_collected());
        assert_eq!(dups, 0, "{h:?}");
        assert_eq!(got, want, "{h:?}");
    }
}

#[test]
fn triangle_on_star_with_hub() {
    let mut pairs: Vec<(u64, u64)> = (1..30).map(|i| (0, i)).collect();
    pairs.extend([(1, 2), (3, 4), (5, 6), (2, 3)]);
    let g = graph(&pairs);
    let h = PatternGraph::clique(3);
    let m = EmMachine::new(EmConfig::new(64, 4).unwrap());
    // sqrt(E M) = sqrt(33 * 64) ~ 45 exceeds the hub degree, so shrink it.
    let mut sink = EmitSink::collecting(EmitMode::Count);
    let rep = degree_decompose(&m, &g, &h, &mut sink, 1, DegreeOptions { threshold: Some(10), colors: Some(2) }).unwrap();
    assert_eq!(rep.very_high, 1);
    let (got, dups) = InstanceSet::from_emitted(sink.take_collected());
    assert_eq!(dups, 0);
    assert_eq!(got, brute_force(&g, &h, false, None).unwrap());
}
