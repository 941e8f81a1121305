use proptest::prelude::*;

use emgraph::det::{enumerate_det, DetOptions};
use emgraph::emcore::{EmConfig, EmMachine, ExtArray};
use emgraph::graph::ingest;
use emgraph::oracle::{brute_force, InstanceSet};
use emgraph::pattern::{find_induced_config, find_mis, PatternGraph};
use emgraph::randenum::{enumerate_rand, RandOptions};
use emgraph::sink::{EmitMode, EmitSink};

fn pattern(i: usize) -> PatternGraph {
    match i {
        0 => PatternGraph::clique(3),
        1 => PatternGraph::path(3),
        2 => PatternGraph::cycle(4),
        3 => PatternGraph::path(4),
        4 => PatternGraph::clique(4),
        _ => PatternGraph::cycle(5),
    }
}

fn edges() -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0u64..12, 0u64..12), 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn det_equals_oracle(pairs in edges(), p in 0usize..6, induced in any::<bool>(), extra in 0usize..3) {
        let h = pattern(p);
        let g = ingest(&EmMachine::new(EmConfig::new(1 << 12, 4).unwrap()), &pairs).unwrap();
        let mis = if induced { find_induced_config(&h).unwrap() } else { find_mis(&h).unwrap() };
        let mem = 8 * h.k() * (2 + extra * 3);
        let m = EmMachine::new(EmConfig::new(mem.max(64), 4).unwrap());
        let mut sink = EmitSink::collecting(EmitMode::Digest);
        enumerate_det(&m, &g, &mis, &mut sink, DetOptions { induced, ..DetOptions::default() }).unwrap();
        let (got, dups) = InstanceSet::from_emitted(sink.take_collected());
        prop_assert_eq!(dups, 0);
        let want = brute_force(&g, &h, induced, None).unwrap();
        prop_assert_eq!(sink.digest(), want.digest());
        prop_assert_eq!(got, want);
        prop_assert!(m.stats().peak_internal_words <= m.mem());
    }

    #[test]
    fn rand_equals_oracle(pairs in edges(), p in 0usize..6, seed in 0u64..1000) {
        let h = pattern(p);
        let g = ingest(&EmMachine::new(EmConfig::new(1 << 12, 4).unwrap()), &pairs).unwrap();
        let mis = find_mis(&h).unwrap();
        let m = EmMachine::new(EmConfig::new(16 * h.k(), 4).unwrap());
        let mut sink = EmitSink::collecting(EmitMode::Count);
        let opts = RandOptions { colors: Some(3), ..RandOptions::default() };
        enumerate_rand(&m, &g, &mis, &mut sink, seed, opts).unwrap();
        let (got, dups) = InstanceSet::from_emitted(sink.take_collected());
        prop_assert_eq!(dups, 0);
        prop_assert_eq!(got, brute_force(&g, &h, false, None).unwrap());
    }

    #[test]
    fn ext_sort_sorts_and_counts(words in prop::collection::vec(0u64..1000, 0..600), block in 2usize..9) {
        let m = EmMachine::new(EmConfig::new(8 * block, block).unwrap());
        let arr = ExtArray::from_words(words.clone());
        let sorted = m.ext_sort(&arr, 1, |a, b| a.cmp(b)).unwrap();
        let mut want = words;
        want.sort_unstable();
        prop_assert_eq!(sorted.words(), &want[..]);
        prop_assert!(m.stats().peak_internal_words <= 8 * block);
        if !want.is_empty() {
            // At least one read and one write pass.
            prop_assert!(m.stats().total_io() >= 2 * want.len().div_ceil(block) as u64);
        }
    }

    #[test]
    fn ingest_ignores_id_renaming(pairs in edges(), shift in 1u64..1_000_000) {
        let scratch = EmMachine::new(EmConfig::new(1 << 12, 4).unwrap());
        let a = ingest(&scratch, &pairs).unwrap();
        let moved: Vec<_> = pairs.iter().map(|&(u, v)| (u * 3 + shift, v * 3 + shift)).collect();
        let b = ingest(&scratch, &moved).unwrap();
        prop_assert_eq!(a.n(), b.n());
        prop_assert_eq!(a.edge_list(), b.edge_list());
    }
}
