//! Coloring with bounded class sizes: high-degree vertices are packed into
//! groups of comparable degree sum, low-degree vertices are hashed.

use crate::emcore::{EmMachine, Word};
use crate::error::{EmError, Result};
use crate::graph::{DataGraph, VertexId};
use crate::randenum::coloring::Coloring;
use crate::randenum::rand::default_colors;

#[derive(Clone, Debug)]
pub struct HpColoring {
    pub coloring: Coloring,
    /// Degree sum of each high-degree group, in packing order.
    pub group_sums: Vec<usize>,
    pub high_vertices: usize,
}

/// Checks `M >= sqrt(E) * log2(E)`.
pub fn check_hp_memory(edges: usize, mem: usize) -> Result<()> {
    if edges < 2 {
        return Ok(());
    }
    let e = edges as f64;
    let need = e.sqrt() * e.log2();
    if (mem as f64) < need {
        return Err(EmError::Config(format!(
            "M={mem} below sqrt(E)*log2(E)={need:.0} required by the bounded-class coloring"
        )));
    }
    Ok(())
}

pub fn hp_coloring(machine: &EmMachine, g: &DataGraph, seed: u64) -> Result<HpColoring> {
    let e = g.m();
    let mem = machine.mem();
    check_hp_memory(e, mem)?;
    let c = default_colors(e, mem);
    let low_limit = (e as f64).sqrt();
    let high_limit = ((e as f64) * (mem as f64)).sqrt();
    if g.max_degree() as f64 > high_limit {
        return Err(EmError::Config(format!(
            "max degree {} exceeds sqrt(EM)={high_limit:.0}; use the degree decomposition",
            g.max_degree()
        )));
    }
    // Degrees come from the list boundaries: one pass over the vertex table.
    machine.count_reads(machine.config().blocks(g.n()));
    let mut w = machine.writer()?;
    for &v in g.vertices() {
        let d = g.degree(v);
        if d as f64 >= low_limit {
            w.push(d as Word);
            w.push(v as Word);
        }
    }
    let recs = w.finish();
    let by_degree = machine.ext_sort(&recs, 2, |x, y| y[0].cmp(&x[0]).then(x[1].cmp(&y[1])))?;
    let high_vertices = by_degree.len() / 2;
    let _table = machine.charge(2 * high_vertices + 2)?;
    machine.pay_scan(&by_degree)?;
    let mut high: Vec<(VertexId, u32)> = Vec::with_capacity(high_vertices);
    let mut group_sums = Vec::new();
    let mut sum = 0usize;
    for r in by_degree.words().chunks(2) {
        let group = group_sums.len() as u32;
        high.push((r[1] as VertexId, group % c + 1));
        sum += r[0] as usize;
        if sum as f64 >= high_limit {
            group_sums.push(sum);
            sum = 0;
        }
    }
    if sum > 0 {
        group_sums.push(sum);
    }
    high.sort_unstable();
    Ok(HpColoring {
        coloring: Coloring::table(c, seed, high),
        group_sums,
        high_vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emcore::EmConfig;
    use crate::graph::ingest;

    #[test]
    fn memory_requirement() {
        assert!(check_hp_memory(1 << 10, 320).is_ok());
        assert!(check_hp_memory(1 << 10, 319).is_err());
    }

    #[test]
    fn forced_packing_one_per_group() {
        // E = 4M with two disjoint stars of degree sqrt(EM) = 2048: c = 2.
        let mut pairs = Vec::new();
        for i in 0..2048u64 {
            pairs.push((0, 2 + i));
            pairs.push((1, 5000 + i));
        }
        let m = EmMachine::new(EmConfig::new(1024, 16).unwrap());
        let g = ingest(&m, &pairs).unwrap();
        let hp = hp_coloring(&m, &g, 1).unwrap();
        assert_eq!(hp.coloring.colors(), 2);
        assert_eq!(hp.high_vertices, 2);
        assert_eq!(hp.group_sums, vec![2048, 2048]);
        let hubs = [g.vertices()[0], g.vertices()[1]];
        assert_eq!(g.degree(hubs[0]), 2048);
        assert_eq!(g.degree(hubs[1]), 2048);
        assert_ne!(hp.coloring.color(hubs[0]), hp.coloring.color(hubs[1]));
    }

    #[test]
    fn low_degree_only_is_hashed() {
        let pairs: Vec<_> = (0..300u64).map(|i| (i, (i + 1) % 300)).collect();
        let m = EmMachine::new(EmConfig::new(200, 4).unwrap());
        let g = ingest(&m, &pairs).unwrap();
        let hp = hp_coloring(&m, &g, 3).unwrap();
        assert_eq!(hp.high_vertices, 0);
        let c = hp.coloring.colors();
        assert_eq!(c, 2);
        let ones = (0..300).filter(|&v| hp.coloring.color(v) == 1).count();
        assert!((100..200).contains(&ones));
    }

    #[test]
    fn rejects_very_high_degree() {
        let pairs: Vec<_> = (1..200u64).map(|i| (0, i)).collect();
        let m = EmMachine::new(EmConfig::new(4000, 4).unwrap());
        let g = ingest(&m, &pairs).unwrap();
        // E = 199, sqrt(EM) ~ 892 > 199, so this passes; shrink M instead.
        assert!(hp_coloring(&m, &g, 1).is_ok());
        let pairs: Vec<_> = (1..2000u64).map(|i| (0, i)).collect();
        let m = EmMachine::new(EmConfig::new(500, 4).unwrap());
        let g = ingest(&m, &pairs).unwrap();
        assert!(hp_coloring(&m, &g, 1).is_err());
    }
}
