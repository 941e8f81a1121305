//! Parameter sweeps: one run per point along `E`, `M` or `B`.

use std::str::FromStr;

use rayon::prelude::*;

use crate::emcore::EmConfig;
use crate::error::{EmError, Result};
use crate::harness::run::{append_csv, execute, RunRecord};
use crate::harness::spec::{DataSource, ExperimentSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Edges,
    Mem,
    Block,
}

impl FromStr for Axis {
    type Err = EmError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "E" | "e" | "edges" => Ok(Axis::Edges),
            "M" | "mem" => Ok(Axis::Mem),
            "B" | "block" => Ok(Axis::Block),
            _ => Err(EmError::Config(format!("unknown sweep axis {s:?}; use E, M or B"))),
        }
    }
}

/// `from, from*factor, ...` up to and including `to`.
pub fn points(from: u64, to: u64, factor: u64) -> Result<Vec<u64>> {
    if factor < 2 || from == 0 || from > to {
        return Err(EmError::Config(format!(
            "sweep needs 0 < from <= to and factor >= 2, got {from}..{to} x{factor}"
        )));
    }
    let mut out = Vec::new();
    let mut v = from;
    while v <= to {
        out.push(v);
        v = match v.checked_mul(factor) {
            Some(x) => x,
            None => break,
        };
    }
    Ok(out)
}

/// The template with the axis set to `value`.
pub fn at_point(template: &ExperimentSpec, axis: Axis, value: u64) -> Result<ExperimentSpec> {
    let mut spec = template.clone();
    match axis {
        Axis::Edges => match &template.data {
            DataSource::Gen { kind, seed } => {
                spec.data = DataSource::Gen {
                    kind: kind.with_edges(value)?,
                    seed: *seed,
                }
            }
            DataSource::File(_) => {
                return Err(EmError::Config("sweeping E needs a generated data source".into()))
            }
        },
        Axis::Mem => spec.em = EmConfig::new(value as usize, template.em.block)?,
        Axis::Block => spec.em = EmConfig::new(template.em.mem, value as usize)?,
    }
    spec.validate()?;
    Ok(spec)
}

/// Runs all points concurrently and appends the rows in point order.
pub fn sweep(template: &ExperimentSpec, axis: Axis, values: &[u64]) -> Result<Vec<RunRecord>> {
    let specs: Vec<ExperimentSpec> = values
        .iter()
        .map(|&v| at_point(template, axis, v))
        .collect::<Result<_>>()?;
    let per_point: Vec<Vec<RunRecord>> = specs.par_iter().map(execute).collect::<Result<_>>()?;
    let recs: Vec<RunRecord> = per_point.into_iter().flatten().collect();
    if let Some(path) = &template.csv {
        append_csv(path, &recs)?;
    }
    Ok(recs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::spec::Algorithm;

    fn template(gen: &str, mem: usize) -> ExperimentSpec {
        ExperimentSpec::new(
            Algorithm::Det,
            "triangle",
            DataSource::Gen {
                kind: gen.parse().unwrap(),
                seed: 3,
            },
            EmConfig::new(mem, 8).unwrap(),
        )
    }

    #[test]
    fn point_lists() {
        assert_eq!(points(100, 1600, 2).unwrap(), vec![100, 200, 400, 800, 1600]);
        assert_eq!(points(5, 5, 3).unwrap(), vec![5]);
        assert!(points(5, 4, 2).is_err());
        assert!(points(5, 40, 1).is_err());
    }

    #[test]
    fn edge_doubling_is_monotone() {
        let recs = sweep(&template("random:64:128", 128), Axis::Edges, &points(128, 2048, 2).unwrap()).unwrap();
        assert_eq!(recs.len(), 5);
        assert!(recs.windows(2).all(|w| w[0].m < w[1].m));
        assert!(recs.windows(2).all(|w| w[0].io.total_io() < w[1].io.total_io()));
    }

    #[test]
    fn more_memory_means_less_io() {
        let recs = sweep(&template("random:200:1500", 64), Axis::Mem, &points(64, 512, 2).unwrap()).unwrap();
        assert!(recs.windows(2).all(|w| w[0].io.total_io() > w[1].io.total_io()));
    }

    #[test]
    fn axis_names() {
        assert_eq!("E".parse::<Axis>().unwrap(), Axis::Edges);
        assert_eq!("B".parse::<Axis>().unwrap(), Axis::Block);
        assert!("k".parse::<Axis>().is_err());
    }
}
