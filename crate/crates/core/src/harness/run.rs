//! Executing experiments and reporting them as CSV rows.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::det::{enumerate_det, DetOptions};
use crate::emcore::{EmConfig, EmMachine, IoStats};
use crate::error::{EmError, Result};
use crate::graph::{ingest, read_edge_list, DataGraph, VertexId};
use crate::harness::generate::generate;
use crate::harness::spec::{Algorithm, DataSource, EmitTarget, ExperimentSpec};
use crate::oracle::brute_force;
use crate::pattern::{find_induced_config, find_mis, MisConfig, PatternGraph};
use crate::randenum::{
    degree_decompose, enumerate_rand, enumerate_with_coloring, hp_coloring, DegreeOptions, RandOptions,
};
use crate::sink::{EmitMode, EmitSink, TupleSink};

pub const CSV_COLUMNS: [&str; 20] = [
    "algo",
    "pattern",
    "k",
    "s",
    "n",
    "m",
    "M",
    "B",
    "seed",
    "T",
    "reads",
    "writes",
    "internal_ops",
    "peak_mem",
    "predicted_upper",
    "lb_floor",
    "wall_ms",
    "induced",
    "emit",
    "digest",
];

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub algo: Algorithm,
    pub pattern: String,
    pub k: usize,
    pub s: usize,
    pub induced: bool,
    pub emit: &'static str,
    pub n: usize,
    pub m: usize,
    pub mem: usize,
    pub block: usize,
    pub seed: u64,
    /// Instances emitted.
    pub t: u64,
    /// Order-independent digest; zero in count mode.
    pub digest: u64,
    pub io: IoStats,
    pub wall_ms: f64,
    pub predicted_upper: f64,
    pub lb_floor: f64,
    /// Colors used by the randomized algorithms.
    pub colors: Option<u32>,
    /// Times the deterministic core shrank its chunks after running out of memory.
    pub restarts: u32,
    pub oracle_match: Option<bool>,
}

impl RunRecord {
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.algo.to_string(),
            self.pattern.clone(),
            self.k.to_string(),
            self.s.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.mem.to_string(),
            self.block.to_string(),
            self.seed.to_string(),
            self.t.to_string(),
            self.io.block_reads.to_string(),
            self.io.block_writes.to_string(),
            self.io.internal_ops.to_string(),
            self.io.peak_internal_words.to_string(),
            format!("{:.6e}", self.predicted_upper),
            format!("{:.6e}", self.lb_floor),
            format!("{:.3}", self.wall_ms),
            self.induced.to_string(),
            self.emit.to_string(),
            format!("{:016x}", self.digest),
        ]
    }
}

/// `log_M E`, at least 1.
fn log_m(e: f64, mem: f64) -> f64 {
    (e.ln() / mem.ln()).max(1.0)
}

/// Deterministic bound `(8k)^(k-s-1) E^(k-s) / (B M^(k-s-1))`, with an
/// extra `log_M E` factor when `s = k/2`.
pub fn det_upper(k: usize, s: usize, e: usize, mem: usize, block: usize) -> f64 {
    let (kf, e, mf, b) = (k as f64, e as f64, mem as f64, block as f64);
    let d = (k - s) as f64;
    let base = (8.0 * kf).powf(d - 1.0) * e.powf(d) / (b * mf.powf(d - 1.0));
    if 2 * s == k {
        base * log_m(e, mf)
    } else {
        base
    }
}

/// Expected bound `(8k)^(4(k-s+1)) E^(k/2) / (B M^(k/2-1))` of the
/// color-coded algorithm.
pub fn rand_upper(k: usize, s: usize, e: usize, mem: usize, block: usize) -> f64 {
    let (kf, e, mf, b) = (k as f64, e as f64, mem as f64, block as f64);
    (8.0 * kf).powf(4.0 * (k - s + 1) as f64) * e.powf(kf / 2.0) / (b * mf.powf(kf / 2.0 - 1.0))
}

/// Lower-bound shape `T / (B M^(ceil(k/2)-1)) + T^(2/k) / B`, constant 1.
pub fn lb_floor(k: usize, t: u64, mem: usize, block: usize) -> f64 {
    let (t, mf, b) = (t as f64, mem as f64, block as f64);
    t / (b * mf.powi(k.div_ceil(2) as i32 - 1)) + t.powf(2.0 / k as f64) / b
}

pub fn load_pairs(source: &DataSource) -> Result<Vec<(u64, u64)>> {
    match source {
        DataSource::File(p) => read_edge_list(p),
        DataSource::Gen { kind, seed } => generate(*kind, *seed),
    }
}

/// Builds the data graph on a scratch machine so that ingest does not count
/// toward the measured run.
pub fn load_graph(source: &DataSource, em: EmConfig) -> Result<DataGraph> {
    let pairs = load_pairs(source)?;
    let scratch = EmMachine::new(EmConfig::new(em.mem.max(1 << 12), em.block)?);
    ingest(&scratch, &pairs)
}

fn mis_for(h: &PatternGraph, induced: bool) -> Result<MisConfig> {
    if induced {
        find_induced_config(h)
    } else {
        find_mis(h)
    }
}

/// Runs every seed of `spec` without writing CSV.
pub fn execute(spec: &ExperimentSpec) -> Result<Vec<RunRecord>> {
    spec.validate()?;
    let g = load_graph(&spec.data, spec.em)?;
    spec.validate_for(g.m())?;
    let h = spec.parse_pattern()?;
    let expected = if spec.verify {
        Some(brute_force(&g, &h, spec.induced, None)?.digest())
    } else {
        None
    };
    spec.seeds
        .par_iter()
        .map(|&seed| run_seed(spec, &g, &h, seed, expected))
        .collect()
}

/// Runs `spec` and appends its rows to the configured CSV.
pub fn run(spec: &ExperimentSpec) -> Result<Vec<RunRecord>> {
    let recs = execute(spec)?;
    if let Some(path) = &spec.csv {
        append_csv(path, &recs)?;
    }
    Ok(recs)
}

pub fn run_seed(
    spec: &ExperimentSpec,
    g: &DataGraph,
    h: &PatternGraph,
    seed: u64,
    expected_digest: Option<u64>,
) -> Result<RunRecord> {
    let k = h.k();
    let mode = match spec.emit {
        EmitTarget::Count if expected_digest.is_some() => EmitMode::Digest,
        EmitTarget::Count => EmitMode::Count,
        EmitTarget::Digest => EmitMode::Digest,
        EmitTarget::List(_) => EmitMode::List,
    };
    let machine = EmMachine::new(spec.em);
    let mut sink = EmitSink::new(mode);
    let mut colors = None;
    let mut restarts = 0;
    let mut s = mis_for(h, spec.induced && spec.algorithm != Algorithm::RandDegree)?.s;
    let start = Instant::now();
    let mut oracle_tuples = None;
    match spec.algorithm {
        Algorithm::Det => {
            let mis = mis_for(h, spec.induced)?;
            let opts = DetOptions {
                induced: spec.induced,
                ..DetOptions::default()
            };
            restarts = enumerate_det(&machine, g, &mis, &mut sink, opts)?.restarts;
        }
        Algorithm::Rand => {
            let mis = mis_for(h, spec.induced)?;
            let opts = RandOptions {
                induced: spec.induced,
                colors: spec.colors,
                ..RandOptions::default()
            };
            let rep = enumerate_rand(&machine, g, &mis, &mut sink, seed, opts)?;
            colors = Some(rep.colors);
            restarts = rep.restarts;
        }
        Algorithm::RandHp => {
            let mis = find_mis(h)?;
            let hp = hp_coloring(&machine, g, seed)?;
            colors = Some(hp.coloring.colors());
            restarts = enumerate_with_coloring(&machine, g, &mis, &mut sink, &hp.coloring, RandOptions::default())?.restarts;
        }
        Algorithm::RandDegree => {
            let opts = DegreeOptions {
                threshold: spec.degree_threshold,
                colors: spec.colors,
            };
            restarts = degree_decompose(&machine, g, h, &mut sink, seed, opts)?.restarts;
            colors = spec.colors;
        }
        Algorithm::Oracle => {
            let set = brute_force(g, h, spec.induced, None)?;
            for t in &set.tuples {
                sink.emit(&machine, t);
            }
            if !spec.induced {
                s = find_mis(h)?.s;
            }
            oracle_tuples = Some(set);
        }
    }
    sink.finish(&machine);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut io = machine.stats();
    if oracle_tuples.is_some() {
        // The oracle runs on the host; only its instance count is reported.
        io = IoStats::default();
    }
    let t = sink.count();
    let oracle_match = expected_digest.map(|d| d == sink.digest());
    if oracle_match == Some(false) {
        return Err(EmError::Invariant(format!(
            "{} emitted {t} instances whose digest differs from the oracle",
            spec.algorithm
        )));
    }
    if let EmitTarget::List(Some(path)) = &spec.emit {
        write_tuples(&list_path(path, spec.seeds.len(), seed), g, &sink)?;
    }
    let e = g.m();
    let predicted_upper = match spec.algorithm {
        Algorithm::Det => det_upper(k, s, e, spec.em.mem, spec.em.block),
        Algorithm::Rand | Algorithm::RandHp | Algorithm::RandDegree => {
            rand_upper(k, s, e, spec.em.mem, spec.em.block)
        }
        Algorithm::Oracle => 0.0,
    };
    let floor = if spec.algorithm == Algorithm::Oracle {
        0.0
    } else {
        lb_floor(k, t, spec.em.mem, spec.em.block)
    };
    Ok(RunRecord {
        algo: spec.algorithm,
        pattern: spec.pattern.clone(),
        k,
        s,
        induced: spec.induced,
        emit: spec.emit.name(),
        n: g.n(),
        m: e,
        mem: spec.em.mem,
        block: spec.em.block,
        seed,
        t,
        digest: sink.digest(),
        io,
        wall_ms,
        predicted_upper,
        lb_floor: floor,
        colors,
        restarts,
        oracle_match,
    })
}

/// With several seeds each gets its own file, `out.txt` -> `out.seed3.txt`.
fn list_path(path: &Path, seeds: usize, seed: u64) -> std::path::PathBuf {
    if seeds <= 1 {
        return path.to_path_buf();
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("tuples");
    let name = match path.extension().and_then(|s| s.to_str()) {
        Some(ext) => format!("{stem}.seed{seed}.{ext}"),
        None => format!("{stem}.seed{seed}"),
    };
    path.with_file_name(name)
}

/// One tuple per line, in the input's original vertex ids.
fn write_tuples(path: &Path, g: &DataGraph, sink: &EmitSink) -> Result<()> {
    let io = |e: std::io::Error| EmError::Io(format!("{}: {e}", path.display()));
    let words = sink.list_words();
    let k = if sink.count() == 0 { 1 } else { words.len() / sink.count() as usize };
    let label = |v: VertexId| g.labels().map_or(v as u64, |l| l[v as usize]);
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    for t in words.chunks(k.max(1)) {
        let line: Vec<String> = t.iter().map(|&v| label(v).to_string()).collect();
        writeln!(out, "{}", line.join(" ")).map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Appends rows, writing the header first when the file is new or empty.
pub fn append_csv(path: &Path, recs: &[RunRecord]) -> Result<()> {
    let io = |e: &dyn std::fmt::Display| EmError::Io(format!("{}: {e}", path.display()));
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| io(&e))?;
    let fresh = file.metadata().map_err(|e| io(&e))?.len() == 0;
    let mut w = csv::Writer::from_writer(file);
    if fresh {
        w.write_record(CSV_COLUMNS).map_err(|e| io(&e))?;
    }
    for r in recs {
        w.write_record(r.csv_fields()).map_err(|e| io(&e))?;
    }
    w.flush().map_err(|e| io(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::GenKind;

    fn spec(algo: Algorithm, pattern: &str, gen: &str, mem: usize, block: usize) -> ExperimentSpec {
        let data = DataSource::Gen {
            kind: gen.parse::<GenKind>().unwrap(),
            seed: 1,
        };
        ExperimentSpec::new(algo, pattern, data, EmConfig::new(mem, block).unwrap())
    }

    #[test]
    fn det_triangle_in_k8() {
        let mut sp = spec(Algorithm::Det, "triangle", "complete:8", 128, 8);
        sp.verify = true;
        let r = &execute(&sp).unwrap()[0];
        assert_eq!(r.t, 8 * 7 * 6);
        assert_eq!(r.oracle_match, Some(true));
        assert!(r.io.peak_internal_words <= 128);
        assert!(r.io.total_io() as f64 >= r.lb_floor);
    }

    #[test]
    fn rand_output_is_seed_independent() {
        let mut sp = spec(Algorithm::Rand, "cycle:4", "random:30:90", 64, 4);
        sp.seeds = vec![1, 2];
        sp.colors = Some(2);
        sp.emit = EmitTarget::Digest;
        let r = execute(&sp).unwrap();
        assert_eq!(r[0].t, r[1].t);
        assert_eq!(r[0].digest, r[1].digest);
        assert!(r[0].t > 0);
    }

    #[test]
    fn list_surcharge() {
        let mut sp = spec(Algorithm::Det, "triangle", "complete:10", 128, 8);
        let count = execute(&sp).unwrap().remove(0);
        sp.emit = EmitTarget::List(None);
        let list = execute(&sp).unwrap().remove(0);
        let need = (3 * count.t).div_ceil(8);
        assert!(list.io.block_writes - count.io.block_writes >= need);
    }

    #[test]
    fn csv_append_has_one_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.csv");
        let mut sp = spec(Algorithm::Det, "path:3", "star:6", 64, 4);
        sp.csv = Some(path.clone());
        run(&sp).unwrap();
        run(&sp).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_COLUMNS.join(","));
        let mut rd = csv::Reader::from_path(&path).unwrap();
        let t = rd.headers().unwrap().iter().position(|c| c == "T").unwrap();
        for row in rd.records() {
            assert_eq!(&row.unwrap()[t], "30");
        }
    }

    #[test]
    fn list_file_uses_input_ids() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("g.txt");
        std::fs::write(&file, "10 20\n20 30\n30 10\n").unwrap();
        let out = dir.path().join("t.txt");
        let mut sp = ExperimentSpec::new(
            Algorithm::Det,
            "triangle",
            DataSource::File(file),
            EmConfig::new(64, 4).unwrap(),
        );
        sp.emit = EmitTarget::List(Some(out.clone()));
        let r = execute(&sp).unwrap();
        assert_eq!(r[0].t, 6);
        let text = std::fs::read_to_string(&out).unwrap();
        assert_eq!(text.lines().count(), 6);
        assert!(text.lines().any(|l| l == "10 20 30"));
    }

    #[test]
    fn oracle_rows_carry_no_io() {
        let r = execute(&spec(Algorithm::Oracle, "cycle:4", "grid:3:3", 64, 4)).unwrap();
        assert_eq!(r[0].t, 4 * 8);
        assert_eq!(r[0].io.total_io(), 0);
    }

    #[test]
    fn bounds() {
        assert!((lb_floor(3, 1000, 100, 10) - (1000.0 / 1000.0 + 100.0 / 10.0)).abs() < 1e-9);
        assert!((det_upper(3, 1, 1000, 100, 10) - 24.0 * 1e6 / 1000.0).abs() < 1e-6);
        let c4 = det_upper(4, 2, 10_000, 100, 10);
        assert!((c4 - 32.0 * 1e8 / 1000.0 * 2.0).abs() < 1e-3);
    }
}
