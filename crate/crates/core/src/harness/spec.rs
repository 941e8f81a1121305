//! Experiment descriptions and the flat `key = value` config format.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::emcore::EmConfig;
use crate::error::{EmError, Result};
use crate::harness::generate::GenKind;
use crate::pattern::PatternGraph;
use crate::randenum::{check_hp_memory, check_supported};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Det,
    Rand,
    RandHp,
    RandDegree,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Det,
        Algorithm::Rand,
        Algorithm::RandHp,
        Algorithm::RandDegree,
        Algorithm::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Det => "det",
            Algorithm::Rand => "rand",
            Algorithm::RandHp => "rand-hp",
            Algorithm::RandDegree => "rand-degree",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = EmError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s.trim())
            .ok_or_else(|| EmError::Config(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DataSource {
    File(PathBuf),
    Gen { kind: GenKind, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmitTarget {
    Count,
    Digest,
    /// List mode; tuples are also written as text to the path.
    List(Option<PathBuf>),
}

impl EmitTarget {
    pub fn name(&self) -> &'static str {
        match self {
            EmitTarget::Count => "count",
            EmitTarget::Digest => "digest",
            EmitTarget::List(_) => "list",
        }
    }
}

impl FromStr for EmitTarget {
    type Err = EmError;

    /// `count`, `digest`, `list` or `list:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "count" => Ok(EmitTarget::Count),
            "digest" => Ok(EmitTarget::Digest),
            "list" => Ok(EmitTarget::List(None)),
            _ => match s.strip_prefix("list:") {
                Some(p) if !p.is_empty() => Ok(EmitTarget::List(Some(PathBuf::from(p)))),
                _ => Err(EmError::Config(format!("bad emit mode {s:?}"))),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub algorithm: Algorithm,
    /// Pattern as given, e.g. `triangle`, `cycle:4`, `mesh:3:3` or a file.
    pub pattern: String,
    pub data: DataSource,
    pub em: EmConfig,
    /// One run per seed; seeds drive the colorings.
    pub seeds: Vec<u64>,
    pub emit: EmitTarget,
    pub induced: bool,
    pub csv: Option<PathBuf>,
    /// Forces the color count of the randomized algorithms.
    pub colors: Option<u32>,
    /// Overrides the very-high-degree threshold of `rand-degree`.
    pub degree_threshold: Option<usize>,
    /// Compare every run against the brute-force oracle.
    pub verify: bool,
}

impl ExperimentSpec {
    pub fn new(algorithm: Algorithm, pattern: &str, data: DataSource, em: EmConfig) -> Self {
        ExperimentSpec {
            algorithm,
            pattern: pattern.to_string(),
            data,
            em,
            seeds: vec![0],
            emit: EmitTarget::Count,
            induced: false,
            csv: None,
            colors: None,
            degree_threshold: None,
            verify: false,
        }
    }

    pub fn parse_pattern(&self) -> Result<PatternGraph> {
        PatternGraph::parse_spec(&self.pattern)
    }

    /// Checks everything that does not need the data graph; `validate_for`
    /// finishes the job once `E` is known.
    pub fn validate(&self) -> Result<()> {
        let h = self.parse_pattern()?;
        if self.seeds.is_empty() {
            return Err(EmError::Config("at least one seed is required".into()));
        }
        if self.algorithm != Algorithm::Oracle {
            self.em.check_pattern(h.k())?;
        }
        if self.colors == Some(0) {
            return Err(EmError::Config("colors must be at least 1".into()));
        }
        match self.algorithm {
            Algorithm::RandDegree => check_supported(self.induced)?,
            Algorithm::RandHp if self.induced => {
                return Err(EmError::Config("rand-hp does not support induced mode".into()))
            }
            _ => {}
        }
        if self.colors.is_some() && !matches!(self.algorithm, Algorithm::Rand | Algorithm::RandDegree) {
            return Err(EmError::Config(format!("colors does not apply to {}", self.algorithm)));
        }
        if self.degree_threshold.is_some() && self.algorithm != Algorithm::RandDegree {
            return Err(EmError::Config("degree_threshold applies to rand-degree only".into()));
        }
        Ok(())
    }

    pub fn validate_for(&self, edges: usize) -> Result<()> {
        self.validate()?;
        if self.algorithm == Algorithm::RandHp {
            check_hp_memory(edges, self.em.mem)?;
        }
        Ok(())
    }
}

/// Settings from a config file or the command line, all optional so that
/// later sources override earlier ones key by key.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub algo: Option<String>,
    pub pattern: Option<String>,
    pub data: Option<PathBuf>,
    pub gen: Option<String>,
    pub gen_seed: Option<u64>,
    pub mem: Option<usize>,
    pub block: Option<usize>,
    pub seeds: Option<Vec<u64>>,
    pub emit: Option<String>,
    pub induced: Option<bool>,
    pub csv: Option<PathBuf>,
    pub colors: Option<u32>,
    pub degree_threshold: Option<usize>,
    pub verify: Option<bool>,
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| EmError::Config(format!("bad value {v:?} for {key}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(EmError::Config(format!("bad value {v:?} for {key}"))),
    }
}

/// Comma-separated seeds, with `a..b` ranges (end exclusive).
pub fn parse_seeds(v: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in v.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b): (u64, u64) = (parse_num("seed", a)?, parse_num("seed", b)?);
                out.extend(a..b);
            }
            None => out.push(parse_num("seed", part)?),
        }
    }
    Ok(out)
}

impl Settings {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn from_config_text(text: &str) -> Result<Settings> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| EmError::Parse {
                line: i + 1,
                msg: format!("expected key = value, got {line:?}"),
            })?;
            let key = key.trim().replace('-', "_");
            let v = value.trim();
            s.set(&key, v).map_err(|e| EmError::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
        }
        Ok(s)
    }

    fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "algo" | "algorithm" => self.algo = Some(v.to_string()),
            "pattern" => self.pattern = Some(v.to_string()),
            "data" => self.data = Some(PathBuf::from(v)),
            "gen" => self.gen = Some(v.to_string()),
            "gen_seed" => self.gen_seed = Some(parse_num(key, v)?),
            "mem" | "M" => self.mem = Some(parse_num(key, v)?),
            "block" | "B" => self.block = Some(parse_num(key, v)?),
            "seed" | "seeds" => self.seeds = Some(parse_seeds(v)?),
            "emit" => self.emit = Some(v.to_string()),
            "induced" => self.induced = Some(parse_bool(key, v)?),
            "csv" => self.csv = Some(PathBuf::from(v)),
            "colors" => self.colors = Some(parse_num(key, v)?),
            "degree_threshold" => self.degree_threshold = Some(parse_num(key, v)?),
            "verify" => self.verify = Some(parse_bool(key, v)?),
            _ => return Err(EmError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Keys set in `over` replace those in `self`.
    pub fn overlay(self, over: Settings) -> Settings {
        Settings {
            algo: over.algo.or(self.algo),
            pattern: over.pattern.or(self.pattern),
            data: over.data.or(self.data),
            gen: over.gen.or(self.gen),
            gen_seed: over.gen_seed.or(self.gen_seed),
            mem: over.mem.or(self.mem),
            block: over.block.or(self.block),
            seeds: over.seeds.or(self.seeds),
            emit: over.emit.or(self.emit),
            induced: over.induced.or(self.induced),
            csv: over.csv.or(self.csv),
            colors: over.colors.or(self.colors),
            degree_threshold: over.degree_threshold.or(self.degree_threshold),
            verify: over.verify.or(self.verify),
        }
    }

    pub fn into_spec(self) -> Result<ExperimentSpec> {
        let missing = |k: &str| EmError::Config(format!("missing required setting {k}"));
        let algorithm: Algorithm = self.algo.as_deref().unwrap_or("det").parse()?;
        let pattern = self.pattern.ok_or_else(|| missing("pattern"))?;
        let data = match (self.data, self.gen) {
            (Some(_), Some(_)) => return Err(EmError::Config("give either data or gen, not both".into())),
            (Some(p), None) => DataSource::File(p),
            (None, Some(g)) => DataSource::Gen {
                kind: g.parse()?,
                seed: self.gen_seed.unwrap_or(0),
            },
            (None, None) => return Err(missing("data or gen")),
        };
        let em = EmConfig::new(
            self.mem.ok_or_else(|| missing("mem"))?,
            self.block.ok_or_else(|| missing("block"))?,
        )?;
        let mut spec = ExperimentSpec::new(algorithm, &pattern, data, em);
        if let Some(s) = self.seeds {
            spec.seeds = s;
        }
        if let Some(e) = self.emit {
            spec.emit = e.parse()?;
        }
        spec.induced = self.induced.unwrap_or(false);
        spec.csv = self.csv;
        spec.colors = self.colors;
        spec.degree_threshold = self.degree_threshold;
        spec.verify = self.verify.unwrap_or(false);
        spec.validate()?;
        Ok(spec)
    }
}
