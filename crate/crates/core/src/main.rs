use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use emgraph::error::{EmError, Result};
use emgraph::harness::spec::parse_seeds;
use emgraph::harness::{points, run, sweep, Axis, RunRecord, Settings};

#[derive(Parser)]
#[command(name = "emgraph", version, about = "Subgraph enumeration in external memory, with exact I/O counts")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment, once per seed.
    Run(RunArgs),
    /// Repeat an experiment along a geometric range of E, M or B.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        axis: String,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 2)]
        factor: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    /// key = value file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge list file, one `u v` pair per line.
    #[arg(long, conflicts_with = "gen")]
    data: Option<PathBuf>,
    /// Generator, e.g. `random:1000:4000`, `complete:20`, `bounded:4096:16`.
    #[arg(long)]
    gen: Option<String>,
    #[arg(long)]
    gen_seed: Option<u64>,
    /// `triangle`, `clique:4`, `cycle:6`, `path:4`, `mesh:3:3`, `star:3` or a file.
    #[arg(long)]
    pattern: Option<String>,
    /// det, rand, rand-hp, rand-degree or oracle.
    #[arg(long)]
    algo: Option<String>,
    /// Internal memory M in words.
    #[arg(long)]
    mem: Option<usize>,
    /// Block size B in words.
    #[arg(long)]
    block: Option<usize>,
    /// Seeds, e.g. `3` or `0..10` or `1,5,9`.
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    induced: bool,
    /// count, digest, list or list:PATH.
    #[arg(long)]
    emit: Option<String>,
    /// Append one row per run to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Force the color count of rand and rand-degree.
    #[arg(long)]
    colors: Option<u32>,
    /// Very-high-degree threshold for rand-degree.
    #[arg(long)]
    degree_threshold: Option<usize>,
    /// Check each run against the brute-force oracle.
    #[arg(long)]
    verify: bool,
}

impl RunArgs {
    fn settings(self) -> Result<Settings> {
        let file = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| EmError::Io(format!("{}: {e}", p.display())))?;
                Settings::from_config_text(&text)?
            }
            None => Settings::default(),
        };
        let cli = Settings {
            algo: self.algo,
            pattern: self.pattern,
            data: self.data,
            gen: self.gen,
            gen_seed: self.gen_seed,
            mem: self.mem,
            block: self.block,
            seeds: self.seed.as_deref().map(parse_seeds).transpose()?,
            emit: self.emit,
            induced: self.induced.then_some(true),
            csv: self.csv,
            colors: self.colors,
            degree_threshold: self.degree_threshold,
            verify: self.verify.then_some(true),
        };
        Ok(file.overlay(cli))
    }
}

fn print(recs: &[RunRecord]) {
    println!(
        "{:<12} {:<10} {:>4} {:>8} {:>8} {:>12} {:>12} {:>16} {:>10}",
        "algo", "pattern", "seed", "M", "B", "T", "I/O", "digest", "ms"
    );
    for r in recs {
        println!(
            "{:<12} {:<10} {:>4} {:>8} {:>8} {:>12} {:>12} {:016x} {:>10.1}",
            r.algo.name(),
            r.pattern,
            r.seed,
            r.mem,
            r.block,
            r.t,
            r.io.total_io(),
            r.digest,
            r.wall_ms
        );
    }
}

fn dispatch(cmd: Command) -> Result<Vec<RunRecord>> {
    match cmd {
        Command::Run(args) => run(&args.settings()?.into_spec()?),
        Command::Sweep {
            run: args,
            axis,
            from,
            to,
            factor,
        } => {
            let axis: Axis = axis.parse()?;
            let template = args.settings()?.into_spec()?;
            sweep(&template, axis, &points(from, to, factor)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli.cmd) {
        Ok(recs) => {
            print(&recs);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
