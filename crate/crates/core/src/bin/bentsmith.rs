use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use bentsmith::construction::{Scheme, SeedRole};
use bentsmith::engine::EngineConfig;
use bentsmith::experiment::{self, ConstructionSpec, Encoding, EvolveSpec};
use bentsmith::genome::tree::{DepthPolicy, DepthRule};
use bentsmith::ObjectiveKind;

#[derive(Parser)]
#[command(
    name = "bentsmith",
    version,
    about = "Evolve (anti-)self-dual bent Boolean functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve functions directly with the bitstring or tree encoding.
    Evolve(EvolveArgs),
    /// Evolve secondary constructions over seed functions.
    EvolveConstruction(ConstructionArgs),
    /// Count bent, self-dual and anti-self-dual functions.
    Enumerate(EnumerateArgs),
    /// Report spectral properties of truth-table records.
    Analyze {
        /// File of `n:<int>;tt:<hex>` lines, or `-` for stdin.
        file: PathBuf,
    },
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, default_value_t = 500)]
    pop: usize,
    #[arg(long, default_value_t = 1_000_000)]
    evals: u64,
    #[arg(long, default_value_t = 0.5)]
    pmut: f64,
    #[arg(long, default_value_t = 30)]
    reps: usize,
    /// Campaign seed; falls back to BENTSMITH_SEED, then the clock.
    #[arg(long, env = "BENTSMITH_SEED")]
    seed: Option<u64>,
    /// Keep evolving after the optimum is reached.
    #[arg(long)]
    no_early_stop: bool,
    /// Worker threads for independent runs (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Tree depth limit; overrides --depth-rule.
    #[arg(long)]
    max_depth: Option<usize>,
    /// Default depth limit: `max` is max(5, n-5), `min` is min(5, n-5).
    #[arg(long, default_value = "max")]
    depth_rule: DepthRule,
    /// Directory for runs.csv, summary.json and best_genomes.txt.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        let seed = self.seed.unwrap_or_else(|| {
            let t = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_nanos())
                .unwrap_or(0);
            let seed = t as u64;
            eprintln!("no --seed or BENTSMITH_SEED given, using {seed}");
            seed
        });
        EngineConfig {
            population_size: self.pop,
            max_evaluations: self.evals,
            p_mut: self.pmut,
            repetitions: self.reps,
            rng_seed: seed,
            stop_at_optimum: !self.no_early_stop,
            ..EngineConfig::default()
        }
    }

    fn depth(&self, n: usize) -> Result<DepthPolicy> {
        match self.max_depth {
            Some(d) => Ok(DepthPolicy::new(d)?),
            None => Ok(DepthPolicy::for_vars(n, self.depth_rule)),
        }
    }
}

#[derive(Args)]
struct EvolveArgs {
    #[arg(long, default_value = "gp")]
    encoding: Encoding,
    #[arg(long, default_value = "sd2")]
    objective: ObjectiveKind,
    /// Number of variables (even, 2..=16).
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct ConstructionArgs {
    /// Constructions are always trees.
    #[arg(long, default_value = "gp")]
    encoding: Encoding,
    #[arg(long, default_value = "sd2")]
    objective: ObjectiveKind,
    /// Seed pool, one truth-table record per line.
    #[arg(long)]
    seeds: PathBuf,
    #[arg(long, default_value = "concurrent")]
    scheme: Scheme,
    #[arg(long, default_value_t = 4)]
    sets: usize,
    #[arg(long, default_value_t = 4)]
    seeds_per_set: usize,
    /// Property required of every seed.
    #[arg(long, default_value = "self-dual")]
    role: SeedRole,
    /// Score constructions of the form g(x0, x1) + f_i as zero.
    #[arg(long)]
    reject_trivial: bool,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Classify this many random functions instead of enumerating.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, env = "BENTSMITH_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the self-dual functions found, one record per line.
    #[arg(long)]
    emit_witnesses: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Evolve(args) => {
            let spec = EvolveSpec {
                encoding: args.encoding,
                objective: args.objective,
                n: args.n,
                engine: args.engine.config(),
                depth: args.engine.depth(args.n)?,
                jobs: args.engine.jobs,
            };
            let campaign = experiment::run_evolve(&spec)?;
            print!("{}", experiment::render_campaign(&campaign));
            if let Some(dir) = &args.engine.out {
                for p in experiment::write_outputs(dir, &spec, &campaign, None)? {
                    eprintln!("wrote {}", p.display());
                }
            }
        }
        Command::EvolveConstruction(args) => {
            if args.encoding != Encoding::Gp {
                bail!("constructions require --encoding gp");
            }
            let pool = experiment::load_pool(&args.seeds)?;
            let n = pool[0].n() + 2;
            let spec = ConstructionSpec {
                objective: args.objective,
                scheme: args.scheme,
                sets: args.sets,
                seeds_per_set: args.seeds_per_set,
                role: args.role,
                reject_trivial: args.reject_trivial,
                engine: args.engine.config(),
                depth: args.engine.depth(n)?,
                jobs: args.engine.jobs,
            };
            let task = experiment::build_construction_task(&spec, &pool)?;
            let sets = task.seed_sets().to_vec();
            let campaign = experiment::run_construction(&spec, task)?;
            print!("{}", experiment::render_campaign(&campaign));
            if let Some(dir) = &args.engine.out {
                for p in experiment::write_outputs(dir, &spec, &campaign, Some(&sets))? {
                    eprintln!("wrote {}", p.display());
                }
            }
        }
        Command::Enumerate(args) => {
            let (report, witnesses) = experiment::enumerate(args.n, args.samples, args.seed)?;
            println!("{}", experiment::render_census(&report));
            if let Some(path) = args.emit_witnesses {
                let text: String = witnesses.iter().map(|t| t.to_record() + "\n").collect();
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                eprintln!(
                    "wrote {} self-dual functions to {}",
                    witnesses.len(),
                    path.display()
                );
            }
        }
        Command::Analyze { file } => {
            let mut text = String::new();
            if file.as_os_str() == "-" {
                std::io::stdin().read_to_string(&mut text)?;
            } else {
                text = fs::read_to_string(&file)
                    .with_context(|| format!("reading {}", file.display()))?;
            }
            let analyses = experiment::analyze_text(&text)
                .with_context(|| format!("parsing {}", file.display()))?;
            for a in &analyses {
                print!("{}", experiment::render_analysis(a));
            }
        }
    }
    Ok(())
}
