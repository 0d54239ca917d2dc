//! Runs a small campaign, writes runs.csv / summary.json / best_genomes.txt
//! and recomputes the box-plot statistics from the CSV.
//!
//! ```text
//! cargo run --release --example campaign_files -- [output-dir]
//! ```

use std::fs::File;
use std::path::PathBuf;

use bentsmith::engine::EngineConfig;
use bentsmith::experiment::{
    read_runs_csv, run_evolve, write_outputs, Distributions, Encoding, EvolveSpec, RUNS_CSV,
};
use bentsmith::genome::tree::{DepthPolicy, DepthRule};
use bentsmith::ObjectiveKind;

fn main() -> anyhow::Result<()> {
    let dir: PathBuf = std::env::args().nth(1).map_or_else(
        || std::env::temp_dir().join("bentsmith-demo"),
        PathBuf::from,
    );
    let spec = EvolveSpec {
        encoding: Encoding::Gp,
        objective: ObjectiveKind::AntiSelfDualFit2,
        n: 6,
        engine: EngineConfig {
            max_evaluations: 20_000,
            repetitions: 8,
            rng_seed: 2024,
            ..EngineConfig::default()
        },
        depth: DepthPolicy::for_vars(6, DepthRule::Max),
        jobs: None,
    };
    let campaign = run_evolve(&spec)?;
    for path in write_outputs(&dir, &spec, &campaign, None)? {
        println!("wrote {}", path.display());
    }
    let rows = read_runs_csv(File::open(dir.join(RUNS_CSV))?)?;
    let d = Distributions::from_rows(&rows).expect("non-empty campaign");
    println!(
        "fitness      min {} q1 {} median {} q3 {} max {}",
        d.fitness.min, d.fitness.q1, d.fitness.median, d.fitness.q3, d.fitness.max
    );
    println!(
        "nonlinearity min {} q1 {} median {} q3 {} max {}",
        d.nonlinearity.min,
        d.nonlinearity.q1,
        d.nonlinearity.median,
        d.nonlinearity.q3,
        d.nonlinearity.max
    );
    assert_eq!(d.fitness, campaign.summary.fitness);
    Ok(())
}
