//! Searches for secondary constructions from 4 to 6 variables over four seed
//! sets drawn from the census, with trivial constructions rejected.
//!
//! ```text
//! cargo run --release --example construction_search -- [concurrent|incremental] [evaluations] [seed]
//! ```

use bentsmith::construction::{Scheme, SeedRole};
use bentsmith::engine::EngineConfig;
use bentsmith::experiment::{
    build_construction_task, render_campaign, run_construction, ConstructionSpec,
};
use bentsmith::genome::tree::{DepthPolicy, DepthRule};
use bentsmith::oracle::census;
use bentsmith::ObjectiveKind;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let scheme: Scheme = args.first().map_or(Ok(Scheme::Concurrent), |s| s.parse())?;
    let evals: u64 = args.get(1).map_or(Ok(50_000), |s| s.parse())?;
    let seed: u64 = args.get(2).map_or(Ok(1), |s| s.parse())?;

    let spec = ConstructionSpec {
        objective: ObjectiveKind::SelfDualFit2,
        scheme,
        sets: 4,
        seeds_per_set: 4,
        role: SeedRole::SelfDual,
        reject_trivial: true,
        engine: EngineConfig {
            max_evaluations: evals,
            repetitions: 3,
            rng_seed: seed,
            ..EngineConfig::default()
        },
        depth: DepthPolicy::for_vars(6, DepthRule::Max),
        jobs: None,
    };
    let task = build_construction_task(&spec, &census(4)?.self_dual)?;
    println!(
        "target {} over {} seed sets ({scheme})",
        task.optimum(),
        task.seed_sets().len()
    );
    let campaign = run_construction(&spec, task)?;
    print!("{}", render_campaign(&campaign));
    println!(
        "best construction: {}",
        campaign.records[campaign.summary.best_run].best_genome
    );
    Ok(())
}
