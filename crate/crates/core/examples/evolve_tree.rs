//! Directly evolves a self-dual bent function with tree GP.
//!
//! ```text
//! cargo run --release --example evolve_tree -- [n] [objective] [runs] [seed]
//! ```

use bentsmith::engine::{run_campaign, EngineConfig};
use bentsmith::genome::tree::{DepthPolicy, DepthRule};
use bentsmith::problem::TreeProblem;
use bentsmith::ObjectiveKind;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(6), |s| s.parse())?;
    let kind: ObjectiveKind = args
        .get(1)
        .map_or(Ok(ObjectiveKind::SelfDualFit2), |s| s.parse())?;
    let runs: usize = args.get(2).map_or(Ok(4), |s| s.parse())?;
    let seed: u64 = args.get(3).map_or(Ok(1), |s| s.parse())?;

    let problem = TreeProblem::new(kind, n, DepthPolicy::for_vars(n, DepthRule::Max))?;
    let cfg = EngineConfig {
        repetitions: runs,
        rng_seed: seed,
        ..EngineConfig::default()
    };
    let campaign = run_campaign(&cfg, &problem, None)?;
    for r in &campaign.records {
        println!(
            "run {:2}  best {:>9.3}  evals {:>8}  nl {:>5}  self-dual {:5}  anti {:5}  {:.0} ms",
            r.run_index,
            r.best_fitness.value,
            r.evaluations_to_best,
            r.best_report.nonlinearity,
            r.best_report.is_self_dual,
            r.best_report.is_anti_self_dual,
            r.wall_time_ms
        );
    }
    let s = &campaign.summary;
    println!(
        "{} of {} runs reached {}; median {:.3}, best {}",
        s.successes, s.runs, s.optimum, s.fitness.median, campaign.records[s.best_run].best_genome
    );
    Ok(())
}
