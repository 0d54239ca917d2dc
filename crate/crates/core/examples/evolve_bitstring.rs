//! Direct evolution with the truth-table (bitstring) encoding. Unlike the
//! tree encoding, it rarely gets close to the optimum beyond 4 variables.
//!
//! ```text
//! cargo run --release --example evolve_bitstring -- [n] [objective] [evaluations] [seed]
//! ```

use bentsmith::engine::{run_campaign, EngineConfig};
use bentsmith::experiment::render_campaign;
use bentsmith::problem::BitstringProblem;
use bentsmith::ObjectiveKind;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(6), |s| s.parse())?;
    let kind: ObjectiveKind = args
        .get(1)
        .map_or(Ok(ObjectiveKind::SelfDualFit1), |s| s.parse())?;
    let evals: u64 = args.get(2).map_or(Ok(100_000), |s| s.parse())?;
    let seed: u64 = args.get(3).map_or(Ok(1), |s| s.parse())?;

    let cfg = EngineConfig {
        max_evaluations: evals,
        repetitions: 4,
        rng_seed: seed,
        ..EngineConfig::default()
    };
    let campaign = run_campaign(&cfg, &BitstringProblem::new(kind, n)?, None)?;
    print!("{}", render_campaign(&campaign));
    Ok(())
}
