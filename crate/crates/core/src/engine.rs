//! Steady-state evolutionary loop with 3-tournament elimination, and
//! multi-run campaigns.
//!
//! Each iteration draws three distinct individuals, removes the worst, breeds
//! the other two into one child (mutated with probability `p_mut`) and puts
//! the child in the freed slot. Every objective call counts against the
//! evaluation budget, including the initial population.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitness::FitnessValue;
use crate::spectrum::SpectralReport;

/// Random stream owned by one run.
pub type RunRng = ChaCha8Rng;

/// A genome encoding paired with an objective.
pub trait Problem: Clone + Send + Sync {
    type Genome: Clone + Send;

    fn random_genome(&self, rng: &mut RunRng) -> Self::Genome;

    /// One child from two parents, using a uniformly chosen operator.
    fn crossover(&self, a: &Self::Genome, b: &Self::Genome, rng: &mut RunRng) -> Self::Genome;

    fn mutate(&self, g: &Self::Genome, rng: &mut RunRng) -> Self::Genome;

    fn evaluate(&mut self, g: &Self::Genome) -> FitnessValue;

    /// Target value of [`FitnessValue::integer_part`].
    fn optimum(&self) -> u64;

    fn is_optimal(&self, v: &FitnessValue) -> bool {
        v.integer_part >= self.optimum()
    }

    /// Serialized genome.
    fn describe(&self, g: &Self::Genome) -> String;

    /// Spectral properties of the function the genome encodes.
    fn report(&mut self, g: &Self::Genome) -> SpectralReport;

    /// Whether the genome is a trivial construction, where that applies.
    fn trivial(&mut self, _g: &Self::Genome) -> Option<bool> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub population_size: usize,
    pub max_evaluations: u64,
    pub tournament_size: usize,
    pub p_mut: f64,
    pub repetitions: usize,
    pub rng_seed: u64,
    /// Stop a run as soon as the objective's optimum is reached.
    pub stop_at_optimum: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            population_size: 500,
            max_evaluations: 1_000_000,
            tournament_size: 3,
            p_mut: 0.5,
            repetitions: 30,
            rng_seed: 0,
            stop_at_optimum: true,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tournament_size != 3 {
            return Err(Error::ConfigInvalid(format!(
                "tournament size is fixed at 3, got {}",
                self.tournament_size
            )));
        }
        if self.population_size < self.tournament_size {
            return Err(Error::ConfigInvalid(format!(
                "population {} is smaller than the tournament",
                self.population_size
            )));
        }
        if !(0.0..=1.0).contains(&self.p_mut) {
            return Err(Error::ConfigInvalid(format!(
                "p_mut {} is not a probability",
                self.p_mut
            )));
        }
        if self.max_evaluations == 0 {
            return Err(Error::ConfigInvalid(
                "evaluation budget must be positive".into(),
            ));
        }
        if self.repetitions == 0 {
            return Err(Error::ConfigInvalid("repetitions must be positive".into()));
        }
        Ok(())
    }
}

/// Best-so-far fitness after `evaluations` objective calls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub evaluations: u64,
    pub best: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_index: usize,
    pub rng_seed: u64,
    pub best_fitness: FitnessValue,
    pub best_genome: String,
    pub evaluations_to_best: u64,
    pub evaluations: u64,
    pub reached_optimum: bool,
    pub best_report: SpectralReport,
    pub best_trivial: Option<bool>,
    pub wall_time_ms: f64,
    pub trace: Vec<TracePoint>,
}

/// Picks the individual to eliminate among three fitness values, breaking
/// ties uniformly. Returns its position and the two survivors in random
/// order.
pub fn eliminate<R: Rng + ?Sized>(fitness: [f64; 3], rng: &mut R) -> (usize, [usize; 2]) {
    let worst_value = fitness.iter().copied().fold(f64::INFINITY, f64::min);
    let worst_positions: Vec<usize> = (0..3).filter(|&k| fitness[k] == worst_value).collect();
    let worst = *worst_positions.choose(rng).expect("three candidates");
    let mut parents: Vec<usize> = (0..3).filter(|&k| k != worst).collect();
    parents.shuffle(rng);
    (worst, [parents[0], parents[1]])
}

/// SplitMix64 finaliser over `seed` and the run index.
pub fn derive_seed(seed: u64, run_index: usize) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul((run_index as u64).wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One steady-state run seeded with `rng_seed`.
pub fn run_steady_state<P: Problem>(
    cfg: &EngineConfig,
    problem: &mut P,
    run_index: usize,
    rng_seed: u64,
) -> Result<RunRecord> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rng = RunRng::seed_from_u64(rng_seed);
    let mut evaluations = 0u64;
    let mut population: Vec<(P::Genome, FitnessValue)> = Vec::with_capacity(cfg.population_size);
    let mut best: Option<(P::Genome, FitnessValue)> = None;
    let mut evaluations_to_best = 0;
    let mut trace = Vec::new();
    let mut done = false;

    let mut consider = |g: &P::Genome,
                        v: FitnessValue,
                        evaluations: u64,
                        best: &mut Option<(P::Genome, FitnessValue)>| {
        if best.as_ref().map_or(true, |(_, b)| v.value > b.value) {
            *best = Some((g.clone(), v));
            evaluations_to_best = evaluations;
            trace.push(TracePoint {
                evaluations,
                best: v.value,
            });
        }
    };

    while population.len() < cfg.population_size && evaluations < cfg.max_evaluations {
        let g = problem.random_genome(&mut rng);
        let v = problem.evaluate(&g);
        evaluations += 1;
        consider(&g, v, evaluations, &mut best);
        population.push((g, v));
        if cfg.stop_at_optimum && problem.is_optimal(&v) {
            done = true;
            break;
        }
    }

    while !done && evaluations < cfg.max_evaluations {
        let picks = rand::seq::index::sample(&mut rng, population.len(), 3).into_vec();
        let fitness = [picks[0], picks[1], picks[2]].map(|i| population[i].1.value);
        let (worst, [p, q]) = eliminate(fitness, &mut rng);
        let mut child =
            problem.crossover(&population[picks[p]].0, &population[picks[q]].0, &mut rng);
        if rng.gen_bool(cfg.p_mut) {
            child = problem.mutate(&child, &mut rng);
        }
        let v = problem.evaluate(&child);
        evaluations += 1;
        consider(&child, v, evaluations, &mut best);
        population[picks[worst]] = (child, v);
        if cfg.stop_at_optimum && problem.is_optimal(&v) {
            done = true;
        }
    }

    let (genome, best_fitness) = best.expect("at least one evaluation");
    Ok(RunRecord {
        run_index,
        rng_seed,
        best_fitness,
        best_genome: problem.describe(&genome),
        evaluations_to_best,
        evaluations,
        reached_optimum: problem.is_optimal(&best_fitness),
        best_report: problem.report(&genome),
        best_trivial: problem.trivial(&genome),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        trace,
    })
}

/// Min, quartiles, max and mean of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiveNumber {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

impl FiveNumber {
    /// Quartiles interpolate linearly between order statistics.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let h = (v.len() - 1) as f64 * p;
            let lo = h.floor() as usize;
            let hi = h.ceil() as usize;
            v[lo] + (h - lo as f64) * (v[hi] - v[lo])
        };
        Some(Self {
            min: v[0],
            q1: q(0.25),
            median: q(0.5),
            q3: q(0.75),
            max: v[v.len() - 1],
            mean: v.iter().sum::<f64>() / v.len() as f64,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub runs: usize,
    pub optimum: u64,
    pub successes: usize,
    pub best_fitness: f64,
    pub best_run: usize,
    pub fitness: FiveNumber,
    pub nonlinearity: FiveNumber,
    /// Runs whose best genome was flagged as a trivial construction.
    pub trivial_runs: Option<usize>,
}

impl CampaignSummary {
    pub fn from_records(records: &[RunRecord], optimum: u64) -> Option<Self> {
        let fitness: Vec<f64> = records.iter().map(|r| r.best_fitness.value).collect();
        let nl: Vec<f64> = records
            .iter()
            .map(|r| r.best_report.nonlinearity as f64)
            .collect();
        let best = records.iter().max_by(|a, b| {
            a.best_fitness
                .value
                .total_cmp(&b.best_fitness.value)
                .then(b.run_index.cmp(&a.run_index))
        })?;
        let trivial_runs = records
            .iter()
            .map(|r| r.best_trivial)
            .collect::<Option<Vec<bool>>>()
            .map(|flags| flags.into_iter().filter(|&t| t).count());
        Some(Self {
            runs: records.len(),
            optimum,
            successes: records.iter().filter(|r| r.reached_optimum).count(),
            best_fitness: best.best_fitness.value,
            best_run: best.run_index,
            fitness: FiveNumber::of(&fitness)?,
            nonlinearity: FiveNumber::of(&nl)?,
            trivial_runs,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Campaign {
    pub config: EngineConfig,
    pub records: Vec<RunRecord>,
    pub summary: CampaignSummary,
}

/// `cfg.repetitions` independent runs. Run `i` is seeded with
/// `derive_seed(cfg.rng_seed, i)`; results are ordered by run index and do
/// not depend on `jobs`.
pub fn run_campaign<P: Problem>(
    cfg: &EngineConfig,
    problem: &P,
    jobs: Option<usize>,
) -> Result<Campaign> {
    cfg.validate()?;
    let run = |i: usize| {
        let mut p = problem.clone();
        run_steady_state(cfg, &mut p, i, derive_seed(cfg.rng_seed, i))
    };
    let records: Vec<RunRecord> = match jobs {
        Some(1) => (0..cfg.repetitions).map(run).collect::<Result<_>>()?,
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::ConfigInvalid(format!("thread pool: {e}")))?
            .install(|| {
                (0..cfg.repetitions)
                    .into_par_iter()
                    .map(run)
                    .collect::<Result<_>>()
            })?,
        None => (0..cfg.repetitions)
            .into_par_iter()
            .map(run)
            .collect::<Result<_>>()?,
    };
    let summary =
        CampaignSummary::from_records(&records, problem.optimum()).expect("at least one run");
    Ok(Campaign {
        config: *cfg,
        records,
        summary,
    })
}
