//! Experiment front end: campaign set-up from plain options, result files
//! (per-run CSV, JSON summary, best genomes) and truth-table analysis.

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::construction::{sample_seed_sets, ConstructionTask, Scheme, SeedRole, SeedSet};
use crate::engine::{
    derive_seed, run_campaign, Campaign, EngineConfig, FiveNumber, RunRecord, RunRng,
};
use crate::fitness::{fit1, fit2, FitnessValue, ObjectiveKind};
use crate::genome::tree::DepthPolicy;
use crate::oracle::{census, census_sampled, CensusReport};
use crate::problem::{BitstringProblem, ConstructionProblem, TreeProblem};
use crate::spectrum::{classify_with, dual_of_spectrum, wht_fast, SpectralReport};
use crate::truth_table::{parse_records, TruthTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Encoding {
    /// Truth-table bitstring.
    Tt,
    /// Tree GP.
    Gp,
}

impl FromStr for Encoding {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "tt" => Ok(Encoding::Tt),
            "gp" => Ok(Encoding::Gp),
            other => Err(crate::Error::Parse(format!(
                "unknown encoding {other:?} (tt|gp)"
            ))),
        }
    }
}

/// Options of a direct-evolution campaign.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvolveSpec {
    pub encoding: Encoding,
    pub objective: ObjectiveKind,
    pub n: usize,
    pub engine: EngineConfig,
    /// Tree depth limit; ignored by the bitstring encoding.
    pub depth: DepthPolicy,
    pub jobs: Option<usize>,
}

pub fn run_evolve(spec: &EvolveSpec) -> crate::Result<Campaign> {
    match spec.encoding {
        Encoding::Tt => run_campaign(
            &spec.engine,
            &BitstringProblem::new(spec.objective, spec.n)?,
            spec.jobs,
        ),
        Encoding::Gp => run_campaign(
            &spec.engine,
            &TreeProblem::new(spec.objective, spec.n, spec.depth)?,
            spec.jobs,
        ),
    }
}

/// Options of a construction campaign.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub objective: ObjectiveKind,
    pub scheme: Scheme,
    pub sets: usize,
    pub seeds_per_set: usize,
    pub role: SeedRole,
    pub reject_trivial: bool,
    pub engine: EngineConfig,
    pub depth: DepthPolicy,
    pub jobs: Option<usize>,
}

/// Seed sets are drawn from `pool` with a stream derived from the engine
/// seed, so the whole campaign is reproducible from `engine.rng_seed`.
pub fn build_construction_task(
    spec: &ConstructionSpec,
    pool: &[TruthTable],
) -> crate::Result<ConstructionTask> {
    let mut rng = RunRng::seed_from_u64(derive_seed(spec.engine.rng_seed, usize::MAX));
    let sets = sample_seed_sets(pool, spec.sets, spec.seeds_per_set, &mut rng)?
        .into_iter()
        .map(|s| s.require(spec.role))
        .collect::<crate::Result<Vec<SeedSet>>>()?;
    ConstructionTask::new(sets, spec.scheme, spec.objective)
}

pub fn run_construction(
    spec: &ConstructionSpec,
    task: ConstructionTask,
) -> crate::Result<Campaign> {
    let problem = ConstructionProblem::new(task, spec.depth, spec.reject_trivial);
    run_campaign(&spec.engine, &problem, spec.jobs)
}

/// One row of `runs.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub run_index: usize,
    pub rng_seed: u64,
    pub best_fitness: f64,
    pub evaluations_to_best: u64,
    pub nonlinearity: u32,
    pub is_bent: bool,
    pub is_self_dual: bool,
    pub is_anti_self_dual: bool,
    pub wall_time_ms: f64,
    pub genome: String,
}

impl From<&RunRecord> for CsvRow {
    fn from(r: &RunRecord) -> Self {
        Self {
            run_index: r.run_index,
            rng_seed: r.rng_seed,
            best_fitness: r.best_fitness.value,
            evaluations_to_best: r.evaluations_to_best,
            nonlinearity: r.best_report.nonlinearity,
            is_bent: r.best_report.is_bent,
            is_self_dual: r.best_report.is_self_dual,
            is_anti_self_dual: r.best_report.is_anti_self_dual,
            wall_time_ms: r.wall_time_ms,
            genome: r.best_genome.clone(),
        }
    }
}

pub fn write_runs_csv<W: Write>(records: &[RunRecord], out: W) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_runs_csv<R: Read>(input: R) -> anyhow::Result<Vec<CsvRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let rows = rd.deserialize().collect::<Result<Vec<CsvRow>, _>>()?;
    Ok(rows)
}

/// Box-plot data of a campaign: fitness and nonlinearity distributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distributions {
    pub fitness: FiveNumber,
    pub nonlinearity: FiveNumber,
}

impl Distributions {
    pub fn from_rows(rows: &[CsvRow]) -> Option<Self> {
        let fit: Vec<f64> = rows.iter().map(|r| r.best_fitness).collect();
        let nl: Vec<f64> = rows.iter().map(|r| r.nonlinearity as f64).collect();
        Some(Self {
            fitness: FiveNumber::of(&fit)?,
            nonlinearity: FiveNumber::of(&nl)?,
        })
    }
}

/// Contents of `summary.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryFile {
    pub experiment: serde_json::Value,
    pub config: EngineConfig,
    pub summary: crate::engine::CampaignSummary,
    /// Per-run triviality flags of construction campaigns.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trivial: Option<Vec<bool>>,
    /// Seed sets of construction campaigns, as truth-table records.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed_sets: Option<Vec<Vec<String>>>,
}

/// Files written by [`write_outputs`].
pub const RUNS_CSV: &str = "runs.csv";
pub const SUMMARY_JSON: &str = "summary.json";
pub const BEST_GENOMES: &str = "best_genomes.txt";

/// Writes `runs.csv`, `summary.json` and `best_genomes.txt` into `dir`.
pub fn write_outputs(
    dir: &Path,
    experiment: &impl Serialize,
    campaign: &Campaign,
    seed_sets: Option<&[SeedSet]>,
) -> anyhow::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let csv_path = dir.join(RUNS_CSV);
    let file =
        fs::File::create(&csv_path).with_context(|| format!("writing {}", csv_path.display()))?;
    write_runs_csv(&campaign.records, file)?;

    let trivial = campaign
        .records
        .iter()
        .map(|r| r.best_trivial)
        .collect::<Option<Vec<bool>>>();
    let summary = SummaryFile {
        experiment: serde_json::to_value(experiment)?,
        config: campaign.config,
        summary: campaign.summary.clone(),
        trivial,
        seed_sets: seed_sets.map(|sets| {
            sets.iter()
                .map(|s| s.seeds().iter().map(TruthTable::to_record).collect())
                .collect()
        }),
    };
    let json_path = dir.join(SUMMARY_JSON);
    fs::write(&json_path, serde_json::to_string_pretty(&summary)? + "\n")
        .with_context(|| format!("writing {}", json_path.display()))?;

    let genomes_path = dir.join(BEST_GENOMES);
    let mut text = String::new();
    for r in &campaign.records {
        writeln!(text, "{}\t{}", r.run_index, r.best_genome)?;
    }
    fs::write(&genomes_path, text)
        .with_context(|| format!("writing {}", genomes_path.display()))?;
    Ok(vec![csv_path, json_path, genomes_path])
}

/// Reads a seed pool file (one truth-table record per line).
pub fn load_pool(path: &Path) -> anyhow::Result<Vec<TruthTable>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let pool = parse_records(&text).with_context(|| format!("parsing {}", path.display()))?;
    if pool.is_empty() {
        bail!("{} holds no truth tables", path.display());
    }
    Ok(pool)
}

/// Everything `analyze` prints for one function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Analysis {
    pub table: String,
    pub n: usize,
    pub report: SpectralReport,
    /// `[fit1, fit2]` for the self-dual target; absent for odd `n`.
    pub self_dual_fitness: Option<[FitnessValue; 2]>,
    /// `[fit1, fit2]` for the anti-self-dual target; absent for odd `n`.
    pub anti_self_dual_fitness: Option<[FitnessValue; 2]>,
    pub dual: Option<String>,
}

pub fn analyze(tt: &TruthTable) -> Analysis {
    let ws = wht_fast(tt);
    let scores = |anti: bool| -> Option<[FitnessValue; 2]> {
        Some([fit1(tt, &ws, anti).ok()?, fit2(tt, &ws, anti).ok()?])
    };
    Analysis {
        table: tt.to_record(),
        n: tt.n(),
        report: classify_with(tt, &ws),
        self_dual_fitness: scores(false),
        anti_self_dual_fitness: scores(true),
        dual: dual_of_spectrum(&ws).ok().map(|d| d.to_record()),
    }
}

/// Parses records (with line-numbered errors) and analyses each one.
pub fn analyze_text(text: &str) -> crate::Result<Vec<Analysis>> {
    Ok(parse_records(text)?.iter().map(analyze).collect())
}

pub fn render_analysis(a: &Analysis) -> String {
    let r = &a.report;
    let kind = if r.is_self_dual {
        "self-dual bent"
    } else if r.is_anti_self_dual {
        "anti-self-dual bent"
    } else if r.is_bent {
        "bent"
    } else {
        "not bent"
    };
    let mut out = format!(
        "{}\n  {kind}, nl={}, max|W|={}\n",
        a.table, r.nonlinearity, r.max_abs_coeff
    );
    let fmt = |label: &str, v: &Option<[FitnessValue; 2]>| match v {
        Some([f1, f2]) => format!("  {label}: fit1={} fit2={}\n", f1.value, f2.value),
        None => format!("  {label}: undefined for odd n\n"),
    };
    out += &fmt("self-dual target", &a.self_dual_fitness);
    out += &fmt("anti-self-dual target", &a.anti_self_dual_fitness);
    if let Some(d) = &a.dual {
        let _ = writeln!(out, "  dual: {d}");
    }
    out
}

/// Exhaustive census for `n ∈ {2, 4}`, or a sampled one when `samples` is
/// given. Returns the self-dual witnesses of exhaustive runs.
pub fn enumerate(
    n: usize,
    samples: Option<u64>,
    seed: u64,
) -> crate::Result<(CensusReport, Vec<TruthTable>)> {
    match samples {
        Some(k) => {
            let mut rng = RunRng::seed_from_u64(seed);
            Ok((census_sampled(n, k, &mut rng)?, Vec::new()))
        }
        None => {
            let c = census(n)?;
            Ok((c.report, c.self_dual))
        }
    }
}

pub fn render_census(r: &CensusReport) -> String {
    format!(
        "n={} {}={} bent={} self-dual={} anti-self-dual={}",
        r.n,
        if r.sampled { "sampled" } else { "examined" },
        r.examined,
        r.count_bent,
        r.count_self_dual,
        r.count_anti_self_dual
    )
}

/// One line per run followed by the summary.
pub fn render_campaign(c: &Campaign) -> String {
    let mut out = String::new();
    for r in &c.records {
        let _ = writeln!(
            out,
            "run {:>3}  best {:>12.4}  at eval {:>8}  nl {:>6}  bent {:5}  sd {:5}  asd {:5}{}",
            r.run_index,
            r.best_fitness.value,
            r.evaluations_to_best,
            r.best_report.nonlinearity,
            r.best_report.is_bent,
            r.best_report.is_self_dual,
            r.best_report.is_anti_self_dual,
            match r.best_trivial {
                Some(true) => "  trivial",
                _ => "",
            }
        );
    }
    let s = &c.summary;
    let _ = writeln!(
        out,
        "{} / {} runs reached {}; best {} (run {}); median {}; quartiles [{}, {}]",
        s.successes,
        s.runs,
        s.optimum,
        s.best_fitness,
        s.best_run,
        s.fitness.median,
        s.fitness.q1,
        s.fitness.q3
    );
    out
}
