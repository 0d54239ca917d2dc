//! End-to-end acceptance checks. Runs as a plain program and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::panic;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bentsmith::construction::{
    expand, is_trivial, score_detailed, ConstructionTask, Scheme, SeedRole, SeedSet,
};
use bentsmith::engine::{run_campaign, EngineConfig};
use bentsmith::experiment::{
    build_construction_task, run_construction, run_evolve, ConstructionSpec, Encoding, EvolveSpec,
};
use bentsmith::fitness::{fit1, fit2, Objective};
use bentsmith::genome::tree::{
    eval_tree, random_tree, DepthPolicy, DepthRule, Evaluator, ExprTree,
};
use bentsmith::oracle::{census, wht_direct};
use bentsmith::problem::TreeProblem;
use bentsmith::spectrum::{covering_radius_bound, dual};
use bentsmith::{classify, wht_fast, ObjectiveKind, TruthTable};

fn engine(evals: u64, reps: usize, seed: u64) -> EngineConfig {
    EngineConfig {
        population_size: 500,
        max_evaluations: evals,
        repetitions: reps,
        rng_seed: seed,
        ..EngineConfig::default()
    }
}

fn all_functions(n: usize) -> impl Iterator<Item = TruthTable> {
    (0u64..1 << (1 << n)).map(move |code| TruthTable::from_fn(n, |i| (code >> i) & 1 == 1).unwrap())
}

fn census_exactness() -> Result<String> {
    let start = Instant::now();
    let run = |n: &str| -> Result<String> {
        let o = Command::new(env!("CARGO_BIN_EXE_bentsmith"))
            .args(["enumerate", "--n", n])
            .output()?;
        ensure!(o.status.success(), "enumerate --n {n} failed");
        Ok(String::from_utf8(o.stdout)?.trim().to_string())
    };
    let two = run("2")?;
    let four = run("4")?;
    ensure!(
        two == "n=2 examined=16 bent=8 self-dual=2 anti-self-dual=2",
        "{two}"
    );
    ensure!(
        four == "n=4 examined=65536 bent=896 self-dual=20 anti-self-dual=20",
        "{four}"
    );
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(60), "took {t:?}");
    Ok(format!("{four} ({:.2}s)", t.as_secs_f64()))
}

fn transform_equivalence() -> Result<String> {
    let start = Instant::now();
    let mut checked = 0;
    for n in [2, 3] {
        for tt in all_functions(n) {
            ensure!(wht_fast(&tt) == wht_direct(&tt)?, "mismatch on {tt}");
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [4, 6, 8, 10] {
        for _ in 0..1000 {
            let tt = TruthTable::random(n, &mut rng)?;
            ensure!(wht_fast(&tt) == wht_direct(&tt)?, "mismatch on {tt}");
            checked += 1;
        }
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(30), "took {t:?}");
    Ok(format!("{checked} functions ({:.2}s)", t.as_secs_f64()))
}

fn spectral_invariants() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..10_000 {
        let n = 2 + k % 11;
        let tt = TruthTable::random(n, &mut rng)?;
        let ws = wht_fast(&tt);
        ensure!(ws.energy() == 1u64 << (2 * n), "Parseval fails on {tt}");
        ensure!(
            classify(&tt).nonlinearity <= covering_radius_bound(n),
            "bound exceeded on {tt}"
        );
    }
    let mut bent = 0;
    for tt in all_functions(4) {
        if classify(&tt).is_bent {
            ensure!(dual(&dual(&tt)?)? == tt, "involution fails on {tt}");
            bent += 1;
        }
    }
    ensure!(bent == 896);
    Ok(format!("10000 random functions, {bent} bent duals"))
}

fn fitness_semantics() -> Result<String> {
    for tt in all_functions(4) {
        let ws = wht_fast(&tt);
        let r = classify(&tt);
        ensure!(
            (fit1(&tt, &ws, false)?.integer_part == 16) == r.is_self_dual,
            "sd fit1 on {tt}"
        );
        ensure!(
            (fit1(&tt, &ws, true)?.integer_part == 16) == r.is_anti_self_dual,
            "asd fit1 on {tt}"
        );
        if r.is_self_dual {
            ensure!(fit2(&tt, &ws, false)?.value == 16.0, "fit2 optimum on {tt}");
        }
        if r.is_anti_self_dual {
            ensure!(fit2(&tt, &ws, true)?.value == 16.0, "fit2 optimum on {tt}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..10_000 {
        let n = if k % 2 == 0 { 6 } else { 8 };
        let tt = TruthTable::random(n, &mut rng)?;
        let ws = wht_fast(&tt);
        for anti in [false, true] {
            let (a, b) = (fit1(&tt, &ws, anti)?, fit2(&tt, &ws, anti)?);
            ensure!(
                b.integer_part == a.integer_part && b.value.floor() as u64 == a.integer_part,
                "{tt}"
            );
        }
    }
    for n in [2, 4, 6, 8] {
        ensure!(Objective::new(ObjectiveKind::SelfDualFit2, n)?.optimum() == 1 << n);
    }
    Ok("n=4 census and 10000 random functions".into())
}

fn direct_evolution() -> Result<String> {
    let mut parts = Vec::new();
    for (n, needed) in [(6usize, 8usize), (8, 1)] {
        let spec = EvolveSpec {
            encoding: Encoding::Gp,
            objective: ObjectiveKind::SelfDualFit1,
            n,
            engine: engine(1_000_000, 10, 5000 + n as u64),
            depth: DepthPolicy::for_vars(n, DepthRule::Max),
            jobs: None,
        };
        let campaign = run_evolve(&spec)?;
        let target_nl = (1u32 << (n - 1)) - (1u32 << (n / 2 - 1));
        for r in campaign.records.iter().filter(|r| r.reached_optimum) {
            let tree: ExprTree = r.best_genome.parse()?;
            let report = classify(&eval_tree(&tree, n)?);
            ensure!(
                report.is_bent && report.is_self_dual,
                "run {} claims an optimum that is not self-dual",
                r.run_index
            );
            ensure!(
                report.nonlinearity == target_nl,
                "run {} has nl {}",
                r.run_index,
                report.nonlinearity
            );
        }
        let hits = campaign.summary.successes;
        ensure!(hits >= needed, "n={n}: {hits}/10 runs reached {}", 1 << n);
        parts.push(format!("n={n} {hits}/10 reached {}", 1 << n));
    }
    Ok(parts.join(", "))
}

fn encoding_gap() -> Result<String> {
    let spec = EvolveSpec {
        encoding: Encoding::Tt,
        objective: ObjectiveKind::SelfDualFit1,
        n: 8,
        engine: engine(1_000_000, 10, 6000),
        depth: DepthPolicy::for_vars(8, DepthRule::Max),
        jobs: None,
    };
    let campaign = run_evolve(&spec)?;
    ensure!(campaign.records.len() == 10);
    ensure!(
        campaign
            .records
            .iter()
            .all(|r| r.best_fitness.integer_part < 256),
        "a bitstring run reached 256"
    );
    let best: Vec<String> = campaign
        .records
        .iter()
        .map(|r| r.best_fitness.integer_part.to_string())
        .collect();
    Ok(format!("bitstring best fit1 per run: {}", best.join(" ")))
}

fn construction_semantics() -> Result<String> {
    let tree: ExprTree = "IF(x0, f0, XOR(x1, f1))".parse()?;
    let trivial: ExprTree = "XOR(AND(x0, x1), f0)".parse()?;
    let pool: Vec<TruthTable> = all_functions(4).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs = 0;
    let mut check = |f0: &TruthTable, f1: &TruthTable| -> Result<()> {
        let set = SeedSet::new(vec![f0.clone(), f1.clone()])?;
        let big = expand(&tree, &set)?;
        for i in 0..64 {
            let (x0, x1, y) = (i >> 5 & 1 == 1, i >> 4 & 1 == 1, i & 15);
            let want = if x0 { f0.get(y) } else { x1 ^ f1.get(y) };
            ensure!(
                big.get(i) == want,
                "case split differs for {f0}, {f1} at {i}"
            );
        }
        let related = f0.xor(f1)?.is_constant();
        ensure!(
            is_trivial(&tree, &set)? == related,
            "triviality of the example tree on {f0}, {f1}"
        );
        ensure!(
            is_trivial(&trivial, &set)?,
            "x0x1+f0 not flagged on {f0}, {f1}"
        );
        pairs += 1;
        Ok(())
    };
    let c = census(4)?;
    for fam in [&c.self_dual, &c.anti_self_dual] {
        for f0 in fam.iter() {
            for f1 in fam.iter() {
                check(f0, f1)?;
            }
        }
    }
    use rand::seq::SliceRandom;
    for _ in 0..20_000 {
        let f0 = pool.choose(&mut rng).unwrap();
        let f1 = pool.choose(&mut rng).unwrap();
        check(f0, f1)?;
        check(f0, &f0.complement())?;
    }
    Ok(format!("{pairs} seed pairs at n=4"))
}

/// Self-dual functions of `n` variables found by direct tree evolution.
fn evolved_pool(n: usize, wanted: usize) -> Result<Vec<TruthTable>> {
    let problem = TreeProblem::new(
        ObjectiveKind::SelfDualFit1,
        n,
        DepthPolicy::for_vars(n, DepthRule::Max),
    )?;
    let campaign = run_campaign(&engine(1_000_000, wanted + 8, 8080), &problem, None)?;
    let mut pool: Vec<TruthTable> = Vec::new();
    for r in campaign.records.iter().filter(|r| r.reached_optimum) {
        let tt = eval_tree(&r.best_genome.parse()?, n)?;
        if !pool.contains(&tt) {
            pool.push(tt);
        }
    }
    ensure!(pool.len() >= 4, "only {} distinct seeds", pool.len());
    pool.truncate(wanted);
    Ok(pool)
}

fn construction_search() -> Result<String> {
    let mut parts = Vec::new();
    let pools = [(4usize, census(4)?.self_dual), (6, evolved_pool(6, 16)?)];
    for (m, pool) in &pools {
        for scheme in [Scheme::Concurrent, Scheme::Incremental] {
            let spec = ConstructionSpec {
                objective: ObjectiveKind::SelfDualFit2,
                scheme,
                sets: 4,
                seeds_per_set: 4,
                role: SeedRole::SelfDual,
                reject_trivial: true,
                engine: engine(30_000, 2, 800 + *m as u64),
                depth: DepthPolicy::for_vars(m + 2, DepthRule::Max),
                jobs: None,
            };
            let task = build_construction_task(&spec, pool)?;
            let target = 4u64 << (m + 2);
            ensure!(
                task.optimum() == target,
                "target {} != {target}",
                task.optimum()
            );
            let campaign = run_construction(&spec, task.clone())?;
            let mut ev = Evaluator::new();
            for r in &campaign.records {
                let tree: ExprTree = r.best_genome.parse()?;
                let score = score_detailed(&tree, &task, &mut ev)?;
                let first_perfect = task.objective().is_optimal(&score.per_set[0]);
                match scheme {
                    Scheme::Incremental => {
                        ensure!(score.sets_evaluated() == if first_perfect { 4 } else { 1 })
                    }
                    Scheme::Concurrent => ensure!(score.sets_evaluated() == 4),
                }
                let trivial = is_trivial(&tree, &task.seed_sets()[0])?;
                if trivial {
                    ensure!(
                        r.best_fitness.value == 0.0,
                        "trivial construction scored {}",
                        r.best_fitness.value
                    );
                } else {
                    ensure!(
                        score.total.value == r.best_fitness.value,
                        "reported score does not reproduce"
                    );
                }
                if r.reached_optimum {
                    ensure!(!trivial, "trivial optimum reported");
                    for set in task.seed_sets() {
                        let rep = classify(&expand(&tree, set)?);
                        ensure!(
                            rep.is_self_dual,
                            "claimed optimum is not self-dual on every set"
                        );
                    }
                }
            }
            parts.push(format!(
                "{}->{} {}: best {:.2}/{target}",
                m,
                m + 2,
                scheme,
                campaign.summary.best_fitness
            ));
        }
    }
    // Without the filter, trivial optima are still flagged.
    let spec = ConstructionSpec {
        objective: ObjectiveKind::SelfDualFit1,
        scheme: Scheme::Concurrent,
        sets: 4,
        seeds_per_set: 4,
        role: SeedRole::SelfDual,
        reject_trivial: false,
        engine: engine(30_000, 2, 901),
        depth: DepthPolicy::for_vars(6, DepthRule::Max),
        jobs: None,
    };
    let task = build_construction_task(&spec, &pools[0].1)?;
    let campaign = run_construction(&spec, task)?;
    for r in campaign.records.iter().filter(|r| r.reached_optimum) {
        ensure!(
            r.best_trivial.is_some(),
            "optimum without a triviality flag"
        );
    }
    let flagged = campaign.summary.trivial_runs.unwrap_or(0);
    parts.push(format!(
        "unfiltered 4->6: {flagged}/2 optima flagged trivial"
    ));

    // Gating on random trees.
    let task = ConstructionTask::new(
        build_construction_task(&spec, &pools[0].1)?
            .seed_sets()
            .to_vec(),
        Scheme::Incremental,
        ObjectiveKind::SelfDualFit1,
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut ev = Evaluator::new();
    for _ in 0..5000 {
        let tree = random_tree(&mut rng, &task.terminals(), DepthPolicy::new(4)?);
        let s = score_detailed(&tree, &task, &mut ev)?;
        if !task.objective().is_optimal(&s.per_set[0]) && s.sets_evaluated() != 1 {
            bail!("incremental scored later sets without a perfect first set");
        }
    }
    Ok(parts.join("; "))
}

fn large_sizes_analytic() -> Result<String> {
    ensure!(covering_radius_bound(16) == 32640);
    ensure!(covering_radius_bound(14) == 8128);
    let ip = TruthTable::from_fn(16, |i| ((i >> 8) & i & 0xff).count_ones() % 2 == 1)?;
    let r = classify(&ip);
    ensure!(r.nonlinearity == 32640 && r.is_self_dual);
    for n in [14, 16] {
        let spec = EvolveSpec {
            encoding: Encoding::Gp,
            objective: ObjectiveKind::SelfDualFit2,
            n,
            engine: engine(1_000_000, 30, 0),
            depth: DepthPolicy::for_vars(n, DepthRule::Max),
            jobs: None,
        };
        spec.engine.validate()?;
        TreeProblem::new(spec.objective, n, spec.depth)?;
    }
    Ok(
        "bound(16)=32640 matches a self-dual inner product; n=14/16 campaigns configured, not run"
            .into(),
    )
}

type Check = fn() -> Result<String>;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("census exactness", census_exactness),
        ("transform equivalence", transform_equivalence),
        ("spectral invariants", spectral_invariants),
        ("fitness semantics", fitness_semantics),
        ("direct evolution at n=6 and n=8", direct_evolution),
        ("bitstring encoding gap at n=8", encoding_gap),
        ("construction semantics", construction_semantics),
        ("construction search harness", construction_search),
        ("n=14/16 analytic check", large_sizes_analytic),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            panic::catch_unwind(check).unwrap_or_else(|_| Err(anyhow::anyhow!("panicked")));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.1}s]", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e:#} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
