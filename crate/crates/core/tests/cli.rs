use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bentsmith::experiment::{
    read_runs_csv, Distributions, SummaryFile, BEST_GENOMES, RUNS_CSV, SUMMARY_JSON,
};
use bentsmith::genome::tree::ExprTree;
use bentsmith::TruthTable;

fn bentsmith(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bentsmith"))
        .args(args)
        .env_remove("BENTSMITH_SEED")
        .env("RUST_BACKTRACE", "0")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn load(dir: &Path) -> (Vec<bentsmith::experiment::CsvRow>, SummaryFile) {
    let rows = read_runs_csv(fs::File::open(dir.join(RUNS_CSV)).unwrap()).unwrap();
    let summary: SummaryFile =
        serde_json::from_str(&fs::read_to_string(dir.join(SUMMARY_JSON)).unwrap()).unwrap();
    (rows, summary)
}

#[test]
fn enumerate_prints_the_census() {
    let out = stdout(&bentsmith(&["enumerate", "--n", "2"]));
    assert_eq!(
        out.trim(),
        "n=2 examined=16 bent=8 self-dual=2 anti-self-dual=2"
    );
    let out = stdout(&bentsmith(&[
        "enumerate",
        "--n",
        "8",
        "--samples",
        "50",
        "--seed",
        "1",
    ]));
    assert!(out.starts_with("n=8 sampled=50 "), "{out}");
}

#[test]
fn analyze_reads_records_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    fs::write(&path, "# comment\nn:4;tt:0356\n\nn:2;tt:6\n").unwrap();
    let out = stdout(&bentsmith(&["analyze", path.to_str().unwrap()]));
    assert!(out.contains("self-dual bent, nl=6"), "{out}");
    assert!(out.contains("n:2;tt:6"), "{out}");
    assert!(out.contains("nl=0"), "{out}");
}

#[test]
fn bad_inputs_fail_with_a_message() {
    for args in [
        &["evolve", "--n", "5", "--seed", "1"][..],
        &["evolve", "--n", "4", "--objective", "nope"],
        &["evolve", "--n", "4", "--pop", "2", "--seed", "1"],
        &["analyze", "/nonexistent/file"],
    ] {
        let o = bentsmith(args);
        assert!(!o.status.success(), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn evolve_writes_consistent_result_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let args = [
        "evolve",
        "--encoding",
        "gp",
        "--objective",
        "sd2",
        "--n",
        "6",
        "--pop",
        "100",
        "--evals",
        "20000",
        "--reps",
        "5",
        "--seed",
        "17",
        "--jobs",
        "2",
        "--out",
    ];
    let mut full: Vec<&str> = args.to_vec();
    full.push(out.to_str().unwrap());
    stdout(&bentsmith(&full));

    let (rows, summary) = load(&out);
    assert_eq!(rows.len(), 5);
    assert_eq!(summary.config.rng_seed, 17);
    assert_eq!(summary.summary.runs, 5);
    let dist = Distributions::from_rows(&rows).unwrap();
    assert_eq!(dist.fitness, summary.summary.fitness);
    assert_eq!(dist.nonlinearity, summary.summary.nonlinearity);
    let best = rows.iter().map(|r| r.best_fitness).fold(f64::MIN, f64::max);
    assert_eq!(best, summary.summary.best_fitness);

    for r in &rows {
        let tree: ExprTree = r.genome.parse().unwrap();
        let tt = bentsmith::genome::tree::eval_tree(&tree, 6).unwrap();
        let report = bentsmith::classify(&tt);
        assert_eq!(report.nonlinearity, r.nonlinearity);
        assert_eq!(report.is_self_dual, r.is_self_dual);
    }
    let genomes = fs::read_to_string(out.join(BEST_GENOMES)).unwrap();
    assert_eq!(genomes.lines().count(), 5);

    // Same seed, different thread count: identical rows apart from timing.
    let again = dir.path().join("again");
    let mut full: Vec<&str> = args.to_vec();
    *full.iter_mut().find(|a| **a == "2").unwrap() = "1";
    full.push(again.to_str().unwrap());
    stdout(&bentsmith(&full));
    let (rows2, _) = load(&again);
    let strip = |rows: &[bentsmith::experiment::CsvRow]| {
        rows.iter()
            .cloned()
            .map(|mut r| {
                r.wall_time_ms = 0.0;
                r
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&rows), strip(&rows2));
}

#[test]
fn bitstring_genomes_are_truth_table_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tt");
    stdout(&bentsmith(
        &[
            "evolve",
            "--encoding",
            "tt",
            "--objective",
            "asd1",
            "--n",
            "4",
            "--pop",
            "30",
            "--evals",
            "3000",
            "--reps",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]
        .iter()
        .copied()
        .chain(["--seed", "4"])
        .collect::<Vec<_>>(),
    ));
    let (rows, _) = load(&out);
    for r in rows {
        let tt: TruthTable = r.genome.parse().unwrap();
        assert_eq!(
            bentsmith::classify(&tt).is_anti_self_dual,
            r.is_anti_self_dual
        );
    }
}

#[test]
fn construction_campaign_from_emitted_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let pool = dir.path().join("pool.txt");
    stdout(&bentsmith(&[
        "enumerate",
        "--n",
        "4",
        "--emit-witnesses",
        pool.to_str().unwrap(),
    ]));
    assert_eq!(fs::read_to_string(&pool).unwrap().lines().count(), 20);

    let out = dir.path().join("cons");
    let text = stdout(&bentsmith(&[
        "evolve-construction",
        "--objective",
        "sd1",
        "--seeds",
        pool.to_str().unwrap(),
        "--scheme",
        "incremental",
        "--pop",
        "50",
        "--evals",
        "2000",
        "--reps",
        "2",
        "--seed",
        "9",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert!(text.contains("256"), "{text}");
    let (rows, summary) = load(&out);
    assert_eq!(rows.len(), 2);
    assert_eq!(summary.summary.optimum, 256);
    assert_eq!(summary.trivial.as_ref().map(Vec::len), Some(2));
    let sets = summary.seed_sets.unwrap();
    assert_eq!(sets.len(), 4);
    assert!(sets.iter().all(|s| s.len() == 4));
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_bentsmith"));
        c.args([
            "evolve",
            "--n",
            "4",
            "--pop",
            "20",
            "--evals",
            "300",
            "--reps",
            "2",
            "--no-early-stop",
        ]);
        match env {
            Some(v) => c.env("BENTSMITH_SEED", v),
            None => c.env_remove("BENTSMITH_SEED"),
        };
        let o = c.output().unwrap();
        (
            String::from_utf8(o.stdout).unwrap(),
            String::from_utf8(o.stderr).unwrap(),
        )
    };
    let (a, _) = run(Some("5"));
    let (b, _) = run(Some("5"));
    assert_eq!(a, b);
    let (_, err) = run(None);
    assert!(err.contains("no --seed"), "{err}");
}
