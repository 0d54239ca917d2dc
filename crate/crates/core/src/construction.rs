//! Secondary constructions: trees over two fresh variables `x0`, `x1` and
//! seed functions `f0..f3` of `m` variables, read as functions of `m + 2`
//! variables and scored over several seed sets at once.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitness::{FitnessValue, Objective, ObjectiveKind};
use crate::genome::tree::{Bindings, Evaluator, ExprTree, Leaf};
use crate::spectrum::{classify, wht_fast};
use crate::truth_table::{TruthTable, MAX_VARS};

/// Maximum number of seed terminals.
pub const MAX_SEEDS: usize = 4;

/// Property every seed of a set must have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeedRole {
    SelfDual,
    AntiSelfDual,
    Bent,
    Any,
}

impl SeedRole {
    fn admits(self, tt: &TruthTable) -> bool {
        let r = classify(tt);
        match self {
            SeedRole::SelfDual => r.is_self_dual,
            SeedRole::AntiSelfDual => r.is_anti_self_dual,
            SeedRole::Bent => r.is_bent,
            SeedRole::Any => true,
        }
    }
}

impl FromStr for SeedRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "self-dual" => Ok(SeedRole::SelfDual),
            "anti-self-dual" => Ok(SeedRole::AntiSelfDual),
            "bent" => Ok(SeedRole::Bent),
            "any" => Ok(SeedRole::Any),
            other => Err(Error::Parse(format!(
                "unknown seed role {other:?} (self-dual|anti-self-dual|bent|any)"
            ))),
        }
    }
}

/// Seeds bound to `f0, f1, ...` in order.
#[derive(Debug, Clone)]
pub struct SeedSet {
    seeds: Vec<TruthTable>,
    bindings: Bindings,
}

impl SeedSet {
    pub fn new(seeds: Vec<TruthTable>) -> Result<Self> {
        if seeds.is_empty() || seeds.len() > MAX_SEEDS {
            return Err(Error::InvalidSeedSet(format!(
                "expected 1..={MAX_SEEDS} seeds, got {}",
                seeds.len()
            )));
        }
        if seeds[0].n() + 2 > MAX_VARS {
            return Err(Error::InvalidSeedSet(format!(
                "seeds of {} variables would exceed {MAX_VARS} variables",
                seeds[0].n()
            )));
        }
        let bindings = Bindings::construction(&seeds)?;
        Ok(Self { seeds, bindings })
    }

    /// Rejects the set unless every seed has `role`.
    pub fn require(self, role: SeedRole) -> Result<Self> {
        if let Some(i) = self.seeds.iter().position(|s| !role.admits(s)) {
            return Err(Error::InvalidSeedSet(format!("seed f{i} is not {role:?}")));
        }
        Ok(self)
    }

    /// Seed variable count.
    pub fn n(&self) -> usize {
        self.seeds[0].n()
    }

    pub fn seeds(&self) -> &[TruthTable] {
        &self.seeds
    }

    pub fn bindings(&self) -> &Bindings {
        &self.bindings
    }

    /// `x0, x1, f0..` for this set.
    pub fn terminals(&self) -> Vec<Leaf> {
        self.bindings.terminals()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// Sets after the first are scored only once the first is optimal.
    Incremental,
    /// Every set is scored.
    Concurrent,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Incremental => "incremental",
            Scheme::Concurrent => "concurrent",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "incremental" => Ok(Scheme::Incremental),
            "concurrent" => Ok(Scheme::Concurrent),
            other => Err(Error::Parse(format!(
                "unknown scheme {other:?} (incremental|concurrent)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstructionTask {
    seed_sets: Vec<SeedSet>,
    scheme: Scheme,
    objective: Objective,
}

impl ConstructionTask {
    pub fn new(seed_sets: Vec<SeedSet>, scheme: Scheme, kind: ObjectiveKind) -> Result<Self> {
        let first = seed_sets
            .first()
            .ok_or_else(|| Error::InvalidSeedSet("a task needs at least one seed set".into()))?;
        let m = first.n();
        if let Some(bad) = seed_sets.iter().find(|s| s.n() != m) {
            return Err(Error::InvalidSeedSet(format!(
                "mixed seed sizes {m} and {}",
                bad.n()
            )));
        }
        if let Some(bad) = seed_sets
            .iter()
            .find(|s| s.seeds.len() != first.seeds.len())
        {
            return Err(Error::InvalidSeedSet(format!(
                "seed sets differ in size ({} vs {})",
                first.seeds.len(),
                bad.seeds.len()
            )));
        }
        let objective = Objective::new(kind, m + 2)?;
        Ok(Self {
            seed_sets,
            scheme,
            objective,
        })
    }

    pub fn seed_sets(&self) -> &[SeedSet] {
        &self.seed_sets
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Objective at `m + 2` variables.
    pub fn objective(&self) -> Objective {
        self.objective
    }

    /// Per-set optimum times the number of sets.
    pub fn optimum(&self) -> u64 {
        self.objective.optimum() * self.seed_sets.len() as u64
    }

    pub fn terminals(&self) -> Vec<Leaf> {
        self.seed_sets[0].terminals()
    }
}

/// Evaluates the construction on one seed set.
pub fn expand(tree: &ExprTree, set: &SeedSet) -> Result<TruthTable> {
    Evaluator::new().eval(tree, &set.bindings)
}

/// Per-set breakdown of a construction score.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionScore {
    pub total: FitnessValue,
    /// Scores of the sets actually evaluated, in order.
    pub per_set: Vec<FitnessValue>,
}

impl ConstructionScore {
    pub fn sets_evaluated(&self) -> usize {
        self.per_set.len()
    }
}

pub fn score_detailed(
    tree: &ExprTree,
    task: &ConstructionTask,
    ev: &mut Evaluator,
) -> Result<ConstructionScore> {
    let mut per_set = Vec::with_capacity(task.seed_sets.len());
    for (k, set) in task.seed_sets.iter().enumerate() {
        let tt = ev.eval(tree, &set.bindings)?;
        let v = task.objective.evaluate(&tt, &wht_fast(&tt))?;
        per_set.push(v);
        if k == 0 && task.scheme == Scheme::Incremental && !task.objective.is_optimal(&v) {
            break;
        }
    }
    Ok(ConstructionScore {
        total: per_set.iter().copied().sum(),
        per_set,
    })
}

/// Summed score under the task's scheme.
pub fn score_construction(tree: &ExprTree, task: &ConstructionTask) -> Result<FitnessValue> {
    score_detailed(tree, task, &mut Evaluator::new()).map(|s| s.total)
}

/// True when the construction is `g(x0, x1) ⊕ f_i(x)` for some seed `f_i`,
/// i.e. XOR-ing out one lifted seed leaves every `(x0, x1)` quadrant
/// constant.
pub fn is_trivial(tree: &ExprTree, set: &SeedSet) -> Result<bool> {
    let big = expand(tree, set)?;
    Ok(trivial_table(&big, set))
}

pub(crate) fn trivial_table(big: &TruthTable, set: &SeedSet) -> bool {
    let m = set.n();
    let q = 1usize << m;
    set.seeds.iter().any(|seed| {
        (0..4).all(|quadrant| {
            let base = quadrant * q;
            let first = big.get(base) ^ seed.get(0);
            (0..q).all(|x| big.get(base + x) ^ seed.get(x) == first)
        })
    })
}

/// Draws `sets` seed sets of `per_set` distinct seeds. Seeds are not reused
/// across sets unless the pool is too small for that.
pub fn sample_seed_sets<R: Rng + ?Sized>(
    pool: &[TruthTable],
    sets: usize,
    per_set: usize,
    rng: &mut R,
) -> Result<Vec<SeedSet>> {
    if per_set == 0 || per_set > MAX_SEEDS {
        return Err(Error::InvalidSeedSet(format!(
            "seeds per set must be 1..={MAX_SEEDS}"
        )));
    }
    if pool.len() < per_set {
        return Err(Error::InvalidSeedSet(format!(
            "pool of {} functions cannot fill a set of {per_set}",
            pool.len()
        )));
    }
    let groups: Vec<Vec<TruthTable>> = if pool.len() >= sets * per_set {
        let mut shuffled: Vec<&TruthTable> = pool.iter().collect();
        shuffled.shuffle(rng);
        shuffled
            .chunks(per_set)
            .take(sets)
            .map(|c| c.iter().map(|&t| t.clone()).collect())
            .collect()
    } else {
        (0..sets)
            .map(|_| pool.choose_multiple(rng, per_set).cloned().collect())
            .collect()
    };
    groups.into_iter().map(SeedSet::new).collect()
}
