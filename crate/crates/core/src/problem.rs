//! Ready-made [`Problem`]s: direct search with either encoding, and
//! construction search over seed sets.

use crate::construction::{score_detailed, trivial_table, ConstructionTask};
use crate::engine::{Problem, RunRng};
use crate::error::Result;
use crate::fitness::{FitnessValue, Objective, ObjectiveKind};
use crate::genome::bitstring::{self, BitGenome};
use crate::genome::tree::{self, Bindings, DepthPolicy, Evaluator, ExprTree, Leaf};
use crate::spectrum::{classify, classify_with, wht_fast, SpectralReport};

/// Truth-table encoding.
#[derive(Debug, Clone)]
pub struct BitstringProblem {
    objective: Objective,
}

impl BitstringProblem {
    pub fn new(kind: ObjectiveKind, n: usize) -> Result<Self> {
        Ok(Self {
            objective: Objective::new(kind, n)?,
        })
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }
}

impl Problem for BitstringProblem {
    type Genome = BitGenome;

    fn random_genome(&self, rng: &mut RunRng) -> BitGenome {
        BitGenome::random(self.objective.n, rng).expect("validated variable count")
    }

    fn crossover(&self, a: &BitGenome, b: &BitGenome, rng: &mut RunRng) -> BitGenome {
        bitstring::crossover(a, b, rng).expect("equal sizes").1
    }

    fn mutate(&self, g: &BitGenome, rng: &mut RunRng) -> BitGenome {
        bitstring::mutate(g, rng).1
    }

    fn evaluate(&mut self, g: &BitGenome) -> FitnessValue {
        let tt = g.table();
        self.objective
            .evaluate(tt, &wht_fast(tt))
            .expect("matching sizes")
    }

    fn optimum(&self) -> u64 {
        self.objective.optimum()
    }

    fn describe(&self, g: &BitGenome) -> String {
        g.table().to_record()
    }

    fn report(&mut self, g: &BitGenome) -> SpectralReport {
        classify(g.table())
    }
}

/// Tree encoding over `x1..xn`.
#[derive(Debug, Clone)]
pub struct TreeProblem {
    objective: Objective,
    policy: DepthPolicy,
    bindings: Bindings,
    terminals: Vec<Leaf>,
    evaluator: Evaluator,
}

impl TreeProblem {
    pub fn new(kind: ObjectiveKind, n: usize, policy: DepthPolicy) -> Result<Self> {
        let objective = Objective::new(kind, n)?;
        let bindings = Bindings::direct(n)?;
        Ok(Self {
            objective,
            policy,
            terminals: bindings.terminals(),
            bindings,
            evaluator: Evaluator::new(),
        })
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn policy(&self) -> DepthPolicy {
        self.policy
    }
}

impl Problem for TreeProblem {
    type Genome = ExprTree;

    fn random_genome(&self, rng: &mut RunRng) -> ExprTree {
        tree::random_tree(rng, &self.terminals, self.policy)
    }

    fn crossover(&self, a: &ExprTree, b: &ExprTree, rng: &mut RunRng) -> ExprTree {
        tree::cx_tree(a, b, self.policy, rng).1
    }

    fn mutate(&self, g: &ExprTree, rng: &mut RunRng) -> ExprTree {
        tree::mut_subtree(g, self.policy, &self.terminals, rng)
    }

    fn evaluate(&mut self, g: &ExprTree) -> FitnessValue {
        let tt = self
            .evaluator
            .eval(g, &self.bindings)
            .expect("terminals come from the bindings");
        self.objective
            .evaluate(&tt, &wht_fast(&tt))
            .expect("matching sizes")
    }

    fn optimum(&self) -> u64 {
        self.objective.optimum()
    }

    fn describe(&self, g: &ExprTree) -> String {
        g.to_string()
    }

    fn report(&mut self, g: &ExprTree) -> SpectralReport {
        let tt = self
            .evaluator
            .eval(g, &self.bindings)
            .expect("terminals come from the bindings");
        classify_with(&tt, &wht_fast(&tt))
    }
}

/// Construction search. With `reject_trivial`, constructions that are a
/// single seed plus a function of `x0, x1` on the first seed set score zero.
#[derive(Debug, Clone)]
pub struct ConstructionProblem {
    task: ConstructionTask,
    policy: DepthPolicy,
    terminals: Vec<Leaf>,
    evaluator: Evaluator,
    reject_trivial: bool,
}

impl ConstructionProblem {
    pub fn new(task: ConstructionTask, policy: DepthPolicy, reject_trivial: bool) -> Self {
        Self {
            terminals: task.terminals(),
            task,
            policy,
            evaluator: Evaluator::new(),
            reject_trivial,
        }
    }

    pub fn task(&self) -> &ConstructionTask {
        &self.task
    }

    fn first_table(&mut self, g: &ExprTree) -> crate::truth_table::TruthTable {
        self.evaluator
            .eval(g, self.task.seed_sets()[0].bindings())
            .expect("terminals come from the seed set")
    }
}

impl Problem for ConstructionProblem {
    type Genome = ExprTree;

    fn random_genome(&self, rng: &mut RunRng) -> ExprTree {
        tree::random_tree(rng, &self.terminals, self.policy)
    }

    fn crossover(&self, a: &ExprTree, b: &ExprTree, rng: &mut RunRng) -> ExprTree {
        tree::cx_tree(a, b, self.policy, rng).1
    }

    fn mutate(&self, g: &ExprTree, rng: &mut RunRng) -> ExprTree {
        tree::mut_subtree(g, self.policy, &self.terminals, rng)
    }

    fn evaluate(&mut self, g: &ExprTree) -> FitnessValue {
        if self.reject_trivial && self.trivial(g) == Some(true) {
            return FitnessValue::ZERO;
        }
        score_detailed(g, &self.task, &mut self.evaluator)
            .expect("terminals come from the seed set")
            .total
    }

    fn optimum(&self) -> u64 {
        self.task.optimum()
    }

    fn describe(&self, g: &ExprTree) -> String {
        g.to_string()
    }

    /// Properties of the construction on the first seed set.
    fn report(&mut self, g: &ExprTree) -> SpectralReport {
        classify(&self.first_table(g))
    }

    fn trivial(&mut self, g: &ExprTree) -> Option<bool> {
        let tt = self.first_table(g);
        Some(trivial_table(&tt, &self.task.seed_sets()[0]))
    }
}
