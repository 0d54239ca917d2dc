//! Expression-tree genome.
//!
//! Trees are stored as a flat prefix-order node vector: a node is followed by
//! the subtrees of its children, left to right. Evaluation runs over packed
//! truth-table words, so a single pass over the tree produces all `2^n`
//! outputs.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::truth_table::{index_bit_words, tail_mask, word_count, TruthTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Not,
    Or,
    Xor,
    And,
    /// `a AND NOT b`.
    And2,
    Xnor,
    /// `IF(c, t, e)` is `t` where `c = 1` and `e` elsewhere.
    If,
}

impl Op {
    pub const ALL: [Op; 7] = [
        Op::Not,
        Op::Or,
        Op::Xor,
        Op::And,
        Op::And2,
        Op::Xnor,
        Op::If,
    ];

    pub fn arity(self) -> usize {
        match self {
            Op::Not => 1,
            Op::If => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Not => "NOT",
            Op::Or => "OR",
            Op::Xor => "XOR",
            Op::And => "AND",
            Op::And2 => "AND2",
            Op::Xnor => "XNOR",
            Op::If => "IF",
        }
    }

    #[inline]
    fn apply2(self, a: u64, b: u64) -> u64 {
        match self {
            Op::Or => a | b,
            Op::Xor => a ^ b,
            Op::And => a & b,
            Op::And2 => a & !b,
            Op::Xnor => !(a ^ b),
            Op::Not | Op::If => unreachable!("not a binary operator"),
        }
    }

    /// Single-assignment semantics.
    pub fn apply_bits(self, args: &[bool]) -> bool {
        assert_eq!(args.len(), self.arity());
        match self {
            Op::Not => !args[0],
            Op::Or => args[0] || args[1],
            Op::Xor => args[0] != args[1],
            Op::And => args[0] && args[1],
            Op::And2 => args[0] && !args[1],
            Op::Xnor => args[0] == args[1],
            Op::If => {
                if args[0] {
                    args[1]
                } else {
                    args[2]
                }
            }
        }
    }
}

/// Terminal symbol. `Var(k)` prints as `xk`, `Seed(i)` as `fi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leaf {
    Var(u8),
    Seed(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Op(Op),
    Leaf(Leaf),
}

impl Node {
    pub fn arity(self) -> usize {
        match self {
            Node::Op(op) => op.arity(),
            Node::Leaf(_) => 0,
        }
    }
}

/// Maximum tree depth; a lone leaf has depth 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthPolicy {
    pub max_depth: usize,
}

/// How the default depth limit is derived from the variable count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DepthRule {
    /// `max(5, n - 5)`.
    #[default]
    Max,
    /// `min(5, n - 5)`, floored at 1.
    Min,
}

impl FromStr for DepthRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(DepthRule::Max),
            "min" => Ok(DepthRule::Min),
            other => Err(Error::Parse(format!(
                "unknown depth rule {other:?} (max|min)"
            ))),
        }
    }
}

impl DepthPolicy {
    pub fn new(max_depth: usize) -> Result<Self> {
        if max_depth == 0 {
            return Err(Error::ConfigInvalid("max_depth must be at least 1".into()));
        }
        Ok(Self { max_depth })
    }

    pub fn for_vars(n: usize, rule: DepthRule) -> Self {
        let shifted = n.saturating_sub(5);
        let max_depth = match rule {
            DepthRule::Max => shifted.max(5),
            DepthRule::Min => shifted.clamp(1, 5),
        };
        Self { max_depth }
    }
}

/// Prefix-encoded expression tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExprTree {
    nodes: Vec<Node>,
}

impl ExprTree {
    /// Validates arities of a prefix node sequence.
    pub fn from_nodes(nodes: Vec<Node>) -> Result<Self> {
        let mut open = 1usize;
        for (i, node) in nodes.iter().enumerate() {
            if open == 0 {
                return Err(Error::Parse(format!("trailing nodes after position {i}")));
            }
            open = open - 1 + node.arity();
        }
        if open != 0 || nodes.is_empty() {
            return Err(Error::Parse("incomplete prefix expression".into()));
        }
        Ok(Self { nodes })
    }

    pub fn leaf(leaf: Leaf) -> Self {
        Self {
            nodes: vec![Node::Leaf(leaf)],
        }
    }

    pub fn apply(op: Op, children: &[ExprTree]) -> Result<Self> {
        if children.len() != op.arity() {
            return Err(Error::Parse(format!(
                "{} takes {} arguments, got {}",
                op.name(),
                op.arity(),
                children.len()
            )));
        }
        let mut nodes = vec![Node::Op(op)];
        for c in children {
            nodes.extend_from_slice(&c.nodes);
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// One past the last node of the subtree rooted at `i`.
    pub fn subtree_end(&self, i: usize) -> usize {
        subtree_end(&self.nodes, i)
    }

    pub fn subtree(&self, i: usize) -> ExprTree {
        ExprTree {
            nodes: self.nodes[i..self.subtree_end(i)].to_vec(),
        }
    }

    /// Start indices of the children of node `i`.
    pub fn children(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes[i].arity());
        let mut next = i + 1;
        for _ in 0..self.nodes[i].arity() {
            out.push(next);
            next = self.subtree_end(next);
        }
        out
    }

    /// Depth of every node (root at 0).
    pub fn node_depths(&self) -> Vec<usize> {
        let mut depths = Vec::with_capacity(self.nodes.len());
        let mut pending = vec![0usize];
        for node in &self.nodes {
            let d = pending.pop().expect("well-formed prefix tree");
            depths.push(d);
            pending.extend(std::iter::repeat(d + 1).take(node.arity()));
        }
        depths
    }

    /// Height of the tree; a lone leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.node_depths().into_iter().max().unwrap_or(0)
    }

    /// Height of the subtree rooted at `i`.
    pub fn subtree_depth(&self, i: usize) -> usize {
        self.subtree(i).depth()
    }

    /// Copy with the subtree at `i` replaced by `donor`.
    pub fn replace_subtree(&self, i: usize, donor: &[Node]) -> ExprTree {
        let end = self.subtree_end(i);
        let mut nodes = Vec::with_capacity(self.nodes.len() - (end - i) + donor.len());
        nodes.extend_from_slice(&self.nodes[..i]);
        nodes.extend_from_slice(donor);
        nodes.extend_from_slice(&self.nodes[end..]);
        ExprTree { nodes }
    }

    pub fn leaves(&self) -> impl Iterator<Item = Leaf> + '_ {
        self.nodes.iter().filter_map(|n| match n {
            Node::Leaf(l) => Some(*l),
            Node::Op(_) => None,
        })
    }

    pub fn uses_seeds(&self) -> bool {
        self.leaves().any(|l| matches!(l, Leaf::Seed(_)))
    }
}

fn subtree_end(nodes: &[Node], i: usize) -> usize {
    let mut open = 1usize;
    let mut j = i;
    while open > 0 {
        open = open - 1 + nodes[j].arity();
        j += 1;
    }
    j
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Var(k) => write!(f, "x{k}"),
            Leaf::Seed(i) => write!(f, "f{i}"),
        }
    }
}

impl fmt::Display for ExprTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(
            nodes: &[Node],
            i: usize,
            f: &mut fmt::Formatter<'_>,
        ) -> std::result::Result<usize, fmt::Error> {
            match nodes[i] {
                Node::Leaf(l) => {
                    write!(f, "{l}")?;
                    Ok(i + 1)
                }
                Node::Op(op) => {
                    write!(f, "{}(", op.name())?;
                    let mut next = i + 1;
                    for k in 0..op.arity() {
                        if k > 0 {
                            f.write_str(", ")?;
                        }
                        next = go(nodes, next, f)?;
                    }
                    f.write_str(")")?;
                    Ok(next)
                }
            }
        }
        go(&self.nodes, 0, f).map(|_| ())
    }
}

impl fmt::Debug for ExprTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExprTree({self})")
    }
}

impl FromStr for ExprTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s,
            pos: 0,
            nodes: Vec::new(),
        };
        p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::Parse(format!(
                "unexpected input at byte {}: {:?}",
                p.pos,
                &s[p.pos..]
            )));
        }
        ExprTree::from_nodes(p.nodes)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    nodes: Vec<Node>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?} at byte {}", self.pos)))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(Error::Parse(format!(
                "expected a symbol at byte {}",
                self.pos
            )));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn expr(&mut self) -> Result<()> {
        let start = self.pos;
        let sym = self.ident()?.to_string();
        if let Some(op) = Op::ALL.into_iter().find(|op| op.name() == sym) {
            self.nodes.push(Node::Op(op));
            self.eat('(')?;
            for k in 0..op.arity() {
                if k > 0 {
                    self.eat(',')?;
                }
                self.expr()?;
            }
            return self.eat(')');
        }
        let leaf = parse_leaf(&sym)
            .ok_or_else(|| Error::Parse(format!("unknown symbol {sym:?} at byte {start}")))?;
        self.nodes.push(Node::Leaf(leaf));
        Ok(())
    }
}

fn parse_leaf(sym: &str) -> Option<Leaf> {
    let (kind, digits) = sym.split_at(1);
    let idx: u8 = digits.parse().ok()?;
    match kind {
        "x" => Some(Leaf::Var(idx)),
        "f" => Some(Leaf::Seed(idx)),
        _ => None,
    }
}

/// Packed truth tables bound to each terminal for one evaluation domain.
#[derive(Debug, Clone)]
pub struct Bindings {
    n: usize,
    vars: Vec<Option<Vec<u64>>>,
    seeds: Vec<Vec<u64>>,
}

impl Bindings {
    /// `x1..xn`, `x1` most significant.
    pub fn direct(n: usize) -> Result<Self> {
        crate::truth_table::check_n(n)?;
        let mut vars = vec![None];
        for k in 1..=n {
            vars.push(Some(index_bit_words(n, n - k)));
        }
        Ok(Self {
            n,
            vars,
            seeds: Vec::new(),
        })
    }

    /// `x0`, `x1` and seeds `f0..` over `m + 2` variables, where `m` is the
    /// seed variable count. `x0` is the most significant input, `x1` the
    /// next, and seeds read the low `m` bits.
    pub fn construction(seeds: &[TruthTable]) -> Result<Self> {
        let m = seeds
            .first()
            .map(TruthTable::n)
            .ok_or_else(|| Error::InvalidSeedSet("no seeds".into()))?;
        if let Some(bad) = seeds.iter().find(|s| s.n() != m) {
            return Err(Error::InvalidSeedSet(format!(
                "mixed seed sizes {m} and {}",
                bad.n()
            )));
        }
        let n = m + 2;
        crate::truth_table::check_n(n)?;
        let low = (1usize << m) - 1;
        let seeds = seeds
            .iter()
            .map(|s| {
                TruthTable::from_fn(n, |i| s.get(i & low))
                    .expect("checked variable count")
                    .into_words()
            })
            .collect();
        Ok(Self {
            n,
            vars: vec![
                Some(index_bit_words(n, n - 1)),
                Some(index_bit_words(n, n - 2)),
            ],
            seeds,
        })
    }

    /// Output variable count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed_count(&self) -> usize {
        self.seeds.len()
    }

    /// All terminals available in this domain.
    pub fn terminals(&self) -> Vec<Leaf> {
        let vars = self
            .vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_some())
            .map(|(k, _)| Leaf::Var(k as u8));
        let seeds = (0..self.seeds.len()).map(|i| Leaf::Seed(i as u8));
        vars.chain(seeds).collect()
    }

    pub fn check(&self, tree: &ExprTree) -> Result<()> {
        for leaf in tree.leaves() {
            self.table(leaf)?;
        }
        Ok(())
    }

    fn table(&self, leaf: Leaf) -> Result<&[u64]> {
        match leaf {
            Leaf::Var(k) => {
                self.vars
                    .get(k as usize)
                    .and_then(Option::as_deref)
                    .ok_or(Error::UnboundVariable {
                        index: k,
                        n: self.n,
                    })
            }
            Leaf::Seed(i) => self
                .seeds
                .get(i as usize)
                .map(Vec::as_slice)
                .ok_or(Error::MissingSeed(i)),
        }
    }
}

/// Reusable evaluation scratch space.
#[derive(Debug, Default, Clone)]
pub struct Evaluator {
    stack: Vec<u64>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, tree: &ExprTree, bindings: &Bindings) -> Result<TruthTable> {
        bindings.check(tree)?;
        let w = word_count(bindings.n);
        let stack = &mut self.stack;
        stack.clear();
        for node in tree.nodes.iter().rev() {
            match *node {
                Node::Leaf(leaf) => stack.extend_from_slice(bindings.table(leaf)?),
                Node::Op(Op::Not) => {
                    let len = stack.len();
                    stack[len - w..].iter_mut().for_each(|x| *x = !*x);
                }
                Node::Op(Op::If) => {
                    let len = stack.len();
                    let (rest, cond) = stack.split_at_mut(len - w);
                    let (rest, then) = rest.split_at_mut(len - 2 * w);
                    let els = &mut rest[len - 3 * w..];
                    for ((e, &t), &c) in els.iter_mut().zip(then.iter()).zip(cond.iter()) {
                        *e = (c & t) | (!c & *e);
                    }
                    stack.truncate(len - 2 * w);
                }
                Node::Op(op) => {
                    let len = stack.len();
                    let (rest, first) = stack.split_at_mut(len - w);
                    let second = &mut rest[len - 2 * w..];
                    for (s, &a) in second.iter_mut().zip(first.iter()) {
                        *s = op.apply2(a, *s);
                    }
                    stack.truncate(len - w);
                }
            }
        }
        debug_assert_eq!(stack.len(), w);
        let mut words = stack.clone();
        words[0] &= tail_mask(bindings.n);
        TruthTable::from_words(bindings.n, words)
    }
}

/// Evaluates a direct-mode tree over `x1..xn`.
pub fn eval_tree(tree: &ExprTree, n: usize) -> Result<TruthTable> {
    Evaluator::new().eval(tree, &Bindings::direct(n)?)
}

// ---------------------------------------------------------------------------
// Random generation and variation
// ---------------------------------------------------------------------------

fn random_node<R: Rng + ?Sized>(
    rng: &mut R,
    terminals: &[Leaf],
    allow_ops: bool,
    force_op: bool,
) -> Node {
    if force_op {
        return Node::Op(*Op::ALL.choose(rng).expect("ops"));
    }
    let total = terminals.len() + if allow_ops { Op::ALL.len() } else { 0 };
    let k = rng.gen_range(0..total);
    if k < terminals.len() {
        Node::Leaf(terminals[k])
    } else {
        Node::Op(Op::ALL[k - terminals.len()])
    }
}

/// Grows a random subtree no deeper than `max_depth`. With `full`, every
/// branch reaches exactly `max_depth`.
pub fn grow<R: Rng + ?Sized>(
    rng: &mut R,
    terminals: &[Leaf],
    max_depth: usize,
    full: bool,
) -> ExprTree {
    assert!(!terminals.is_empty(), "empty terminal set");
    let mut nodes = Vec::new();
    // Depth of each pending child slot.
    let mut pending = vec![0usize];
    while let Some(d) = pending.pop() {
        let node = random_node(rng, terminals, d < max_depth, full && d < max_depth);
        nodes.push(node);
        for _ in 0..node.arity() {
            pending.push(d + 1);
        }
    }
    ExprTree { nodes }
}

/// Ramped half-and-half: depth uniform in `[min(2, max), max]`, full or grow
/// with equal probability.
pub fn random_tree<R: Rng + ?Sized>(
    rng: &mut R,
    terminals: &[Leaf],
    policy: DepthPolicy,
) -> ExprTree {
    let lo = policy.max_depth.min(2);
    let depth = rng.gen_range(lo..=policy.max_depth);
    let full = rng.gen_bool(0.5);
    grow(rng, terminals, depth, full)
}

/// Replaces a uniformly chosen node with a freshly grown subtree that keeps
/// the tree within the depth limit.
pub fn mut_subtree<R: Rng + ?Sized>(
    tree: &ExprTree,
    policy: DepthPolicy,
    terminals: &[Leaf],
    rng: &mut R,
) -> ExprTree {
    let i = rng.gen_range(0..tree.size());
    let d = tree.node_depths()[i];
    let budget = policy.max_depth.saturating_sub(d);
    let fresh = grow(rng, terminals, budget, false);
    tree.replace_subtree(i, &fresh.nodes)
}

/// The five tree crossovers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeCrossover {
    Simple,
    Uniform,
    SizeFair,
    OnePoint,
    ContextPreserving,
}

impl TreeCrossover {
    pub const ALL: [TreeCrossover; 5] = [
        Self::Simple,
        Self::Uniform,
        Self::SizeFair,
        Self::OnePoint,
        Self::ContextPreserving,
    ];
}

const RETRIES: usize = 16;

/// Crossover with an operator chosen uniformly at random.
pub fn cx_tree<R: Rng + ?Sized>(
    a: &ExprTree,
    b: &ExprTree,
    policy: DepthPolicy,
    rng: &mut R,
) -> (TreeCrossover, ExprTree) {
    let kind = *TreeCrossover::ALL.choose(rng).expect("crossovers");
    (kind, cx_with(kind, a, b, policy, rng))
}

pub fn cx_with<R: Rng + ?Sized>(
    kind: TreeCrossover,
    a: &ExprTree,
    b: &ExprTree,
    policy: DepthPolicy,
    rng: &mut R,
) -> ExprTree {
    match kind {
        TreeCrossover::Simple => cx_simple(a, b, policy, rng),
        TreeCrossover::Uniform => cx_uniform(a, b, rng),
        TreeCrossover::SizeFair => cx_size_fair(a, b, policy, rng),
        TreeCrossover::OnePoint => cx_one_point(a, b, rng),
        TreeCrossover::ContextPreserving => cx_context_preserving(a, b, rng),
    }
}

fn fits(a_depths: &[usize], i: usize, b: &ExprTree, j: usize, policy: DepthPolicy) -> bool {
    a_depths[i] + b.subtree_depth(j) <= policy.max_depth
}

/// Subtree exchange between uniformly chosen points.
pub fn cx_simple<R: Rng + ?Sized>(
    a: &ExprTree,
    b: &ExprTree,
    policy: DepthPolicy,
    rng: &mut R,
) -> ExprTree {
    let depths = a.node_depths();
    for _ in 0..RETRIES {
        let i = rng.gen_range(0..a.size());
        let j = rng.gen_range(0..b.size());
        if fits(&depths, i, b, j, policy) {
            return a.replace_subtree(i, &b.nodes[j..b.subtree_end(j)]);
        }
    }
    a.clone()
}

/// Size-fair crossover. The donor subtree is at most `1 + 2s` nodes, where
/// `s` is the size of the removed subtree. An equal-size donor is taken with
/// probability `1/s`; otherwise smaller and larger donors are weighted so the
/// expected size change is zero.
pub fn cx_size_fair<R: Rng + ?Sized>(
    a: &ExprTree,
    b: &ExprTree,
    policy: DepthPolicy,
    rng: &mut R,
) -> ExprTree {
    let depths = a.node_depths();
    let b_sizes: Vec<usize> = (0..b.size()).map(|j| b.subtree_end(j) - j).collect();
    for _ in 0..RETRIES {
        let i = rng.gen_range(0..a.size());
        let s = a.subtree_end(i) - i;
        let limit = 1 + 2 * s;
        let (mut smaller, mut equal, mut larger) = (Vec::new(), Vec::new(), Vec::new());
        for (j, &sz) in b_sizes.iter().enumerate() {
            if sz > limit {
                continue;
            }
            match sz.cmp(&s) {
                std::cmp::Ordering::Less => smaller.push(j),
                std::cmp::Ordering::Equal => equal.push(j),
                std::cmp::Ordering::Greater => larger.push(j),
            }
        }
        let mean_gap = |set: &[usize]| {
            set.iter()
                .map(|&j| b_sizes[j].abs_diff(s) as f64)
                .sum::<f64>()
                / set.len().max(1) as f64
        };
        let p_equal = if equal.is_empty() {
            0.0
        } else {
            1.0 / s as f64
        };
        let (mu_minus, mu_plus) = (mean_gap(&smaller), mean_gap(&larger));
        let rest = 1.0 - p_equal;
        let p_larger = match (smaller.is_empty(), larger.is_empty()) {
            (true, true) => 0.0,
            (true, false) => rest,
            (false, true) => 0.0,
            (false, false) => rest * mu_minus / (mu_minus + mu_plus),
        };
        let p_smaller = if smaller.is_empty() {
            0.0
        } else {
            rest - p_larger
        };
        let total = p_equal + p_smaller + p_larger;
        if total <= 0.0 {
            continue;
        }
        let r = rng.gen::<f64>() * total;
        let pool = if r < p_equal {
            &equal
        } else if r < p_equal + p_smaller {
            &smaller
        } else {
            &larger
        };
        let Some(&j) = pool.choose(rng) else { continue };
        if fits(&depths, i, b, j, policy) {
            return a.replace_subtree(i, &b.nodes[j..b.subtree_end(j)]);
        }
    }
    a.clone()
}

/// Node pairs of the common region: both roots, then children of pairs whose
/// arities agree.
pub fn common_region(a: &ExprTree, b: &ExprTree) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0usize)];
    while let Some((i, j)) = stack.pop() {
        out.push((i, j));
        if a.nodes[i].arity() == b.nodes[j].arity() {
            for (ci, cj) in a.children(i).into_iter().zip(b.children(j)).rev() {
                stack.push((ci, cj));
            }
        }
    }
    out
}

/// One-point crossover: a point drawn uniformly from the common region.
/// The child has the same depth bound as its parents.
pub fn cx_one_point<R: Rng + ?Sized>(a: &ExprTree, b: &ExprTree, rng: &mut R) -> ExprTree {
    let region = common_region(a, b);
    let &(i, j) = region.choose(rng).expect("region contains the roots");
    a.replace_subtree(i, &b.nodes[j..b.subtree_end(j)])
}

/// Uniform crossover over the common region. Interior pairs (equal non-zero
/// arity) exchange node labels, boundary pairs exchange whole subtrees, each
/// with probability 1/2.
pub fn cx_uniform<R: Rng + ?Sized>(a: &ExprTree, b: &ExprTree, rng: &mut R) -> ExprTree {
    fn build<R: Rng + ?Sized>(
        a: &ExprTree,
        i: usize,
        b: &ExprTree,
        j: usize,
        rng: &mut R,
        out: &mut Vec<Node>,
    ) {
        let take_b = rng.gen_bool(0.5);
        let interior = a.nodes[i].arity() > 0 && a.nodes[i].arity() == b.nodes[j].arity();
        if interior {
            out.push(if take_b { b.nodes[j] } else { a.nodes[i] });
            for (ci, cj) in a.children(i).into_iter().zip(b.children(j)) {
                build(a, ci, b, cj, rng, out);
            }
        } else if take_b {
            out.extend_from_slice(&b.nodes[j..b.subtree_end(j)]);
        } else {
            out.extend_from_slice(&a.nodes[i..a.subtree_end(i)]);
        }
    }
    let mut nodes = Vec::with_capacity(a.size().max(b.size()));
    build(a, 0, b, 0, rng, &mut nodes);
    ExprTree { nodes }
}

/// Path of child positions from the root to every node.
fn coordinates(t: &ExprTree) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new(); t.size()];
    for i in 0..t.size() {
        for (k, c) in t.children(i).into_iter().enumerate() {
            let mut path = out[i].clone();
            path.push(k as u8);
            out[c] = path;
        }
    }
    out
}

/// Strong context-preserving crossover: the exchanged subtrees sit at the
/// same coordinates in both parents.
pub fn cx_context_preserving<R: Rng + ?Sized>(a: &ExprTree, b: &ExprTree, rng: &mut R) -> ExprTree {
    let b_index: HashMap<Vec<u8>, usize> = coordinates(b)
        .into_iter()
        .enumerate()
        .map(|(j, p)| (p, j))
        .collect();
    let candidates: Vec<(usize, usize)> = coordinates(a)
        .into_iter()
        .enumerate()
        .filter_map(|(i, p)| b_index.get(&p).map(|&j| (i, j)))
        .collect();
    let &(i, j) = candidates.choose(rng).expect("roots share coordinates");
    a.replace_subtree(i, &b.nodes[j..b.subtree_end(j)])
}
