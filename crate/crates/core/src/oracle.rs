//! Brute-force reference implementations.
//!
//! Everything here is written straight from the definitions, without the
//! butterfly transform or packed evaluation, so it can be used to check the
//! fast paths.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::tree::{ExprTree, Leaf, Node};
use crate::spectrum::WalshSpectrum;
use crate::truth_table::TruthTable;

/// Largest `n` accepted by [`wht_direct`].
pub const DIRECT_LIMIT: usize = 12;

/// `W_f(a) = Σ_x (-1)^{f(x) ⊕ a·x}` by double loop, `O(4^n)`.
pub fn wht_direct(tt: &TruthTable) -> Result<WalshSpectrum> {
    let n = tt.n();
    if n > DIRECT_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: DIRECT_LIMIT,
        });
    }
    let size = 1usize << n;
    let values: Vec<bool> = tt.iter().collect();
    let coeffs = (0..size)
        .map(|a| {
            (0..size)
                .map(|x| {
                    let dot = (a & x).count_ones() % 2 == 1;
                    if values[x] ^ dot {
                        -1
                    } else {
                        1
                    }
                })
                .sum::<i32>()
        })
        .collect();
    WalshSpectrum::from_coeffs(n, coeffs)
}

/// Spectral classification computed from [`wht_direct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectClass {
    pub bent: bool,
    pub self_dual: bool,
    pub anti_self_dual: bool,
}

pub fn classify_direct(tt: &TruthTable) -> Result<DirectClass> {
    let ws = wht_direct(tt)?;
    let n = tt.n();
    let bent = n % 2 == 0 && {
        let m = 1i32 << (n / 2);
        ws.coeffs().iter().all(|&c| c == m || c == -m)
    };
    let (mut self_dual, mut anti) = (false, false);
    if bent {
        let dual: Vec<bool> = ws.coeffs().iter().map(|&c| c < 0).collect();
        self_dual = dual.iter().enumerate().all(|(x, &d)| d == tt.get(x));
        anti = dual.iter().enumerate().all(|(x, &d)| d != tt.get(x));
    }
    Ok(DirectClass {
        bent,
        self_dual,
        anti_self_dual: anti,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    /// Functions examined.
    pub examined: u64,
    /// False for exhaustive enumeration.
    pub sampled: bool,
    pub count_bent: u64,
    pub count_self_dual: u64,
    pub count_anti_self_dual: u64,
}

/// Exhaustive census with the self-dual and anti-self-dual witnesses.
#[derive(Debug, Clone)]
pub struct Census {
    pub report: CensusReport,
    pub self_dual: Vec<TruthTable>,
    pub anti_self_dual: Vec<TruthTable>,
}

/// Enumerates all `2^{2^n}` functions of `n ∈ {2, 4}` variables.
pub fn census(n: usize) -> Result<Census> {
    if n != 2 && n != 4 {
        return Err(Error::TooLarge { n, limit: 4 });
    }
    let size = 1usize << n;
    let mut report = CensusReport {
        n,
        examined: 0,
        sampled: false,
        count_bent: 0,
        count_self_dual: 0,
        count_anti_self_dual: 0,
    };
    let (mut self_dual, mut anti_self_dual) = (Vec::new(), Vec::new());
    for code in 0u64..1 << size {
        let tt = TruthTable::from_fn(n, |i| (code >> i) & 1 == 1)?;
        let class = classify_direct(&tt)?;
        report.examined += 1;
        report.count_bent += class.bent as u64;
        if class.self_dual {
            report.count_self_dual += 1;
            self_dual.push(tt);
        } else if class.anti_self_dual {
            report.count_anti_self_dual += 1;
            anti_self_dual.push(tt);
        }
    }
    Ok(Census {
        report,
        self_dual,
        anti_self_dual,
    })
}

/// Counts over `samples` uniformly random functions; usable where
/// enumeration is out of reach.
pub fn census_sampled<R: Rng + ?Sized>(
    n: usize,
    samples: u64,
    rng: &mut R,
) -> Result<CensusReport> {
    if n > DIRECT_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: DIRECT_LIMIT,
        });
    }
    let mut report = CensusReport {
        n,
        examined: samples,
        sampled: true,
        count_bent: 0,
        count_self_dual: 0,
        count_anti_self_dual: 0,
    };
    for _ in 0..samples {
        let class = classify_direct(&TruthTable::random(n, rng)?)?;
        report.count_bent += class.bent as u64;
        report.count_self_dual += class.self_dual as u64;
        report.count_anti_self_dual += class.anti_self_dual as u64;
    }
    Ok(report)
}

/// Evaluates a tree one assignment at a time. `leaf(l, i)` gives the value
/// of terminal `l` at index `i`.
pub fn eval_tree_pointwise(
    tree: &ExprTree,
    n: usize,
    leaf: impl Fn(Leaf, usize) -> bool,
) -> Result<TruthTable> {
    fn go(nodes: &[Node], pos: &mut usize, i: usize, leaf: &impl Fn(Leaf, usize) -> bool) -> bool {
        let node = nodes[*pos];
        *pos += 1;
        match node {
            Node::Leaf(l) => leaf(l, i),
            Node::Op(op) => {
                let args: Vec<bool> = (0..op.arity()).map(|_| go(nodes, pos, i, leaf)).collect();
                op.apply_bits(&args)
            }
        }
    }
    TruthTable::from_fn(n, |i| go(tree.nodes(), &mut 0, i, &leaf))
}

/// Direct-mode leaf semantics: `x_k` is bit `n - k` of the index.
pub fn direct_leaf(n: usize) -> impl Fn(Leaf, usize) -> bool {
    move |l, i| match l {
        Leaf::Var(k) => (i >> (n - k as usize)) & 1 == 1,
        Leaf::Seed(_) => panic!("seed leaf in a direct-mode tree"),
    }
}
