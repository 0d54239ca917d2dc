use bentsmith::construction::SeedSet;
use bentsmith::genome::tree::{
    common_region, cx_with, eval_tree, mut_subtree, random_tree, Bindings, DepthPolicy, Evaluator,
    ExprTree, Leaf, Op, TreeCrossover,
};
use bentsmith::oracle::{direct_leaf, eval_tree_pointwise};
use bentsmith::TruthTable;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn packed_evaluation_matches_pointwise(n in 2usize..=8, depth in 1usize..=6, seed: u64) {
        let bindings = Bindings::direct(n).unwrap();
        let tree = random_tree(&mut rng(seed), &bindings.terminals(), DepthPolicy::new(depth).unwrap());
        let fast = Evaluator::new().eval(&tree, &bindings).unwrap();
        prop_assert_eq!(fast, eval_tree_pointwise(&tree, n, direct_leaf(n)).unwrap());
    }

    #[test]
    fn construction_evaluation_matches_pointwise(m in 2usize..=6, seeds in 1usize..=4, seed: u64) {
        let mut r = rng(seed);
        let pool: Vec<TruthTable> = (0..seeds).map(|_| TruthTable::random(m, &mut r).unwrap()).collect();
        let set = SeedSet::new(pool.clone()).unwrap();
        let tree = random_tree(&mut r, &set.terminals(), DepthPolicy::new(5).unwrap());
        let fast = Evaluator::new().eval(&tree, set.bindings()).unwrap();
        let low = (1usize << m) - 1;
        let slow = eval_tree_pointwise(&tree, m + 2, |leaf, i| match leaf {
            Leaf::Var(0) => (i >> (m + 1)) & 1 == 1,
            Leaf::Var(1) => (i >> m) & 1 == 1,
            Leaf::Var(_) => unreachable!(),
            Leaf::Seed(s) => pool[s as usize].get(i & low),
        })
        .unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn display_round_trips(depth in 1usize..=7, seed: u64) {
        let terms = Bindings::direct(8).unwrap().terminals();
        let tree = random_tree(&mut rng(seed), &terms, DepthPolicy::new(depth).unwrap());
        let back: ExprTree = tree.to_string().parse().unwrap();
        prop_assert_eq!(back, tree);
    }

    #[test]
    fn variation_respects_the_depth_limit(depth in 1usize..=6, seed: u64) {
        let policy = DepthPolicy::new(depth).unwrap();
        let terms = Bindings::direct(6).unwrap().terminals();
        let mut r = rng(seed);
        let a = random_tree(&mut r, &terms, policy);
        let b = random_tree(&mut r, &terms, policy);
        for kind in TreeCrossover::ALL {
            let child = cx_with(kind, &a, &b, policy, &mut r);
            prop_assert!(child.depth() <= depth, "{:?} gave depth {}", kind, child.depth());
            prop_assert!(ExprTree::from_nodes(child.nodes().to_vec()).is_ok());
        }
        let m = mut_subtree(&a, policy, &terms, &mut r);
        prop_assert!(m.depth() <= depth);
    }

    #[test]
    fn common_region_is_symmetric_in_shape(seed: u64) {
        let terms = Bindings::direct(4).unwrap().terminals();
        let policy = DepthPolicy::new(5).unwrap();
        let mut r = rng(seed);
        let a = random_tree(&mut r, &terms, policy);
        let b = random_tree(&mut r, &terms, policy);
        let ab = common_region(&a, &b);
        let ba: Vec<(usize, usize)> = common_region(&b, &a).into_iter().map(|(i, j)| (j, i)).collect();
        prop_assert_eq!(ab[0], (0, 0));
        prop_assert_eq!(ab, ba);
    }
}

#[test]
fn operator_truth_tables() {
    // Rows are (a, b) = 00, 01, 10, 11 with a as the high input.
    let cases = [
        ("NOT(x1)", "1100"),
        ("OR(x1, x2)", "0111"),
        ("XOR(x1, x2)", "0110"),
        ("AND(x1, x2)", "0001"),
        ("AND2(x1, x2)", "0010"),
        ("XNOR(x1, x2)", "1001"),
    ];
    for (expr, bits) in cases {
        let tree: ExprTree = expr.parse().unwrap();
        assert_eq!(eval_tree(&tree, 2).unwrap().to_bit_string(), bits, "{expr}");
    }
    let tree: ExprTree = "IF(x1, x2, x3)".parse().unwrap();
    assert_eq!(eval_tree(&tree, 3).unwrap().to_bit_string(), "01010011");
    assert_eq!(Op::ALL.len(), 7);
}

#[test]
fn ten_thousand_crossovers_stay_well_formed() {
    let policy = DepthPolicy::new(7).unwrap();
    let terms = Bindings::direct(12).unwrap().terminals();
    let mut r = rng(7);
    for _ in 0..10_000 {
        let a = random_tree(&mut r, &terms, policy);
        let b = random_tree(&mut r, &terms, policy);
        let (_, child) = bentsmith::genome::tree::cx_tree(&a, &b, policy, &mut r);
        assert!(child.depth() <= 7);
        assert!(Bindings::direct(12).unwrap().check(&child).is_ok());
    }
}
