//! Shows the tree variation operators on two random parents.
//!
//! ```text
//! cargo run --release --example tree_operators -- [seed]
//! ```

use bentsmith::genome::tree::{
    cx_with, mut_subtree, random_tree, Bindings, DepthPolicy, TreeCrossover,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anyhow::Result<()> {
    let seed: u64 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let policy = DepthPolicy::new(4)?;
    let terms = Bindings::direct(4)?.terminals();
    let a = random_tree(&mut rng, &terms, policy);
    let b = random_tree(&mut rng, &terms, policy);
    println!("parent a  (depth {}, size {:>2})  {a}", a.depth(), a.size());
    println!("parent b  (depth {}, size {:>2})  {b}", b.depth(), b.size());
    for kind in TreeCrossover::ALL {
        let child = cx_with(kind, &a, &b, policy, &mut rng);
        println!(
            "{:<22} (depth {}, size {:>2})  {child}",
            format!("{kind:?}"),
            child.depth(),
            child.size()
        );
    }
    let m = mut_subtree(&a, policy, &terms, &mut rng);
    println!(
        "{:<22} (depth {}, size {:>2})  {m}",
        "subtree mutation of a",
        m.depth(),
        m.size()
    );
    Ok(())
}
