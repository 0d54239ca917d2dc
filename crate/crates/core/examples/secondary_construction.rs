//! Expands a construction tree over seed functions into a function of two
//! more variables, and checks it for bentness, self-duality and triviality.
//!
//! ```text
//! cargo run --release --example secondary_construction -- ["TREE"]
//! ```

use bentsmith::classify;
use bentsmith::construction::{expand, is_trivial, SeedSet};
use bentsmith::genome::tree::ExprTree;
use bentsmith::oracle::census;

fn main() -> anyhow::Result<()> {
    let trees: Vec<String> = match std::env::args().nth(1) {
        Some(t) => vec![t],
        None => [
            "IF(x0, f0, XOR(x1, f1))",
            "XOR(AND(x0, x1), f0)",
            "XOR(AND(x0, x1), XOR(f0, AND(f1, f2)))",
        ]
        .map(String::from)
        .to_vec(),
    };
    let seeds = census(4)?.self_dual;
    let set = SeedSet::new(seeds[..4].to_vec())?;
    for (i, s) in set.seeds().iter().enumerate() {
        println!("f{i} = {}", s.to_record());
    }
    for text in trees {
        let tree: ExprTree = text.parse()?;
        let big = expand(&tree, &set)?;
        let r = classify(&big);
        println!("\n{tree}");
        println!("  -> {}", big.to_record());
        println!(
            "  bent {}  self-dual {}  anti-self-dual {}  nl {}  trivial {}",
            r.is_bent,
            r.is_self_dual,
            r.is_anti_self_dual,
            r.nonlinearity,
            is_trivial(&tree, &set)?
        );
    }
    Ok(())
}
