//! Walsh-Hadamard spectrum, nonlinearity and dual of a few functions.
//!
//! ```text
//! cargo run --release --example spectral_analysis -- [n:<n>;tt:<hex> ...]
//! ```

use bentsmith::spectrum::covering_radius_bound;
use bentsmith::{classify, dual, wht_fast, TruthTable};

fn main() -> anyhow::Result<()> {
    let mut tables: Vec<TruthTable> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    if tables.is_empty() {
        // Inner product x1x3 ⊕ x2x4, majority of three and x1 ⊕ x2.
        tables.push(TruthTable::from_fn(4, |i| {
            ((i >> 2) & i & 3).count_ones() % 2 == 1
        })?);
        tables.push(TruthTable::from_fn(3, |i| i.count_ones() >= 2)?);
        tables.push("n:2;tt:6".parse()?);
    }
    for tt in &tables {
        let ws = wht_fast(tt);
        let r = classify(tt);
        println!("{}  ({})", tt.to_record(), tt.to_bit_string());
        println!("  spectrum      {:?}", ws.coeffs());
        println!(
            "  nonlinearity  {} of at most {}; bent {}",
            r.nonlinearity,
            covering_radius_bound(tt.n()),
            r.is_bent
        );
        match dual(tt) {
            Ok(d) => println!(
                "  dual          {} (self-dual {}, anti-self-dual {})",
                d.to_record(),
                r.is_self_dual,
                r.is_anti_self_dual
            ),
            Err(e) => println!("  dual          none: {e}"),
        }
    }
    Ok(())
}
