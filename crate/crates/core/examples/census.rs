//! Enumerates all functions of 2 and 4 variables and lists the self-dual
//! and anti-self-dual bent ones.
//!
//! ```text
//! cargo run --release --example census
//! ```

use bentsmith::experiment::render_census;
use bentsmith::oracle::census;

fn main() -> anyhow::Result<()> {
    for n in [2, 4] {
        let c = census(n)?;
        println!("{}", render_census(&c.report));
        for f in &c.self_dual {
            println!("  self-dual       {} {}", f.to_record(), f.to_bit_string());
        }
        for f in &c.anti_self_dual {
            println!("  anti-self-dual  {} {}", f.to_record(), f.to_bit_string());
        }
    }
    Ok(())
}
