//! Compares the two dual-matching objectives on random, bent and
//! self-dual functions. The second adds a fractional bonus that grows as
//! the spectrum approaches the target.
//!
//! ```text
//! cargo run --release --example fitness_functions -- [n]
//! ```

use bentsmith::fitness::{fit1, fit2, fitness_nl};
use bentsmith::{wht_fast, TruthTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(label: &str, tt: &TruthTable) -> anyhow::Result<()> {
    let ws = wht_fast(tt);
    println!(
        "{label:<22} sd fit1 {:>6}  sd fit2 {:>10.4}  asd fit1 {:>6}  asd fit2 {:>10.4}  nl {}",
        fit1(tt, &ws, false)?.value,
        fit2(tt, &ws, false)?.value,
        fit1(tt, &ws, true)?.value,
        fit2(tt, &ws, true)?.value,
        fitness_nl(&ws)?.value
    );
    Ok(())
}

fn main() -> anyhow::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(Ok(8), |s| s.parse())?;
    let half = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..3 {
        show(&format!("random #{k}"), &TruthTable::random(n, &mut rng)?)?;
    }
    // Inner product x·y is self-dual; adding x1 keeps it bent but not self-dual.
    let ip = TruthTable::from_fn(n, |i| {
        ((i >> half) & i & ((1 << half) - 1)).count_ones() % 2 == 1
    })?;
    show("inner product", &ip)?;
    show("complement", &ip.complement())?;
    show("inner product + x1", &ip.xor(&TruthTable::variable(n, 1)?)?)?;
    let mut near = ip.clone();
    near.flip(0);
    show("one bit away", &near)?;
    Ok(())
}
