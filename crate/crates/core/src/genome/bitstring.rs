//! Truth-table genome: the candidate is its own value vector.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

/// A bitstring of length `2^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitGenome(pub TruthTable);

impl BitGenome {
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        TruthTable::random(n, rng).map(Self)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn table(&self) -> &TruthTable {
        &self.0
    }

    pub fn into_table(self) -> TruthTable {
        self.0
    }
}

/// Inverts the bit at `pos`.
pub fn flip_at(g: &BitGenome, pos: usize) -> BitGenome {
    let mut out = g.clone();
    out.0.flip(pos);
    out
}

/// Inverts one uniformly chosen bit.
pub fn mut_bitflip<R: Rng + ?Sized>(g: &BitGenome, rng: &mut R) -> BitGenome {
    flip_at(g, rng.gen_range(0..g.len()))
}

/// Shuffles the bits in `[start, end)` with Fisher-Yates.
pub fn mix_range<R: Rng + ?Sized>(
    g: &BitGenome,
    start: usize,
    end: usize,
    rng: &mut R,
) -> BitGenome {
    assert!(
        start < end && end <= g.len(),
        "invalid range {start}..{end}"
    );
    let mut segment: Vec<bool> = (start..end).map(|i| g.0.get(i)).collect();
    segment.shuffle(rng);
    let mut out = g.clone();
    for (i, b) in (start..end).zip(segment) {
        out.0.set(i, b);
    }
    out
}

/// Mixing mutation: picks `0 <= i < j <= 2^n` uniformly over all pairs and
/// permutes the substring `[i, j)`.
pub fn mut_mix<R: Rng + ?Sized>(g: &BitGenome, rng: &mut R) -> BitGenome {
    let (i, j) = random_range(g.len(), rng);
    mix_range(g, i, j, rng)
}

/// Uniform pair `i < j` from `0..=len`.
pub(crate) fn random_range<R: Rng + ?Sized>(len: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.gen_range(0..=len);
    let mut b = rng.gen_range(0..len);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

fn same_size(a: &BitGenome, b: &BitGenome) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(())
}

/// `a[0..k) ++ b[k..2^n)`.
pub fn one_point_at(a: &BitGenome, b: &BitGenome, k: usize) -> Result<BitGenome> {
    same_size(a, b)?;
    assert!(k <= a.len());
    let mut out = a.clone();
    for i in k..a.len() {
        out.0.set(i, b.0.get(i));
    }
    Ok(out)
}

/// One-point crossover with breakpoint uniform in `[1, 2^n - 1]`.
pub fn cx_one_point<R: Rng + ?Sized>(
    a: &BitGenome,
    b: &BitGenome,
    rng: &mut R,
) -> Result<BitGenome> {
    same_size(a, b)?;
    let k = rng.gen_range(1..a.len());
    one_point_at(a, b, k)
}

/// Each child bit independently copied from `a` or `b`.
pub fn cx_uniform<R: Rng + ?Sized>(a: &BitGenome, b: &BitGenome, rng: &mut R) -> Result<BitGenome> {
    same_size(a, b)?;
    let words =
        a.0.words()
            .iter()
            .zip(b.0.words())
            .map(|(&x, &y)| {
                let pick: u64 = rng.gen();
                (x & pick) | (y & !pick)
            })
            .collect();
    TruthTable::from_words(a.n(), words).map(BitGenome)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitMutation {
    BitFlip,
    Mix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitCrossover {
    OnePoint,
    Uniform,
}

/// Applies a uniformly chosen mutation operator.
pub fn mutate<R: Rng + ?Sized>(g: &BitGenome, rng: &mut R) -> (BitMutation, BitGenome) {
    if rng.gen_bool(0.5) {
        (BitMutation::BitFlip, mut_bitflip(g, rng))
    } else {
        (BitMutation::Mix, mut_mix(g, rng))
    }
}

/// Applies a uniformly chosen crossover operator.
pub fn crossover<R: Rng + ?Sized>(
    a: &BitGenome,
    b: &BitGenome,
    rng: &mut R,
) -> Result<(BitCrossover, BitGenome)> {
    if rng.gen_bool(0.5) {
        Ok((BitCrossover::OnePoint, cx_one_point(a, b, rng)?))
    } else {
        Ok((BitCrossover::Uniform, cx_uniform(a, b, rng)?))
    }
}
