//! Bit-packed truth tables.
//!
//! Entry `i` of a table holds `f(x)` where `x` is the `n`-bit big-endian
//! expansion of `i`: `x1` is the most significant bit of the index. Bits are
//! packed 64 per word, index `i` living at bit `i % 64` of word `i / 64`.
//! Tables with fewer than 64 entries use a single word whose unused high
//! bits are kept at zero.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported variable count.
pub const MAX_VARS: usize = 16;

/// Bit patterns of index bit `p` for `p < 6`, repeated over a 64-bit word.
const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Number of 64-bit words backing a table of `n` variables.
pub fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Mask of the valid bits in the last (only) word for `n < 6`.
pub(crate) fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_VARS).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidVariableCount(n))
    }
}

/// Value vector of a Boolean function of `n` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl TruthTable {
    /// The constant-zero function.
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            words: vec![0; word_count(n)],
        })
    }

    /// Builds a table from packed words; bits beyond `2^n` are cleared.
    pub fn from_words(n: usize, mut words: Vec<u64>) -> Result<Self> {
        check_n(n)?;
        if words.len() != word_count(n) {
            return Err(Error::LengthMismatch {
                expected: word_count(n),
                actual: words.len(),
            });
        }
        words[0] &= tail_mask(n);
        Ok(Self { n, words })
    }

    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        check_n(n)?;
        if bits.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                actual: bits.len(),
            });
        }
        Ok(Self::from_fn_unchecked(n, |i| bits[i]))
    }

    /// Parses a string of `0`/`1` characters, index 0 first.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!(
                    "unexpected character {other:?} in bit string"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        if !bits.len().is_power_of_two() || bits.len() < 2 {
            return Err(Error::Parse(format!(
                "bit string length {} is not 2^n with n >= 1",
                bits.len()
            )));
        }
        Self::from_bits(bits.len().trailing_zeros() as usize, &bits)
    }

    /// Tabulates `f` over every index `0..2^n`.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> bool) -> Result<Self> {
        check_n(n)?;
        Ok(Self::from_fn_unchecked(n, f))
    }

    fn from_fn_unchecked(n: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut words = vec![0u64; word_count(n)];
        for i in 0..1usize << n {
            if f(i) {
                words[i >> 6] |= 1 << (i & 63);
            }
        }
        Self { n, words }
    }

    /// Each entry drawn independently and uniformly.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_n(n)?;
        let words = (0..word_count(n)).map(|_| rng.gen::<u64>()).collect();
        Self::from_words(n, words)
    }

    /// The coordinate function `x_k`, `1 <= k <= n`, with `x1` the most
    /// significant index bit.
    pub fn variable(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        if k == 0 || k > n {
            return Err(Error::UnboundVariable { index: k as u8, n });
        }
        Ok(Self {
            n,
            words: index_bit_words(n, n - k),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn into_words(self) -> Vec<u64> {
        self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len(), "index {i} out of range");
        let bit = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= bit;
        } else {
            self.words[i >> 6] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len(), "index {i} out of range");
        self.words[i >> 6] ^= 1 << (i & 63);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Hamming weight of the value vector.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `f ⊕ 1`.
    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words[0] &= tail_mask(self.n);
        Self { n: self.n, words }
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(Self {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub fn is_constant(&self) -> bool {
        let w = self.weight();
        w == 0 || w == self.len()
    }

    /// Entries rendered as `0`/`1`, index 0 first.
    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Hex encoding, 4 entries per nibble, the first entry in the most
    /// significant bit of the first nibble.
    pub fn to_hex(&self) -> String {
        let len = self.len();
        let nibbles = len.div_ceil(4);
        let mut out = String::with_capacity(nibbles);
        for k in 0..nibbles {
            let mut v = 0u32;
            for j in 0..4 {
                let i = 4 * k + j;
                if i < len && self.get(i) {
                    v |= 8 >> j;
                }
            }
            out.push(char::from_digit(v, 16).expect("nibble"));
        }
        out
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        check_n(n)?;
        let len = 1usize << n;
        let nibbles = len.div_ceil(4);
        let hex = hex.trim();
        if hex.len() != nibbles {
            return Err(Error::Parse(format!(
                "expected {nibbles} hex digits for n = {n}, got {}",
                hex.len()
            )));
        }
        let mut tt = Self::zero(n)?;
        for (k, c) in hex.chars().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            for j in 0..4 {
                if v & (8 >> j) != 0 {
                    let i = 4 * k + j;
                    if i >= len {
                        return Err(Error::Parse("padding bits must be zero".into()));
                    }
                    tt.set(i, true);
                }
            }
        }
        Ok(tt)
    }

    /// `n:<int>;tt:<hex>` record form.
    pub fn to_record(&self) -> String {
        format!("n:{};tt:{}", self.n, self.to_hex())
    }
}

/// Parses one `n:<int>;tt:<hex>` record per line. Blank lines and lines
/// starting with `#` are skipped; errors name the 1-based line.
pub fn parse_records(text: &str) -> Result<Vec<TruthTable>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(k, l)| {
            l.parse::<TruthTable>().map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("line {}: {msg}", k + 1)),
                other => Error::Parse(format!("line {}: {other}", k + 1)),
            })
        })
        .collect()
}

/// Packed table of index bit `p` (bit 0 is the least significant index bit).
pub(crate) fn index_bit_words(n: usize, p: usize) -> Vec<u64> {
    debug_assert!(p < n);
    if p < 6 {
        let mut words = vec![LOW_PATTERNS[p]; word_count(n)];
        words[0] &= tail_mask(n);
        words
    } else {
        (0..word_count(n))
            .map(|w| if (w >> (p - 6)) & 1 == 1 { u64::MAX } else { 0 })
            .collect()
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 6 {
            write!(f, "TruthTable({})", self.to_bit_string())
        } else {
            write!(f, "TruthTable({})", self.to_record())
        }
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n_part, tt_part) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `n:<int>;tt:<hex>`, got {s:?}")))?;
        let n = n_part
            .trim()
            .strip_prefix("n:")
            .ok_or_else(|| Error::Parse("missing `n:` field".into()))?
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad variable count: {e}")))?;
        let hex = tt_part
            .trim()
            .strip_prefix("tt:")
            .ok_or_else(|| Error::Parse("missing `tt:` field".into()))?;
        Self::from_hex(n, hex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn record_format_example() {
        let tt = TruthTable::from_bit_str("0001").unwrap();
        assert_eq!(tt.to_record(), "n:2;tt:1");
        assert_eq!("n:2;tt:1".parse::<TruthTable>().unwrap(), tt);
        let t = TruthTable::from_bit_str("10000000").unwrap();
        assert_eq!(t.to_hex(), "80");
        let t = TruthTable::from_bit_str("01").unwrap();
        assert_eq!(t.to_hex(), "4");
    }

    #[test]
    fn record_rejects_bad_input() {
        assert!("n:2;tt:12".parse::<TruthTable>().is_err());
        assert!("n:2;tt:g".parse::<TruthTable>().is_err());
        assert!("n:17;tt:0".parse::<TruthTable>().is_err());
        assert!("tt:1".parse::<TruthTable>().is_err());
        // n = 1 has two padding bits in its only nibble.
        assert!("n:1;tt:1".parse::<TruthTable>().is_err());
    }

    #[test]
    fn record_lines_report_line_numbers() {
        let ok = parse_records("# pool\nn:2;tt:1\n\nn:2;tt:7\n").unwrap();
        assert_eq!(ok.len(), 2);
        let err = parse_records("n:2;tt:1\nbogus\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn variable_count_bounds() {
        assert_eq!(TruthTable::zero(0), Err(Error::InvalidVariableCount(0)));
        assert_eq!(TruthTable::zero(17), Err(Error::InvalidVariableCount(17)));
        assert_eq!(TruthTable::zero(16).unwrap().words().len(), 1024);
    }

    #[test]
    fn variables_follow_big_endian_indexing() {
        for n in 1..=9 {
            for k in 1..=n {
                let v = TruthTable::variable(n, k).unwrap();
                for i in 0..1 << n {
                    assert_eq!(v.get(i), (i >> (n - k)) & 1 == 1, "n={n} k={k} i={i}");
                }
            }
        }
        assert_eq!(TruthTable::variable(2, 1).unwrap().to_bit_string(), "0011");
    }

    #[test]
    fn complement_respects_tail_mask() {
        let t = TruthTable::zero(3).unwrap().complement();
        assert_eq!(t.weight(), 8);
        assert_eq!(t.words()[0], 0xFF);
    }

    #[test]
    fn hex_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=12 {
            let t = TruthTable::random(n, &mut rng).unwrap();
            assert_eq!(t.to_record().parse::<TruthTable>().unwrap(), t);
        }
    }
}
