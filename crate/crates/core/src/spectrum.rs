//! Walsh-Hadamard spectra and the properties read off them: nonlinearity,
//! bentness, the dual of a bent function and (anti-)self-duality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

/// `W_f(a)` for every `a`, indexed like [`TruthTable`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WalshSpectrum {
    n: usize,
    coeffs: Vec<i32>,
}

impl WalshSpectrum {
    /// Wraps precomputed coefficients. Only the length is checked.
    pub fn from_coeffs(n: usize, coeffs: Vec<i32>) -> Result<Self> {
        crate::truth_table::check_n(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                actual: coeffs.len(),
            });
        }
        Ok(Self { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn max_abs(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// `Σ_a W_f(a)^2`; equals `2^{2n}` for every Boolean function.
    pub fn energy(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|&c| (c as i64 * c as i64) as u64)
            .sum()
    }

    /// `2^{n/2}` for even `n`.
    pub fn flat_magnitude(&self) -> Option<i32> {
        flat_magnitude(self.n)
    }
}

pub(crate) fn flat_magnitude(n: usize) -> Option<i32> {
    (n % 2 == 0).then(|| 1i32 << (n / 2))
}

/// Covering-radius bound `2^{n-1} - 2^{n/2-1}`, attained exactly by bent
/// functions. For odd `n` this is the real-valued bound rounded down.
pub fn covering_radius_bound(n: usize) -> u32 {
    let half = (1u64 << n) as f64 / 2.0;
    let sub = 2f64.powf(n as f64 / 2.0 - 1.0);
    (half - sub).floor() as u32
}

/// Fast Walsh-Hadamard transform of `(-1)^{f(x)}`, `O(n 2^n)`.
pub fn wht_fast(tt: &TruthTable) -> WalshSpectrum {
    let mut coeffs: Vec<i32> = tt.iter().map(|b| if b { -1 } else { 1 }).collect();
    butterfly(&mut coeffs);
    WalshSpectrum { n: tt.n(), coeffs }
}

/// In-place unnormalised Hadamard butterfly over a power-of-two buffer.
pub(crate) fn butterfly(v: &mut [i32]) {
    let len = v.len();
    let mut h = 1;
    while h < len {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// `2^{n-1} - max_a |W_f(a)| / 2`.
pub fn nonlinearity(ws: &WalshSpectrum) -> u32 {
    ((1u32 << ws.n) - ws.max_abs()) / 2
}

/// Flat spectrum check; always false for odd `n`.
pub fn is_bent(ws: &WalshSpectrum) -> bool {
    match ws.flat_magnitude() {
        Some(m) => ws.coeffs.iter().all(|c| c.unsigned_abs() == m as u32),
        None => false,
    }
}

/// Dual read off the signs of a flat spectrum.
pub fn dual_of_spectrum(ws: &WalshSpectrum) -> Result<TruthTable> {
    if !is_bent(ws) {
        return Err(Error::NotBent);
    }
    TruthTable::from_fn(ws.n, |a| ws.coeffs[a] < 0)
}

/// The dual `f̃` of a bent function: `f̃(a) = 1` iff `W_f(a) = -2^{n/2}`.
pub fn dual(tt: &TruthTable) -> Result<TruthTable> {
    dual_of_spectrum(&wht_fast(tt))
}

/// Spectral summary of one function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub nonlinearity: u32,
    pub is_bent: bool,
    pub is_self_dual: bool,
    pub is_anti_self_dual: bool,
    pub max_abs_coeff: u32,
}

pub fn classify(tt: &TruthTable) -> SpectralReport {
    classify_with(tt, &wht_fast(tt))
}

/// [`classify`] reusing an already computed spectrum of `tt`.
pub fn classify_with(tt: &TruthTable, ws: &WalshSpectrum) -> SpectralReport {
    let bent = is_bent(ws);
    let (mut self_dual, mut anti) = (false, false);
    if bent {
        // f̃(a) ⊕ f(a) is 0 when the coefficient sign agrees with (-1)^{f(a)}.
        let agreements = ws
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(a, &c)| (c < 0) == tt.get(a))
            .count();
        self_dual = agreements == ws.coeffs.len();
        anti = agreements == 0;
    }
    SpectralReport {
        nonlinearity: nonlinearity(ws),
        is_bent: bent,
        is_self_dual: self_dual,
        is_anti_self_dual: anti,
        max_abs_coeff: ws.max_abs(),
    }
}
