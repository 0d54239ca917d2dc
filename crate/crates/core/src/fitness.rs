//! Objective functions for evolving (anti-)self-dual bent functions.
//!
//! The dual objectives compare every Walsh coefficient with the target
//! `2^{n/2} (-1)^{f(a) ⊕ anti}`. `fit1` counts exact matches. `fit2` adds
//! `1 - D` where `D` is the summed absolute deviation normalised by
//! `2^n 2^{n/2}`; the bonus is dropped at the optimum and clamped at zero
//! when `D > 1`, so the integer part of `fit2` is always `fit1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{covering_radius_bound, flat_magnitude, nonlinearity, WalshSpectrum};
use crate::truth_table::TruthTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObjectiveKind {
    SelfDualFit1,
    SelfDualFit2,
    AntiSelfDualFit1,
    AntiSelfDualFit2,
    NonlinearityOnly,
}

impl ObjectiveKind {
    pub const ALL: [ObjectiveKind; 5] = [
        Self::SelfDualFit1,
        Self::SelfDualFit2,
        Self::AntiSelfDualFit1,
        Self::AntiSelfDualFit2,
        Self::NonlinearityOnly,
    ];

    /// Short name used on the command line.
    pub fn code(self) -> &'static str {
        match self {
            Self::SelfDualFit1 => "sd1",
            Self::SelfDualFit2 => "sd2",
            Self::AntiSelfDualFit1 => "asd1",
            Self::AntiSelfDualFit2 => "asd2",
            Self::NonlinearityOnly => "nl",
        }
    }

    pub fn anti(self) -> bool {
        matches!(self, Self::AntiSelfDualFit1 | Self::AntiSelfDualFit2)
    }

    pub fn is_dual(self) -> bool {
        self != Self::NonlinearityOnly
    }
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ObjectiveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.code() == s)
            .ok_or_else(|| Error::Parse(format!("unknown objective {s:?} (sd1|sd2|asd1|asd2|nl)")))
    }
}

/// Score of one candidate. `integer_part` is the `fit1` count for the dual
/// objectives and the nonlinearity for [`ObjectiveKind::NonlinearityOnly`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessValue {
    pub value: f64,
    pub integer_part: u64,
}

impl FitnessValue {
    pub fn exact(v: u64) -> Self {
        Self {
            value: v as f64,
            integer_part: v,
        }
    }

    pub const ZERO: FitnessValue = FitnessValue {
        value: 0.0,
        integer_part: 0,
    };
}

impl std::ops::Add for FitnessValue {
    type Output = FitnessValue;

    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            integer_part: self.integer_part + rhs.integer_part,
        }
    }
}

impl std::iter::Sum for FitnessValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

/// An objective bound to a variable count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Objective {
    pub kind: ObjectiveKind,
    pub n: usize,
}

impl Objective {
    pub fn new(kind: ObjectiveKind, n: usize) -> Result<Self> {
        crate::truth_table::check_n(n)?;
        if n % 2 == 1 {
            return Err(Error::OddN(n));
        }
        Ok(Self { kind, n })
    }

    /// `2^n` for the dual objectives, the covering-radius bound otherwise.
    pub fn optimum(&self) -> u64 {
        match self.kind {
            ObjectiveKind::NonlinearityOnly => covering_radius_bound(self.n) as u64,
            _ => 1 << self.n,
        }
    }

    pub fn is_optimal(&self, v: &FitnessValue) -> bool {
        v.integer_part >= self.optimum()
    }

    pub fn evaluate(&self, tt: &TruthTable, ws: &WalshSpectrum) -> Result<FitnessValue> {
        if tt.n() != self.n || ws.n() != self.n {
            return Err(Error::SizeMismatch(self.n, tt.n()));
        }
        match self.kind {
            ObjectiveKind::SelfDualFit1 => fit1(tt, ws, false),
            ObjectiveKind::AntiSelfDualFit1 => fit1(tt, ws, true),
            ObjectiveKind::SelfDualFit2 => fit2(tt, ws, false),
            ObjectiveKind::AntiSelfDualFit2 => fit2(tt, ws, true),
            ObjectiveKind::NonlinearityOnly => fitness_nl(ws),
        }
    }
}

/// Count of matches and summed absolute deviation from the signed target.
fn deviation(tt: &TruthTable, ws: &WalshSpectrum, anti: bool) -> Result<(u64, u64)> {
    if tt.n() != ws.n() {
        return Err(Error::SizeMismatch(tt.n(), ws.n()));
    }
    let m = flat_magnitude(ws.n()).ok_or(Error::OddN(ws.n()))? as i64;
    let mut hits = 0u64;
    let mut dev = 0u64;
    for (a, &c) in ws.coeffs().iter().enumerate() {
        let target = if tt.get(a) ^ anti { -m } else { m };
        let d = (target - c as i64).unsigned_abs();
        if d == 0 {
            hits += 1;
        }
        dev += d;
    }
    Ok((hits, dev))
}

/// Number of `a` with `W_f(a) = 2^{n/2} (-1)^{f(a) ⊕ anti}`.
pub fn fit1(tt: &TruthTable, ws: &WalshSpectrum, anti: bool) -> Result<FitnessValue> {
    let (hits, _) = deviation(tt, ws, anti)?;
    Ok(FitnessValue::exact(hits))
}

/// `fit1 + max(0, 1 - D)`, with the bonus suppressed when `D = 0`.
pub fn fit2(tt: &TruthTable, ws: &WalshSpectrum, anti: bool) -> Result<FitnessValue> {
    let (hits, dev) = deviation(tt, ws, anti)?;
    if dev == 0 {
        return Ok(FitnessValue::exact(hits));
    }
    let n = ws.n();
    let denom = ((1u64 << n) * (1u64 << (n / 2))) as f64;
    let bonus = (1.0 - dev as f64 / denom).max(0.0);
    Ok(FitnessValue {
        value: hits as f64 + bonus,
        integer_part: hits,
    })
}

/// Nonlinearity as a fitness; defined for even `n` only.
pub fn fitness_nl(ws: &WalshSpectrum) -> Result<FitnessValue> {
    if ws.n() % 2 == 1 {
        return Err(Error::OddN(ws.n()));
    }
    Ok(FitnessValue::exact(nonlinearity(ws) as u64))
}
