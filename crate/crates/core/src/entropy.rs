//! Hesitant, fuzzy and comprehensive entropies of T2 HFLTSs.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::it2::{scalar_fuzziness, FuzzinessMode, Grid};
use crate::linguistic::{Cle, LinguisticTermSet, T2Hflts};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub e_f: f64,
    pub e_h: f64,
    pub beta: f64,
    pub e_c: f64,
}

fn nonempty(h: &T2Hflts) -> Result<(usize, usize)> {
    h.span().ok_or(Error::Empty("T2 HFLTS"))
}

/// Mean pairwise index spread, scaled by `1/g`. Singletons carry no hesitation.
pub fn hesitant_entropy(h: &T2Hflts) -> Result<f64> {
    let (lo, hi) = nonempty(h)?;
    let l = hi - lo + 1;
    if l == 1 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for i in lo..=hi {
        for j in i + 1..=hi {
            sum += (j - i) as f64;
        }
    }
    let pairs = (l * (l - 1)) as f64 / 2.0;
    Ok(sum / pairs / h.g() as f64)
}

/// Importance degree of the hesitant part, by expression shape.
pub fn beta(cle: &Cle, g: usize) -> f64 {
    let th = |i: usize| PI * i as f64 / g as f64;
    let v = match *cle {
        Cle::Single { .. } => 0.0,
        Cle::MoreThan { i } => 0.5 * th(i).cos() + 0.5,
        Cle::LessThan { i } => 0.5 * (th(i) - PI / 2.0).sin() + 0.5,
        Cle::Between { i, j } => 0.5 * (th(i).cos() - th(j).cos()),
    };
    v.clamp(0.0, 1.0)
}

/// Shape to use when a range has no recorded expression.
pub fn implied_cle(h: &T2Hflts) -> Result<Cle> {
    let (lo, hi) = nonempty(h)?;
    Ok(if lo == hi {
        Cle::Single { i: lo }
    } else {
        Cle::Between { i: lo, j: hi }
    })
}

/// Per-term scalar fuzziness, indexed by term.
pub fn term_fuzziness(lts: &LinguisticTermSet, grid: &Grid, mode: FuzzinessMode) -> Vec<f64> {
    lts.terms()
        .iter()
        .map(|t| scalar_fuzziness(&t.semantics, grid, mode))
        .collect()
}

/// Average of `4 F_k (k/g)(1 - k/g)` over the member terms.
pub fn t2_fuzzy_entropy(h: &T2Hflts, fuzziness: &[f64]) -> Result<f64> {
    let (lo, hi) = nonempty(h)?;
    let g = h.g() as f64;
    if fuzziness.len() != h.g() + 1 {
        return Err(Error::LtsMismatch(h.g(), fuzziness.len().saturating_sub(1)));
    }
    let sum: f64 = (lo..=hi)
        .map(|k| {
            let r = k as f64 / g;
            4.0 * fuzziness[k] * r * (1.0 - r)
        })
        .sum();
    Ok(sum / (hi - lo + 1) as f64)
}

pub fn comprehensive_entropy(e_f: f64, e_h: f64, beta: f64) -> f64 {
    (e_f + beta * e_h) / (1.0 + beta * e_h)
}

/// Index-only fuzzy entropy (every term fully fuzzy).
pub fn t1_fuzzy_entropy(h: &T2Hflts) -> Result<f64> {
    t2_fuzzy_entropy(h, &vec![1.0; h.g() + 1])
}

pub fn t1_comprehensive(h: &T2Hflts, beta: f64) -> Result<f64> {
    Ok(comprehensive_entropy(
        t1_fuzzy_entropy(h)?,
        hesitant_entropy(h)?,
        beta,
    ))
}

/// All entropies for an expression, given per-term fuzziness.
pub fn entropy_report(cle: &Cle, g: usize, fuzziness: &[f64]) -> Result<EntropyReport> {
    let h = cle.transform(g)?;
    let e_f = t2_fuzzy_entropy(&h, fuzziness)?;
    let e_h = hesitant_entropy(&h)?;
    let beta = beta(cle, g);
    Ok(EntropyReport {
        e_f,
        e_h,
        beta,
        e_c: comprehensive_entropy(e_f, e_h, beta),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepCase {
    /// `H = {s_0 .. s_k}` for `k = 0..=g`.
    GrowingSet,
    /// `H = {s_k}` for `k = 0..=g`.
    SlidingSingleton,
}

impl SweepCase {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(SweepCase::GrowingSet),
            2 => Some(SweepCase::SlidingSingleton),
            _ => None,
        }
    }

    pub fn cle(&self, k: usize) -> Cle {
        match self {
            SweepCase::GrowingSet if k > 0 => Cle::LessThan { i: k },
            _ => Cle::Single { i: k },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    #[serde(flatten)]
    pub report: EntropyReport,
}

pub fn entropy_sweep(fuzziness: &[f64], case: SweepCase) -> Result<Vec<SweepRow>> {
    if fuzziness.len() < 2 {
        return Err(Error::Empty("term fuzziness"));
    }
    let g = fuzziness.len() - 1;
    (0..=g)
        .map(|k| {
            Ok(SweepRow {
                k,
                report: entropy_report(&case.cle(k), g, fuzziness)?,
            })
        })
        .collect()
}
