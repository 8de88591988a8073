//! Fuzzy weighted average (alpha-cut + KM) and the linguistic weighted average.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::it2::{interval_weighted_mean, Grid, It2TrFN, SampledFou, Trapezoid, NESTING_EPS};

/// Default number of alpha levels, counting both 0 and the top level.
pub const DEFAULT_ALPHA_LEVELS: usize = 101;

/// A convex type-1 fuzzy set: closed-form trapezoid or piecewise-linear samples.
#[derive(Debug, Clone, PartialEq)]
pub enum T1Set {
    Trapezoid(Trapezoid),
    Sampled { xs: Vec<f64>, mu: Vec<f64> },
}

impl T1Set {
    pub fn sampled(xs: Vec<f64>, mu: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != mu.len() {
            return Err(Error::validation("sampled set", "need matching xs/mu with >= 2 points"));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::validation("sampled set", "xs must be strictly increasing"));
        }
        if mu.iter().any(|m| !(0.0..=1.0 + NESTING_EPS).contains(m)) {
            return Err(Error::validation("sampled set", "membership outside [0, 1]"));
        }
        if mu.iter().all(|&m| m <= 0.0) {
            return Err(Error::Empty("sampled set has no support"));
        }
        Ok(T1Set::Sampled { xs, mu })
    }

    pub fn crisp(x: f64) -> Result<Self> {
        Ok(T1Set::Trapezoid(Trapezoid::crisp(x)?))
    }

    pub fn height(&self) -> f64 {
        match self {
            T1Set::Trapezoid(t) => t.height(),
            T1Set::Sampled { mu, .. } => mu.iter().copied().fold(0.0, f64::max),
        }
    }

    pub fn membership(&self, x: f64) -> f64 {
        match self {
            T1Set::Trapezoid(t) => t.membership(x),
            T1Set::Sampled { xs, mu } => interpolate(xs, mu, x),
        }
    }

    /// Closed alpha-cut; level 0 is the closure of the support.
    pub fn alpha_cut(&self, level: f64) -> Option<(f64, f64)> {
        match self {
            T1Set::Trapezoid(t) => t.alpha_cut(level),
            T1Set::Sampled { xs, mu } => sampled_cut(xs, mu, level),
        }
    }
}

impl From<Trapezoid> for T1Set {
    fn from(t: Trapezoid) -> Self {
        T1Set::Trapezoid(t)
    }
}

fn interpolate(xs: &[f64], mu: &[f64], x: f64) -> f64 {
    if x < xs[0] || x > xs[xs.len() - 1] {
        return 0.0;
    }
    let k = xs.partition_point(|&p| p <= x);
    if k == 0 {
        return mu[0];
    }
    if k == xs.len() {
        return mu[xs.len() - 1];
    }
    let t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    mu[k - 1] + t * (mu[k] - mu[k - 1])
}

fn sampled_cut(xs: &[f64], mu: &[f64], level: f64) -> Option<(f64, f64)> {
    let n = xs.len();
    let height = mu.iter().copied().fold(0.0, f64::max);
    if level > height + NESTING_EPS {
        return None;
    }
    if level <= 0.0 {
        let first = mu.iter().position(|&m| m > 0.0)?;
        let last = mu.iter().rposition(|&m| m > 0.0)?;
        return Some((xs[first.saturating_sub(1)], xs[(last + 1).min(n - 1)]));
    }
    let level = level.min(height);
    let first = mu.iter().position(|&m| m >= level)?;
    let last = mu.iter().rposition(|&m| m >= level)?;
    let left = if first == 0 {
        xs[0]
    } else {
        let (m0, m1) = (mu[first - 1], mu[first]);
        xs[first - 1] + (level - m0) / (m1 - m0) * (xs[first] - xs[first - 1])
    };
    let right = if last == n - 1 {
        xs[n - 1]
    } else {
        let (m0, m1) = (mu[last], mu[last + 1]);
        xs[last] + (m0 - level) / (m0 - m1) * (xs[last + 1] - xs[last])
    };
    Some((left, right))
}

/// An interval type-2 set given by its upper and lower type-1 sets.
#[derive(Debug, Clone, PartialEq)]
pub struct It2Set {
    pub upper: T1Set,
    pub lower: T1Set,
}

impl It2Set {
    pub fn new(upper: T1Set, lower: T1Set) -> Self {
        It2Set { upper, lower }
    }

    /// Crisp weight promoted to a zero-width set.
    pub fn crisp(x: f64) -> Result<Self> {
        Ok(It2TrFN::degenerate(Trapezoid::crisp(x)?).into())
    }
}

impl From<It2TrFN> for It2Set {
    fn from(t: It2TrFN) -> Self {
        It2Set {
            upper: T1Set::Trapezoid(*t.umf()),
            lower: T1Set::Trapezoid(*t.lmf()),
        }
    }
}

/// A type-1 result stored as nested alpha-cuts `(level, lo, hi)`, bottom first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaCutSet {
    cuts: Vec<(f64, f64, f64)>,
}

impl AlphaCutSet {
    /// Builds from cuts ordered by increasing level; forces nesting against
    /// rounding noise.
    pub fn new(mut cuts: Vec<(f64, f64, f64)>) -> Result<Self> {
        if cuts.is_empty() {
            return Err(Error::Empty("alpha cuts"));
        }
        for k in 1..cuts.len() {
            let (_, plo, phi) = cuts[k - 1];
            let cut = &mut cuts[k];
            cut.1 = cut.1.max(plo);
            cut.2 = cut.2.min(phi).max(cut.1);
        }
        Ok(AlphaCutSet { cuts })
    }

    pub fn cuts(&self) -> &[(f64, f64, f64)] {
        &self.cuts
    }

    pub fn height(&self) -> f64 {
        self.cuts.last().map_or(0.0, |c| c.0)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.cuts[0].1, self.cuts[0].2)
    }

    pub fn membership(&self, x: f64) -> f64 {
        let (lo0, hi0) = self.support();
        if x < lo0 || x > hi0 {
            return 0.0;
        }
        self.edge(x, |c| c.1, true).min(self.edge(x, |c| c.2, false))
    }

    /// Level reached along one edge of the cut stack at position `x`.
    fn edge(&self, x: f64, end: impl Fn(&(f64, f64, f64)) -> f64, rising: bool) -> f64 {
        let cuts = &self.cuts;
        let inside = |p: f64| if rising { p <= x } else { p >= x };
        // Number of cuts whose endpoint lies on the inner side of x.
        let k = cuts.partition_point(|c| inside(end(c)));
        if k == cuts.len() {
            return self.height();
        }
        if k == 0 {
            return 0.0;
        }
        let (l0, p0) = (cuts[k - 1].0, end(&cuts[k - 1]));
        let (l1, p1) = (cuts[k].0, end(&cuts[k]));
        if p1 == p0 {
            return l0;
        }
        l0 + (x - p0) / (p1 - p0) * (l1 - l0)
    }

    pub fn sample(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.membership(x)).collect()
    }

    /// Four-knot summary: support and top cut, with the top level as height.
    pub fn knots(&self) -> ([f64; 4], f64) {
        let (_, a, d) = self.cuts[0];
        let (h, b, c) = *self.cuts.last().unwrap();
        ([a, b, c, d], h)
    }
}

fn ladder(top: f64, levels: usize) -> Vec<f64> {
    (0..levels)
        .map(|k| top * k as f64 / (levels - 1) as f64)
        .collect()
}

/// Fuzzy weighted average `sum(x_i w_i) / sum(w_i)` of type-1 sets, evaluated
/// at `levels` uniform alpha levels up to the smallest input height.
pub fn fwa(xs: &[T1Set], ws: &[T1Set], levels: usize) -> Result<AlphaCutSet> {
    if xs.is_empty() {
        return Err(Error::Empty("fwa inputs"));
    }
    if xs.len() != ws.len() {
        return Err(Error::validation(
            "weights",
            format!("{} values but {} weights", xs.len(), ws.len()),
        ));
    }
    if levels < 2 {
        return Err(Error::validation("alpha_levels", "need at least 2 levels"));
    }
    let top = xs
        .iter()
        .chain(ws.iter())
        .map(T1Set::height)
        .fold(1.0, f64::min);
    let n = xs.len();
    let mut cuts = Vec::with_capacity(levels);
    let (mut l, mut r, mut wl, mut wr) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for level in ladder(top, levels) {
        for i in 0..n {
            (l[i], r[i]) = xs[i].alpha_cut(level).ok_or(Error::Empty("alpha cut"))?;
            (wl[i], wr[i]) = ws[i].alpha_cut(level).ok_or(Error::Empty("alpha cut"))?;
            if wl[i] < 0.0 {
                return Err(Error::validation("weights", "weights must be nonnegative"));
            }
        }
        let (y_l, _) = interval_weighted_mean(&l, &wl, &wr)?;
        let (_, y_r) = interval_weighted_mean(&r, &wl, &wr)?;
        cuts.push((level, y_l, y_r));
    }
    AlphaCutSet::new(cuts)
}

/// LWA result: upper from the upper memberships, lower from the lower ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LwaResult {
    pub upper: AlphaCutSet,
    pub lower: AlphaCutSet,
}

impl LwaResult {
    pub fn fou(&self, grid: &Grid) -> SampledFou {
        let xs = grid.points();
        let upper = self.upper.sample(&xs);
        let lower = self
            .lower
            .sample(&xs)
            .into_iter()
            .zip(upper.iter())
            .map(|(l, &u)| {
                debug_assert!(l <= u + 1e-9, "LWA lower {l} above upper {u}");
                l.min(u)
            })
            .collect();
        SampledFou::new(xs, lower, upper).expect("LWA output is nested")
    }
}

pub fn lwa(xs: &[It2Set], ws: &[It2Set], levels: usize) -> Result<LwaResult> {
    let pick = |v: &[It2Set], upper: bool| -> Vec<T1Set> {
        v.iter()
            .map(|s| if upper { s.upper.clone() } else { s.lower.clone() })
            .collect()
    };
    Ok(LwaResult {
        upper: fwa(&pick(xs, true), &pick(ws, true), levels)?,
        lower: fwa(&pick(xs, false), &pick(ws, false), levels)?,
    })
}
