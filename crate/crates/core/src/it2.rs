//! Interval type-2 trapezoidal fuzzy numbers on the unit universe.
//!
//! Everything here is immutable once built. Continuous shapes ([`Trapezoid`],
//! [`It2TrFN`]) are evaluated exactly; fuzziness and centroids work on a
//! [`SampledFou`], the grid-sampled lower/upper membership pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when comparing memberships for nesting.
pub const NESTING_EPS: f64 = 1e-12;

/// Iteration cap for the enhanced Karnik-Mendel switch-point search.
pub const EKM_MAX_ITERATIONS: usize = 100;

/// A trapezoidal membership function `(a, b, c, d)` with its own height.
///
/// Zero outside `[a, d]`, `height` on `[b, c]`, linear on the two edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    height: f64,
}

impl Trapezoid {
    /// Normal trapezoid (height 1).
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::with_height(a, b, c, d, 1.0)
    }

    pub fn with_height(a: f64, b: f64, c: f64, d: f64, height: f64) -> Result<Self> {
        let bad = |reason| Error::InvalidTrapezoid {
            a,
            b,
            c,
            d,
            height,
            reason,
        };
        if ![a, b, c, d, height].iter().all(|v| v.is_finite()) {
            return Err(bad("non-finite parameter"));
        }
        if !(a <= b && b <= c && c <= d) {
            return Err(bad("knots must satisfy a <= b <= c <= d"));
        }
        if !(height > 0.0 && height <= 1.0) {
            return Err(bad("height must lie in (0, 1]"));
        }
        Ok(Trapezoid {
            a,
            b,
            c,
            d,
            height,
        })
    }

    /// Degenerate trapezoid concentrated at a single point.
    pub fn crisp(x: f64) -> Result<Self> {
        Self::new(x, x, x, x)
    }

    pub fn knots(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn support(&self) -> (f64, f64) {
        (self.a, self.d)
    }

    /// Midpoint of the plateau, `(b + c) / 2`.
    pub fn core_midpoint(&self) -> f64 {
        0.5 * (self.b + self.c)
    }

    pub fn membership(&self, x: f64) -> f64 {
        if x < self.a || x > self.d {
            0.0
        } else if x >= self.b && x <= self.c {
            self.height
        } else if x < self.b {
            self.height * (x - self.a) / (self.b - self.a)
        } else {
            self.height * (self.d - x) / (self.d - self.c)
        }
    }

    /// Closed alpha-cut. Level 0 returns the support; levels above the
    /// height return `None`.
    pub fn alpha_cut(&self, level: f64) -> Option<(f64, f64)> {
        if level > self.height + NESTING_EPS {
            return None;
        }
        let t = (level / self.height).clamp(0.0, 1.0);
        Some((
            self.a + t * (self.b - self.a),
            self.d - t * (self.d - self.c),
        ))
    }

    pub fn sample(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.membership(x)).collect()
    }

    /// Mirror image about `x = 0.5`.
    pub fn mirrored(&self) -> Self {
        Trapezoid {
            a: 1.0 - self.d,
            b: 1.0 - self.c,
            c: 1.0 - self.b,
            d: 1.0 - self.a,
            height: self.height,
        }
    }

    pub fn approx_eq(&self, other: &Trapezoid, tol: f64) -> bool {
        self.knots()
            .iter()
            .zip(other.knots().iter())
            .all(|(p, q)| (p - q).abs() <= tol)
            && (self.height - other.height).abs() <= tol
    }
}

/// Interval type-2 trapezoidal fuzzy number: an upper and a nested lower trapezoid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct It2TrFN {
    umf: Trapezoid,
    lmf: Trapezoid,
}

impl It2TrFN {
    pub fn new(umf: Trapezoid, lmf: Trapezoid) -> Result<Self> {
        if lmf.height > umf.height + NESTING_EPS {
            return Err(Error::Nesting(format!(
                "lower height {} above upper height {}",
                lmf.height, umf.height
            )));
        }
        if lmf.a < umf.a - NESTING_EPS || lmf.d > umf.d + NESTING_EPS {
            return Err(Error::Nesting(format!(
                "lower support [{}, {}] not inside upper support [{}, {}]",
                lmf.a, lmf.d, umf.a, umf.d
            )));
        }
        // Both are piecewise linear; checking the union of knots plus the
        // midpoints between them covers every linear piece.
        let mut knots: Vec<f64> = umf.knots().into_iter().chain(lmf.knots()).collect();
        knots.sort_by(f64::total_cmp);
        let mids: Vec<f64> = knots.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        for x in knots.iter().chain(mids.iter()) {
            let (lo, hi) = (lmf.membership(*x), umf.membership(*x));
            if lo > hi + NESTING_EPS {
                return Err(Error::Nesting(format!(
                    "at x={x}: lower {lo} > upper {hi}"
                )));
            }
        }
        Ok(It2TrFN { umf, lmf })
    }

    /// A type-1 trapezoid viewed as an IT2 number with no footprint.
    pub fn degenerate(t: Trapezoid) -> Self {
        It2TrFN { umf: t, lmf: t }
    }

    pub fn umf(&self) -> &Trapezoid {
        &self.umf
    }

    pub fn lmf(&self) -> &Trapezoid {
        &self.lmf
    }

    pub fn membership_interval(&self, x: f64) -> (f64, f64) {
        (self.lmf.membership(x), self.umf.membership(x))
    }

    pub fn sample(&self, grid: &Grid) -> SampledFou {
        let xs = grid.points();
        let upper = self.umf.sample(&xs);
        let lower = self
            .lmf
            .sample(&xs)
            .into_iter()
            .zip(upper.iter())
            .map(|(l, u)| l.min(*u))
            .collect();
        SampledFou { xs, lower, upper }
    }

    pub fn mirrored(&self) -> Self {
        It2TrFN {
            umf: self.umf.mirrored(),
            lmf: self.lmf.mirrored(),
        }
    }

    pub fn approx_eq(&self, other: &It2TrFN, tol: f64) -> bool {
        self.umf.approx_eq(&other.umf, tol) && self.lmf.approx_eq(&other.lmf, tol)
    }
}

/// Uniform sampling grid over the universe `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    points: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { points: 1001 }
    }
}

impl Grid {
    pub fn new(points: usize) -> Result<Self> {
        if points < 3 {
            return Err(Error::validation(
                "grid_points",
                format!("need at least 3 points, got {points}"),
            ));
        }
        Ok(Grid { points })
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> f64 {
        i as f64 / (self.points - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.point(i)).collect()
    }
}

/// Grid-sampled footprint of uncertainty.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFou {
    xs: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SampledFou {
    pub fn new(xs: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if xs.len() < 3 {
            return Err(Error::validation(
                "fou",
                format!("need at least 3 samples, got {}", xs.len()),
            ));
        }
        if lower.len() != xs.len() || upper.len() != xs.len() {
            return Err(Error::validation(
                "fou",
                "lower/upper length differs from the grid",
            ));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::validation("fou", "grid must be strictly increasing"));
        }
        for (i, (&l, &u)) in lower.iter().zip(upper.iter()).enumerate() {
            if !(l >= 0.0 && u <= 1.0 + NESTING_EPS) {
                return Err(Error::validation(
                    format!("fou[{i}]"),
                    format!("membership outside [0, 1]: lower={l}, upper={u}"),
                ));
            }
            if l > u + NESTING_EPS {
                return Err(Error::Nesting(format!(
                    "sample {i} (x={}): lower {l} > upper {u}",
                    xs[i]
                )));
            }
        }
        Ok(SampledFou { xs, lower, upper })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// `(x, lower, upper)` rows.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.xs
            .iter()
            .zip(self.lower.iter().zip(self.upper.iter()))
            .map(|(&x, (&l, &u))| (x, l, u))
    }

    pub fn is_nested(&self) -> bool {
        self.lower
            .iter()
            .zip(self.upper.iter())
            .all(|(l, u)| *l <= *u + NESTING_EPS)
    }
}

/// Yager's normalized fuzziness with `g(u) = 1 - |2u - 1|`, averaged over the samples.
pub fn yager_fuzziness(mu: &[f64]) -> Result<f64> {
    if mu.is_empty() {
        return Err(Error::Empty("membership samples"));
    }
    let mut total = 0.0;
    for (i, &m) in mu.iter().enumerate() {
        if !(-NESTING_EPS..=1.0 + NESTING_EPS).contains(&m) {
            return Err(Error::validation(
                format!("mu[{i}]"),
                format!("membership {m} outside [0, 1]"),
            ));
        }
        total += 1.0 - (2.0 * m.clamp(0.0, 1.0) - 1.0).abs();
    }
    Ok(total / mu.len() as f64)
}

/// Interval `[left, right]` of fuzziness values over all embedded sets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzinessInterval {
    pub left: f64,
    pub right: f64,
}

/// How a fuzziness interval collapses to the scalar used per term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FuzzinessMode {
    #[default]
    Midpoint,
    Left,
    Right,
}

impl FuzzinessInterval {
    pub fn collapse(&self, mode: FuzzinessMode) -> f64 {
        match mode {
            FuzzinessMode::Midpoint => 0.5 * (self.left + self.right),
            FuzzinessMode::Left => self.left,
            FuzzinessMode::Right => self.right,
        }
    }
}

/// Fuzziness interval of an IT2 set via the two extreme embedded sets.
///
/// The minimum picks, at every sample, whichever bound lies farther from 0.5.
/// The maximum takes the bound nearest 0.5, or 0.5 itself when the interval
/// straddles it.
pub fn it2_fuzziness(fou: &SampledFou) -> FuzzinessInterval {
    let n = fou.len() as f64;
    let g = |u: f64| 1.0 - (2.0 * u - 1.0).abs();
    let (mut left, mut right) = (0.0, 0.0);
    for (&lo, &up) in fou.lower.iter().zip(fou.upper.iter()) {
        let farthest = if (up - 0.5).abs() > (lo - 0.5).abs() {
            up
        } else {
            lo
        };
        let nearest = if up < 0.5 && lo < 0.5 {
            up
        } else if up > 0.5 && lo > 0.5 {
            lo
        } else {
            0.5
        };
        left += g(farthest);
        right += g(nearest);
    }
    FuzzinessInterval {
        left: left / n,
        right: right / n,
    }
}

pub fn scalar_fuzziness(t: &It2TrFN, grid: &Grid, mode: FuzzinessMode) -> f64 {
    it2_fuzziness(&t.sample(grid)).collapse(mode)
}

/// Centroid interval `[left, right]` of an IT2 set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Centroid {
    pub left: f64,
    pub right: f64,
}

impl Centroid {
    pub fn center(&self) -> f64 {
        0.5 * (self.left + self.right)
    }
}

/// Range of `sum(x_i w_i) / sum(w_i)` over `w_i` in `[lo_i, hi_i]`, found with
/// the enhanced Karnik-Mendel switch-point iteration.
///
/// `points` need not be sorted. Fails when every `hi_i` is zero.
pub fn interval_weighted_mean(points: &[f64], lo: &[f64], hi: &[f64]) -> Result<(f64, f64)> {
    if points.is_empty() {
        return Err(Error::Empty("weighted mean inputs"));
    }
    if lo.len() != points.len() || hi.len() != points.len() {
        return Err(Error::validation(
            "weights",
            "weight bounds length differs from the point count",
        ));
    }
    for (i, (&l, &h)) in lo.iter().zip(hi.iter()).enumerate() {
        if !(l >= 0.0 && l <= h + NESTING_EPS) {
            return Err(Error::validation(
                format!("weights[{i}]"),
                format!("expected 0 <= lower <= upper, got [{l}, {h}]"),
            ));
        }
    }
    if hi.iter().all(|&h| h <= 0.0) {
        return Err(Error::ZeroWeights);
    }
    if points.len() == 1 {
        return Ok((points[0], points[0]));
    }

    let sorted = points.windows(2).all(|w| w[0] <= w[1]);
    if sorted {
        return Ok((ekm_left(points, lo, hi)?, ekm_right(points, lo, hi)?));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].total_cmp(&points[j]));
    let xs: Vec<f64> = order.iter().map(|&i| points[i]).collect();
    let l: Vec<f64> = order.iter().map(|&i| lo[i]).collect();
    let h: Vec<f64> = order.iter().map(|&i| hi[i]).collect();
    Ok((ekm_left(&xs, &l, &h)?, ekm_right(&xs, &l, &h)?))
}

/// Number of points that take the upper weight (left end) or the lower
/// weight (right end). A point sitting exactly at `y` does not move the
/// mean, so it goes wherever it keeps the denominator largest.
fn switch_index(xs: &[f64], y: f64, left: bool) -> usize {
    let k = if left {
        xs.partition_point(|&x| x <= y)
    } else {
        xs.partition_point(|&x| x < y)
    };
    k.clamp(1, xs.len() - 1)
}

/// Weighted mean where the first `k` points take `first` and the rest take `rest`.
fn split_mean(xs: &[f64], first: &[f64], rest: &[f64], k: usize) -> Option<f64> {
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..xs.len() {
        let w = if i < k { first[i] } else { rest[i] };
        a += xs[i] * w;
        b += w;
    }
    (b > 0.0).then(|| a / b)
}

fn ekm_left(xs: &[f64], lo: &[f64], hi: &[f64]) -> Result<f64> {
    let n = xs.len();
    let mut k = ((n as f64 / 2.4).round() as usize).clamp(1, n - 1);
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..n {
        let w = if i < k { hi[i] } else { lo[i] };
        a += xs[i] * w;
        b += w;
    }
    // Push more points onto the upper weight until the denominator is positive.
    while b <= 0.0 && k < n {
        a += xs[k] * (hi[k] - lo[k]);
        b += hi[k] - lo[k];
        k += 1;
    }
    if b <= 0.0 {
        return Err(Error::UndefinedCentroid);
    }
    let mut y = a / b;
    for _ in 0..EKM_MAX_ITERATIONS {
        let k_new = switch_index(xs, y, true);
        if k_new == k {
            break;
        }
        let (from, to) = (k.min(k_new), k.max(k_new));
        let sign = if k_new > k { 1.0 } else { -1.0 };
        for i in from..to {
            a += sign * xs[i] * (hi[i] - lo[i]);
            b += sign * (hi[i] - lo[i]);
        }
        k = k_new;
        if b <= 0.0 {
            return Err(Error::UndefinedCentroid);
        }
        let y_new = a / b;
        let settled = (y_new - y).abs() <= 1e-12;
        y = y_new;
        if settled {
            break;
        }
    }
    // Recompute from scratch to shed accumulated rounding.
    Ok(split_mean(xs, hi, lo, k).unwrap_or(y))
}

fn ekm_right(xs: &[f64], lo: &[f64], hi: &[f64]) -> Result<f64> {
    let n = xs.len();
    let mut k = ((n as f64 / 1.7).round() as usize).clamp(1, n - 1);
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..n {
        let w = if i < k { lo[i] } else { hi[i] };
        a += xs[i] * w;
        b += w;
    }
    while b <= 0.0 && k > 0 {
        k -= 1;
        a += xs[k] * (hi[k] - lo[k]);
        b += hi[k] - lo[k];
    }
    if b <= 0.0 {
        return Err(Error::UndefinedCentroid);
    }
    let mut y = a / b;
    for _ in 0..EKM_MAX_ITERATIONS {
        let k_new = switch_index(xs, y, false);
        if k_new == k {
            break;
        }
        let (from, to) = (k.min(k_new), k.max(k_new));
        // Points in [from, to) switch from upper to lower weight when k grows.
        let sign = if k_new > k { -1.0 } else { 1.0 };
        for i in from..to {
            a += sign * xs[i] * (hi[i] - lo[i]);
            b += sign * (hi[i] - lo[i]);
        }
        k = k_new;
        if b <= 0.0 {
            return Err(Error::UndefinedCentroid);
        }
        let y_new = a / b;
        let settled = (y_new - y).abs() <= 1e-12;
        y = y_new;
        if settled {
            break;
        }
    }
    Ok(split_mean(xs, lo, hi, k).unwrap_or(y))
}

pub fn ekm_centroid(fou: &SampledFou) -> Result<Centroid> {
    if fou.upper.iter().all(|&u| u <= 0.0) {
        return Err(Error::UndefinedCentroid);
    }
    let (left, right) = interval_weighted_mean(&fou.xs, &fou.lower, &fou.upper)?;
    Ok(Centroid { left, right })
}

/// Plain type-1 centroid `sum(x mu) / sum(mu)`.
pub fn t1_centroid(xs: &[f64], mu: &[f64]) -> Result<f64> {
    let den: f64 = mu.iter().sum();
    if den <= 0.0 {
        return Err(Error::UndefinedCentroid);
    }
    Ok(xs.iter().zip(mu).map(|(x, m)| x * m).sum::<f64>() / den)
}
