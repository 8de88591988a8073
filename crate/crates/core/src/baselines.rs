//! Two comparison methods on nine-parameter IT2 trapezoids: a likelihood-based
//! IT2 TOPSIS and the Wang–Liu–Qin rank-value method.

use serde::{Deserialize, Serialize};

use crate::envelope::{Representation, T2Envelope};
use crate::error::{Error, Result};
use crate::it2::{It2TrFN, Trapezoid};
use crate::ranking::{rank_by_values, RankedList};

/// IT2 trapezoid as `((a1..a4; H1, H2)^U, (a1..a4; H1, H2)^L)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NineParamIT2 {
    pub upper: [f64; 4],
    pub upper_heights: [f64; 2],
    pub lower: [f64; 4],
    pub lower_heights: [f64; 2],
}

impl NineParamIT2 {
    pub fn new(upper: [f64; 4], upper_height: f64, lower: [f64; 4], lower_height: f64) -> Result<Self> {
        let v = NineParamIT2 {
            upper,
            upper_heights: [upper_height; 2],
            lower,
            lower_heights: [lower_height; 2],
        };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, q) in [("upper", &self.upper), ("lower", &self.lower)] {
            if q.windows(2).any(|w| !(w[0] <= w[1])) || q.iter().any(|x| !x.is_finite()) {
                return Err(Error::validation(name, format!("unordered quadruple {q:?}")));
            }
        }
        if self.lower[0] < self.upper[0] - 1e-9 || self.lower[3] > self.upper[3] + 1e-9 {
            return Err(Error::Nesting(format!(
                "lower support [{}, {}] outside upper [{}, {}]",
                self.lower[0], self.lower[3], self.upper[0], self.upper[3]
            )));
        }
        if self.lower_heights[0] > self.upper_heights[0] + 1e-9 {
            return Err(Error::Nesting("lower height above upper height".into()));
        }
        Ok(())
    }

    pub fn from_it2(t: &It2TrFN) -> Self {
        NineParamIT2 {
            upper: t.umf().knots(),
            upper_heights: [t.umf().height(); 2],
            lower: t.lmf().knots(),
            lower_heights: [t.lmf().height(); 2],
        }
    }

    /// Uses the closed-form lower trapezoid when available, else a fitted one.
    pub fn from_envelope(e: &T2Envelope) -> Self {
        let (lower, lh) = match e.lmf {
            Some(t) => (t.knots(), t.height()),
            None => fit_trapezoid(&e.grid().points(), &e.lower),
        };
        NineParamIT2 {
            upper: e.umf.knots(),
            upper_heights: [e.umf.height(); 2],
            lower,
            lower_heights: [lh; 2],
        }
    }

    pub fn from_representation(r: &Representation) -> Self {
        match r {
            Representation::Term { semantics, .. } => Self::from_it2(semantics),
            Representation::Envelope(e) => Self::from_envelope(e),
        }
    }

    /// Crisp value as a zero-width number.
    pub fn crisp(x: f64) -> Self {
        NineParamIT2 {
            upper: [x; 4],
            upper_heights: [1.0; 2],
            lower: [x; 4],
            lower_heights: [1.0; 2],
        }
    }

    pub fn approx_eq(&self, other: &NineParamIT2, tol: f64) -> bool {
        let a = self.flat();
        let b = other.flat();
        a.iter().zip(b.iter()).all(|(p, q)| (p - q).abs() <= tol)
    }

    fn flat(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        out[..4].copy_from_slice(&self.upper);
        out[4..6].copy_from_slice(&self.upper_heights);
        out[6..10].copy_from_slice(&self.lower);
        out[10..].copy_from_slice(&self.lower_heights);
        out
    }
}

impl TryFrom<NineParamIT2> for It2TrFN {
    type Error = Error;

    fn try_from(v: NineParamIT2) -> Result<Self> {
        let [a, b, c, d] = v.upper;
        let [e, f, g, o] = v.lower;
        It2TrFN::new(
            Trapezoid::with_height(a, b, c, d, v.upper_heights[0])?,
            Trapezoid::with_height(e, f, g, o, v.lower_heights[0])?,
        )
    }
}

/// Fit `(knots, height)` of a trapezoid to a sampled convex membership.
///
/// The plateau is the run of samples at the maximum; each edge is a
/// least-squares line through the samples strictly between 0 and the height.
pub fn fit_trapezoid(xs: &[f64], mu: &[f64]) -> ([f64; 4], f64) {
    let h = mu.iter().copied().fold(0.0, f64::max);
    if h <= 0.0 {
        return ([0.0; 4], 0.0);
    }
    let first_pos = mu.iter().position(|&m| m > 0.0).unwrap();
    let last_pos = mu.iter().rposition(|&m| m > 0.0).unwrap();
    let top_lo = mu.iter().position(|&m| m >= h - 1e-9).unwrap();
    let top_hi = mu.iter().rposition(|&m| m >= h - 1e-9).unwrap();
    let (b, c) = (xs[top_lo], xs[top_hi]);

    // x-intercept of the fitted edge line, if the edge has enough samples.
    let intercept = |range: std::ops::Range<usize>| -> Option<f64> {
        let pts: Vec<(f64, f64)> = range
            .filter(|&i| mu[i] > 0.0 && mu[i] < h - 1e-9)
            .map(|i| (xs[i], mu[i]))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        if sxx == 0.0 || sxy == 0.0 {
            return None;
        }
        let slope = sxy / sxx;
        Some(mx - my / slope)
    };
    let a = intercept(first_pos..top_lo)
        .unwrap_or(xs[first_pos.saturating_sub(1)])
        .clamp(xs[0], b);
    let d = intercept(top_hi + 1..last_pos + 1)
        .unwrap_or(xs[(last_pos + 1).min(xs.len() - 1)])
        .clamp(c, xs[xs.len() - 1]);
    let a = if first_pos == top_lo { xs[first_pos] } else { a };
    let d = if last_pos == top_hi { xs[last_pos] } else { d };
    ([a, b, c, d], h)
}

// ---------------------------------------------------------------- TOPSIS

/// Weighted rating: componentwise products, minimum heights.
pub fn topsis_weighted(e: &NineParamIT2, w: &NineParamIT2) -> NineParamIT2 {
    let mul = |x: [f64; 4], y: [f64; 4]| [x[0] * y[0], x[1] * y[1], x[2] * y[2], x[3] * y[3]];
    let hmin = |x: [f64; 2], y: [f64; 2]| [x[0].min(y[0]), x[1].min(y[1])];
    NineParamIT2 {
        upper: mul(e.upper, w.upper),
        upper_heights: hmin(e.upper_heights, w.upper_heights),
        lower: mul(e.lower, w.lower),
        lower_heights: hmin(e.lower_heights, w.lower_heights),
    }
}

fn fold_column(column: &[NineParamIT2], pick: fn(f64, f64) -> f64) -> NineParamIT2 {
    let mut out = column[0];
    for v in &column[1..] {
        for k in 0..4 {
            out.upper[k] = pick(out.upper[k], v.upper[k]);
            out.lower[k] = pick(out.lower[k], v.lower[k]);
        }
        for k in 0..2 {
            out.upper_heights[k] = out.upper_heights[k].min(v.upper_heights[k]);
            out.lower_heights[k] = out.lower_heights[k].min(v.lower_heights[k]);
        }
    }
    out
}

/// Approximate positive and negative ideals of one criterion column.
pub fn topsis_ideals(column: &[NineParamIT2]) -> Result<(NineParamIT2, NineParamIT2)> {
    if column.is_empty() {
        return Err(Error::Empty("ratings column"));
    }
    Ok((fold_column(column, f64::max), fold_column(column, f64::min)))
}

/// One-sided index `max(1 - max(ratio, 0), 0)` comparing band `x` of X with band `y` of Y.
fn one_sided(x: &[f64; 4], hx: f64, y: &[f64; 4], hy: f64) -> Result<f64> {
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 0..4 {
        num += (y[k] - x[k]).max(0.0);
        den += (y[k] - x[k]).abs();
    }
    num += (y[3] - y[0]) + 2.0 * (hy - hx).max(0.0);
    den += (x[3] - x[0]) + (y[3] - y[0]) + 2.0 * (hy - hx).abs();
    if den <= 0.0 {
        return Err(Error::DegenerateLikelihood("zero denominator"));
    }
    Ok((1.0 - (num / den).max(0.0)).max(0.0))
}

/// Likelihood that `x >= y`: the mean of the lower index (X's lower band
/// against Y's upper band) and the upper index (X's upper band against Y's lower band).
pub fn likelihood_index(x: &NineParamIT2, y: &NineParamIT2) -> Result<f64> {
    let lo = one_sided(&x.lower, x.lower_heights[0], &y.upper, y.upper_heights[0])?;
    let hi = one_sided(&x.upper, x.upper_heights[0], &y.lower, y.lower_heights[0])?;
    Ok(0.5 * (lo + hi))
}

/// `sum(neg) / sum(pos + neg)` for one alternative's rows of indices.
pub fn closeness(li_pos: &[f64], li_neg: &[f64]) -> Result<f64> {
    if li_pos.len() != li_neg.len() || li_pos.is_empty() {
        return Err(Error::validation("likelihood rows", "rows must be nonempty and equally long"));
    }
    let neg: f64 = li_neg.iter().sum();
    let den: f64 = li_pos.iter().sum::<f64>() + neg;
    if den <= 0.0 {
        return Err(Error::DegenerateLikelihood("closeness denominator is zero"));
    }
    Ok(neg / den)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopsisResult {
    /// `LI(ideal+ >= rating)`, alternatives × criteria.
    pub li_pos: Vec<Vec<f64>>,
    /// `LI(rating >= ideal-)`, alternatives × criteria.
    pub li_neg: Vec<Vec<f64>>,
    pub closeness: Vec<f64>,
    pub ranking: RankedList,
}

/// Full TOPSIS on an alternatives × criteria rating matrix.
pub fn topsis(ratings: &[Vec<NineParamIT2>], weights: &[NineParamIT2]) -> Result<TopsisResult> {
    if ratings.is_empty() {
        return Err(Error::Empty("ratings"));
    }
    let n = weights.len();
    if ratings.iter().any(|r| r.len() != n) {
        return Err(Error::validation("ratings", "every row needs one rating per criterion"));
    }
    let weighted: Vec<Vec<NineParamIT2>> = ratings
        .iter()
        .map(|row| row.iter().zip(weights).map(|(e, w)| topsis_weighted(e, w)).collect())
        .collect();
    let mut ideals = Vec::with_capacity(n);
    for j in 0..n {
        let column: Vec<NineParamIT2> = weighted.iter().map(|row| row[j]).collect();
        ideals.push(topsis_ideals(&column)?);
    }
    let mut li_pos = Vec::new();
    let mut li_neg = Vec::new();
    for row in &weighted {
        li_pos.push(
            row.iter()
                .zip(&ideals)
                .map(|(e, (pos, _))| likelihood_index(pos, e))
                .collect::<Result<Vec<_>>>()?,
        );
        li_neg.push(
            row.iter()
                .zip(&ideals)
                .map(|(e, (_, neg))| likelihood_index(e, neg))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let cl = li_pos
        .iter()
        .zip(&li_neg)
        .map(|(p, q)| closeness(p, q))
        .collect::<Result<Vec<_>>>()?;
    let ranking = closeness_ranking(&cl);
    Ok(TopsisResult {
        li_pos,
        li_neg,
        closeness: cl,
        ranking,
    })
}

/// Order by closeness compared at three decimals, so values that agree at
/// reporting precision come out tied.
pub fn closeness_ranking(cl: &[f64]) -> RankedList {
    let rounded: Vec<f64> = cl.iter().map(|x| (x * 1000.0).round() / 1000.0).collect();
    rank_by_values(&rounded)
}

// ---------------------------------------------------------------- WLQ

/// `lambda * E`: scaled knots, heights unchanged.
pub fn wlq_scale(lambda: f64, e: &NineParamIT2) -> NineParamIT2 {
    let s = |q: [f64; 4]| q.map(|x| lambda * x);
    NineParamIT2 {
        upper: s(e.upper),
        lower: s(e.lower),
        ..*e
    }
}

/// `E1 ⊕ E2`: summed knots, minimum heights.
pub fn wlq_oplus(x: &NineParamIT2, y: &NineParamIT2) -> NineParamIT2 {
    let add = |p: [f64; 4], q: [f64; 4]| [p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]];
    let hmin = |p: [f64; 2], q: [f64; 2]| [p[0].min(q[0]), p[1].min(q[1])];
    NineParamIT2 {
        upper: add(x.upper, y.upper),
        upper_heights: hmin(x.upper_heights, y.upper_heights),
        lower: add(x.lower, y.lower),
        lower_heights: hmin(x.lower_heights, y.lower_heights),
    }
}

/// Weighted ⊕-sum `⊕ w_k E_k`.
pub fn wlq_weighted_sum(items: &[NineParamIT2], weights: &[f64]) -> Result<NineParamIT2> {
    if items.is_empty() || items.len() != weights.len() {
        return Err(Error::validation("weights", "need one weight per item"));
    }
    let mut acc = wlq_scale(weights[0], &items[0]);
    for (e, w) in items[1..].iter().zip(&weights[1..]) {
        acc = wlq_oplus(&acc, &wlq_scale(*w, e));
    }
    Ok(acc)
}

/// Collective matrix from a DMR × alternative × criterion tensor.
pub fn wlq_collect(tensor: &[Vec<Vec<NineParamIT2>>], lambda: &[f64]) -> Result<Vec<Vec<NineParamIT2>>> {
    if tensor.is_empty() || tensor.len() != lambda.len() {
        return Err(Error::validation("lambda", "need one weight per DMR"));
    }
    let (m, n) = (tensor[0].len(), tensor[0].first().map_or(0, Vec::len));
    if tensor.iter().any(|d| d.len() != m || d.iter().any(|r| r.len() != n)) {
        return Err(Error::validation("tensor", "ragged decision matrices"));
    }
    (0..m)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let cell: Vec<NineParamIT2> = tensor.iter().map(|d| d[i][j]).collect();
                    wlq_weighted_sum(&cell, lambda)
                })
                .collect()
        })
        .collect()
}

fn band_terms(a: &[f64; 4]) -> (f64, f64) {
    let mut m_sum = 0.0;
    let mut s_sum = 0.0;
    for p in 0..3 {
        let m = 0.5 * (a[p] + a[p + 1]);
        m_sum += m;
        s_sum += (0.5 * ((a[p] - m).powi(2) + (a[p + 1] - m).powi(2))).sqrt();
    }
    let mean = a.iter().sum::<f64>() / 4.0;
    let s4 = (0.25 * a.iter().map(|x| (x - mean).powi(2)).sum::<f64>()).sqrt();
    (m_sum, s_sum + s4)
}

/// Rank value: sum of the three segment means per band, minus a quarter of
/// the segment and overall spreads, plus the four heights.
pub fn wlq_rank_value(e: &NineParamIT2) -> f64 {
    let (mu, su) = band_terms(&e.upper);
    let (ml, sl) = band_terms(&e.lower);
    let heights: f64 = e.upper_heights.iter().chain(e.lower_heights.iter()).sum();
    mu + ml - 0.25 * (su + sl) + heights
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WlqResult {
    pub overall: Vec<NineParamIT2>,
    pub rank_values: Vec<f64>,
    pub ranking: RankedList,
}

pub fn wlq(tensor: &[Vec<Vec<NineParamIT2>>], lambda: &[f64], omega: &[f64]) -> Result<WlqResult> {
    let collective = wlq_collect(tensor, lambda)?;
    let overall = collective
        .iter()
        .map(|row| wlq_weighted_sum(row, omega))
        .collect::<Result<Vec<_>>>()?;
    let rank_values: Vec<f64> = overall.iter().map(wlq_rank_value).collect();
    let ranking = rank_by_values(&rank_values);
    Ok(WlqResult {
        overall,
        rank_values,
        ranking,
    })
}
