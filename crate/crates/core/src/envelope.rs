//! OWA-based fuzzy envelopes for T2 HFLTSs.
//!
//! The upper envelope is a trapezoid built from the member terms' upper
//! memberships; the lower track starts from the same construction on the
//! lower memberships and is then trimmed by the comprehensive entropy, which
//! widens the footprint for more hesitant expressions.

use serde::{Deserialize, Serialize};

use crate::aggregation::{It2Set, T1Set};
use crate::entropy::{entropy_report, implied_cle, term_fuzziness, EntropyReport};
use crate::error::{Error, Result};
use crate::it2::{FuzzinessMode, Grid, It2TrFN, SampledFou, Trapezoid, NESTING_EPS};
use crate::linguistic::{Cle, LinguisticTermSet, T2Hflts};

/// OWA parameter fitted to the worked {M, G, VG} envelope of the shipped LTS.
pub const CALIBRATED_ALPHA: f64 = 0.5826;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OwaKind {
    W1,
    W2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShoulderPolicy {
    /// Open-ended expressions reaching `s_0`/`s_g` become shoulders.
    #[default]
    Clamp,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Band {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeConfig {
    pub alpha: f64,
    /// OWA kinds for the left and right inner points.
    pub owa_kinds: [OwaKind; 2],
    pub shoulder_policy: ShoulderPolicy,
    pub grid: Grid,
    pub fuzziness_mode: FuzzinessMode,
}

impl Default for EnvelopeConfig {
    fn default() -> Self {
        EnvelopeConfig {
            alpha: CALIBRATED_ALPHA,
            owa_kinds: [OwaKind::W2, OwaKind::W1],
            shoulder_policy: ShoulderPolicy::Clamp,
            grid: Grid::default(),
            fuzziness_mode: FuzzinessMode::Midpoint,
        }
    }
}

impl EnvelopeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::validation(
                "alpha",
                format!("must lie in [0, 1], got {}", self.alpha),
            ));
        }
        Ok(())
    }
}

pub fn owa_weights(kind: OwaKind, n: usize, alpha: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Empty("OWA weight vector"));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::validation("alpha", format!("must lie in [0, 1], got {alpha}")));
    }
    let beta = 1.0 - alpha;
    let last = n as i32 - 1;
    let w: Vec<f64> = match kind {
        OwaKind::W1 => (0..n as i32)
            .map(|i| {
                if i == last {
                    beta.powi(last)
                } else {
                    alpha * beta.powi(i)
                }
            })
            .collect(),
        OwaKind::W2 => (0..n as i32)
            .map(|i| {
                if i == 0 {
                    alpha.powi(last)
                } else {
                    beta * alpha.powi(last - i)
                }
            })
            .collect(),
    };
    let sum: f64 = w.iter().sum();
    assert!((sum - 1.0).abs() < 1e-9, "OWA weights sum to {sum}");
    Ok(w)
}

/// Ordered weighted average: weights apply to the values sorted descending.
pub fn owa(weights: &[f64], values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    weights.iter().zip(v.iter()).map(|(w, x)| w * x).sum()
}

/// Envelope of a multi-term expression.
#[derive(Debug, Clone, PartialEq)]
pub struct T2Envelope {
    pub source: T2Hflts,
    pub cle: Cle,
    pub umf: Trapezoid,
    /// Lower envelope before the entropy trim.
    pub lmf_t1: Trapezoid,
    /// Trimmed lower membership sampled on the grid.
    pub lower: Vec<f64>,
    /// Closed form of `lower` when it is still a trapezoid.
    pub lmf: Option<Trapezoid>,
    pub entropy: EntropyReport,
    grid: Grid,
}

impl T2Envelope {
    pub fn e_c(&self) -> f64 {
        self.entropy.e_c
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn fou(&self) -> SampledFou {
        let xs = self.grid.points();
        let upper = self.umf.sample(&xs);
        SampledFou::new(xs, self.lower.clone(), upper).expect("envelope lower track is nested")
    }

    pub fn it2_set(&self) -> It2Set {
        let lower = match self.lmf {
            Some(t) => T1Set::Trapezoid(t),
            None => T1Set::sampled(self.grid.points(), self.lower.clone())
                .expect("envelope lower track is valid"),
        };
        It2Set::new(T1Set::Trapezoid(self.umf), lower)
    }
}

/// How one survey response is represented.
#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    /// Single term: its own semantics, no envelope built.
    Term { index: usize, semantics: It2TrFN },
    Envelope(Box<T2Envelope>),
}

impl Representation {
    pub fn is_envelope(&self) -> bool {
        matches!(self, Representation::Envelope(_))
    }

    pub fn it2_set(&self) -> It2Set {
        match self {
            Representation::Term { semantics, .. } => It2Set::from(*semantics),
            Representation::Envelope(e) => e.it2_set(),
        }
    }

    pub fn fou(&self, grid: &Grid) -> SampledFou {
        match self {
            Representation::Term { semantics, .. } => semantics.sample(grid),
            Representation::Envelope(e) => e.fou(),
        }
    }
}

/// Builds envelopes against one term set, caching per-term fuzziness.
#[derive(Debug, Clone)]
pub struct EnvelopeBuilder<'a> {
    lts: &'a LinguisticTermSet,
    cfg: EnvelopeConfig,
    fuzziness: Vec<f64>,
}

impl<'a> EnvelopeBuilder<'a> {
    pub fn new(lts: &'a LinguisticTermSet, cfg: EnvelopeConfig) -> Result<Self> {
        cfg.validate()?;
        let fuzziness = term_fuzziness(lts, &cfg.grid, cfg.fuzziness_mode);
        Ok(EnvelopeBuilder {
            lts,
            cfg,
            fuzziness,
        })
    }

    pub fn lts(&self) -> &LinguisticTermSet {
        self.lts
    }

    pub fn config(&self) -> &EnvelopeConfig {
        &self.cfg
    }

    /// Scalar fuzziness of each term under the configured collapse mode.
    pub fn term_fuzziness(&self) -> &[f64] {
        &self.fuzziness
    }

    pub fn entropy(&self, cle: &Cle) -> Result<EntropyReport> {
        entropy_report(cle, self.lts.g(), &self.fuzziness)
    }

    /// Type-1 envelope of one band. `shape` selects the shoulder handling.
    pub fn t1_envelope(&self, h: &T2Hflts, shape: &Cle, band: Band) -> Result<Trapezoid> {
        if h.g() != self.lts.g() {
            return Err(Error::LtsMismatch(h.g(), self.lts.g()));
        }
        let (lo, hi) = h.span().ok_or(Error::Empty("T2 HFLTS"))?;
        let pick = |k: usize| -> Result<Trapezoid> {
            let s = self.lts.semantics(k)?;
            Ok(match band {
                Band::Upper => *s.umf(),
                Band::Lower => *s.lmf(),
            })
        };
        if lo == hi {
            return pick(lo);
        }
        let members = (lo..=hi).map(pick).collect::<Result<Vec<_>>>()?;
        let a = members.iter().map(|t| t.knots()[0]).fold(f64::INFINITY, f64::min);
        let d = members.iter().map(|t| t.knots()[3]).fold(f64::NEG_INFINITY, f64::max);
        let height = members.iter().map(|t| t.height()).fold(1.0, f64::min);
        let mids: Vec<f64> = members.iter().map(|t| t.core_midpoint()).collect();
        let n = mids.len();
        let [s, t] = self.cfg.owa_kinds;
        let (mut a, mut b) = (a, owa(&owa_weights(s, n, self.cfg.alpha)?, &mids));
        let (mut c, mut d) = (owa(&owa_weights(t, n, self.cfg.alpha)?, &mids), d);
        if b > c + 1e-12 {
            return Err(Error::validation(
                "owa_kinds",
                format!("left inner point {b} exceeds right inner point {c} for {h}; swap the OWA kinds"),
            ));
        }
        c = c.max(b);
        if self.cfg.shoulder_policy == ShoulderPolicy::Clamp {
            match shape {
                Cle::MoreThan { .. } if hi == self.lts.g() => {
                    c = 1.0;
                    d = 1.0;
                }
                Cle::LessThan { .. } if lo == 0 => {
                    a = 0.0;
                    b = 0.0;
                }
                _ => {}
            }
        }
        Trapezoid::with_height(a, b, c, d, height)
    }

    pub fn t2_envelope(&self, cle: &Cle) -> Result<T2Envelope> {
        let h = cle.transform(self.lts.g())?;
        self.envelope_with_shape(&h, cle)
    }

    /// Envelope of a bare range; the shape is inferred as `Between` (or `Single`).
    pub fn t2_envelope_for(&self, h: &T2Hflts) -> Result<T2Envelope> {
        self.envelope_with_shape(h, &implied_cle(h)?)
    }

    fn envelope_with_shape(&self, h: &T2Hflts, cle: &Cle) -> Result<T2Envelope> {
        let umf = self.t1_envelope(h, cle, Band::Upper)?;
        let lmf_t1 = self.t1_envelope(h, cle, Band::Lower)?;
        let entropy = self.entropy(cle)?;
        let e_c = entropy.e_c;
        let xs = self.cfg.grid.points();
        let upper = umf.sample(&xs);
        let l1 = lmf_t1.sample(&xs);
        let lower: Vec<f64> = upper
            .iter()
            .zip(l1.iter())
            .map(|(&u, &l)| (u - (u - l).max(e_c)).max(0.0))
            .collect();

        let same = |track: &[f64]| {
            track
                .iter()
                .zip(lower.iter())
                .all(|(p, q)| (p - q).abs() <= 1e-12)
        };
        let mut lmf = None;
        if same(&l1) && It2TrFN::new(umf, lmf_t1).is_ok() {
            lmf = Some(lmf_t1);
        } else if let Some(shrunk) = shrink(&umf, e_c) {
            if same(&shrunk.sample(&xs)) {
                lmf = Some(shrunk);
            }
        }
        debug_assert!(lower.iter().zip(upper.iter()).all(|(l, u)| *l <= u + NESTING_EPS));
        Ok(T2Envelope {
            source: *h,
            cle: *cle,
            umf,
            lmf_t1,
            lower,
            lmf,
            entropy,
            grid: self.cfg.grid,
        })
    }

    /// Single terms keep their own semantics; everything else gets an envelope.
    pub fn represent(&self, cle: &Cle) -> Result<Representation> {
        match *cle {
            Cle::Single { i } => Ok(Representation::Term {
                index: i,
                semantics: *self.lts.semantics(i)?,
            }),
            _ => Ok(Representation::Envelope(Box::new(self.t2_envelope(cle)?))),
        }
    }
}

/// `max(0, umf - e)` written as a trapezoid, when it stays non-empty.
fn shrink(umf: &Trapezoid, e: f64) -> Option<Trapezoid> {
    let h = umf.height();
    if e <= 0.0 {
        return Some(*umf);
    }
    if e >= h {
        return None;
    }
    let [a, b, c, d] = umf.knots();
    let r = e / h;
    Trapezoid::with_height(a + r * (b - a), b, c, d - r * (d - c), h - e).ok()
}

/// Result of fitting the OWA parameter to target inner points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaFit {
    pub alpha: f64,
    pub b: f64,
    pub c: f64,
    pub residual: f64,
}

/// Least-squares fit of `alpha` so that the OWA inner points over `midpoints`
/// land on `(target_b, target_c)`.
pub fn calibrate_alpha(
    midpoints: &[f64],
    kinds: [OwaKind; 2],
    target_b: f64,
    target_c: f64,
) -> Result<AlphaFit> {
    if midpoints.is_empty() {
        return Err(Error::Empty("midpoints"));
    }
    let eval = |alpha: f64| -> (f64, f64, f64) {
        let n = midpoints.len();
        let b = owa(&owa_weights(kinds[0], n, alpha).unwrap(), midpoints);
        let c = owa(&owa_weights(kinds[1], n, alpha).unwrap(), midpoints);
        (b, c, (b - target_b).powi(2) + (c - target_c).powi(2))
    };
    let steps = 1000;
    let best = (0..=steps)
        .map(|k| k as f64 / steps as f64)
        .min_by(|x, y| eval(*x).2.total_cmp(&eval(*y).2))
        .unwrap();
    let (mut lo, mut hi) = ((best - 1.0 / steps as f64).max(0.0), (best + 1.0 / steps as f64).min(1.0));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let x1 = hi - phi * (hi - lo);
        let x2 = lo + phi * (hi - lo);
        if eval(x1).2 <= eval(x2).2 {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    let alpha = 0.5 * (lo + hi);
    let (b, c, r2) = eval(alpha);
    Ok(AlphaFit {
        alpha,
        b,
        c,
        residual: r2.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linguistic::tests::uniform_lts;
    use approx::assert_abs_diff_eq;

    #[test]
    fn owa_weight_examples() {
        assert_eq!(owa_weights(OwaKind::W1, 5, 1.0).unwrap(), vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(owa_weights(OwaKind::W1, 2, 0.5).unwrap(), vec![0.5, 0.5]);
        let w = owa_weights(OwaKind::W1, 4, 0.3).unwrap();
        for (got, want) in w.iter().zip([0.3, 0.21, 0.147, 0.343]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        let w2 = owa_weights(OwaKind::W2, 4, 0.3).unwrap();
        for (got, want) in w2.iter().zip([0.027, 0.7 * 0.09, 0.7 * 0.3, 0.7]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert!(owa_weights(OwaKind::W2, 0, 0.3).is_err());
        assert_eq!(owa_weights(OwaKind::W2, 1, 0.3).unwrap(), vec![1.0]);
    }

    #[test]
    fn owa_sorts_descending() {
        assert_abs_diff_eq!(owa(&[1.0, 0.0, 0.0], &[0.2, 0.9, 0.4]), 0.9);
        assert_abs_diff_eq!(owa(&[0.0, 0.0, 1.0], &[0.2, 0.9, 0.4]), 0.2);
    }

    #[test]
    fn singleton_envelope_is_the_term() {
        let lts = uniform_lts();
        let b = EnvelopeBuilder::new(&lts, EnvelopeConfig::default()).unwrap();
        let h = T2Hflts::new(4, 3, 3).unwrap();
        let shape = Cle::Single { i: 3 };
        assert_eq!(b.t1_envelope(&h, &shape, Band::Upper).unwrap(), *lts.terms()[3].semantics.umf());
        assert_eq!(b.t1_envelope(&h, &shape, Band::Lower).unwrap(), *lts.terms()[3].semantics.lmf());
    }

    #[test]
    fn envelope_support_and_nesting() {
        let lts = uniform_lts();
        let b = EnvelopeBuilder::new(&lts, EnvelopeConfig::default()).unwrap();
        let e = b.t2_envelope(&Cle::Between { i: 1, j: 3 }).unwrap();
        let [a, _, _, d] = e.umf.knots();
        assert_abs_diff_eq!(a, lts.terms()[1].semantics.umf().knots()[0]);
        assert_abs_diff_eq!(d, lts.terms()[3].semantics.umf().knots()[3]);
        assert!(e.fou().is_nested());
        assert!(e.e_c() > 0.0);
    }

    #[test]
    fn shoulders() {
        let lts = uniform_lts();
        let b = EnvelopeBuilder::new(&lts, EnvelopeConfig::default()).unwrap();
        let more = b.t2_envelope(&Cle::MoreThan { i: 2 }).unwrap();
        assert_eq!(&more.umf.knots()[2..], &[1.0, 1.0]);
        let less = b.t2_envelope(&Cle::LessThan { i: 2 }).unwrap();
        assert_eq!(&less.umf.knots()[..2], &[0.0, 0.0]);
        let plain = EnvelopeBuilder::new(
            &lts,
            EnvelopeConfig {
                shoulder_policy: ShoulderPolicy::Plain,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(plain.t2_envelope(&Cle::MoreThan { i: 2 }).unwrap().umf.knots()[2] < 1.0);
    }

    #[test]
    fn swapped_kinds_are_rejected() {
        let lts = uniform_lts();
        let cfg = EnvelopeConfig {
            owa_kinds: [OwaKind::W1, OwaKind::W2],
            alpha: 0.8,
            ..Default::default()
        };
        let b = EnvelopeBuilder::new(&lts, cfg).unwrap();
        assert!(b.t2_envelope(&Cle::Between { i: 1, j: 3 }).is_err());
    }

    #[test]
    fn zero_entropy_keeps_t1_lower() {
        // A degenerate term set with crisp-free terms: e_c = 0 for Single.
        let lts = uniform_lts();
        let b = EnvelopeBuilder::new(&lts, EnvelopeConfig::default()).unwrap();
        let h = T2Hflts::new(4, 2, 2).unwrap();
        let e = b.t2_envelope_for(&h).unwrap();
        assert_eq!(e.e_c(), b.entropy(&Cle::Single { i: 2 }).unwrap().e_f);
        assert!(e.lower.iter().zip(e.lmf_t1.sample(&b.config().grid.points())).all(|(x, y)| *x <= y + 1e-12));
    }

    #[test]
    fn sampled_lower_matches_closed_form() {
        let lts = uniform_lts();
        let b = EnvelopeBuilder::new(&lts, EnvelopeConfig::default()).unwrap();
        let e = b.t2_envelope(&Cle::Between { i: 0, j: 4 }).unwrap();
        let n = e.lower.len();
        for (k, l) in e.lower.iter().enumerate() {
            let x = k as f64 / (n - 1) as f64;
            let (u, t1) = (e.umf.membership(x), e.lmf_t1.membership(x));
            let closed = (u - (u - t1).max(e.e_c())).max(0.0);
            assert!((l - closed).abs() <= 1.0 / n as f64);
        }
    }

    #[test]
    fn represent_bypasses_singles() {
        let lts = uniform_lts();
        let b = EnvelopeBuilder::new(&lts, EnvelopeConfig::default()).unwrap();
        let r = b.represent(&Cle::Single { i: 3 }).unwrap();
        assert!(!r.is_envelope());
        assert!(b.represent(&Cle::Between { i: 2, j: 4 }).unwrap().is_envelope());
    }

    #[test]
    fn calibration_recovers_alpha() {
        let mids = [0.375, 0.7035, 1.0];
        let n = mids.len();
        let truth = 0.61;
        let tb = owa(&owa_weights(OwaKind::W2, n, truth).unwrap(), &mids);
        let tc = owa(&owa_weights(OwaKind::W1, n, truth).unwrap(), &mids);
        let fit = calibrate_alpha(&mids, [OwaKind::W2, OwaKind::W1], tb, tc).unwrap();
        assert_abs_diff_eq!(fit.alpha, truth, epsilon = 1e-6);
        assert!(fit.residual < 1e-9);
    }
}
