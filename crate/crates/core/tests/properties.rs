mod common;

use proptest::prelude::*;

use t2hflts::aggregation::{lwa, It2Set};
use t2hflts::baselines::{likelihood_index, NineParamIT2};
use t2hflts::entropy::{beta, comprehensive_entropy, t2_fuzzy_entropy, term_fuzziness};
use t2hflts::envelope::{EnvelopeBuilder, EnvelopeConfig};
use t2hflts::it2::yager_fuzziness;
use t2hflts::pipeline::{self, Config};
use t2hflts::ranking::{final_ranking, linear_priority, score, RankMatrix};
use t2hflts::{parse_cle, Cle, Grid, It2TrFN, T2Hflts, TermIndexSet, Trapezoid};

fn all_ranges(g: usize) -> Vec<T2Hflts> {
    let mut out = vec![T2Hflts::empty(g)];
    for lo in 0..=g {
        for hi in lo..=g {
            out.push(T2Hflts::new(g, lo, hi).unwrap());
        }
    }
    out
}

fn all_cles(g: usize) -> Vec<Cle> {
    let mut out = Vec::new();
    for i in 0..=g {
        out.extend([Cle::Single { i }, Cle::LessThan { i }, Cle::MoreThan { i }]);
        for j in i..=g {
            out.push(Cle::Between { i, j });
        }
    }
    out
}

fn nonempty_ranges(g: usize) -> impl Iterator<Item = T2Hflts> {
    all_ranges(g).into_iter().filter(|h| !h.is_empty())
}

// ---- fuzzy entropy axioms ----

#[test]
fn fe1_extreme_singletons_have_zero_entropy() {
    let shipped = pipeline::load_lts(&common::fixture("example1_lts.json")).unwrap();
    let mut sets = vec![shipped];
    sets.extend((1..=8).map(common::symmetric_lts));
    for lts in &sets {
        let f = term_fuzziness(lts, &Grid::default(), Default::default());
        let g = lts.g();
        for k in [0, g] {
            let e = t2_fuzzy_entropy(&T2Hflts::new(g, k, k).unwrap(), &f).unwrap();
            assert_eq!(e, 0.0, "{} k={k}", lts.name());
        }
    }
}

#[test]
fn fe2_middle_singleton_is_unique_maximum() {
    for g in (2..=12).step_by(2) {
        for f in [0.05, 0.3, 1.0] {
            let fz = vec![f; g + 1];
            let mid = t2_fuzzy_entropy(&T2Hflts::new(g, g / 2, g / 2).unwrap(), &fz).unwrap();
            for h in nonempty_ranges(g) {
                if h.span() == Some((g / 2, g / 2)) {
                    continue;
                }
                assert!(t2_fuzzy_entropy(&h, &fz).unwrap() < mid, "g={g} h={h}");
            }
        }
    }
}

#[test]
fn fe3_moving_a_term_towards_the_middle_never_lowers_entropy() {
    for g in 1..=6 {
        let fz = vec![0.4; g + 1];
        for lo in 0..g {
            for hi in lo..g {
                // Shifting [lo, hi] right by one swaps lo for hi + 1.
                let a = T2Hflts::new(g, lo, hi).unwrap();
                let b = T2Hflts::new(g, lo + 1, hi + 1).unwrap();
                let (ea, eb) = (t2_fuzzy_entropy(&a, &fz).unwrap(), t2_fuzzy_entropy(&b, &fz).unwrap());
                let mid = g as f64 / 2.0;
                let (dout, din) = ((lo as f64 - mid).abs(), (hi as f64 + 1.0 - mid).abs());
                if dout >= din {
                    assert!(ea <= eb + 1e-15, "g={g} {a} -> {b}");
                }
                if din >= dout {
                    assert!(eb <= ea + 1e-15, "g={g} {b} -> {a}");
                }
            }
        }
    }
}

#[test]
fn fe4_complement_invariance_on_symmetric_sets() {
    for g in 1..=8 {
        let lts = common::symmetric_lts(g);
        assert!(lts.is_symmetric(1e-9));
        let f = term_fuzziness(&lts, &Grid::default(), Default::default());
        for h in nonempty_ranges(g) {
            let a = t2_fuzzy_entropy(&h, &f).unwrap();
            let b = t2_fuzzy_entropy(&h.complement(), &f).unwrap();
            assert!((a - b).abs() < 1e-12, "g={g} {h}: {a} vs {b}");
        }
    }
}

#[test]
fn shipped_lts_is_not_symmetric() {
    // FE4 is only asserted for symmetric sets; the shipped set is not one.
    let lts = pipeline::load_lts(&common::fixture("example1_lts.json")).unwrap();
    assert!(!lts.is_symmetric(1e-6));
}

#[test]
fn beta_in_unit_interval_up_to_g64() {
    for g in 1..=64 {
        for cle in all_cles(g) {
            let b = beta(&cle, g);
            assert!((0.0..=1.0).contains(&b), "g={g} {cle:?}: {b}");
        }
    }
}

#[test]
fn comprehensive_entropy_monotone_on_grid() {
    let steps: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    for &b in &steps {
        for &ef in &steps {
            for w in steps.windows(2) {
                let (h0, h1) = (w[0], w[1]);
                assert!(comprehensive_entropy(ef, h0, b) <= comprehensive_entropy(ef, h1, b) + 1e-15);
                assert!(comprehensive_entropy(h0, ef, b) <= comprehensive_entropy(h1, ef, b) + 1e-15);
            }
        }
    }
}

// ---- algebra ----

fn set(h: &T2Hflts) -> TermIndexSet {
    h.to_index_set()
}

#[test]
fn algebra_laws_exhaustive() {
    for g in 1..=6 {
        let hs = all_ranges(g);
        for a in &hs {
            assert_eq!(a.complement().complement(), *a, "involution");
            for b in &hs {
                let (sa, sb) = (set(a), set(b));
                assert_eq!(sa.union(&sb).unwrap(), sb.union(&sa).unwrap());
                assert_eq!(sa.intersection(&sb).unwrap(), sb.intersection(&sa).unwrap());
                assert_eq!(
                    sa.union(&sb).unwrap().complement(),
                    sa.complement().union(&sb.complement()).unwrap()
                );
                assert_eq!(
                    sa.intersection(&sb).unwrap().complement(),
                    sa.complement().intersection(&sb.complement()).unwrap()
                );
                for c in &hs {
                    let sc = set(c);
                    assert_eq!(
                        sa.union(&sb).unwrap().union(&sc).unwrap(),
                        sa.union(&sb.union(&sc).unwrap()).unwrap()
                    );
                    assert_eq!(
                        sa.intersection(&sb).unwrap().intersection(&sc).unwrap(),
                        sa.intersection(&sb.intersection(&sc).unwrap()).unwrap()
                    );
                    assert_eq!(
                        sa.union(&sb.intersection(&sc).unwrap()).unwrap(),
                        sa.union(&sb).unwrap().intersection(&sa.union(&sc).unwrap()).unwrap()
                    );
                    assert_eq!(
                        sa.intersection(&sb.union(&sc).unwrap()).unwrap(),
                        sa.intersection(&sb).unwrap().union(&sa.intersection(&sc).unwrap()).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn parse_render_round_trip_and_transform_rules() {
    for g in 1..=8 {
        let lts = common::symmetric_lts(g);
        for cle in all_cles(g) {
            let text = cle.render(&lts).unwrap();
            assert_eq!(parse_cle(&text, &lts).unwrap(), cle, "{text}");
            assert_eq!(parse_cle(&text.to_uppercase(), &lts).unwrap(), cle);
            let h = cle.transform(g).unwrap();
            for k in 0..=g {
                let expected = match cle {
                    Cle::Single { i } => k == i,
                    Cle::LessThan { i } => k <= i,
                    Cle::MoreThan { i } => k >= i,
                    Cle::Between { i, j } => i <= k && k <= j,
                };
                assert_eq!(h.contains(k), expected, "{text} k={k}");
            }
        }
    }
}

#[test]
fn envelopes_are_nested_for_every_expression() {
    let shipped = pipeline::load_lts(&common::fixture("example1_lts.json")).unwrap();
    let mut sets = vec![shipped];
    sets.extend((1..=6).map(common::symmetric_lts));
    let cfg = EnvelopeConfig {
        grid: Grid::new(201).unwrap(),
        ..Default::default()
    };
    for lts in &sets {
        let b = EnvelopeBuilder::new(lts, cfg).unwrap();
        for cle in all_cles(lts.g()) {
            let rep = b.represent(&cle).unwrap();
            let fou = rep.fou(&cfg.grid);
            assert!(fou.is_nested(), "{} {cle:?}", lts.name());
            let set = rep.it2_set();
            for &x in fou.xs() {
                assert!(set.lower.membership(x) <= set.upper.membership(x) + 1e-9, "{cle:?} x={x}");
            }
        }
    }
}

#[test]
fn pipeline_aggregates_are_nested_and_bounded() {
    let lts = pipeline::load_lts(&common::fixture("example1_lts.json")).unwrap();
    let survey = pipeline::load_survey(&common::fixture("example1_survey.json")).unwrap();
    let cfg = Config::load(&common::fixture("example1_config.json")).unwrap();
    let b = EnvelopeBuilder::new(&lts, cfg.envelope_config().unwrap()).unwrap();
    let reps = pipeline::represent_all(&survey, &b, false).unwrap();
    let ws = pipeline::criteria_weights(&survey, &b).unwrap();
    let aggs = pipeline::aggregate_all(&reps, &ws, cfg.alpha_levels, false).unwrap();
    let grid = cfg.grid().unwrap();
    assert_eq!(aggs.iter().map(Vec::len).sum::<usize>(), 20);
    for agg in aggs.iter().flatten() {
        let fou = agg.fou(&grid);
        assert!(fou.is_nested());
        assert!(fou.upper().iter().all(|u| (0.0..=1.0).contains(u)));
        for &(level, lo, hi) in agg.lower.cuts() {
            for x in [lo, hi] {
                assert!(agg.upper.membership(x) >= level - 1e-9, "lower cut {level} at {x} escapes the upper set");
            }
        }
    }
}

#[test]
fn yager_complement_symmetry() {
    let mu: Vec<f64> = (0..50).map(|k| (k as f64 * 0.37).sin().abs()).collect();
    let comp: Vec<f64> = mu.iter().map(|m| 1.0 - m).collect();
    let (a, b) = (yager_fuzziness(&mu).unwrap(), yager_fuzziness(&comp).unwrap());
    assert!((a - b).abs() < 1e-12);
}

// ---- randomized ----

fn knots() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(0.0f64..=1.0).prop_map(|mut k| {
        k.sort_by(f64::total_cmp);
        k
    })
}

/// Random IT2 trapezoid: an upper trapezoid and a lower one shrunk inside it.
fn it2() -> impl Strategy<Value = It2TrFN> {
    (knots(), 0.0f64..=1.0, 0.0f64..=1.0, 0.2f64..=1.0).prop_map(|(k, s1, s2, h)| {
        let umf = Trapezoid::new(k[0], k[1], k[2], k[3]).unwrap();
        let a = k[0] + s1 * (k[1] - k[0]);
        let d = k[3] - s2 * (k[3] - k[2]);
        let lmf = Trapezoid::with_height(a, k[1], k[2], d, h).unwrap();
        It2TrFN::new(umf, lmf).unwrap()
    })
}

fn weight() -> impl Strategy<Value = It2TrFN> {
    (0.1f64..=1.0, 0.0f64..=0.3, 0.5f64..=1.0).prop_map(|(c, w, h)| {
        let (a, d) = ((c - w).max(0.05), (c + w).min(1.0));
        let umf = Trapezoid::new(a, c, c, d).unwrap();
        let lmf = Trapezoid::with_height(0.5 * (a + c), c, c, 0.5 * (c + d), h).unwrap();
        It2TrFN::new(umf, lmf).unwrap()
    })
}

fn nine() -> impl Strategy<Value = NineParamIT2> {
    it2().prop_map(|t| NineParamIT2::from_it2(&t))
}

const LEVELS: usize = 41;

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn lwa_idempotent(x in it2(), ws in prop::collection::vec(weight(), 1..5)) {
        let xs = vec![It2Set::from(x); ws.len()];
        let ws: Vec<It2Set> = ws.into_iter().map(It2Set::from).collect();
        let out = lwa(&xs, &ws, LEVELS).unwrap();
        for (level, lo, hi) in out.upper.cuts().iter().copied() {
            let (a, b) = x.umf().alpha_cut(level).unwrap();
            prop_assert!((lo - a).abs() < 1e-9 && (hi - b).abs() < 1e-9);
        }
        for (level, lo, hi) in out.lower.cuts().iter().copied() {
            let (a, b) = x.lmf().alpha_cut(level).unwrap();
            prop_assert!((lo - a).abs() < 1e-9 && (hi - b).abs() < 1e-9);
        }
    }

    #[test]
    fn lwa_bounded(xs in prop::collection::vec(it2(), 1..5), ws in prop::collection::vec(weight(), 4)) {
        let ws: Vec<It2Set> = ws.into_iter().take(xs.len()).map(It2Set::from).collect();
        let min_a = xs.iter().map(|x| x.umf().knots()[0]).fold(f64::INFINITY, f64::min);
        let max_d = xs.iter().map(|x| x.umf().knots()[3]).fold(0.0, f64::max);
        let xs: Vec<It2Set> = xs.into_iter().map(It2Set::from).collect();
        let out = lwa(&xs, &ws, LEVELS).unwrap();
        for (_, lo, hi) in out.upper.cuts().iter().chain(out.lower.cuts()) {
            prop_assert!(*lo >= min_a - 1e-9 && *hi <= max_d + 1e-9);
        }
        let fou = out.fou(&Grid::new(101).unwrap());
        prop_assert!(fou.is_nested());
    }

    #[test]
    fn lwa_monotone(
        xs in prop::collection::vec(it2(), 1..5),
        ws in prop::collection::vec(weight(), 4),
        pick in 0usize..4,
        shift in 0.0f64..0.5,
    ) {
        let n = xs.len();
        let ws: Vec<It2Set> = ws.into_iter().take(n).map(It2Set::from).collect();
        let i = pick % n;
        let s = shift.min(1.0 - xs[i].umf().knots()[3]);
        let raise = |t: &Trapezoid| {
            let [a, b, c, d] = t.knots();
            Trapezoid::with_height(a + s, b + s, c + s, d + s, t.height()).unwrap()
        };
        let mut raised = xs.clone();
        raised[i] = It2TrFN::new(raise(xs[i].umf()), raise(xs[i].lmf())).unwrap();
        let base = lwa(&xs.into_iter().map(It2Set::from).collect::<Vec<_>>(), &ws, LEVELS).unwrap();
        let up = lwa(&raised.into_iter().map(It2Set::from).collect::<Vec<_>>(), &ws, LEVELS).unwrap();
        for (p, q) in base.upper.cuts().iter().zip(up.upper.cuts()) {
            prop_assert!(q.1 >= p.1 - 1e-9 && q.2 >= p.2 - 1e-9, "{p:?} -> {q:?}");
        }
        for (p, q) in base.lower.cuts().iter().zip(up.lower.cuts()) {
            prop_assert!(q.1 >= p.1 - 1e-9 && q.2 >= p.2 - 1e-9, "{p:?} -> {q:?}");
        }
    }

    #[test]
    fn likelihood_complementary(x in nine(), y in nine()) {
        let xy = likelihood_index(&x, &y);
        let yx = likelihood_index(&y, &x);
        if let (Ok(a), Ok(b)) = (xy, yx) {
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert!((a + b - 1.0).abs() < 1e-9, "{a} + {b}");
        }
        if let Ok(s) = likelihood_index(&x, &x) {
            prop_assert!((s - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn scores_bounded_and_row_order_free(
        (m, rows, raw) in (2usize..7, 1usize..6).prop_flat_map(|(m, p)| (
            Just(m),
            prop::collection::vec(Just((0..m).collect::<Vec<usize>>()).prop_shuffle(), p),
            prop::collection::vec(0.05f64..1.0, p),
        )),
        rot in 0usize..6,
        scale in 0.1f64..10.0,
    ) {
        let alts: Vec<String> = (0..m).map(|i| format!("A{}", i + 1)).collect();
        let total: f64 = raw.iter().sum();
        let w: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let rm = RankMatrix::new(alts.clone(), rows.clone()).unwrap();
        let table = score(&rm, &w).unwrap();
        for s in &table.scores {
            let ps: Vec<f64> = s.contributions.iter().map(|c| linear_priority(c.rank, m)).collect();
            let lo = ps.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ps.iter().copied().fold(0.0, f64::max);
            prop_assert!(s.score >= lo - 1e-12 && s.score <= hi + 1e-12);
        }
        let k = rot % rows.len();
        let mut rows2 = rows.clone();
        rows2.rotate_left(k);
        let mut w2 = w.clone();
        w2.rotate_left(k);
        let t2 = score(&RankMatrix::new(alts.clone(), rows2).unwrap(), &w2).unwrap();
        for (a, b) in table.values().iter().zip(t2.values()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let scaled: Vec<f64> = w.iter().map(|x| x * scale).collect();
        let s: f64 = scaled.iter().sum();
        let renorm: Vec<f64> = scaled.iter().map(|x| x / s).collect();
        let t3 = score(&rm, &renorm).unwrap();
        prop_assert_eq!(final_ranking(&table).order, final_ranking(&t3).order);
    }
}
