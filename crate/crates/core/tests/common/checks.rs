//! Invariant scans that return a violation count instead of panicking.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use t2hflts::aggregation::{lwa, It2Set};
use t2hflts::entropy::{beta, t2_fuzzy_entropy, term_fuzziness};
use t2hflts::envelope::{EnvelopeBuilder, EnvelopeConfig};
use t2hflts::{Cle, Grid, It2TrFN, LinguisticTermSet, T2Hflts, Trapezoid};

pub fn ranges(g: usize) -> Vec<T2Hflts> {
    let mut out = vec![T2Hflts::empty(g)];
    for lo in 0..=g {
        for hi in lo..=g {
            out.push(T2Hflts::new(g, lo, hi).unwrap());
        }
    }
    out
}

pub fn cles(g: usize) -> Vec<Cle> {
    let mut out = Vec::new();
    for i in 0..=g {
        out.extend([Cle::Single { i }, Cle::LessThan { i }, Cle::MoreThan { i }]);
        out.extend((i..=g).map(|j| Cle::Between { i, j }));
    }
    out
}

/// FE1 on every set, FE2/FE3 with constant fuzziness, FE4 on symmetric sets.
pub fn fe_violations(sets: &[LinguisticTermSet]) -> usize {
    let mut bad = 0;
    for lts in sets {
        let g = lts.g();
        let f = term_fuzziness(lts, &Grid::default(), Default::default());
        for k in [0, g] {
            bad += (t2_fuzzy_entropy(&T2Hflts::new(g, k, k).unwrap(), &f).unwrap() != 0.0) as usize;
        }
        if lts.is_symmetric(1e-9) {
            for h in ranges(g).into_iter().filter(|h| !h.is_empty()) {
                let d = t2_fuzzy_entropy(&h, &f).unwrap() - t2_fuzzy_entropy(&h.complement(), &f).unwrap();
                bad += (d.abs() > 1e-12) as usize;
            }
        }
    }
    for g in 1..=6 {
        let f = vec![0.4; g + 1];
        let e = |lo, hi| t2_fuzzy_entropy(&T2Hflts::new(g, lo, hi).unwrap(), &f).unwrap();
        if g % 2 == 0 {
            let top = e(g / 2, g / 2);
            for h in ranges(g).into_iter().filter(|h| !h.is_empty()) {
                if h.span() != Some((g / 2, g / 2)) {
                    bad += (t2_fuzzy_entropy(&h, &f).unwrap() >= top) as usize;
                }
            }
        }
        let mid = g as f64 / 2.0;
        for lo in 0..g {
            for hi in lo..g {
                let (out, inn) = ((lo as f64 - mid).abs(), (hi as f64 + 1.0 - mid).abs());
                if out >= inn && e(lo, hi) > e(lo + 1, hi + 1) + 1e-15 {
                    bad += 1;
                }
                if inn >= out && e(lo + 1, hi + 1) > e(lo, hi) + 1e-15 {
                    bad += 1;
                }
            }
        }
    }
    bad
}

pub fn algebra_violations(g_max: usize) -> usize {
    let mut bad = 0;
    for g in 1..=g_max {
        let hs = ranges(g);
        let sets: Vec<_> = hs.iter().map(T2Hflts::to_index_set).collect();
        for (h, a) in hs.iter().zip(&sets) {
            bad += (h.complement().complement() != *h) as usize;
            for b in &sets {
                bad += (a.union(b).unwrap() != b.union(a).unwrap()) as usize;
                bad += (a.intersection(b).unwrap() != b.intersection(a).unwrap()) as usize;
                for c in &sets {
                    let u = |x: &t2hflts::TermIndexSet, y: &t2hflts::TermIndexSet| x.union(y).unwrap();
                    let i = |x: &t2hflts::TermIndexSet, y: &t2hflts::TermIndexSet| x.intersection(y).unwrap();
                    bad += (u(&u(a, b), c) != u(a, &u(b, c))) as usize;
                    bad += (i(&i(a, b), c) != i(a, &i(b, c))) as usize;
                    bad += (u(a, &i(b, c)) != i(&u(a, b), &u(a, c))) as usize;
                    bad += (i(a, &u(b, c)) != u(&i(a, b), &i(a, c))) as usize;
                }
            }
        }
    }
    bad
}

pub fn beta_violations(g_max: usize) -> usize {
    (1..=g_max)
        .flat_map(|g| cles(g).into_iter().map(move |c| beta(&c, g)))
        .filter(|b| !(0.0..=1.0).contains(b))
        .count()
}

/// Every representation of every expression is nested, sampled and closed form.
pub fn nesting_violations(sets: &[LinguisticTermSet], cfg: EnvelopeConfig) -> usize {
    let mut bad = 0;
    for lts in sets {
        let b = EnvelopeBuilder::new(lts, cfg).unwrap();
        for cle in cles(lts.g()) {
            let rep = b.represent(&cle).unwrap();
            let fou = rep.fou(&cfg.grid);
            let set = rep.it2_set();
            bad += !fou.is_nested() as usize;
            bad += fou
                .xs()
                .iter()
                .filter(|&&x| set.lower.membership(x) > set.upper.membership(x) + 1e-9)
                .count();
        }
    }
    bad
}

fn random_it2(rng: &mut ChaCha8Rng) -> It2TrFN {
    let mut k: Vec<f64> = (0..4).map(|_| rng.gen::<f64>()).collect();
    k.sort_by(f64::total_cmp);
    let umf = Trapezoid::new(k[0], k[1], k[2], k[3]).unwrap();
    let a = k[0] + rng.gen::<f64>() * (k[1] - k[0]);
    let d = k[3] - rng.gen::<f64>() * (k[3] - k[2]);
    let lmf = Trapezoid::with_height(a, k[1], k[2], d, rng.gen_range(0.2..=1.0)).unwrap();
    It2TrFN::new(umf, lmf).unwrap()
}

fn random_weight(rng: &mut ChaCha8Rng) -> It2Set {
    let c = rng.gen_range(0.1..=1.0);
    let w = rng.gen_range(0.0..=0.3);
    let (a, d) = (f64::max(c - w, 0.05), f64::min(c + w, 1.0));
    let umf = Trapezoid::new(a, c, c, d).unwrap();
    let lmf = Trapezoid::with_height(0.5 * (a + c), c, c, 0.5 * (c + d), rng.gen_range(0.5..=1.0)).unwrap();
    It2TrFN::new(umf, lmf).unwrap().into()
}

/// Idempotence, boundedness, nesting and monotonicity of LWA on random
/// trapezoid families; one scenario of each per case.
pub fn lwa_violations(cases: usize, seed: u64) -> usize {
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let levels = 41;
    let grid = Grid::new(101).unwrap();
    let mut bad = 0;
    for _ in 0..cases {
        let n = rng.gen_range(1..=4);
        let ws: Vec<It2Set> = (0..n).map(|_| random_weight(&mut rng)).collect();

        let x = random_it2(&mut rng);
        let same = lwa(&vec![It2Set::from(x); n], &ws, levels).unwrap();
        for (cuts, t) in [(same.upper.cuts(), x.umf()), (same.lower.cuts(), x.lmf())] {
            for &(level, lo, hi) in cuts {
                let (a, b) = t.alpha_cut(level).unwrap();
                bad += ((lo - a).abs() > 1e-9 || (hi - b).abs() > 1e-9) as usize;
            }
        }

        let xs: Vec<It2TrFN> = (0..n).map(|_| random_it2(&mut rng)).collect();
        let min_a = xs.iter().map(|x| x.umf().knots()[0]).fold(f64::INFINITY, f64::min);
        let max_d = xs.iter().map(|x| x.umf().knots()[3]).fold(0.0, f64::max);
        let base = lwa(&xs.iter().map(|&x| x.into()).collect::<Vec<_>>(), &ws, levels).unwrap();
        for &(_, lo, hi) in base.upper.cuts().iter().chain(base.lower.cuts()) {
            bad += (lo < min_a - 1e-9 || hi > max_d + 1e-9) as usize;
        }
        bad += !base.fou(&grid).is_nested() as usize;

        let i = rng.gen_range(0..n);
        let s = rng.gen_range(0.0..0.5f64).min(1.0 - xs[i].umf().knots()[3]);
        let lift = |t: &Trapezoid| {
            let [a, b, c, d] = t.knots();
            Trapezoid::with_height(a + s, b + s, c + s, d + s, t.height()).unwrap()
        };
        let mut raised = xs.clone();
        raised[i] = It2TrFN::new(lift(xs[i].umf()), lift(xs[i].lmf())).unwrap();
        let up = lwa(&raised.iter().map(|&x| x.into()).collect::<Vec<_>>(), &ws, levels).unwrap();
        for (p, q) in base
            .upper
            .cuts()
            .iter()
            .zip(up.upper.cuts())
            .chain(base.lower.cuts().iter().zip(up.lower.cuts()))
        {
            bad += (q.1 < p.1 - 1e-9 || q.2 < p.2 - 1e-9) as usize;
        }
    }
    bad
}
