//! Brute-force references for the iterative algorithms.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use t2hflts::aggregation::{fwa, T1Set};
use t2hflts::{SampledFou, Trapezoid};

/// Random nested FOU on `3..=n_max` strictly increasing points in [0, 1].
pub fn random_fou(rng: &mut ChaCha8Rng, n_max: usize) -> SampledFou {
    let n = rng.gen_range(3..=n_max);
    let mut xs: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    while xs.len() < 3 {
        xs.push(xs.last().unwrap() + 0.01);
    }
    let mut upper: Vec<f64> = xs.iter().map(|_| rng.gen::<f64>()).collect();
    let lower: Vec<f64> = upper
        .iter()
        .map(|&u| match rng.gen_range(0..4) {
            0 => 0.0,
            1 => u,
            _ => u * rng.gen::<f64>(),
        })
        .collect();
    if upper.iter().all(|&u| u == 0.0) {
        upper[0] = 1.0;
    }
    SampledFou::new(xs, lower, upper).unwrap()
}

/// Centroid bounds by trying every lower/upper weight assignment.
pub fn brute_centroid(fou: &SampledFou) -> (f64, f64) {
    let n = fou.len();
    let (xs, lo, hi) = (fou.xs(), fou.lower(), fou.upper());
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    for mask in 0u32..(1 << n) {
        let (mut a, mut b) = (0.0, 0.0);
        for i in 0..n {
            let w = if mask >> i & 1 == 1 { hi[i] } else { lo[i] };
            a += xs[i] * w;
            b += w;
        }
        if b > 0.0 {
            min = min.min(a / b);
            max = max.max(a / b);
        }
    }
    (min, max)
}

/// Fuzziness range over embedded sets whose samples are drawn from
/// {lower, upper, 0.5 when it lies between them}.
pub fn brute_fuzziness(fou: &SampledFou) -> (f64, f64) {
    let g = |u: f64| 1.0 - (2.0 * u - 1.0).abs();
    let choices: Vec<Vec<f64>> = fou
        .lower()
        .iter()
        .zip(fou.upper())
        .map(|(&l, &u)| {
            let mut c = vec![g(l), g(u)];
            if l <= 0.5 && 0.5 <= u {
                c.push(1.0);
            }
            c
        })
        .collect();
    fn walk(choices: &[Vec<f64>], acc: f64, out: &mut (f64, f64)) {
        match choices.split_first() {
            None => {
                out.0 = out.0.min(acc);
                out.1 = out.1.max(acc);
            }
            Some((head, rest)) => {
                for &v in head {
                    walk(rest, acc + v, out);
                }
            }
        }
    }
    let mut out = (f64::INFINITY, f64::NEG_INFINITY);
    walk(&choices, 0.0, &mut out);
    let n = fou.len() as f64;
    (out.0 / n, out.1 / n)
}

fn random_trapezoid(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Trapezoid {
    let mut k: Vec<f64> = (0..4).map(|_| rng.gen_range(lo..=hi)).collect();
    k.sort_by(f64::total_cmp);
    Trapezoid::new(k[0], k[1], k[2], k[3]).unwrap()
}

/// Largest gap between `fwa` and an 11-point weight-grid search, over a few
/// alpha levels of one random instance with `n <= 3`.
pub fn fwa_grid_error(rng: &mut ChaCha8Rng) -> f64 {
    let n = rng.gen_range(1..=3);
    let xs: Vec<T1Set> = (0..n).map(|_| random_trapezoid(rng, 0.0, 1.0).into()).collect();
    let ws: Vec<T1Set> = (0..n).map(|_| random_trapezoid(rng, 0.1, 1.0).into()).collect();
    let out = fwa(&xs, &ws, 21).unwrap();
    let mut worst: f64 = 0.0;
    for &(level, y_l, y_r) in out.cuts().iter().step_by(4) {
        let xc: Vec<(f64, f64)> = xs.iter().map(|x| x.alpha_cut(level).unwrap()).collect();
        let wc: Vec<(f64, f64)> = ws.iter().map(|w| w.alpha_cut(level).unwrap()).collect();
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        let steps = 11usize.pow(n as u32);
        for code in 0..steps {
            let (mut a_l, mut a_r, mut b) = (0.0, 0.0, 0.0);
            let mut c = code;
            for i in 0..n {
                let t = (c % 11) as f64 / 10.0;
                c /= 11;
                let w = wc[i].0 + t * (wc[i].1 - wc[i].0);
                a_l += xc[i].0 * w;
                a_r += xc[i].1 * w;
                b += w;
            }
            min = min.min(a_l / b);
            max = max.max(a_r / b);
        }
        worst = worst.max((min - y_l).abs()).max((max - y_r).abs());
    }
    worst
}
