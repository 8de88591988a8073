#![allow(dead_code)]

pub mod checks;
pub mod oracles;

use std::path::PathBuf;

use t2hflts::{It2TrFN, LinguisticTermSet, Term, Trapezoid};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Evenly spaced, mirror-symmetric term set with `g + 1` terms.
pub fn symmetric_lts(g: usize) -> LinguisticTermSet {
    let step = 1.0 / g as f64;
    let terms = (0..=g)
        .map(|k| {
            let m = k as f64 * step;
            let tz = |half_core: f64, half_support: f64, h: f64| {
                let a = (m - half_support).max(0.0);
                let b = (m - half_core).max(0.0);
                let c = (m + half_core).min(1.0);
                let d = (m + half_support).min(1.0);
                Trapezoid::with_height(a, b, c, d, h).unwrap()
            };
            let umf = tz(0.2 * step, step, 1.0);
            let lmf = tz(0.1 * step, 0.5 * step, 0.8);
            Term::new(format!("S{k}"), It2TrFN::new(umf, lmf).unwrap())
        })
        .collect();
    LinguisticTermSet::new(format!("uniform-{g}"), terms).unwrap()
}
