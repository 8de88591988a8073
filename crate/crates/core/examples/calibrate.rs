//! Refit the OWA parameter to target inner points of the {M, G, VG} envelope.
//!
//!     cargo run --example calibrate -- 0.667 0.819
use std::path::Path;

use t2hflts::envelope::{calibrate_alpha, OwaKind, CALIBRATED_ALPHA};
use t2hflts::pipeline;

fn main() -> t2hflts::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (b, c) = match args[..] {
        [b, c] => (b, c),
        _ => (0.667, 0.819),
    };
    let lts = pipeline::load_lts(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/example1_lts.json"))?;
    let mids: Vec<f64> = (2..=4).map(|i| lts.terms()[i].semantics.umf().core_midpoint()).collect();
    let fit = calibrate_alpha(&mids, [OwaKind::W2, OwaKind::W1], b, c)?;
    println!("core midpoints {mids:?}");
    println!("alpha = {:.4}  ->  b = {:.4}, c = {:.4}, residual {:.2e}", fit.alpha, fit.b, fit.c, fit.residual);
    println!("shipped alpha = {CALIBRATED_ALPHA}");
    Ok(())
}
