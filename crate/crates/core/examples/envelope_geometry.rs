//! Envelope of "between M and VG": knots, entropy and a coarse ASCII plot.
use std::path::Path;

use t2hflts::envelope::EnvelopeBuilder;
use t2hflts::pipeline::{self, Config};
use t2hflts::Cle;

fn main() -> t2hflts::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let lts = pipeline::load_lts(&dir.join("example1_lts.json"))?;
    let cfg = Config::load(&dir.join("example1_config.json"))?;
    let b = EnvelopeBuilder::new(&lts, cfg.envelope_config()?)?;
    let env = b.t2_envelope(&Cle::Between { i: 2, j: 4 })?;

    println!("UMF  {:?}", env.umf.knots());
    println!("LMF  {:?} h={}", env.lmf_t1.knots(), env.lmf_t1.height());
    println!("entropy {:?}", env.entropy);
    match env.lmf {
        Some(t) => println!("trimmed LMF is a trapezoid: {:?}", t.knots()),
        None => println!("trimmed LMF is sampled (non-trapezoidal)"),
    }

    let fou = env.fou();
    for (x, lo, up) in fou.rows().step_by(50) {
        let bar = |v: f64| (v * 40.0).round() as usize;
        println!("{x:4.2} |{}{}", "#".repeat(bar(lo)), ".".repeat(bar(up) - bar(lo)));
    }
    Ok(())
}
