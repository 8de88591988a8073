//! Weighted aggregation with the mean/spread rank value.
use std::path::Path;

use t2hflts::baselines::{wlq_rank_value, NineParamIT2};
use t2hflts::pipeline::{self, Config};

fn main() -> t2hflts::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let lts = pipeline::load_lts(&dir.join("example1_lts.json"))?;
    let survey = pipeline::load_survey(&dir.join("example1_survey.json"))?;
    let cfg = Config::load(&dir.join("example1_config.json"))?;
    let r = pipeline::run_wlq(&survey, &lts, &cfg)?;
    for (a, v) in survey.alternatives.iter().zip(&r.rank_values) {
        println!("{a}: {v:.3}");
    }
    println!("{}", r.ranking.render(&survey.alternatives));

    // Rank value of a hand-written number.
    let e = NineParamIT2::new([0.1, 0.3, 0.5, 0.7], 1.0, [0.2, 0.3, 0.5, 0.6], 0.8)?;
    println!("Rank({:?}) = {:.3}", e.upper, wlq_rank_value(&e));
    Ok(())
}
