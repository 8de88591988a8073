//! Likelihood-based TOPSIS, once per expert.
use std::path::Path;

use t2hflts::pipeline::{self, Config};

fn main() -> t2hflts::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let lts = pipeline::load_lts(&dir.join("example1_lts.json"))?;
    let survey = pipeline::load_survey(&dir.join("example1_survey.json"))?;
    let cfg = Config::load(&dir.join("example1_config.json"))?;
    for d in pipeline::run_topsis(&survey, &lts, &cfg)? {
        let cl: Vec<String> = d.result.closeness.iter().map(|x| format!("{x:.3}")).collect();
        println!("{}: closeness [{}]  {}", d.dmr, cl.join(", "), d.result.ranking.render(&survey.alternatives));
    }
    Ok(())
}
