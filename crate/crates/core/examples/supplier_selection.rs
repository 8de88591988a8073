//! Four experts, five suppliers: full pipeline, then the table view.
use std::path::Path;

use t2hflts::pipeline::{self, Config, Format};

fn main() -> t2hflts::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let lts = pipeline::load_lts(&dir.join("example1_lts.json"))?;
    let survey = pipeline::load_survey(&dir.join("example1_survey.json"))?;
    let cfg = Config {
        parallel: true,
        ..Config::load(&dir.join("example1_config.json"))?
    };
    let result = pipeline::run(&survey, &lts, &cfg)?;

    for row in &result.rank_matrix {
        println!("{}: {}", row.dmr, row.order.join(" > "));
    }
    println!();
    print!("{}", String::from_utf8_lossy(&pipeline::emit(&result, Format::Table)?));
    println!("best: {}", result.final_ranking.display);
    Ok(())
}
