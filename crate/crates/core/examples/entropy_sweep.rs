//! Both entropy sweeps over the shipped term set.
use std::path::Path;

use t2hflts::entropy::SweepCase;
use t2hflts::pipeline::{self, Config};

fn main() -> t2hflts::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let lts = pipeline::load_lts(&dir.join("example1_lts.json"))?;
    let cfg = Config::load(&dir.join("example1_config.json"))?;
    for (title, case) in [("{s0..sk}", SweepCase::GrowingSet), ("{sk}", SweepCase::SlidingSingleton)] {
        println!("{title}");
        print!("{}", pipeline::sweep_csv(&pipeline::sweep(&lts, &cfg, case)?));
    }
    Ok(())
}
