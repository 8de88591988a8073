//! Centroid interval and fuzziness interval of every term.
use std::path::Path;

use t2hflts::it2::{ekm_centroid, it2_fuzziness};
use t2hflts::{pipeline, Grid};

fn main() -> t2hflts::Result<()> {
    let lts = pipeline::load_lts(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/example1_lts.json"))?;
    let grid = Grid::default();
    println!("term  c_l     c_r     f_l     f_r");
    for t in lts.terms() {
        let fou = t.semantics.sample(&grid);
        let c = ekm_centroid(&fou)?;
        let f = it2_fuzziness(&fou);
        println!("{:<5} {:.4}  {:.4}  {:.4}  {:.4}", t.label, c.left, c.right, f.left, f.right);
    }
    Ok(())
}
