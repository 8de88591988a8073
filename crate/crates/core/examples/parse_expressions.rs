//! Parse survey phrases into term ranges.
use std::path::Path;

use t2hflts::{parse_cle, pipeline};

fn main() -> t2hflts::Result<()> {
    let lts = pipeline::load_lts(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/example1_lts.json"))?;
    for phrase in ["G", "more than M", "Less than  poor", "between moderate and VG", "between G and P", "excellent"] {
        match parse_cle(phrase, &lts).and_then(|c| Ok((c, c.transform(lts.g())?))) {
            Ok((cle, h)) => println!("{phrase:<26} -> {:<22} {h}", cle.render(&lts)?),
            Err(e) => println!("{phrase:<26} !! {e}"),
        }
    }
    Ok(())
}
