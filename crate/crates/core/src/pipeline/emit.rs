use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::entropy::SweepRow;
use crate::error::{Error, Result};
use crate::it2::SampledFou;

use super::run::RunResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Geometry,
}

pub fn emit(result: &RunResult, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(result).map_err(|source| Error::Json {
                path: "<run result>".into(),
                source,
            })?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Table => Ok(table(result).into_bytes()),
        Format::Geometry => {
            let g = result.geometry.as_ref().ok_or_else(|| {
                Error::validation("geometry", "run was made without geometry; rerun with geometry enabled")
            })?;
            let mut s = String::from("dmr,alternative,x,lower,upper\n");
            for cell in &g.cells {
                for ((x, l), u) in g.xs.iter().zip(&cell.lower).zip(&cell.upper) {
                    writeln!(s, "{},{},{x},{l},{u}", cell.dmr, cell.alternative).unwrap();
                }
            }
            Ok(s.into_bytes())
        }
    }
}

fn table(result: &RunResult) -> String {
    let mut s = String::new();
    writeln!(s, "{:<5} {:<12} {:>8}  tie", "rank", "alternative", "score").unwrap();
    let fin = &result.final_ranking;
    for (k, name) in fin.order.iter().enumerate() {
        let score = result
            .scores
            .scores
            .iter()
            .find(|a| &a.alternative == name)
            .map_or(f64::NAN, |a| a.score);
        let tie = k > 0 && fin.tied_with_next[k - 1] || fin.tied_with_next[k];
        writeln!(s, "{:<5} {:<12} {:>8.4}  {}", k + 1, name, score, if tie { "yes" } else { "" }).unwrap();
    }
    writeln!(
        s,
        "\nresponses: {}  envelopes: {}  bypassed: {}",
        result.responses, result.envelopes, result.bypassed
    )
    .unwrap();
    s
}

/// `x,lower,upper` rows of a sampled FOU.
pub fn fou_csv(fou: &SampledFou) -> String {
    let mut s = String::from("x,lower,upper\n");
    for (x, l, u) in fou.rows() {
        writeln!(s, "{x},{l},{u}").unwrap();
    }
    s
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("k,e_f,e_h,beta,e_c\n");
    for r in rows {
        let e = &r.report;
        writeln!(s, "{},{:.6},{:.6},{:.6},{:.6}", r.k, e.e_f, e.e_h, e.beta, e.e_c).unwrap();
    }
    s
}
