//! File formats, end-to-end runs, sweeps, baselines and output emission.

mod baseline;
mod config;
mod emit;
mod run;
mod survey;

use std::path::Path;

use serde::de::DeserializeOwned;

use crate::entropy::{entropy_sweep, SweepCase, SweepRow};
use crate::envelope::EnvelopeBuilder;
use crate::error::{Error, Result};
use crate::linguistic::LinguisticTermSet;

pub use baseline::{crisp_criteria_weights, run_topsis, run_wlq, DmrTopsis};
pub use config::{load_lts, parse_lts, Config, LtsDoc, TermDoc, CONFIG_ENV, SCHEMA_VERSION};
pub use emit::{emit, fou_csv, sweep_csv, Format};
pub use run::{
    aggregate_all, criteria_weights, finish_from_rank_matrix, represent_all, run, run_with, CellResult,
    FinalRanking, Geometry, GeometryCell, RankRow, RunOptions, RunResult,
};
pub use survey::{load_survey, read_responses_csv, CriterionDoc, DmrDoc, Survey, SurveyDoc, WeightSpec};

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: shown.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json { path: shown, source })
}

/// Entropy sweep over the term set, using the configured fuzziness collapse.
pub fn sweep(lts: &LinguisticTermSet, cfg: &Config, case: SweepCase) -> Result<Vec<SweepRow>> {
    let builder = EnvelopeBuilder::new(lts, cfg.envelope_config()?)?;
    entropy_sweep(builder.term_fuzziness(), case)
}
