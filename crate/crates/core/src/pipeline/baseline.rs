use serde::{Deserialize, Serialize};

use crate::baselines::{topsis, wlq, NineParamIT2, TopsisResult, WlqResult};
use crate::envelope::EnvelopeBuilder;
use crate::error::{Error, Result};
use crate::it2::{ekm_centroid, It2TrFN};
use crate::linguistic::{parse_cle, LinguisticTermSet};

use super::config::Config;
use super::run::represent_all;
use super::survey::{Survey, WeightSpec};

/// Criterion weights as nine-parameter numbers.
fn nine_param_weights(survey: &Survey, builder: &EnvelopeBuilder) -> Result<Vec<NineParamIT2>> {
    survey
        .criteria
        .iter()
        .enumerate()
        .map(|(i, c)| match &c.weight {
            WeightSpec::Crisp(w) => Ok(NineParamIT2::crisp(*w)),
            WeightSpec::Linguistic(text) => {
                let at = |e: Error| Error::validation(format!("criteria[{i}] ({}).weight", c.id), e.to_string());
                let cle = parse_cle(text, builder.lts()).map_err(at)?;
                Ok(NineParamIT2::from_representation(&builder.represent(&cle).map_err(at)?))
            }
        })
        .collect()
}

/// Rating tensor `[dmr][alternative][criterion]`.
fn ratings(survey: &Survey, builder: &EnvelopeBuilder, parallel: bool) -> Result<Vec<Vec<Vec<NineParamIT2>>>> {
    let reps = represent_all(survey, builder, parallel)?;
    Ok(reps
        .iter()
        .map(|per_c| {
            (0..survey.alternatives.len())
                .map(|a| per_c.iter().map(|row| NineParamIT2::from_representation(&row[a])).collect())
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmrTopsis {
    pub dmr: String,
    #[serde(flatten)]
    pub result: TopsisResult,
}

/// TOPSIS is a single-expert method, so it runs once per DMR.
pub fn run_topsis(survey: &Survey, lts: &LinguisticTermSet, cfg: &Config) -> Result<Vec<DmrTopsis>> {
    let builder = EnvelopeBuilder::new(lts, cfg.envelope_config()?)?;
    let weights = nine_param_weights(survey, &builder)?;
    let tensor = ratings(survey, &builder, cfg.parallel)?;
    tensor
        .iter()
        .zip(&survey.dmrs)
        .map(|(matrix, d)| {
            Ok(DmrTopsis {
                dmr: d.id.clone(),
                result: topsis(matrix, &weights)?,
            })
        })
        .collect()
}

/// Crisp criterion weights summing to 1; linguistic weights contribute
/// their centroid centre before normalization.
pub fn crisp_criteria_weights(survey: &Survey, builder: &EnvelopeBuilder) -> Result<Vec<f64>> {
    let raw = nine_param_weights(survey, builder)?
        .into_iter()
        .map(|w| {
            if w.upper.iter().all(|&x| x == w.upper[0]) {
                return Ok(w.upper[0]);
            }
            let t = It2TrFN::try_from(w)?;
            Ok(ekm_centroid(&t.sample(&builder.config().grid))?.center())
        })
        .collect::<Result<Vec<f64>>>()?;
    let sum: f64 = raw.iter().sum();
    if sum <= 0.0 {
        return Err(Error::ZeroWeights);
    }
    Ok(raw.iter().map(|w| w / sum).collect())
}

pub fn run_wlq(survey: &Survey, lts: &LinguisticTermSet, cfg: &Config) -> Result<WlqResult> {
    let builder = EnvelopeBuilder::new(lts, cfg.envelope_config()?)?;
    let omega = crisp_criteria_weights(survey, &builder)?;
    let tensor = ratings(survey, &builder, cfg.parallel)?;
    wlq(&tensor, &survey.dmr_weights(), &omega)
}
