use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aggregation::{lwa, It2Set, LwaResult};
use crate::envelope::{EnvelopeBuilder, Representation};
use crate::error::{Error, Result};
use crate::it2::{ekm_centroid, Centroid, SampledFou};
use crate::linguistic::{parse_cle, LinguisticTermSet};
use crate::ranking::{final_ranking, rank_by_values, score, RankMatrix, RankedList, ScoreTable};

use super::config::{Config, SCHEMA_VERSION};
use super::survey::{Survey, WeightSpec};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Keep the sampled aggregate FOUs in the result.
    pub geometry: bool,
}

/// Aggregate and centroid of one (DMR, alternative) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub dmr: String,
    pub alternative: String,
    pub upper: [f64; 4],
    pub lower: [f64; 4],
    pub lower_height: f64,
    pub centroid: Centroid,
    pub center: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub dmr: String,
    pub order: Vec<String>,
    pub tied_with_next: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalRanking {
    pub order: Vec<String>,
    pub tied_with_next: Vec<bool>,
    pub display: String,
}

impl FinalRanking {
    fn new(list: &RankedList, names: &[String]) -> Self {
        FinalRanking {
            order: list.order.iter().map(|&i| names[i].clone()).collect(),
            tied_with_next: list.tied_with_next.clone(),
            display: list.render(names),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryCell {
    pub dmr: String,
    pub alternative: String,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub xs: Vec<f64>,
    pub cells: Vec<GeometryCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub version: u32,
    pub dmrs: Vec<String>,
    pub alternatives: Vec<String>,
    pub responses: usize,
    /// Responses that needed an envelope; the rest kept their term semantics.
    pub envelopes: usize,
    pub bypassed: usize,
    pub cells: Vec<CellResult>,
    pub rank_matrix: Vec<RankRow>,
    pub scores: ScoreTable,
    pub final_ranking: FinalRanking,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Geometry>,
}

impl RunResult {
    pub fn rank_matrix(&self) -> Result<RankMatrix> {
        let rows: Vec<Vec<String>> = self.rank_matrix.iter().map(|r| r.order.clone()).collect();
        RankMatrix::from_names(self.alternatives.clone(), &rows)
    }

    /// Replace the computed rank matrix and redo the scoring steps.
    pub fn inject_rank_matrix(&mut self, rm: &RankMatrix, dmr_weights: &[f64]) -> Result<()> {
        if rm.alternatives() != self.alternatives.as_slice() || rm.dmr_count() != self.dmrs.len() {
            return Err(Error::MalformedRankMatrix(
                "injected matrix does not match the survey".into(),
            ));
        }
        let (scores, fin) = finish_from_rank_matrix(rm, dmr_weights)?;
        self.rank_matrix = rank_rows(rm, &self.dmrs, None);
        self.scores = scores;
        self.final_ranking = FinalRanking::new(&fin, &self.alternatives);
        Ok(())
    }
}

fn rank_rows(rm: &RankMatrix, dmrs: &[String], lists: Option<&[RankedList]>) -> Vec<RankRow> {
    let names = rm.alternatives();
    rm.rows()
        .iter()
        .enumerate()
        .map(|(d, row)| RankRow {
            dmr: dmrs[d].clone(),
            order: row.iter().map(|&i| names[i].clone()).collect(),
            tied_with_next: lists.map_or_else(|| vec![false; row.len()], |l| l[d].tied_with_next.clone()),
        })
        .collect()
}

/// Scoring and final ordering from an existing rank matrix.
pub fn finish_from_rank_matrix(rm: &RankMatrix, dmr_weights: &[f64]) -> Result<(ScoreTable, RankedList)> {
    let table = score(rm, dmr_weights)?;
    let fin = final_ranking(&table);
    Ok((table, fin))
}

/// Map `f` over `items`, in parallel if asked; the first failure in input
/// order wins so errors are as deterministic as results.
fn map_cells<T: Sync, U: Send>(
    items: &[T],
    parallel: bool,
    f: impl Fn(&T) -> Result<U> + Sync + Send,
) -> Result<Vec<U>> {
    let out: Vec<Result<U>> = if parallel {
        items.par_iter().map(&f).collect()
    } else {
        items.iter().map(&f).collect()
    };
    out.into_iter().collect()
}

/// Criterion weights as IT2 sets; crisp numbers become zero-width sets.
pub fn criteria_weights(survey: &Survey, builder: &EnvelopeBuilder) -> Result<Vec<It2Set>> {
    survey
        .criteria
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let at = |e: Error| Error::validation(format!("criteria[{i}] ({}).weight", c.id), e.to_string());
            match &c.weight {
                WeightSpec::Crisp(w) => It2Set::crisp(*w).map_err(at),
                WeightSpec::Linguistic(text) => {
                    let cle = parse_cle(text, builder.lts()).map_err(at)?;
                    Ok(builder.represent(&cle).map_err(at)?.it2_set())
                }
            }
        })
        .collect()
}

/// Representation of every response, indexed `[dmr][criterion][alternative]`.
pub fn represent_all(
    survey: &Survey,
    builder: &EnvelopeBuilder,
    parallel: bool,
) -> Result<Vec<Vec<Vec<Representation>>>> {
    let cles = survey.parse_responses(builder.lts())?;
    let (n, m) = (survey.criteria.len(), survey.alternatives.len());
    let coords: Vec<(usize, usize, usize)> = (0..survey.dmrs.len())
        .flat_map(|d| (0..n).flat_map(move |c| (0..m).map(move |a| (d, c, a))))
        .collect();
    let flat = map_cells(&coords, parallel, |&(d, c, a)| {
        builder
            .represent(&cles[d][c][a])
            .map_err(|e| e.at(survey.coord(d, c, a)))
    })?;
    let mut it = flat.into_iter();
    Ok((0..survey.dmrs.len())
        .map(|_| (0..n).map(|_| it.by_ref().take(m).collect()).collect())
        .collect())
}

/// LWA over criteria for every (DMR, alternative), DMR-major.
pub fn aggregate_all(
    reps: &[Vec<Vec<Representation>>],
    weights: &[It2Set],
    levels: usize,
    parallel: bool,
) -> Result<Vec<Vec<LwaResult>>> {
    let p = reps.len();
    let m = reps.first().and_then(|d| d.first()).map_or(0, Vec::len);
    let coords: Vec<(usize, usize)> = (0..p).flat_map(|d| (0..m).map(move |a| (d, a))).collect();
    let flat = map_cells(&coords, parallel, |&(d, a)| {
        let xs: Vec<It2Set> = reps[d].iter().map(|row| row[a].it2_set()).collect();
        lwa(&xs, weights, levels)
    })?;
    let mut it = flat.into_iter();
    Ok((0..p).map(|_| it.by_ref().take(m).collect()).collect())
}

pub fn run(survey: &Survey, lts: &LinguisticTermSet, cfg: &Config) -> Result<RunResult> {
    run_with(survey, lts, cfg, RunOptions::default())
}

pub fn run_with(survey: &Survey, lts: &LinguisticTermSet, cfg: &Config, opts: RunOptions) -> Result<RunResult> {
    cfg.validate()?;
    let builder = EnvelopeBuilder::new(lts, cfg.envelope_config()?)?;
    let grid = cfg.grid()?;
    let reps = represent_all(survey, &builder, cfg.parallel)?;
    let envelopes = reps.iter().flatten().flatten().filter(|r| r.is_envelope()).count();
    let weights = criteria_weights(survey, &builder)?;
    let aggs = aggregate_all(&reps, &weights, cfg.alpha_levels, cfg.parallel)?;

    let dmrs: Vec<String> = survey.dmrs.iter().map(|d| d.id.clone()).collect();
    let alts = &survey.alternatives;
    let mut cells = Vec::new();
    let mut lists = Vec::new();
    let mut geometry = opts.geometry.then(|| Geometry {
        xs: grid.points(),
        cells: Vec::new(),
    });
    for (d, row) in aggs.iter().enumerate() {
        let fous: Vec<SampledFou> = row.iter().map(|r| r.fou(&grid)).collect();
        let mut centers = Vec::with_capacity(row.len());
        for (a, (agg, fou)) in row.iter().zip(&fous).enumerate() {
            let coord = survey.coord(d, 0, a);
            let centroid = ekm_centroid(fou).map_err(|e| {
                e.at(crate::error::CellCoord {
                    criterion: "*".into(),
                    ..coord
                })
            })?;
            let (upper, _) = agg.upper.knots();
            let (lower, lower_height) = agg.lower.knots();
            centers.push(centroid.center());
            cells.push(CellResult {
                dmr: dmrs[d].clone(),
                alternative: alts[a].clone(),
                upper,
                lower,
                lower_height,
                centroid,
                center: centroid.center(),
            });
            if let Some(g) = geometry.as_mut() {
                g.cells.push(GeometryCell {
                    dmr: dmrs[d].clone(),
                    alternative: alts[a].clone(),
                    lower: fou.lower().to_vec(),
                    upper: fou.upper().to_vec(),
                });
            }
        }
        lists.push(rank_by_values(&centers));
    }
    let rm = RankMatrix::new(alts.clone(), lists.iter().map(|l| l.order.clone()).collect())?;
    let (scores, fin) = finish_from_rank_matrix(&rm, &survey.dmr_weights())?;
    Ok(RunResult {
        version: SCHEMA_VERSION,
        dmrs: dmrs.clone(),
        alternatives: alts.clone(),
        responses: survey.response_count(),
        envelopes,
        bypassed: survey.response_count() - envelopes,
        cells,
        rank_matrix: rank_rows(&rm, &dmrs, Some(&lists)),
        scores,
        final_ranking: FinalRanking::new(&fin, alts),
        geometry,
    })
}
