use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CellCoord, Error, Result};
use crate::linguistic::{parse_cle, Cle, LinguisticTermSet};

use super::config::SCHEMA_VERSION;
use super::read_json;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmrDoc {
    pub id: String,
    pub weight: f64,
}

/// Criterion weight: a crisp number, a term label, or any expression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Crisp(f64),
    Linguistic(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionDoc {
    pub id: String,
    pub weight: WeightSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurveyDoc {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub dmrs: Vec<DmrDoc>,
    pub criteria: Vec<CriterionDoc>,
    pub alternatives: Vec<String>,
    /// `responses[dmr][criterion][alternative]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub responses: Option<Vec<Vec<Vec<String>>>>,
    /// CSV file with the responses, relative to the survey file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub responses_csv: Option<String>,
}

/// A validated survey: complete response table and normalized DMR weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Survey {
    pub dmrs: Vec<DmrDoc>,
    pub criteria: Vec<CriterionDoc>,
    pub alternatives: Vec<String>,
    pub responses: Vec<Vec<Vec<String>>>,
}

impl Survey {
    pub fn dmr_weights(&self) -> Vec<f64> {
        self.dmrs.iter().map(|d| d.weight).collect()
    }

    pub fn response_count(&self) -> usize {
        self.dmrs.len() * self.criteria.len() * self.alternatives.len()
    }

    pub fn coord(&self, d: usize, c: usize, a: usize) -> CellCoord {
        CellCoord {
            dmr: self.dmrs[d].id.clone(),
            criterion: self.criteria[c].id.clone(),
            alternative: self.alternatives[a].clone(),
        }
    }

    /// Parse every response; errors carry the cell coordinates.
    pub fn parse_responses(&self, lts: &LinguisticTermSet) -> Result<Vec<Vec<Vec<Cle>>>> {
        self.responses
            .iter()
            .enumerate()
            .map(|(d, per_c)| {
                per_c
                    .iter()
                    .enumerate()
                    .map(|(c, per_a)| {
                        per_a
                            .iter()
                            .enumerate()
                            .map(|(a, text)| parse_cle(text, lts).map_err(|e| e.at(self.coord(d, c, a))))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// The same survey restricted to one DMR, whose weight becomes 1.
    pub fn single_dmr(&self, d: usize) -> Survey {
        Survey {
            dmrs: vec![DmrDoc {
                id: self.dmrs[d].id.clone(),
                weight: 1.0,
            }],
            criteria: self.criteria.clone(),
            alternatives: self.alternatives.clone(),
            responses: vec![self.responses[d].clone()],
        }
    }
}

fn unique(kind: &str, ids: impl Iterator<Item = String>) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, id) in ids.enumerate() {
        if id.trim().is_empty() {
            return Err(Error::validation(format!("{kind}[{i}].id"), "empty id"));
        }
        if !seen.insert(id.clone()) {
            return Err(Error::validation(format!("{kind}[{i}].id"), format!("duplicate id `{id}`")));
        }
    }
    if seen.is_empty() {
        return Err(Error::validation(kind, "must not be empty"));
    }
    Ok(())
}

impl SurveyDoc {
    /// Validate into a [`Survey`]. `base` resolves a relative `responses_csv`.
    pub fn into_survey(self, base: Option<&Path>) -> Result<Survey> {
        if self.version != SCHEMA_VERSION {
            return Err(Error::validation(
                "version",
                format!("unsupported survey version {}", self.version),
            ));
        }
        unique("dmrs", self.dmrs.iter().map(|d| d.id.clone()))?;
        unique("criteria", self.criteria.iter().map(|c| c.id.clone()))?;
        unique("alternatives", self.alternatives.iter().cloned())?;
        for (i, d) in self.dmrs.iter().enumerate() {
            if !(d.weight.is_finite() && d.weight >= 0.0) {
                return Err(Error::validation(
                    format!("dmrs[{i}] ({}).weight", d.id),
                    format!("must be a nonnegative number, got {}", d.weight),
                ));
            }
        }
        let sum: f64 = self.dmrs.iter().map(|d| d.weight).sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::validation(
                "dmrs[*].weight",
                format!("DMR weights sum to {sum}, expected 1"),
            ));
        }
        for (i, c) in self.criteria.iter().enumerate() {
            if let WeightSpec::Crisp(w) = c.weight {
                if !(w.is_finite() && w >= 0.0) {
                    return Err(Error::validation(
                        format!("criteria[{i}] ({}).weight", c.id),
                        format!("must be nonnegative, got {w}"),
                    ));
                }
            }
        }
        let responses = match (self.responses, self.responses_csv) {
            (Some(r), None) => r,
            (None, Some(csv_path)) => {
                let p = base.map_or_else(|| Path::new(&csv_path).to_path_buf(), |b| b.join(&csv_path));
                read_responses_csv(&p, &self.dmrs, &self.criteria, &self.alternatives)?
            }
            (Some(_), Some(_)) => {
                return Err(Error::validation("responses", "give either `responses` or `responses_csv`, not both"))
            }
            (None, None) => return Err(Error::validation("responses", "missing response table")),
        };
        let (p, n, m) = (self.dmrs.len(), self.criteria.len(), self.alternatives.len());
        if responses.len() != p {
            return Err(Error::validation(
                "responses",
                format!("{} DMR blocks, expected {p}", responses.len()),
            ));
        }
        for (d, block) in responses.iter().enumerate() {
            let dmr = &self.dmrs[d].id;
            if block.len() != n {
                return Err(Error::validation(
                    format!("responses[{d}] (dmr={dmr})"),
                    format!("{} criterion rows, expected {n}", block.len()),
                ));
            }
            for (c, row) in block.iter().enumerate() {
                if row.len() != m {
                    return Err(Error::validation(
                        format!("responses[{d}][{c}] (dmr={dmr}, criterion={})", self.criteria[c].id),
                        format!("{} responses, expected {m}", row.len()),
                    ));
                }
            }
        }
        Ok(Survey {
            dmrs: self.dmrs,
            criteria: self.criteria,
            alternatives: self.alternatives,
            responses,
        })
    }
}

pub fn load_survey(path: &Path) -> Result<Survey> {
    let doc: SurveyDoc = read_json(path)?;
    doc.into_survey(path.parent()).map_err(|e| match e {
        Error::Validation { path: p, message } => Error::Validation {
            path: format!("{}: {p}", path.display()),
            message,
        },
        other => other,
    })
}

/// Rows `dmr, criterion, <alternative>...`, one per (DMR, criterion) pair.
pub fn read_responses_csv(
    path: &Path,
    dmrs: &[DmrDoc],
    criteria: &[CriterionDoc],
    alternatives: &[String],
) -> Result<Vec<Vec<Vec<String>>>> {
    let shown = path.display().to_string();
    let csv_err = |source| Error::Csv {
        path: shown.clone(),
        source,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let header: Vec<String> = rdr.headers().map_err(csv_err)?.iter().map(str::to_string).collect();
    if header.len() < 3 || header[0] != "dmr" || header[1] != "criterion" {
        return Err(Error::validation(
            format!("{shown}: header"),
            "expected columns `dmr, criterion, <alternatives...>`",
        ));
    }
    if header[2..] != *alternatives {
        return Err(Error::validation(
            format!("{shown}: header"),
            format!("alternative columns {:?} differ from survey {:?}", &header[2..], alternatives),
        ));
    }
    let d_index: HashMap<&str, usize> = dmrs.iter().enumerate().map(|(i, d)| (d.id.as_str(), i)).collect();
    let c_index: HashMap<&str, usize> = criteria.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
    let mut table: Vec<Vec<Option<Vec<String>>>> = vec![vec![None; criteria.len()]; dmrs.len()];
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let row_path = format!("{shown}: row {}", line + 2);
        let d = *d_index
            .get(&rec[0])
            .ok_or_else(|| Error::validation(&row_path, format!("unknown dmr `{}`", &rec[0])))?;
        let c = *c_index
            .get(&rec[1])
            .ok_or_else(|| Error::validation(&row_path, format!("unknown criterion `{}`", &rec[1])))?;
        if table[d][c].is_some() {
            return Err(Error::validation(
                &row_path,
                format!("duplicate row for dmr={}, criterion={}", &rec[0], &rec[1]),
            ));
        }
        table[d][c] = Some(rec.iter().skip(2).map(str::to_string).collect());
    }
    table
        .into_iter()
        .enumerate()
        .map(|(d, row)| {
            row.into_iter()
                .enumerate()
                .map(|(c, cell)| {
                    cell.ok_or_else(|| {
                        Error::validation(
                            shown.clone(),
                            format!("missing row for dmr={}, criterion={}", dmrs[d].id, criteria[c].id),
                        )
                    })
                })
                .collect()
        })
        .collect()
}
