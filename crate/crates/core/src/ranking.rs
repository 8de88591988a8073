//! Centroid ranking, rank matrices and the expertise/priority score.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::it2::{ekm_centroid, Centroid, SampledFou};

/// Values closer than this are reported as ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Alternatives in preference order (best first). `tied_with_next[k]` marks
/// that `order[k]` and `order[k + 1]` could not be separated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedList {
    pub order: Vec<usize>,
    pub tied_with_next: Vec<bool>,
}

impl RankedList {
    pub fn has_ties(&self) -> bool {
        self.tied_with_next.iter().any(|&t| t)
    }

    /// 1-based rank of each alternative.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (k, &a) in self.order.iter().enumerate() {
            pos[a] = k + 1;
        }
        pos
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (k, &a) in self.order.iter().enumerate() {
            out.push_str(&names[a]);
            if k + 1 < self.order.len() {
                out.push_str(if self.tied_with_next[k] { " = " } else { " > " });
            }
        }
        out
    }
}

/// Sort descending; equal values (within tolerance) keep index order and are flagged.
pub fn rank_by_values(values: &[f64]) -> RankedList {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| {
        if (values[i] - values[j]).abs() <= TIE_TOLERANCE {
            i.cmp(&j)
        } else {
            values[j].total_cmp(&values[i])
        }
    });
    let tied_with_next = order
        .windows(2)
        .map(|w| (values[w[0]] - values[w[1]]).abs() <= TIE_TOLERANCE)
        .chain(std::iter::once(false))
        .collect::<Vec<_>>();
    let tied_with_next = if order.is_empty() { vec![] } else { tied_with_next };
    RankedList {
        order,
        tied_with_next,
    }
}

/// Rank FOUs by the center of their EKM centroid interval.
pub fn centroid_rank(fous: &[SampledFou]) -> Result<(Vec<Centroid>, RankedList)> {
    if fous.is_empty() {
        return Err(Error::Empty("alternatives"));
    }
    let centroids = fous.iter().map(ekm_centroid).collect::<Result<Vec<_>>>()?;
    let centers: Vec<f64> = centroids.iter().map(Centroid::center).collect();
    Ok((centroids, rank_by_values(&centers)))
}

/// Row `i` is DMR `i`'s ordering of alternative indices, best first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankMatrix {
    alternatives: Vec<String>,
    rows: Vec<Vec<usize>>,
}

impl RankMatrix {
    pub fn new(alternatives: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = alternatives.len();
        if m == 0 || rows.is_empty() {
            return Err(Error::MalformedRankMatrix("no alternatives or no rows".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            let mut seen = vec![false; m];
            if row.len() != m {
                return Err(Error::MalformedRankMatrix(format!(
                    "row {r} has {} entries, expected {m}",
                    row.len()
                )));
            }
            for &a in row {
                if a >= m || std::mem::replace(&mut seen[a], true) {
                    return Err(Error::MalformedRankMatrix(format!(
                        "row {r} is not a permutation of the alternatives"
                    )));
                }
            }
        }
        Ok(RankMatrix { alternatives, rows })
    }

    /// Rows given as alternative names.
    pub fn from_names<S: AsRef<str>>(alternatives: Vec<String>, rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .map(|name| {
                        alternatives
                            .iter()
                            .position(|a| a == name.as_ref())
                            .ok_or_else(|| {
                                Error::MalformedRankMatrix(format!(
                                    "row {r}: unknown alternative `{}`",
                                    name.as_ref()
                                ))
                            })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alternatives, rows)
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn dmr_count(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    /// 1-based rank.
    pub rank: usize,
    /// Mean DMR weight over the occurrences at this rank.
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternativeScore {
    pub alternative: String,
    pub score: f64,
    pub contributions: Vec<Contribution>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    pub scores: Vec<AlternativeScore>,
}

impl ScoreTable {
    pub fn values(&self) -> Vec<f64> {
        self.scores.iter().map(|s| s.score).collect()
    }
}

/// Linear rank priority `(m + 1) - j`.
pub fn linear_priority(rank: usize, m: usize) -> f64 {
    (m + 1 - rank) as f64
}

pub fn score(r: &RankMatrix, dmr_weights: &[f64]) -> Result<ScoreTable> {
    score_with(r, dmr_weights, linear_priority)
}

/// Score with a custom rank priority `p(rank, m)`.
pub fn score_with(
    r: &RankMatrix,
    dmr_weights: &[f64],
    priority: impl Fn(usize, usize) -> f64,
) -> Result<ScoreTable> {
    if dmr_weights.len() != r.dmr_count() {
        return Err(Error::validation(
            "dmr_weights",
            format!("{} weights for {} DMRs", dmr_weights.len(), r.dmr_count()),
        ));
    }
    if dmr_weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::validation("dmr_weights", "weights must be finite and nonnegative"));
    }
    let sum: f64 = dmr_weights.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(sum));
    }
    let m = r.alternatives.len();
    let mut scores = Vec::with_capacity(m);
    for alt in 0..m {
        // (sum of weights, occurrences) per rank
        let mut acc = vec![(0.0, 0usize); m];
        for (d, row) in r.rows.iter().enumerate() {
            let j = row.iter().position(|&a| a == alt).expect("rows are permutations");
            acc[j].0 += dmr_weights[d];
            acc[j].1 += 1;
        }
        let contributions: Vec<Contribution> = acc
            .iter()
            .enumerate()
            .filter(|(_, (_, n))| *n > 0)
            .map(|(j, (w, n))| Contribution {
                rank: j + 1,
                c: w / *n as f64,
            })
            .collect();
        let den: f64 = contributions.iter().map(|c| c.c).sum();
        if contributions.is_empty() || den <= 0.0 {
            return Err(Error::MalformedRankMatrix(format!(
                "alternative `{}` carries no weight",
                r.alternatives[alt]
            )));
        }
        let num: f64 = contributions
            .iter()
            .map(|c| priority(c.rank, m) * c.c)
            .sum();
        scores.push(AlternativeScore {
            alternative: r.alternatives[alt].clone(),
            score: num / den,
            contributions,
        });
    }
    Ok(ScoreTable { scores })
}

pub fn final_ranking(table: &ScoreTable) -> RankedList {
    rank_by_values(&table.values())
}
