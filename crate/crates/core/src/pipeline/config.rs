use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::aggregation::DEFAULT_ALPHA_LEVELS;
use crate::envelope::{EnvelopeConfig, OwaKind, ShoulderPolicy, CALIBRATED_ALPHA};
use crate::error::{Error, Result};
use crate::it2::{FuzzinessMode, Grid, It2TrFN, Trapezoid};
use crate::linguistic::{LinguisticTermSet, Term};

use super::read_json;

/// Environment variable naming the default configuration file.
pub const CONFIG_ENV: &str = "T2HFLTS_CONFIG";

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub version: u32,
    pub alpha: f64,
    pub owa_kinds: [OwaKind; 2],
    pub shoulder_policy: ShoulderPolicy,
    pub grid_points: usize,
    pub fuzziness_mode: FuzzinessMode,
    pub alpha_levels: usize,
    pub parallel: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            version: SCHEMA_VERSION,
            alpha: CALIBRATED_ALPHA,
            owa_kinds: [OwaKind::W2, OwaKind::W1],
            shoulder_policy: ShoulderPolicy::Clamp,
            grid_points: Grid::default().len(),
            fuzziness_mode: FuzzinessMode::Midpoint,
            alpha_levels: DEFAULT_ALPHA_LEVELS,
            parallel: false,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let cfg: Config = read_json(path)?;
        cfg.validate().map_err(|e| prefix(path, e))?;
        Ok(cfg)
    }

    /// Explicit path, else the path in `T2HFLTS_CONFIG`, else defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self> {
        let from_env = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        match explicit.map(Path::to_path_buf).or(from_env) {
            Some(p) => Self::load(&p),
            None => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != SCHEMA_VERSION {
            return Err(Error::validation(
                "version",
                format!("unsupported config version {}", self.version),
            ));
        }
        self.envelope_config()?.validate()?;
        if self.alpha_levels < 2 {
            return Err(Error::validation("alpha_levels", "need at least 2 levels"));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid_points)
    }

    pub fn envelope_config(&self) -> Result<EnvelopeConfig> {
        Ok(EnvelopeConfig {
            alpha: self.alpha,
            owa_kinds: self.owa_kinds,
            shoulder_policy: self.shoulder_policy,
            grid: self.grid()?,
            fuzziness_mode: self.fuzziness_mode,
        })
    }
}

fn prefix(path: &Path, e: Error) -> Error {
    match e {
        Error::Validation { path: p, message } => Error::Validation {
            path: format!("{}: {p}", path.display()),
            message,
        },
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub long_label: Option<String>,
    pub umf: [f64; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub umf_height: Option<f64>,
    pub lmf: [f64; 4],
    pub lmf_height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LtsDoc {
    pub version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub terms: Vec<TermDoc>,
}

impl LtsDoc {
    pub fn build(&self) -> Result<LinguisticTermSet> {
        if self.version != SCHEMA_VERSION {
            return Err(Error::validation(
                "version",
                format!("unsupported LTS version {}", self.version),
            ));
        }
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let at = |field: &str, e: Error| {
                    Error::validation(format!("terms[{i}] ({}).{field}", t.label), e.to_string())
                };
                let [a, b, c, d] = t.umf;
                let umf = Trapezoid::with_height(a, b, c, d, t.umf_height.unwrap_or(1.0))
                    .map_err(|e| at("umf", e))?;
                let [e, f, g, o] = t.lmf;
                let lmf = Trapezoid::with_height(e, f, g, o, t.lmf_height)
                    .map_err(|e| at("lmf", e))?;
                let sem = It2TrFN::new(umf, lmf).map_err(|e| at("lmf", e))?;
                let mut term = Term::new(t.label.clone(), sem);
                term.long_label = t.long_label.clone();
                Ok(term)
            })
            .collect::<Result<Vec<_>>>()?;
        LinguisticTermSet::new(self.name.clone(), terms)
    }

    pub fn from_lts(lts: &LinguisticTermSet) -> Self {
        LtsDoc {
            version: SCHEMA_VERSION,
            name: lts.name().to_string(),
            description: None,
            terms: lts
                .terms()
                .iter()
                .map(|t| TermDoc {
                    label: t.label.clone(),
                    long_label: t.long_label.clone(),
                    umf: t.semantics.umf().knots(),
                    umf_height: (t.semantics.umf().height() != 1.0).then(|| t.semantics.umf().height()),
                    lmf: t.semantics.lmf().knots(),
                    lmf_height: t.semantics.lmf().height(),
                })
                .collect(),
        }
    }
}

pub fn parse_lts(text: &str, origin: &str) -> Result<LinguisticTermSet> {
    let doc: LtsDoc = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.to_string(),
        source,
    })?;
    doc.build().map_err(|e| prefix(Path::new(origin), e))
}

pub fn load_lts(path: &Path) -> Result<LinguisticTermSet> {
    let doc: LtsDoc = read_json(path)?;
    doc.build().map_err(|e| prefix(path, e))
}
