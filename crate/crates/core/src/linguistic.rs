//! Linguistic term sets, comparative linguistic expressions and T2 HFLTS algebra.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::it2::{ekm_centroid, Grid, It2TrFN};

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub label: String,
    pub long_label: Option<String>,
    pub semantics: It2TrFN,
}

impl Term {
    pub fn new(label: impl Into<String>, semantics: It2TrFN) -> Self {
        Term {
            label: label.into(),
            long_label: None,
            semantics,
        }
    }

    pub fn with_long_label(mut self, long: impl Into<String>) -> Self {
        self.long_label = Some(long.into());
        self
    }
}

/// Ordered terms `s_0 .. s_g` with IT2 semantics on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticTermSet {
    name: String,
    terms: Vec<Term>,
}

impl LinguisticTermSet {
    /// Validates label uniqueness, the unit domain and nondecreasing centroids.
    pub fn new(name: impl Into<String>, terms: Vec<Term>) -> Result<Self> {
        if terms.len() < 2 {
            return Err(Error::validation(
                "terms",
                format!("need at least 2 terms (g >= 1), got {}", terms.len()),
            ));
        }
        let mut seen = HashSet::new();
        for (i, t) in terms.iter().enumerate() {
            // A term may reuse its own short label as long label.
            let names: BTreeSet<String> = std::iter::once(&t.label)
                .chain(t.long_label.as_ref())
                .map(|n| normalize(n))
                .collect();
            for key in names {
                if key.is_empty() {
                    return Err(Error::validation(format!("terms[{i}].label"), "empty label"));
                }
                if !seen.insert(key.clone()) {
                    return Err(Error::validation(
                        format!("terms[{i}] ({})", t.label),
                        format!("duplicate label `{key}`"),
                    ));
                }
            }
            let (a, d) = t.semantics.umf().support();
            if a < 0.0 || d > 1.0 {
                return Err(Error::validation(
                    format!("terms[{i}] ({}).umf", t.label),
                    format!("support [{a}, {d}] leaves the universe [0, 1]"),
                ));
            }
        }
        let grid = Grid::default();
        let mut prev: Option<(f64, &str)> = None;
        for (i, t) in terms.iter().enumerate() {
            let c = ekm_centroid(&t.semantics.sample(&grid))
                .map_err(|e| Error::validation(format!("terms[{i}] ({})", t.label), e.to_string()))?
                .center();
            if let Some((p, plabel)) = prev {
                if c < p - 1e-9 {
                    return Err(Error::validation(
                        format!("terms[{i}] ({})", t.label),
                        format!("centroid {c:.4} precedes `{plabel}` centroid {p:.4}; terms must be ordered"),
                    ));
                }
            }
            prev = Some((c, &t.label));
        }
        Ok(LinguisticTermSet {
            name: name.into(),
            terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Index of the last term.
    pub fn g(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> Result<&Term> {
        self.terms.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            g: self.g(),
        })
    }

    pub fn semantics(&self, i: usize) -> Result<&It2TrFN> {
        Ok(&self.term(i)?.semantics)
    }

    /// Resolve a short or long label, ignoring case and surplus whitespace.
    pub fn resolve(&self, label: &str) -> Result<usize> {
        let key = normalize(label);
        self.terms
            .iter()
            .position(|t| {
                normalize(&t.label) == key
                    || t.long_label.as_deref().map(normalize).as_deref() == Some(key.as_str())
            })
            .ok_or_else(|| Error::UnknownLabel {
                label: label.trim().to_string(),
                candidates: self.candidates(),
            })
    }

    fn candidates(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|t| match &t.long_label {
                Some(l) if l != &t.label => format!("{} ({l})", t.label),
                _ => t.label.clone(),
            })
            .collect()
    }

    /// Whether `s_i` is the mirror image of `s_{g-i}` about 0.5 for every `i`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let g = self.g();
        (0..=g).all(|i| {
            self.terms[i]
                .semantics
                .approx_eq(&self.terms[g - i].semantics.mirrored(), tol)
        })
    }
}

fn normalize(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Comparative linguistic expression over term indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cle {
    Single { i: usize },
    LessThan { i: usize },
    MoreThan { i: usize },
    Between { i: usize, j: usize },
}

impl Cle {
    pub fn is_single(&self) -> bool {
        matches!(self, Cle::Single { .. })
    }

    fn check(&self, g: usize) -> Result<()> {
        let (lo, hi) = match *self {
            Cle::Single { i } | Cle::LessThan { i } | Cle::MoreThan { i } => (i, i),
            Cle::Between { i, j } => (i, j),
        };
        for index in [lo, hi] {
            if index > g {
                return Err(Error::IndexOutOfRange { index, g });
            }
        }
        if lo > hi {
            return Err(Error::ReversedRange {
                lower: format!("s{lo}"),
                upper: format!("s{hi}"),
            });
        }
        Ok(())
    }

    /// Canonical phrase using the short labels of `lts`.
    pub fn render(&self, lts: &LinguisticTermSet) -> Result<String> {
        self.check(lts.g())?;
        let l = |i: usize| lts.terms[i].label.as_str();
        Ok(match *self {
            Cle::Single { i } => l(i).to_string(),
            Cle::LessThan { i } => format!("less than {}", l(i)),
            Cle::MoreThan { i } => format!("more than {}", l(i)),
            Cle::Between { i, j } => format!("between {} and {}", l(i), l(j)),
        })
    }

    /// Apply the transformation rules to get the covered index range.
    pub fn transform(&self, g: usize) -> Result<T2Hflts> {
        self.check(g)?;
        let (lo, hi) = match *self {
            Cle::Single { i } => (i, i),
            Cle::LessThan { i } => (0, i),
            Cle::MoreThan { i } => (i, g),
            Cle::Between { i, j } => (i, j),
        };
        Ok(T2Hflts {
            g,
            span: Some((lo, hi)),
        })
    }
}

/// Parse `between X and Y` | `less than X` | `more than X` | `X`.
pub fn parse_cle(text: &str, lts: &LinguisticTermSet) -> Result<Cle> {
    let norm = normalize(text);
    if norm.is_empty() {
        return Err(Error::MalformedExpression(text.to_string()));
    }
    let rest_of = |prefix: &str| -> Option<&str> {
        norm.strip_prefix(prefix)
            .filter(|r| r.starts_with(' '))
            .map(str::trim)
    };
    if let Some(rest) = rest_of("between") {
        return parse_between(text, rest, lts);
    }
    for (prefix, less) in [("less than", true), ("more than", false)] {
        if let Some(rest) = rest_of(prefix) {
            if rest.is_empty() {
                return Err(Error::MalformedExpression(text.to_string()));
            }
            let i = lts.resolve(rest)?;
            return Ok(if less {
                Cle::LessThan { i }
            } else {
                Cle::MoreThan { i }
            });
        }
    }
    if matches!(norm.as_str(), "between" | "less than" | "more than" | "less" | "more") {
        return Err(Error::MalformedExpression(text.to_string()));
    }
    Ok(Cle::Single {
        i: lts.resolve(&norm)?,
    })
}

fn parse_between(text: &str, rest: &str, lts: &LinguisticTermSet) -> Result<Cle> {
    // Labels may themselves contain "and", so try every split point.
    let splits: Vec<(&str, &str)> = rest
        .match_indices(" and ")
        .map(|(k, sep)| (&rest[..k], &rest[k + sep.len()..]))
        .filter(|(l, r)| !l.trim().is_empty() && !r.trim().is_empty())
        .collect();
    if splits.is_empty() {
        return Err(Error::MalformedExpression(text.to_string()));
    }
    let mut first_err = None;
    for (left, right) in splits {
        match (lts.resolve(left), lts.resolve(right)) {
            (Ok(i), Ok(j)) => {
                if i > j {
                    return Err(Error::ReversedRange {
                        lower: lts.terms[i].label.clone(),
                        upper: lts.terms[j].label.clone(),
                    });
                }
                return Ok(Cle::Between { i, j });
            }
            (Err(e), _) | (_, Err(e)) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.unwrap_or_else(|| Error::MalformedExpression(text.to_string())))
}

/// A consecutive range `[lo..=hi]` of term indices, or the explicit empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct T2Hflts {
    g: usize,
    span: Option<(usize, usize)>,
}

impl T2Hflts {
    pub fn new(g: usize, lo: usize, hi: usize) -> Result<Self> {
        if hi > g {
            return Err(Error::IndexOutOfRange { index: hi, g });
        }
        if lo > hi {
            return Err(Error::ReversedRange {
                lower: format!("s{lo}"),
                upper: format!("s{hi}"),
            });
        }
        Ok(T2Hflts {
            g,
            span: Some((lo, hi)),
        })
    }

    pub fn empty(g: usize) -> Self {
        T2Hflts { g, span: None }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn span(&self) -> Option<(usize, usize)> {
        self.span
    }

    pub fn is_empty(&self) -> bool {
        self.span.is_none()
    }

    /// Number of terms `l`.
    pub fn len(&self) -> usize {
        self.span.map_or(0, |(lo, hi)| hi - lo + 1)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        let (lo, hi) = self.span.map_or((1, 0), |s| s);
        lo..=hi
    }

    pub fn contains(&self, k: usize) -> bool {
        self.span.is_some_and(|(lo, hi)| lo <= k && k <= hi)
    }

    /// Index-wise negation `k -> g - k`.
    pub fn complement(&self) -> Self {
        T2Hflts {
            g: self.g,
            span: self.span.map(|(lo, hi)| (self.g - hi, self.g - lo)),
        }
    }

    pub fn to_index_set(&self) -> TermIndexSet {
        TermIndexSet {
            g: self.g,
            indices: self.indices().collect(),
        }
    }

    pub fn union(&self, other: &T2Hflts) -> Result<TermIndexSet> {
        self.to_index_set().union(&other.to_index_set())
    }

    pub fn intersection(&self, other: &T2Hflts) -> Result<TermIndexSet> {
        self.to_index_set().intersection(&other.to_index_set())
    }
}

impl fmt::Display for T2Hflts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.span {
            None => write!(f, "{{}}"),
            Some((lo, hi)) => {
                let parts: Vec<String> = (lo..=hi).map(|k| format!("s{k}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

/// Arbitrary set of term indices; the result type of union and intersection,
/// which need not stay consecutive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermIndexSet {
    g: usize,
    indices: BTreeSet<usize>,
}

impl TermIndexSet {
    pub fn new(g: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&index) = indices.iter().find(|&&k| k > g) {
            return Err(Error::IndexOutOfRange { index, g });
        }
        Ok(TermIndexSet { g, indices })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_consecutive(&self) -> bool {
        match (self.indices.first(), self.indices.last()) {
            (Some(lo), Some(hi)) => hi - lo + 1 == self.indices.len(),
            _ => true,
        }
    }

    fn same_lts(&self, other: &TermIndexSet) -> Result<()> {
        if self.g != other.g {
            return Err(Error::LtsMismatch(self.g, other.g));
        }
        Ok(())
    }

    pub fn union(&self, other: &TermIndexSet) -> Result<TermIndexSet> {
        self.same_lts(other)?;
        Ok(TermIndexSet {
            g: self.g,
            indices: self.indices.union(&other.indices).copied().collect(),
        })
    }

    pub fn intersection(&self, other: &TermIndexSet) -> Result<TermIndexSet> {
        self.same_lts(other)?;
        Ok(TermIndexSet {
            g: self.g,
            indices: self.indices.intersection(&other.indices).copied().collect(),
        })
    }

    pub fn complement(&self) -> TermIndexSet {
        TermIndexSet {
            g: self.g,
            indices: self.indices.iter().map(|k| self.g - k).collect(),
        }
    }

    /// Back to a T2 HFLTS; fails when the indices have gaps.
    pub fn to_hflts(&self) -> Result<T2Hflts> {
        if !self.is_consecutive() {
            return Err(Error::NonConsecutive(self.indices.iter().copied().collect()));
        }
        Ok(match (self.indices.first(), self.indices.last()) {
            (Some(&lo), Some(&hi)) => T2Hflts {
                g: self.g,
                span: Some((lo, hi)),
            },
            _ => T2Hflts::empty(self.g),
        })
    }
}
