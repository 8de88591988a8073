//! Type-2 hesitant fuzzy linguistic term sets for group decision making.
//!
//! Survey responses are comparative linguistic expressions ("between M and VG").
//! Each one becomes an interval type-2 fuzzy set. Single terms keep their own
//! semantics. Multi-term ranges get an entropy-weighted envelope. Sets are
//! aggregated per decision maker with the linguistic weighted average, ranked
//! by centroid, and fused with an expertise/priority score.
//!
//! ```
//! use t2hflts::{entropy, linguistic::Cle};
//!
//! let beta = entropy::beta(&Cle::Between { i: 2, j: 4 }, 4);
//! assert!((beta - 0.5).abs() < 1e-12);
//! ```

pub mod aggregation;
pub mod baselines;
pub mod entropy;
pub mod envelope;
pub mod error;
pub mod it2;
pub mod linguistic;
pub mod pipeline;
pub mod ranking;

pub use error::{Error, Result};
pub use it2::{Centroid, FuzzinessMode, Grid, It2TrFN, SampledFou, Trapezoid};
pub use linguistic::{parse_cle, Cle, LinguisticTermSet, T2Hflts, Term, TermIndexSet};
