//! Subcharacter inclusion graphs for sinographs.
//!
//! Characters are grouped into allographic classes, linked by stroke-level
//! inclusion, weighted by phonetic and semantic relatedness, and used to
//! enrich unigram features for text classification and to guess the meaning
//! of unknown characters.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix it to `f64`.

pub mod charstore;
pub mod classify;
mod error;
pub mod features;
pub mod freqlists;
pub mod graphcore;
pub mod inferschar;
pub mod io;
pub mod phonetics;
pub mod pipeline;
mod scalar;
pub mod semantics;
pub mod strokesig;
pub mod synthetic;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type InclusionGraph = graphcore::InclusionGraph<f64>;
pub type FrequencyList = freqlists::FrequencyList<f64>;
pub type Stroke = strokesig::Stroke<f64>;
pub type CharSignature = strokesig::CharSignature<f64>;
pub type PairSignature = strokesig::PairSignature<f64>;
pub type FeatureSet = features::FeatureSet<f64>;
pub type LinearModel = classify::LinearModel<f64>;
pub type EvalReport = classify::EvalReport<f64>;
pub type SynsetVector = inferschar::SynsetVector<f64>;
pub type PowerLawFit = graphcore::PowerLawFit<f64>;
