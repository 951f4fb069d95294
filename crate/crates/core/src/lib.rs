//! Fuzzy-rough sentence similarity.
//!
//! Sentences become fuzzy sets over the union of their content words. A
//! WordNet Wu-Palmer relation between words yields fuzzy-rough lower and
//! upper approximations of each sentence; comparing the approximations of
//! two sentences gives a lower and an upper similarity, and a Mamdani fuzzy
//! inference system fuses the two into a single 0–5 relatedness rank.
//!
//! ```
//! use frsim::fisdsl::presets;
//!
//! let fis = presets::model1();
//! let rank = fis.rank(1.0, 1.0).unwrap();
//! assert!((rank - 4.5).abs() < 1e-3);
//! ```

pub mod cli;
pub mod dataset;
pub mod error;
pub mod fis;
pub mod fisdsl;
pub mod fuzzyset;
pub mod json;
pub mod pipeline;
pub mod roughapprox;
pub mod tuner;
pub mod wordnet;

pub use error::{Error, Result};
pub use fis::FisConfig;
pub use fuzzyset::{FuzzySet, Universe};
pub use roughapprox::{lower_approximation, upper_approximation, FuzzyRelation};
