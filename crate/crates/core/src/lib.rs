//! Genre classification of Brazilian songs from their cifra chord sequences.
//!
//! The pipeline parses chord symbols, reduces each song to 23 harmonic and
//! metadata features, splits the corpus by genre, trains a random forest and
//! reports accuracy, kappa and per-genre confusion.

pub mod chord;
pub mod cli;
pub mod dataset;
pub mod eval;
pub mod features;
pub mod forest;
pub mod rng;
pub mod synthetic;
pub mod theory;

pub use chord::{parse_chord, parse_chord_with, ChordError, ParseMode, ParsedChord, PitchClass};
pub use dataset::{DatasetError, FeatureTable, SongRecord, SplitIndices};
pub use eval::{EvalError, EvalReport};
pub use features::{FeatureError, FeatureVector, FEATURE_NAMES};
pub use forest::{Forest, ForestError, ForestParams};
