//! Phonetic confusability metric and two-list word alphabet builder.
//!
//! Phonemes become weighted 26-bit feature vectors, words become fixed
//! template codes, and the distance between two words is the number of
//! differing bits. A genetic search picks 256 mutually distant words per
//! template, and the two lists together encode bytes as alternating words.

pub mod alphabet;
pub mod cli;
pub mod error;
pub mod features;
pub mod filters;
pub mod lexicon;
pub mod metric;
pub mod optimizer;
pub mod phoneme;
pub mod synth;
pub mod word_code;

pub use alphabet::{decode_words, encode_bytes, Alphabet, DecodeReport};
pub use error::{Error, Result};
pub use features::FeatureVector;
pub use lexicon::WordEntry;
pub use metric::{min_pairwise, word_distance};
pub use optimizer::{evolve, GaConfig, Pool};
pub use phoneme::Inventory;
pub use word_code::{encode_word, TemplateKind, WordCode};
