//! Pronounceable pseudo-words for demos and load tests.
//!
//! Words are built syllable by syllable from common onsets, vowels and
//! codas, spelled with a fixed letter mapping, and emitted in the
//! dictionary format with explicit syllable breaks and stress marks. Every
//! generated word passes the candidate filters when paired with the
//! generated frequency file.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::optimizer::SeededRng;

#[rustfmt::skip]
const ONSETS: &[&[&str]] = &[
    &["P"], &["B"], &["M"], &["T"], &["D"], &["N"], &["K"], &["G"], &["CH"], &["JH"],
    &["F"], &["V"], &["TH"], &["S"], &["Z"], &["SH"], &["HH"], &["L"], &["R"], &["Y"],
    &["W"], &["P", "R"], &["B", "R"], &["T", "R"], &["D", "R"], &["K", "R"], &["G", "R"],
    &["F", "R"], &["P", "L"], &["B", "L"], &["K", "L"], &["G", "L"], &["F", "L"],
    &["S", "T"], &["S", "P"], &["S", "K"], &["S", "M"], &["S", "N"], &["S", "L"],
];

const NUCLEI: &[&str] = &[
    "IY", "IH", "EH", "AE", "AA", "AH", "AO", "ER", "UH", "UW", "AY", "AW", "EY", "OY", "OW",
];

#[rustfmt::skip]
const CODAS: &[&[&str]] = &[
    &[], &[], &["T"], &["D"], &["N"], &["M"], &["K"], &["S"], &["L"], &["R"], &["NG"],
    &["N", "T"], &["S", "T"], &["N", "D"], &["L", "T"], &["R", "K"], &["M", "P"],
];

#[rustfmt::skip]
fn letters(symbol: &str) -> &'static str {
    match symbol {
        "P" => "p", "B" => "b", "M" => "m", "T" => "t", "D" => "d", "N" => "n",
        "K" => "k", "G" => "g", "NG" => "ng", "CH" => "ch", "JH" => "j", "F" => "f",
        "V" => "v", "TH" => "th", "S" => "s", "Z" => "z", "SH" => "sh", "HH" => "h",
        "L" => "l", "R" => "r", "Y" => "y", "W" => "w",
        "IY" => "ee", "IH" => "i", "EH" => "e", "AE" => "a", "AA" => "o", "AH" => "u",
        "AO" => "au", "ER" => "ir", "UH" => "oo", "UW" => "ue", "AY" => "ai",
        "AW" => "ow", "EY" => "ay", "OY" => "oy", "OW" => "oa",
        _ => unreachable!("no spelling for {symbol}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthConfig {
    pub two_syllable: usize,
    pub three_syllable: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            two_syllable: 1000,
            three_syllable: 1000,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SynthLexicon {
    /// Dictionary text, one word per line.
    pub dictionary: String,
    /// Frequency text with every count between 1 and 84.
    pub frequencies: String,
    pub spellings: Vec<String>,
}

fn pick<'a, T>(rng: &mut SeededRng, items: &'a [T]) -> &'a T {
    &items[rng.index(items.len())]
}

/// Spelling and dictionary pronunciation of one random word.
fn random_word(rng: &mut SeededRng, syllables: usize) -> (String, String) {
    let stress = rng.index(syllables);
    let mut spelling = String::new();
    let mut parts = Vec::with_capacity(syllables);
    for s in 0..syllables {
        let mut tokens: Vec<String> = Vec::new();
        // vowel-initial syllables only at the start, to keep breaks obvious
        if s > 0 || rng.below(6) != 0 {
            for p in *pick(rng, ONSETS) {
                spelling.push_str(letters(p));
                tokens.push(p.to_string());
            }
        }
        let v = *pick(rng, NUCLEI);
        spelling.push_str(letters(v));
        tokens.push(if s == stress {
            format!("{v}'")
        } else {
            v.to_string()
        });
        if s + 1 == syllables {
            for p in *pick(rng, CODAS) {
                spelling.push_str(letters(p));
                tokens.push(p.to_string());
            }
        }
        parts.push(tokens.join(" "));
    }
    (spelling, parts.join(" . "))
}

/// Generates distinct pseudo-words. Spellings and pronunciations are both
/// unique, so the whole output survives the uniqueness filter.
pub fn synth_lexicon(cfg: SynthConfig) -> SynthLexicon {
    let mut rng = SeededRng::new(cfg.seed);
    let mut seen_spelling = HashSet::new();
    let mut seen_sound = HashSet::new();
    let mut out = SynthLexicon::default();
    for (syllables, want) in [(2, cfg.two_syllable), (3, cfg.three_syllable)] {
        let mut made = 0;
        let mut attempts = 0usize;
        while made < want {
            attempts += 1;
            assert!(
                attempts < want * 100 + 1000,
                "cannot generate {want} distinct words"
            );
            let (spelling, sound) = random_word(&mut rng, syllables);
            if !seen_spelling.insert(spelling.clone()) {
                continue;
            }
            // a spelling can be read two ways ("th" vs "t"+"h"); keep it out
            // of the lexicon entirely if its sound is already taken
            let bare = sound.replace('\'', "");
            if !seen_sound.insert(bare) {
                continue;
            }
            writeln!(out.dictionary, "{spelling}\t{sound}").unwrap();
            writeln!(out.frequencies, "{spelling}\t{}", 1 + rng.below(84)).unwrap();
            out.spellings.push(spelling);
            made += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::{filter_candidates, FilterConfig};
    use crate::lexicon::{attach_frequencies, load_frequencies, parse_dictionary};
    use crate::phoneme::Inventory;

    #[test]
    fn every_word_survives_filtering() {
        let inv = Inventory::standard();
        let lex = synth_lexicon(SynthConfig {
            two_syllable: 300,
            three_syllable: 200,
            seed: 5,
        });
        let parsed = parse_dictionary(&lex.dictionary, inv);
        assert_eq!(parsed.errors().count(), 0);
        let mut entries = parsed.entries;
        assert_eq!(entries.len(), 500);
        attach_frequencies(&mut entries, &load_frequencies(&lex.frequencies).unwrap());
        let cfg = FilterConfig {
            require_known_frequency: true,
            ..Default::default()
        };
        let out = filter_candidates(inv, &entries, &HashSet::new(), &cfg);
        assert_eq!(out.rejections.total(), 0, "{}", out.rejections);
        assert_eq!((out.two.len(), out.three.len()), (300, 200));
    }

    #[test]
    fn reproducible() {
        let cfg = SynthConfig {
            two_syllable: 50,
            three_syllable: 50,
            seed: 9,
        };
        assert_eq!(synth_lexicon(cfg).dictionary, synth_lexicon(cfg).dictionary);
        let other = SynthConfig { seed: 10, ..cfg };
        assert_ne!(
            synth_lexicon(cfg).dictionary,
            synth_lexicon(other).dictionary
        );
    }
}
