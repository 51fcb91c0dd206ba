//! Closest words to a query and the distance profile of a word set.

use phonalpha::lexicon::parse_dictionary;
use phonalpha::metric::{min_pairwise, nearest_neighbors};
use phonalpha::synth::{synth_lexicon, SynthConfig};
use phonalpha::word_code::encode_word;
use phonalpha::{Inventory, TemplateKind};

fn main() -> phonalpha::Result<()> {
    let inv = Inventory::standard();
    let lex = synth_lexicon(SynthConfig {
        two_syllable: 2000,
        three_syllable: 0,
        seed: 6,
    });
    let entries = parse_dictionary(&lex.dictionary, inv).entries;
    let codes = entries
        .iter()
        .map(|e| encode_word(inv, e, TemplateKind::TwoSyllable))
        .collect::<phonalpha::Result<Vec<_>>>()?;

    for q in [0, 1, 2] {
        let near = nearest_neighbors(&codes[q], &codes, 5)?;
        let shown: Vec<String> = near
            .iter()
            .skip(1)
            .map(|&(i, d)| format!("{} {d}", entries[i].spelling))
            .collect();
        println!("{:<12} {}", entries[q].spelling, shown.join(", "));
    }

    let s = min_pairwise(&codes)?;
    println!(
        "closest pair: {} / {} at {} bits ({} pairs at that distance)",
        entries[s.argmin.0].spelling,
        entries[s.argmin.1].spelling,
        s.min,
        s.pairs_at_min()
    );
    for (d, n) in s.histogram.iter().take(8) {
        println!("{d:>4} bits: {n}");
    }
    Ok(())
}
