//! Templated bit codes of dictionary words, field by field.

use phonalpha::lexicon::parse_dictionary;
use phonalpha::word_code::{encode_auto, template_of};
use phonalpha::Inventory;

const SAMPLE: &str = include_str!("../data/sample.dict");

fn main() -> phonalpha::Result<()> {
    let inv = Inventory::standard();
    let entries = parse_dictionary(SAMPLE, inv).entries;
    for word in ["granny", "hydraulic"] {
        let e = entries.iter().find(|e| e.spelling == word).unwrap();
        let code = encode_auto(inv, e)?;
        println!("{word} [{}] {} bits", e.pronunciation(inv), code.width());
        print!("{}", code.describe());
        println!();
    }

    let two: Vec<_> = entries
        .iter()
        .filter(|e| template_of(e).is_some_and(|k| k.syllables() == 2))
        .collect();
    let granny = encode_auto(inv, two.iter().find(|e| e.spelling == "granny").unwrap())?;
    // words with long clusters have no code; skip them
    for (e, c) in two
        .iter()
        .filter_map(|e| encode_auto(inv, e).ok().map(|c| (e, c)))
        .take(8)
    {
        println!("granny ~ {:<10} {}", e.spelling, granny.hamming(&c));
    }
    Ok(())
}
