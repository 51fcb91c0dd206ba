//! Parse a dictionary with frequency and veto files and filter candidates.

use phonalpha::filters::{derivational_pairs, filter_candidates, FilterConfig};
use phonalpha::lexicon::{attach_frequencies, load_frequencies, load_veto, parse_dictionary};
use phonalpha::Inventory;

const DICT: &str = include_str!("../data/sample.dict");
const FREQ: &str = include_str!("../data/sample.freq");
const VETO: &str = include_str!("../data/sample.veto");

fn main() -> phonalpha::Result<()> {
    let inv = Inventory::standard();
    let parsed = parse_dictionary(DICT, inv);
    for d in &parsed.diagnostics {
        println!("note: {d}");
    }
    let mut entries = parsed.entries;
    attach_frequencies(&mut entries, &load_frequencies(FREQ)?);

    let cfg = FilterConfig {
        require_known_frequency: true,
        ..Default::default()
    };
    let out = filter_candidates(inv, &entries, &load_veto(VETO), &cfg);
    println!("rejected by rule:\n{}", out.rejections);
    let names =
        |v: &[phonalpha::WordEntry]| v.iter().map(|e| e.spelling.clone()).collect::<Vec<_>>();
    println!("two-syllable:   {}", names(&out.two).join(" "));
    println!("three-syllable: {}", names(&out.three).join(" "));

    let flags = derivational_pairs(&names(&out.two), &names(&out.three));
    for f in flags {
        println!("related across lists: {f}");
    }
    Ok(())
}
