//! Read a key fingerprint aloud as words, then catch mistakes in the reply.

use phonalpha::alphabet::{
    decode_words, encode_bytes, format_hex, parse_hex, Alphabet, Provenance,
};
use phonalpha::synth::{synth_lexicon, SynthConfig};

fn main() -> phonalpha::Result<()> {
    // any 256 + 256 distinct words will do for the codec itself
    let lex = synth_lexicon(SynthConfig {
        two_syllable: 256,
        three_syllable: 256,
        seed: 3,
    });
    let (two, three) = lex.spellings.split_at(256);
    let alphabet = Alphabet::from_unsorted(two, three, Provenance::default())?;

    let fingerprint = parse_hex("5C39 7641 0E2A 8B1F 90D3 44C7 A6E5 1038 F2BD 67C9")?;
    let words = encode_bytes(&fingerprint, &alphabet);
    println!("{}", format_hex(&fingerprint));
    println!("{}", words.join(" "));

    let report = decode_words(&words, &alphabet, Some(words.len()));
    println!("clean read-back: {} errors", report.errors.len());

    let mut heard: Vec<&str> = words.clone();
    heard.remove(5);
    heard.swap(9, 10);
    heard[13] = "mumble";
    let report = decode_words(&heard, &alphabet, Some(words.len()));
    println!("garbled read-back:");
    for e in &report.errors {
        println!("  {e}");
    }
    Ok(())
}
